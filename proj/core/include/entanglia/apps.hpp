#pragma once

#include <Eigen/SparseCore>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entanglia/blockpos.hpp"

namespace entanglia {

using SpMat = Eigen::SparseMatrix<double>;

double werner_sk_norm(int n, double alpha, int k);

struct WernerThresholds {
  double ppt = 0.0;
  double one_copy_distillable = 0.5;
  double entangled = 0.0;
};
WernerThresholds werner_thresholds(int n);

inline constexpr long long kBoundProjMaxDim = 4096;

// Projection onto the odd-parity part of (psi+, I - psi+)^{(x) r}, ordered A_1..A_r | B_1..B_r.
BipartiteOperator bound_proj(int n, int r);
SpMat bound_proj_sparse(int n, int r);
long long bound_proj_rank_formula(int n, int r);

struct S1Verification {
  double closed_form = 0.0;
  double product_value = 0.0;  // <11...1|P|11...1>
  double lambda_max_pt = 0.0;  // lambda_max(P^Gamma), an upper bound on the S(1) norm
  long long rank = 0;
  double idempotency_error = 0.0;
};

double bound_proj_s1(int n, int r);
S1Verification verify_bound_proj_s1(int n, int r);

struct S2Bounds {
  double lower = 0.0;
  double upper = 0.0;
};
S2Bounds bound_proj_s2_bounds(int n, int r);
// <v|P|v> for the Schmidt-rank-2 vector attaining the S(2) lower bound.
double bound_proj_s2_witness_value(int n, int r);

enum class UndistillStatus { Certified, NotCertified, TheoremInapplicable };
const char* to_string(UndistillStatus s);

struct UndistillReport {
  int n = 0;
  int r = 0;
  double p = 0.0;
  bool applicable = false;
  double threshold = 0.0;  // NaN when the theorem is inapplicable
  double alpha = 0.0;
  double lambda_pos_min = 0.0;
  double lambda_neg_max = 0.0;  // largest magnitude among negative eigenvalues
  double s2_upper = 0.0;
  double margin = 0.0;  // lambda_pos_min - lambda_neg_max * u / (1 - u)
  bool exact = false;
  std::string margin_exact;  // rational margin when computed exactly
  UndistillStatus status = UndistillStatus::NotCertified;
};

double undistillable_p(int n, int r);
// Threshold alpha, or nullopt when p < 1.
std::optional<double> undistillable_threshold(int n, int r);
// Threshold as an exact fraction when it is rational.
std::optional<std::pair<long long, long long>> undistillable_threshold_rational(int n, int r);
UndistillReport certify_undistillable(int n, int r, double alpha);
UndistillReport certify_undistillable_exact(int n, int r, long long alpha_num, long long alpha_den);

struct FidelityOptions {
  EstimateBudget budget;
  int dps_level = 0;
};

struct FidelityReport {
  double lambda_max = 0.0;
  NormEstimate estimate;  // of P_S (lambda_max I - C^Gamma) P_S
  double lower = 0.0;     // F_min >= lower
  double upper = 0.0;     // F_min <= upper
  CVec worst_state;       // product witness behind the upper bound
  std::vector<std::pair<int, double>> dps_uppers;
};

FidelityReport min_gate_fidelity(const Channel& E, const FidelityOptions& opts = {});
// F(v) = <v|E(|v><v|)|v>.
double gate_fidelity(const Channel& E, const CVec& v);

Channel nphard_channel(const RMat& A);
double fidelity_identity(const RMat& A);

NormEstimate max_output_purity(const Channel& phi, int k, const EstimateBudget& budget = {});

struct CbPurity {
  double value = 0.0;
  double complementary_value = 0.0;
};
CbPurity cb_output_purity(const Channel& phi);

struct RealignResult {
  double value = 0.0;
  bool detected = false;  // Schmidt number > k certified
};
RealignResult realignment_test(const CMat& rho, int m, int n, int k);

struct ReductionResult {
  double min_eig_first = 0.0;   // lambda_min(k Tr_2(rho) (x) I - rho)
  double min_eig_second = 0.0;  // lambda_min(k I (x) Tr_1(rho) - rho)
  bool violated = false;
};
ReductionResult reduction_test(const CMat& rho, int m, int n, int k);

struct GeometricMeasure {
  double lower = 0.0;  // bounds on E
  double upper = 0.0;
  bool exact = false;
  bool heuristic = false;
  std::string method;
  CMat operator_form;        // Tr_1(vv) for p = 3, A_v for p = 4
  std::vector<CVec> factors;  // product state behind the upper bound on E
};
GeometricMeasure geometric_measure(const CVec& v, const MultiDims& dims, const EstimateBudget& budget = {});
// Quadripartite operator form x1 x2 y1 y2 -> |x2><conj x1| (x) |y2><conj y1|.
CMat quadripartite_operator(const CVec& v, int m, int n);

}  // namespace entanglia
