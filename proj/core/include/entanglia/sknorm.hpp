#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entanglia/channels.hpp"
#include "entanglia/conic.hpp"
#include "entanglia/schmidt.hpp"

namespace entanglia {

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SDStatus status) : std::runtime_error(what), status_(status) {}
  SDStatus status() const { return status_; }

 private:
  SDStatus status_;
};

// Linear map on matrices together with its Hilbert-Schmidt adjoint.
struct LinearMap {
  std::function<CMat(const CMat&)> apply;
  std::function<CMat(const CMat&)> adjoint;
  std::string label;
};

LinearMap partial_transpose_map(const MultiDims& dims, const std::vector<bool>& mask);
// id_d (x) Phi.
LinearMap second_factor_map(const Channel& phi, int d);

struct RelaxationResult {
  double upper = 0.0;         // lambda_max(A + V^dagger sum_j L_j^dagger(W_j) V)
  double solver_value = 0.0;  // primal objective of the state program
  CMat sigma;
  std::vector<CMat> multipliers;  // W_j >= 0
  SDSolution solution;
};

// maximize Tr(A sigma) over density matrices sigma with L_j(V sigma V^dagger) >= 0 for all j.
RelaxationResult state_relaxation_sdp(const CMat& A, const CMat& V, const std::vector<LinearMap>& maps,
                                      const SDOptions& opts = {});

double sk_exact_rank1(const CVec& x, const CVec& y, int m, int n, int k);

struct SeesawOptions {
  int restarts = 50;
  int max_iter = 1000;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SeesawResult {
  double value = 0.0;
  CVec witness;
  int best_start = -1;
  std::vector<double> history;  // values of the best start, one per iteration
};

SeesawResult sk_lower_seesaw(const CMat& X, int m, int n, int k, const SeesawOptions& opts = {});
double sk_upper_spectral(const CMat& X, int m, int n, int k);
double sk_upper_realign(const CMat& X, int m, int n, int k);

enum class PositiveMapChoice { Transpose, Reduction, User };

struct KposResult {
  double value = 0.0;
  CMat Y;
  std::string map_label;
  RelaxationResult relaxation;
};

KposResult sk_upper_kpos_sdp(const CMat& X, int m, int n, int k, PositiveMapChoice choice,
                             const Channel* user_map = nullptr, const SDOptions& opts = {});

// V^dagger (I^{(s-1)} (x) X) V in the occupation basis of Sym^s(C^m) (x) C^n.
CMat symmetric_compression(const CMat& X, int m, int n, int s);
double beta_s(const CMat& X, int m, int n, int s);

struct DpsResult {
  double value = 0.0;
  CMat W;
  bool with_ppt = false;
  int level = 1;
  RelaxationResult relaxation;
};

inline constexpr long long kDpsMaxDim = 100;
DpsResult dps_sdp_s1(const CMat& X, int m, int n, int s, bool with_ppt, const SDOptions& opts = {});
std::vector<bool> dps_transpose_mask(int s);

RVec jacobi_roots(int degree, double a, double b);
double jacobi_gs(int n, int s);

enum class BoundKind { Alpha, Beta };
// k = 1 bounds use lambda_min(X); k > 1 bounds use Tr(X).
double error_lower_bound(int n, int s, BoundKind kind, double value, double lambda_min_or_trace, int k = 1);

double scaling_lower(double lower_h, int h, int k);
double scaling_upper(double upper_h, int h, int k);
double lower_bound_eig(const CMat& X, int m, int n, int k);
double s1_norm_trace_lower(const CMat& X, int m, int n);
double proj_norm_lower(double norm_h, int h, int k, int m, int n);
double main_proj_lower_1(int rank, int m, int n, int k);
double main_proj_lower_2(int rank, int m, int n, int k);

struct UpperCertificate {
  std::string kind;  // "kpos-map", "dps", "analytic"
  std::string label;
  CMat matrix;
};

struct NormEstimate {
  double lower = 0.0;
  double upper = kInf;
  CVec lower_witness;
  std::string lower_method;
  std::string upper_method;
  UpperCertificate certificate;
  std::vector<std::pair<std::string, double>> lower_bounds;
  std::vector<std::pair<std::string, double>> upper_bounds;
  std::vector<std::string> methods;
};

struct EstimateBudget {
  bool use_sdp = true;
  long long sdp_max_dim = 36;
  int dps_level = 0;
  bool dps_ppt = true;
  SeesawOptions seesaw;
  SDOptions sdp;
};

NormEstimate estimate(const CMat& X, int m, int n, int k, const EstimateBudget& budget = {});

}  // namespace entanglia
