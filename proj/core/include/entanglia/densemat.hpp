#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entanglia {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HermEigResult {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // columns
};

struct SVDResult {
  CMat U;
  RVec sigma;  // descending
  CMat V;
};

bool is_hermitian(const CMat& A, double rel_tol = 1e-10);
CMat hermitian_part(const CMat& A);

HermEigResult herm_eig(const CMat& A);
RVec herm_eigvals(const CMat& A);
double lambda_max(const CMat& A);
double lambda_min(const CMat& A);

SVDResult svd(const CMat& A);
RVec singular_values(const CMat& A);

// Number of singular values above rel_tol * sigma_1.
int numerical_rank(const RVec& sigma, double rel_tol = 1e-12);

double kp_norm(const CMat& A, int k, double p);
double kp_dual_norm(const CMat& A, int k, double p);
double kp_norm_from_sv(const RVec& sigma, int k, double p);
double kp_dual_from_sv(const RVec& sigma, int k, double p);

// Water-filling split: largest r < k with sigma_r > sum_{i>r} sigma_i / (k - r).
struct WaterFill {
  int r = 0;
  double tail = 0.0;  // sum_{i>r} sigma_i / (k - r)
};
WaterFill water_fill(const RVec& sigma, int k);

double operator_norm(const CMat& A);
double trace_norm(const CMat& A);
double frobenius_norm(const CMat& A);

bool is_psd(const CMat& A, double rel_tol = 1e-9);
CMat psd_projection(const CMat& A);

void require_square(const CMat& A, const std::string& what);
void require_hermitian(const CMat& A, const std::string& what);

}  // namespace entanglia
