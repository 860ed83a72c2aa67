#include "entanglia/densemat.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace entanglia {

void require_square(const CMat& A, const std::string& what) {
  if (A.rows() != A.cols()) {
    throw DimensionError(what + ": matrix must be square");
  }
}

bool is_hermitian(const CMat& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  return (A - A.adjoint()).norm() <= rel_tol * (1.0 + A.norm());
}

void require_hermitian(const CMat& A, const std::string& what) {
  require_square(A, what);
  if (!is_hermitian(A)) throw DimensionError(what + ": matrix must be Hermitian");
}

CMat hermitian_part(const CMat& A) { return 0.5 * (A + A.adjoint()); }

HermEigResult herm_eig(const CMat& A) {
  require_hermitian(A, "herm_eig");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(A));
  if (es.info() != Eigen::Success) throw std::runtime_error("herm_eig: no convergence");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec herm_eigvals(const CMat& A) {
  require_hermitian(A, "herm_eigvals");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(A), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("herm_eigvals: no convergence");
  return es.eigenvalues();
}

double lambda_max(const CMat& A) { return herm_eigvals(A)(A.rows() - 1); }
double lambda_min(const CMat& A) { return herm_eigvals(A)(0); }

SVDResult svd(const CMat& A) {
  Eigen::BDCSVD<CMat> s(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

RVec singular_values(const CMat& A) {
  if (A.size() == 0) return RVec();
  Eigen::BDCSVD<CMat> s(A);
  return s.singularValues();
}

int numerical_rank(const RVec& sigma, double rel_tol) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  const double cut = rel_tol * sigma(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) ++r;
  }
  return r;
}

static void check_k(Eigen::Index len, int k) {
  if (k < 1 || k > len) throw RangeError("k out of range");
}

double kp_norm_from_sv(const RVec& sigma, int k, double p) {
  check_k(sigma.size(), k);
  if (p < 1.0) throw RangeError("p must be >= 1");
  if (std::isinf(p)) return sigma(0);
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += std::pow(sigma(i), p);
  return std::pow(s, 1.0 / p);
}

WaterFill water_fill(const RVec& sigma, int k) {
  check_k(sigma.size(), k);
  const double total = sigma.sum();
  double head = 0.0;
  std::vector<double> prefix(k + 1, 0.0);
  for (int i = 0; i < k; ++i) {
    head += sigma(i);
    prefix[i + 1] = head;
  }
  // sigma is 0-indexed; sigma_r in 1-indexed notation is sigma(r - 1).
  for (int r = k - 1; r >= 1; --r) {
    const double tail = (total - prefix[r]) / (k - r);
    if (sigma(r - 1) > tail) return {r, tail};
  }
  return {0, total / k};
}

double kp_dual_from_sv(const RVec& sigma, int k, double p) {
  check_k(sigma.size(), k);
  if (p < 1.0) throw RangeError("p must be >= 1");
  const WaterFill wf = water_fill(sigma, k);
  if (p == 1.0) return std::max(sigma(0), wf.tail);
  const double q = std::isinf(p) ? 1.0 : p / (p - 1.0);
  double s = 0.0;
  for (int i = 0; i < wf.r; ++i) s += std::pow(sigma(i), q);
  s += (k - wf.r) * std::pow(wf.tail, q);
  return std::pow(s, 1.0 / q);
}

double kp_norm(const CMat& A, int k, double p) {
  return kp_norm_from_sv(singular_values(A), k, p);
}

double kp_dual_norm(const CMat& A, int k, double p) {
  return kp_dual_from_sv(singular_values(A), k, p);
}

double operator_norm(const CMat& A) {
  if (A.size() == 0) return 0.0;
  return singular_values(A)(0);
}

double trace_norm(const CMat& A) { return singular_values(A).sum(); }

double frobenius_norm(const CMat& A) { return A.norm(); }

bool is_psd(const CMat& A, double rel_tol) {
  if (!is_hermitian(A)) return false;
  const RVec ev = herm_eigvals(A);
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -rel_tol * (1.0 + scale);
}

CMat psd_projection(const CMat& A) {
  const HermEigResult e = herm_eig(A);
  RVec lam = e.eigenvalues.cwiseMax(0.0);
  return e.eigenvectors * lam.asDiagonal() * e.eigenvectors.adjoint();
}

}  // namespace entanglia
