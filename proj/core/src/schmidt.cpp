#include "entanglia/schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace entanglia {

static void check_length(const CVec& v, int m, int n) {
  if (m < 1 || n < 1 || v.size() != static_cast<Eigen::Index>(m) * n) {
    throw DimensionError("vector length does not match m * n");
  }
}

static void check_k(int k, int m, int n) {
  if (k < 1 || k > std::min(m, n)) throw RangeError("k must satisfy 1 <= k <= min(m, n)");
}

SchmidtData schmidt_decompose(const CVec& v, int m, int n) {
  check_length(v, m, n);
  // mat(a (x) b) = b a^T, so the left factor is the conjugated right singular vector.
  const SVDResult s = svd(mat(v, m, n));
  SchmidtData d;
  d.coefficients = s.sigma;
  d.left = s.V.conjugate();
  d.right = s.U;
  for (Eigen::Index i = 0; i < d.left.cols(); ++i) {
    for (Eigen::Index r = 0; r < d.left.rows(); ++r) {
      const cplx c = d.left(r, i);
      if (std::abs(c) > 1e-12) {
        const cplx ph = std::conj(c) / std::abs(c);
        d.left.col(i) *= ph;
        d.right.col(i) /= ph;
        break;
      }
    }
  }
  d.rank = numerical_rank(d.coefficients);
  return d;
}

int schmidt_rank(const CVec& v, int m, int n, double tol) {
  check_length(v, m, n);
  return numerical_rank(singular_values(mat(v, m, n)), tol);
}

double sk_vector_norm(const CVec& v, int m, int n, int k) {
  check_length(v, m, n);
  check_k(k, m, n);
  return kp_norm_from_sv(singular_values(mat(v, m, n)), k, 2.0);
}

DualNormResult sk_vector_dual_norm(const CVec& v, int m, int n, int k) {
  check_length(v, m, n);
  check_k(k, m, n);
  const SchmidtData d = schmidt_decompose(v, m, n);
  const RVec& a = d.coefficients;
  const WaterFill wf = water_fill(a, k);
  DualNormResult out;
  double s = 0.0;
  for (int i = 0; i < wf.r; ++i) s += a(i) * a(i);
  s += (k - wf.r) * wf.tail * wf.tail;
  out.value = std::sqrt(s);
  CVec w = CVec::Zero(v.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double c = i < wf.r ? a(i) : wf.tail;
    w += c * kron(CVec(d.left.col(i)), CVec(d.right.col(i)));
  }
  if (out.value > 0.0) w /= out.value;
  out.optimizer = w;
  return out;
}

OperatorSchmidt operator_schmidt(const CMat& X, int m, int n) {
  const CMat R = realign(X, m, n);
  const SVDResult s = svd(R);
  const int r = numerical_rank(s.sigma);
  OperatorSchmidt out;
  out.coefficients = s.sigma.head(r);
  for (int t = 0; t < r; ++t) {
    CMat A(m, m), B(n, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = s.U(i * m + j, t);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) B(k, l) = std::conj(s.V(k * n + l, t));
    out.A.push_back(A);
    out.B.push_back(B);
  }
  return out;
}

CVec truncate_sr(const CVec& v, int m, int n, int k) {
  check_length(v, m, n);
  check_k(k, m, n);
  const SVDResult s = svd(mat(v, m, n));
  CMat M = CMat::Zero(n, m);
  for (int i = 0; i < k; ++i) M += s.sigma(i) * s.U.col(i) * s.V.col(i).adjoint();
  CVec w = vec(M);
  const double nrm = w.norm();
  if (nrm > 0.0) w /= nrm;
  return w;
}

}  // namespace entanglia
