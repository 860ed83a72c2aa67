#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline CMat rand_mat(int r, int c, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  CMat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = cplx(d(g), d(g));
  return A;
}

inline CVec rand_unit(int n, std::mt19937_64& g) {
  CVec v = rand_mat(n, 1, g).col(0);
  return v / v.norm();
}

inline CMat rand_herm(int n, std::mt19937_64& g) {
  CMat A = rand_mat(n, n, g);
  return (A + A.adjoint()) / 2.0;
}

inline CMat rand_density(int n, int rank, std::mt19937_64& g) {
  CMat G = rand_mat(n, rank, g);
  CMat R = G * G.adjoint();
  return R / R.trace().real();
}

inline CMat outer(const CVec& a, const CVec& b) { return a * b.adjoint(); }

// Kronecker product written out entry by entry.
inline CMat kron(const CMat& A, const CMat& B) {
  CMat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      for (int k = 0; k < B.rows(); ++k)
        for (int l = 0; l < B.cols(); ++l) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
  return K;
}

inline CVec kron(const CVec& a, const CVec& b) {
  CVec v(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) v(i * b.size() + j) = a(i) * b(j);
  return v;
}

inline CVec psi_plus(int n) {
  CVec v = CVec::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(double(n));
  return v;
}

inline CMat swap(int n) {
  CMat S = CMat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(j * n + i, i * n + j) = 1.0;
  return S;
}

// Coefficient matrix C(i, j) = v[i * n + j].
inline CMat coeff(const CVec& v, int m, int n) {
  CMat C(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) C(i, j) = v(i * n + j);
  return C;
}

inline RVec sv(const CMat& A) { return Eigen::JacobiSVD<CMat>(A).singularValues(); }

inline double kp(const CMat& A, int k, double p) {
  const RVec s = sv(A);
  double t = 0.0;
  for (int i = 0; i < std::min<int>(k, s.size()); ++i) t += std::pow(s(i), p);
  return std::pow(t, 1.0 / p);
}

// Determinant by cofactor expansion along the first row.
inline cplx det(const CMat& A) {
  const int n = A.rows();
  if (n == 1) return A(0, 0);
  cplx d = 0.0;
  for (int c = 0; c < n; ++c) {
    CMat M(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 0, jj = 0; j < n; ++j)
        if (j != c) M(i - 1, jj++) = A(i, j);
    d += (c % 2 == 0 ? 1.0 : -1.0) * A(0, c) * det(M);
  }
  return d;
}

// Coefficients (c0, c1, c2) of det(x I - A) = x^3 + c2 x^2 + c1 x + c0.
inline std::vector<double> char_poly3(const CMat& A) {
  const double c2 = -A.trace().real();
  double c1 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) c1 += (A(i, i) * A(j, j) - A(i, j) * A(j, i)).real();
  const double c0 = -det(A).real();
  return {c0, c1, c2};
}

// Schmidt coefficients of a vector in C^m (x) C^n.
inline RVec schmidt(const CVec& v, int m, int n) { return sv(coeff(v, m, n)); }

inline double sk_vec(const CVec& v, int m, int n, int k) {
  const RVec a = schmidt(v, m, n);
  double t = 0.0;
  for (int i = 0; i < std::min<int>(k, a.size()); ++i) t += a(i) * a(i);
  return std::sqrt(t);
}

// Dual s(k) norm by enumerating every candidate head length r and keeping sorted candidates.
inline double sk_dual_enumerate(const RVec& alpha, int k) {
  const int d = alpha.size();
  double best = 0.0;
  for (int r = 0; r < k; ++r) {
    double head = 0.0, tail = 0.0;
    for (int i = 0; i < r; ++i) head += alpha(i) * alpha(i);
    for (int i = r; i < d; ++i) tail += alpha(i);
    const double value = std::sqrt(head + tail * tail / (k - r));
    if (value == 0.0) continue;
    const double t = tail / (k - r) / value;
    bool sorted = true;
    for (int i = 0; i < r; ++i) sorted = sorted && alpha(i) / value >= t - 1e-14;
    if (sorted) best = std::max(best, value);
  }
  return best;
}

// Random search followed by multi-start (1+1) evolution strategy refinement for max f over unit vectors.
inline double maximize_on_sphere(const std::function<double(const CVec&)>& f, int dim, int samples, int refine,
                                 std::mt19937_64& g, int starts = 8) {
  std::vector<std::pair<double, CVec>> pool;
  for (int s = 0; s < samples; ++s) {
    const CVec x = rand_unit(dim, g);
    pool.emplace_back(f(x), x);
  }
  std::partial_sort(pool.begin(), pool.begin() + std::min<int>(starts, pool.size()), pool.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double overall = pool.front().first;
  for (int s = 0; s < std::min<int>(starts, pool.size()); ++s) {
    auto [bv, best] = pool[s];
    double step = 0.3;
    for (int it = 0; it < refine; ++it) {
      CVec y = best + step * rand_mat(dim, 1, g).col(0);
      y /= y.norm();
      const double v = f(y);
      if (v > bv) {
        bv = v;
        best = y;
        step = std::min(1.0, step * 1.5);
      } else {
        step = std::max(1e-6, step * 0.97);
      }
    }
    overall = std::max(overall, bv);
  }
  return overall;
}

// Product-state maximum of <ab|X|ab> by dense angle search (qubit x qubit, real parametrization with phases).
inline double s1_brute_2x2(const CMat& X, int grid) {
  double best = -1e300;
  const double pi = std::acos(-1.0);
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k <= grid; ++k)
        for (int l = 0; l < grid; ++l) {
          const double t1 = pi * i / grid, p1 = 2 * pi * j / grid;
          const double t2 = pi * k / grid, p2 = 2 * pi * l / grid;
          CVec a(2), b(2);
          a << std::cos(t1 / 2), std::polar(std::sin(t1 / 2), p1);
          b << std::cos(t2 / 2), std::polar(std::sin(t2 / 2), p2);
          const CVec v = kron(a, b);
          best = std::max(best, (v.adjoint() * X * v)(0, 0).real());
        }
  return best;
}

}  // namespace oracle
