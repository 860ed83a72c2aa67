#include "entanglia/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace entanglia {

BipartiteOperator::BipartiteOperator(CMat x, int m_, int n_) : mat(std::move(x)), m(m_), n(n_) {
  if (m < 1 || n < 1 || mat.rows() != static_cast<Eigen::Index>(m) * n || mat.cols() != mat.rows()) {
    throw DimensionError("BipartiteOperator: matrix is not (m*n) x (m*n)");
  }
}

CMat kron(const CMat& A, const CMat& B) {
  CMat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMat kron_power(const CMat& A, int p) {
  CMat out = CMat::Identity(1, 1);
  for (int i = 0; i < p; ++i) out = kron(out, A);
  return out;
}

static void check_bipartite(const CMat& X, int m, int n) {
  if (m < 1 || n < 1 || X.rows() != static_cast<Eigen::Index>(m) * n || X.cols() != X.rows()) {
    throw DimensionError("operator shape does not match factor dimensions");
  }
}

CMat partial_trace(const CMat& X, int m, int n, int which) {
  check_bipartite(X, m, n);
  if (which == 2) {
    CMat out = CMat::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(i, j) = X.block(i * n, j * n, n, n).trace();
    return out;
  }
  if (which == 1) {
    CMat out = CMat::Zero(n, n);
    for (int i = 0; i < m; ++i) out += X.block(i * n, i * n, n, n);
    return out;
  }
  throw DimensionError("partial_trace: which must be 1 or 2");
}

CMat partial_trace(const BipartiteOperator& X, int which) { return partial_trace(X.mat, X.m, X.n, which); }

CMat partial_transpose(const CMat& X, int m, int n, int which) {
  check_bipartite(X, m, n);
  CMat out(X.rows(), X.cols());
  if (which == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.block(i * n, j * n, n, n) = X.block(i * n, j * n, n, n).transpose();
    return out;
  }
  if (which == 1) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.block(i * n, j * n, n, n) = X.block(j * n, i * n, n, n);
    return out;
  }
  throw DimensionError("partial_transpose: which must be 1 or 2");
}

BipartiteOperator partial_transpose(const BipartiteOperator& X, int which) {
  return BipartiteOperator(partial_transpose(X.mat, X.m, X.n, which), X.m, X.n);
}

static long long product(const MultiDims& dims) {
  long long p = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("factor dimensions must be >= 1");
    p *= d;
  }
  return p;
}

static std::vector<int> digits(long long idx, const MultiDims& dims) {
  std::vector<int> d(dims.size());
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    d[f] = static_cast<int>(idx % dims[f]);
    idx /= dims[f];
  }
  return d;
}

static long long undigits(const std::vector<int>& d, const MultiDims& dims) {
  long long idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + d[f];
  return idx;
}

CMat partial_transpose(const CMat& X, const MultiDims& dims, const std::vector<bool>& mask) {
  const long long N = product(dims);
  if (X.rows() != N || X.cols() != N || mask.size() != dims.size()) {
    throw DimensionError("partial_transpose: shape mismatch");
  }
  // Each index splits linearly into a transposed part and a kept part.
  std::vector<long long> moved(N), kept(N);
  for (long long idx = 0; idx < N; ++idx) {
    const std::vector<int> d = digits(idx, dims);
    long long stride = 1, a = 0, u = 0;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
      (mask[f] ? a : u) += d[f] * stride;
      stride *= dims[f];
    }
    moved[idx] = a;
    kept[idx] = u;
  }
  CMat out(N, N);
  for (long long c = 0; c < N; ++c)
    for (long long r = 0; r < N; ++r) out(kept[r] + moved[c], kept[c] + moved[r]) = X(r, c);
  return out;
}

CMat realign(const CMat& X, int m, int n) {
  check_bipartite(X, m, n);
  CMat out(m * m, n * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * m + j, k * n + l) = X(i * n + k, j * n + l);
  return out;
}

CMat realign(const BipartiteOperator& X) { return realign(X.mat, X.m, X.n); }

CMat swap_operator(int n) { return swap_perm({n, n}, {1, 0}); }

static void check_perm(const MultiDims& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size()) throw DimensionError("permutation length mismatch");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw DimensionError("invalid permutation");
  }
}

static std::vector<long long> perm_index_map(const MultiDims& dims, const std::vector<int>& perm) {
  check_perm(dims, perm);
  const long long N = product(dims);
  MultiDims out_dims(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) out_dims[perm[i]] = dims[i];
  std::vector<long long> map(N);
  for (long long idx = 0; idx < N; ++idx) {
    std::vector<int> d = digits(idx, dims);
    std::vector<int> e(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) e[perm[i]] = d[i];
    map[idx] = undigits(e, out_dims);
  }
  return map;
}

CMat swap_perm(const MultiDims& dims, const std::vector<int>& perm) {
  const std::vector<long long> map = perm_index_map(dims, perm);
  const long long N = static_cast<long long>(map.size());
  CMat P = CMat::Zero(N, N);
  for (long long idx = 0; idx < N; ++idx) P(map[idx], idx) = 1.0;
  return P;
}

CMat permute_factors(const CMat& X, const MultiDims& dims, const std::vector<int>& perm) {
  const std::vector<long long> map = perm_index_map(dims, perm);
  const long long N = static_cast<long long>(map.size());
  if (X.rows() != N || X.cols() != N) throw DimensionError("permute_factors: shape mismatch");
  CMat out(N, N);
  for (long long c = 0; c < N; ++c)
    for (long long r = 0; r < N; ++r) out(map[r], map[c]) = X(r, c);
  return out;
}

CVec permute_factors(const CVec& v, const MultiDims& dims, const std::vector<int>& perm) {
  const std::vector<long long> map = perm_index_map(dims, perm);
  if (v.size() != static_cast<Eigen::Index>(map.size())) throw DimensionError("permute_factors: length mismatch");
  CVec out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(map[i]) = v(i);
  return out;
}

static void occupations_rec(int n, int s, int pos, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = s;
    out.push_back(cur);
    return;
  }
  for (int a = s; a >= 0; --a) {
    cur[pos] = a;
    occupations_rec(n, s - a, pos + 1, cur, out);
  }
}

std::vector<std::vector<int>> occupations(int n, int s) {
  if (n < 1 || s < 0) throw RangeError("occupations: invalid arguments");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  occupations_rec(n, s, 0, cur, out);
  return out;
}

CMat sym_isometry(int n, int s) {
  if (n < 1 || s < 1) throw RangeError("sym_isometry: n, s must be >= 1");
  const std::vector<std::vector<int>> occ = occupations(n, s);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < occ.size(); ++i) index[occ[i]] = static_cast<int>(i);
  const MultiDims dims(s, n);
  const long long N = product(dims);
  CMat V = CMat::Zero(N, static_cast<Eigen::Index>(occ.size()));
  for (long long idx = 0; idx < N; ++idx) {
    std::vector<int> d = digits(idx, dims);
    std::vector<int> a(n, 0);
    for (int x : d) ++a[x];
    V(idx, index.at(a)) = 1.0;
  }
  for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c).normalize();
  return V;
}

CMat sym_projector(int n, int p) {
  const CMat V = sym_isometry(n, p);
  return V * V.adjoint();
}

CVec vec(const CMat& A) {
  const Eigen::Index n = A.rows(), m = A.cols();
  CVec v(n * m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = A(j, i);
  return v;
}

CMat mat(const CVec& v, int m, int n) {
  if (m < 1 || n < 1 || v.size() != static_cast<Eigen::Index>(m) * n) throw DimensionError("mat: length mismatch");
  CMat A(n, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(j, i) = v(i * n + j);
  return A;
}

CVec basis_vector(int dim, int i) {
  CVec e = CVec::Zero(dim);
  e(i) = 1.0;
  return e;
}

CVec max_entangled(int n) {
  CVec v = CVec::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace entanglia
