#include "entanglia/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entanglia {

Channel::Channel(CMat c, int m, int n) : choi(std::move(c), m, n), in_dim(m), out_dim(n) {}

static CVec canonical_phase(CVec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

static bool lex_less(const CVec& a, const CVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i) - b(i)) <= 1e-12) continue;
    if (std::abs(a(i).real() - b(i).real()) > 1e-12) return a(i).real() < b(i).real();
    return a(i).imag() < b(i).imag();
  }
  return false;
}

Channel choi_from_kraus(const KrausSet& kraus, int m, int n) {
  if (kraus.left.size() != kraus.right.size() || kraus.left.size() != kraus.weights.size()) {
    throw DimensionError("choi_from_kraus: inconsistent Kraus set");
  }
  CMat C = CMat::Zero(m * n, m * n);
  for (std::size_t l = 0; l < kraus.left.size(); ++l) {
    const CMat& A = kraus.left[l];
    const CMat& B = kraus.right[l];
    if (A.rows() != n || A.cols() != m || B.rows() != n || B.cols() != m) {
      throw DimensionError("choi_from_kraus: Kraus operator must be n x m");
    }
    C += kraus.weights[l] * vec(A) * vec(B).adjoint();
  }
  return Channel(C, m, n);
}

Channel choi_from_kraus(const std::vector<CMat>& kraus_ops) {
  if (kraus_ops.empty()) throw DimensionError("choi_from_kraus: empty Kraus list");
  KrausSet k;
  k.left = kraus_ops;
  k.right = kraus_ops;
  k.weights.assign(kraus_ops.size(), 1.0);
  k.completely_positive = true;
  return choi_from_kraus(k, static_cast<int>(kraus_ops[0].cols()), static_cast<int>(kraus_ops[0].rows()));
}

Channel choi_from_map(const std::function<CMat(const CMat&)>& phi, int m, int n) {
  CMat C = CMat::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      CMat E = CMat::Zero(m, m);
      E(i, j) = 1.0;
      const CMat out = phi(E);
      if (out.rows() != n || out.cols() != n) throw DimensionError("choi_from_map: output shape mismatch");
      C.block(i * n, j * n, n, n) = out;
    }
  }
  return Channel(C, m, n);
}

CMat apply(const Channel& phi, const CMat& X) {
  const int m = phi.in_dim, n = phi.out_dim;
  if (X.rows() != m || X.cols() != m) throw DimensionError("apply: input shape mismatch");
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (X(i, j) != cplx(0.0)) out += X(i, j) * phi.choi.mat.block(i * n, j * n, n, n);
    }
  return out;
}

CMat apply_second(const Channel& phi, const CMat& Y, int d) {
  const int m = phi.in_dim, n = phi.out_dim;
  if (Y.rows() != d * m || Y.cols() != d * m) throw DimensionError("apply_second: shape mismatch");
  CMat out(d * n, d * n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.block(a * n, b * n, n, n) = entanglia::apply(phi, CMat(Y.block(a * m, b * m, m, m)));
  return out;
}

CMat apply_kraus(const KrausSet& kraus, const CMat& X) {
  CMat out = CMat::Zero(kraus.left.empty() ? 0 : kraus.left[0].rows(), kraus.left.empty() ? 0 : kraus.left[0].rows());
  for (std::size_t l = 0; l < kraus.left.size(); ++l) out += kraus.weights[l] * kraus.left[l] * X * kraus.right[l].adjoint();
  return out;
}

KrausSet kraus_from_choi(const Channel& phi) {
  const int m = phi.in_dim, n = phi.out_dim;
  const CMat& C = phi.choi.mat;
  KrausSet out;
  if (is_hermitian(C)) {
    const HermEigResult e = herm_eig(C);
    const double scale = std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
    const bool psd = e.eigenvalues(0) >= -1e-9 * (1.0 + scale);
    struct Term {
      double lambda;
      CVec v;
    };
    std::vector<Term> terms;
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
      const double lam = e.eigenvalues(i);
      if (std::abs(lam) <= 1e-12 * scale || (psd && lam <= 0.0)) continue;
      terms.push_back({lam, canonical_phase(e.eigenvectors.col(i))});
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      if (std::abs(a.lambda - b.lambda) > 1e-12 * (1.0 + std::abs(a.lambda))) return a.lambda > b.lambda;
      return lex_less(a.v, b.v);
    });
    out.completely_positive = psd;
    for (const Term& t : terms) {
      if (psd) {
        const CMat A = std::sqrt(t.lambda) * mat(t.v, m, n);
        out.left.push_back(A);
        out.right.push_back(A);
        out.weights.push_back(1.0);
      } else {
        const CMat A = mat(t.v, m, n);
        out.left.push_back(A);
        out.right.push_back(A);
        out.weights.push_back(t.lambda);
      }
    }
    return out;
  }
  const SVDResult s = svd(C);
  const int r = numerical_rank(s.sigma);
  for (int i = 0; i < r; ++i) {
    out.left.push_back(mat(s.U.col(i), m, n));
    out.right.push_back(mat(s.V.col(i), m, n));
    out.weights.push_back(s.sigma(i));
  }
  return out;
}

StinespringForm stinespring(const Channel& phi) {
  if (!is_cp(phi)) throw DimensionError("stinespring: map is not completely positive");
  const KrausSet k = kraus_from_choi(phi);
  StinespringForm s;
  s.in_dim = phi.in_dim;
  s.out_dim = phi.out_dim;
  s.env_dim = std::max<int>(1, static_cast<int>(k.left.size()));
  s.A = CMat::Zero(static_cast<Eigen::Index>(s.env_dim) * s.out_dim, s.in_dim);
  for (std::size_t l = 0; l < k.left.size(); ++l) s.A.block(l * s.out_dim, 0, s.out_dim, s.in_dim) = k.left[l];
  return s;
}

CMat apply_stinespring(const StinespringForm& s, const CMat& X) {
  return partial_trace(s.A * X * s.A.adjoint(), s.env_dim, s.out_dim, 1);
}

bool is_trace_preserving(const Channel& phi, double tol) {
  const CMat T = partial_trace(phi.choi, 2);
  return (T - CMat::Identity(phi.in_dim, phi.in_dim)).norm() <= tol;
}

bool is_unital(const Channel& phi, double tol) {
  const CMat T = partial_trace(phi.choi, 1);
  return (T - CMat::Identity(phi.out_dim, phi.out_dim)).norm() <= tol;
}

bool is_cp(const Channel& phi, double rel_tol) { return is_psd(phi.choi.mat, rel_tol); }

bool is_hermiticity_preserving(const Channel& phi) { return is_hermitian(phi.choi.mat); }

Channel dual_channel(const Channel& phi) {
  const int m = phi.in_dim, n = phi.out_dim;
  const CMat& C = phi.choi.mat;
  CMat D(m * n, m * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) D(a * m + i, b * m + j) = std::conj(C(i * n + a, j * n + b));
  return Channel(D, n, m);
}

Channel complementary_channel(const Channel& phi) {
  if (!is_cp(phi)) throw DimensionError("complementary_channel: map is not completely positive");
  const KrausSet k = kraus_from_choi(phi);
  const int env = std::max<int>(1, static_cast<int>(k.left.size()));
  const int m = phi.in_dim;
  return choi_from_map(
      [&](const CMat& X) {
        CMat out = CMat::Zero(env, env);
        for (std::size_t a = 0; a < k.left.size(); ++a)
          for (std::size_t b = 0; b < k.left.size(); ++b) out(a, b) = (k.left[a] * X * k.left[b].adjoint()).trace();
        return out;
      },
      m, env);
}

Channel identity_channel(int n) {
  if (n < 1) throw RangeError("identity_channel: n must be >= 1");
  const CVec psi = max_entangled(n);
  return Channel(n * psi * psi.adjoint(), n, n);
}

Channel transpose_map(int n) {
  if (n < 1) throw RangeError("transpose_map: n must be >= 1");
  return Channel(swap_operator(n), n, n);
}

Channel depolarizing(int n) {
  if (n < 1) throw RangeError("depolarizing: n must be >= 1");
  return Channel(CMat::Identity(n * n, n * n) / static_cast<double>(n), n, n);
}

Channel depolarizing_channel(int n, double p) {
  if (p < 0.0 || p > 1.0) throw RangeError("depolarizing_channel: p must lie in [0, 1]");
  const Channel id = identity_channel(n);
  const Channel dep = depolarizing(n);
  return Channel((1.0 - p) * id.choi.mat + p * dep.choi.mat, n, n);
}

Channel reduction_k_map(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw RangeError("reduction_k_map: need 1 <= k <= n");
  const CVec psi = max_entangled(n);
  return Channel(static_cast<double>(k) * CMat::Identity(n * n, n * n) - n * psi * psi.adjoint(), n, n);
}

Channel schur_map(const CMat& A) {
  require_square(A, "schur_map");
  const int n = static_cast<int>(A.rows());
  CMat C = CMat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i * n + i, j * n + j) = A(i, j);
  return Channel(C, n, n);
}

Channel unitary_channel(const CMat& U) { return choi_from_kraus(std::vector<CMat>{U}); }

Channel amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw RangeError("amplitude_damping: gamma must lie in [0, 1]");
  CMat K0 = CMat::Zero(2, 2), K1 = CMat::Zero(2, 2);
  K0(0, 0) = 1.0;
  K0(1, 1) = std::sqrt(1.0 - gamma);
  K1(0, 1) = std::sqrt(gamma);
  return choi_from_kraus(std::vector<CMat>{K0, K1});
}

CMat werner_state(int n, double alpha) {
  if (n < 2) throw RangeError("werner_state: n must be >= 2");
  if (std::abs(alpha) > 1.0) throw RangeError("werner_state: |alpha| must be <= 1");
  return (CMat::Identity(n * n, n * n) - alpha * swap_operator(n)) / (n * n - alpha * n);
}

}  // namespace entanglia
