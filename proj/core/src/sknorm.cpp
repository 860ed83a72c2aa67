#include "entanglia/sknorm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "entanglia/random.hpp"

namespace entanglia {

namespace {

void check_dims(const CMat& X, int m, int n) {
  if (m < 1 || n < 1 || X.rows() != static_cast<Eigen::Index>(m) * n || X.cols() != X.rows()) {
    throw DimensionError("operator shape does not match factor dimensions");
  }
}

void check_k(int k, int m, int n) {
  if (k < 1 || k > std::min(m, n)) throw RangeError("k must satisfy 1 <= k <= min(m, n)");
}

void require_psd(const CMat& X, const std::string& what) {
  if (!is_psd(X)) throw DimensionError(what + ": operator must be positive semidefinite");
}

double expectation(const CMat& X, const CVec& v) { return v.dot(X * v).real(); }

CVec top_eigenvector(const CMat& M) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(M));
  return es.eigenvectors().col(M.rows() - 1);
}

// Traceless Hermitian basis, orthonormal in the Hilbert-Schmidt inner product.
std::vector<CMat> traceless_basis(int D, bool with_imaginary) {
  std::vector<CMat> out;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      CMat H = CMat::Zero(D, D);
      H(i, j) = r2;
      H(j, i) = r2;
      out.push_back(H);
    }
  for (int l = 1; l < D; ++l) {
    CMat H = CMat::Zero(D, D);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int t = 0; t < l; ++t) H(t, t) = c;
    H(l, l) = -l * c;
    out.push_back(H);
  }
  if (with_imaginary) {
    for (int i = 0; i < D; ++i)
      for (int j = i + 1; j < D; ++j) {
        CMat H = CMat::Zero(D, D);
        H(i, j) = cplx(0.0, r2);
        H(j, i) = cplx(0.0, -r2);
        out.push_back(H);
      }
  }
  return out;
}

bool is_real(const CMat& M) { return M.imag().cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + M.cwiseAbs().maxCoeff()); }

}  // namespace

LinearMap partial_transpose_map(const MultiDims& dims, const std::vector<bool>& mask) {
  LinearMap L;
  L.apply = [dims, mask](const CMat& X) { return partial_transpose(X, dims, mask); };
  L.adjoint = L.apply;
  L.label = "partial-transpose";
  return L;
}

LinearMap second_factor_map(const Channel& phi, int d) {
  const Channel dual = dual_channel(phi);
  LinearMap L;
  L.apply = [phi, d](const CMat& X) { return apply_second(phi, X, d); };
  L.adjoint = [dual, d](const CMat& X) { return apply_second(dual, X, d); };
  L.label = "id(x)map";
  return L;
}

RelaxationResult state_relaxation_sdp(const CMat& A, const CMat& V, const std::vector<LinearMap>& maps,
                                      const SDOptions& opts) {
  const int D = static_cast<int>(V.cols());
  if (A.rows() != D || A.cols() != D) throw DimensionError("state_relaxation_sdp: objective shape mismatch");
  require_hermitian(A, "state_relaxation_sdp");
  const CMat Ah = hermitian_part(A);
  const CMat P0 = V * V.adjoint() / static_cast<double>(D);

  bool real_mode = is_real(Ah) && is_real(V);
  std::vector<CMat> basis;
  std::vector<CMat> images_base;
  std::vector<std::vector<CMat>> images;

  auto build = [&](bool imaginary) {
    basis = traceless_basis(D, imaginary);
    images_base.clear();
    images.assign(maps.size(), {});
    for (std::size_t j = 0; j < maps.size(); ++j) {
      images_base.push_back(maps[j].apply(P0));
      for (const CMat& H : basis) images[j].push_back(maps[j].apply(V * H * V.adjoint()));
    }
  };
  build(!real_mode);
  if (real_mode) {
    bool ok = true;
    for (std::size_t j = 0; j < maps.size() && ok; ++j) {
      ok = is_real(images_base[j]);
      for (const CMat& B : images[j]) ok = ok && is_real(B);
    }
    if (!ok) {
      real_mode = false;
      build(true);
    }
  }
  const Field field = real_mode ? Field::Real : Field::Complex;

  // Compress each constrained block onto the joint range of its data.
  std::vector<CMat> Q(maps.size());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    CMat K = images_base[j] * images_base[j].adjoint();
    for (const CMat& B : images[j]) K += B * B.adjoint();
    K = hermitian_part(K);
    Eigen::Index dim = K.rows();
    if (real_mode) {
      Eigen::SelfAdjointEigenSolver<RMat> es(K.real());
      const RVec& ev = es.eigenvalues();
      const double cut = 1e-10 * std::max(ev(dim - 1), 1e-300);
      int r = 0;
      for (Eigen::Index i = 0; i < dim; ++i) r += ev(i) > cut ? 1 : 0;
      Q[j] = es.eigenvectors().rightCols(r).cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<CMat> es(K);
      const RVec& ev = es.eigenvalues();
      const double cut = 1e-10 * std::max(ev(dim - 1), 1e-300);
      int r = 0;
      for (Eigen::Index i = 0; i < dim; ++i) r += ev(i) > cut ? 1 : 0;
      Q[j] = es.eigenvectors().rightCols(r);
    }
  }

  SDProblem prob;
  prob.sense = Sense::Minimize;
  prob.blocks.push_back({D, field});
  prob.C.push_back(CMat::Identity(D, D) / static_cast<double>(D));
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const int r = static_cast<int>(Q[j].cols());
    prob.blocks.push_back({r, field});
    prob.C.push_back(hermitian_part(Q[j].adjoint() * images_base[j] * Q[j]));
  }
  const int nparams = static_cast<int>(basis.size());
  prob.b.resize(nparams);
  for (int i = 0; i < nparams; ++i) {
    prob.b(i) = (Ah * basis[i]).trace().real();
    std::vector<CMat> row;
    row.push_back(-basis[i]);
    for (std::size_t j = 0; j < maps.size(); ++j) row.push_back(-hermitian_part(Q[j].adjoint() * images[j][i] * Q[j]));
    prob.A.push_back(std::move(row));
  }
  const double offset = Ah.trace().real() / D;

  RelaxationResult out;
  out.solution = solve(prob, opts);
  const SDSolution& sol = out.solution;
  if (sol.X.empty() || (sol.status != SDStatus::Optimal && sol.relative_gap > 1e-6)) {
    throw SolverError(std::string("semidefinite solver failed: ") + to_string(sol.status), sol.status);
  }
  out.solver_value = sol.dual_objective + offset;
  out.sigma = CMat::Identity(D, D) / static_cast<double>(D);
  for (int i = 0; i < nparams; ++i) out.sigma += sol.y(i) * basis[i];
  CMat cert = Ah;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    const CMat W = psd_projection(hermitian_part(Q[j] * sol.X[j + 1] * Q[j].adjoint()));
    out.multipliers.push_back(W);
    cert += V.adjoint() * maps[j].adjoint(W) * V;
  }
  out.upper = lambda_max(hermitian_part(cert));
  return out;
}

double sk_exact_rank1(const CVec& x, const CVec& y, int m, int n, int k) {
  return sk_vector_norm(x, m, n, k) * sk_vector_norm(y, m, n, k);
}

namespace {

struct StartResult {
  double value = -kInf;
  CVec witness;
  std::vector<double> history;
};

StartResult run_product_seesaw(const CMat& X, int m, int n, const CVec& v0, const SeesawOptions& opts) {
  const SchmidtData sd = schmidt_decompose(v0, m, n);
  CVec a = sd.left.col(0), b = sd.right.col(0);
  StartResult r;
  r.witness = kron(a, b);
  r.value = expectation(X, r.witness);
  r.history.push_back(r.value);
  const CMat Im = CMat::Identity(m, m), In = CMat::Identity(n, n);
  for (int it = 0; it < opts.max_iter; ++it) {
    const CMat Ib = kron(Im, CMat(b));
    a = top_eigenvector(Ib.adjoint() * X * Ib);
    const CMat aI = kron(CMat(a), In);
    const CMat Ma = hermitian_part(aI.adjoint() * X * aI);
    Eigen::SelfAdjointEigenSolver<CMat> es(Ma);
    b = es.eigenvectors().col(n - 1);
    const double val = es.eigenvalues()(n - 1);
    const double prev = r.value;
    if (val >= r.value) {
      r.value = val;
      r.witness = kron(a, b);
    }
    r.history.push_back(r.value);
    if (std::abs(val - prev) <= opts.tol) break;
  }
  r.value = expectation(X, r.witness);
  return r;
}

StartResult run_power_seesaw(const CMat& X, int m, int n, int k, const CVec& v0, const SeesawOptions& opts) {
  StartResult r;
  r.witness = truncate_sr(v0, m, n, k);
  r.value = expectation(X, r.witness);
  r.history.push_back(r.value);
  for (int it = 0; it < opts.max_iter; ++it) {
    const CVec u = X * r.witness;
    if (u.norm() == 0.0) break;
    const CVec w = truncate_sr(u, m, n, k);
    const double val = expectation(X, w);
    const double prev = r.value;
    if (val >= r.value) {
      r.value = val;
      r.witness = w;
    }
    r.history.push_back(r.value);
    if (std::abs(val - prev) <= opts.tol) break;
  }
  return r;
}

}  // namespace

SeesawResult sk_lower_seesaw(const CMat& X, int m, int n, int k, const SeesawOptions& opts) {
  check_dims(X, m, n);
  check_k(k, m, n);
  require_psd(X, "sk_lower_seesaw");
  const CMat Xh = hermitian_part(X);
  const int mn = m * n;
  SeesawResult out;
  if (k == std::min(m, n)) {
    out.witness = top_eigenvector(Xh);
    out.value = expectation(Xh, out.witness);
    out.best_start = 0;
    out.history = {out.value};
    return out;
  }

  std::vector<CVec> starts;
  starts.push_back(top_eigenvector(Xh));
  if (mn <= 64) {
    for (int i = 0; i < mn; ++i) starts.push_back(basis_vector(mn, i));
  }
  const int ndet = static_cast<int>(starts.size());
  const int total = ndet + std::max(0, opts.restarts);

  std::vector<StartResult> results(total);
  auto work = [&](int idx) {
    CVec v0;
    if (idx < ndet) {
      v0 = starts[idx];
    } else {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(idx - ndet)));
      v0 = random_unit_vector(mn, rng);
    }
    results[idx] = k == 1 ? run_product_seesaw(Xh, m, n, v0, opts) : run_power_seesaw(Xh, m, n, k, v0, opts);
  };
  const int nthreads = std::max(1, std::min(opts.threads, total));
  if (nthreads == 1) {
    for (int i = 0; i < total; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < total; i += nthreads) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  int best = 0;
  for (int i = 1; i < total; ++i) {
    if (results[i].value > results[best].value) best = i;
  }
  out.value = results[best].value;
  out.witness = results[best].witness;
  out.best_start = best;
  out.history = results[best].history;
  return out;
}

double sk_upper_spectral(const CMat& X, int m, int n, int k) {
  check_dims(X, m, n);
  check_k(k, m, n);
  const double scale = 1.0 + X.norm();
  if ((X * X.adjoint() - X.adjoint() * X).norm() > 1e-9 * scale * scale) {
    throw DimensionError("sk_upper_spectral: operator must be normal");
  }
  double s = 0.0;
  if (is_hermitian(X)) {
    const HermEigResult e = herm_eig(X);
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
      const double nk = sk_vector_norm(e.eigenvectors.col(i), m, n, k);
      s += std::abs(e.eigenvalues(i)) * nk * nk;
    }
    return s;
  }
  Eigen::ComplexSchur<CMat> cs(X);
  const CMat& T = cs.matrixT();
  const CMat& U = cs.matrixU();
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    const double nk = sk_vector_norm(U.col(i), m, n, k);
    s += std::abs(T(i, i)) * nk * nk;
  }
  return s;
}

double sk_upper_realign(const CMat& X, int m, int n, int k) {
  check_dims(X, m, n);
  check_k(k, m, n);
  require_psd(X, "sk_upper_realign");
  return kp_norm(realign(X, m, n), k * k, 2.0);
}

KposResult sk_upper_kpos_sdp(const CMat& X, int m, int n, int k, PositiveMapChoice choice, const Channel* user_map,
                             const SDOptions& opts) {
  check_dims(X, m, n);
  check_k(k, m, n);
  require_psd(X, "sk_upper_kpos_sdp");
  Channel phi;
  KposResult out;
  switch (choice) {
    case PositiveMapChoice::Transpose:
      if (k != 1) throw RangeError("sk_upper_kpos_sdp: the transpose map is only 1-positive");
      phi = transpose_map(n);
      out.map_label = "transpose";
      break;
    case PositiveMapChoice::Reduction:
      phi = reduction_k_map(n, k);
      out.map_label = "reduction-" + std::to_string(k);
      break;
    case PositiveMapChoice::User:
      if (user_map == nullptr || user_map->in_dim != n) {
        throw DimensionError("sk_upper_kpos_sdp: user map must act on the second factor");
      }
      phi = *user_map;
      out.map_label = "user";
      break;
  }
  const CMat V = CMat::Identity(m * n, m * n);
  out.relaxation = state_relaxation_sdp(X, V, {second_factor_map(phi, m)}, opts);
  out.Y = out.relaxation.multipliers[0];
  out.value = out.relaxation.upper;
  return out;
}

CMat symmetric_compression(const CMat& X, int m, int n, int s) {
  check_dims(X, m, n);
  if (s < 1) throw RangeError("symmetric_compression: s must be >= 1");
  const auto occ = occupations(m, s);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < occ.size(); ++i) index[occ[i]] = static_cast<int>(i);
  const auto lower = occupations(m, s - 1);
  const int D = static_cast<int>(occ.size()) * n;
  CMat A = CMat::Zero(D, D);
  for (const auto& c : lower) {
    for (int i = 0; i < m; ++i) {
      std::vector<int> a = c;
      ++a[i];
      const int ia = index.at(a);
      for (int ip = 0; ip < m; ++ip) {
        std::vector<int> ap = c;
        ++ap[ip];
        const int iap = index.at(ap);
        const double coef = std::sqrt(static_cast<double>(a[i]) * ap[ip]) / s;
        for (int b = 0; b < n; ++b)
          for (int bp = 0; bp < n; ++bp) A(ia * n + b, iap * n + bp) += coef * X(i * n + b, ip * n + bp);
      }
    }
  }
  return A;
}

double beta_s(const CMat& X, int m, int n, int s) {
  require_psd(X, "beta_s");
  return lambda_max(hermitian_part(symmetric_compression(X, m, n, s)));
}

std::vector<bool> dps_transpose_mask(int s) {
  std::vector<bool> mask(s + 1, false);
  const int count = (s + 1) / 2;
  for (int i = 0; i < count; ++i) mask[s - i] = true;
  return mask;
}

DpsResult dps_sdp_s1(const CMat& X, int m, int n, int s, bool with_ppt, const SDOptions& opts) {
  check_dims(X, m, n);
  require_psd(X, "dps_sdp_s1");
  if (s < 1) throw RangeError("dps_sdp_s1: s must be >= 1");
  long long N = n;
  for (int i = 0; i < s; ++i) {
    N *= m;
    if (N > kDpsMaxDim) {
      throw SizeLimitError("dps_sdp_s1: extension dimension exceeds the limit of " + std::to_string(kDpsMaxDim));
    }
  }
  DpsResult out;
  out.level = s;
  out.with_ppt = with_ppt;
  const CMat A = hermitian_part(symmetric_compression(X, m, n, s));
  if (!with_ppt) {
    out.value = lambda_max(A);
    out.W = CMat::Zero(N, N);
    return out;
  }
  const CMat V = kron(sym_isometry(m, s), CMat(CMat::Identity(n, n)));
  MultiDims dims(s, m);
  dims.push_back(n);
  out.relaxation = state_relaxation_sdp(A, V, {partial_transpose_map(dims, dps_transpose_mask(s))}, opts);
  out.W = out.relaxation.multipliers[0];
  out.value = out.relaxation.upper;
  return out;
}

RVec jacobi_roots(int degree, double a, double b) {
  if (degree < 1) throw RangeError("jacobi_roots: degree must be >= 1");
  RMat T = RMat::Zero(degree, degree);
  for (int k = 0; k < degree; ++k) {
    const double s = 2.0 * k + a + b;
    T(k, k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < degree; ++k) {
    const double s = 2.0 * k + a + b;
    const double beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    T(k, k - 1) = T(k - 1, k) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double jacobi_gs(int n, int s) {
  if (n < 2 || s < 1) throw RangeError("jacobi_gs: need n >= 2 and s >= 1");
  const RVec roots = s % 2 == 0 ? jacobi_roots(s / 2 + 1, n - 2.0, 0.0) : jacobi_roots((s + 1) / 2, n - 2.0, 1.0);
  return 1.0 - roots(roots.size() - 1);
}

double error_lower_bound(int n, int s, BoundKind kind, double value, double lambda_min_or_trace, int k) {
  if (n < 2 || s < 1 || k < 1) throw RangeError("error_lower_bound: invalid arguments");
  const double dn = n, ds = s;
  if (k == 1) {
    if (kind == BoundKind::Beta) return ds / (dn + ds) * value + lambda_min_or_trace / (dn + ds);
    const double g = jacobi_gs(n, s);
    const double c = g / (2.0 * (dn - 1.0));
    return (1.0 - dn * c) * value + c * lambda_min_or_trace;
  }
  if (kind == BoundKind::Beta) return ds / (dn * dn + ds) * value + lambda_min_or_trace / (dn * dn + ds);
  const double g = jacobi_gs(n, s);
  const double c = g / ((2.0 + g * dn) * (dn - 1.0));
  return (1.0 - dn * dn * c) * value + c * lambda_min_or_trace;
}

double scaling_lower(double lower_h, int h, int k) {
  return k >= h ? lower_h : static_cast<double>(k) / h * lower_h;
}

double scaling_upper(double upper_h, int h, int k) {
  return k >= h ? static_cast<double>(k) / h * upper_h : upper_h;
}

double lower_bound_eig(const CMat& X, int m, int n, int k) {
  check_dims(X, m, n);
  check_k(k, m, n);
  const RVec ev = herm_eigvals(X);
  const int mn = m * n;
  double best = -kInf;
  for (int r = k; r <= std::min(m, n); ++r) {
    const int idx = mn - (n - r) * (m - r);  // 1-indexed ascending
    best = std::max(best, static_cast<double>(k) * ev(idx - 1) / r);
  }
  return best;
}

double s1_norm_trace_lower(const CMat& X, int m, int n) {
  check_dims(X, m, n);
  require_hermitian(X, "s1_norm_trace_lower");
  const double mn = static_cast<double>(m) * n;
  const double t = X.trace().real();
  if (mn == 1.0) return t;
  const double t2 = (X * X).trace().real();
  const double rad = std::max(0.0, (mn * t2 - t * t) / (mn - 1.0));
  return (t + std::sqrt(rad)) / mn;
}

double proj_norm_lower(double norm_h, int h, int k, int m, int n) {
  const int mn = std::min(m, n);
  if (h < 1 || k < h || k > mn) throw RangeError("proj_norm_lower: need 1 <= h <= k <= min(m, n)");
  if (h == mn) return norm_h;
  return norm_h + static_cast<double>(k - h) / (mn - h) * (1.0 - norm_h);
}

double main_proj_lower_1(int rank, int m, int n, int k) {
  check_k(k, m, n);
  if (rank < 1 || rank > m * n) throw RangeError("main_proj_lower_1: rank out of range");
  const long long disc = static_cast<long long>(n - m) * (n - m) + 4LL * rank - 4;
  long long root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
  const double sq = root * root == disc ? static_cast<double>(root) : std::sqrt(static_cast<double>(disc));
  const double d = std::ceil((n + m - sq) / 2.0 - 1e-12);
  if (d <= 0.0) return 1.0;
  return std::min(1.0, k / d);
}

double main_proj_lower_2(int rank, int m, int n, int k) {
  check_k(k, m, n);
  if (rank < 1 || rank > m * n) throw RangeError("main_proj_lower_2: rank out of range");
  const double mn = static_cast<double>(m) * n;
  const double mi = std::min(m, n);
  if (mi == 1.0) return 1.0;
  const double r = rank;
  const double rad = mn > 1.0 ? std::max(0.0, (mn * r - r * r) / (mn - 1.0)) : 0.0;
  return (mi - k) / (mn * (mi - 1.0)) * (r + std::sqrt(rad)) + (k - 1.0) / (mi - 1.0);
}

NormEstimate estimate(const CMat& X, int m, int n, int k, const EstimateBudget& budget) {
  check_dims(X, m, n);
  check_k(k, m, n);
  require_psd(X, "estimate");
  const CMat Xh = hermitian_part(X);
  NormEstimate est;
  const HermEigResult eig = herm_eig(Xh);
  const int mn = m * n;
  const double top = std::max(0.0, eig.eigenvalues(mn - 1));

  auto add_upper = [&](const std::string& label, double v) {
    est.upper_bounds.emplace_back(label, v);
    est.methods.push_back(label);
    if (v < est.upper) {
      est.upper = v;
      est.upper_method = label;
      return true;
    }
    return false;
  };

  if (add_upper("operator-norm", top)) est.certificate = {"analytic", "operator-norm", CMat()};

  if (k == std::min(m, n)) {
    est.lower = top;
    est.lower_witness = eig.eigenvectors.col(mn - 1);
    est.lower_method = "top-eigenvector";
    est.lower_bounds.emplace_back("top-eigenvector", top);
    est.methods.push_back("top-eigenvector");
    return est;
  }

  if (numerical_rank(eig.eigenvalues.reverse().cwiseMax(0.0)) <= 1) {
    const CVec v = eig.eigenvectors.col(mn - 1);
    const double nk = sk_vector_norm(v, m, n, k);
    const double exact = top * nk * nk;
    if (add_upper("rank-one-exact", exact)) est.certificate = {"analytic", "rank-one-exact", CMat()};
    est.lower_witness = truncate_sr(v, m, n, k);
    est.lower = expectation(Xh, est.lower_witness);
    est.lower_method = "rank-one-exact";
    est.lower_bounds.emplace_back("rank-one-exact", est.lower);
    est.methods.push_back("rank-one-exact");
    est.upper = std::max(est.upper, est.lower);
    return est;
  }

  const SeesawResult ss = sk_lower_seesaw(Xh, m, n, k, budget.seesaw);
  est.lower = ss.value;
  est.lower_witness = ss.witness;
  est.lower_method = "seesaw";
  est.lower_bounds.emplace_back("seesaw", ss.value);
  est.methods.push_back("seesaw");
  est.lower_bounds.emplace_back("eigenvalue-index", lower_bound_eig(Xh, m, n, k));
  if (k == 1) est.lower_bounds.emplace_back("trace-moment", s1_norm_trace_lower(Xh, m, n));
  est.lower_bounds.emplace_back("scaling-from-max", scaling_lower(top, std::min(m, n), k));

  if (add_upper("spectral", sk_upper_spectral(Xh, m, n, k))) est.certificate = {"analytic", "spectral", CMat()};
  if (add_upper("realignment", sk_upper_realign(Xh, m, n, k))) est.certificate = {"analytic", "realignment", CMat()};

  if (budget.use_sdp && mn <= budget.sdp_max_dim) {
    if (k == 1) {
      const KposResult t = sk_upper_kpos_sdp(Xh, m, n, 1, PositiveMapChoice::Transpose, nullptr, budget.sdp);
      if (add_upper("kpos-sdp:transpose", t.value)) est.certificate = {"kpos-map", t.map_label, t.Y};
    }
    if (k < n) {
      const KposResult r = sk_upper_kpos_sdp(Xh, m, n, k, PositiveMapChoice::Reduction, nullptr, budget.sdp);
      if (add_upper("kpos-sdp:" + r.map_label, r.value)) est.certificate = {"kpos-map", r.map_label, r.Y};
    }
  }
  if (k == 1 && budget.dps_level >= 1) {
    for (int s = 1; s <= budget.dps_level; ++s) {
      long long N = n;
      for (int i = 0; i < s; ++i) N *= m;
      if (N > kDpsMaxDim) break;
      const DpsResult d = dps_sdp_s1(Xh, m, n, s, budget.dps_ppt, budget.sdp);
      const std::string label = "dps-s" + std::to_string(s) + (budget.dps_ppt ? "-ppt" : "");
      if (add_upper(label, d.value)) est.certificate = {"dps", label, d.W};
    }
  }
  est.upper = std::max(est.upper, est.lower);
  return est;
}

}  // namespace entanglia
