#include "entanglia/apps.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "entanglia/random.hpp"

namespace entanglia {

namespace mp = boost::multiprecision;

double werner_sk_norm(int n, double alpha, int k) {
  if (n < 2 || std::abs(alpha) > 1.0 || k < 1 || k > n) throw RangeError("werner_sk_norm: need n >= 2, |alpha| <= 1, 1 <= k <= n");
  const double num = k == 1 ? 1.0 + std::abs(std::min(alpha, 0.0)) : 1.0 + std::abs(alpha);
  return num / (n * (n - alpha));
}

WernerThresholds werner_thresholds(int n) {
  if (n < 2) throw RangeError("werner_thresholds: n must be >= 2");
  WernerThresholds t;
  t.ppt = 1.0 / n;
  t.one_copy_distillable = 0.5;
  t.entangled = 1.0 / n;
  return t;
}

namespace {

using Triplet = Eigen::Triplet<double>;

SpMat sp_identity(long long N) {
  SpMat I(N, N);
  I.setIdentity();
  return I;
}

SpMat sp_kron(const SpMat& A, const SpMat& B) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros() * B.nonZeros()));
  for (int ca = 0; ca < A.outerSize(); ++ca)
    for (SpMat::InnerIterator ia(A, ca); ia; ++ia)
      for (int cb = 0; cb < B.outerSize(); ++cb)
        for (SpMat::InnerIterator ib(B, cb); ib; ++ib)
          t.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(), ia.value() * ib.value());
  SpMat out(A.rows() * B.rows(), A.cols() * B.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

template <class F>
SpMat sp_remap(const SpMat& A, F f) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros()));
  for (int c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) {
      const auto [r2, c2] = f(static_cast<long long>(it.row()), static_cast<long long>(it.col()));
      t.emplace_back(r2, c2, it.value());
    }
  SpMat out(A.rows(), A.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_bound_proj_size(int n, int r) {
  if (n < 2 || r < 1) throw RangeError("bound_proj: need n >= 2 and r >= 1");
  const double total = std::pow(static_cast<double>(n), 2.0 * r);
  if (total > static_cast<double>(kBoundProjMaxDim)) {
    throw SizeLimitError("bound_proj: dimension n^(2r) exceeds " + std::to_string(kBoundProjMaxDim));
  }
}

// Pair-major ordering A_1 B_1 A_2 B_2 ...
SpMat bound_proj_pair_major(int n, int r) {
  const long long d = static_cast<long long>(n) * n;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.emplace_back(i * n + i, j * n + j, 1.0 / n);
  SpMat P1(d, d);
  P1.setFromTriplets(t.begin(), t.end());
  const SpMat Q1 = sp_identity(d) - P1;
  SpMat P = P1;
  for (int s = 2; s <= r; ++s) {
    const SpMat Q = sp_identity(P.rows()) - P;
    P = sp_kron(Q1, P) + sp_kron(P1, Q);
    P.prune(0.0);
  }
  return P;
}

// Index of pair-major basis state in A_1..A_r | B_1..B_r ordering.
long long pair_to_split(long long idx, int n, int r) {
  std::vector<int> dig(2 * r);
  for (int f = 2 * r - 1; f >= 0; --f) {
    dig[f] = static_cast<int>(idx % n);
    idx /= n;
  }
  long long a = 0, b = 0;
  for (int i = 0; i < r; ++i) {
    a = a * n + dig[2 * i];
    b = b * n + dig[2 * i + 1];
  }
  return a * ipow(n, r) + b;
}

// lambda_max of a sparse symmetric matrix, one dense block per connected component.
double sparse_lambda_max(const SpMat& A) {
  const long long N = A.rows();
  std::vector<long long> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](long long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) {
      const long long a = find(it.row()), b = find(it.col());
      if (a != b) parent[a] = b;
    }
  std::vector<std::vector<long long>> comps;
  std::vector<long long> comp_of(N, -1), local(N, 0);
  std::vector<long long> root_id(N, -1);
  for (long long i = 0; i < N; ++i) {
    const long long r = find(i);
    if (root_id[r] < 0) {
      root_id[r] = static_cast<long long>(comps.size());
      comps.emplace_back();
    }
    comp_of[i] = root_id[r];
    local[i] = static_cast<long long>(comps[root_id[r]].size());
    comps[root_id[r]].push_back(i);
  }
  std::vector<RMat> blocks(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) blocks[c] = RMat::Zero(comps[c].size(), comps[c].size());
  for (int c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) blocks[comp_of[it.row()]](local[it.row()], local[it.col()]) += it.value();
  double best = -kInf;
  for (const RMat& B : blocks) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (B + B.transpose()), Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues()(B.rows() - 1));
  }
  return best;
}

}  // namespace

SpMat bound_proj_sparse(int n, int r) {
  check_bound_proj_size(n, r);
  const SpMat P = bound_proj_pair_major(n, r);
  return sp_remap(P, [n, r](long long i, long long j) { return std::make_pair(pair_to_split(i, n, r), pair_to_split(j, n, r)); });
}

BipartiteOperator bound_proj(int n, int r) {
  const SpMat P = bound_proj_sparse(n, r);
  const int N = static_cast<int>(ipow(n, r));
  return BipartiteOperator(CMat(P.cast<cplx>()), N, N);
}

long long bound_proj_rank_formula(int n, int r) {
  if (n < 2 || r < 1) throw RangeError("bound_proj_rank_formula: need n >= 2 and r >= 1");
  const mp::cpp_int a = mp::pow(mp::cpp_int(n), 2 * r);
  const mp::cpp_int b = mp::pow(mp::cpp_int(n * n - 2), r);
  const mp::cpp_int v = (a - b) / 2;
  if (v > std::numeric_limits<long long>::max()) throw RangeError("bound_proj_rank_formula: overflow");
  return v.convert_to<long long>();
}

double bound_proj_s1(int n, int r) {
  if (n < 2 || r < 1) throw RangeError("bound_proj_s1: need n >= 2 and r >= 1");
  return 0.5 - 0.5 * std::pow(1.0 - 2.0 / n, r);
}

S1Verification verify_bound_proj_s1(int n, int r) {
  S1Verification out;
  out.closed_form = bound_proj_s1(n, r);
  const SpMat P = bound_proj_sparse(n, r);
  const SpMat P2 = P * P;
  const SpMat diff = P2 - P;
  double err = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c)
    for (SpMat::InnerIterator it(diff, c); it; ++it) err = std::max(err, std::abs(it.value()));
  out.idempotency_error = err;
  out.rank = std::llround(P.diagonal().sum());
  out.product_value = P.coeff(0, 0);
  const long long N = ipow(n, r);
  const SpMat PT = sp_remap(P, [N](long long i, long long j) {
    const long long a = i / N, b = i % N, ap = j / N, bp = j % N;
    return std::make_pair(a * N + bp, ap * N + b);
  });
  out.lambda_max_pt = sparse_lambda_max(PT);
  return out;
}

S2Bounds bound_proj_s2_bounds(int n, int r) {
  if (n < 3) throw RangeError("bound_proj_s2_bounds: n must be >= 3");
  if (r < 1) throw RangeError("bound_proj_s2_bounds: r must be >= 1");
  const double q = std::pow(1.0 - 2.0 / n, r);
  return {0.5 - (0.5 - 1.0 / (n - 2.0)) * q, 1.0 - q};
}

double bound_proj_s2_witness_value(int n, int r) {
  check_bound_proj_size(n, r);
  const SpMat P = bound_proj_pair_major(n, r);
  const long long j = static_cast<long long>(n + 1) * ipow(n, 2 * (r - 1));
  return 0.5 * (P.coeff(0, 0) + P.coeff(0, j) + P.coeff(j, 0) + P.coeff(j, j));
}

const char* to_string(UndistillStatus s) {
  switch (s) {
    case UndistillStatus::Certified:
      return "certified";
    case UndistillStatus::NotCertified:
      return "not-certified";
    case UndistillStatus::TheoremInapplicable:
      return "theorem-inapplicable";
  }
  return "not-certified";
}

namespace {

int odd_exponent(int r) { return 2 * ((r + 1) / 2) - 1; }

void check_nr(int n, int r) {
  if (n < 3 || r < 1) throw RangeError("undistillability: need n >= 3 and r >= 1");
}

template <class T>
struct SpectrumSummary {
  T pos_min;
  T neg_max;
  bool has_pos = false;
  bool has_neg = false;
};

// Eigenvalues of (rho_alpha^{(x) r})^Gamma up to normalization are x^j, j = 0..r.
template <class T>
SpectrumSummary<T> werner_power_spectrum(const T& x, int r) {
  SpectrumSummary<T> s{T(0), T(0)};
  T pw = T(1);
  for (int j = 0; j <= r; ++j) {
    if (pw > 0) {
      if (!s.has_pos || pw < s.pos_min) s.pos_min = pw;
      s.has_pos = true;
    } else if (pw < 0) {
      const T a = -pw;
      if (!s.has_neg || a > s.neg_max) s.neg_max = a;
      s.has_neg = true;
    }
    pw *= x;
  }
  return s;
}

bool integer_root(const mp::cpp_int& v, int e, mp::cpp_int& root) {
  if (v < 0) return false;
  if (e == 1) {
    root = v;
    return true;
  }
  const double approx = std::pow(v.convert_to<double>(), 1.0 / e);
  for (long long c = std::max(0LL, static_cast<long long>(approx) - 2); c <= static_cast<long long>(approx) + 2; ++c) {
    if (mp::pow(mp::cpp_int(c), e) == v) {
      root = c;
      return true;
    }
  }
  return false;
}

}  // namespace

double undistillable_p(int n, int r) {
  check_nr(n, r);
  const double a = std::pow(n - 2.0, r);
  return a / (std::pow(static_cast<double>(n), r) - a);
}

std::optional<double> undistillable_threshold(int n, int r) {
  const double p = undistillable_p(n, r);
  if (p < 1.0) return std::nullopt;
  return (std::pow(p, 1.0 / odd_exponent(r)) + 1.0) / n;
}

std::optional<std::pair<long long, long long>> undistillable_threshold_rational(int n, int r) {
  check_nr(n, r);
  const mp::cpp_int a = mp::pow(mp::cpp_int(n - 2), r);
  const mp::cpp_int b = mp::pow(mp::cpp_int(n), r) - a;
  if (a < b) return std::nullopt;
  const mp::cpp_int g = mp::gcd(a, b);
  mp::cpp_int ra, rb;
  const int e = odd_exponent(r);
  if (!integer_root(a / g, e, ra) || !integer_root(b / g, e, rb)) return std::nullopt;
  const mp::cpp_rational alpha = mp::cpp_rational(ra + rb, rb * n);
  const mp::cpp_int num = mp::numerator(alpha), den = mp::denominator(alpha);
  if (num > std::numeric_limits<long long>::max() || den > std::numeric_limits<long long>::max()) return std::nullopt;
  return std::make_pair(num.convert_to<long long>(), den.convert_to<long long>());
}

UndistillReport certify_undistillable(int n, int r, double alpha) {
  check_nr(n, r);
  if (std::abs(alpha) > 1.0) throw RangeError("certify_undistillable: |alpha| must be <= 1");
  UndistillReport rep;
  rep.n = n;
  rep.r = r;
  rep.alpha = alpha;
  rep.p = undistillable_p(n, r);
  rep.applicable = rep.p >= 1.0;
  rep.threshold = rep.applicable ? *undistillable_threshold(n, r) : std::numeric_limits<double>::quiet_NaN();
  rep.s2_upper = bound_proj_s2_bounds(n, r).upper;
  const auto s = werner_power_spectrum<double>(1.0 - alpha * n, r);
  rep.lambda_pos_min = s.has_pos ? s.pos_min : 0.0;
  rep.lambda_neg_max = s.has_neg ? s.neg_max : 0.0;
  const double u = rep.s2_upper;
  rep.margin = s.has_neg ? rep.lambda_pos_min - rep.lambda_neg_max * u / (1.0 - u) : rep.lambda_pos_min;
  const double tol = 1e-12 * std::max(1.0, std::max(rep.lambda_pos_min, rep.lambda_neg_max));
  if (!rep.applicable) {
    rep.status = UndistillStatus::TheoremInapplicable;
  } else {
    rep.status = rep.margin >= -tol ? UndistillStatus::Certified : UndistillStatus::NotCertified;
  }
  return rep;
}

UndistillReport certify_undistillable_exact(int n, int r, long long alpha_num, long long alpha_den) {
  check_nr(n, r);
  if (alpha_den <= 0) throw RangeError("certify_undistillable_exact: denominator must be positive");
  const mp::cpp_rational alpha(alpha_num, alpha_den);
  if (mp::abs(alpha) > 1) throw RangeError("certify_undistillable_exact: |alpha| must be <= 1");
  UndistillReport rep = certify_undistillable(n, r, static_cast<double>(alpha_num) / alpha_den);
  const mp::cpp_rational x = mp::cpp_rational(1) - alpha * n;
  const auto s = werner_power_spectrum<mp::cpp_rational>(x, r);
  mp::cpp_rational q = 1;
  for (int i = 0; i < r; ++i) q *= mp::cpp_rational(n - 2, n);
  const mp::cpp_rational u = 1 - q;
  mp::cpp_rational margin = s.has_pos ? s.pos_min : mp::cpp_rational(0);
  if (s.has_neg) margin -= s.neg_max * u / (1 - u);
  rep.exact = true;
  rep.margin = static_cast<double>(margin);
  rep.margin_exact = margin.str();
  if (rep.applicable) rep.status = margin >= 0 ? UndistillStatus::Certified : UndistillStatus::NotCertified;
  return rep;
}

double gate_fidelity(const Channel& E, const CVec& v) {
  if (E.in_dim != E.out_dim || v.size() != E.in_dim) throw DimensionError("gate_fidelity: dimension mismatch");
  const CVec u = v / v.norm();
  const CMat out = entanglia::apply(E, CMat(u * u.adjoint()));
  return u.dot(out * u).real();
}

FidelityReport min_gate_fidelity(const Channel& E, const FidelityOptions& opts) {
  const int n = E.in_dim;
  if (E.out_dim != n) throw DimensionError("min_gate_fidelity: channel must map M_n to M_n");
  if (!is_cp(E)) throw RangeError("min_gate_fidelity: channel is not completely positive");
  if (!is_trace_preserving(E)) throw RangeError("min_gate_fidelity: channel is not trace preserving");
  const CMat CG = partial_transpose(E.choi.mat, n, n, 1);
  const CMat Vs = sym_isometry(n, 2);
  const CMat B = hermitian_part(Vs.adjoint() * CG * Vs);
  FidelityReport rep;
  rep.lambda_max = lambda_max(B);
  const CMat Ac = psd_projection(rep.lambda_max * CMat::Identity(B.rows(), B.cols()) - B);
  const CMat X = hermitian_part(Vs * Ac * Vs.adjoint());

  NormEstimate est;
  if (lambda_max(Ac) <= 1e-13 * std::max(1.0, std::abs(rep.lambda_max))) {
    est.lower = 0.0;
    est.upper = 0.0;
    est.lower_witness = kron(basis_vector(n, 0), basis_vector(n, 0));
    est.lower_method = "zero-operator";
    est.upper_method = "zero-operator";
    est.certificate = {"analytic", "zero-operator", CMat()};
    est.methods = {"zero-operator"};
  } else {
    est = estimate(X, n, n, 1, opts.budget);
    if (opts.budget.use_sdp && static_cast<long long>(n) * n <= opts.budget.sdp_max_dim) {
      const RelaxationResult rel =
          state_relaxation_sdp(Ac, Vs, {partial_transpose_map({n, n}, {true, false})}, opts.budget.sdp);
      est.upper_bounds.emplace_back("symmetric-ppt-sdp", rel.upper);
      est.methods.push_back("symmetric-ppt-sdp");
      if (rel.upper < est.upper) {
        est.upper = std::max(rel.upper, est.lower);
        est.upper_method = "symmetric-ppt-sdp";
        est.certificate = {"kpos-map", "symmetric-ppt", rel.multipliers[0]};
      }
    }
    for (int s = 1; s <= opts.dps_level; ++s) {
      long long N = n;
      for (int i = 0; i < s; ++i) N *= n;
      if (N > kDpsMaxDim) break;
      const DpsResult d = dps_sdp_s1(X, n, n, s, true, opts.budget.sdp);
      rep.dps_uppers.emplace_back(s, rep.lambda_max - d.value);
      const std::string label = "dps-s" + std::to_string(s) + "-ppt";
      est.upper_bounds.emplace_back(label, d.value);
      est.methods.push_back(label);
      if (d.value < est.upper) {
        est.upper = std::max(d.value, est.lower);
        est.upper_method = label;
        est.certificate = {"dps", label, d.W};
      }
    }
  }
  rep.estimate = est;
  rep.lower = rep.lambda_max - est.upper;
  rep.upper = rep.lambda_max - est.lower;

  const SchmidtData sd = schmidt_decompose(est.lower_witness, n, n);
  const CVec a = sd.left.col(0), b = sd.right.col(0);
  const double fa = gate_fidelity(E, a), fb = gate_fidelity(E, b);
  rep.worst_state = fa <= fb ? a : b;
  rep.upper = std::min(rep.upper, std::min(fa, fb));
  rep.upper = std::max(rep.upper, rep.lower);
  return rep;
}

namespace {

void check_nphard_matrix(const RMat& A) {
  if (A.rows() < 2 || A.rows() != A.cols()) throw DimensionError("nphard_channel: A must be square with n >= 2");
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (A(i, i) != 0.0) throw RangeError("nphard_channel: A must have zero diagonal");
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) != 0.0 && A(i, j) != 1.0) throw RangeError("nphard_channel: A must have 0/1 entries");
      if (A(i, j) != A(j, i)) throw RangeError("nphard_channel: A must be symmetric");
    }
  }
}

double quad_form(const RMat& A, const RVec& y) { return y.dot(A * y); }

RVec replicator_ascent(const RMat& A, RVec y) {
  double val = quad_form(A, y);
  for (int it = 0; it < 10000; ++it) {
    const RVec Ay = A * y;
    if (val <= 0.0) break;
    RVec next = y.cwiseProduct(Ay) / val;
    next /= next.sum();
    const double nv = quad_form(A, next);
    const bool done = std::abs(nv - val) <= 1e-15;
    y = next;
    val = nv;
    if (done) break;
  }
  return y;
}

void simplex_grid(int n, int N, int pos, int left, RVec& cur, const RMat& A, std::vector<std::pair<double, RVec>>& best,
                  std::size_t keep) {
  if (pos == n - 1) {
    cur(pos) = static_cast<double>(left) / N;
    const double v = quad_form(A, cur);
    if (best.size() < keep || v > best.back().first) {
      best.emplace_back(v, cur);
      std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      if (best.size() > keep) best.pop_back();
    }
    return;
  }
  for (int a = 0; a <= left; ++a) {
    cur(pos) = static_cast<double>(a) / N;
    simplex_grid(n, N, pos + 1, left - a, cur, A, best, keep);
  }
}

}  // namespace

Channel nphard_channel(const RMat& A) {
  check_nphard_matrix(A);
  const int n = static_cast<int>(A.rows());
  CMat C = CMat::Identity(n * n, n * n) / static_cast<double>(n);
  const double c = 1.0 / (static_cast<double>(n) * n * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C(i * n + i, j * n + j) -= c * A(i, j);
  return Channel(C, n, n);
}

double fidelity_identity(const RMat& A) {
  check_nphard_matrix(A);
  const int n = static_cast<int>(A.rows());
  std::vector<std::pair<double, RVec>> best;
  if (n <= 4) {
    const int N = n <= 3 ? 200 : 60;
    RVec cur(n);
    simplex_grid(n, N, 0, N, cur, A, best, 8);
  }
  best.emplace_back(quad_form(A, RVec::Constant(n, 1.0 / n)), RVec::Constant(n, 1.0 / n));
  Rng rng(derive_seed(0, static_cast<std::uint64_t>(n)));
  for (int t = 0; t < 32; ++t) {
    RVec y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.uniform() + 1e-3;
    y /= y.sum();
    best.emplace_back(quad_form(A, y), y);
  }
  double mx = 0.0;
  for (const auto& [v, y] : best) mx = std::max(mx, quad_form(A, replicator_ascent(A, y)));
  return (1.0 - mx / (static_cast<double>(n) * (n - 1))) / n;
}

NormEstimate max_output_purity(const Channel& phi, int k, const EstimateBudget& budget) {
  if (!is_cp(phi)) throw RangeError("max_output_purity: map is not completely positive");
  return estimate(phi.choi.mat, phi.in_dim, phi.out_dim, k, budget);
}

CbPurity cb_output_purity(const Channel& phi) {
  if (!is_cp(phi)) throw RangeError("cb_output_purity: map is not completely positive");
  CbPurity out;
  out.value = lambda_max(hermitian_part(phi.choi.mat));
  const Channel comp = complementary_channel(phi);
  out.complementary_value = operator_norm(entanglia::apply(comp, CMat(CMat::Identity(phi.in_dim, phi.in_dim))));
  return out;
}

namespace {

void check_state(const CMat& rho, int m, int n, int k) {
  if (m < 1 || n < 1 || rho.rows() != static_cast<Eigen::Index>(m) * n || rho.cols() != rho.rows()) {
    throw DimensionError("state shape does not match factor dimensions");
  }
  if (k < 1 || k > std::min(m, n)) throw RangeError("k must satisfy 1 <= k <= min(m, n)");
  if (!is_psd(rho) || std::abs(rho.trace() - cplx(1.0)) > 1e-9) {
    throw RangeError("input is not a density matrix");
  }
}

}  // namespace

RealignResult realignment_test(const CMat& rho, int m, int n, int k) {
  check_state(rho, m, n, k);
  RealignResult out;
  out.value = kp_dual_norm(realign(rho, m, n), k * k, 2.0);
  out.detected = out.value > 1.0 + 1e-9;
  return out;
}

ReductionResult reduction_test(const CMat& rho, int m, int n, int k) {
  check_state(rho, m, n, k);
  ReductionResult out;
  const CMat first = k * kron(partial_trace(rho, m, n, 2), CMat(CMat::Identity(n, n))) - rho;
  const CMat second = k * kron(CMat(CMat::Identity(m, m)), partial_trace(rho, m, n, 1)) - rho;
  out.min_eig_first = lambda_min(hermitian_part(first));
  out.min_eig_second = lambda_min(hermitian_part(second));
  out.violated = std::min(out.min_eig_first, out.min_eig_second) < -1e-10;
  return out;
}

CMat quadripartite_operator(const CVec& v, int m, int n) {
  if (v.size() != static_cast<Eigen::Index>(m) * m * n * n) throw DimensionError("quadripartite_operator: length mismatch");
  CMat A(m * n, m * n);
  for (int i1 = 0; i1 < m; ++i1)
    for (int i2 = 0; i2 < m; ++i2)
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) A(i2 * n + j2, i1 * n + j1) = v(((i1 * m + i2) * n + j1) * n + j2);
  return A;
}

namespace {

std::vector<int> multi_digits(long long idx, const MultiDims& dims) {
  std::vector<int> d(dims.size());
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    d[f] = static_cast<int>(idx % dims[f]);
    idx /= dims[f];
  }
  return d;
}

// Contraction of v with conj(w_g) for every g != f.
CVec contract_except(const CVec& v, const MultiDims& dims, const std::vector<CVec>& w, int f) {
  CVec u = CVec::Zero(dims[f]);
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    const std::vector<int> d = multi_digits(idx, dims);
    cplx c = v(idx);
    for (std::size_t g = 0; g < dims.size(); ++g) {
      if (static_cast<int>(g) != f) c *= std::conj(w[g](d[g]));
    }
    u(d[f]) += c;
  }
  return u;
}

double product_overlap(const CVec& v, const MultiDims& dims, const std::vector<CVec>& w) {
  const CVec u = contract_except(v, dims, w, 0);
  return std::norm(w[0].dot(u));
}

std::vector<CVec> hopm(const CVec& v, const MultiDims& dims, std::vector<CVec> w) {
  double val = product_overlap(v, dims, w);
  for (int it = 0; it < 500; ++it) {
    for (std::size_t f = 0; f < dims.size(); ++f) {
      CVec u = contract_except(v, dims, w, static_cast<int>(f));
      if (u.norm() > 0.0) w[f] = u / u.norm();
    }
    const double nv = product_overlap(v, dims, w);
    const bool done = std::abs(nv - val) <= 1e-14;
    val = nv;
    if (done) break;
  }
  return w;
}

// sigma_1^2 of the unfolding that groups the factors in `left` against the rest.
double unfolding_top(const CVec& v, const MultiDims& dims, const std::vector<int>& left) {
  std::vector<int> perm(dims.size());
  std::vector<bool> in_left(dims.size(), false);
  for (int f : left) in_left[f] = true;
  int pos = 0;
  long long rows = 1;
  for (int f : left) {
    perm[f] = pos++;
    rows *= dims[f];
  }
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!in_left[f]) perm[f] = pos++;
  }
  const CVec pv = permute_factors(v, dims, perm);
  const long long cols = pv.size() / rows;
  const double s = sk_vector_norm(pv, static_cast<int>(rows), static_cast<int>(cols), 1);
  return s * s;
}

}  // namespace

GeometricMeasure geometric_measure(const CVec& v, const MultiDims& dims, const EstimateBudget& budget) {
  const int p = static_cast<int>(dims.size());
  if (p < 2 || p > 4) throw RangeError("geometric_measure: supports 2 to 4 subsystems");
  long long N = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("geometric_measure: invalid dimension");
    N *= d;
  }
  if (v.size() != N) throw DimensionError("geometric_measure: vector length does not match dimensions");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw RangeError("geometric_measure: vector must be normalized");
  GeometricMeasure out;

  if (p == 2) {
    const SchmidtData sd = schmidt_decompose(v, dims[0], dims[1]);
    const double s = sd.coefficients(0);
    out.lower = out.upper = 1.0 - s * s;
    out.exact = true;
    out.method = "schmidt";
    out.factors = {sd.left.col(0), sd.right.col(0)};
    return out;
  }

  if (p == 3) {
    const int d1 = dims[1], d2 = dims[2];
    const CMat R = hermitian_part(partial_trace(CMat(v * v.adjoint()), dims[0], d1 * d2, 1));
    const NormEstimate e = estimate(R, d1, d2, 1, budget);
    out.operator_form = R;
    out.lower = std::max(0.0, 1.0 - e.upper);
    out.upper = 1.0 - e.lower;
    out.exact = e.upper - e.lower <= 1e-9;
    out.method = "reduced-state-s1:" + e.upper_method;
    const SchmidtData sd = schmidt_decompose(e.lower_witness, d1, d2);
    std::vector<CVec> w = {CVec::Zero(dims[0]), sd.left.col(0), sd.right.col(0)};
    w[0] = contract_except(v, dims, w, 0);
    if (w[0].norm() > 0.0) w[0] /= w[0].norm();
    out.factors = w;
    return out;
  }

  if (dims[0] == dims[1] && dims[2] == dims[3]) out.operator_form = quadripartite_operator(v, dims[0], dims[2]);
  std::vector<CVec> init(p);
  for (int f = 0; f < p; ++f) {
    std::vector<int> perm(p);
    perm[f] = 0;
    int pos = 1;
    for (int g = 0; g < p; ++g) {
      if (g != f) perm[g] = pos++;
    }
    const CVec pv = permute_factors(v, dims, perm);
    init[f] = schmidt_decompose(pv, dims[f], static_cast<int>(N / dims[f])).left.col(0);
  }
  std::vector<CVec> best = hopm(v, dims, init);
  double best_val = product_overlap(v, dims, best);
  const int restarts = std::max(0, budget.seesaw.restarts);
  for (int t = 0; t < restarts; ++t) {
    Rng rng(derive_seed(budget.seesaw.seed, static_cast<std::uint64_t>(t)));
    std::vector<CVec> w(p);
    for (int f = 0; f < p; ++f) w[f] = random_unit_vector(dims[f], rng);
    w = hopm(v, dims, w);
    const double val = product_overlap(v, dims, w);
    if (val > best_val) {
      best_val = val;
      best = w;
    }
  }
  double cut = 1.0;
  const std::vector<std::vector<int>> cuts = {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}};
  for (const auto& c : cuts) cut = std::min(cut, unfolding_top(v, dims, c));
  out.lower = std::max(0.0, 1.0 - cut);
  out.upper = 1.0 - best_val;
  out.heuristic = true;
  out.method = "heuristic-seesaw";
  out.factors = best;
  return out;
}

}  // namespace entanglia
