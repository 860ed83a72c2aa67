#include "entanglia/blockpos.hpp"

#include <algorithm>
#include <cmath>

namespace entanglia {

const char* to_string(BPStatus s) {
  switch (s) {
    case BPStatus::KBlockPositive:
      return "KBlockPositive";
    case BPStatus::NotKBlockPositive:
      return "NotKBlockPositive";
    case BPStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr double kWitnessTol = 1e-10;

void check_args(const CMat& X, int m, int n, int k) {
  if (m < 1 || n < 1 || X.rows() != static_cast<Eigen::Index>(m) * n || X.cols() != X.rows()) {
    throw DimensionError("operator shape does not match factor dimensions");
  }
  if (k < 1 || k > std::min(m, n)) throw RangeError("k must satisfy 1 <= k <= min(m, n)");
}

CVec phase_fixed(CVec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

struct Parts {
  RVec lambda;
  CMat vectors;
  std::vector<int> pos, neg, zero;
};

Parts split(const CMat& X) {
  Parts p;
  const HermEigResult e = herm_eig(hermitian_part(X));
  p.lambda = e.eigenvalues;
  p.vectors = e.eigenvectors;
  const double tol = 1e-10 * std::max(1.0, p.lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < p.lambda.size(); ++i) {
    if (p.lambda(i) > tol) {
      p.pos.push_back(static_cast<int>(i));
    } else if (p.lambda(i) < -tol) {
      p.neg.push_back(static_cast<int>(i));
    } else {
      p.zero.push_back(static_cast<int>(i));
    }
  }
  return p;
}

CMat projector(const Parts& p, const std::vector<int>& idx, bool weighted) {
  const Eigen::Index N = p.vectors.rows();
  CMat P = CMat::Zero(N, N);
  for (int i : idx) {
    const double w = weighted ? std::abs(p.lambda(i)) : 1.0;
    P += w * p.vectors.col(i) * p.vectors.col(i).adjoint();
  }
  return P;
}

double min_positive(const Parts& p) {
  double v = kInf;
  for (int i : p.pos) v = std::min(v, p.lambda(i));
  return v;
}

double max_positive(const Parts& p) {
  double v = -kInf;
  for (int i : p.pos) v = std::max(v, p.lambda(i));
  return v;
}

// Accepts a Not verdict only with a verified witness; otherwise tries the see-saw fallback.
BPVerdict not_verdict(const CMat& X, int m, int n, int k, const CVec& candidate, const std::string& rule,
                      const BlockPosOptions& opts) {
  BPVerdict v;
  v.rule = rule;
  if (candidate.size() == X.rows() && verify_witness(X, m, n, k, candidate)) {
    v.status = BPStatus::NotKBlockPositive;
    v.witness = phase_fixed(candidate);
    return v;
  }
  if (opts.search_witness) {
    const CVec w = find_negative_witness(X, m, n, k, opts.budget.seesaw);
    if (w.size() > 0) {
      v.status = BPStatus::NotKBlockPositive;
      v.witness = phase_fixed(w);
      return v;
    }
  }
  v.status = BPStatus::Unknown;
  v.rule = rule + " (unverified)";
  return v;
}

}  // namespace

bool verify_witness(const CMat& X, int m, int n, int k, const CVec& w) {
  if (w.size() != X.rows() || w.norm() == 0.0) return false;
  const CVec u = w / w.norm();
  if (schmidt_rank(u, m, n) > k) return false;
  return u.dot(X * u).real() < -kWitnessTol;
}

CVec find_negative_witness(const CMat& X, int m, int n, int k, const SeesawOptions& opts) {
  check_args(X, m, n, k);
  const CMat Xh = hermitian_part(X);
  const double shift = std::max(0.0, lambda_max(Xh));
  const CMat Y = shift * CMat::Identity(X.rows(), X.cols()) - Xh;
  const SeesawResult r = sk_lower_seesaw(psd_projection(Y), m, n, k, opts);
  const CVec w = truncate_sr(r.witness, m, n, k);
  if (verify_witness(Xh, m, n, k, w)) return w;
  return CVec();
}

BPVerdict spectral_test(const CMat& X, int m, int n, int k, const BlockPosOptions& opts) {
  check_args(X, m, n, k);
  require_hermitian(X, "spectral_test");
  const Parts p = split(X);
  BPVerdict out;
  if (p.neg.empty()) {
    out.status = BPStatus::KBlockPositive;
    out.rule = "positive-semidefinite";
    return out;
  }
  const CMat Pneg = projector(p, p.neg, false);
  const NormEstimate eneg = estimate(Pneg, m, n, k, opts.budget);
  out.bounds = {{"P-.lower", eneg.lower}, {"P-.upper", eneg.upper}};

  // (a)
  if (eneg.lower >= 1.0 - 1e-9) {
    BPVerdict v = not_verdict(X, m, n, k, eneg.lower_witness, "spectral(a)", opts);
    v.bounds = out.bounds;
    if (v.status == BPStatus::NotKBlockPositive) return v;
  }

  // (b)
  std::vector<int> nz = p.neg;
  nz.insert(nz.end(), p.zero.begin(), p.zero.end());
  const NormEstimate enz = p.zero.empty() ? eneg : estimate(projector(p, nz, false), m, n, k, opts.budget);
  const CMat Xabs = projector(p, p.neg, true);
  const NormEstimate exneg = estimate(Xabs, m, n, k, opts.budget);
  out.bounds.emplace_back("P0+P-.lower", enz.lower);
  out.bounds.emplace_back("P0+P-.upper", enz.upper);
  out.bounds.emplace_back("X-.lower", exneg.lower);
  out.bounds.emplace_back("X-.upper", exneg.upper);
  const double lam_pos_min = min_positive(p);
  if (enz.upper < 1.0 && !p.pos.empty()) {
    const double mu = exneg.upper / (1.0 - enz.upper);
    out.bounds.emplace_back("mu.upper", mu);
    if (lam_pos_min >= mu - opts.boundary_tol * std::max(1.0, std::abs(mu))) {
      out.status = BPStatus::KBlockPositive;
      out.rule = "spectral(b)";
      return out;
    }
  }

  // (c)
  bool equal_neg = true;
  for (int i : p.neg) {
    equal_neg = equal_neg && std::abs(p.lambda(i) - p.lambda(p.neg[0])) <= 1e-9 * std::abs(p.lambda(p.neg[0]));
  }
  if (equal_neg && p.zero.empty() && eneg.upper < 1.0 && eneg.lower < 1.0 && !p.pos.empty()) {
    const double mu_low = exneg.lower / (1.0 - eneg.lower);
    out.bounds.emplace_back("mu.lower", mu_low);
    if (max_positive(p) < mu_low) {
      BPVerdict v = not_verdict(X, m, n, k, exneg.lower_witness, "spectral(c)", opts);
      v.bounds = out.bounds;
      if (v.status == BPStatus::NotKBlockPositive) return v;
    }
  }
  out.status = BPStatus::Unknown;
  out.rule = "spectral";
  return out;
}

BPVerdict shifted_identity_test(const CMat& X, int m, int n, int k, double c, const BlockPosOptions& opts) {
  check_args(X, m, n, k);
  const NormEstimate e = estimate(X, m, n, k, opts.budget);
  const CMat Y = c * CMat::Identity(X.rows(), X.cols()) - hermitian_part(X);
  BPVerdict out;
  out.bounds = {{"norm.lower", e.lower}, {"norm.upper", e.upper}};
  if (c >= e.upper - opts.boundary_tol * std::max(1.0, std::abs(e.upper))) {
    out.status = BPStatus::KBlockPositive;
    out.rule = "shifted-identity";
    return out;
  }
  if (c < e.lower) {
    BPVerdict v = not_verdict(Y, m, n, k, e.lower_witness, "shifted-identity", opts);
    v.bounds = out.bounds;
    return v;
  }
  out.rule = "shifted-identity";
  return out;
}

BPVerdict kraus_test(const Channel& phi, int k, const BlockPosOptions& opts) {
  const CMat& C = phi.choi.mat;
  const int m = phi.in_dim, n = phi.out_dim;
  check_args(C, m, n, k);
  require_hermitian(C, "kraus_test");
  const Parts p = split(C);
  BPVerdict out;
  if (p.neg.empty()) {
    out.status = BPStatus::KBlockPositive;
    out.rule = "completely-positive";
    return out;
  }
  for (int i : p.neg) {
    const CVec v = p.vectors.col(i);
    if (schmidt_rank(v, m, n) <= k) {
      BPVerdict r = not_verdict(C, m, n, k, v, "kraus-rank", opts);
      if (r.status == BPStatus::NotKBlockPositive) return r;
    }
  }
  double sb = 0.0, sc = 0.0, num = 0.0;
  for (int i : p.neg) {
    const double s = std::pow(sk_vector_norm(p.vectors.col(i), m, n, k), 2);
    sb += s;
    num += std::abs(p.lambda(i)) * s;
  }
  for (int i : p.zero) sc += std::pow(sk_vector_norm(p.vectors.col(i), m, n, k), 2);
  out.bounds = {{"sum.B", sb}, {"sum.C", sc}, {"weighted.B", num}};
  if (sb + sc < 1.0 && !p.pos.empty()) {
    const double mu = num / (1.0 - sb - sc);
    out.bounds.emplace_back("mu", mu);
    if (min_positive(p) >= mu - opts.boundary_tol * std::max(1.0, std::abs(mu))) {
      out.status = BPStatus::KBlockPositive;
      out.rule = "kraus(a)";
      return out;
    }
  }
  const int mn = m * n;
  if (p.neg.size() == 1 && static_cast<int>(p.pos.size()) == mn - 1 && sb < 1.0) {
    const double mu = std::abs(p.lambda(p.neg[0])) * sb / (1.0 - sb);
    if (max_positive(p) < mu) {
      const CVec w = truncate_sr(p.vectors.col(p.neg[0]), m, n, k);
      BPVerdict r = not_verdict(C, m, n, k, w, "kraus(b)", opts);
      r.bounds = out.bounds;
      if (r.status == BPStatus::NotKBlockPositive) return r;
    }
  }
  out.rule = "kraus";
  return out;
}

std::vector<BPVerdict> eig_structure_tests(const CMat& X, int m, int n, int k, const BlockPosOptions& opts) {
  check_args(X, m, n, k);
  require_hermitian(X, "eig_structure_tests");
  const Parts p = split(X);
  const int r = static_cast<int>(p.neg.size());
  const double lmin = p.lambda(0), lmax = p.lambda(p.lambda.size() - 1);
  const double mn = static_cast<double>(m) * n;
  const double mi = std::min(m, n);
  const double tol = 1e-9;
  std::vector<BPVerdict> out;
  auto fire = [&](const std::string& rule, bool fired, const CVec& candidate, double lhs, double rhs) {
    BPVerdict v;
    v.rule = rule;
    if (fired) {
      BPVerdict nv = not_verdict(X, m, n, k, candidate, rule, opts);
      v.status = BPStatus::NotKBlockPositive;
      v.witness = nv.witness;
    }
    v.bounds = {{"lhs", lhs}, {"rhs", rhs}};
    out.push_back(v);
  };

  fire("max-negative-eigenvalues", r > (m - k) * (n - k), CVec(), r, static_cast<double>((m - k) * (n - k)));

  if (r > 0 && lmax <= 0.0) {
    fire("most-negative-eigenvalue", true, truncate_sr(p.vectors.col(0), m, n, k), lmin, lmax);
    fire("eigenvalue-count-rank", true, CVec(), lmin, lmax);
    fire("eigenvalue-ratio-interpolated", true, CVec(), lmin, lmax);
  } else if (r > 0) {
    const double ratio = lmin / lmax;
    const double c = std::pow(sk_vector_norm(p.vectors.col(0), m, n, k), 2);
    const double b1 = 1.0 - 1.0 / c;
    fire("most-negative-eigenvalue", ratio < b1 - tol, truncate_sr(p.vectors.col(0), m, n, k), ratio, b1);

    const double disc = (n - m) * static_cast<double>(n - m) + 4.0 * r - 4.0;
    const double d = std::ceil((n + m - std::sqrt(disc)) / 2.0 - 1e-12);
    const double b2 = 1.0 - d / k;
    fire("eigenvalue-count-rank", ratio < b2 - tol, CVec(), ratio, b2);

    const double rad = mn > 1.0 ? std::max(0.0, (mn * r - static_cast<double>(r) * r) / (mn - 1.0)) : 0.0;
    const double b3 = 1.0 - mn * (mi - 1.0) / (mn * (k - 1.0) + (mi - k) * (r + std::sqrt(rad)));
    fire("eigenvalue-ratio-interpolated", ratio < b3 - tol, CVec(), ratio, b3);
  } else {
    fire("most-negative-eigenvalue", false, CVec(), lmin, lmax);
    fire("eigenvalue-count-rank", false, CVec(), lmin, lmax);
    fire("eigenvalue-ratio-interpolated", false, CVec(), lmin, lmax);
  }

  const CMat Xh = hermitian_part(X);
  const double t = Xh.trace().real();
  const double t2 = (Xh * Xh).trace().real();
  fire("trace-square", t2 > t * t + tol * std::max(1.0, t * t), CVec(), t2, t * t);
  return out;
}

BPVerdict two_eval_test(const CMat& X, int m, int n, int k, const BlockPosOptions& opts) {
  check_args(X, m, n, k);
  require_hermitian(X, "two_eval_test");
  const RVec ev = herm_eigvals(hermitian_part(X));
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<double> distinct;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (distinct.empty() || ev(i) - distinct.back() > 1e-9 * scale) distinct.push_back(ev(i));
  }
  if (distinct.size() != 2) throw RangeError("two_eval_test: operator must have exactly two distinct eigenvalues");
  const double l1 = distinct[1], l2 = distinct[0];
  BPVerdict out;
  out.rule = "two-eigenvalues";
  if (l2 >= 0.0) {
    out.status = BPStatus::KBlockPositive;
    return out;
  }
  const HermEigResult e = herm_eig(hermitian_part(X));
  CMat Pneg = CMat::Zero(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) - l2 <= 1e-9 * scale) Pneg += e.eigenvectors.col(i) * e.eigenvectors.col(i).adjoint();
  }
  if (l1 <= 0.0) return not_verdict(X, m, n, k, truncate_sr(e.eigenvectors.col(0), m, n, k), out.rule, opts);
  const double thr = l1 / (l1 - l2);
  const NormEstimate est = estimate(Pneg, m, n, k, opts.budget);
  out.bounds = {{"threshold", thr}, {"P-.lower", est.lower}, {"P-.upper", est.upper}};
  if (est.upper <= thr + opts.boundary_tol * std::max(1.0, thr)) {
    out.status = BPStatus::KBlockPositive;
    return out;
  }
  if (est.lower > thr) {
    BPVerdict v = not_verdict(X, m, n, k, est.lower_witness, out.rule, opts);
    v.bounds = out.bounds;
    return v;
  }
  return out;
}

BPVerdict block_positive(const CMat& X, int m, int n, int k, const BlockPosOptions& opts) {
  check_args(X, m, n, k);
  require_hermitian(X, "block_positive");
  const RVec ev = herm_eigvals(hermitian_part(X));
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) >= -1e-10 * scale) {
    BPVerdict v;
    v.status = BPStatus::KBlockPositive;
    v.rule = "positive-semidefinite";
    return v;
  }
  for (const BPVerdict& v : eig_structure_tests(X, m, n, k, opts)) {
    if (v.status == BPStatus::NotKBlockPositive && v.witness.size() > 0) return v;
  }
  int distinct = 1;
  for (Eigen::Index i = 1; i < ev.size(); ++i) distinct += ev(i) - ev(i - 1) > 1e-9 * scale ? 1 : 0;
  if (distinct == 2) {
    const BPVerdict v = two_eval_test(X, m, n, k, opts);
    if (v.status != BPStatus::Unknown) return v;
  }
  const BPVerdict s = spectral_test(X, m, n, k, opts);
  if (s.status != BPStatus::Unknown) return s;
  for (const BPVerdict& v : eig_structure_tests(X, m, n, k, opts)) {
    if (v.status == BPStatus::NotKBlockPositive) return v;
  }
  return s;
}

}  // namespace entanglia
