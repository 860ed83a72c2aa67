#include <gtest/gtest.h>

#include "entanglia/random.hpp"
#include "entanglia/sknorm.hpp"
#include "oracles.hpp"

using namespace entanglia;

namespace {

const double kSampleNorm = (3 + 2 * std::sqrt(2.0)) / 8;

CMat sample_state() {
  CMat r(4, 4);
  r << 5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  return r / 8.0;
}

CMat projector(const CVec& v) { return v * v.adjoint(); }

// Evaluates the Jacobi polynomial P_d^{(a,b)}(x) by its three-term recurrence.
double jacobi_eval(int d, double a, double b, double x) {
  double p0 = 1.0, p1 = (a + 1) + (a + b + 2) * (x - 1) / 2;
  if (d == 0) return p0;
  for (int k = 2; k <= d; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2);
    const double a2 = (c - 1) * (a * a - b * b);
    const double a3 = (c - 2) * (c - 1) * c;
    const double a4 = 2.0 * (k + a - 1) * (k + b - 1) * c;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST(RankOne, ClosedForm) {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k) {
      const CVec psi = oracle::psi_plus(n);
      EXPECT_NEAR(sk_exact_rank1(psi, psi, n, n, k), double(k) / n, 1e-12);
    }
  std::mt19937_64 g(1);
  const CVec p = oracle::kron(oracle::rand_unit(2, g), oracle::rand_unit(3, g));
  EXPECT_NEAR(sk_exact_rank1(p, p, 2, 3, 1), 1.0, 1e-12);
  const CVec x = oracle::rand_unit(6, g), y = oracle::rand_unit(6, g);
  EXPECT_NEAR(sk_exact_rank1(x, y, 2, 3, 2), 1.0, 1e-12);
  EXPECT_NEAR(sk_exact_rank1(x, y, 2, 3, 1), oracle::sk_vec(x, 2, 3, 1) * oracle::sk_vec(y, 2, 3, 1), 1e-12);
}

TEST(Seesaw, KnownValues) {
  EXPECT_NEAR(sk_lower_seesaw(CMat::Identity(9, 9), 3, 3, 1).value, 1.0, 1e-12);
  EXPECT_NEAR(sk_lower_seesaw(werner_state(2, 0.5), 2, 2, 1).value, 1.0 / 3, 1e-9);
  EXPECT_NEAR(sk_lower_seesaw(sample_state(), 2, 2, 1).value, kSampleNorm, 1e-9);
  EXPECT_NEAR(sk_lower_seesaw(werner_state(3, -0.5), 3, 3, 1).value, 1.0 / 7, 1e-9);
}

TEST(Seesaw, AgreesWithProductGridOracle) {
  std::mt19937_64 g(2);
  for (int trial = 0; trial < 5; ++trial) {
    const CMat X = oracle::rand_density(4, 2, g);
    const double grid = oracle::s1_brute_2x2(X, 24);
    const double v = sk_lower_seesaw(X, 2, 2, 1).value;
    EXPECT_GE(v, grid - 1e-12);
    EXPECT_NEAR(v, grid, 5e-3);
  }
}

TEST(Seesaw, WitnessCertifiesValueAndHistoryIsMonotone) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + trial % 2;
    const CMat X = oracle::rand_density(9, 3, g);
    SeesawOptions o;
    o.seed = 100 + trial;
    o.restarts = 10;
    const SeesawResult r = sk_lower_seesaw(X, 3, 3, k, o);
    EXPECT_NEAR(r.witness.norm(), 1.0, 1e-12);
    EXPECT_LE(oracle::schmidt(r.witness, 3, 3).tail(3 - k).norm(), 1e-10);
    EXPECT_NEAR((r.witness.adjoint() * X * r.witness)(0, 0).real(), r.value, 1e-10);
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_GE(r.history[i], r.history[i - 1] - 1e-12);
  }
}

TEST(Seesaw, DeterministicAcrossThreadCounts) {
  std::mt19937_64 g(4);
  const CMat X = oracle::rand_density(9, 4, g);
  SeesawOptions a;
  a.seed = 7;
  a.restarts = 12;
  SeesawOptions b = a;
  b.threads = 4;
  const SeesawResult ra = sk_lower_seesaw(X, 3, 3, 1, a);
  const SeesawResult rb = sk_lower_seesaw(X, 3, 3, 1, b);
  EXPECT_EQ(ra.value, rb.value);
  EXPECT_EQ(ra.best_start, rb.best_start);
  EXPECT_EQ(ra.witness, rb.witness);
}

TEST(Seesaw, FullRankGivesTopEigenvalue) {
  std::mt19937_64 g(5);
  const CMat X = oracle::rand_density(6, 6, g);
  EXPECT_NEAR(sk_lower_seesaw(X, 2, 3, 2).value, lambda_max(X), 1e-12);
}

TEST(Spectral, TightAndValid) {
  std::mt19937_64 g(6);
  const CVec v = oracle::rand_unit(6, g);
  EXPECT_NEAR(sk_upper_spectral(projector(v), 2, 3, 1), oracle::sk_vec(v, 2, 3, 1) * oracle::sk_vec(v, 2, 3, 1),
              1e-12);
  CMat D = CMat::Zero(4, 4);
  D.diagonal() << 0.4, -0.2, 0.3, 0.1;
  EXPECT_NEAR(sk_upper_spectral(D, 2, 2, 1), 1.0, 1e-12);
  for (int n = 2; n <= 3; ++n)
    for (double a : {-1.0, -0.5, 0.5, 1.0}) {
      const CMat rho = werner_state(n, a);
      EXPECT_GE(sk_upper_spectral(rho, n, n, 1), sk_lower_seesaw(rho, n, n, 1).value - 1e-12);
    }
}

TEST(Realignment, FrobeniusAndMaximallyEntangled) {
  std::mt19937_64 g(7);
  const CMat X = oracle::rand_density(6, 3, g);
  EXPECT_NEAR(sk_upper_realign(X, 2, 3, 2), X.norm(), 1e-12);
  for (int n = 2; n <= 4; ++n) EXPECT_NEAR(sk_upper_realign(projector(oracle::psi_plus(n)), n, n, 1), 1.0 / n, 1e-12);
}

TEST(KposSdp, WernerBounds) {
  const struct {
    int n;
    double a, transpose, reduction;
  } rows[] = {{2, 0.5, 1.0 / 3, 1.0 / 3}, {2, -0.5, 0.3, 0.3}, {3, 0.5, 2.0 / 15, 0.2}, {3, -0.5, 1.0 / 7, 1.0 / 7}};
  for (const auto& r : rows) {
    const CMat rho = werner_state(r.n, r.a);
    const KposResult t = sk_upper_kpos_sdp(rho, r.n, r.n, 1, PositiveMapChoice::Transpose);
    const KposResult d = sk_upper_kpos_sdp(rho, r.n, r.n, 1, PositiveMapChoice::Reduction);
    EXPECT_NEAR(t.value, r.transpose, 1e-6);
    EXPECT_NEAR(d.value, r.reduction, 1e-6);
    EXPECT_EQ(t.map_label, "transpose");
    EXPECT_TRUE(is_psd(t.Y, 1e-7));
    EXPECT_NEAR(lambda_max(CMat(rho + partial_transpose(t.Y, r.n, r.n))), t.value, 1e-8);
  }
}

TEST(KposSdp, IdentityAndRangeChecks) {
  EXPECT_NEAR(sk_upper_kpos_sdp(CMat::Identity(4, 4), 2, 2, 1, PositiveMapChoice::Transpose).value, 1.0, 1e-7);
  EXPECT_NEAR(sk_upper_kpos_sdp(CMat::Identity(9, 9), 3, 3, 2, PositiveMapChoice::Reduction).value, 1.0, 1e-7);
  EXPECT_THROW(sk_upper_kpos_sdp(CMat::Identity(9, 9), 3, 3, 2, PositiveMapChoice::Transpose), RangeError);
  const Channel red = reduction_k_map(2, 1);
  const KposResult u = sk_upper_kpos_sdp(werner_state(2, 0.5), 2, 2, 1, PositiveMapChoice::User, &red);
  EXPECT_EQ(u.map_label, "user");
  EXPECT_NEAR(u.value, 1.0 / 3, 1e-6);
}

TEST(BetaS, ReferenceValuesAndLimits) {
  const CMat r = sample_state();
  EXPECT_NEAR(beta_s(r, 2, 2, 1), 0.75, 1e-12);
  EXPECT_NEAR(beta_s(r, 2, 2, 2), 0.7405, 5e-5);
  EXPECT_NEAR(beta_s(r, 2, 2, 20), 0.7299, 5e-5);
  std::mt19937_64 g(8);
  const CMat X = oracle::rand_density(6, 3, g);
  EXPECT_NEAR(beta_s(X, 2, 3, 1), lambda_max(X), 1e-12);
  const CMat P = projector(oracle::psi_plus(2));
  double prev = beta_s(P, 2, 2, 1);
  for (int s = 2; s <= 30; ++s) {
    const double b = beta_s(P, 2, 2, s);
    EXPECT_LE(b, prev + 1e-12);
    EXPECT_GE(b, 0.5 - 1e-12);
    prev = b;
  }
  EXPECT_LT(prev, 0.55);
}

TEST(BetaS, CompressionMatchesExplicitProjection) {
  std::mt19937_64 g(9);
  const CMat X = oracle::rand_density(4, 2, g);
  for (int s = 1; s <= 3; ++s) {
    const CMat P = kron(sym_projector(2, s), CMat(CMat::Identity(2, 2)));
    const CMat big = kron(CMat(CMat::Identity(1 << (s - 1), 1 << (s - 1))), X);
    EXPECT_NEAR(beta_s(X, 2, 2, s), lambda_max(CMat(P * big * P)), 1e-10);
  }
}

TEST(Dps, SampleStateAndReferenceCertificate) {
  const CMat r = sample_state();
  const DpsResult d = dps_sdp_s1(r, 2, 2, 1, true);
  EXPECT_NEAR(d.value, kSampleNorm, 1e-8);
  EXPECT_TRUE(is_psd(d.W, 1e-8));
  EXPECT_NEAR(lambda_max(CMat(r + partial_transpose(d.W, 2, 2))), kSampleNorm, 1e-9);
  const double s2 = std::sqrt(2.0);
  CMat W(4, 4);
  W << 2 * s2 - 2, -1, -1, 0, -1, 2 * s2 + 2, -2, -1, -1, -2, 2 * s2 + 2, -1, 0, -1, -1, 2 * s2 + 2;
  W /= 16.0;
  EXPECT_TRUE(is_psd(W, 1e-12));
  EXPECT_NEAR(lambda_max(CMat(r + partial_transpose(W, 2, 2))), kSampleNorm, 1e-12);
}

TEST(Dps, WithoutPptAndWerner) {
  std::mt19937_64 g(10);
  const CMat X = oracle::rand_density(4, 2, g);
  EXPECT_NEAR(dps_sdp_s1(X, 2, 2, 1, false).value, lambda_max(X), 1e-12);
  EXPECT_NEAR(dps_sdp_s1(werner_state(2, 0.5), 2, 2, 1, true).value, 1.0 / 3, 1e-8);
  EXPECT_NEAR(dps_sdp_s1(sample_state(), 2, 2, 2, true).value, kSampleNorm, 1e-7);
  EXPECT_THROW(dps_sdp_s1(CMat::Identity(9, 9), 3, 3, 4, true), SizeLimitError);
  EXPECT_EQ(dps_transpose_mask(2), (std::vector<bool>{false, false, true}));
  EXPECT_EQ(dps_transpose_mask(3), (std::vector<bool>{false, false, true, true}));
}

TEST(Jacobi, RootsAndGs) {
  const RVec r1 = jacobi_roots(1, 0, 1);
  EXPECT_NEAR(r1(0), 1.0 / 3, 1e-14);
  EXPECT_NEAR(jacobi_gs(2, 1), 2.0 / 3, 1e-14);
  for (int d = 2; d <= 8; ++d) {
    const RVec r = jacobi_roots(d, 1, 3);
    for (int i = 0; i < d; ++i) {
      EXPECT_GT(r(i), -1.0);
      EXPECT_LT(r(i), 1.0);
      EXPECT_NEAR(jacobi_eval(d, 1, 3, r(i)), 0.0, 1e-9);
    }
  }
  for (int n = 2; n <= 4; ++n) {
    double prev = 2.0;
    for (int s = 1; s <= 20; ++s) {
      const double gs = jacobi_gs(n, s);
      EXPECT_GT(gs, 0.0);
      EXPECT_LT(gs, prev);
      prev = gs;
    }
  }
}

TEST(ErrorBounds, Formulas) {
  EXPECT_NEAR(error_lower_bound(2, 1, BoundKind::Alpha, 0.9, 0.3), 0.9 / 3 + 0.3 / 3, 1e-14);
  EXPECT_NEAR(error_lower_bound(2, 20, BoundKind::Beta, 0.8, 0.1), 20.0 / 22 * 0.8 + 0.1 / 22, 1e-14);
  EXPECT_NEAR(error_lower_bound(3, 5, BoundKind::Beta, 0.4, 0.4), 6.0 / 8 * 0.4, 1e-14);
  for (int s = 1; s <= 10; ++s) {
    EXPECT_LE(error_lower_bound(3, s, BoundKind::Alpha, 0.4, 0.4), 0.4);
    EXPECT_LE(error_lower_bound(3, s, BoundKind::Beta, 0.4, 0.4), 0.4);
  }
  const CMat r = sample_state();
  EXPECT_NEAR(error_lower_bound(2, 1, BoundKind::Beta, beta_s(r, 2, 2, 1), lambda_min(r)), 0.25, 5e-5);
  EXPECT_NEAR(error_lower_bound(2, 20, BoundKind::Beta, beta_s(r, 2, 2, 20), lambda_min(r)), 0.6635, 5e-4);
}

TEST(AnalyticBounds, MaximallyEntangledProjection) {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k) {
      EXPECT_NEAR(scaling_upper(double(k) / n, k, n), 1.0, 1e-14);
      EXPECT_NEAR(scaling_lower(1.0, n, k), double(k) / n, 1e-14);
      EXPECT_NEAR(main_proj_lower_1(1, n, n, k), double(k) / n, 1e-14);
      const double lb = lower_bound_eig(projector(oracle::psi_plus(n)), n, n, k);
      EXPECT_LE(lb, double(k) / n + 1e-12);
    }
  EXPECT_NEAR(main_proj_lower_1(1, 2, 4, 1), 0.5, 1e-14);
  EXPECT_NEAR(s1_norm_trace_lower(CMat::Identity(6, 6), 2, 3), 1.0, 1e-14);
  EXPECT_NEAR(proj_norm_lower(0.5, 1, 2, 2, 2), 1.0, 1e-14);
}

TEST(AnalyticBounds, BelowSeesawOnRandomStates) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 10; ++trial) {
    const CMat X = oracle::rand_density(9, 1 + trial % 9, g);
    for (int k = 1; k <= 2; ++k) {
      const NormEstimate e = estimate(X, 3, 3, k);
      EXPECT_LE(lower_bound_eig(X, 3, 3, k), e.upper + 1e-9);
      if (k == 1) EXPECT_LE(s1_norm_trace_lower(X, 3, 3), e.upper + 1e-9);
    }
  }
}

TEST(Estimate, KnownIntervals) {
  const NormEstimate a = estimate(sample_state(), 2, 2, 1);
  EXPECT_NEAR(a.lower, kSampleNorm, 1e-6);
  EXPECT_NEAR(a.upper, kSampleNorm, 1e-6);
  const NormEstimate b = estimate(CMat::Identity(4, 4), 2, 2, 1);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
  const NormEstimate c = estimate(werner_state(3, -0.5), 3, 3, 1);
  EXPECT_NEAR(c.lower, 1.0 / 7, 1e-6);
  EXPECT_NEAR(c.upper, 1.0 / 7, 1e-6);
  EXPECT_FALSE(c.methods.empty());
}

TEST(Estimate, SandwichOnRandomOperators) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const CMat X = oracle::rand_density(n * n, 1 + trial % (n * n), g);
    for (int k = 1; k <= n; ++k) {
      const NormEstimate e = estimate(X, n, n, k);
      for (const auto& [lname, lv] : e.lower_bounds)
        for (const auto& [uname, uv] : e.upper_bounds) EXPECT_LE(lv, uv + 1e-7) << lname << " vs " << uname;
    }
  }
}

TEST(Relaxation, StateIsDensityMatrix) {
  const CMat r = sample_state();
  const RelaxationResult res =
      state_relaxation_sdp(r, CMat::Identity(4, 4), {partial_transpose_map({2, 2}, {false, true})});
  EXPECT_NEAR(std::abs(res.sigma.trace() - 1.0), 0.0, 1e-8);
  EXPECT_TRUE(is_psd(res.sigma, 1e-7));
  EXPECT_GE(res.upper, res.solver_value - 1e-9);
  EXPECT_NEAR(res.upper, kSampleNorm, 1e-8);
}
