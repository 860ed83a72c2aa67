#include <gtest/gtest.h>

#include "entanglia/channels.hpp"
#include "oracles.hpp"

using namespace entanglia;

namespace {

Channel random_cp(int m, int n, int kraus, std::mt19937_64& g) {
  std::vector<CMat> ops;
  for (int i = 0; i < kraus; ++i) ops.push_back(oracle::rand_mat(n, m, g));
  return choi_from_kraus(ops);
}

CMat eval_kraus(const std::vector<CMat>& ops, const CMat& X) {
  CMat Y = CMat::Zero(ops[0].rows(), ops[0].rows());
  for (const CMat& A : ops) Y += A * X * A.adjoint();
  return Y;
}

}  // namespace

TEST(Choi, TransposeIsSwap) {
  const Channel T = transpose_map(2);
  EXPECT_NEAR((T.choi.mat - oracle::swap(2)).norm(), 0.0, 0.0);
  const RVec ev = herm_eigvals(T.choi.mat);
  EXPECT_NEAR(ev(0), -1.0, 1e-14);
  EXPECT_NEAR(ev(3), 1.0, 1e-14);
}

TEST(Choi, DepolarizingAndIdentity) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_NEAR((depolarizing(n).choi.mat - CMat::Identity(n * n, n * n) / double(n)).norm(), 0.0, 1e-14);
    const CVec psi = oracle::psi_plus(n);
    EXPECT_NEAR((identity_channel(n).choi.mat - double(n) * psi * psi.adjoint()).norm(), 0.0, 1e-13);
  }
}

TEST(Choi, MapAndKrausAgree) {
  std::mt19937_64 g(1);
  std::vector<CMat> ops{oracle::rand_mat(3, 2, g), oracle::rand_mat(3, 2, g)};
  const Channel a = choi_from_kraus(ops);
  const Channel b = choi_from_map([&](const CMat& X) { return eval_kraus(ops, X); }, 2, 3);
  EXPECT_EQ(a.in_dim, 2);
  EXPECT_EQ(a.out_dim, 3);
  EXPECT_NEAR((a.choi.mat - b.choi.mat).norm(), 0.0, 1e-12);
  const CMat X = oracle::rand_mat(2, 2, g);
  EXPECT_NEAR((entanglia::apply(a, X) - eval_kraus(ops, X)).norm(), 0.0, 1e-12);
}

TEST(Kraus, DepolarizingFamily) {
  const int n = 3;
  const KrausSet k = kraus_from_choi(depolarizing(n));
  EXPECT_TRUE(k.completely_positive);
  EXPECT_EQ(k.left.size(), 9u);
  std::mt19937_64 g(2);
  const CMat X = oracle::rand_mat(n, n, g);
  std::vector<CMat> ref;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat E = CMat::Zero(n, n);
      E(i, j) = 1.0 / std::sqrt(double(n));
      ref.push_back(E);
    }
  EXPECT_NEAR((apply_kraus(k, X) - eval_kraus(ref, X)).norm(), 0.0, 1e-12);
}

TEST(Kraus, UnitaryChannelHasOneOperator) {
  std::mt19937_64 g(3);
  const CMat U = Eigen::HouseholderQR<CMat>(oracle::rand_mat(3, 3, g)).householderQ();
  const KrausSet k = kraus_from_choi(unitary_channel(U));
  ASSERT_EQ(k.left.size(), 1u);
  const cplx phase = (U.adjoint() * k.left[0]).trace() / 3.0;
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_NEAR((k.left[0] - phase * U).norm(), 0.0, 1e-12);
}

TEST(Kraus, RoundTripAndMarginalIdentity) {
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Channel phi = random_cp(2, 3, 1 + trial % 4, g);
    const KrausSet k = kraus_from_choi(phi);
    ASSERT_TRUE(k.completely_positive);
    CMat sum = CMat::Zero(2, 2);
    for (const CMat& A : k.left) sum += A.adjoint() * A;
    const CMat marginal = partial_trace(phi.choi.mat, 2, 3, 2).transpose();
    EXPECT_NEAR((sum - marginal).norm(), 0.0, 1e-9);
    EXPECT_NEAR((choi_from_kraus(k, 2, 3).choi.mat - phi.choi.mat).norm(), 0.0, 1e-9);
  }
}

TEST(Kraus, GeneralizedForHermiticityPreserving) {
  const Channel T = transpose_map(3);
  const KrausSet k = kraus_from_choi(T);
  EXPECT_FALSE(k.completely_positive);
  std::mt19937_64 g(5);
  const CMat X = oracle::rand_mat(3, 3, g);
  EXPECT_NEAR((apply_kraus(k, X) - X.transpose()).norm(), 0.0, 1e-12);
  EXPECT_NEAR((choi_from_kraus(k, 3, 3).choi.mat - T.choi.mat).norm(), 0.0, 1e-12);
}

TEST(Stinespring, ReproducesChannel) {
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Channel phi = random_cp(3, 2, 1 + trial % 3, g);
    const StinespringForm s = stinespring(phi);
    const CMat X = oracle::rand_mat(3, 3, g);
    EXPECT_NEAR((apply_stinespring(s, X) - entanglia::apply(phi, X)).norm(), 0.0, 1e-9);
  }
}

TEST(Properties, TraceUnitalPositive) {
  EXPECT_TRUE(is_trace_preserving(depolarizing(3)));
  EXPECT_TRUE(is_unital(depolarizing(3)));
  EXPECT_TRUE(is_trace_preserving(transpose_map(3)));
  EXPECT_TRUE(is_unital(transpose_map(3)));
  EXPECT_FALSE(is_cp(transpose_map(3)));
  EXPECT_TRUE(is_hermiticity_preserving(transpose_map(3)));
  const Channel zero(CMat::Zero(4, 4), 2, 2);
  EXPECT_FALSE(is_trace_preserving(zero));
  EXPECT_TRUE(is_trace_preserving(amplitude_damping(0.3)));
  EXPECT_FALSE(is_unital(amplitude_damping(0.3)));
}

TEST(Dual, SelfDualDepolarizingAndAdjointKraus) {
  EXPECT_NEAR((dual_channel(depolarizing(3)).choi.mat - depolarizing(3).choi.mat).norm(), 0.0, 1e-14);
  std::mt19937_64 g(7);
  const CMat A = oracle::rand_mat(3, 2, g);
  const Channel d = dual_channel(choi_from_kraus(std::vector<CMat>{A}));
  EXPECT_EQ(d.in_dim, 3);
  EXPECT_EQ(d.out_dim, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CMat E = CMat::Zero(3, 3);
      E(i, j) = 1.0;
      EXPECT_NEAR((entanglia::apply(d, E) - A.adjoint() * E * A).norm(), 0.0, 1e-12);
    }
}

TEST(Dual, TraceAndUnitalExchange) {
  const Channel ad = amplitude_damping(0.4);
  EXPECT_TRUE(is_trace_preserving(ad));
  EXPECT_TRUE(is_unital(dual_channel(ad)));
  EXPECT_FALSE(is_trace_preserving(dual_channel(ad)));
}

TEST(Complementary, IdentityChannel) {
  for (int n = 2; n <= 4; ++n) {
    const Channel c = complementary_channel(identity_channel(n));
    EXPECT_EQ(c.out_dim, 1);
    const CMat out = entanglia::apply(c, CMat::Identity(n, n));
    EXPECT_NEAR(operator_norm(out), double(n), 1e-12);
  }
}

TEST(Complementary, NormIdentityOnRandomChannels) {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 2, n = 2 + (trial / 2) % 2;
    const Channel phi = random_cp(m, n, 1 + trial % 4, g);
    const Channel c = complementary_channel(phi);
    EXPECT_NEAR(lambda_max(phi.choi.mat), operator_norm(entanglia::apply(c, CMat::Identity(m, m))),
                1e-9 * lambda_max(phi.choi.mat));
  }
}

TEST(Complementary, TracePreservationTransfers) {
  const Channel ad = amplitude_damping(0.25);
  EXPECT_TRUE(is_trace_preserving(complementary_channel(ad)));
  std::mt19937_64 g(9);
  const Channel nontp = random_cp(2, 2, 2, g);
  EXPECT_FALSE(is_trace_preserving(complementary_channel(nontp)));
}

TEST(Constructors, WernerAndReduction) {
  for (int n = 2; n <= 4; ++n)
    for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const CMat rho = werner_state(n, a);
      EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-13);
      EXPECT_NEAR((rho - rho.adjoint()).norm(), 0.0, 0.0);
      const RVec ev = herm_eigvals(partial_transpose(rho, n, n));
      const double s = n * n - a * n;
      EXPECT_NEAR(ev(n * n - 1), std::max(1.0, 1.0 - a * n) / s, 1e-12);
      EXPECT_NEAR(ev(0), std::min(1.0, 1.0 - a * n) / s, 1e-12);
    }
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const CVec psi = oracle::psi_plus(n);
      const CMat expect = double(k) * CMat::Identity(n * n, n * n) - double(n) * psi * psi.adjoint();
      EXPECT_NEAR((reduction_k_map(n, k).choi.mat - expect).norm(), 0.0, 1e-13);
    }
}

TEST(Constructors, DepolarizingChannelAndSchur) {
  std::mt19937_64 g(10);
  const CMat X = oracle::rand_mat(2, 2, g);
  const CMat out = entanglia::apply(depolarizing_channel(2, 0.3), X);
  EXPECT_NEAR((out - (0.7 * X + 0.3 * X.trace() * CMat::Identity(2, 2) / 2.0)).norm(), 0.0, 1e-13);
  const CMat A = oracle::rand_mat(3, 3, g), Y = oracle::rand_mat(3, 3, g);
  EXPECT_NEAR((entanglia::apply(schur_map(A), Y) - A.cwiseProduct(Y)).norm(), 0.0, 1e-12);
}
