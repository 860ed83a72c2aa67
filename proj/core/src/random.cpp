#include "entanglia/random.hpp"

namespace entanglia {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

CVec random_unit_vector(int dim, Rng& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v.normalized();
}

CVec random_real_unit_vector(int dim, Rng& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  return v.normalized();
}

CMat random_ginibre(int rows, int cols, Rng& rng) {
  CMat G(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) G(i, j) = rng.complex_normal();
  return G;
}

CMat random_unitary(int n, Rng& rng) {
  const CMat G = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(G);
  CMat Q = qr.householderQ();
  const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const cplx d = R(i, i);
    if (std::abs(d) > 0.0) Q.col(i) *= d / std::abs(d);
  }
  return Q;
}

CMat random_hermitian(int n, Rng& rng) {
  const CMat G = random_ginibre(n, n, rng);
  return 0.5 * (G + G.adjoint());
}

CMat random_density(int n, int rank, Rng& rng) {
  const CMat G = random_ginibre(n, rank, rng);
  CMat rho = G * G.adjoint();
  return rho / rho.trace().real();
}

}  // namespace entanglia
