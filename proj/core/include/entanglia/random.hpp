#pragma once

#include <cstdint>
#include <random>

#include "entanglia/densemat.hpp"

namespace entanglia {

std::uint64_t splitmix64(std::uint64_t x);
// Seed for the counter-th independent stream derived from a user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

CVec random_unit_vector(int dim, Rng& rng);
CVec random_real_unit_vector(int dim, Rng& rng);
CMat random_ginibre(int rows, int cols, Rng& rng);
CMat random_unitary(int n, Rng& rng);
CMat random_hermitian(int n, Rng& rng);
// Wishart-type PSD matrix G G^dagger with G of shape n x rank, scaled to unit trace.
CMat random_density(int n, int rank, Rng& rng);

}  // namespace entanglia
