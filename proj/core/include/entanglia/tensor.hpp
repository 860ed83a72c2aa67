#pragma once

#include <vector>

#include "entanglia/densemat.hpp"

namespace entanglia {

struct BipartiteOperator {
  CMat mat;
  int m = 1;
  int n = 1;

  BipartiteOperator() = default;
  BipartiteOperator(CMat x, int m_, int n_);
};

using MultiDims = std::vector<int>;

CMat kron(const CMat& A, const CMat& B);
CVec kron(const CVec& a, const CVec& b);
CMat kron_power(const CMat& A, int p);

// which = 1 traces out the first factor, which = 2 the second.
CMat partial_trace(const CMat& X, int m, int n, int which);
CMat partial_trace(const BipartiteOperator& X, int which);

CMat partial_transpose(const CMat& X, int m, int n, int which = 2);
BipartiteOperator partial_transpose(const BipartiteOperator& X, int which = 2);
// Transposes every factor whose mask entry is true.
CMat partial_transpose(const CMat& X, const MultiDims& dims, const std::vector<bool>& mask);

// R(|i><j| (x) |k><l|) = |i><k| (x) |j><l|, shape (m*m) x (n*n).
CMat realign(const CMat& X, int m, int n);
CMat realign(const BipartiteOperator& X);

CMat swap_operator(int n);
// Permutation operator sending input factor i to output position perm[i].
CMat swap_perm(const MultiDims& dims, const std::vector<int>& perm);
// Equivalent to P X P^dagger with P = swap_perm(dims, perm), without forming P.
CMat permute_factors(const CMat& X, const MultiDims& dims, const std::vector<int>& perm);
CVec permute_factors(const CVec& v, const MultiDims& dims, const std::vector<int>& perm);

// Occupation vectors (a_0..a_{n-1}) with sum s, ordered with a_0 descending first.
std::vector<std::vector<int>> occupations(int n, int s);
CMat sym_projector(int n, int p);
CMat sym_isometry(int n, int s);

// Column-stacking vec of an n x m matrix; v[i*n + j] = A(j, i).
CVec vec(const CMat& A);
// Inverse of vec for v in C^m (x) C^n; returns an n x m matrix.
CMat mat(const CVec& v, int m, int n);

CVec basis_vector(int dim, int i);
// Normalized maximally entangled vector sum_i |ii> / sqrt(n).
CVec max_entangled(int n);

long long binomial(int n, int k);

}  // namespace entanglia
