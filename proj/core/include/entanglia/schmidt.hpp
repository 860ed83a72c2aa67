#pragma once

#include <vector>

#include "entanglia/tensor.hpp"

namespace entanglia {

// v = sum_i coefficients(i) * left.col(i) (x) right.col(i).
struct SchmidtData {
  RVec coefficients;  // descending, length min(m, n)
  CMat left;          // m x min(m, n)
  CMat right;         // n x min(m, n)
  int rank = 0;
};

struct DualNormResult {
  double value = 0.0;
  // Optimizer scaled to unit s(k)-norm, so that <w|v> = value.
  CVec optimizer;
};

struct OperatorSchmidt {
  RVec coefficients;
  std::vector<CMat> A;  // m x m, Hilbert-Schmidt orthonormal
  std::vector<CMat> B;  // n x n, Hilbert-Schmidt orthonormal
};

SchmidtData schmidt_decompose(const CVec& v, int m, int n);
int schmidt_rank(const CVec& v, int m, int n, double tol = 1e-10);
double sk_vector_norm(const CVec& v, int m, int n, int k);
DualNormResult sk_vector_dual_norm(const CVec& v, int m, int n, int k);
OperatorSchmidt operator_schmidt(const CMat& X, int m, int n);
CVec truncate_sr(const CVec& v, int m, int n, int k);

}  // namespace entanglia
