#pragma once

#include <string>
#include <vector>

#include "entanglia/densemat.hpp"

namespace entanglia {

enum class Field { Real, Complex };
enum class Sense { Minimize, Maximize };
enum class SDStatus { Optimal, PrimalInfeasible, DualInfeasible, MaxIter, NumericalFailure };

const char* to_string(SDStatus s);

struct BlockSpec {
  int size = 1;
  Field field = Field::Complex;
};

// Primal:  optimize sum_b <C_b, X_b>  s.t.  sum_b <A_ib, X_b> = b_i,  X_b >= 0.
// Dual (minimize sense):  maximize b^T y  s.t.  C - sum_i y_i A_i = Z >= 0.
// A 0x0 entry in A[i] stands for a zero block.
struct SDProblem {
  std::vector<BlockSpec> blocks;
  std::vector<CMat> C;
  std::vector<std::vector<CMat>> A;
  RVec b;
  Sense sense = Sense::Minimize;

  int num_constraints() const { return static_cast<int>(b.size()); }
  void validate() const;
};

struct SDOptions {
  double tol = 1e-10;
  double accept_tol = 1e-8;  // residual level accepted as optimal when the iteration breaks down
  int max_iter = 200;
  double step_fraction = 0.98;
  std::string dump_path;  // write the problem as JSON when non-empty
};

struct SDSolution {
  SDStatus status = SDStatus::NumericalFailure;
  std::vector<CMat> X;
  std::vector<CMat> Z;
  RVec y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

SDSolution solve(const SDProblem& problem, const SDOptions& opts = {});

RMat real_embed(const CMat& H);
CMat real_unembed(const RMat& S);

std::string problem_to_json(const SDProblem& problem);

}  // namespace entanglia
