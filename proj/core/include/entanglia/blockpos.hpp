#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entanglia/sknorm.hpp"

namespace entanglia {

enum class BPStatus { KBlockPositive, NotKBlockPositive, Unknown };

const char* to_string(BPStatus s);

struct BPVerdict {
  BPStatus status = BPStatus::Unknown;
  CVec witness;  // Schmidt rank <= k with <w|X|w> < 0 when status is NotKBlockPositive
  std::string rule;
  std::vector<std::pair<std::string, double>> bounds;
};

struct BlockPosOptions {
  EstimateBudget budget;
  // Relative slack for the sufficient (positive) conditions.
  double boundary_tol = 1e-7;
  bool search_witness = true;
};

// Spectral rules (a), (b), (c) on the positive/negative/null parts of X.
BPVerdict spectral_test(const CMat& X, int m, int n, int k, const BlockPosOptions& opts = {});
// Decides c I - X for PSD X.
BPVerdict shifted_identity_test(const CMat& X, int m, int n, int k, double c, const BlockPosOptions& opts = {});
// Rules on the canonical generalized Kraus operators of a Hermiticity-preserving map.
BPVerdict kraus_test(const Channel& phi, int k, const BlockPosOptions& opts = {});
// Purely spectral necessary conditions. Each verdict is NotKBlockPositive or Unknown.
std::vector<BPVerdict> eig_structure_tests(const CMat& X, int m, int n, int k, const BlockPosOptions& opts = {});
// X must have exactly two distinct eigenvalues.
BPVerdict two_eval_test(const CMat& X, int m, int n, int k, const BlockPosOptions& opts = {});

// Runs every applicable rule and returns the first conclusive verdict.
BPVerdict block_positive(const CMat& X, int m, int n, int k, const BlockPosOptions& opts = {});

// SR <= k vector with <w|X|w> < -1e-10 found by see-saw, or an empty vector.
CVec find_negative_witness(const CMat& X, int m, int n, int k, const SeesawOptions& opts = {});
bool verify_witness(const CMat& X, int m, int n, int k, const CVec& w);

}  // namespace entanglia
