#pragma once

#include <functional>
#include <vector>

#include "entanglia/tensor.hpp"

namespace entanglia {

// Linear map M_m -> M_n stored as its Choi matrix sum_ij E_ij (x) Phi(E_ij).
struct Channel {
  BipartiteOperator choi;
  int in_dim = 1;
  int out_dim = 1;

  Channel() = default;
  Channel(CMat c, int m, int n);
};

// Phi(X) = sum_l weights[l] * left[l] X right[l]^dagger.
struct KrausSet {
  std::vector<CMat> left;
  std::vector<CMat> right;
  std::vector<double> weights;
  bool completely_positive = false;  // right == left and all weights 1
};

// A = sum_l |l> (x) A_l : C^m -> C^env (x) C^n.
struct StinespringForm {
  CMat A;
  int env_dim = 1;
  int in_dim = 1;
  int out_dim = 1;
};

Channel choi_from_kraus(const KrausSet& kraus, int m, int n);
Channel choi_from_kraus(const std::vector<CMat>& kraus_ops);
Channel choi_from_map(const std::function<CMat(const CMat&)>& phi, int m, int n);
CMat apply(const Channel& phi, const CMat& X);
// (id_d (x) Phi)(Y) for Y acting on C^d (x) C^m.
CMat apply_second(const Channel& phi, const CMat& Y, int d);
KrausSet kraus_from_choi(const Channel& phi);
CMat apply_kraus(const KrausSet& kraus, const CMat& X);

StinespringForm stinespring(const Channel& phi);
CMat apply_stinespring(const StinespringForm& s, const CMat& X);

bool is_trace_preserving(const Channel& phi, double tol = 1e-9);
bool is_unital(const Channel& phi, double tol = 1e-9);
bool is_cp(const Channel& phi, double rel_tol = 1e-9);
bool is_hermiticity_preserving(const Channel& phi);

Channel dual_channel(const Channel& phi);
Channel complementary_channel(const Channel& phi);

Channel identity_channel(int n);
Channel transpose_map(int n);
Channel depolarizing(int n);
// X -> (1 - p) X + p Tr(X) I / n.
Channel depolarizing_channel(int n, double p);
Channel reduction_k_map(int n, int k);
Channel schur_map(const CMat& A);
Channel unitary_channel(const CMat& U);
Channel amplitude_damping(double gamma);

CMat werner_state(int n, double alpha);

}  // namespace entanglia
