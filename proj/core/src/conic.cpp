#include "entanglia/conic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace entanglia {

const char* to_string(SDStatus s) {
  switch (s) {
    case SDStatus::Optimal: return "Optimal";
    case SDStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SDStatus::DualInfeasible: return "DualInfeasible";
    case SDStatus::MaxIter: return "MaxIter";
    case SDStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

void SDProblem::validate() const {
  if (C.size() != blocks.size()) throw DimensionError("SDProblem: one objective matrix per block required");
  if (A.size() != static_cast<std::size_t>(b.size())) throw DimensionError("SDProblem: one constraint per entry of b");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const int n = blocks[k].size;
    if (n < 1) throw DimensionError("SDProblem: block size must be >= 1");
    if (C[k].rows() != n || C[k].cols() != n || !is_hermitian(C[k])) {
      throw DimensionError("SDProblem: objective block must be Hermitian of the block size");
    }
    if (blocks[k].field == Field::Real && C[k].imag().norm() > 1e-14) {
      throw DimensionError("SDProblem: real block with complex data");
    }
  }
  for (const auto& Ai : A) {
    if (Ai.size() != blocks.size()) throw DimensionError("SDProblem: constraint needs one entry per block");
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (Ai[k].size() == 0) continue;
      const int n = blocks[k].size;
      if (Ai[k].rows() != n || Ai[k].cols() != n || !is_hermitian(Ai[k])) {
        throw DimensionError("SDProblem: constraint block must be Hermitian of the block size");
      }
      if (blocks[k].field == Field::Real && Ai[k].imag().norm() > 1e-14) {
        throw DimensionError("SDProblem: real block with complex data");
      }
    }
  }
}

RMat real_embed(const CMat& H) {
  const Eigen::Index n = H.rows();
  RMat S(2 * n, 2 * n);
  S.topLeftCorner(n, n) = H.real();
  S.topRightCorner(n, n) = -H.imag();
  S.bottomLeftCorner(n, n) = H.imag();
  S.bottomRightCorner(n, n) = H.real();
  return S;
}

CMat real_unembed(const RMat& S) {
  const Eigen::Index n = S.rows() / 2;
  const RMat re = 0.5 * (S.topLeftCorner(n, n) + S.bottomRightCorner(n, n));
  const RMat im = 0.5 * (S.bottomLeftCorner(n, n) - S.topRightCorner(n, n));
  CMat H(n, n);
  H.real() = re;
  H.imag() = im;
  return H;
}

namespace {

struct RealProblem {
  std::vector<int> sizes;
  std::vector<RMat> C;
  std::vector<std::vector<RMat>> A;  // [constraint][block], empty = zero
  RVec b;
};

using Blocks = std::vector<RMat>;

double inner(const Blocks& P, const Blocks& Q) {
  double s = 0.0;
  for (std::size_t k = 0; k < P.size(); ++k) s += P[k].cwiseProduct(Q[k]).sum();
  return s;
}

double fro(const Blocks& P) { return std::sqrt(inner(P, P)); }

RVec apply_A(const RealProblem& P, const Blocks& X) {
  RVec out = RVec::Zero(P.b.size());
  for (Eigen::Index i = 0; i < P.b.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < X.size(); ++k) {
      if (P.A[i][k].size() != 0) s += P.A[i][k].cwiseProduct(X[k]).sum();
    }
    out(i) = s;
  }
  return out;
}

Blocks apply_At(const RealProblem& P, const RVec& y) {
  Blocks out;
  for (int n : P.sizes) out.push_back(RMat::Zero(n, n));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) == 0.0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (P.A[i][k].size() != 0) out[k] += y(i) * P.A[i][k];
    }
  }
  return out;
}

RMat sym(const RMat& M) { return 0.5 * (M + M.transpose()); }

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded); negative on failure.
double max_step(const Blocks& X, const Blocks& dX) {
  double alpha = kInf;
  for (std::size_t k = 0; k < X.size(); ++k) {
    Eigen::LLT<RMat> llt(X[k]);
    if (llt.info() != Eigen::Success) return -1.0;
    const RMat Linv_dX = llt.matrixL().solve(dX[k]);
    const RMat W = llt.matrixL().solve(Linv_dX.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> es(sym(W), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct RealSolution {
  SDStatus status = SDStatus::NumericalFailure;
  Blocks X, Z;
  RVec y;
  double pobj = 0.0, dobj = 0.0, gap = 0.0, pinf = 0.0, dinf = 0.0;
  int iterations = 0;
};

RealSolution solve_real(const RealProblem& P, const SDOptions& opts) {
  const std::size_t nb = P.sizes.size();
  const Eigen::Index m = P.b.size();
  double normC = 0.0, maxC = 0.0;
  for (const RMat& c : P.C) {
    normC += c.squaredNorm();
    maxC = std::max(maxC, c.norm());
  }
  normC = std::sqrt(normC);
  const double normb = P.b.norm();
  const double maxb = m > 0 ? P.b.cwiseAbs().maxCoeff() : 0.0;
  const double tau = 1.0 + maxb + maxC;
  double Ntot = 0.0;
  for (int n : P.sizes) Ntot += n;

  RealSolution S;
  auto breakdown = [&]() {
    const bool acceptable = S.pinf <= opts.accept_tol && S.dinf <= opts.accept_tol && S.gap <= opts.accept_tol;
    S.status = acceptable ? SDStatus::Optimal : SDStatus::NumericalFailure;
    return S;
  };
  for (int n : P.sizes) {
    S.X.push_back(tau * RMat::Identity(n, n));
    S.Z.push_back(tau * RMat::Identity(n, n));
  }
  S.y = RVec::Zero(m);

  std::vector<double> phist, dhist;
  for (int it = 0; it <= opts.max_iter; ++it) {
    S.iterations = it;
    const RVec rp = P.b - apply_A(P, S.X);
    Blocks Rd = apply_At(P, S.y);
    for (std::size_t k = 0; k < nb; ++k) Rd[k] = P.C[k] - S.Z[k] - Rd[k];
    S.pobj = inner(P.C, S.X);
    S.dobj = P.b.dot(S.y);
    const double mu = inner(S.X, S.Z) / Ntot;
    S.pinf = rp.norm() / (1.0 + normb);
    S.dinf = fro(Rd) / (1.0 + normC);
    S.gap = std::abs(S.pobj - S.dobj) / (1.0 + std::abs(S.pobj) + std::abs(S.dobj));
    if (S.pinf <= opts.tol && S.dinf <= opts.tol && S.gap <= opts.tol) {
      S.status = SDStatus::Optimal;
      return S;
    }
    phist.push_back(S.pinf);
    dhist.push_back(S.dinf);
    if (it >= 20) {
      const bool stalled = S.gap > opts.tol;
      if (stalled && S.pinf > 10.0 * phist[it - 20] && S.pinf > opts.tol) {
        S.status = SDStatus::PrimalInfeasible;
        return S;
      }
      if (stalled && S.dinf > 10.0 * dhist[it - 20] && S.dinf > opts.tol) {
        S.status = SDStatus::DualInfeasible;
        return S;
      }
    }
    if (fro(S.X) > 1e12) {
      S.status = SDStatus::DualInfeasible;
      return S;
    }
    if (fro(S.Z) > 1e12 || S.y.norm() > 1e12) {
      S.status = SDStatus::PrimalInfeasible;
      return S;
    }
    if (it == opts.max_iter) break;

    Blocks Zinv(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<RMat> llt(S.Z[k]);
      if (llt.info() != Eigen::Success) return breakdown();
      Zinv[k] = llt.solve(RMat::Identity(P.sizes[k], P.sizes[k]));
    }

    RMat M = RMat::Zero(m, m);
    for (std::size_t k = 0; k < nb; ++k) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (P.A[j][k].size() == 0) continue;
        const RMat G = S.X[k] * P.A[j][k] * Zinv[k];
        for (Eigen::Index i = 0; i <= j; ++i) {
          if (P.A[i][k].size() == 0) continue;
          M(i, j) += P.A[i][k].cwiseProduct(G).sum();
        }
      }
    }
    M = M.selfadjointView<Eigen::Upper>();
    Eigen::LLT<RMat> Mllt(M);
    Eigen::LDLT<RMat> Mldlt;
    const bool use_llt = Mllt.info() == Eigen::Success;
    if (!use_llt) {
      Mldlt.compute(M);
      if (Mldlt.info() != Eigen::Success) return breakdown();
    }
    auto solveM = [&](const RVec& h) -> RVec { return use_llt ? RVec(Mllt.solve(h)) : RVec(Mldlt.solve(h)); };

    auto direction = [&](const Blocks& R, Blocks& dX, RVec& dy, Blocks& dZ) {
      Blocks T(nb);
      for (std::size_t k = 0; k < nb; ++k) T[k] = (R[k] - S.X[k] * Rd[k]) * Zinv[k];
      dy = solveM(rp - apply_A(P, T));
      dZ = apply_At(P, dy);
      dX.assign(nb, RMat());
      for (std::size_t k = 0; k < nb; ++k) {
        dZ[k] = Rd[k] - dZ[k];
        dX[k] = sym((R[k] - S.X[k] * dZ[k]) * Zinv[k]);
      }
    };

    Blocks R(nb), dXa, dZa, dX, dZ;
    RVec dya, dy;
    for (std::size_t k = 0; k < nb; ++k) R[k] = -S.X[k] * S.Z[k];
    direction(R, dXa, dya, dZa);
    const double ap_max = max_step(S.X, dXa), ad_max = max_step(S.Z, dZa);
    if (ap_max < 0.0 || ad_max < 0.0) return breakdown();
    const double ap = std::min(1.0, ap_max), ad = std::min(1.0, ad_max);
    Blocks Xa(nb), Za(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Xa[k] = S.X[k] + ap * dXa[k];
      Za[k] = S.Z[k] + ad * dZa[k];
    }
    const double mu_aff = inner(Xa, Za) / Ntot;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    for (std::size_t k = 0; k < nb; ++k) {
      R[k] = sigma * mu * RMat::Identity(P.sizes[k], P.sizes[k]) - S.X[k] * S.Z[k] - dXa[k] * dZa[k];
    }
    direction(R, dX, dy, dZ);
    const double ap2 = max_step(S.X, dX), ad2 = max_step(S.Z, dZ);
    if (ap2 < 0.0 || ad2 < 0.0) return breakdown();
    const double sp = std::min(1.0, opts.step_fraction * ap2);
    const double sd = std::min(1.0, opts.step_fraction * ad2);
    for (std::size_t k = 0; k < nb; ++k) {
      S.X[k] = sym(S.X[k] + sp * dX[k]);
      S.Z[k] = sym(S.Z[k] + sd * dZ[k]);
    }
    S.y += sd * dy;
  }
  breakdown();
  if (S.status != SDStatus::Optimal) S.status = SDStatus::MaxIter;
  return S;
}

nlohmann::json matrix_json(const CMat& M) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      rr.push_back(M(i, j).real());
      ii.push_back(M(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

std::string problem_to_json(const SDProblem& problem) {
  nlohmann::json j;
  j["sense"] = problem.sense == Sense::Minimize ? "min" : "max";
  j["blocks"] = nlohmann::json::array();
  for (const BlockSpec& b : problem.blocks) {
    j["blocks"].push_back({{"size", b.size}, {"field", b.field == Field::Real ? "real" : "complex"}});
  }
  j["C"] = nlohmann::json::array();
  for (const CMat& c : problem.C) j["C"].push_back(matrix_json(c));
  j["A"] = nlohmann::json::array();
  for (const auto& Ai : problem.A) {
    nlohmann::json row = nlohmann::json::array();
    for (const CMat& a : Ai) row.push_back(a.size() == 0 ? nlohmann::json(nullptr) : matrix_json(a));
    j["A"].push_back(row);
  }
  j["b"] = std::vector<double>(problem.b.data(), problem.b.data() + problem.b.size());
  return j.dump();
}

SDSolution solve(const SDProblem& problem, const SDOptions& opts) {
  problem.validate();
  if (!opts.dump_path.empty()) {
    std::ofstream f(opts.dump_path);
    f << problem_to_json(problem) << '\n';
  }
  const double sign = problem.sense == Sense::Maximize ? -1.0 : 1.0;
  RealProblem P;
  P.b = problem.b;
  auto lift = [&](const CMat& M, std::size_t k) -> RMat {
    return problem.blocks[k].field == Field::Real ? RMat(M.real()) : real_embed(M);
  };
  for (std::size_t k = 0; k < problem.blocks.size(); ++k) {
    P.sizes.push_back(problem.blocks[k].field == Field::Real ? problem.blocks[k].size : 2 * problem.blocks[k].size);
    P.C.push_back(sign * lift(problem.C[k], k));
  }
  for (const auto& Ai : problem.A) {
    std::vector<RMat> row;
    for (std::size_t k = 0; k < Ai.size(); ++k) row.push_back(Ai[k].size() == 0 ? RMat() : lift(Ai[k], k));
    P.A.push_back(std::move(row));
  }

  const RealSolution R = solve_real(P, opts);
  SDSolution out;
  out.status = R.status;
  out.iterations = R.iterations;
  out.primal_objective = sign * R.pobj;
  out.dual_objective = sign * R.dobj;
  out.relative_gap = R.gap;
  out.primal_infeasibility = R.pinf;
  out.dual_infeasibility = R.dinf;
  out.y = sign * R.y;
  for (std::size_t k = 0; k < problem.blocks.size(); ++k) {
    if (problem.blocks[k].field == Field::Real) {
      out.X.push_back(R.X[k].cast<cplx>());
      out.Z.push_back(R.Z[k].cast<cplx>());
    } else {
      out.X.push_back(2.0 * real_unembed(R.X[k]));
      out.Z.push_back(real_unembed(R.Z[k]));
    }
  }
  return out;
}

}  // namespace entanglia
