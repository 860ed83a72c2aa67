#include "entanglia_cli/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "entanglia/apps.hpp"
#include "entanglia_cli/report.hpp"

namespace entanglia::cli {

namespace {

struct Common {
  std::string input = "-";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  int restarts = 50;
};

struct Context {
  std::string input_text;
  std::uint64_t seed = 0;
  int threads = 1;
  int restarts = 50;

  EstimateBudget budget() const {
    EstimateBudget b;
    b.seesaw.seed = seed;
    b.seesaw.threads = threads;
    b.seesaw.restarts = restarts;
    return b;
  }
};

struct Outcome {
  json results = json::object();
  json methods = json::array();
  int exit_code = kOk;
};

double expectation(const CMat& X, const CVec& w) { return (w.adjoint() * X * w)(0, 0).real(); }

json named_values(const std::vector<std::pair<std::string, double>>& v) {
  json out = json::array();
  for (const auto& [name, value] : v) out.push_back(json{{"method", name}, {"value", value}});
  return out;
}

json real_vector(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatrixFile read_bipartite(const Context& ctx, bool want_vector) {
  MatrixFile f = parse_matrix_text(ctx.input_text);
  if (want_vector && !f.is_vector) throw InputError("expected a vector (1-D 're' array)");
  if (!want_vector && f.is_vector) throw InputError("expected a matrix (2-D 're' array)");
  if (!f.m) {
    if (f.dims.size() == 2) {
      f.m = f.dims[0];
      f.n = f.dims[1];
    } else {
      throw InputError("input must specify factor dimensions 'm' and 'n'");
    }
  }
  return f;
}

Channel read_channel(const Context& ctx) {
  const MatrixFile f = read_bipartite(ctx, false);
  return Channel(f.mat, *f.m, *f.n);
}

json estimate_json(const NormEstimate& e) {
  json j;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["lower_method"] = e.lower_method;
  j["upper_method"] = e.upper_method;
  j["lower_bounds"] = named_values(e.lower_bounds);
  j["upper_bounds"] = named_values(e.upper_bounds);
  j["witness"] = vector_json(e.lower_witness);
  if (e.certificate.matrix.size() > 0) {
    j["certificate"] = json{{"kind", e.certificate.kind}, {"label", e.certificate.label},
                            {"matrix", matrix_json(e.certificate.matrix)}};
  }
  return j;
}

void append_methods(json& methods, const std::vector<std::string>& names) {
  for (const auto& s : names) methods.push_back(s);
}

json verdict_json(const BPVerdict& v, const CMat& X) {
  json j;
  j["verdict"] = to_string(v.status);
  j["rule"] = v.rule;
  j["bounds"] = named_values(v.bounds);
  if (v.witness.size() > 0) {
    j["witness"] = vector_json(v.witness);
    j["witness_value"] = expectation(X, v.witness);
  }
  return j;
}

Outcome cmd_schmidt(const Context& ctx) {
  const MatrixFile f = read_bipartite(ctx, true);
  const SchmidtData s = schmidt_decompose(f.mat.col(0), *f.m, *f.n);
  Outcome o;
  o.results["coefficients"] = real_vector(s.coefficients);
  o.results["rank"] = s.rank;
  o.results["left"] = matrix_json(s.left);
  o.results["right"] = matrix_json(s.right);
  o.methods.push_back("svd");
  return o;
}

Outcome cmd_vec_norm(const Context& ctx, int k, bool dual) {
  const MatrixFile f = read_bipartite(ctx, true);
  const CVec v = f.mat.col(0);
  Outcome o;
  o.results["k"] = k;
  if (dual) {
    const DualNormResult d = sk_vector_dual_norm(v, *f.m, *f.n, k);
    o.results["value"] = d.value;
    o.results["optimizer"] = vector_json(d.optimizer);
    o.methods.push_back("water-filling");
  } else {
    o.results["value"] = sk_vector_norm(v, *f.m, *f.n, k);
    o.methods.push_back("ky-fan-schmidt");
  }
  return o;
}

struct OpNormArgs {
  int k = 1;
  std::string method = "all";
  std::optional<int> s;
  bool ppt = false;
};

Outcome cmd_op_norm(const Context& ctx, const OpNormArgs& a) {
  const MatrixFile f = read_bipartite(ctx, false);
  const CMat& X = f.mat;
  const int m = *f.m;
  const int n = *f.n;
  EstimateBudget budget = ctx.budget();
  Outcome o;
  o.results["k"] = a.k;
  if (a.method == "seesaw") {
    const SeesawResult r = sk_lower_seesaw(X, m, n, a.k, budget.seesaw);
    o.results["lower"] = r.value;
    o.results["witness"] = vector_json(r.witness);
    o.results["witness_value"] = expectation(X, r.witness);
    o.results["best_start"] = r.best_start;
    o.results["iterations"] = static_cast<int>(r.history.size());
    o.methods.push_back("seesaw");
  } else if (a.method == "spectral") {
    o.results["upper"] = sk_upper_spectral(X, m, n, a.k);
    o.methods.push_back("spectral");
  } else if (a.method == "realign") {
    o.results["upper"] = sk_upper_realign(X, m, n, a.k);
    o.methods.push_back("realignment");
  } else if (a.method == "kpos-sdp") {
    const auto choice = a.k == 1 ? PositiveMapChoice::Transpose : PositiveMapChoice::Reduction;
    const KposResult r = sk_upper_kpos_sdp(X, m, n, a.k, choice, nullptr, budget.sdp);
    o.results["upper"] = r.value;
    o.results["map"] = r.map_label;
    o.results["certificate"] = matrix_json(r.Y);
    o.results["solver_iterations"] = r.relaxation.solution.iterations;
    o.methods.push_back("kpos-sdp:" + r.map_label);
  } else if (a.method == "dps") {
    if (a.k != 1) throw RangeError("dps: only k = 1 is supported");
    const int s = a.s.value_or(1);
    const DpsResult r = dps_sdp_s1(X, m, n, s, a.ppt, budget.sdp);
    o.results["upper"] = r.value;
    o.results["level"] = r.level;
    o.results["ppt"] = r.with_ppt;
    o.results["certificate"] = matrix_json(r.W);
    o.methods.push_back("dps-s" + std::to_string(s) + (a.ppt ? "-ppt" : ""));
  } else {
    if (a.s) {
      budget.dps_level = *a.s;
      budget.dps_ppt = true;
    }
    const NormEstimate e = estimate(X, m, n, a.k, budget);
    o.results.update(estimate_json(e));
    append_methods(o.methods, e.methods);
  }
  return o;
}

struct BlockPosArgs {
  int k = 1;
  std::string rule = "all";
  double c = 0.0;
};

Outcome cmd_block_positive(const Context& ctx, const BlockPosArgs& a) {
  const MatrixFile f = read_bipartite(ctx, false);
  const CMat& X = f.mat;
  const int m = *f.m;
  const int n = *f.n;
  BlockPosOptions opts;
  opts.budget = ctx.budget();
  Outcome o;
  BPVerdict v;
  if (a.rule == "spectral") {
    v = spectral_test(X, m, n, a.k, opts);
  } else if (a.rule == "kraus") {
    v = kraus_test(Channel(X, m, n), a.k, opts);
  } else if (a.rule == "eig") {
    const std::vector<BPVerdict> all = eig_structure_tests(X, m, n, a.k, opts);
    json fired = json::array();
    for (const BPVerdict& x : all) {
      if (x.status == BPStatus::NotKBlockPositive) fired.push_back(x.rule);
      if (v.status == BPStatus::Unknown && x.status != BPStatus::Unknown) v = x;
    }
    if (v.status == BPStatus::Unknown && !all.empty()) v.rule = "eig-structure";
    o.results["fired"] = std::move(fired);
  } else if (a.rule == "two-eval") {
    v = two_eval_test(X, m, n, a.k, opts);
  } else if (a.rule == "shifted-identity") {
    v = shifted_identity_test(X, m, n, a.k, a.c, opts);
  } else {
    v = block_positive(X, m, n, a.k, opts);
  }
  const CMat target = a.rule == "shifted-identity"
                          ? CMat(a.c * CMat::Identity(X.rows(), X.cols()) - X)
                          : X;
  o.results["k"] = a.k;
  o.results.update(verdict_json(v, target));
  o.methods.push_back(v.rule.empty() ? a.rule : v.rule);
  if (v.status == BPStatus::NotKBlockPositive) o.exit_code = kVerdict;
  return o;
}

struct WernerArgs {
  int n = 2;
  double alpha = 0.0;
  int k = 1;
};

Outcome cmd_werner(const Context& ctx, const WernerArgs& a) {
  if (a.n < 2) throw RangeError("werner: n must be >= 2");
  if (a.k < 1 || a.k > a.n) throw RangeError("werner: k must satisfy 1 <= k <= n");
  if (a.alpha < 0.0 || a.alpha > 1.0) throw RangeError("werner: alpha must lie in [0, 1]");
  Outcome o;
  o.results["n"] = a.n;
  o.results["alpha"] = a.alpha;
  o.results["k"] = a.k;
  o.results["closed_form"] = werner_sk_norm(a.n, a.alpha, a.k);
  o.methods.push_back("closed-form");
  const CMat rho = werner_state(a.n, a.alpha);
  const EstimateBudget budget = ctx.budget();
  json sdp = json::array();
  if (static_cast<long long>(a.n) * a.n <= budget.sdp_max_dim) {
    if (a.k == 1) {
      const KposResult t = sk_upper_kpos_sdp(rho, a.n, a.n, 1, PositiveMapChoice::Transpose, nullptr, budget.sdp);
      sdp.push_back(json{{"map", t.map_label}, {"upper", t.value}});
      o.methods.push_back("kpos-sdp:" + t.map_label);
    }
    if (a.k < a.n) {
      const KposResult r = sk_upper_kpos_sdp(rho, a.n, a.n, a.k, PositiveMapChoice::Reduction, nullptr, budget.sdp);
      sdp.push_back(json{{"map", r.map_label}, {"upper", r.value}});
      o.methods.push_back("kpos-sdp:" + r.map_label);
    }
  }
  o.results["sdp"] = std::move(sdp);
  const SeesawResult s = sk_lower_seesaw(rho, a.n, a.n, a.k, budget.seesaw);
  o.results["seesaw_lower"] = s.value;
  o.results["witness"] = vector_json(s.witness);
  o.methods.push_back("seesaw");
  const WernerThresholds th = werner_thresholds(a.n);
  o.results["thresholds"] = json{{"ppt", th.ppt}, {"one_copy_distillable", th.one_copy_distillable},
                                 {"entangled", th.entangled}};
  return o;
}

struct BoundEntArgs {
  int n = 4;
  int r = 1;
  std::optional<std::string> alpha;
};

std::pair<long long, long long> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const long long num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw InputError("bad fraction");
    const std::string rest = text.substr(slash + 1);
    const long long den = std::stoll(rest, &used);
    if (used != rest.size() || den <= 0) throw InputError("bad fraction");
    return {num, den};
  } catch (const std::logic_error&) {
    throw InputError("alpha: expected a decimal or a fraction a/b, got '" + text + "'");
  }
}

double parse_decimal(const std::string& text) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw InputError("bad number");
    return x;
  } catch (const std::logic_error&) {
    throw InputError("alpha: expected a decimal or a fraction a/b, got '" + text + "'");
  }
}

Outcome cmd_bound_ent(const Context&, const BoundEntArgs& a) {
  if (a.n < 2 || a.r < 1) throw RangeError("bound-ent: need n >= 2 and r >= 1");
  Outcome o;
  o.results["n"] = a.n;
  o.results["r"] = a.r;
  o.results["rank_formula"] = bound_proj_rank_formula(a.n, a.r);
  o.results["s1_closed_form"] = bound_proj_s1(a.n, a.r);
  o.methods.push_back("closed-form");
  long long dim = 1;
  for (int i = 0; i < 2 * a.r; ++i) dim *= a.n;
  o.results["dimension"] = dim;
  if (dim <= kBoundProjMaxDim) {
    const S1Verification v = verify_bound_proj_s1(a.n, a.r);
    o.results["verification"] = json{{"rank", v.rank},
                                     {"product_value", v.product_value},
                                     {"lambda_max_partial_transpose", v.lambda_max_pt},
                                     {"idempotency_error", v.idempotency_error}};
    o.methods.push_back("sparse-projector");
  }
  if (a.n >= 3) {
    const S2Bounds b = bound_proj_s2_bounds(a.n, a.r);
    o.results["s2"] = json{{"lower", b.lower}, {"upper", b.upper}};
  }
  o.results["p"] = undistillable_p(a.n, a.r);
  const auto th = undistillable_threshold(a.n, a.r);
  o.results["applicable"] = th.has_value();
  o.results["threshold"] = th ? json(*th) : json(nullptr);
  if (const auto q = undistillable_threshold_rational(a.n, a.r)) {
    o.results["threshold_exact"] = std::to_string(q->first) + "/" + std::to_string(q->second);
  }
  if (a.alpha) {
    UndistillReport rep;
    if (a.alpha->find('/') != std::string::npos) {
      const auto [num, den] = parse_fraction(*a.alpha);
      rep = certify_undistillable_exact(a.n, a.r, num, den);
    } else {
      rep = certify_undistillable(a.n, a.r, parse_decimal(*a.alpha));
    }
    json c;
    c["alpha"] = rep.alpha;
    c["status"] = to_string(rep.status);
    if (rep.applicable) {
      c["lambda_pos_min"] = rep.lambda_pos_min;
      c["lambda_neg_max"] = rep.lambda_neg_max;
      c["s2_upper"] = rep.s2_upper;
      c["margin"] = rep.margin;
      c["exact"] = rep.exact;
      if (rep.exact) c["margin_exact"] = rep.margin_exact;
    }
    o.results["certification"] = std::move(c);
    o.methods.push_back(rep.exact ? "spectral-certificate:exact" : "spectral-certificate");
  }
  return o;
}

Outcome cmd_gate_fidelity(const Context& ctx, int dps) {
  const Channel E = read_channel(ctx);
  FidelityOptions opts;
  opts.budget = ctx.budget();
  opts.dps_level = dps;
  const FidelityReport r = min_gate_fidelity(E, opts);
  Outcome o;
  o.results["lower"] = r.lower;
  o.results["upper"] = r.upper;
  o.results["lambda_max"] = r.lambda_max;
  o.results["worst_state"] = vector_json(r.worst_state);
  if (r.worst_state.size() > 0) o.results["worst_state_fidelity"] = gate_fidelity(E, r.worst_state);
  json d = json::array();
  for (const auto& [level, value] : r.dps_uppers) d.push_back(json{{"level", level}, {"value", value}});
  o.results["dps"] = std::move(d);
  o.results["norm_estimate"] = json{{"lower", r.estimate.lower}, {"upper", r.estimate.upper},
                                    {"lower_method", r.estimate.lower_method},
                                    {"upper_method", r.estimate.upper_method}};
  append_methods(o.methods, r.estimate.methods);
  return o;
}

Outcome cmd_output_purity(const Context& ctx, int k) {
  const Channel phi = read_channel(ctx);
  const NormEstimate e = max_output_purity(phi, k, ctx.budget());
  Outcome o;
  o.results["k"] = k;
  o.results.update(estimate_json(e));
  const CbPurity cb = cb_output_purity(phi);
  o.results["cb_value"] = cb.value;
  o.results["cb_complementary_value"] = cb.complementary_value;
  append_methods(o.methods, e.methods);
  o.methods.push_back("complementary-channel");
  return o;
}

Outcome cmd_realign_test(const Context& ctx, int k) {
  const MatrixFile f = read_bipartite(ctx, false);
  const RealignResult r = realignment_test(f.mat, *f.m, *f.n, k);
  Outcome o;
  o.results["k"] = k;
  o.results["value"] = r.value;
  o.results["threshold"] = static_cast<double>(k);
  o.results["detected"] = r.detected;
  o.methods.push_back("realignment");
  if (r.detected) o.exit_code = kVerdict;
  return o;
}

Outcome cmd_reduction_test(const Context& ctx, int k) {
  const MatrixFile f = read_bipartite(ctx, false);
  const ReductionResult r = reduction_test(f.mat, *f.m, *f.n, k);
  Outcome o;
  o.results["k"] = k;
  o.results["min_eig_first"] = r.min_eig_first;
  o.results["min_eig_second"] = r.min_eig_second;
  o.results["detected"] = r.violated;
  o.methods.push_back("reduction-k");
  if (r.violated) o.exit_code = kVerdict;
  return o;
}

Outcome cmd_geom_measure(const Context& ctx) {
  const MatrixFile f = parse_matrix_text(ctx.input_text);
  if (!f.is_vector) throw InputError("expected a vector (1-D 're' array)");
  MultiDims dims = f.dims;
  if (dims.empty()) {
    if (!f.m) throw InputError("input must specify 'dims' or 'm' and 'n'");
    dims = {*f.m, *f.n};
  }
  const GeometricMeasure g = geometric_measure(f.mat.col(0), dims, ctx.budget());
  Outcome o;
  o.results["lower"] = g.lower;
  o.results["upper"] = g.upper;
  o.results["exact"] = g.exact;
  o.results["heuristic"] = g.heuristic;
  json factors = json::array();
  for (const CVec& x : g.factors) factors.push_back(vector_json(x));
  o.results["factors"] = std::move(factors);
  o.methods.push_back(g.method);
  return o;
}

struct ChannelArgs {
  bool to_kraus = false;
  bool to_choi = false;
  bool complementary = false;
  bool check_tp = false;
};

Outcome cmd_channel(const Context& ctx, const ChannelArgs& a) {
  const int chosen = int(a.to_kraus) + int(a.to_choi) + int(a.complementary) + int(a.check_tp);
  if (chosen != 1) throw InputError("channel: choose exactly one of --to-kraus, --to-choi, --complementary, --check-tp");
  Outcome o;
  if (a.to_choi) {
    json j;
    try {
      j = json::parse(ctx.input_text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
      throw InputError("channel --to-choi: expected {\"kraus\": [matrix, ...]}");
    }
    std::vector<CMat> ops;
    for (const json& x : j.at("kraus")) ops.push_back(matrix_from_json(x));
    const Channel c = choi_from_kraus(ops);
    o.results["choi"] = matrix_file_json(c.choi.mat, c.in_dim, c.out_dim);
    o.methods.push_back("choi-from-kraus");
    return o;
  }
  const Channel phi = read_channel(ctx);
  if (a.to_kraus) {
    const KrausSet k = kraus_from_choi(phi);
    json left = json::array();
    json right = json::array();
    for (const CMat& x : k.left) left.push_back(matrix_json(x));
    for (const CMat& x : k.right) right.push_back(matrix_json(x));
    o.results["completely_positive"] = k.completely_positive;
    o.results["weights"] = k.weights;
    o.results["left"] = std::move(left);
    o.results["right"] = std::move(right);
    o.methods.push_back("choi-eigendecomposition");
  } else if (a.complementary) {
    const Channel c = complementary_channel(phi);
    o.results["complementary"] = matrix_file_json(c.choi.mat, c.in_dim, c.out_dim);
    o.methods.push_back("stinespring");
  } else {
    o.results["trace_preserving"] = is_trace_preserving(phi);
    o.results["unital"] = is_unital(phi);
    o.results["completely_positive"] = is_cp(phi);
    o.results["hermiticity_preserving"] = is_hermiticity_preserving(phi);
    o.methods.push_back("choi-checks");
  }
  return o;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw InputError("bad seed");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("ENTANGLIA_SEED: expected a non-negative integer, got '" + text + "'");
  }
}

void add_common(CLI::App* sub, Common& c, bool with_input, bool with_search) {
  if (with_input) sub->add_option("input", c.input, "MatrixFile JSON path, '-' for stdin");
  if (with_search) {
    sub->add_option("--seed", c.seed, "Random seed (default: ENTANGLIA_SEED or 0)");
    sub->add_option("--restarts", c.restarts, "See-saw random restarts")->check(CLI::Range(0, 100000));
    sub->add_option("--threads", c.threads, "Thread cap for see-saw restarts")->check(CLI::Range(1, 256));
  }
}

}  // namespace

Environment environment_from_process() {
  Environment env;
  if (const char* s = std::getenv("ENTANGLIA_SEED")) env.seed = s;
  return env;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Schmidt-number norms, block positivity and related entanglement computations", "entanglia"};
  app.require_subcommand(1);
  Common common;
  std::function<Outcome(const Context&)> action;
  bool needs_input = true;

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition of a bipartite vector");
  add_common(schmidt, common, true, false);
  schmidt->callback([&] { action = cmd_schmidt; });

  int vk = 1;
  auto* vnorm = app.add_subcommand("vec-norm", "s(k) norm of a bipartite vector");
  add_common(vnorm, common, true, false);
  vnorm->add_option("--k", vk, "Schmidt rank bound")->check(CLI::PositiveNumber);
  vnorm->callback([&] { action = [&](const Context& c) { return cmd_vec_norm(c, vk, false); }; });

  auto* vdual = app.add_subcommand("vec-dual-norm", "Dual of the s(k) vector norm");
  add_common(vdual, common, true, false);
  vdual->add_option("--k", vk, "Schmidt rank bound")->check(CLI::PositiveNumber);
  vdual->callback([&] { action = [&](const Context& c) { return cmd_vec_norm(c, vk, true); }; });

  OpNormArgs op;
  auto* opnorm = app.add_subcommand("op-norm", "Bounds on the S(k) operator norm");
  add_common(opnorm, common, true, true);
  opnorm->add_option("--k", op.k, "Schmidt rank bound")->check(CLI::PositiveNumber);
  opnorm->add_option("--method", op.method, "Method")
      ->check(CLI::IsMember({"seesaw", "spectral", "realign", "kpos-sdp", "dps", "all"}));
  opnorm->add_option("--s", op.s, "Symmetric extension level")->check(CLI::Range(1, 20));
  opnorm->add_flag("--ppt", op.ppt, "Add the partial transpose constraint to the extension");
  opnorm->callback([&] { action = [&](const Context& c) { return cmd_op_norm(c, op); }; });

  BlockPosArgs bp;
  auto* bpos = app.add_subcommand("block-positive", "Decide k-block positivity");
  add_common(bpos, common, true, true);
  bpos->add_option("--k", bp.k, "Schmidt rank bound")->check(CLI::PositiveNumber);
  bpos->add_option("--rule", bp.rule, "Rule")
      ->check(CLI::IsMember({"all", "spectral", "kraus", "eig", "two-eval", "shifted-identity"}));
  bpos->add_option("--c", bp.c, "Shift for the shifted-identity rule");
  bpos->callback([&] { action = [&](const Context& c) { return cmd_block_positive(c, bp); }; });

  WernerArgs wa;
  auto* werner = app.add_subcommand("werner", "S(k) norm of a Werner state");
  add_common(werner, common, false, true);
  werner->add_option("--n", wa.n, "Local dimension")->required();
  werner->add_option("--alpha", wa.alpha, "Werner parameter")->required();
  werner->add_option("--k", wa.k, "Schmidt rank bound")->check(CLI::PositiveNumber);
  werner->callback([&] {
    needs_input = false;
    action = [&](const Context& c) { return cmd_werner(c, wa); };
  });

  BoundEntArgs be;
  auto* bent = app.add_subcommand("bound-ent", "Bound-entanglement projections and undistillability");
  bent->add_option("--n", be.n, "Local dimension")->required()->check(CLI::Range(2, 64));
  bent->add_option("--r", be.r, "Number of copies")->required()->check(CLI::Range(1, 16));
  bent->add_option("--alpha", be.alpha, "Mixing parameter, decimal or exact fraction a/b");
  bent->callback([&] {
    needs_input = false;
    action = [&](const Context& c) { return cmd_bound_ent(c, be); };
  });

  int dps = 0;
  auto* gfid = app.add_subcommand("gate-fidelity", "Minimum gate fidelity of a channel");
  add_common(gfid, common, true, true);
  gfid->add_option("--dps", dps, "Additional symmetric extension level")->check(CLI::Range(0, 4));
  gfid->callback([&] { action = [&](const Context& c) { return cmd_gate_fidelity(c, dps); }; });

  int pk = 1;
  auto* purity = app.add_subcommand("output-purity", "Maximal output purity over Schmidt rank <= k inputs");
  add_common(purity, common, true, true);
  purity->add_option("--k", pk, "Schmidt rank bound")->check(CLI::PositiveNumber);
  purity->callback([&] { action = [&](const Context& c) { return cmd_output_purity(c, pk); }; });

  int rk = 1;
  auto* realign = app.add_subcommand("realign-test", "Realignment criterion for Schmidt number > k");
  add_common(realign, common, true, false);
  realign->add_option("--k", rk, "Schmidt number bound")->check(CLI::PositiveNumber);
  realign->callback([&] { action = [&](const Context& c) { return cmd_realign_test(c, rk); }; });

  auto* reduction = app.add_subcommand("reduction-test", "Reduction criterion for Schmidt number > k");
  add_common(reduction, common, true, false);
  reduction->add_option("--k", rk, "Schmidt number bound")->check(CLI::PositiveNumber);
  reduction->callback([&] { action = [&](const Context& c) { return cmd_reduction_test(c, rk); }; });

  auto* geom = app.add_subcommand("geom-measure", "Geometric measure of entanglement of a pure state");
  add_common(geom, common, true, true);
  geom->callback([&] { action = cmd_geom_measure; });

  ChannelArgs ca;
  auto* channel = app.add_subcommand("channel", "Channel representation conversions and checks");
  add_common(channel, common, true, false);
  channel->add_flag("--to-kraus", ca.to_kraus, "Choi matrix to generalized Kraus operators");
  channel->add_flag("--to-choi", ca.to_choi, "Kraus operators to Choi matrix");
  channel->add_flag("--complementary", ca.complementary, "Choi matrix of the complementary channel");
  channel->add_flag("--check-tp", ca.check_tp, "Trace preservation, unitality and positivity checks");
  channel->callback([&] { action = [&](const Context& c) { return cmd_channel(c, ca); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  json command;
  command["name"] = chosen->get_name();
  command["args"] = args;

  try {
    Context ctx;
    ctx.threads = common.threads;
    ctx.restarts = common.restarts;
    if (common.seed) {
      ctx.seed = *common.seed;
    } else if (env.seed) {
      ctx.seed = parse_seed(*env.seed);
    }
    if (needs_input) {
      if (common.input == "-") {
        ctx.input_text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      } else {
        std::ifstream file(common.input, std::ios::binary);
        if (!file) throw InputError("cannot open input file '" + common.input + "'");
        ctx.input_text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
      }
    }
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = action(ctx);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report;
    report["command"] = std::move(command);
    report["inputs_digest"] = digest_string(ctx.input_text);
    report["results"] = o.results;
    report["methods"] = o.methods;
    report["timing"] = json{{"seconds", env.timing ? seconds : 0.0}};
    report["seed"] = ctx.seed;
    out << dump_json(report) << '\n';
    return o.exit_code;
  } catch (const SolverError& e) {
    err << "entanglia: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const InputError& e) {
    err << "entanglia: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SizeLimitError& e) {
    err << "entanglia: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "entanglia: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "entanglia: failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace entanglia::cli
