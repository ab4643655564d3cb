#include "ncg/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncg/clifford.hpp"
#include "ncg/commutative.hpp"
#include "ncg/config.hpp"
#include "ncg/errors.hpp"
#include "ncg/io.hpp"
#include "ncg/labelcover.hpp"
#include "ncg/random.hpp"
#include "ncg/reduction.hpp"
#include "ncg/solvers.hpp"

namespace ncg::cli {

namespace {

using json = nlohmann::ordered_json;
using io::format_double;

struct Outputs {
  std::string report;
  std::string csv;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Outputs paths;
};

json estimate_json(const Estimate& e) {
  json j;
  j["value"] = e.value;
  j["std_error"] = e.std_error;
  j["members"] = e.members;
  j["exact"] = e.exact;
  return j;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size()) throw DomainError("bad list entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw DomainError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

int finish(Context& ctx, json report, bool pass, const io::CsvTable* table = nullptr) {
  report["pass"] = pass;
  const std::string text = report.dump(2) + "\n";
  if (ctx.paths.report.empty()) {
    ctx.out << text;
  } else {
    io::write_file(ctx.paths.report, text);
    ctx.out << report["command"].get<std::string>() << ": " << (pass ? "PASS" : "FAIL") << "\n";
  }
  if (table != nullptr && !ctx.paths.csv.empty()) io::write_file(ctx.paths.csv, table->to_string());
  return pass ? kExitPass : kExitFail;
}

json header(const std::string& command) {
  json j;
  j["command"] = command;
  j["version"] = defaults::file_version;
  return j;
}

// ---------------------------------------------------------------- gen-labelcover

struct GenArgs {
  std::size_t vertices = 0, degree = 0, n = 0, k = 0, t = 0;
  std::uint64_t seed = 0;
  std::string out, planted_out;
};

int cmd_gen(Context& ctx, const GenArgs& a) {
  const auto planted = labelcover::generate_planted(a.vertices, a.degree, a.n, a.k, a.t, a.seed);
  const auto& inst = planted.instance;
  io::write_file(a.out, io::write_instance(inst));
  if (!a.planted_out.empty()) {
    io::write_file(a.planted_out, io::write_assignment(planted.planted, inst.n));
  }
  const auto smooth = labelcover::check_smoothness(inst);
  json r = header("gen-labelcover");
  r["instance"] = a.out;
  r["planted"] = a.planted_out;
  r["vertices"] = inst.vertices;
  r["edges"] = inst.edges.size();
  r["smoothness"] = smooth.value;
  r["t"] = inst.t;
  r["max_preimage"] = labelcover::max_preimage(inst);
  r["regular"] = labelcover::is_regular(inst);
  r["connected"] = labelcover::is_connected(inst);
  r["planted_satisfied"] = labelcover::satisfied_fraction(inst, planted.planted);
  const bool pass = labelcover::check_preimage_bound(inst) && smooth.pass &&
                    r["planted_satisfied"].get<double>() == 1.0;
  return finish(ctx, std::move(r), pass);
}

// ---------------------------------------------------------------- check-instance

struct CheckArgs {
  std::string instance;
  std::string deltas = "0.25,0.5";
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
};

int cmd_check(Context& ctx, const CheckArgs& a) {
  const auto inst = io::read_instance(io::read_file(a.instance));
  const auto smooth = labelcover::check_smoothness(inst);
  const auto expansion =
      labelcover::check_weak_expansion(inst, parse_double_list(a.deltas), a.samples, a.seed);
  json r = header("check-instance");
  r["vertices"] = inst.vertices;
  r["edges"] = inst.edges.size();
  r["regular"] = labelcover::is_regular(inst);
  r["connected"] = labelcover::is_connected(inst);
  r["max_preimage"] = labelcover::max_preimage(inst);
  r["t"] = inst.t;
  r["preimage_pass"] = labelcover::check_preimage_bound(inst);
  r["smoothness"] = {{"value", smooth.value}, {"gamma", inst.gamma}, {"pass", smooth.pass}};
  io::CsvTable table{{"delta", "subset_size", "subsets_checked", "exhaustive",
                      "min_induced_edges", "required", "pass"}, {}};
  json checks = json::array();
  for (const auto& c : expansion.checks) {
    checks.push_back({{"delta", c.delta},
                      {"subset_size", c.subset_size},
                      {"subsets_checked", c.subsets_checked},
                      {"exhaustive", c.exhaustive},
                      {"min_induced_edges", c.min_induced_edges},
                      {"required", c.required},
                      {"pass", c.pass}});
    table.add_row({format_double(c.delta), std::to_string(c.subset_size),
                   std::to_string(c.subsets_checked), c.exhaustive ? "1" : "0",
                   std::to_string(c.min_induced_edges), format_double(c.required),
                   c.pass ? "1" : "0"});
  }
  r["expansion"] = std::move(checks);
  const bool pass = r["preimage_pass"].get<bool>() && smooth.pass && expansion.pass;
  return finish(ctx, std::move(r), pass, &table);
}

// ---------------------------------------------------------------- reduce

struct BackendArgs {
  std::string backend = "clifford";
  std::string phase_mode = "auto";
  std::uint64_t samples = 0;
};

reduction::EmbeddingBackend backend_from(const BackendArgs& b, std::size_t n, std::uint64_t seed) {
  reduction::BackendOptions opt;
  opt.seed = seed;
  opt.phase_samples = b.samples;
  if (b.phase_mode != "auto") {
    opt.auto_phase_mode = false;
    opt.phase_mode = clifford::phase_mode_from_string(b.phase_mode);
  }
  return reduction::make_backend(reduction::backend_from_string(b.backend), n, opt);
}

struct ReduceArgs {
  std::string instance, assignment, field_out;
  BackendArgs backend;
  bool optimize = false;
  std::size_t restarts = defaults::ascent_restarts;
  std::size_t iterations = defaults::ascent_iterations;
  std::uint64_t seed = 0;
};

int cmd_reduce(Context& ctx, const ReduceArgs& a) {
  const auto inst = io::read_instance(io::read_file(a.instance));
  const auto backend = backend_from(a.backend, inst.n, a.seed);
  json r = header("reduce");
  r["backend"] = backend.description;
  r["eta"] = backend.eta;
  r["tau"] = backend.tau;
  const auto cs = reduction::build_constraints(inst);
  const auto basis = reduction::subspace_basis(cs);
  r["rows"] = cs.rows;
  r["cols"] = cs.cols;
  r["dimension"] = basis.dimension();
  bool pass = true;
  reduction::VertexVectorField field;
  bool have_field = false;
  if (!a.assignment.empty()) {
    const auto assignment = io::read_assignment(io::read_file(a.assignment), inst);
    const auto cert = reduction::completeness_certificate(inst, assignment, backend);
    r["certificate"] = {{"in_subspace", cert.in_subspace},
                        {"residual", cert.residual},
                        {"value", cert.value},
                        {"eta", cert.eta},
                        {"pass", cert.pass}};
    pass = pass && cert.pass;
    field = reduction::assignment_to_field(inst, assignment);
    have_field = true;
  }
  if (a.optimize) {
    reduction::AscentOptions opt;
    opt.restarts = a.restarts;
    opt.iterations = a.iterations;
    opt.seed = a.seed;
    const auto res = reduction::operator_norm_lower_bound(basis, backend, opt);
    const bool within = res.value <= res.upper_bound + 1e-6;
    r["optimize"] = {{"value", res.value},
                     {"upper_bound", res.upper_bound},
                     {"degenerate", res.degenerate},
                     {"restarts", opt.restarts},
                     {"iterations", res.iterations},
                     {"within_upper_bound", within}};
    pass = pass && within;
    field = res.field;
    have_field = true;
  }
  if (!a.field_out.empty()) {
    if (!have_field) throw DomainError("--field-out needs --assignment or --optimize");
    io::write_file(a.field_out, io::write_field(field));
  }
  return finish(ctx, std::move(r), pass);
}

// ---------------------------------------------------------------- decode

struct DecodeArgs {
  std::string instance, field, out;
  double eps = defaults::decoder_eps;
  double delta = -1.0;  // default: the clifford backend's delta(eps)
  std::uint64_t seed = 0;
};

int cmd_decode(Context& ctx, const DecodeArgs& a) {
  const auto inst = io::read_instance(io::read_file(a.instance));
  const auto b = io::read_field(io::read_file(a.field));
  reduction::DecoderParams p;
  p.eps = a.eps;
  p.delta = a.delta > 0.0 ? a.delta : clifford::EmbeddingSpec{inst.n}.delta(a.eps);
  p.t = inst.t;
  p.seed = a.seed;
  const auto res = reduction::decode(b, p, inst);
  if (!a.out.empty()) io::write_file(a.out, io::write_assignment(res.assignment, inst.n));
  const auto& st = res.stats;
  json r = header("decode");
  r["eps"] = p.eps;
  r["delta"] = p.delta;
  r["beta"] = st.beta;
  r["t"] = p.t;
  r["input_norm"] = st.input_norm;
  r["v0_count"] = st.v0_count;
  r["v0_fraction"] = st.v0_fraction;
  r["max_a1"] = st.max_a1;
  r["a1_bound"] = st.a1_bound;
  r["max_a2"] = st.max_a2;
  r["a2_bound"] = st.a2_bound;
  r["sizes_within_bounds"] = st.sizes_within_bounds;
  r["min_linf_in_v0"] = st.min_linf_in_v0;
  r["satisfied_fraction"] = st.satisfied_fraction;
  const bool linf_ok = st.v0_count == 0 || st.min_linf_in_v0 >= st.beta;
  r["linf_invariant"] = linf_ok;
  return finish(ctx, std::move(r), st.sizes_within_bounds && linf_ok);
}

// ---------------------------------------------------------------- embed-verify

struct EmbedArgs {
  std::size_t n = 0;
  std::string mode = "exhaustive";
  std::uint64_t samples = 100000;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

int cmd_embed(Context& ctx, const EmbedArgs& a) {
  const auto mode = clifford::phase_mode_from_string(a.mode);
  const auto family = clifford::build_phase_family(a.n, mode, a.seed, a.samples);
  const bool exact = family.exact();
  io::CsvTable table{{"check", "value", "bound", "pass"}, {}};
  bool all = true;
  auto record = [&](const std::string& name, double value, double bound, bool ok) {
    table.add_row({name, format_double(value), format_double(bound), ok ? "PASS" : "FAIL"});
    all = all && ok;
  };

  const bool dense = a.n <= 12;  // dense SVD cross-checks up to 64 x 64
  if (dense) {
    const auto gens = clifford::make_generators(a.n);
    const auto g = clifford::check_generators(gens);
    record("generators", static_cast<double>(gens.matrices.size()), 0.0, g.pass());
    Rng rng = make_rng(a.seed, 1);
    double worst = 0.0;
    for (std::size_t s = 0; s < a.trials; ++s) {
      const ComplexVector v = random_gaussian_vector(a.n, rng);
      worst = std::max(worst, std::abs(clifford::trace_norm_formula(v) -
                                       schatten1_norm(clifford::clifford_map(v, gens))));
    }
    record("formula_vs_svd", worst, 1e-8, worst <= 1e-8);
  }

  // Monte-Carlo bounds allow three standard errors.
  auto slack = [&](const Estimate& e) { return exact ? 1e-8 : 3.0 * e.std_error; };
  double basis_dev = 0.0;
  bool basis_ok = true;
  for (std::size_t i = 0; i < a.n; ++i) {
    ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(a.n));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    const auto est = clifford::dictator_embedding_norm(e, family);
    const double dev = std::abs(est.value - 1.0);
    basis_dev = std::max(basis_dev, dev);
    basis_ok = basis_ok && dev <= (exact ? 1e-10 : slack(est) + 1e-10);
  }
  record("basis_norm", basis_dev, exact ? 1e-10 : 0.0, basis_ok);

  const ComplexVector uniform =
      ComplexVector::Constant(static_cast<Eigen::Index>(a.n), 1.0 / std::sqrt(double(a.n)));
  const auto u_est = clifford::dictator_embedding_norm(uniform, family);
  const double u_bound = clifford::embedding_bound(uniform);
  record("uniform_bound", u_est.value, u_bound, u_est.value <= u_bound + slack(u_est));

  Rng rng = make_rng(a.seed, 2);
  const std::size_t bound_trials = exact ? a.trials : std::min<std::size_t>(a.trials, 10);
  double worst_excess = -1.0;
  bool bound_ok = true;
  for (std::size_t s = 0; s < bound_trials; ++s) {
    ComplexVector v = random_gaussian_vector(a.n, rng);
    v /= v.norm();
    const auto est = clifford::dictator_embedding_norm(v, family);
    const double excess = est.value - clifford::embedding_bound(v);
    worst_excess = std::max(worst_excess, excess);
    bound_ok = bound_ok && excess <= slack(est);
  }
  record("random_bound_excess", worst_excess, 0.0, bound_ok);

  if (exact) {
    Rng mrng = make_rng(a.seed, 3);
    double worst = 0.0;
    for (std::size_t s = 0; s < a.trials; ++s) {
      const ComplexVector v = random_gaussian_vector(a.n, mrng);
      const double l2 = v.norm();
      const double l4 = l4_norm(v);
      const double target = l2 * l2 * l2 * l2 - l4 * l4 * l4 * l4;
      worst = std::max(worst, std::abs(clifford::randphase_second_moment(v, family) - target));
    }
    record("second_moment", worst, 1e-10, worst <= 1e-10);
  }

  json r = header("embed-verify");
  r["n"] = a.n;
  r["mode"] = clifford::to_string(mode);
  r["family_size"] = family.size();
  r["uniform"] = estimate_json(u_est);
  r["uniform_bound"] = u_bound;
  json checks = json::array();
  for (const auto& row : table.rows) {
    checks.push_back({{"check", row[0]}, {"value", row[1]}, {"bound", row[2]}, {"result", row[3]}});
  }
  r["checks"] = std::move(checks);
  if (ctx.paths.csv.empty() && !ctx.paths.report.empty()) ctx.out << table.to_string();
  return finish(ctx, std::move(r), all, &table);
}

// ---------------------------------------------------------------- comm-verify

struct CommArgs {
  std::string field = "real";
  std::string n_list = "1,2,4,16";
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

int cmd_comm(Context& ctx, const CommArgs& a) {
  commutative::SignEnsemble ens;
  ens.field = commutative::field_from_string(a.field);
  ens.mode = commutative::ensemble_mode_from_string(a.mode);
  ens.sample_count = a.samples;
  ens.seed = a.seed;
  const auto rows = commutative::besseen_profile(parse_size_list(a.n_list), ens);
  const double limit = commutative::limit_constant(ens.field);
  io::CsvTable table{{"n", "spread", "value", "std_error", "exact", "limit", "gap"}, {}};
  json jrows = json::array();
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.n), format_double(row.spread),
                   format_double(row.value.value), format_double(row.value.std_error),
                   row.value.exact ? "1" : "0", format_double(limit), format_double(row.gap)});
    jrows.push_back({{"n", row.n},
                     {"spread", row.spread},
                     {"estimate", estimate_json(row.value)},
                     {"gap", row.gap}});
  }
  const bool decreasing = commutative::gaps_decreasing(rows);
  json r = header("comm-verify");
  r["field"] = commutative::to_string(ens.field);
  r["limit"] = limit;
  r["rows"] = std::move(jrows);
  r["gaps_decreasing"] = decreasing;
  if (ctx.paths.csv.empty() && !ctx.paths.report.empty()) ctx.out << table.to_string();
  return finish(ctx, std::move(r), decreasing, &table);
}

// ---------------------------------------------------------------- solve-ncg

struct SolveArgs {
  std::string tensor;
  std::size_t restarts = defaults::ncg_restarts;
  std::size_t iterations = defaults::ncg_iterations;
  double tolerance = defaults::ncg_tolerance;
  std::uint64_t seed = 0;
};

int cmd_solve(Context& ctx, const SolveArgs& a) {
  const auto t = io::read_tensor(io::read_file(a.tensor));
  solvers::SolverOptions opt;
  opt.restarts = a.restarts;
  opt.iterations = a.iterations;
  opt.tolerance = a.tolerance;
  opt.seed = a.seed;
  const auto res = solvers::ncg_opt_lower_bound(t, opt);
  json r = header("solve-ncg");
  r["d"] = t.d;
  r["nonzeros"] = t.entries.size();
  r["value"] = res.value;
  r["iters"] = res.iterations;
  r["restarts"] = res.restarts;
  r["monotone"] = res.monotone;
  r["unitarity_residuals"] = json::array({res.unitarity_residual_a, res.unitarity_residual_b});
  r["sdp"] = "not computed";
  io::CsvTable table{{"restart", "value", "half_steps", "monotone"}, {}};
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const auto& run = res.runs[i];
    table.add_row({std::to_string(i), format_double(run.value),
                   std::to_string(run.half_steps.size()), run.monotone ? "1" : "0"});
  }
  const bool pass = res.monotone && res.unitarity_residual_a <= 1e-9 &&
                    res.unitarity_residual_b <= 1e-9;
  return finish(ctx, std::move(r), pass, &table);
}

// ---------------------------------------------------------------- lift

struct LiftArgs {
  std::string op = "clifford";
  std::size_t n = 2;
  std::size_t d = 2;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t restarts = 16;
  std::size_t iterations = 200;
};

int cmd_lift(Context& ctx, const LiftArgs& a) {
  solvers::LittleOperator op;
  if (a.op == "clifford") {
    op = solvers::clifford_operator(a.n);
  } else if (a.op == "dictator") {
    op = solvers::dictator_operator(
        clifford::build_phase_family(a.n, clifford::phase_mode_from_string(a.mode), a.seed));
  } else if (a.op == "sign_real") {
    op = solvers::sign_operator(commutative::Field::real, a.n);
  } else if (a.op == "sign_complex") {
    op = solvers::sign_operator(commutative::Field::complex, a.n);
  } else if (a.op == "random") {
    op = solvers::random_operator(a.n, a.d, a.seed);
  } else {
    throw DomainError("unknown operator '" + a.op + "'");
  }
  const auto t = solvers::lift_little_to_big(op);
  io::write_file(a.out, io::write_tensor(t));
  const auto norm = solvers::little_norm_lower_bound(op, a.restarts, a.iterations, a.seed);
  json r = header("lift");
  r["op"] = a.op;
  r["n"] = op.n;
  r["d"] = op.d;
  r["nonzeros"] = t.entries.size();
  r["tensor"] = a.out;
  r["norm_lower_bound"] = norm.value;
  r["norm_lower_bound_squared"] = norm.value * norm.value;
  return finish(ctx, std::move(r), true);
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> inputs;
};

int cmd_report(Context& ctx, const ReportArgs& a) {
  io::CsvTable table{{"file", "command", "pass"}, {}};
  json files = json::array();
  bool all = true;
  for (const auto& path : a.inputs) {
    json doc;
    try {
      doc = json::parse(io::read_file(path));
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("command") || !doc.contains("pass")) {
      throw ParseError(path + ": not a report");
    }
    const bool ok = doc["pass"].get<bool>();
    all = all && ok;
    table.add_row({path, doc["command"].get<std::string>(), ok ? "PASS" : "FAIL"});
    files.push_back({{"file", path}, {"command", doc["command"]}, {"pass", ok}});
  }
  json r = header("report");
  r["reports"] = std::move(files);
  if (ctx.paths.csv.empty() && !ctx.paths.report.empty()) ctx.out << table.to_string();
  return finish(ctx, std::move(r), all, &table);
}

void add_outputs(CLI::App* sub, Outputs& o, bool csv) {
  sub->add_option("--report", o.report, "JSON report path (default: stdout)");
  if (csv) sub->add_option("--csv", o.csv, "CSV table path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncg: constructions and checks for non-commutative Grothendieck hardness"};
  app.require_subcommand(1);
  Outputs outputs;
  std::function<int(Context&)> action;

  GenArgs gen;
  auto* g = app.add_subcommand("gen-labelcover", "Generate a planted Smooth Label Cover instance");
  g->add_option("--vertices", gen.vertices)->required()->check(CLI::PositiveNumber);
  g->add_option("--degree", gen.degree)->required()->check(CLI::PositiveNumber);
  g->add_option("--n", gen.n, "big label count")->required()->check(CLI::PositiveNumber);
  g->add_option("--k", gen.k, "small label count")->required()->check(CLI::PositiveNumber);
  g->add_option("--t", gen.t, "preimage bound")->required()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed)->required();
  g->add_option("--out", gen.out, "instance file")->required();
  g->add_option("--planted-out", gen.planted_out, "planted assignment file");
  add_outputs(g, outputs, false);
  g->callback([&] { action = [&](Context& c) { return cmd_gen(c, gen); }; });

  CheckArgs chk;
  auto* c = app.add_subcommand("check-instance", "Check smoothness, preimage bound, expansion");
  c->add_option("--instance", chk.instance)->required()->check(CLI::ExistingFile);
  c->add_option("--deltas", chk.deltas, "comma-separated expansion grid");
  c->add_option("--samples", chk.samples, "subsets per delta when |V| > 12");
  c->add_option("--seed", chk.seed)->required();
  add_outputs(c, outputs, true);
  c->callback([&] { action = [&](Context& x) { return cmd_check(x, chk); }; });

  auto add_backend = [](CLI::App* sub, BackendArgs& b) {
    sub->add_option("--backend", b.backend, "clifford | comm_real | comm_complex")
        ->check(CLI::IsMember({"clifford", "comm_real", "comm_complex"}));
    sub->add_option("--phase-mode", b.phase_mode,
                    "auto | exhaustive | pairwise_independent | monte_carlo");
    sub->add_option("--samples", b.samples, "Monte-Carlo samples");
  };

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "Completeness certificate and operator-norm search");
  r->add_option("--instance", red.instance)->required()->check(CLI::ExistingFile);
  r->add_option("--assignment", red.assignment)->check(CLI::ExistingFile);
  add_backend(r, red.backend);
  r->add_flag("--optimize", red.optimize, "run the ascent heuristic");
  r->add_option("--restarts", red.restarts)->check(CLI::PositiveNumber);
  r->add_option("--iterations", red.iterations);
  r->add_option("--field-out", red.field_out, "write the certified or optimized field");
  r->add_option("--seed", red.seed)->required();
  add_outputs(r, outputs, false);
  r->callback([&] { action = [&](Context& x) { return cmd_reduce(x, red); }; });

  DecodeArgs dec;
  auto* d = app.add_subcommand("decode", "Decode a field into a labeling");
  d->add_option("--instance", dec.instance)->required()->check(CLI::ExistingFile);
  d->add_option("--field", dec.field)->required()->check(CLI::ExistingFile);
  d->add_option("--eps", dec.eps)->check(CLI::Range(0.0, 1.0));
  d->add_option("--delta", dec.delta, "default sqrt(2) eps")->check(CLI::PositiveNumber);
  d->add_option("--out", dec.out, "assignment file");
  d->add_option("--seed", dec.seed)->required();
  add_outputs(d, outputs, false);
  d->callback([&] { action = [&](Context& x) { return cmd_decode(x, dec); }; });

  EmbedArgs emb;
  auto* e = app.add_subcommand("embed-verify", "Check the Clifford embedding contract");
  e->add_option("--n", emb.n)->required()->check(CLI::PositiveNumber);
  e->add_option("--mode", emb.mode, "exhaustive | pairwise_independent | monte_carlo");
  e->add_option("--samples", emb.samples, "Monte-Carlo samples");
  e->add_option("--trials", emb.trials, "random vectors per check")->check(CLI::PositiveNumber);
  e->add_option("--seed", emb.seed)->required();
  add_outputs(e, outputs, true);
  e->callback([&] { action = [&](Context& x) { return cmd_embed(x, emb); }; });

  CommArgs com;
  auto* m = app.add_subcommand("comm-verify", "Profile the commutative embeddings");
  m->add_option("--field", com.field)->check(CLI::IsMember({"real", "complex"}));
  m->add_option("--n-list", com.n_list, "comma-separated n values");
  m->add_option("--mode", com.mode, "exhaustive | monte_carlo");
  m->add_option("--samples", com.samples, "Monte-Carlo samples (also the exhaustive fallback)");
  m->add_option("--seed", com.seed)->required();
  add_outputs(m, outputs, true);
  m->callback([&] { action = [&](Context& x) { return cmd_comm(x, com); }; });

  SolveArgs sol;
  auto* s = app.add_subcommand("solve-ncg", "Alternating lower bound for opt(T); sdp(T) is not computed");
  s->add_option("--tensor", sol.tensor)->required()->check(CLI::ExistingFile);
  s->add_option("--restarts", sol.restarts)->check(CLI::PositiveNumber);
  s->add_option("--iterations", sol.iterations);
  s->add_option("--tol", sol.tolerance)->check(CLI::PositiveNumber);
  s->add_option("--seed", sol.seed)->required();
  add_outputs(s, outputs, true);
  s->callback([&] { action = [&](Context& x) { return cmd_solve(x, sol); }; });

  LiftArgs lif;
  auto* l = app.add_subcommand("lift", "Lift a little operator to an NCG tensor");
  l->add_option("--op", lif.op, "clifford | dictator | sign_real | sign_complex | random")
      ->check(CLI::IsMember({"clifford", "dictator", "sign_real", "sign_complex", "random"}));
  l->add_option("--n", lif.n)->check(CLI::PositiveNumber);
  l->add_option("--d", lif.d, "matrix size for --op random")->check(CLI::PositiveNumber);
  l->add_option("--mode", lif.mode, "phase family for --op dictator");
  l->add_option("--restarts", lif.restarts)->check(CLI::PositiveNumber);
  l->add_option("--iterations", lif.iterations);
  l->add_option("--out", lif.out, "tensor file")->required();
  l->add_option("--seed", lif.seed)->required();
  add_outputs(l, outputs, false);
  l->callback([&] { action = [&](Context& x) { return cmd_lift(x, lif); }; });

  ReportArgs rep;
  auto* p = app.add_subcommand("report", "Summarize JSON reports");
  p->add_option("inputs", rep.inputs, "report files")->required()->check(CLI::ExistingFile);
  add_outputs(p, outputs, true);
  p->callback([&] { action = [&](Context& x) { return cmd_report(x, rep); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  Context ctx{out, err, outputs};
  const std::string name = app.get_subcommands().front()->get_name();
  auto fail_report = [&](const std::string& msg, int code) {
    err << "ncg " << name << ": " << msg << "\n";
    json rep_json = header(name);
    rep_json["error"] = msg;
    rep_json["pass"] = false;
    const std::string text = rep_json.dump(2) + "\n";
    try {
      if (outputs.report.empty()) {
        out << text;
      } else {
        io::write_file(outputs.report, text);
      }
    } catch (const std::exception&) {
    }
    return code;
  };
  try {
    return action(ctx);
  } catch (const InvariantViolation& ex) {
    return fail_report(ex.what(), kExitInvariant);
  } catch (const NumericalError& ex) {
    return fail_report(ex.what(), kExitInvariant);
  } catch (const std::exception& ex) {
    return fail_report(ex.what(), kExitUsage);
  }
}

}  // namespace ncg::cli
