#include "fenchel/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>

#include "fenchel/parallel.hpp"
#include "fenchel/subdiff.hpp"

namespace fenchel {

using nlohmann::json;

namespace {

const std::map<Command, std::vector<std::string>>& produced_verdicts() {
  static const std::map<Command, std::vector<std::string>> m = {
      {Command::Transform, {}},
      {Command::Subdiff, {"nonempty"}},
      {Command::Verify,
       {"statement_i", "statement_ii", "statement_iii", "statement_iv", "consistent", "conj_identity", "exact_rule"}},
      {Command::Witnesses, {"bounds", "converged"}},
      {Command::Relax, {"decomposition", "value_identity"}},
  };
  return m;
}

[[noreturn]] void missing(const std::string& field, Command c) {
  throw SchemaError(field, "required by the " + to_string(c) + " command");
}

const PiecewiseMinFunction& polyhedral(const std::optional<FunctionSpec>& spec, const char* name, Command c) {
  if (!spec) missing(name, c);
  const auto* f = std::get_if<PiecewiseMinFunction>(&spec->fn);
  if (!f) throw SchemaError(name, "the " + to_string(c) + " command needs a polyhedral or piecewise_min function");
  return *f;
}

ConvexPolyhedralFunction convex(const std::optional<FunctionSpec>& spec, const char* name, Command c) {
  auto cf = polyhedral(spec, name, c).as_convex();
  if (!cf) throw SchemaError(name, "the " + to_string(c) + " command needs a convex (single branch) function");
  return *cf;
}

json function_json(const ConvexPolyhedralFunction& f) {
  json pieces = json::array(), dom = json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"slope", json_vec(p.slope)}, {"intercept", json_number(p.intercept)}});
  for (const auto& h : f.domain().halfspaces()) {
    dom.push_back({{"normal", json_vec(h.normal)}, {"offset", json_number(h.offset)}});
  }
  return {{"pieces", pieces}, {"domain", dom}};
}

json polyhedron_json(const Polyhedron& p) {
  json hs = json::array();
  for (const auto& h : p.halfspaces()) hs.push_back({{"normal", json_vec(h.normal)}, {"offset", json_number(h.offset)}});
  json j = {{"halfspaces", hs}, {"empty", p.closure_is_empty()}};
  if (!p.closure_is_empty()) {
    const auto v = p.vrep();
    json pts = json::array(), rays = json::array();
    for (const auto& x : v.points) pts.push_back(json_vec(x));
    for (const auto& r : v.rays) rays.push_back(json_vec(r));
    j["vertices"] = pts;
    j["rays"] = rays;
  }
  return j;
}

json rule_json(const RuleStatus& s) {
  json j = {{"rule", to_string(s.rule)}, {"applicable", s.applicable}};
  if (!s.applicable) {
    j["detail"] = s.detail;
    return j;
  }
  j["holds"] = s.holds;
  j["residual"] = json_number(s.residual);
  j["tolerance"] = json_number(s.tolerance);
  if (s.exact) j["exact"] = *s.exact;
  if (!s.detail.empty()) j["detail"] = s.detail;
  if (s.sets) {
    j["sets"] = {{"hausdorff_truncated", json_number(s.sets->hausdorff_truncated)},
                 {"box_radius", json_number(s.sets->box_radius)},
                 {"directions_tested", s.sets->directions_tested},
                 {"containment_ab", s.sets->containment_ab},
                 {"containment_ba", s.sets->containment_ba}};
  }
  return j;
}

json minorant_json(const std::optional<AffinePiece>& a) {
  if (!a) return nullptr;
  return {{"slope", json_vec(a->slope)}, {"intercept", json_number(a->intercept)}};
}

void run_transform(const Instance& inst, RunReport& rep) {
  if (!inst.f) missing("f", Command::Transform);
  if (const auto* g = std::get_if<GridFunction>(&inst.f->fn)) {
    if (!inst.dual_grid) missing("dual_grid", Command::Transform);
    const auto conj = conjugate(*g, *inst.dual_grid);
    const auto env = convex_envelope(*g, *inst.dual_grid);
    const auto hull = lsc_hull(*g);
    double env_gap = 0.0, hull_gap = 0.0;
    size_t lowered = 0;
    for (size_t k = 0; k < g->values().size(); ++k) {
      const double v = g->at(k);
      if (std::isfinite(v) && std::isfinite(env.function.at(k))) env_gap = std::max(env_gap, v - env.function.at(k));
      if (hull.at(k) < v) ++lowered;
      if (std::isfinite(v) && std::isfinite(hull.at(k))) hull_gap = std::max(hull_gap, v - hull.at(k));
    }
    json warnings = json::array();
    for (const auto& w : conj.warnings) warnings.push_back(w);
    rep.results = {{"kind", "grid"},
                   {"conjugate_nodes", conj.function.grid().size()},
                   {"warnings", warnings},
                   {"envelope_max_drop", json_number(env_gap)},
                   {"lsc_hull_nodes_lowered", lowered},
                   {"lsc_hull_max_drop", json_number(hull_gap)},
                   {"affine_minorant", minorant_json(affine_minorant(*g))}};
    json probes = json::array();
    for (const auto& p : inst.probes) {
      probes.push_back({{"x", json_vec(p.x)},
                        {"f", json_number((*g)(p.x).value())},
                        {"envelope", json_number(env.function(p.x).value())}});
    }
    if (!probes.empty()) rep.results["probes"] = probes;
    rep.csv = conj.function.to_csv();
    rep.results["conjugate_csv"] = rep.csv;
    return;
  }
  const auto& f = std::get<PiecewiseMinFunction>(inst.f->fn);
  const auto conj = conjugate(f);
  rep.results = {{"kind", inst.f->kind}, {"conjugate", function_json(conj)},
                 {"affine_minorant", minorant_json(affine_minorant(f))}};
  std::optional<ConvexPolyhedralFunction> env;
  try {
    env = convex_envelope(f);
    rep.results["envelope"] = function_json(*env);
  } catch (const EnvelopeImproperError& e) {
    rep.results["envelope"] = std::string("-inf (") + e.what() + ")";
  }
  json probes = json::array();
  for (const auto& p : inst.probes) {
    json row = {{"x", json_vec(p.x)}, {"f", json_number(f(p.x).value())}};
    if (env) row["envelope"] = json_number((*env)(p.x).value());
    probes.push_back(row);
  }
  if (!probes.empty()) rep.results["probes"] = probes;
  if (inst.dual_grid) {
    rep.csv = GridFunction::sample(*inst.dual_grid, PiecewiseMinFunction(conj)).to_csv();
    rep.results["conjugate_csv"] = rep.csv;
  }
}

void run_subdiff(const Instance& inst, RunReport& rep) {
  const auto& f = polyhedral(inst.f, "f", Command::Subdiff);
  if (inst.probes.empty()) missing("probes", Command::Subdiff);
  json probes = json::array();
  bool all_nonempty = true;
  for (const auto& p : inst.probes) {
    const auto set = eps_subdiff_set(f, p.x, p.epsilon);
    json row = {{"x", json_vec(p.x)}, {"epsilon", json_number(p.epsilon)}, {"set", polyhedron_json(set)}};
    all_nonempty = all_nonempty && !set.closure_is_empty();
    if (f(p.x).is_finite()) {
      row["threshold"] = json_number(eps_threshold(f, p.x).value());
      row["threshold_by_definition"] = json_number(eps_threshold_by_definition(f, p.x).value());
    } else {
      row["threshold"] = "undefined outside dom f";
    }
    probes.push_back(row);
  }
  rep.results["probes"] = probes;
  rep.verdicts["nonempty"] = all_nonempty;
  if (inst.witness && inst.witness->epsilon) {
    const auto cf = convex(inst.f, "f", Command::Subdiff);
    const auto w = brondsted_rockafellar(cf, inst.witness->x, inst.witness->xstar, *inst.witness->epsilon);
    rep.results["brondsted_rockafellar"] = {{"z", json_vec(w.z)},
                                            {"zstar", json_vec(w.zstar)},
                                            {"norm_primal", json_number(w.norm_primal)},
                                            {"norm_dual", json_number(w.norm_dual)},
                                            {"bound", json_number(std::sqrt(*inst.witness->epsilon))}};
  }
}

void run_verify(const Instance& inst, const ResolvedParams& params, RunReport& rep) {
  const auto& f = polyhedral(inst.f, "f", Command::Verify);
  const auto& g = polyhedral(inst.g, "g", Command::Verify);
  if (!inst.probe_grid) missing("probe_grid", Command::Verify);
  const auto cp = params.compare();
  const auto eq = equivalence_harness(f, g, inst.probes, *inst.probe_grid, cp);
  const char* names[4] = {"statement_i", "statement_ii", "statement_iii", "statement_iv"};
  json statements = json::object();
  for (size_t i = 0; i < 4; ++i) {
    statements[names[i]] = rule_json(eq.statuses[i]);
    if (eq.statuses[i].applicable) rep.verdicts[names[i]] = eq.statuses[i].holds;
  }
  rep.verdicts["consistent"] = eq.consistent;
  json probes = json::array();
  for (const auto& p : eq.probes) {
    json splits = json::array();
    for (const auto& [n, r] : p.split_residuals) splits.push_back({{"splits", n}, {"residual", json_number(r)}});
    probes.push_back({{"x", json_vec(p.x)},
                      {"epsilon", json_number(p.epsilon)},
                      {"threshold", json_number(p.threshold.value())},
                      {"closed_union", rule_json(p.closed_union)},
                      {"intersected_unions", rule_json(p.intersected_unions)},
                      {"doubled_epsilon", rule_json(p.doubled_epsilon)},
                      {"finite_split_residuals", splits}});
  }
  rep.results = {{"statements", statements}, {"consistent", eq.consistent}, {"probes", probes}};
  if (inst.dual_grid) {
    const auto ci = check_conjugate_identity(f, g, *inst.dual_grid, cp);
    rep.results["conj_identity"] = rule_json(ci);
    rep.verdicts["conj_identity"] = ci.holds;
  }
  const auto cf = f.as_convex(), cg = g.as_convex();
  if (cf && cg) {
    const auto q = qualification_check(*cf, *cg);
    rep.results["qualification"] = to_string(q);
    if (q != Qualification::NONE) {
      json rows = json::array();
      bool all = true;
      for (const auto& p : inst.probes) {
        for (double e : {0.0, p.epsilon}) {
          const auto s = exact_sum_rule_check(*cf, *cg, p.x, e, cp);
          all = all && s.holds;
          json row = rule_json(s);
          row["x"] = json_vec(p.x);
          row["epsilon"] = json_number(e);
          rows.push_back(row);
          if (p.epsilon == 0.0) break;
        }
      }
      rep.results["exact_rule"] = rows;
      if (!inst.probes.empty()) rep.verdicts["exact_rule"] = all;
    }
  } else {
    rep.results["qualification"] = "not applicable (nonconvex representation)";
  }
  if (!eq.consistent) {
    rep.results["note"] = "statement verdicts disagree at the declared tolerances; see the residual trail";
  }
}

void run_witnesses(const Instance& inst, RunReport& rep) {
  const auto f = convex(inst.f, "f", Command::Witnesses);
  const auto g = convex(inst.g, "g", Command::Witnesses);
  if (!inst.witness) missing("witness", Command::Witnesses);
  const int n = inst.witness->n.value_or(12);
  const auto t = sequential_witnesses(f, g, inst.witness->x, inst.witness->xstar, n);
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"eps_n", json_number(r.eps_n)},
                    {"x_n", json_vec(r.x_n)},
                    {"y_n", json_vec(r.y_n)},
                    {"xstar_n", json_vec(r.xstar_n)},
                    {"ystar_n", json_vec(r.ystar_n)},
                    {"split_residual", json_number(r.split_residual)},
                    {"sum_gap", json_number(r.sum_gap)},
                    {"inner_f", json_number(r.inner_f)},
                    {"inner_g", json_number(r.inner_g)},
                    {"value_f", json_number(r.value_f)},
                    {"value_g", json_number(r.value_g)},
                    {"bound", json_number(r.bound)},
                    {"bounds_hold", r.bounds_hold}});
  }
  rep.results = {{"rows", rows}, {"bounds_hold", t.bounds_hold}, {"final_max", json_number(t.final_max)}};
  rep.verdicts["bounds"] = t.bounds_hold;
  rep.verdicts["converged"] = t.final_max <= 1e-3;
}

void run_relax(const Instance& inst, RunReport& rep) {
  if (!inst.f) missing("f", Command::Relax);
  if (!inst.feasible) missing("feasible", Command::Relax);
  MinProblem p{inst.name, inst.f->fn, *inst.feasible, inst.dual_grid};
  std::optional<Grid> probe = inst.probe_grid;
  if (!probe) {
    if (const auto* g = std::get_if<GridFunction>(&inst.f->fn)) {
      probe = g->grid();
    } else {
      missing("probe_grid", Command::Relax);
    }
  }
  if (std::holds_alternative<GridFunction>(inst.f->fn) && !inst.dual_grid) missing("dual_grid", Command::Relax);
  const auto r = relax_and_compare(p, *probe);
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  rep.results = {{"v_original", json_number(r.v_original.value())},
                 {"v_relaxed", json_number(r.v_relaxed.value())},
                 {"v_relaxed_probe_grid", json_number(r.v_relaxed_grid.value())},
                 {"gap", json_number(r.gap)},
                 {"value_tolerance", json_number(r.value_tolerance)},
                 {"decomposition_gap", json_number(r.decomposition_gap)},
                 {"notes", notes}};
  if (r.decomposition_exact) rep.results["decomposition_exact"] = *r.decomposition_exact;
  rep.verdicts["decomposition"] = r.decomposition_holds;
  rep.verdicts["value_identity"] = r.value_identity;
}

void render_json_lines(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
  };
  auto is_flat = [](const json& v) {
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
  };
  auto flat = [&](const json& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        const std::string text = scalar(v);
        if (text.find('\n') != std::string::npos) continue;  // CSV blocks are printed separately
        os << pad << k << ": " << text << "\n";
      } else if (is_flat(v)) {
        os << pad << k << ": " << flat(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render_json_lines(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_primitive() || is_flat(j[i])) {
        os << pad << "- " << (j[i].is_primitive() ? scalar(j[i]) : flat(j[i])) << "\n";
      } else {
        os << pad << "- [" << i << "]\n";
        render_json_lines(os, j[i], indent + 2);
      }
    }
  }
}

std::string status_of(const RunReport& r) {
  switch (r.exit_code) {
    case 0: return "ok";
    case 1: return "mismatch";
    case 2: return "schema-error";
    default: return "error";
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& s) {
  if (s == "transform") return Command::Transform;
  if (s == "subdiff") return Command::Subdiff;
  if (s == "verify") return Command::Verify;
  if (s == "witnesses") return Command::Witnesses;
  if (s == "relax") return Command::Relax;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Transform: return "transform";
    case Command::Subdiff: return "subdiff";
    case Command::Verify: return "verify";
    case Command::Witnesses: return "witnesses";
    case Command::Relax: return "relax";
  }
  return "?";
}

json ResolvedParams::to_json() const {
  return {{"splits", splits},
          {"box_radius", json_number(box_radius)},
          {"directions", directions},
          {"tol", json_number(tol)},
          {"steps", steps}};
}

ResolvedParams resolve_params(const Instance& inst, const Overrides& o) {
  ResolvedParams p;
  if (inst.dim == 3) p.directions = 256;
  if (inst.params.splits) p.splits = *inst.params.splits;
  if (inst.params.box_radius) p.box_radius = *inst.params.box_radius;
  if (inst.params.directions) p.directions = *inst.params.directions;
  if (inst.params.tol) p.tol = *inst.params.tol;
  if (inst.params.steps) p.steps = *inst.params.steps;
  if (o.splits) p.splits = *o.splits;
  if (o.box_radius) p.box_radius = *o.box_radius;
  if (o.directions) p.directions = *o.directions;
  if (o.tol) p.tol = *o.tol;
  return p;
}

json RunReport::to_json(bool timing) const {
  json j = {{"file", file},
            {"instance", name},
            {"command", fenchel::to_string(command)},
            {"params", params},
            {"results", results},
            {"status", status_of(*this)},
            {"exit_code", exit_code}};
  json v = json::object(), e = json::object();
  for (const auto& [k, b] : verdicts) v[k] = b;
  for (const auto& [k, b] : expected) e[k] = b;
  j["verdicts"] = v;
  j["expected"] = e;
  j["mismatches"] = mismatches;
  if (!error_kind.empty()) j["error"] = {{"kind", error_kind}, {"message", error_message}};
  if (timing) j["wall_seconds"] = wall_seconds;
  return j;
}

RunReport run_instance(const std::string& path, Command command, const Overrides& overrides) {
  RunReport rep;
  rep.command = command;
  rep.file = std::filesystem::path(path).filename().string();
  const auto start = std::chrono::steady_clock::now();
  try {
    const Instance inst = load_instance(path);
    rep.name = inst.name;
    rep.expected = inst.expected;
    const auto params = resolve_params(inst, overrides);
    rep.params = params.to_json();
    switch (command) {
      case Command::Transform: run_transform(inst, rep); break;
      case Command::Subdiff: run_subdiff(inst, rep); break;
      case Command::Verify: run_verify(inst, params, rep); break;
      case Command::Witnesses: run_witnesses(inst, rep); break;
      case Command::Relax: run_relax(inst, rep); break;
    }
    const auto& produced = produced_verdicts().at(command);
    for (const auto& [k, want] : inst.expected) {
      if (std::find(produced.begin(), produced.end(), k) == produced.end()) continue;
      const auto it = rep.verdicts.find(k);
      if (it == rep.verdicts.end()) {
        rep.mismatches.push_back(k + ": expected " + (want ? "true" : "false") + ", not computed");
      } else if (it->second != want) {
        rep.mismatches.push_back(k + ": expected " + (want ? "true" : "false") + ", got " +
                                 (it->second ? "true" : "false"));
      }
    }
    rep.exit_code = rep.mismatches.empty() ? 0 : 1;
  } catch (const SchemaError& e) {
    rep.exit_code = 2;
    rep.error_kind = "SchemaError";
    rep.error_message = e.what();
  } catch (const Error& e) {
    rep.exit_code = 3;
    rep.error_kind = e.name();
    rep.error_message = e.what();
  } catch (const std::invalid_argument& e) {
    rep.exit_code = 2;
    rep.error_kind = "SchemaError";
    rep.error_message = e.what();
  } catch (const std::exception& e) {
    rep.exit_code = 3;
    rep.error_kind = "InternalError";
    rep.error_message = e.what();
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json CorpusReport::to_json(bool timing) const {
  json runs_j = json::array();
  for (const auto& r : runs) runs_j.push_back(r.to_json(timing));
  json j = {{"command", fenchel::to_string(command)}, {"instances", runs_j}, {"exit_code", exit_code}};
  int ok = 0, mismatch = 0, failed = 0, inconsistent = 0;
  for (const auto& r : runs) {
    if (r.exit_code == 0) ++ok;
    if (r.exit_code == 1) ++mismatch;
    if (r.exit_code >= 2) ++failed;
    if (const auto it = r.verdicts.find("consistent"); it != r.verdicts.end() && !it->second) ++inconsistent;
  }
  j["summary"] = {{"total", runs.size()}, {"ok", ok}, {"mismatch", mismatch}, {"errors", failed},
                  {"inconsistent", inconsistent}};
  if (!error_message.empty()) j["error"] = error_message;
  return j;
}

CorpusReport corpus_run(const std::string& directory, Command command, const Overrides& overrides) {
  CorpusReport rep;
  rep.command = command;
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  if (ec) {
    rep.exit_code = 2;
    rep.error_message = "cannot read directory " + directory;
    return rep;
  }
  if (files.empty()) {
    rep.exit_code = 2;
    rep.error_message = "no instance files in " + directory;
    return rep;
  }
  std::sort(files.begin(), files.end());
  rep.runs.resize(files.size());
  parallel_for(files.size(), [&](size_t i) { rep.runs[i] = run_instance(files[i], command, overrides); });
  bool any2 = false, any3 = false, any1 = false;
  for (const auto& r : rep.runs) {
    any2 = any2 || r.exit_code == 2;
    any3 = any3 || r.exit_code == 3;
    any1 = any1 || r.exit_code == 1;
  }
  rep.exit_code = any2 ? 2 : any3 ? 3 : any1 ? 1 : 0;
  return rep;
}

std::string render_human(const RunReport& r, bool timing) {
  std::ostringstream os;
  os << "instance: " << (r.name.empty() ? r.file : r.name) << "\n";
  os << "command:  " << to_string(r.command) << "\n";
  if (!r.params.is_null()) {
    os << "params:   splits=" << r.params["splits"].get<int>()
       << " box_radius=" << format_number(r.params["box_radius"].get<double>())
       << " directions=" << r.params["directions"].get<int>() << " tol=" << format_number(r.params["tol"].get<double>())
       << " steps=" << r.params["steps"].get<int>() << "\n";
  }
  if (!r.results.is_null()) {
    os << "results:\n";
    render_json_lines(os, r.results, 2);
  }
  if (!r.verdicts.empty()) {
    os << "verdicts:\n";
    for (const auto& [k, v] : r.verdicts) {
      os << "  " << k << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ') << (v ? "holds" : "fails");
      if (const auto it = r.expected.find(k); it != r.expected.end()) {
        os << "  (expected " << (it->second ? "holds" : "fails") << ")";
      }
      os << "\n";
    }
  }
  for (const auto& m : r.mismatches) os << "mismatch: " << m << "\n";
  if (!r.error_kind.empty()) os << "error: " << r.error_message << "\n";
  if (!r.csv.empty()) os << "csv:\n" << r.csv;
  if (timing) os << "wall_seconds: " << format_number(r.wall_seconds) << "\n";
  os << "status: " << status_of(r) << " (exit " << r.exit_code << ")\n";
  return os.str();
}

std::string render_human(const CorpusReport& r, bool timing) {
  std::ostringstream os;
  os << "command: " << to_string(r.command) << "\n";
  if (!r.error_message.empty()) os << "error: " << r.error_message << "\n";
  size_t w = 8;
  for (const auto& run : r.runs) w = std::max(w, (run.name.empty() ? run.file : run.name).size());
  os << "instance" << std::string(w - 8 + 2, ' ') << "status        verdicts\n";
  for (const auto& run : r.runs) {
    const std::string name = run.name.empty() ? run.file : run.name;
    const std::string st = status_of(run);
    os << name << std::string(w - name.size() + 2, ' ') << st << std::string(st.size() < 14 ? 14 - st.size() : 1, ' ');
    bool first = true;
    for (const auto& [k, v] : run.verdicts) {
      os << (first ? "" : " ") << k << "=" << (v ? "T" : "F");
      first = false;
    }
    if (!run.error_kind.empty()) os << run.error_message;
    if (timing) os << "  (" << format_number(run.wall_seconds) << " s)";
    os << "\n";
    for (const auto& m : run.mismatches) os << "    mismatch: " << m << "\n";
  }
  const auto summary = r.to_json(false)["summary"];
  os << "total " << summary["total"].get<int>() << ", ok " << summary["ok"].get<int>() << ", mismatch "
     << summary["mismatch"].get<int>() << ", errors " << summary["errors"].get<int>() << ", inconsistent "
     << summary["inconsistent"].get<int>() << "\n";
  os << "exit " << r.exit_code << "\n";
  return os.str();
}

std::string render_machine(const RunReport& r, bool timing) { return r.to_json(timing).dump(2) + "\n"; }
std::string render_machine(const CorpusReport& r, bool timing) { return r.to_json(timing).dump(2) + "\n"; }

}  // namespace fenchel
