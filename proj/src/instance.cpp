#include "fenchel/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fenchel {

using nlohmann::json;

namespace {

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] const json& raw() const { return j_; }

  [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_.empty() ? "<root>" : path_, what); }

  void require_object(const std::set<std::string>& allowed) const {
    if (!j_.is_object()) fail("expected an object");
    for (const auto& [k, v] : j_.items()) {
      if (!allowed.count(k)) Node(v, join(k)).fail("unknown key");
    }
  }

  [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

  [[nodiscard]] Node at(const std::string& key) const {
    if (!j_.contains(key)) Node(json(), join(key)).fail("missing required field");
    return {j_.at(key), join(key)};
  }

  [[nodiscard]] std::vector<Node> items() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  [[nodiscard]] double number() const {
    if (j_.is_number()) return j_.get<double>();
    if (j_.is_string()) {
      const auto s = j_.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    fail("expected a number or \"inf\" / \"-inf\"");
  }

  [[nodiscard]] double finite() const {
    const double v = number();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  [[nodiscard]] int integer(int min_value) const {
    if (!j_.is_number_integer()) fail("expected an integer");
    const auto v = j_.get<long long>();
    if (v < min_value || v > 1000000000) fail("integer out of range");
    return static_cast<int>(v);
  }

  [[nodiscard]] bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }

  [[nodiscard]] std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  [[nodiscard]] Vec vec(int dim) const {
    const auto xs = items();
    if (static_cast<int>(xs.size()) != dim) fail("expected " + std::to_string(dim) + " components");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = xs[static_cast<size_t>(i)].finite();
    return v;
  }

 private:
  [[nodiscard]] std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

Grid read_grid(const Node& n, int dim) {
  n.require_object({"lower", "upper", "nodes"});
  const Vec lo = n.at("lower").vec(dim), hi = n.at("upper").vec(dim);
  std::vector<int> nodes;
  const auto ns = n.at("nodes").items();
  if (static_cast<int>(ns.size()) != dim) n.at("nodes").fail("expected " + std::to_string(dim) + " node counts");
  for (const auto& k : ns) nodes.push_back(k.integer(2));
  for (int i = 0; i < dim; ++i) {
    if (!(lo(i) < hi(i))) n.fail("lower must be below upper on every axis");
  }
  size_t total = 1;
  for (int k : nodes) total *= static_cast<size_t>(k);
  if (total > 4000000) n.fail("grid too large");
  return Grid(lo, hi, nodes);
}

std::vector<Halfspace> read_halfspaces(const Node& n, int dim) {
  std::vector<Halfspace> hs;
  for (const auto& h : n.items()) {
    h.require_object({"normal", "offset"});
    hs.push_back({h.at("normal").vec(dim), h.at("offset").finite(), false});
  }
  return hs;
}

ConvexPolyhedralFunction read_convex(const Node& n, int dim, bool allow_point) {
  if (allow_point && n.has("point")) {
    n.require_object({"point"});
    return ConvexPolyhedralFunction::indicator(Polyhedron::point(n.at("point").vec(dim)));
  }
  n.require_object(allow_point ? std::set<std::string>{"pieces", "domain", "box"}
                               : std::set<std::string>{"kind", "pieces", "domain", "box"});
  std::vector<AffinePiece> pieces;
  if (n.has("pieces")) {
    for (const auto& p : n.at("pieces").items()) {
      p.require_object({"slope", "intercept"});
      pieces.push_back({p.at("slope").vec(dim), p.at("intercept").finite()});
    }
    if (pieces.empty()) n.at("pieces").fail("at least one piece is required");
  } else {
    pieces.push_back({Vec::Zero(dim), 0.0});
  }
  std::vector<Halfspace> hs;
  if (n.has("domain")) hs = read_halfspaces(n.at("domain"), dim);
  if (n.has("box")) {
    const Node b = n.at("box");
    b.require_object({"lower", "upper"});
    const Vec lo = b.at("lower").vec(dim), hi = b.at("upper").vec(dim);
    for (int i = 0; i < dim; ++i) {
      if (lo(i) > hi(i)) b.fail("lower must not exceed upper");
    }
    const auto box = Polyhedron::box(lo, hi).halfspaces();
    hs.insert(hs.end(), box.begin(), box.end());
  }
  return {pieces, Polyhedron(dim, hs)};
}

FunctionSpec read_function(const Node& n, int dim) {
  if (!n.raw().is_object()) n.fail("expected an object");
  const std::string kind = n.at("kind").string();
  if (kind == "polyhedral") {
    return {kind, PiecewiseMinFunction(read_convex(n, dim, false))};
  }
  if (kind == "piecewise_min") {
    n.require_object({"kind", "branches"});
    std::vector<ConvexPolyhedralFunction> branches;
    for (const auto& b : n.at("branches").items()) branches.push_back(read_convex(b, dim, true));
    if (branches.empty()) n.at("branches").fail("at least one branch is required");
    return {kind, PiecewiseMinFunction(std::move(branches))};
  }
  if (kind == "grid_samples") {
    n.require_object({"kind", "grid", "values"});
    Grid grid = read_grid(n.at("grid"), dim);
    std::vector<double> values;
    for (const auto& v : n.at("values").items()) {
      const double x = v.number();
      if (x == -std::numeric_limits<double>::infinity()) v.fail("-inf values make the function improper");
      values.push_back(x);
    }
    if (values.size() != grid.size()) {
      n.at("values").fail("expected " + std::to_string(grid.size()) + " values, got " + std::to_string(values.size()));
    }
    return {kind, GridFunction(std::move(grid), std::move(values))};
  }
  n.at("kind").fail("unknown function kind \"" + kind + "\"");
}

json function_json(const ConvexPolyhedralFunction& f) {
  json pieces = json::array(), dom = json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"slope", json_vec(p.slope)}, {"intercept", json_number(p.intercept)}});
  for (const auto& h : f.domain().halfspaces()) {
    dom.push_back({{"normal", json_vec(h.normal)}, {"offset", json_number(h.offset)}});
  }
  return {{"pieces", pieces}, {"domain", dom}};
}

json grid_json(const Grid& g) {
  json nodes = json::array();
  for (int k : g.nodes()) nodes.push_back(k);
  return {{"lower", json_vec(g.lower())}, {"upper", json_vec(g.upper())}, {"nodes", nodes}};
}

json function_json(const FunctionSpec& spec) {
  if (const auto* g = std::get_if<GridFunction>(&spec.fn)) {
    json values = json::array();
    for (double v : g->values()) values.push_back(json_number(v));
    return {{"kind", spec.kind}, {"grid", grid_json(g->grid())}, {"values", values}};
  }
  const auto& f = std::get<PiecewiseMinFunction>(spec.fn);
  if (spec.kind == "polyhedral") {
    json j = function_json(f.branches().front());
    j["kind"] = spec.kind;
    return j;
  }
  json branches = json::array();
  for (const auto& b : f.branches()) branches.push_back(function_json(b));
  return {{"kind", spec.kind}, {"branches", branches}};
}

size_t line_of(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json json_vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
  return a;
}

const std::vector<std::string>& expected_keys() {
  static const std::vector<std::string> keys = {
      "statement_i", "statement_ii", "statement_iii", "statement_iv", "consistent", "conj_identity",
      "exact_rule",  "decomposition", "value_identity", "bounds",     "converged",  "nonempty"};
  return keys;
}

namespace {
Instance read_instance(const Node& n);
}  // namespace

Instance parse_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), "syntax error");
  }
  try {
    return read_instance(Node(root, ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError("<root>", e.what());
  } catch (const Error& e) {
    throw SchemaError("<root>", e.what());
  }
}

namespace {

Instance read_instance(const Node& n) {
  n.require_object({"name", "description", "dim", "f", "g", "probes", "params", "probe_grid", "dual_grid", "feasible",
                    "witness", "expected"});
  Instance inst;
  inst.name = n.at("name").string();
  if (inst.name.empty()) n.at("name").fail("name must not be empty");
  if (n.has("description")) inst.description = n.at("description").string();
  inst.dim = n.at("dim").integer(1);
  if (inst.dim > 3) n.at("dim").fail("dimension must be 1, 2 or 3");
  const int d = inst.dim;
  try {
    if (n.has("f")) inst.f = read_function(n.at("f"), d);
    if (n.has("g")) inst.g = read_function(n.at("g"), d);
    if (n.has("probe_grid")) inst.probe_grid = read_grid(n.at("probe_grid"), d);
    if (n.has("dual_grid")) inst.dual_grid = read_grid(n.at("dual_grid"), d);
  } catch (const DimensionError& e) {
    n.fail(e.what());
  }
  if (n.has("probes")) {
    for (const auto& p : n.at("probes").items()) {
      p.require_object({"x", "epsilon"});
      const double eps = p.at("epsilon").finite();
      if (eps < 0) p.at("epsilon").fail("epsilon must be nonnegative");
      inst.probes.push_back({p.at("x").vec(d), eps});
    }
  }
  if (n.has("params")) {
    const Node p = n.at("params");
    p.require_object({"splits", "box_radius", "directions", "tol", "steps"});
    if (p.has("splits")) inst.params.splits = p.at("splits").integer(1);
    if (p.has("directions")) inst.params.directions = p.at("directions").integer(2);
    if (p.has("steps")) inst.params.steps = p.at("steps").integer(1);
    if (p.has("box_radius")) {
      inst.params.box_radius = p.at("box_radius").finite();
      if (*inst.params.box_radius <= 0) p.at("box_radius").fail("box_radius must be positive");
    }
    if (p.has("tol")) {
      inst.params.tol = p.at("tol").finite();
      if (*inst.params.tol <= 0) p.at("tol").fail("tol must be positive");
    }
  }
  if (n.has("feasible")) {
    const Node fz = n.at("feasible");
    fz.require_object({"points", "halfspaces"});
    if (fz.has("points") == fz.has("halfspaces")) fz.fail("give exactly one of points or halfspaces");
    if (fz.has("points")) {
      std::vector<Vec> pts;
      for (const auto& p : fz.at("points").items()) pts.push_back(p.vec(d));
      if (pts.empty()) fz.at("points").fail("at least one point is required");
      inst.feasible = pts;
    } else {
      inst.feasible = Polyhedron(d, read_halfspaces(fz.at("halfspaces"), d));
    }
  }
  if (n.has("witness")) {
    const Node w = n.at("witness");
    w.require_object({"x", "xstar", "n", "epsilon"});
    WitnessSpec ws{w.at("x").vec(d), w.at("xstar").vec(d), std::nullopt, std::nullopt};
    if (w.has("n")) ws.n = w.at("n").integer(1);
    if (w.has("epsilon")) {
      ws.epsilon = w.at("epsilon").finite();
      if (*ws.epsilon < 0) w.at("epsilon").fail("epsilon must be nonnegative");
    }
    inst.witness = ws;
  }
  if (n.has("expected")) {
    const Node e = n.at("expected");
    const auto& keys = expected_keys();
    e.require_object(std::set<std::string>(keys.begin(), keys.end()));
    for (const auto& k : keys) {
      if (e.has(k)) inst.expected[k] = e.at(k).boolean();
    }
  }
  return inst;
}

}  // namespace

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

json to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  if (!inst.description.empty()) j["description"] = inst.description;
  j["dim"] = inst.dim;
  if (inst.f) j["f"] = function_json(*inst.f);
  if (inst.g) j["g"] = function_json(*inst.g);
  if (!inst.probes.empty()) {
    json ps = json::array();
    for (const auto& p : inst.probes) ps.push_back({{"x", json_vec(p.x)}, {"epsilon", json_number(p.epsilon)}});
    j["probes"] = ps;
  }
  json params = json::object();
  if (inst.params.splits) params["splits"] = *inst.params.splits;
  if (inst.params.box_radius) params["box_radius"] = *inst.params.box_radius;
  if (inst.params.directions) params["directions"] = *inst.params.directions;
  if (inst.params.tol) params["tol"] = *inst.params.tol;
  if (inst.params.steps) params["steps"] = *inst.params.steps;
  if (!params.empty()) j["params"] = params;
  if (inst.probe_grid) j["probe_grid"] = grid_json(*inst.probe_grid);
  if (inst.dual_grid) j["dual_grid"] = grid_json(*inst.dual_grid);
  if (inst.feasible) {
    if (const auto* pts = std::get_if<std::vector<Vec>>(&*inst.feasible)) {
      json a = json::array();
      for (const auto& p : *pts) a.push_back(json_vec(p));
      j["feasible"] = {{"points", a}};
    } else {
      json hs = json::array();
      for (const auto& h : std::get<Polyhedron>(*inst.feasible).halfspaces()) {
        hs.push_back({{"normal", json_vec(h.normal)}, {"offset", json_number(h.offset)}});
      }
      j["feasible"] = {{"halfspaces", hs}};
    }
  }
  if (inst.witness) {
    json w = {{"x", json_vec(inst.witness->x)}, {"xstar", json_vec(inst.witness->xstar)}};
    if (inst.witness->n) w["n"] = *inst.witness->n;
    if (inst.witness->epsilon) w["epsilon"] = *inst.witness->epsilon;
    j["witness"] = w;
  }
  if (!inst.expected.empty()) {
    json e = json::object();
    for (const auto& [k, v] : inst.expected) e[k] = v;
    j["expected"] = e;
  }
  return j;
}

}  // namespace fenchel
