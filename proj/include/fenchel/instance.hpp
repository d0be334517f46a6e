#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fenchel/calculus.hpp"
#include "fenchel/grid_function.hpp"
#include "fenchel/polyhedral_function.hpp"
#include "fenchel/relax.hpp"

namespace fenchel {

/// Instance file rejected by the schema. `where` is a field path such as
/// "f.branches[1].slope", or "line N" for syntax errors.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  [[nodiscard]] const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct FunctionSpec {
  std::string kind;  // polyhedral | piecewise_min | grid_samples
  std::variant<PiecewiseMinFunction, GridFunction> fn;
};

/// Solver parameters; unset fields take defaults at run time.
struct Params {
  std::optional<int> splits;
  std::optional<double> box_radius;
  std::optional<int> directions;
  std::optional<double> tol;
  std::optional<int> steps;
};

struct WitnessSpec {
  Vec x;
  Vec xstar;
  std::optional<int> n;
  std::optional<double> epsilon;
};

struct Instance {
  std::string name;
  std::string description;
  int dim = 1;
  std::optional<FunctionSpec> f, g;
  std::vector<Probe> probes;
  Params params;
  std::optional<Grid> probe_grid, dual_grid;
  std::optional<FeasibleSet> feasible;
  std::optional<WitnessSpec> witness;
  std::map<std::string, bool> expected;
};

/// Names accepted under "expected".
const std::vector<std::string>& expected_keys();

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Canonical JSON form; parse_instance(to_json(i).dump()) reproduces i.
nlohmann::json to_json(const Instance& inst);

/// Finite numbers as JSON numbers, infinities as "inf" / "-inf".
nlohmann::json json_number(double v);
nlohmann::json json_vec(const Vec& v);

}  // namespace fenchel
