#include <doctest.h>

#include <filesystem>

#include "fenchel/instance.hpp"

using namespace fenchel;
namespace fs = std::filesystem;

namespace {

std::string where_of(const std::string& text) {
  try {
    (void)parse_instance(text);
  } catch (const SchemaError& e) {
    return e.where();
  }
  return "<accepted>";
}

const char* kMinimal = R"({
  "name": "m",
  "dim": 1,
  "f": {"kind": "polyhedral", "pieces": [{"slope": [1], "intercept": 0}]}
})";

}  // namespace

TEST_CASE("schema: every bundled instance round-trips") {
  int files = 0;
  for (const auto& dir : fs::directory_iterator(FENCHEL_CORPUS_DIR)) {
    for (const auto& entry : fs::directory_iterator(dir.path())) {
      if (entry.path().extension() != ".json") continue;
      CAPTURE(entry.path().string());
      const auto inst = load_instance(entry.path().string());
      const auto once = to_json(inst);
      const auto again = to_json(parse_instance(once.dump(2)));
      CHECK(once == again);
      CHECK(again.dump() == once.dump());
      ++files;
    }
  }
  CHECK(files >= 12);
}

TEST_CASE("schema: minimal instance and defaults") {
  const auto inst = parse_instance(kMinimal);
  CHECK(inst.name == "m");
  CHECK(inst.f.has_value());
  CHECK_FALSE(inst.g.has_value());
  CHECK_FALSE(inst.params.splits.has_value());
  CHECK(inst.expected.empty());
}

TEST_CASE("schema: unknown keys are rejected with their path") {
  CHECK(where_of(R"({"name": "m", "dim": 1, "colour": 3})") == "colour");
  CHECK(where_of(R"({"name": "m", "dim": 1, "params": {"split": 3}})") == "params.split");
  CHECK(where_of(R"({"name": "m", "dim": 1, "expected": {"statement_v": true}})") == "expected.statement_v");
  CHECK(where_of(R"({"name": "m", "dim": 1,
    "f": {"kind": "piecewise_min", "branches": [{"pieces": [{"slope": [1], "intercept": 0, "x": 1}]}]}})") ==
        "f.branches[0].pieces[0].x");
}

TEST_CASE("schema: field diagnostics") {
  CHECK(where_of(R"({"dim": 1})") == "name");
  CHECK(where_of(R"({"name": "m", "dim": 4})") == "dim");
  CHECK(where_of(R"({"name": "m", "dim": 2, "probes": [{"x": [1], "epsilon": 0}]})") == "probes[0].x");
  CHECK(where_of(R"({"name": "m", "dim": 1, "probes": [{"x": [1], "epsilon": -1}]})") == "probes[0].epsilon");
  CHECK(where_of(R"({"name": "m", "dim": 1, "f": {"kind": "spline"}})") == "f.kind");
  CHECK(where_of(R"({"name": "m", "dim": 1, "params": {"tol": 0}})") == "params.tol");
  CHECK(where_of(R"({"name": "m", "dim": 1, "feasible": {"points": []}})") == "feasible.points");
  CHECK(where_of(R"({"name": "m", "dim": 1,
    "f": {"kind": "grid_samples", "grid": {"lower": [0], "upper": [1], "nodes": [3]}, "values": [0, 1]}})") == "f.values");
}

TEST_CASE("schema: syntax errors report the line") {
  CHECK(where_of("{\n  \"name\": \"m\",\n  \"dim\": 1,\n  oops\n}") == "line 4");
  CHECK(where_of("") == "line 1");
}

TEST_CASE("schema: infinity literals") {
  const auto inst = parse_instance(R"({"name": "m", "dim": 1,
    "f": {"kind": "grid_samples", "grid": {"lower": [0], "upper": [1], "nodes": [3]}, "values": [0, "inf", 1]}})");
  const auto& g = std::get<GridFunction>(inst.f->fn);
  CHECK(std::isinf(g.at(1)));
  CHECK(to_json(inst)["f"]["values"][1] == "inf");
  CHECK(where_of(R"({"name": "m", "dim": 1,
    "f": {"kind": "grid_samples", "grid": {"lower": [0], "upper": [1], "nodes": [3]}, "values": [0, "-inf", 1]}})") ==
        "f.values[1]");
  CHECK(where_of(R"({"name": "m", "dim": 1, "probes": [{"x": ["inf"], "epsilon": 0}]})") == "probes[0].x[0]");
  CHECK(json_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("schema: missing files") {
  CHECK_THROWS_AS((void)load_instance("/nonexistent/instance.json"), SchemaError);
}
