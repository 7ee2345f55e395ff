#pragma once

// JSON experiment configs: function, region and quadrature descriptors.
//
//   {"id": "cx12", "op": "counterexample",
//    "function": {"variant": "blaschke_geometric", "K": 12},
//    "params": {"eps": 0.005, "m_max": 8},
//    "quad": {"J": 14, "angular_base": 16, "M": 512, "sigma": 0.2, "tol": 1e-6},
//    "out": {"csv": "cx12.csv"}}

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloch/holofn.hpp"
#include "bloch/hypgeo.hpp"
#include "bloch/operators.hpp"
#include "bloch/quad.hpp"

namespace bloch {

using Json = nlohmann::json;

/// Thrown for anything wrong with a config; the message is meant for users.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A number, [re, im] or {"re": .., "im": ..}.
Complex parse_complex(const Json& j);
FunctionModel parse_function(const Json& j);
/// Missing fields keep their defaults.
QuadratureSpec parse_quad(const Json& j, QuadratureSpec base = {});
TentFlavor parse_tent_flavor(const std::string& s);
DensityFlavor parse_density_flavor(const std::string& s);
/// "disk", "empty", {"euclidean_disk": ..}, {"hyperbolic_disk": ..}, {"tent": ..},
/// {"levelset": ..}, {"intersection": [..]}, {"complement": ..}.
Region parse_region(const Json& j);

struct ExperimentConfig {
  std::string id = "experiment";
  std::string op;
  std::optional<FunctionModel> function;
  Json function_json;
  Json region_json;
  Json params = Json::object();
  QuadratureSpec quad;
  std::string csv_path;
  std::string svg_path;

  /// params[key] as a number, or `fallback` when absent.
  double number(const std::string& key, double fallback) const;
  bool has(const std::string& key) const { return params.contains(key); }
  /// Throws ConfigError when the op needs a function and none was given.
  const FunctionModel& require_function() const;
};

ExperimentConfig parse_experiment(const Json& j);
ExperimentConfig load_experiment(const std::string& path);

}  // namespace bloch
