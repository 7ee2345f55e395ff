#include "bloch/config.hpp"

#include <algorithm>
#include <fstream>

namespace bloch {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number_at(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) fail(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

int integer_at(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<Complex> complex_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be a list");
  std::vector<Complex> out;
  for (const Json& v : j) out.push_back(parse_complex(v));
  return out;
}

}  // namespace

Complex parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && (j.contains("re") || j.contains("im"))) {
    return {j.value("re", 0.0), j.value("im", 0.0)};
  }
  fail("expected a complex number (number, [re, im] or {\"re\", \"im\"}), got " + j.dump());
}

FunctionModel parse_function(const Json& j) {
  if (!j.is_object()) fail("function descriptor must be an object");
  const std::string variant = field(j, "variant", "function").get<std::string>();
  const std::string where = "function " + variant;
  try {
    if (variant == "constant") return FunctionModel::constant(parse_complex(field(j, "c", where)));
    if (variant == "monomial") {
      const int n = integer_at(j, "n", where);
      if (n < 0) fail(where + ": n must be non-negative");
      return FunctionModel::monomial(static_cast<unsigned>(n),
                                     j.contains("c") ? parse_complex(j["c"]) : Complex{1.0});
    }
    if (variant == "power_series") {
      return FunctionModel::power_series(complex_list(field(j, "coefficients", where), where));
    }
    if (variant == "lacunary") {
      const Json& e = field(j, "exponents", where);
      if (!e.is_array()) fail(where + ": exponents must be a list");
      std::vector<std::uint64_t> exps;
      for (const Json& v : e) {
        if (!v.is_number_unsigned()) fail(where + ": exponents must be positive integers");
        exps.push_back(v.get<std::uint64_t>());
      }
      return FunctionModel::lacunary(std::move(exps),
                                     complex_list(field(j, "coefficients", where), where));
    }
    if (variant == "blaschke") {
      return FunctionModel::blaschke(complex_list(field(j, "zeros", where), where));
    }
    if (variant == "blaschke_geometric") return blaschke_geometric(integer_at(j, "K", where));
    if (variant == "power_of_one_minus_z") {
      return FunctionModel::power_of_one_minus_z(number_at(j, "gamma", where));
    }
    if (variant == "scaled") {
      return FunctionModel::scaled(parse_complex(field(j, "c", where)),
                                   parse_function(field(j, "inner", where)));
    }
    if (variant == "sum") {
      const Json& t = field(j, "terms", where);
      if (!t.is_array() || t.empty()) fail(where + ": terms must be a non-empty list");
      std::vector<FunctionModel> terms;
      for (const Json& v : t) terms.push_back(parse_function(v));
      return FunctionModel::sum(std::move(terms));
    }
  } catch (const DomainError& e) {
    fail(where + ": " + e.what());
  }
  fail("unknown function variant \"" + variant + "\"");
}

QuadratureSpec parse_quad(const Json& j, QuadratureSpec spec) {
  if (j.is_null()) return spec;
  if (!j.is_object()) fail("quad must be an object");
  for (const auto& [key, _] : j.items()) {
    static const char* known[] = {"J", "angular_base", "M", "sigma", "tol", "cell_order",
                                  "early_exit", "min_depth"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      fail("quad: unknown field \"" + key + "\"");
    }
  }
  if (j.contains("J")) spec.boundary_depth = integer_at(j, "J", "quad");
  if (j.contains("angular_base")) spec.angular_base = integer_at(j, "angular_base", "quad");
  if (j.contains("M")) spec.circle_points = integer_at(j, "M", "quad");
  if (j.contains("sigma")) spec.sup_lattice_gap = number_at(j, "sigma", "quad");
  if (j.contains("tol")) spec.tolerance = number_at(j, "tol", "quad");
  if (j.contains("cell_order")) spec.cell_order = integer_at(j, "cell_order", "quad");
  if (j.contains("min_depth")) spec.min_depth = integer_at(j, "min_depth", "quad");
  if (j.contains("early_exit")) spec.early_exit = j["early_exit"].get<bool>();
  try {
    spec.validate();
  } catch (const DomainError& e) {
    fail(std::string("quad: ") + e.what());
  }
  return spec;
}

TentFlavor parse_tent_flavor(const std::string& s) {
  if (s == "koranyi") return TentFlavor::Koranyi;
  if (s == "classical") return TentFlavor::Classical;
  fail("tent flavor must be \"koranyi\" or \"classical\", got \"" + s + "\"");
}

DensityFlavor parse_density_flavor(const std::string& s) {
  if (s == "fprime") return DensityFlavor::FPrime;
  if (s == "radial") return DensityFlavor::Radial;
  fail("density flavor must be \"fprime\" or \"radial\", got \"" + s + "\"");
}

Region parse_region(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "disk") return Region::disk();
    if (s == "empty") return Region::empty();
    fail("unknown region \"" + s + "\"");
  }
  if (!j.is_object() || j.size() != 1) fail("region must be a string or a one-key object");
  const std::string kind = j.begin().key();
  const Json& body = j.begin().value();
  try {
    if (kind == "euclidean_disk") {
      return Region::euclidean_disk(parse_complex(field(body, "center", kind)),
                                    number_at(body, "radius", kind));
    }
    if (kind == "hyperbolic_disk") {
      return HyperbolicDisk(parse_complex(field(body, "center", kind)), number_at(body, "rho", kind))
          .region();
    }
    if (kind == "tent") {
      const TentRegion t(BoundaryPoint(body.value("theta", 0.0)),
                         body.value("alpha", kDefaultAperture),
                         parse_tent_flavor(body.value("flavor", std::string("koranyi"))));
      return t.region();
    }
    if (kind == "levelset") {
      return level_set(parse_function(field(body, "fn", kind)), number_at(body, "eps", kind),
                       parse_density_flavor(body.value("flavor", std::string("fprime"))));
    }
    if (kind == "intersection") {
      if (!body.is_array() || body.empty()) fail("intersection must be a non-empty list");
      Region r = parse_region(body[0]);
      for (std::size_t i = 1; i < body.size(); ++i) r = r.intersect(parse_region(body[i]));
      return r;
    }
    if (kind == "complement") return parse_region(body).complement();
  } catch (const DomainError& e) {
    fail(kind + ": " + e.what());
  }
  fail("unknown region kind \"" + kind + "\"");
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  if (!v.is_number()) fail("params: \"" + key + "\" must be a number");
  return v.get<double>();
}

const FunctionModel& ExperimentConfig::require_function() const {
  if (!function) fail("op \"" + op + "\" needs a \"function\"");
  return *function;
}

ExperimentConfig parse_experiment(const Json& j) {
  if (!j.is_object()) fail("config must be a JSON object");
  ExperimentConfig c;
  c.id = j.value("id", c.id);
  c.op = j.value("op", std::string());
  if (j.contains("function")) {
    c.function_json = j["function"];
    c.function = parse_function(c.function_json);
  }
  if (j.contains("region")) {
    c.region_json = j["region"];
    parse_region(c.region_json);  // validate early
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail("params must be an object");
    c.params = j["params"];
  }
  c.quad = parse_quad(j.value("quad", Json()));
  if (j.contains("out")) {
    const Json& o = j["out"];
    c.csv_path = o.value("csv", std::string());
    c.svg_path = o.value("svg", std::string());
  }
  return c;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    fail("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_experiment(j);
}

}  // namespace bloch
