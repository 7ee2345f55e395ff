#include "bloch/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "bloch/operators.hpp"

namespace bloch {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string point_text(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

std::string fixed(double v, const char* fmt = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Everything an op needs besides the numbers it computes.
class Context {
 public:
  explicit Context(const ExperimentConfig& cfg) : cfg_(cfg) {}

  const ExperimentConfig& cfg() const { return cfg_; }
  const QuadratureSpec& spec() const { return cfg_.quad; }

  double number(const std::string& key, double fallback) const {
    return cfg_.number(key, fallback);
  }
  double positive(const std::string& key, double fallback) const {
    const double v = number(key, fallback);
    if (!(v > 0.0)) fail(cfg_.op + ": \"" + key + "\" must be positive");
    return v;
  }
  int integer(const std::string& key, int fallback) const {
    const double v = number(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(cfg_.op + ": \"" + key + "\" must be an integer");
    return static_cast<int>(v);
  }
  bool flag(const std::string& key, bool fallback) const {
    if (!cfg_.has(key)) return fallback;
    const Json& v = cfg_.params.at(key);
    if (!v.is_boolean()) fail(cfg_.op + ": \"" + key + "\" must be true or false");
    return v.get<bool>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    if (!cfg_.has(key)) return fallback;
    const Json& v = cfg_.params.at(key);
    if (!v.is_string()) fail(cfg_.op + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
  }
  // A number or a list of numbers.
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!cfg_.has(key)) return fallback;
    const Json& v = cfg_.params.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) fail(cfg_.op + ": \"" + key + "\" must be a number or a list of numbers");
    std::vector<double> out;
    for (const Json& x : v) {
      if (!x.is_number()) fail(cfg_.op + ": \"" + key + "\" must hold numbers only");
      out.push_back(x.get<double>());
    }
    return out;
  }
  // A list of complex numbers; [0.3, 0.2] is two real points, not one.
  std::vector<Complex> points(const std::string& key, std::vector<Complex> fallback) const {
    if (!cfg_.has(key)) return fallback;
    const Json& v = cfg_.params.at(key);
    if (!v.is_array()) fail(cfg_.op + ": \"" + key + "\" must be a list of points");
    std::vector<Complex> out;
    for (const Json& x : v) out.push_back(parse_complex(x));
    return out;
  }

  DensityFlavor density(DensityFlavor fallback) const {
    return cfg_.has("flavor") ? parse_density_flavor(text("flavor", "")) : fallback;
  }
  TentOptions tent() const {
    TentOptions t;
    t.aperture = number("alpha", kDefaultAperture);
    if (!(t.aperture > 2.0)) fail(cfg_.op + ": \"alpha\" must exceed 2");
    if (cfg_.has("tent_flavor")) t.flavor = parse_tent_flavor(text("tent_flavor", ""));
    return t;
  }
  KernelParams kernel() const {
    if (cfg_.has("p")) {
      const double p = positive("p", 1.0);
      return KernelParams::for_exponent(p, number("beta", KernelParams::default_beta(p)));
    }
    return KernelParams(number("beta", 3.0));
  }

  CsvRow row(const std::string& key, double value, double error = kNoValue,
             unsigned flags = 0) const {
    CsvRow r;
    r.experiment_id = cfg_.id;
    r.key = key;
    r.function = cfg_.function ? cfg_.function->describe() : "";
    if (cfg_.has("eps") && cfg_.params.at("eps").is_number()) r.eps = number("eps", kNoValue);
    if (cfg_.has("p") && cfg_.params.at("p").is_number()) r.p = number("p", kNoValue);
    if (cfg_.has("alpha") && cfg_.params.at("alpha").is_number()) r.alpha = number("alpha", kNoValue);
    if (cfg_.has("beta") && cfg_.params.at("beta").is_number()) r.beta = number("beta", kNoValue);
    r.value = value;
    r.error_estimate = error;
    r.flags = flag_text(flags);
    r.spec_fingerprint = spec().fingerprint();
    return r;
  }

 private:
  const ExperimentConfig& cfg_;
};

using Op = std::function<void(const Context&, ExperimentOutcome&)>;

void add(ExperimentOutcome& out, CsvRow row, unsigned flags) {
  out.flags |= flags;
  out.rows.push_back(std::move(row));
}

void op_bloch_norm(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const SupResult s = bloch_seminorm(f, c.spec(), c.density(DensityFlavor::FPrime));
  CsvRow r = c.row("bloch_seminorm", s.value);
  r.zeta = std::arg(s.argmax);
  add(out, r, 0);
  out.summary = "bloch seminorm " + fixed(s.value, "%.10g") + " at " + point_text(s.argmax);
}

void op_hardy_norm(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double p = c.positive("p", 2.0);
  const HardyResult h = hardy_norm(f, p, c.spec());
  CsvRow r = c.row("hardy_norm", h.value, h.error_estimate, h.flags);
  r.p = p;
  add(out, r, h.flags);
  CsvRow raw = c.row("hardy_raw_sup", h.raw_sup, kNoValue, h.flags);
  raw.p = p;
  add(out, raw, h.flags);
  out.summary = "hardy norm " + fixed(h.value, "%.10g") +
                (h.flags ? " [" + flag_text(h.flags) + "]" : std::string());
}

void op_area_fn(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const TentOptions tent = c.tent();
  const DensityFlavor flavor = c.density(DensityFlavor::FPrime);
  for (double theta : c.numbers("zeta", {0.0})) {
    const Estimate a = area_function(f, BoundaryPoint(theta), c.spec(), tent, flavor);
    CsvRow r = c.row("area_function", a.value, a.error_estimate, a.flags);
    r.alpha = tent.aperture;
    r.zeta = theta;
    add(out, r, a.flags);
    out.summary += "A(f)(" + fixed(theta) + ") = " + fixed(a.value, "%.10g") + "\n";
  }
}

void op_level_set(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double eps = c.positive("eps", 0.0);
  const Region omega = level_set(f, eps, c.density(DensityFlavor::FPrime));
  if (c.cfg().svg_path.empty()) fail("level-set: no SVG output path");
  SvgOptions svg;
  svg.size = c.integer("size", 1024);
  if (svg.size < 8) fail("level-set: \"size\" must be at least 8");
  const TentOptions tent = c.tent();
  for (double theta : c.numbers("tents", {})) {
    svg.tents.emplace_back(BoundaryPoint(theta), tent.aperture, tent.flavor);
  }
  write_region_svg(c.cfg().svg_path, omega, svg);
  // normalised Euclidean area: finite even when the level set reaches the circle
  const IntegralResult a = integrate_disk([](Complex) { return Complex{1.0, 0.0}; }, omega,
                                          c.spec());
  add(out, c.row("normalized_area", a.real(), a.error_estimate), 0);
  out.summary = "wrote " + c.cfg().svg_path + "; normalised area " + fixed(a.real(), "%.8g");
}

void op_tent_volume(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double eps = c.positive("eps", 0.0);
  const TentOptions tent = c.tent();
  const DensityFlavor flavor = c.density(DensityFlavor::FPrime);
  for (double theta : c.numbers("zeta", {0.0})) {
    const Estimate v = tent_levelset_volume(f, eps, BoundaryPoint(theta), c.spec(), tent, flavor);
    CsvRow r = c.row("tent_volume", v.value, v.error_estimate, v.flags);
    r.alpha = tent.aperture;
    r.zeta = theta;
    add(out, r, v.flags);
    out.summary += "V_h(" + fixed(theta) + ") = " + fixed(v.value, "%.10g") + "\n";
  }
}

void op_criterion(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double eps = c.positive("eps", 0.0);
  const double p = c.positive("p", 2.0);
  const TentOptions tent = c.tent();
  const bool with_area = c.flag("area_fn", false);
  const CriterionResult cr =
      criterion_lp(f, eps, p, c.spec(), tent, c.density(DensityFlavor::FPrime), with_area);
  for (const TentProfile& t : cr.profile) {
    CsvRow r = c.row("tent_volume", t.tent_volume, kNoValue, t.flags);
    r.p = p;
    r.alpha = tent.aperture;
    r.zeta = t.zeta.theta();
    add(out, r, t.flags);
    if (with_area) {
      CsvRow a = r;
      a.key = "area_function";
      a.value = t.area_fn;
      add(out, a, t.flags);
    }
  }
  CsvRow r = c.row("criterion_lp", cr.value, kNoValue, cr.flags);
  r.p = p;
  r.alpha = tent.aperture;
  add(out, r, cr.flags);
  out.summary = "criterion L^" + fixed(p) + " norm " + fixed(cr.value, "%.10g") + " over " +
                std::to_string(cr.profile.size()) + " vertices";
}

const std::vector<Complex> kDefaultPoints = {{0.0, 0.0}, {0.3, 0.2}, {-0.5, 0.1}, {0.0, -0.7}};

void op_split(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double eps = c.positive("eps", 0.0);
  const KernelParams kp = c.kernel();
  const std::vector<Complex> pts = c.points("points", kDefaultPoints);
  SplitOptions opt;
  opt.lattice_gap = c.positive("lattice_gap", opt.lattice_gap);
  opt.lattice_depth = c.integer("lattice_depth", opt.lattice_depth);
  opt.estimate_f1_norm = c.flag("estimate_f1_norm", true);
  const SplitResult s = split(f, eps, kp, pts, c.spec(), opt);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const std::string at = "@" + point_text(s.points[i]);
    const Complex f2 = s.f2_values[i], f1 = s.f1_values[i];
    add(out, c.row("re_f1" + at, f1.real(), kNoValue, s.flags), s.flags);
    add(out, c.row("im_f1" + at, f1.imag(), kNoValue, s.flags), s.flags);
    add(out, c.row("re_f2" + at, f2.real(), kNoValue, s.flags), s.flags);
    add(out, c.row("im_f2" + at, f2.imag(), kNoValue, s.flags), s.flags);
  }
  if (opt.estimate_f1_norm) {
    CsvRow r = c.row("f1_bloch_estimate", s.f1_bloch_estimate, kNoValue, s.flags);
    r.beta = s.beta;
    add(out, r, s.flags);
    out.summary = "||f1||_B >= " + fixed(s.f1_bloch_estimate, "%.8g") + " at " +
                  point_text(s.f1_argmax) + ", ratio to eps " +
                  fixed(s.f1_bloch_estimate / eps, "%.4g") + "\n";
  }
  out.summary += std::to_string(s.omega_nodes) + " nodes in Omega_eps";
}

void op_reproduce(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const KernelParams kp = c.kernel();
  const std::vector<Complex> pts = c.points("points", kDefaultPoints);
  const ReproduceResult r = reproduce(f, pts, kp, c.spec());
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string at = "@" + point_text(pts[i]);
    const double err = std::abs(r.values[i] - f.value(pts[i]));
    worst = std::max(worst, err);
    add(out, c.row("re_value" + at, r.values[i].real(), r.error_estimates[i], r.flags), r.flags);
    add(out, c.row("im_value" + at, r.values[i].imag(), r.error_estimates[i], r.flags), r.flags);
    add(out, c.row("abs_error" + at, err, r.error_estimates[i], r.flags), r.flags);
  }
  out.summary = "max |reproduce - f| = " + fixed(worst, "%.3e") + " with beta " + fixed(kp.beta());
}

void op_xiao(const Context& c, ExperimentOutcome& out) {
  const auto& f = c.cfg().require_function();
  const double eps = c.positive("eps", 0.0);
  const std::vector<Complex> probes = c.points("probes", {});
  const XiaoResult x = xiao_functional(f, eps, c.spec(), probes, c.density(DensityFlavor::FPrime));
  for (std::size_t i = 0; i < x.probes.size(); ++i) {
    CsvRow r = c.row("I(w)@" + point_text(x.probes[i]), x.integrals[i], x.error_estimates[i],
                     x.flags);
    r.zeta = std::arg(x.probes[i]);
    add(out, r, x.flags);
  }
  add(out, c.row("xiao_max", x.value, kNoValue, x.flags), x.flags);
  out.summary = "max over " + std::to_string(x.probes.size()) + " probes " +
                fixed(x.value, "%.8g") + " at " + point_text(x.argmax);
}

void op_counterexample(const Context& c, ExperimentOutcome& out) {
  int K = c.integer("K", 0);
  if (c.cfg().function) {
    const Json& fj = c.cfg().function_json;
    if (fj.value("variant", "") != "blaschke_geometric") {
      fail("counterexample: function must be blaschke_geometric (or give params.K)");
    }
    K = fj.at("K").get<int>();
  }
  if (K < 4) fail("counterexample: K must be at least 4");
  const int m_max = c.integer("m_max", 7);
  const double delta = separation_constant(blaschke_geometric(K));
  const double eps = c.cfg().has("eps") ? c.positive("eps", 0.0) : delta / 8.0;
  const CounterexampleResult cx = counterexample_profile(K, eps, m_max, c.spec());
  for (const CounterexampleRow& row : cx.rows) {
    CsvRow r = c.row("I(w_m)", row.integral, row.error_estimate, cx.flags);
    r.eps = eps;
    r.zeta = row.m;
    add(out, r, cx.flags);
  }
  std::ostringstream s;
  s << "K " << K << ", delta_hat " << fixed(delta, "%.6g") << ", eps " << fixed(eps, "%.6g")
    << ", rho_hat " << (cx.rho_hat ? fixed(*cx.rho_hat) : std::string("none")) << '\n';
  for (const CounterexampleRow& row : cx.rows) {
    s << "  m " << row.m << "  I(w_m) " << fixed(row.integral, "%.8g") << '\n';
  }
  double worst = 0.0;
  for (const MobiusCheck& m : cx.mobius) worst = std::max(worst, std::abs(m.area - m.reference));
  s << "  Mobius check: max |A_h(D(z_k)) - A_h(D(0))| = " << fixed(worst, "%.3e");
  out.summary = s.str();
}

void op_lemma1(const Context& c, ExperimentOutcome& out) {
  const double t = c.number("t", 1.0), s = c.number("s", 1.0);
  std::vector<Complex> def;
  for (int j = 3; j <= 10; ++j) def.emplace_back(1.0 - std::ldexp(1.0, -j), 0.0);
  const std::vector<Complex> zs = c.points("z", def);
  const Lemma1Result r = verify_lemma1(t, s, zs, c.spec());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    add(out, c.row("I(z)@" + point_text(zs[i]), r.integrals[i], kNoValue, r.flags), r.flags);
    add(out, c.row("ratio@" + point_text(zs[i]), r.ratios[i], kNoValue, r.flags), r.flags);
  }
  add(out, c.row("slope", r.slope, kNoValue, r.flags), r.flags);
  add(out, c.row("max_ratio", r.max_ratio, kNoValue, r.flags), r.flags);
  out.summary = "slope " + fixed(r.slope, "%.5f") + ", max ratio " + fixed(r.max_ratio, "%.6g");
}

void op_lemma2(const Context& c, ExperimentOutcome& out) {
  const double s = c.number("s", 2.0), r = c.number("r", 3.0), t = c.number("t", 3.0);
  std::vector<std::pair<Complex, Complex>> pairs;
  if (c.cfg().has("pairs")) {
    const Json& v = c.cfg().params.at("pairs");
    if (!v.is_array()) fail("lemma2: \"pairs\" must be a list of [z, a]");
    for (const Json& p : v) {
      if (!p.is_array() || p.size() != 2) fail("lemma2: each pair must be [z, a]");
      pairs.emplace_back(parse_complex(p[0]), parse_complex(p[1]));
    }
  } else {
    for (int j = 3; j <= 8; ++j) pairs.push_back({1.0 - std::ldexp(1.0, -j), 0.5});
  }
  const Lemma2Result res = verify_lemma2(s, r, t, pairs, c.spec());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string at = "@" + point_text(pairs[i].first) + "," + point_text(pairs[i].second);
    add(out, c.row("integral" + at, res.integrals[i], kNoValue, res.flags), res.flags);
    add(out, c.row("ratio" + at, res.ratios[i], kNoValue, res.flags), res.flags);
  }
  add(out, c.row("max_ratio", res.max_ratio, kNoValue, res.flags), res.flags);
  out.summary = "max normalised ratio " + fixed(res.max_ratio, "%.6g");
}

void op_lemma3(const Context& c, ExperimentOutcome& out) {
  const double b = c.number("b", 2.5), s = c.number("s", 0.5);
  std::vector<PointMass> mu;
  if (c.cfg().has("masses")) {
    const Json& v = c.cfg().params.at("masses");
    if (!v.is_array()) fail("lemma3: \"masses\" must be a list of {\"z\", \"weight\"}");
    for (const Json& m : v) {
      if (!m.is_object() || !m.contains("z")) fail("lemma3: each mass needs \"z\"");
      const Json& w = m.value("weight", Json(1.0));
      if (!w.is_number()) fail("lemma3: \"weight\" must be a number");
      mu.push_back({parse_complex(m.at("z")), w.get<double>()});
    }
  } else {
    mu.push_back({0.0, 1.0});
  }
  const Lemma3Result r = verify_lemma3(mu, b, s, c.spec(), c.tent());
  add(out, c.row("lhs", r.lhs), 0);
  add(out, c.row("rhs", r.rhs), 0);
  add(out, c.row("ratio", r.ratio), 0);
  out.summary = "lhs " + fixed(r.lhs, "%.8g") + ", rhs " + fixed(r.rhs, "%.8g") + ", ratio " +
                fixed(r.ratio, "%.8g");
}

void op_hyperbolic_area(const Context& c, ExperimentOutcome& out) {
  if (c.cfg().region_json.is_null()) fail("hyperbolic-area: needs a \"region\"");
  const Region region = parse_region(c.cfg().region_json);
  const IntegralResult a = hyperbolic_area(region, c.spec());
  const unsigned flags = flags_of(a);
  add(out, c.row("hyperbolic_area", a.real(), a.error_estimate, flags), flags);
  out.summary = "A_h = " + fixed(a.real(), "%.10g") +
                (flags ? " [" + flag_text(flags) + "]" : std::string());
}

const std::vector<std::pair<std::string, Op>>& op_table() {
  static const std::vector<std::pair<std::string, Op>> table = {
      {"bloch-norm", op_bloch_norm},
      {"hardy-norm", op_hardy_norm},
      {"area-fn", op_area_fn},
      {"level-set", op_level_set},
      {"tent-volume", op_tent_volume},
      {"criterion", op_criterion},
      {"split", op_split},
      {"reproduce", op_reproduce},
      {"xiao", op_xiao},
      {"counterexample", op_counterexample},
      {"lemma1", op_lemma1},
      {"lemma2", op_lemma2},
      {"lemma3", op_lemma3},
      {"hyperbolic-area", op_hyperbolic_area},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_ops() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, op] : op_table()) n.push_back(name);
    return n;
  }();
  return names;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  for (const auto& [name, op] : op_table()) {
    if (name != cfg.op) continue;
    ExperimentOutcome out;
    try {
      cfg.quad.validate();
      op(Context(cfg), out);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(cfg.op + ": " + e.what());
    }
    return out;
  }
  fail("unknown op \"" + cfg.op + "\"");
}

int exit_code_for(unsigned flags) {
  return (flags & (kFlagDivergent | kFlagNoPlateau)) != 0 ? 2 : 0;
}

}  // namespace bloch
