#include "bloch/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "bloch/operators.hpp"

namespace bloch {

namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo - 1.0;
}

CsvRow row(const std::string& id, const std::string& key, const std::string& fn, double value,
           const QuadratureSpec& spec) {
  CsvRow r;
  r.experiment_id = id;
  r.key = key;
  r.function = fn;
  r.value = value;
  r.spec_fingerprint = spec.fingerprint();
  return r;
}

// 1: f(0) + int Rf L dv_beta = f at nine points with |z| <= 0.7.
void reproducing_formula(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "reproducing formula";
  std::vector<Complex> pts = {0.0};
  for (int k = 0; k < 4; ++k) {
    pts.push_back(std::polar(0.35, kTwoPi * k / 4.0));
    pts.push_back(std::polar(0.7, kTwoPi * (k + 0.5) / 4.0));
  }
  const std::vector<std::pair<std::string, FunctionModel>> fns = {
      {"z", FunctionModel::monomial(1)},
      {"z^2", FunctionModel::monomial(2)},
      {"z^3+0.5z", FunctionModel::power_series({0.0, 0.5, 0.0, 1.0})},
      {"blaschke_geometric(4)", blaschke_geometric(4)}};
  double worst = 0.0;
  for (double beta : {1.0, 3.0}) {
    const KernelParams kp(beta);
    for (const auto& [name, f] : fns) {
      const ReproduceResult r = reproduce(f, pts, kp, spec);
      double err = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        err = std::max(err, std::abs(r.values[i] - f.value(pts[i])));
      }
      worst = std::max(worst, err);
      CsvRow c = row("acceptance-1", "max|reproduce-f|", name, err, spec);
      c.beta = beta;
      out.rows.push_back(c);
    }
  }
  out.pass = worst <= 1e-3;
  out.measured = strf("max error %.2e", worst);
  out.expected = "<= 1e-3, runtime <= 120 s";
}

// 2: Lemma 1 growth exponent for t = s = 1.
void lemma1(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "Lemma 1 exponent";
  std::vector<Complex> zs;
  for (int j = 3; j <= 10; ++j) zs.emplace_back(1.0 - std::ldexp(1.0, -j), 0.0);
  const Lemma1Result r = verify_lemma1(1.0, 1.0, zs, spec);
  const std::vector<double> tail(r.ratios.begin() + 3, r.ratios.end());  // j = 6..10
  const double var = spread(tail);
  out.pass = r.slope >= 0.95 && r.slope <= 1.05 && var <= 0.10;
  out.measured = strf("slope %.4f, ratio spread j=6..10 %.1f%%", r.slope, 100.0 * var);
  out.expected = "slope in [0.95, 1.05], spread <= 10%";
  for (std::size_t i = 0; i < zs.size(); ++i) {
    CsvRow c = row("acceptance-2", "I(z)(1-|z|^2)", "lemma1 t=1 s=1", r.ratios[i], spec);
    c.zeta = zs[i].real();
    out.rows.push_back(c);
  }
  out.rows.push_back(row("acceptance-2", "slope", "lemma1 t=1 s=1", r.slope, spec));
}

// 3: Lemma 2 normalised ratio along z = 1 - 2^-j with a = 1/2.
void lemma2(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "Lemma 2 uniform constant";
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int j = 3; j <= 8; ++j) pairs.push_back({1.0 - std::ldexp(1.0, -j), 0.5});
  const Lemma2Result r = verify_lemma2(2.0, 3.0, 3.0, pairs, spec);
  const double var = spread(r.ratios);
  out.pass = var <= 0.15;
  out.measured = strf("ratios %.3f..%.3f, spread %.1f%%",
                      *std::min_element(r.ratios.begin(), r.ratios.end()), r.max_ratio,
                      100.0 * var);
  out.expected = "spread <= 15%";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CsvRow c = row("acceptance-3", "ratio", "lemma2 s=2 r=3 t=3 a=0.5", r.ratios[i], spec);
    c.zeta = pairs[i].first.real();
    out.rows.push_back(c);
  }
}

// 4: Lemma 3 on random point-mass measures.
void lemma3(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "Lemma 3 tent-measure inequality";
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 10);
  const TentOptions tent{4.0, TentFlavor::Koranyi};
  double C = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PointMass> mu(static_cast<std::size_t>(count(rng)));
    for (auto& m : mu) {
      m.z = std::polar(0.95 * std::sqrt(u(rng)), kTwoPi * u(rng));
      m.weight = 0.1 + u(rng);
    }
    const Lemma3Result r = verify_lemma3(mu, 2.5, 0.5, spec, tent);
    C = std::max(C, r.ratio);
    CsvRow c = row("acceptance-4", "lhs/rhs", strf("random measure %d", trial), r.ratio, spec);
    c.alpha = tent.aperture;
    out.rows.push_back(c);
  }
  const PointMass unit[] = {{0.0, 1.0}};
  const double one = verify_lemma3(unit, 2.5, 0.5, spec, tent).ratio;
  out.pass = C <= 50.0 && std::abs(one - 1.0) <= 1e-9;
  out.measured = strf("C = %.3f, unit mass ratio %.12f", C, one);
  out.expected = "C <= 50, unit ratio 1 +- 1e-9";
}

// 5: ||f_1||_B / eps stays in a band of width 3.
void split_quality(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "split quality";
  const auto B = blaschke_geometric(8);
  const KernelParams kp(3.0);
  const std::vector<Complex> probes = {{0.3, 0.2}, {0.0, 0.5}, {-0.6, 0.1}, {0.9, 0.0}};
  std::vector<double> ratios;
  double worst_sum = 0.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const SplitResult s = split(B, eps, kp, probes, spec);
    ratios.push_back(s.f1_bloch_estimate / eps);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Complex f = B.value(probes[i]);
      worst_sum = std::max(worst_sum, std::abs(s.f1_values[i] + s.f2_values[i] - f) /
                                          std::max(1.0, std::abs(f)));
    }
    CsvRow c = row("acceptance-5", "f1_bloch/eps", "blaschke_geometric(8)", ratios.back(), spec);
    c.eps = eps;
    c.beta = kp.beta();
    c.flags = flag_text(s.flags);
    out.rows.push_back(c);
  }
  const double band = *std::max_element(ratios.begin(), ratios.end()) /
                      *std::min_element(ratios.begin(), ratios.end());
  // f1 := f - f2 holds to one rounding; a few ulps is "exact"
  const bool exact = worst_sum <= 4.0 * std::numeric_limits<double>::epsilon();
  out.pass = band <= 3.0 && exact;
  out.measured = strf("f1/eps = %.3f, %.3f, %.3f (band %.2f), |f1+f2-f| <= %.1e", ratios[0],
                      ratios[1], ratios[2], band, worst_sum);
  out.expected = "band max/min <= 3, f1+f2 = f";
}

// 6: V_h(tent ∩ Omega_eps) <= (4/eps^2) A_R(g)^2 at 64 vertices.
void necessity(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "necessity inequality";
  const auto g = blaschke_geometric(6);
  const double eps = 0.5 * separation_constant(g);
  double max_ratio = 0.0;
  bool ok = true;
  for (int k = 0; k < 64; ++k) {
    const BoundaryPoint zeta(kTwoPi * k / 64.0);
    const Estimate v = tent_levelset_volume(g, eps, zeta, spec, {}, DensityFlavor::Radial);
    const Estimate a = area_function(g, zeta, spec, {}, DensityFlavor::Radial);
    const double bound = 4.0 / (eps * eps) * a.value * a.value;
    ok = ok && v.value <= bound + 4.0 * spec.tolerance;
    max_ratio = std::max(max_ratio, v.value / bound);
    CsvRow c = row("acceptance-6", "V/((4/eps^2)A^2)", "blaschke_geometric(6)", v.value / bound,
                   spec);
    c.eps = eps;
    c.alpha = kDefaultAperture;
    c.zeta = zeta.theta();
    c.flags = flag_text(v.flags | a.flags);
    out.rows.push_back(c);
  }
  out.pass = ok;
  out.measured = strf("eps = %.4f, max V/bound = %.4f", eps, max_ratio);
  out.expected = "V <= (4/eps^2) A^2 + 4 tol at all 64 vertices";
}

// 7: the Blaschke counterexample grows along w_m.
void counterexample(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "Blaschke counterexample";
  const double delta = separation_constant(blaschke_geometric(12));
  const CounterexampleResult cx = counterexample_profile(12, delta / 8.0, 7, spec);
  bool increasing = true;
  for (std::size_t i = 1; i < cx.rows.size(); ++i) {
    increasing = increasing && cx.rows[i].integral > cx.rows[i - 1].integral;
  }
  const double growth = cx.rows.back().integral / cx.rows.front().integral;
  double mobius_err = 0.0;
  for (const MobiusCheck& m : cx.mobius) {
    mobius_err = std::max(mobius_err, std::abs(m.area - m.reference));
  }
  const bool mobius_ok = cx.rho_hat && mobius_err <= 2.0 * spec.tolerance;
  out.pass = delta > 0.0 && increasing && growth >= 3.0 && mobius_ok;
  out.measured = strf("delta = %.4f, %s, I(w7)/I(w2) = %.3f, rho = %s, Mobius err %.1e", delta,
                      increasing ? "increasing" : "NOT increasing", growth,
                      cx.rho_hat ? strf("%.2f", *cx.rho_hat).c_str() : "none", mobius_err);
  out.expected = "delta > 0, increasing, ratio >= 3, Mobius within 2 tol, runtime <= 300 s";
  for (const auto& r : cx.rows) {
    CsvRow c = row("acceptance-7", "I(w_m)", "blaschke_geometric(12)", r.integral, spec);
    c.eps = cx.eps;
    c.zeta = r.m;
    c.error_estimate = r.error_estimate;
    out.rows.push_back(c);
  }
}

// 8: norms with known values.
void norms(CriterionReport& out, const QuadratureSpec& spec) {
  out.title = "norm sanity";
  double hardy_err = 0.0;
  for (int n : {1, 5}) {
    for (double p : {0.5, 1.0, 2.0}) {
      hardy_err = std::max(hardy_err, std::abs(hardy_norm(FunctionModel::monomial(n), p, spec).value - 1.0));
    }
  }
  const double bloch = bloch_seminorm(FunctionModel::monomial(2), spec).value;
  const double bloch_err = std::abs(bloch - 4.0 / (3.0 * std::sqrt(3.0)));
  const double area = hyperbolic_area(Region::euclidean_disk(0.0, std::sqrt(0.5)), spec).real();
  const auto g = FunctionModel::power_of_one_minus_z(1.0);
  const bool no_plateau = hardy_norm(g, 2.0, spec).flags & kFlagNoPlateau;
  const bool plateau = !(hardy_norm(g, 0.5, spec).flags & kFlagNoPlateau);
  out.pass = hardy_err <= 1e-6 && bloch_err <= 1e-4 && std::abs(area - 1.0) <= 1e-3 &&
             no_plateau && plateau;
  out.measured = strf("hardy err %.1e, bloch err %.1e, A_h %.6f, p=2 %s, p=1/2 %s", hardy_err,
                      bloch_err, area, no_plateau ? "NO_PLATEAU" : "plateau",
                      plateau ? "plateau" : "NO_PLATEAU");
  out.expected = "1e-6, 1e-4, 1 +- 1e-3, NO_PLATEAU, plateau";
  out.rows.push_back(row("acceptance-8", "max|hardy(z^n)-1|", "z^n", hardy_err, spec));
  out.rows.push_back(row("acceptance-8", "bloch_seminorm", "z^2", bloch, spec));
  out.rows.push_back(row("acceptance-8", "hyperbolic_area(|z|<1/sqrt2)", "", area, spec));
}

}  // namespace

CriterionReport run_criterion(int id, const QuadratureSpec& spec) {
  using clock = std::chrono::steady_clock;
  CriterionReport out;
  out.id = id;
  const auto start = clock::now();
  switch (id) {
    case 1: reproducing_formula(out, spec); break;
    case 2: lemma1(out, spec); break;
    case 3: lemma2(out, spec); break;
    case 4: lemma3(out, spec); break;
    case 5: split_quality(out, spec); break;
    case 6: necessity(out, spec); break;
    case 7: counterexample(out, spec); break;
    case 8: norms(out, spec); break;
    default: throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
  }
  out.seconds = std::chrono::duration<double>(clock::now() - start).count();
  // the two criteria with a runtime budget
  if (id == 1 && out.seconds > 120.0) out.pass = false;
  if (id == 7 && out.seconds > 300.0) out.pass = false;
  return out;
}

std::vector<int> suite_criteria(const std::string& name) {
  if (name == "lemmas") return {2, 3, 4};
  if (name == "theorem") return {1, 5, 6};
  if (name == "counterexample") return {7};
  if (name == "norms") return {8};
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
  throw std::invalid_argument("unknown suite \"" + name +
                              "\" (lemmas, theorem, counterexample, norms, all)");
}

std::string format_report(const CriterionReport& r) {
  return strf("%s  [%d] %s | measured: %s | expected: %s | %.1f s", r.pass ? "PASS" : "FAIL",
              r.id, r.title.c_str(), r.measured.c_str(), r.expected.c_str(), r.seconds);
}

}  // namespace bloch
