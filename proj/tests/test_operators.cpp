#include <catch2/catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "bloch/operators.hpp"

using namespace bloch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kBlochZ2 = 4.0 / (3.0 * std::sqrt(3.0));

// sum_{k=1}^{m} of the t-integral for integer m:
// L = -log(1 - x) + sum_{k=2}^{m} ((1 - x)^{1-k} - 1) / (k - 1)
Complex integer_kernel_oracle(Complex x, int m) {
  Complex acc = -std::log(1.0 - x);
  for (int k = 2; k <= m; ++k) acc += (std::pow(1.0 - x, 1.0 - k) - 1.0) / double(k - 1);
  return acc;
}

// Adaptive Gauss-Kronrod on the t-integral, real and imaginary parts apart.
Complex kernel_by_gk(Complex x, double m) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto part = [&](bool imag) {
    return GK::integrate(
        [&](double t) {
          const Complex v = (std::pow(1.0 - t * x, -m) - 1.0) / t;
          return imag ? v.imag() : v.real();
        },
        0.0, 1.0, 20, 1e-13);
  };
  return {part(false), part(true)};
}

// Lemma 1 with t = s = 1 in closed form: 1/(1-x) - (-log(1-x) - x)/x^2, x = |z|^2.
double lemma1_t1s1(double x) { return 1.0 / (1.0 - x) - (-std::log1p(-x) - x) / (x * x); }

// Lemma 2 with (s, r, t) = (2, 3, 3) and real z, a by its power series:
// sum_N B(N+1, 3) (sum_{n+p=N} c_n c_p z^n a^p)^2, c_n = (3/2)_n / n!.
double lemma2_series(double z, double a) {
  constexpr int kTerms = 6000;
  std::vector<double> c(kTerms), zn(kTerms), an(kTerms);
  c[0] = 1.0;
  for (int n = 1; n < kTerms; ++n) c[n] = c[n - 1] * (0.5 + n) / n;
  for (int n = 0; n < kTerms; ++n) {
    zn[n] = c[n] * std::pow(z, n);
    an[n] = c[n] * std::pow(a, n);
  }
  double total = 0.0;
  for (int N = 0; N < kTerms; ++N) {
    double conv = 0.0;
    for (int n = 0; n <= N; ++n) conv += zn[n] * an[N - n];
    total += 2.0 / ((N + 1.0) * (N + 2.0) * (N + 3.0)) * conv * conv;
  }
  return total;
}

}  // namespace

TEST_CASE("bloch seminorm examples") {
  QuadratureSpec spec;
  CHECK(bloch_seminorm(FunctionModel::constant(2.5), spec).value == 0.0);
  CHECK_THAT(bloch_seminorm(FunctionModel::monomial(1), spec).value, WithinAbs(1.0, 1e-12));
  CHECK_THAT(bloch_seminorm(FunctionModel::monomial(2), spec).value, WithinAbs(kBlochZ2, 1e-4));
  // radial flavour of z: max r (1 - r^2) = 2 / (3 sqrt 3)
  CHECK_THAT(bloch_seminorm(FunctionModel::monomial(1), spec, DensityFlavor::Radial).value,
             WithinAbs(0.5 * kBlochZ2, 1e-4));
}

TEST_CASE("level set membership") {
  const auto z = FunctionModel::monomial(1);
  const Region r = level_set(z, 0.5, DensityFlavor::FPrime);
  CHECK(r.contains(0.0));
  CHECK_FALSE(r.contains(0.8));
  CHECK_THROWS_AS(level_set(z, 0.0, DensityFlavor::FPrime), DomainError);

  // eps above the seminorm: nothing on a sample grid
  const Region none = level_set(FunctionModel::monomial(2), 0.8, DensityFlavor::FPrime);
  for (int i = 0; i < 40; ++i) {
    for (int k = 0; k < 40; ++k) CHECK_FALSE(none.contains(std::polar(i / 40.0, k * 0.157)));
  }

  // B_8 at eps = 0.05: membership is exactly "density at z_k >= 0.05", which
  // holds for k = 1, 2, 8 only (densities 0.184, 0.061, 0.034, 0.026, 0.024,
  // 0.028, 0.044, 0.126).
  const auto B8 = blaschke_geometric(8);
  const Region om = level_set(B8, 0.05, DensityFlavor::FPrime);
  const auto& zeros = B8.as<BlaschkeProduct>()->zeros;
  const double frozen[] = {0.184, 0.061, 0.034, 0.026, 0.024, 0.028, 0.044, 0.126};
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const double d = bloch_density(B8, zeros[k], DensityFlavor::FPrime);
    CHECK_THAT(d, WithinAbs(frozen[k], 1e-3));
    CHECK(om.contains(zeros[k]) == (k == 0 || k == 1 || k == 7));
  }
}

TEST_CASE("level sets shrink as eps grows") {
  const auto B = blaschke_geometric(6);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Complex z = std::polar(std::sqrt(u(rng)) * 0.999, 6.283 * u(rng));
    for (auto fl : {DensityFlavor::FPrime, DensityFlavor::Radial}) {
      if (level_set(B, 0.2, fl).contains(z)) CHECK(level_set(B, 0.1, fl).contains(z));
    }
  }
}

TEST_CASE("area function examples") {
  QuadratureSpec spec;
  CHECK(area_function(FunctionModel::constant(1.0), BoundaryPoint(0.0), spec).value == 0.0);

  // f = z: |f'|^2 = 1, so A(f)(zeta)^2 is the normalised area of the tent.
  const auto z = FunctionModel::monomial(1);
  const Estimate a0 = area_function(z, BoundaryPoint(0.0), spec);
  const Estimate a1 = area_function(z, BoundaryPoint(2.0), spec);
  CHECK_THAT(a0.value, WithinAbs(a1.value, 2.0 * spec.tolerance));
  // midpoint oracle in polar coordinates
  const TentRegion t(BoundaryPoint(0.0), kDefaultAperture);
  double brute = 0.0;
  constexpr int nr = 1200, nt = 2400;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) / nr;
    for (int k = 0; k < nt; ++k) {
      if (t.contains(std::polar(r, kTwoPi * (k + 0.5) / nt))) brute += r;
    }
  }
  brute *= (1.0 / nr) * (kTwoPi / nt) / std::numbers::pi;
  CHECK_THAT(a0.value * a0.value, WithinAbs(brute, 2e-3));

  const auto g = FunctionModel::power_of_one_minus_z(2.0);
  const Estimate at1 = area_function(g, BoundaryPoint(0.0), spec);
  const Estimate at_minus1 = area_function(g, BoundaryPoint(std::numbers::pi), spec);
  CHECK((at1.has(kFlagDivergent) || at1.value > 100.0 * at_minus1.value));
}

TEST_CASE("tent level-set volume examples") {
  QuadratureSpec spec;
  const auto z = FunctionModel::monomial(1);
  CHECK(tent_levelset_volume(z, 1.5, BoundaryPoint(0.3), spec).value == 0.0);

  // f = z, eps = 1/2: the level set is |z| <= 1/sqrt 2
  const TentRegion t(BoundaryPoint(0.0), kDefaultAperture);
  const double oracle =
      hyperbolic_area(t.region().intersect(Region::euclidean_disk(0.0, std::sqrt(0.5))), spec)
          .real();
  const double v0 = tent_levelset_volume(z, 0.5, BoundaryPoint(0.0), spec).value;
  const double v1 = tent_levelset_volume(z, 0.5, BoundaryPoint(1.3), spec).value;
  CHECK(v0 > 0.0);
  CHECK_THAT(v0, WithinAbs(oracle, 2.0 * spec.tolerance));
  CHECK_THAT(v1, WithinAbs(v0, 2.0 * spec.tolerance));

  // blaschke_geometric(K) at zeta = 1 with eps below every zero density: each
  // zero adds a fixed slice of the tent. The level set reaches about
  // log2(1/eps) dyadic levels past the last zero, so J must exceed K + 7.
  QuadratureSpec deep = spec;
  deep.boundary_depth = 26;
  const double frozen[] = {5.69124, 7.46754, 9.16468};
  std::vector<double> vols;
  for (int K : {4, 8, 12}) {
    const Estimate e =
        tent_levelset_volume(blaschke_geometric(K), 0.01, BoundaryPoint(0.0), deep);
    CHECK(e.flags == 0u);
    CHECK_THAT(e.value, WithinRel(frozen[vols.size()], 1e-5));
    vols.push_back(e.value);
  }
  CHECK(vols[0] < vols[1]);
  CHECK(vols[1] < vols[2]);
  // equal steps in K give nearly equal steps in volume
  const double s1 = vols[1] - vols[0], s2 = vols[2] - vols[1];
  CHECK(s2 / s1 > 0.8);
  CHECK(s2 / s1 < 1.25);
}

TEST_CASE("criterion examples") {
  QuadratureSpec spec;
  spec.circle_points = 32;
  CHECK(criterion_lp(FunctionModel::constant(3.0), 0.1, 2.0, spec).value == 0.0);

  const auto z = FunctionModel::monomial(1);
  const double v = tent_levelset_volume(z, 0.5, BoundaryPoint(0.0), spec).value;
  CHECK_THAT(criterion_lp(z, 0.5, 2.0, spec).value, WithinAbs(std::sqrt(v), 2.0 * spec.tolerance));

  // a finite Blaschke product has a compact level set: J does not matter
  const auto B = blaschke_geometric(4);
  QuadratureSpec s12 = spec, s14 = spec;
  s12.boundary_depth = 12;
  s14.boundary_depth = 14;
  for (double p : {1.0, 2.0}) {
    const double a = criterion_lp(B, 0.05, p, s12).value;
    const double b = criterion_lp(B, 0.05, p, s14).value;
    CHECK(std::isfinite(a));
    CHECK_THAT(a, WithinRel(b, 1e-5));
  }
  CHECK_THROWS_AS(criterion_lp(B, 0.05, 0.0, spec), DomainError);
}

TEST_CASE("hardy norm examples") {
  QuadratureSpec spec;
  for (int n : {1, 5}) {
    for (double p : {0.5, 1.0, 2.0}) {
      const HardyResult h = hardy_norm(FunctionModel::monomial(n), p, spec);
      CHECK_THAT(h.value, WithinAbs(1.0, 1e-6));
      CHECK(h.flags == 0);
    }
  }
  CHECK_THAT(hardy_norm(FunctionModel::constant({0.6, -0.8}), 1.5, spec).value,
             WithinAbs(1.0, 1e-12));

  const auto g = FunctionModel::power_of_one_minus_z(1.0);
  const HardyResult h2 = hardy_norm(g, 2.0, spec);
  CHECK((h2.flags & kFlagNoPlateau));
  CHECK(h2.radii.size() == std::size_t(spec.boundary_depth));
  const HardyResult h12 = hardy_norm(g, 0.5, spec);
  CHECK_FALSE((h12.flags & kFlagNoPlateau));
  // int |1 - e^{it}|^{-1/2} dt / 2 pi = Gamma(1/2) / Gamma(3/4)^2
  const double mean = std::tgamma(0.5) / std::pow(std::tgamma(0.75), 2);
  CHECK_THAT(h12.value, WithinAbs(mean * mean, 1e-3));
}

TEST_CASE("kernel L special values and integer-m oracle") {
  const KernelParams kp(3.0);
  CHECK(kernel_L({0.4, 0.2}, 0.0, kp) == Complex{0.0, 0.0});
  CHECK(kernel_L(0.0, {0.4, 0.2}, kp) == Complex{0.0, 0.0});

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Complex x = std::polar(0.999 * std::sqrt(u(rng)), kTwoPi * u(rng));
    for (int m : {3, 5, 7}) {
      const Complex want = integer_kernel_oracle(x, m);
      CHECK(std::abs(kernel_L_x(x, m) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("kernel L for non-integer exponents") {
  for (double m : {2.5, 3.7}) {
    for (Complex x : {Complex{0.3, 0.1}, Complex{-0.6, 0.3}, Complex{0.9, 0.05},
                      Complex{0.99, 0.0}, Complex{0.2, -0.97}}) {
      const Complex want = kernel_by_gk(x, m);
      CHECK(std::abs(kernel_L_x(x, m) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("kernel L obeys the growth bound with a stable constant") {
  const KernelParams kp(3.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto sample = [&] { return std::polar(0.999 * std::sqrt(u(rng)), kTwoPi * u(rng)); };
  auto batch_max = [&] {
    double c = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Complex z = sample(), w = sample();
      const double bound = std::pow(std::abs(1.0 - z * std::conj(w)), -(1.0 + kp.beta()));
      c = std::max(c, std::abs(kernel_L(z, w, kp)) / bound);
    }
    return c;
  };
  const double fitted = batch_max();
  const double again = batch_max();
  // |1 - z conj w|^4 reaches 16 near z conj w = -1, so C sits near 31
  CHECK(fitted < 64.0);
  CHECK(again <= 1.1 * fitted);
}

TEST_CASE("radial derivative of the kernel") {
  const KernelParams kp(3.0), kq(1.5);
  const Complex pts[] = {{0.3, 0.4}, {-0.7, 0.1}, {0.95, 0.0}, {0.1, -0.99}};
  for (Complex z : pts) {
    for (Complex w : pts) {
      for (const KernelParams* k : {&kp, &kq}) {
        const Complex closed = radial_kernel_L(z, w, *k);
        CHECK(std::abs(radial_kernel_L_quadrature(z, w, *k) - closed) <=
              1e-10 * std::max(1.0, std::abs(closed)));
        // z d/dz L by central differences
        const double h = 1e-5;
        const Complex fd = z * (kernel_L(z + h, w, *k) - kernel_L(z - h, w, *k)) / (2.0 * h);
        CHECK(std::abs(fd - closed) <= 1e-5 * std::max(1.0, std::abs(closed)));
      }
    }
  }
}

TEST_CASE("kernel parameters") {
  for (double beta : {0.5, 1.0, 3.0, 5.0}) {
    const KernelParams kp(beta);
    CHECK(kp.c_beta() == beta + 1.0);
    CHECK_THAT(kp.measured_mass(), WithinAbs(1.0, 1e-8));
  }
  CHECK_THROWS_AS(KernelParams(-1.0), DomainError);
  CHECK_THROWS_AS(KernelParams::for_exponent(0.5, 0.9), DomainError);
  // at p = 1/2 the bound 2/p - 1 is 3 itself
  CHECK_THROWS_AS(KernelParams::for_exponent(0.5, 3.0), DomainError);
  CHECK_NOTHROW(KernelParams::for_exponent(0.5, 3.5));
  CHECK_THROWS_AS(KernelParams::for_exponent(2.0, 0.0), DomainError);
  CHECK(KernelParams::default_beta(1.0) == 3.0);
  CHECK(KernelParams::default_beta(0.5) == 4.0);
  CHECK(KernelParams::default_beta(0.25) == 8.0);
}

TEST_CASE("reproducing formula") {
  QuadratureSpec spec;
  const KernelParams k3(3.0);
  const auto c = FunctionModel::constant({1.5, -2.0});
  CHECK(reproduce(c, {0.4, 0.1}, k3, spec) == Complex{1.5, -2.0});

  const auto z2 = FunctionModel::monomial(2);
  const Complex p{0.3, 0.2};
  CHECK(std::abs(reproduce(z2, p, k3, spec) - z2.value(p)) <= 1e-4);

  const auto B4 = blaschke_geometric(4);
  CHECK(std::abs(reproduce(B4, {0.0, 0.5}, k3, spec) - B4.value({0.0, 0.5})) <= 1e-3);
  CHECK_THROWS_AS(reproduce(z2, 1.0, k3, spec), DomainError);
}

TEST_CASE("reproducing formula error is covered by its estimate") {
  QuadratureSpec spec;
  const std::vector<FunctionModel> polys = {
      FunctionModel::monomial(1), FunctionModel::monomial(2),
      FunctionModel::power_series({0.0, 0.5, 0.0, 1.0}),
      FunctionModel::power_series({{1.0, 1.0}, {0.0, -2.0}, 0.5})};
  const std::vector<Complex> pts = {{0.1, 0.2}, {-0.5, 0.3}, {0.0, -0.7}, {0.65, 0.1}};
  for (double beta : {1.0, 3.0, 5.0}) {
    const KernelParams kp(beta);
    for (const auto& f : polys) {
      const ReproduceResult r = reproduce(f, pts, kp, spec);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double err = std::abs(r.values[i] - f.value(pts[i]));
        // a floor for the cases where the integral is essentially exact
        CHECK(err <= 10.0 * r.error_estimates[i] + 1e-12);
      }
    }
  }
}

TEST_CASE("split with an empty level set") {
  QuadratureSpec spec;
  const auto z = FunctionModel::monomial(1);
  const KernelParams kp(3.0);
  const std::vector<Complex> pts = {{0.2, 0.1}, {-0.5, 0.5}};
  // the radial seminorm of z is 2 / (3 sqrt 3) < 0.5
  const SplitResult s = split(z, 0.5, kp, pts, spec);
  CHECK(s.omega_nodes == 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(s.f2_values[i] == Complex{0.0, 0.0});
    CHECK(s.f1_values[i] == pts[i]);
  }
  CHECK_THAT(s.f1_bloch_estimate, WithinAbs(0.5 * kBlochZ2, 1e-3));
}

TEST_CASE("split is consistent and linear") {
  QuadratureSpec spec;
  const KernelParams kp(3.0);
  const auto B = blaschke_geometric(4);
  const std::vector<Complex> pts = {{0.1, 0.1}, {0.6, -0.2}, {-0.3, 0.8}};
  SplitOptions opt;
  opt.estimate_f1_norm = false;
  const SplitResult s = split(B, 0.1, kp, pts, spec, opt);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // f1 := f - f2, so the sum gives f back up to one rounding
    const Complex f = B.value(pts[i]);
    CHECK(std::abs(s.f1_values[i] + s.f2_values[i] - f) <= 4e-16 * std::max(1.0, std::abs(f)));
  }
  // Omega_eps(c f) = Omega_{eps/|c|}(f) and the kernel is linear in Rf
  const Complex c{2.0, 0.0};
  const SplitResult sc = split(FunctionModel::scaled(c, B), 0.2, kp, pts, spec, opt);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(sc.f2_values[i] - c * s.f2_values[i]) <= 1e-9);
  }
  CHECK_THROWS_AS(split(B, 0.0, kp, pts, spec, opt), DomainError);
}

TEST_CASE("xiao functional") {
  QuadratureSpec spec;
  CHECK(xiao_functional(FunctionModel::constant(1.0), 0.1, spec).value == 0.0);

  const auto z = FunctionModel::monomial(1);
  const std::vector<Complex> probes = {0.0, {0.5, 0.0}, {0.0, 0.9}, {-0.99, 0.0}};
  QuadratureSpec s12 = spec;
  s12.boundary_depth = 12;
  const XiaoResult a = xiao_functional(z, 0.5, spec, probes);
  const XiaoResult b = xiao_functional(z, 0.5, s12, probes);
  CHECK(std::isfinite(a.value));
  CHECK_THAT(a.value, WithinAbs(b.value, 2.0 * spec.tolerance));
  // probe 0 sees the area of |z| <= 1/sqrt 2 in normalised measure
  CHECK_THAT(a.integrals[0], WithinAbs(0.5, 2.0 * spec.tolerance));

  const XiaoResult smaller = xiao_functional(z, 0.6, spec, probes);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CHECK(smaller.integrals[i] <= a.integrals[i] + 2.0 * spec.tolerance);
  }
  const Complex outside[] = {{1.0, 0.0}};
  CHECK_THROWS_AS(xiao_functional(z, 0.5, spec, outside), DomainError);
}

TEST_CASE("counterexample profile") {
  QuadratureSpec spec;
  const double d12 = separation_constant(blaschke_geometric(12));
  CHECK(d12 > 0.0);
  CHECK_THROWS_AS(counterexample_profile(12, d12 / 3.0, 8, spec), DomainError);
  CHECK_THROWS_AS(counterexample_profile(12, d12 / 8.0, 11, spec), DomainError);

  const CounterexampleResult cx = counterexample_profile(12, d12 / 8.0, 8, spec);
  REQUIRE(cx.rows.size() == 7);
  CHECK(cx.rows.front().m == 2);
  for (std::size_t i = 1; i < cx.rows.size(); ++i) {
    CHECK(cx.rows[i].integral > cx.rows[i - 1].integral);
  }
  REQUIRE(cx.rho_hat.has_value());
  REQUIRE(cx.mobius.size() == 8);
  for (const MobiusCheck& m : cx.mobius) {
    CHECK_THAT(m.area, WithinAbs(m.reference, 2.0 * spec.tolerance));
    CHECK_THAT(m.reference, WithinAbs(m.exact, 2.0 * spec.tolerance));
  }
  CHECK_THROWS_AS(separation_constant(FunctionModel::monomial(1)), DomainError);
}

TEST_CASE("lemma 1") {
  QuadratureSpec spec;
  for (double t : {0.5, 1.0, 2.0}) {
    const Complex zero[] = {0.0};
    CHECK_THAT(verify_lemma1(t, 1.0, zero, spec).integrals[0], WithinAbs(1.0 / (t + 1.0), 1e-6));
  }
  std::vector<Complex> zs;
  for (int j = 3; j <= 10; ++j) zs.emplace_back(1.0 - std::ldexp(1.0, -j), 0.0);
  const Lemma1Result r = verify_lemma1(1.0, 1.0, zs, spec);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double x = std::norm(zs[i]);
    // the peak at z needs a few dyadic levels past 1 - |z| before the tail
    // extrapolation is sharp; with J = 14 the last two points have only four
    const double rel = i + 3 <= 8 ? 1e-6 : 2e-4;
    CHECK_THAT(r.integrals[i], WithinRel(lemma1_t1s1(x), rel));
  }
  // the exact slope over j = 3..10 is 1.0609: the fit is not yet asymptotic
  CHECK_THAT(r.slope, WithinAbs(1.0609, 5e-4));

  // t = 0, s = 1/2: bounded ratio that does not move with J
  QuadratureSpec s12 = spec;
  s12.boundary_depth = 12;
  std::vector<Complex> few = {{0.5, 0.0}, {0.0, 0.9}, {-0.97, 0.0}};
  const double a = verify_lemma1(0.0, 0.5, few, spec).max_ratio;
  const double b = verify_lemma1(0.0, 0.5, few, s12).max_ratio;
  CHECK(std::isfinite(a));
  CHECK_THAT(a, WithinRel(b, 1e-4));
  CHECK_THROWS_AS(verify_lemma1(-1.0, 1.0, few, spec), DomainError);
  CHECK_THROWS_AS(verify_lemma1(1.0, 0.0, few, spec), DomainError);
}

TEST_CASE("lemma 2") {
  QuadratureSpec spec;
  for (double s : {0.5, 1.0, 1.5}) {
    const std::pair<Complex, Complex> origin[] = {{0.0, 0.0}};
    CHECK_THAT(verify_lemma2(s, 2.0, 2.0, origin, spec).integrals[0],
               WithinAbs(1.0 / (s + 1.0), 1e-6));
  }
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int j = 3; j <= 8; j += 5) pairs.push_back({1.0 - std::ldexp(1.0, -j), 0.5});
  const Lemma2Result r = verify_lemma2(2.0, 3.0, 3.0, pairs, spec);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK_THAT(r.integrals[i],
               WithinRel(lemma2_series(pairs[i].first.real(), pairs[i].second.real()), 1e-5));
  }
  const std::pair<Complex, Complex> ab[] = {{{0.6, 0.3}, {-0.2, 0.7}}, {{-0.2, 0.7}, {0.6, 0.3}}};
  const Lemma2Result sym = verify_lemma2(2.0, 3.0, 3.0, ab, spec);
  CHECK_THAT(sym.integrals[0], WithinAbs(sym.integrals[1], 2.0 * spec.tolerance));

  CHECK_THROWS_AS(verify_lemma2(-1.0, 1.0, 1.0, ab, spec), DomainError);
  CHECK_THROWS_AS(verify_lemma2(2.0, 1.0, 1.0, ab, spec), DomainError);  // r + t - s = 0
  CHECK_THROWS_AS(verify_lemma2(0.0, 2.5, 1.0, ab, spec), DomainError);  // r >= s + 2
}

TEST_CASE("lemma 3") {
  QuadratureSpec spec;
  const PointMass unit[] = {{0.0, 1.0}};
  const Lemma3Result u = verify_lemma3(unit, 2.5, 0.5, spec, {4.0});
  CHECK_THAT(u.lhs, WithinAbs(1.0, 1e-12));
  CHECK_THAT(u.rhs, WithinAbs(1.0, 1e-12));
  CHECK_THAT(u.ratio, WithinAbs(1.0, 1e-9));

  // one mass at 0.9: rhs is the fraction of vertices whose tent holds 0.9
  const PointMass near[] = {{0.9, 1.0}};
  const Lemma3Result r = verify_lemma3(near, 2.5, 0.5, spec, {4.0});
  const double arc = TentRegion(BoundaryPoint(0.0), 4.0).half_angle_at(0.9);
  CHECK(arc < 1.0);
  CHECK_THAT(r.rhs, WithinAbs(arc / std::numbers::pi, 2.0 / spec.circle_points));
  CHECK(std::isfinite(r.ratio));

  const PointMass two[] = {{{0.3, 0.5}, 0.7}, {{-0.8, 0.1}, 1.3}};
  const PointMass doubled[] = {{{0.3, 0.5}, 1.4}, {{-0.8, 0.1}, 2.6}};
  const Lemma3Result a = verify_lemma3(two, 2.5, 0.5, spec);
  const Lemma3Result b = verify_lemma3(doubled, 2.5, 0.5, spec);
  CHECK_THAT(b.lhs, WithinRel(std::sqrt(2.0) * a.lhs, 1e-13));
  CHECK_THAT(b.rhs, WithinRel(std::sqrt(2.0) * a.rhs, 1e-13));
  CHECK_THROWS_AS(verify_lemma3(two, 1.5, 0.5, spec), DomainError);  // b <= 1/s
}

TEST_CASE("necessity inequality on a finite Blaschke product") {
  QuadratureSpec spec;
  const auto g = blaschke_geometric(4);
  const double eps = 0.5 * bloch_seminorm(g, spec, DensityFlavor::Radial).value;
  for (int k = 0; k < 6; ++k) {
    const BoundaryPoint zeta(kTwoPi * k / 6.0);
    const double v = tent_levelset_volume(g, eps, zeta, spec, {}, DensityFlavor::Radial).value;
    const double a = area_function(g, zeta, spec, {}, DensityFlavor::Radial).value;
    CHECK(v <= 4.0 / (eps * eps) * a * a + 4.0 * spec.tolerance);
  }
}
