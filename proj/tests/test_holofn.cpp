#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bloch/hypgeo.hpp"
#include "bloch/holofn.hpp"

using namespace bloch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Complex central_difference(const FunctionModel& f, Complex z, double h = 1e-6) {
  return (f.value(z + h) - f.value(z - h)) / (2.0 * h);
}

std::vector<Complex> random_points(int n, double r_max, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, kTwoPi);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(r_max * std::sqrt(rad(rng)), ang(rng)));
  return out;
}

std::vector<FunctionModel> corpus() {
  return {
      FunctionModel::power_series({0.3, {1.0, -0.5}, 0.0, 2.0}),
      FunctionModel::lacunary({1, 2, 4, 8, 16}, {1.0, 1.0, 1.0, 1.0, 1.0}),
      blaschke_geometric(5),
      FunctionModel::blaschke({{0.3, 0.4}, {-0.6, 0.1}}),
      FunctionModel::power_of_one_minus_z(1.5),
      FunctionModel::power_of_one_minus_z(0.5),
      FunctionModel::scaled({0.0, 2.0}, blaschke_geometric(3)),
      FunctionModel::sum({FunctionModel::monomial(3), FunctionModel::power_of_one_minus_z(1.0)}),
  };
}

}  // namespace

TEST_CASE("eval on the spec examples") {
  CHECK(eval(FunctionModel::power_series({0.0, 1.0}), DiskPoint(0.5, 0.0)) == Complex(0.5));
  CHECK_THAT(eval(FunctionModel::blaschke({0.5}), DiskPoint(0.0, 0.0)).real(),
             WithinAbs(0.5, 1e-15));
  CHECK_THAT(eval(FunctionModel::power_of_one_minus_z(1.0), DiskPoint(0.9, 0.0)).real(),
             WithinRel(10.0, 1e-13));
}

TEST_CASE("deriv on the spec examples") {
  CHECK_THAT(deriv(FunctionModel::power_series({0.0, 0.0, 1.0}), DiskPoint(0.5, 0.0)).real(),
             WithinAbs(1.0, 1e-15));
  CHECK(deriv(FunctionModel::lacunary({1, 2, 4}, {1.0, 1.0, 1.0}), DiskPoint(0.0, 0.0)) ==
        Complex(1.0));

  // (0.5 - z)/(1 - 0.5 z) has derivative -0.75/(1 - 0.5 z)^2, i.e. -4/3 at z = 1/2.
  const auto b = FunctionModel::blaschke({0.5});
  const Complex d = deriv(b, DiskPoint(0.5, 0.0));
  CHECK_THAT(d.real(), WithinAbs(-4.0 / 3.0, 1e-14));
  CHECK_THAT(std::abs(d - central_difference(b, 0.5)), WithinAbs(0.0, 1e-8));
}

TEST_CASE("radial_deriv is z times deriv") {
  const auto z1 = FunctionModel::power_series({0.0, 1.0});
  const auto z2 = FunctionModel::power_series({0.0, 0.0, 1.0});
  CHECK(radial_deriv(z1, DiskPoint(0.0, 0.0)) == Complex(0.0));
  CHECK(radial_deriv(z1, DiskPoint(0.5, 0.0)) == Complex(0.5));
  CHECK_THAT(std::abs(radial_deriv(z2, DiskPoint(0.0, 0.5)) - Complex(-0.5)),
             WithinAbs(0.0, 1e-15));
  for (const auto& f : corpus()) {
    for (Complex z : random_points(20, 0.95, 7)) {
      CHECK(f.radial_derivative(z) == z * f.derivative(z));
    }
  }
}

TEST_CASE("blaschke_geometric zeros") {
  const auto one = blaschke_geometric(1).as<BlaschkeProduct>();
  REQUIRE(one);
  CHECK(one->zeros == std::vector<Complex>{0.5});
  const auto three = blaschke_geometric(3).as<BlaschkeProduct>();
  CHECK(three->zeros == std::vector<Complex>{0.5, 0.75, 0.875});
  const auto many = blaschke_geometric(20).as<BlaschkeProduct>();
  for (std::size_t k = 1; k < many->zeros.size(); ++k) {
    CHECK(many->zeros[k].real() > many->zeros[k - 1].real());
    CHECK(many->zeros[k].real() < 1.0);
  }
  CHECK_THROWS_AS(blaschke_geometric(0), DomainError);
}

TEST_CASE("derivatives agree with central differences") {
  for (const auto& f : corpus()) {
    const auto* b = f.as<BlaschkeProduct>();
    int checked = 0;
    for (Complex z : random_points(100, 0.9, 11)) {
      if (b) {
        bool near = false;
        for (Complex a : b->zeros) near = near || pseudo_distance(z, a) < 0.01;
        if (near) continue;
      }
      const Complex exact = f.derivative(z);
      const Complex fd = central_difference(f, z);
      CHECK(std::abs(exact - fd) <= 1e-5 * std::max(1.0, std::abs(exact)));
      ++checked;
    }
    CHECK(checked > 90);
  }
}

TEST_CASE("Blaschke derivative branches agree near a zero") {
  const std::vector<Complex> zeros{0.5, 0.75, {0.2, -0.3}};
  for (double d : {1e-3, 5e-3, 9e-3, 2e-2}) {
    const Complex z = mobius_from_origin(0.75, std::polar(d, 0.7));
    const Complex a = detail::blaschke_derivative_logarithmic(zeros, z);
    const Complex b = detail::blaschke_derivative_product_rule(zeros, z);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
  // Exactly at a zero the product rule is the only finite form.
  const auto f = FunctionModel::blaschke(zeros);
  CHECK(std::isfinite(std::abs(f.derivative(0.75))));
  CHECK(std::abs(f.derivative(0.75) - central_difference(f, 0.75)) < 1e-6);
}

TEST_CASE("Blaschke products are bounded by one inside the disk") {
  const auto f = blaschke_geometric(12);
  for (Complex z : random_points(500, 0.999, 3)) CHECK(std::abs(f.value(z)) < 1.0);
}

TEST_CASE("Scaled and Sum are linear") {
  const auto g = blaschke_geometric(4);
  const auto h = FunctionModel::power_of_one_minus_z(0.7);
  const Complex c{1.5, -0.25};
  const auto s = FunctionModel::scaled(c, g);
  const auto t = FunctionModel::sum({g, h});
  for (Complex z : random_points(50, 0.95, 5)) {
    CHECK(std::abs(s.value(z) - c * g.value(z)) <= 1e-14 * std::abs(s.value(z)) + 1e-15);
    CHECK(std::abs(t.derivative(z) - (g.derivative(z) + h.derivative(z))) <=
          1e-13 * std::abs(t.derivative(z)));
  }
}

TEST_CASE("constructors reject invalid input") {
  CHECK_THROWS_AS(DiskPoint(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(FunctionModel::blaschke({0.0}), DomainError);
  CHECK_THROWS_AS(FunctionModel::blaschke({1.0}), DomainError);
  CHECK_THROWS_AS(FunctionModel::power_of_one_minus_z(0.0), DomainError);
  CHECK_THROWS_AS(FunctionModel::lacunary({2, 1}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(FunctionModel::lacunary({1, 2}, {1.0}), DomainError);
  CHECK_THROWS_AS(blaschke_geometric(2).boundary_value(BoundaryPoint(0.0)), DomainError);
  CHECK(FunctionModel::monomial(3).boundary_value(BoundaryPoint(0.0)) == Complex(1.0));
}

TEST_CASE("lacunary gap ratios") {
  const auto f = FunctionModel::lacunary({1, 2, 4, 12}, {1.0, 1.0, 1.0, 1.0});
  CHECK(f.as<LacunarySeries>()->gap_ratios() == std::vector<double>{2.0, 2.0, 3.0});
}
