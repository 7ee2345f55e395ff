#pragma once

// Holomorphic test functions on the unit disk with closed-form values and
// derivatives. Every model is immutable; copies share the underlying node.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bloch/types.hpp"

namespace bloch {

class FunctionModel;

/// sum_k c_k z^k, coefficients listed from degree 0.
struct PowerSeries {
  std::vector<Complex> coefficients;
};

/// sum_k c_k z^{n_k} over strictly increasing positive exponents n_k.
struct LacunarySeries {
  std::vector<std::uint64_t> exponents;
  std::vector<Complex> coefficients;

  /// n_{k+1} / n_k for consecutive exponents.
  std::vector<double> gap_ratios() const;
};

/// prod_k (|a_k| / a_k) (a_k - z) / (1 - conj(a_k) z), all 0 < |a_k| < 1.
struct BlaschkeProduct {
  std::vector<Complex> zeros;
};

/// (1 - z)^(-gamma), principal branch.
struct PowerOfOneMinusZ {
  double gamma = 1.0;
};

struct Scaled;
struct Sum;

class FunctionModel {
 public:
  using Node = std::variant<PowerSeries, LacunarySeries, BlaschkeProduct,
                            PowerOfOneMinusZ, Scaled, Sum>;

  static FunctionModel power_series(std::vector<Complex> coefficients);
  static FunctionModel lacunary(std::vector<std::uint64_t> exponents,
                                std::vector<Complex> coefficients);
  static FunctionModel blaschke(std::vector<Complex> zeros);
  static FunctionModel power_of_one_minus_z(double gamma);
  static FunctionModel scaled(Complex c, FunctionModel inner);
  static FunctionModel sum(std::vector<FunctionModel> terms);
  static FunctionModel constant(Complex c) { return power_series({c}); }
  static FunctionModel monomial(unsigned n, Complex c = 1.0);

  /// f(z) for |z| < 1. No domain check on this hot path.
  Complex value(Complex z) const;
  /// f'(z) in closed form.
  Complex derivative(Complex z) const;
  /// Rf(z) = z f'(z), the radial derivative for n = 1.
  Complex radial_derivative(Complex z) const { return z * derivative(z); }

  /// Boundary value; only defined for the polynomial-type variants.
  Complex boundary_value(BoundaryPoint zeta) const;

  const Node& node() const;
  template <class T>
  const T* as() const;

  /// Short human-readable descriptor, e.g. "blaschke[3 zeros]".
  std::string describe() const;

 private:
  explicit FunctionModel(Node node);
  std::shared_ptr<const Node> node_;
};

struct Scaled {
  Complex c;
  FunctionModel inner;
};

struct Sum {
  std::vector<FunctionModel> terms;
};

inline const FunctionModel::Node& FunctionModel::node() const { return *node_; }

template <class T>
const T* FunctionModel::as() const {
  return std::get_if<T>(node_.get());
}

// Free-function surface over checked disk points.
Complex eval(const FunctionModel& f, DiskPoint z);
Complex deriv(const FunctionModel& f, DiskPoint z);
Complex radial_deriv(const FunctionModel& f, DiskPoint z);

/// Blaschke product with zeros z_k = 1 - 2^{-k}, k = 1..K.
FunctionModel blaschke_geometric(int K);

/// Pseudo-hyperbolic distance threshold below which the Blaschke derivative
/// switches from the logarithmic-derivative form to the product rule.
inline constexpr double kBlaschkeProductRuleRadius = 0.01;

namespace detail {
Complex blaschke_value(std::span<const Complex> zeros, Complex z);
Complex blaschke_derivative_logarithmic(std::span<const Complex> zeros, Complex z);
Complex blaschke_derivative_product_rule(std::span<const Complex> zeros, Complex z);
}  // namespace detail

}  // namespace bloch
