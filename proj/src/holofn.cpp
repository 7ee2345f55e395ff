#include "bloch/holofn.hpp"

#include <algorithm>
#include <sstream>

namespace bloch {

namespace {

Complex int_pow(Complex z, std::uint64_t n) {
  Complex result{1.0, 0.0};
  Complex base = z;
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

Complex horner(std::span<const Complex> c, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(std::span<const Complex> c, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = c.size(); k-- > 1;) {
    acc = acc * z + static_cast<double>(k) * c[k];
  }
  return acc;
}

Complex unimodular(Complex a) { return std::abs(a) / a; }

double min_pseudo_distance(std::span<const Complex> zeros, Complex z) {
  double best = 1.0;
  for (Complex a : zeros) {
    best = std::min(best, std::abs(a - z) / std::abs(1.0 - std::conj(a) * z));
  }
  return best;
}

struct ValueVisitor {
  Complex z;
  Complex operator()(const PowerSeries& p) const { return horner(p.coefficients, z); }
  Complex operator()(const LacunarySeries& s) const {
    Complex acc{0.0, 0.0};
    Complex zn{1.0, 0.0};
    std::uint64_t prev = 0;
    for (std::size_t k = 0; k < s.exponents.size(); ++k) {
      zn *= int_pow(z, s.exponents[k] - prev);
      prev = s.exponents[k];
      acc += s.coefficients[k] * zn;
    }
    return acc;
  }
  Complex operator()(const BlaschkeProduct& b) const {
    return detail::blaschke_value(b.zeros, z);
  }
  Complex operator()(const PowerOfOneMinusZ& p) const {
    return std::exp(-p.gamma * std::log(1.0 - z));
  }
  Complex operator()(const Scaled& s) const { return s.c * s.inner.value(z); }
  Complex operator()(const Sum& s) const {
    Complex acc{0.0, 0.0};
    for (const auto& t : s.terms) acc += t.value(z);
    return acc;
  }
};

struct DerivativeVisitor {
  Complex z;
  Complex operator()(const PowerSeries& p) const {
    return horner_derivative(p.coefficients, z);
  }
  Complex operator()(const LacunarySeries& s) const {
    // n z^{n-1}; exponents are >= 1 so the power is well defined at 0.
    Complex acc{0.0, 0.0};
    Complex zn{1.0, 0.0};
    std::uint64_t prev = 1;
    for (std::size_t k = 0; k < s.exponents.size(); ++k) {
      zn *= int_pow(z, s.exponents[k] - prev);
      prev = s.exponents[k];
      acc += static_cast<double>(s.exponents[k]) * s.coefficients[k] * zn;
    }
    return acc;
  }
  Complex operator()(const BlaschkeProduct& b) const {
    if (min_pseudo_distance(b.zeros, z) < kBlaschkeProductRuleRadius) {
      return detail::blaschke_derivative_product_rule(b.zeros, z);
    }
    return detail::blaschke_derivative_logarithmic(b.zeros, z);
  }
  Complex operator()(const PowerOfOneMinusZ& p) const {
    return p.gamma * std::exp(-(p.gamma + 1.0) * std::log(1.0 - z));
  }
  Complex operator()(const Scaled& s) const { return s.c * s.inner.derivative(z); }
  Complex operator()(const Sum& s) const {
    Complex acc{0.0, 0.0};
    for (const auto& t : s.terms) acc += t.derivative(z);
    return acc;
  }
};

}  // namespace

namespace detail {

Complex blaschke_value(std::span<const Complex> zeros, Complex z) {
  Complex acc{1.0, 0.0};
  for (Complex a : zeros) acc *= unimodular(a) * (a - z) / (1.0 - std::conj(a) * z);
  return acc;
}

Complex blaschke_derivative_logarithmic(std::span<const Complex> zeros, Complex z) {
  Complex log_deriv{0.0, 0.0};
  for (Complex a : zeros) {
    log_deriv += (std::norm(a) - 1.0) / ((a - z) * (1.0 - std::conj(a) * z));
  }
  return blaschke_value(zeros, z) * log_deriv;
}

Complex blaschke_derivative_product_rule(std::span<const Complex> zeros, Complex z) {
  const std::size_t n = zeros.size();
  if (n == 0) return {0.0, 0.0};
  std::vector<Complex> factor(n), factor_deriv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = zeros[k];
    const Complex u = unimodular(a);
    const Complex den = 1.0 - std::conj(a) * z;
    factor[k] = u * (a - z) / den;
    factor_deriv[k] = u * (std::norm(a) - 1.0) / (den * den);
  }
  // prefix[k] = prod_{j<k} factor[j]; suffix walks from the right.
  std::vector<Complex> prefix(n + 1, Complex{1.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * factor[k];
  Complex suffix{1.0, 0.0};
  Complex acc{0.0, 0.0};
  for (std::size_t k = n; k-- > 0;) {
    acc += prefix[k] * factor_deriv[k] * suffix;
    suffix *= factor[k];
  }
  return acc;
}

}  // namespace detail

std::vector<double> LacunarySeries::gap_ratios() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < exponents.size(); ++k) {
    out.push_back(static_cast<double>(exponents[k]) / static_cast<double>(exponents[k - 1]));
  }
  return out;
}

FunctionModel::FunctionModel(Node node)
    : node_(std::make_shared<const Node>(std::move(node))) {}

FunctionModel FunctionModel::power_series(std::vector<Complex> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return FunctionModel(PowerSeries{std::move(coefficients)});
}

FunctionModel FunctionModel::monomial(unsigned n, Complex c) {
  std::vector<Complex> coeffs(n + 1, Complex{0.0, 0.0});
  coeffs[n] = c;
  return power_series(std::move(coeffs));
}

FunctionModel FunctionModel::lacunary(std::vector<std::uint64_t> exponents,
                                      std::vector<Complex> coefficients) {
  if (exponents.size() != coefficients.size()) {
    throw DomainError("lacunary series: exponents and coefficients differ in length");
  }
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] == 0 || (k > 0 && exponents[k] <= exponents[k - 1])) {
      throw DomainError("lacunary series: exponents must be positive and strictly increasing");
    }
  }
  return FunctionModel(LacunarySeries{std::move(exponents), std::move(coefficients)});
}

FunctionModel FunctionModel::blaschke(std::vector<Complex> zeros) {
  for (Complex a : zeros) {
    const double r = std::abs(a);
    if (!(r > 0.0 && r < 1.0)) {
      throw DomainError("Blaschke zeros must satisfy 0 < |a| < 1");
    }
  }
  return FunctionModel(BlaschkeProduct{std::move(zeros)});
}

FunctionModel FunctionModel::power_of_one_minus_z(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("(1-z)^(-gamma) requires gamma > 0");
  return FunctionModel(PowerOfOneMinusZ{gamma});
}

FunctionModel FunctionModel::scaled(Complex c, FunctionModel inner) {
  return FunctionModel(Scaled{c, std::move(inner)});
}

FunctionModel FunctionModel::sum(std::vector<FunctionModel> terms) {
  return FunctionModel(Sum{std::move(terms)});
}

Complex FunctionModel::value(Complex z) const { return std::visit(ValueVisitor{z}, *node_); }

Complex FunctionModel::derivative(Complex z) const {
  return std::visit(DerivativeVisitor{z}, *node_);
}

Complex FunctionModel::boundary_value(BoundaryPoint zeta) const {
  struct Check {
    bool operator()(const PowerSeries&) const { return true; }
    bool operator()(const LacunarySeries&) const { return true; }
    bool operator()(const BlaschkeProduct&) const { return false; }
    bool operator()(const PowerOfOneMinusZ&) const { return false; }
    bool operator()(const Scaled& s) const { return std::visit(*this, s.inner.node()); }
    bool operator()(const Sum& s) const {
      return std::all_of(s.terms.begin(), s.terms.end(),
                         [this](const FunctionModel& t) { return std::visit(*this, t.node()); });
    }
  };
  if (!std::visit(Check{}, *node_)) {
    throw DomainError("boundary evaluation is not defined for Blaschke or (1-z)^(-gamma) models");
  }
  return value(zeta.value());
}

std::string FunctionModel::describe() const {
  struct Describe {
    std::string operator()(const PowerSeries& p) const {
      return "poly[deg " + std::to_string(p.coefficients.size() - 1) + "]";
    }
    std::string operator()(const LacunarySeries& s) const {
      return "lacunary[" + std::to_string(s.exponents.size()) + " terms]";
    }
    std::string operator()(const BlaschkeProduct& b) const {
      return "blaschke[" + std::to_string(b.zeros.size()) + " zeros]";
    }
    std::string operator()(const PowerOfOneMinusZ& p) const {
      std::ostringstream os;
      os << "(1-z)^-" << p.gamma;
      return os.str();
    }
    std::string operator()(const Scaled& s) const {
      std::ostringstream os;
      os << "(" << s.c.real() << (s.c.imag() < 0 ? "" : "+") << s.c.imag() << "i)*"
         << s.inner.describe();
      return os.str();
    }
    std::string operator()(const Sum& s) const {
      std::string out = "sum(";
      for (std::size_t k = 0; k < s.terms.size(); ++k) {
        if (k) out += "+";
        out += s.terms[k].describe();
      }
      return out + ")";
    }
  };
  return std::visit(Describe{}, *node_);
}

Complex eval(const FunctionModel& f, DiskPoint z) { return f.value(z.value()); }
Complex deriv(const FunctionModel& f, DiskPoint z) { return f.derivative(z.value()); }
Complex radial_deriv(const FunctionModel& f, DiskPoint z) {
  return f.radial_derivative(z.value());
}

FunctionModel blaschke_geometric(int K) {
  if (K < 1) throw DomainError("blaschke_geometric requires K >= 1");
  std::vector<Complex> zeros;
  zeros.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) zeros.emplace_back(1.0 - std::ldexp(1.0, -k), 0.0);
  return FunctionModel::blaschke(std::move(zeros));
}

}  // namespace bloch
