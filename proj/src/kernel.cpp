#include <cmath>
#include <map>
#include <mutex>

#include "bloch/operators.hpp"
#include "bloch/rules.hpp"

namespace bloch {

namespace {

constexpr int kPanelOrder = 12;
constexpr int kMaxSeriesTerms = 400;

bool is_small_integer(double m) { return m == std::floor(m) && m >= 1.0 && m <= 64.0; }

// (1 - u)^{-m}, by repeated multiplication when m is a small integer.
Complex inverse_power(Complex one_minus_u, double m) {
  if (is_small_integer(m)) {
    const Complex inv = 1.0 / one_minus_u;
    Complex acc = inv;
    for (int k = 1; k < static_cast<int>(m); ++k) acc *= inv;
    return acc;
  }
  return std::exp(-m * std::log(one_minus_u));
}

// sum_{n>=1} (m)_n / (n! n) y^n, |y| <= 1/2.
Complex log_series(Complex y, double m) {
  Complex sum{0.0, 0.0};
  Complex power = y;
  double c = m;  // (m)_n / n!
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    const Complex term = c * power / static_cast<double>(n);
    sum += term;
    if (n > m && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= y;
    c *= (m + n) / (n + 1.0);
  }
  return sum;
}

// Integrates g over [lo, 1] on panels halving toward t = 1 until the
// remaining piece is no longer than the distance |1 - x| to the singularity.
template <class G>
Complex graded_panels(const G& g, double lo, Complex x) {
  const GaussRule& rule = gauss_legendre(kPanelOrder);
  const double reach = std::abs(1.0 - x);
  auto panel = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
    }
    return acc * half;
  };
  Complex total{0.0, 0.0};
  for (int level = 0; level < 60 && 1.0 - lo > reach; ++level) {
    const double mid = 0.5 * (lo + 1.0);
    total += panel(lo, mid);
    lo = mid;
  }
  return total + panel(lo, 1.0);
}

}  // namespace

KernelParams::KernelParams(double beta) : beta_(beta), c_beta_(beta + 1.0) {
  if (!(beta > -1.0)) throw DomainError("kernel: beta must exceed -1");
  static std::mutex mu;
  static std::map<double, double> masses;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = masses.find(beta); it != masses.end()) {
      mass_ = it->second;
      return;
    }
  }
  QuadratureSpec spec;
  spec.tolerance = 1e-10;
  const double c = c_beta_;
  mass_ = integrate_disk(
              [c, beta](Complex w) { return Complex{c * std::pow(1.0 - std::norm(w), beta)}; },
              Region::disk(), spec, Execution::Serial)
              .real();
  if (std::abs(mass_ - 1.0) > 1e-6) {
    throw DomainError("kernel: v_beta(D) failed to normalise for beta = " + std::to_string(beta));
  }
  std::lock_guard<std::mutex> lock(mu);
  masses.emplace(beta, mass_);
}

KernelParams KernelParams::for_exponent(double p, double beta) {
  if (!(p > 0.0)) throw DomainError("kernel: p must be positive");
  const double bound = std::max(0.0, 2.0 / p - 1.0);
  if (!(beta > bound)) {
    throw DomainError("kernel: beta must exceed max(0, 2/p - 1) = " + std::to_string(bound));
  }
  return KernelParams(beta);
}

double KernelParams::default_beta(double p) {
  if (!(p > 0.0)) throw DomainError("kernel: p must be positive");
  const double need = std::max(0.0, 2.0 / p - 1.0);
  return need < 3.0 ? 3.0 : std::ceil(need) + 1.0;
}

double KernelParams::weight(Complex w) const {
  return c_beta_ * std::pow(1.0 - std::norm(w), beta_);
}

Complex kernel_L_x(Complex x, double m) {
  if (x == Complex{0.0, 0.0}) return {0.0, 0.0};
  if (std::abs(x) <= 0.5) return log_series(x, m);
  if (m >= 1.0 && m <= 64.0 && m == std::floor(m)) {
    // integer m: -log(1-x) + sum_{k=2}^{m} ((1-x)^{1-k} - 1) / (k-1)
    const Complex q = 1.0 / (1.0 - x);
    Complex sum = -std::log(1.0 - x), qk = q;
    for (int k = 2; k <= static_cast<int>(m); ++k, qk *= q) sum += (qk - 1.0) / double(k - 1);
    return sum;
  }
  // t in [0, 1/2] by the series in x/2, the rest on graded panels
  const Complex head = log_series(0.5 * x, m);
  auto g = [x, m](double t) { return (inverse_power(1.0 - t * x, m) - 1.0) / t; };
  return head + graded_panels(g, 0.5, x);
}

Complex kernel_L(Complex z, Complex w, const KernelParams& kp) {
  return kernel_L_x(z * std::conj(w), 2.0 + kp.beta());
}

Complex radial_kernel_L(Complex z, Complex w, const KernelParams& kp) {
  return inverse_power(1.0 - z * std::conj(w), 2.0 + kp.beta()) - 1.0;
}

Complex radial_kernel_L_quadrature(Complex z, Complex w, const KernelParams& kp) {
  const Complex x = z * std::conj(w);
  const double m = 2.0 + kp.beta();
  // R_z of the integrand: m t x (1 - t x)^{-(m+1)} / t
  auto g = [x, m](double t) { return m * x * inverse_power(1.0 - t * x, m + 1.0); };
  return graded_panels(g, 0.0, x);
}

ReproduceResult reproduce(const FunctionModel& f, std::span<const Complex> points,
                          const KernelParams& kp, const QuadratureSpec& spec,
                          const Region& region) {
  for (Complex z : points) {
    if (!(std::norm(z) < 1.0)) throw DomainError("reproduce: points must lie in the disk");
  }
  const std::vector<Complex> zs(points.begin(), points.end());
  const double m = 2.0 + kp.beta();
  auto integrand = [&](Complex w, std::span<Complex> out) {
    const Complex rf = f.radial_derivative(w) * kp.weight(w);
    const Complex wc = std::conj(w);
    for (std::size_t k = 0; k < zs.size(); ++k) out[k] = rf * kernel_L_x(zs[k] * wc, m);
  };
  const auto results = integrate_disk_batch(integrand, zs.size(), region, spec);
  ReproduceResult out;
  const Complex f0 = f.value(0.0);
  for (const auto& r : results) {
    out.values.push_back(f0 + r.value);
    out.error_estimates.push_back(r.error_estimate);
    out.flags |= flags_of(r);
  }
  return out;
}

Complex reproduce(const FunctionModel& f, Complex z, const KernelParams& kp,
                  const QuadratureSpec& spec) {
  const Complex pts[] = {z};
  return reproduce(f, pts, kp, spec).values.front();
}

}  // namespace bloch
