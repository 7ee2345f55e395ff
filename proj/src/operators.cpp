#include "bloch/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bloch/summation.hpp"

namespace bloch {

std::string flag_text(unsigned flags) {
  std::string out;
  auto add = [&out](const char* s) {
    if (!out.empty()) out += '|';
    out += s;
  };
  if (flags & kFlagDivergent) add("DIVERGENT");
  if (flags & kFlagNoPlateau) add("NO_PLATEAU");
  if (flags & kFlagTruncatedTail) add("TRUNCATED_TAIL");
  return out;
}

unsigned flags_of(const IntegralResult& r) {
  return (r.divergent ? kFlagDivergent : 0u) | (r.truncated_tail ? kFlagTruncatedTail : 0u);
}

Estimate estimate_of(const IntegralResult& r) {
  return {r.value.real(), r.error_estimate, flags_of(r)};
}

double bloch_density(const FunctionModel& f, Complex z, DensityFlavor flavor) {
  const double d = (1.0 - std::norm(z)) * std::abs(f.derivative(z));
  return flavor == DensityFlavor::Radial ? d * std::abs(z) : d;
}

SupResult bloch_seminorm(const FunctionModel& f, const QuadratureSpec& spec,
                         DensityFlavor flavor, Execution exec) {
  return sup_on_lattice([&f, flavor](Complex z) { return bloch_density(f, z, flavor); }, spec,
                        exec);
}

Region level_set(const FunctionModel& f, double eps, DensityFlavor flavor) {
  if (!(eps > 0.0)) throw DomainError("level set: eps must be positive");
  return Region([f, eps, flavor](Complex z) { return bloch_density(f, z, flavor) >= eps; });
}

namespace {

Estimate sqrt_of(const IntegralResult& r) {
  const double v = std::max(0.0, r.value.real());
  const double s = std::sqrt(v);
  const double err = s > 0.0 ? r.error_estimate / (2.0 * s) : std::sqrt(r.error_estimate);
  return {s, err, flags_of(r)};
}

}  // namespace

Estimate area_function(const FunctionModel& f, BoundaryPoint zeta, const QuadratureSpec& spec,
                       const TentOptions& tent, DensityFlavor flavor) {
  const TentRegion t(zeta, tent.aperture, tent.flavor);
  auto integrand = [&f, flavor](Complex z) {
    const Complex g = flavor == DensityFlavor::Radial ? f.radial_derivative(z) : f.derivative(z);
    return Complex{std::norm(g)};
  };
  return sqrt_of(integrate_disk(integrand, t.region(), spec));
}

Estimate tent_levelset_volume(const FunctionModel& f, double eps, BoundaryPoint zeta,
                              const QuadratureSpec& spec, const TentOptions& tent,
                              DensityFlavor flavor) {
  const TentRegion t(zeta, tent.aperture, tent.flavor);
  return estimate_of(hyperbolic_area(t.region().intersect(level_set(f, eps, flavor)), spec));
}

CriterionResult criterion_lp(const FunctionModel& f, double eps, double p,
                             const QuadratureSpec& spec, const TentOptions& tent,
                             DensityFlavor flavor, bool with_area_fn) {
  if (!(p > 0.0)) throw DomainError("criterion: p must be positive");
  if (!(eps > 0.0)) throw DomainError("criterion: eps must be positive");
  spec.validate();
  const int M = spec.circle_points;
  CriterionResult out;
  std::vector<double> powers(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) {
    const BoundaryPoint zeta(kTwoPi * k / M);
    const Estimate v = tent_levelset_volume(f, eps, zeta, spec, tent, flavor);
    TentProfile row{zeta, 0.0, v.value, eps, tent.aperture, v.flags};
    if (with_area_fn) {
      const Estimate a = area_function(f, zeta, spec, tent);
      row.area_fn = a.value;
      row.flags |= a.flags;
    }
    out.flags |= row.flags;
    powers[static_cast<std::size_t>(k)] = std::pow(std::max(0.0, v.value), 0.5 * p);
    out.profile.push_back(row);
  }
  const double mean = pairwise_sum(std::span<const double>(powers)) / M;
  out.value = std::pow(mean, 1.0 / p);
  return out;
}

HardyResult hardy_norm(const FunctionModel& f, double p, const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw DomainError("hardy norm: p must be positive");
  spec.validate();
  HardyResult out;
  for (int j = 1; j <= spec.boundary_depth; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    // enough points to resolve features of width 1 - r on the circle
    const int points = std::max(spec.circle_points, 32 << std::min(j, 20));
    const double mean = integrate_circle(
        [&](BoundaryPoint zeta) { return std::pow(std::abs(f.value(r * zeta.value())), p); },
        points);
    out.radii.push_back(r);
    out.means.push_back(mean);
  }
  const auto& m = out.means;
  const double sup = *std::max_element(m.begin(), m.end());
  out.raw_sup = std::pow(sup, 1.0 / p);
  out.value = out.raw_sup;

  const std::size_t n = m.size();
  if (n < 4) return out;
  const double d0 = m[n - 3] - m[n - 4], d1 = m[n - 2] - m[n - 3], d2 = m[n - 1] - m[n - 2];
  const double tol = spec.tolerance;
  // Means of a subharmonic function grow with r; growth that does not decay
  // geometrically is reported instead of being cut off at r_max.
  if (d0 > tol && d1 > tol && d2 > tol && d1 / d0 >= 0.95 && d2 / d1 >= 0.95) {
    out.flags |= kFlagNoPlateau;
    out.error_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  double limit = m[n - 1];
  double tail_error = std::abs(d2);
  if (d1 > 0.0 && d2 > 0.0 && d2 < d1) {
    const double q = d2 / d1;
    const double tail = d2 * q / (1.0 - q);
    limit += tail;
    // the ratio drift between the last two steps bounds the extrapolation error
    const double q_prev = d0 > 0.0 ? d1 / d0 : q;
    tail_error = std::abs(tail - d2 * q_prev / (1.0 - q_prev)) + 1e-15 * limit;
  }
  out.value = std::pow(std::max(limit, sup), 1.0 / p);
  out.error_estimate = std::abs(std::pow(limit + tail_error, 1.0 / p) - std::pow(limit, 1.0 / p));
  return out;
}

std::vector<Complex> default_xiao_probes(const QuadratureSpec& spec) {
  std::vector<Complex> probes;
  const int last = std::max(1, spec.boundary_depth - 2);
  for (int m = 1; m <= last; ++m) probes.emplace_back(1.0 - std::ldexp(1.0, -m), 0.0);
  constexpr int kDirections = 16;
  for (int d = 1; d < kDirections; ++d) {
    for (int j = 1; j <= last; ++j) {
      probes.push_back(std::polar(1.0 - std::ldexp(1.0, -j), kTwoPi * d / kDirections));
    }
  }
  return probes;
}

XiaoResult xiao_functional(const FunctionModel& f, double eps, const QuadratureSpec& spec,
                           std::span<const Complex> probes, DensityFlavor flavor) {
  XiaoResult out;
  out.probes = probes.empty() ? default_xiao_probes(spec)
                              : std::vector<Complex>(probes.begin(), probes.end());
  for (Complex w : out.probes) {
    if (!(std::norm(w) < 1.0)) throw DomainError("xiao: probes must lie in the disk");
  }
  const auto& ws = out.probes;
  auto integrand = [&ws](Complex z, std::span<Complex> vals) {
    for (std::size_t k = 0; k < ws.size(); ++k) {
      vals[k] = 1.0 / std::norm(1.0 - std::conj(ws[k]) * z);
    }
  };
  const auto results = integrate_disk_batch(integrand, ws.size(), level_set(f, eps, flavor), spec);
  for (std::size_t k = 0; k < results.size(); ++k) {
    out.integrals.push_back(results[k].real());
    out.error_estimates.push_back(results[k].error_estimate);
    out.flags |= flags_of(results[k]);
    if (k == 0 || results[k].real() > out.value) {
      out.value = results[k].real();
      out.argmax = ws[k];
    }
  }
  return out;
}

}  // namespace bloch
