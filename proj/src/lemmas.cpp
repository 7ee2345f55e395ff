#include <algorithm>
#include <cmath>
#include <limits>

#include "bloch/operators.hpp"

namespace bloch {

namespace {

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

Lemma1Result verify_lemma1(double t, double s, std::span<const Complex> z_list,
                           const QuadratureSpec& spec) {
  if (!(t > -1.0)) throw DomainError("lemma 1: t must exceed -1");
  if (!(s > 0.0)) throw DomainError("lemma 1: s must be positive");
  Lemma1Result out;
  out.z.assign(z_list.begin(), z_list.end());
  for (Complex z : out.z) {
    if (!(std::norm(z) < 1.0)) throw DomainError("lemma 1: points must lie in the disk");
  }
  const double e = 2.0 + t + s;
  const auto& zs = out.z;
  auto integrand = [&](Complex w, std::span<Complex> vals) {
    const double weight = std::pow(1.0 - std::norm(w), t);
    const Complex wc = std::conj(w);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      vals[k] = weight * std::pow(std::abs(1.0 - zs[k] * wc), -e);
    }
  };
  const auto results = integrate_disk_batch(integrand, zs.size(), Region::disk(), spec);
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const double I = results[k].real();
    const double gap = 1.0 - std::norm(zs[k]);
    out.integrals.push_back(I);
    out.ratios.push_back(I * std::pow(gap, s));
    out.flags |= flags_of(results[k]);
    lx.push_back(-std::log(gap));
    ly.push_back(std::log(I));
  }
  if (!out.ratios.empty()) out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
  if (zs.size() >= 2) out.slope = fit_slope(lx, ly);
  return out;
}

Lemma2Result verify_lemma2(double s, double r, double t,
                           std::span<const std::pair<Complex, Complex>> pairs,
                           const QuadratureSpec& spec) {
  if (!(s > -1.0)) throw DomainError("lemma 2: s must exceed -1");
  if (!(r > 0.0 && t > 0.0)) throw DomainError("lemma 2: r and t must be positive");
  if (!(r + t - s > 2.0)) throw DomainError("lemma 2: r + t - s must exceed 2");
  if (!(r < s + 2.0 && t < s + 2.0)) throw DomainError("lemma 2: r and t must be below s + 2");
  const std::vector<std::pair<Complex, Complex>> ps(pairs.begin(), pairs.end());
  for (const auto& [z, a] : ps) {
    if (!(std::norm(z) < 1.0 && std::norm(a) < 1.0)) {
      throw DomainError("lemma 2: points must lie in the disk");
    }
  }
  auto integrand = [&](Complex w, std::span<Complex> vals) {
    const double weight = std::pow(1.0 - std::norm(w), s);
    const Complex wc = std::conj(w);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      vals[k] = weight * std::pow(std::abs(1.0 - ps[k].first * wc), -r) *
                std::pow(std::abs(1.0 - ps[k].second * wc), -t);
    }
  };
  const auto results = integrate_disk_batch(integrand, ps.size(), Region::disk(), spec);
  Lemma2Result out;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double I = results[k].real();
    const double scale = std::abs(1.0 - ps[k].first * std::conj(ps[k].second));
    out.integrals.push_back(I);
    out.ratios.push_back(I * std::pow(scale, r + t - s - 2.0));
    out.flags |= flags_of(results[k]);
  }
  if (!out.ratios.empty()) out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

Lemma3Result verify_lemma3(std::span<const PointMass> mu, double b, double s,
                           const QuadratureSpec& spec, const TentOptions& tent) {
  if (!(s > 0.0)) throw DomainError("lemma 3: s must be positive");
  if (!(b > std::max(1.0, 1.0 / s))) throw DomainError("lemma 3: b must exceed max(1, 1/s)");
  for (const auto& m : mu) {
    if (!(std::norm(m.z) < 1.0)) throw DomainError("lemma 3: masses must lie in the disk");
    if (!(m.weight >= 0.0)) throw DomainError("lemma 3: weights must be non-negative");
  }
  spec.validate();
  auto lhs_at = [&](BoundaryPoint zeta) {
    const Complex zc = std::conj(zeta.value());
    double acc = 0.0;
    for (const auto& m : mu) {
      acc += m.weight * std::pow((1.0 - std::norm(m.z)) / std::abs(1.0 - m.z * zc), b);
    }
    return std::pow(acc, s);
  };
  auto rhs_at = [&](BoundaryPoint zeta) {
    const TentRegion g(zeta, tent.aperture, tent.flavor);
    double acc = 0.0;
    for (const auto& m : mu) {
      if (g.contains(m.z)) acc += m.weight;
    }
    return std::pow(acc, s);
  };
  Lemma3Result out;
  out.lhs = integrate_circle(lhs_at, spec);
  out.rhs = integrate_circle(rhs_at, spec);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace bloch
