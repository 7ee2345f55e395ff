#include "bloch/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bloch/hypgeo.hpp"
#include "bloch/quad_kernels.hpp"
#include "bloch/summation.hpp"

namespace bloch {

using kernels::AnnulusGeometry;
using kernels::CellContext;
using kernels::CellList;
using kernels::CellTables;

void QuadratureSpec::validate() const {
  if (boundary_depth < 1 || boundary_depth > 40) {
    throw DomainError("quadrature: J must lie in [1, 40]");
  }
  if (angular_base < 1) throw DomainError("quadrature: angular_base must be positive");
  if (!(tolerance > 0.0)) throw DomainError("quadrature: tolerance must be positive");
  if (circle_points < 1) throw DomainError("quadrature: M must be positive");
  if (!(sup_lattice_gap > 0.0 && sup_lattice_gap < 1.0)) {
    throw DomainError("quadrature: sigma must lie in (0, 1)");
  }
  if (cell_order < 1 || cell_order > 32) {
    throw DomainError("quadrature: cell_order must lie in [1, 32]");
  }
  if (min_depth < 1) throw DomainError("quadrature: min_depth must be positive");
}

double QuadratureSpec::r_max() const { return 1.0 - std::ldexp(1.0, -boundary_depth); }

std::string QuadratureSpec::fingerprint() const {
  std::ostringstream os;
  os << "J" << boundary_depth << "-b" << angular_base << "-M" << circle_points << "-s"
     << sup_lattice_gap << "-t" << tolerance << "-o" << cell_order << "-e"
     << (early_exit ? min_depth : 0);
  return os.str();
}

std::size_t NodeSet::size() const {
  std::size_t n = 0;
  for (const auto& a : annuli) n += a.size();
  return n;
}

namespace {

CellList cells_for(const AnnulusGeometry& g, const Region& region) {
  CellList out;
  if (region.is_empty_region()) return out;
  if (g.r_hi <= region.r_min() || g.r_lo >= region.r_max()) return out;
  const bool radial_straddle = g.r_lo < region.r_min() || g.r_hi > region.r_max();
  const AngularWindow w =
      region.has_window() ? region.window(g.r_lo, g.r_hi) : AngularWindow::full();
  if (w.is_empty()) return out;

  const auto n = static_cast<long long>(g.cells);
  long long first = 0;
  long long last = n - 1;
  if (!w.is_full()) {
    first = static_cast<long long>(std::floor((w.center - w.half_width) / g.dtheta));
    last = static_cast<long long>(std::floor((w.center + w.half_width) / g.dtheta));
    if (last - first + 1 >= n) {
      first = 0;
      last = n - 1;
    }
  }
  out.index.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long i = first; i <= last; ++i) {
    const long long wrapped = ((i % n) + n) % n;
    const double lo = static_cast<double>(i) * g.dtheta;
    const bool inside_hint = w.is_full() || w.covers(lo, lo + g.dtheta);
    out.index.push_back(static_cast<std::size_t>(wrapped));
    out.straddles.push_back((radial_straddle || !inside_hint) ? 1 : 0);
  }
  return out;
}

CellContext make_context(const Region& region, const QuadratureSpec& spec) {
  CellContext ctx;
  ctx.region = &region;
  ctx.cell_rule = &gauss_legendre(spec.cell_order);
  ctx.chord_rule = &gauss_legendre(spec.cell_order + 2);
  ctx.geometry_tolerance = std::min(1e-4, spec.tolerance * 1e-2);
  ctx.cell_relative_tolerance = std::min(1e-6, spec.tolerance * 1e-3);
  ctx.cell_absolute_floor = spec.tolerance * 1e-3;
  return ctx;
}

struct Tail {
  bool ok = false;
  Complex value{0.0, 0.0};
  double spread = 0.0;  // disagreement between the two extrapolations
};

// Geometric extrapolation of the remaining annuli from the last three
// contributions. Two trailing zeros only settle the sum once the annuli have
// passed the region's outer radius; before that the region may resume.
Tail geometric_tail(std::span<const Complex> c, bool region_exhausted) {
  const std::size_t n = c.size();
  if (n < 3) return {};
  const Complex a0 = c[n - 3], a1 = c[n - 2], a2 = c[n - 1];
  if (a2 == Complex{} && a1 == Complex{}) return {region_exhausted, {}};
  if (!(std::abs(a2) < std::abs(a1) && std::abs(a1) < std::abs(a0))) return {};
  const Complex q = a2 / a1;
  if (std::abs(q) > 0.9) return {};
  return {true, a2 * q / (1.0 - q)};
}

// The ratio of successive annuli usually still drifts at the depths we can
// afford (a peak near the boundary decays like 4^-j plus 8^-j and so on), so
// Aitken's process is applied once more, to the last three geometric
// estimates. Falls back to the plain estimate when that is not clean.
Tail extrapolated_tail(const std::vector<Complex>& c, bool region_exhausted) {
  const std::size_t n = c.size();
  const Tail plain = geometric_tail(c, region_exhausted);
  if (!plain.ok || n < 5 || plain.value == Complex{}) return plain;
  // estimates of the full sum, relative to the partial sum through c[n-1]
  Complex t[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t end = n - 2 + i;
    const Tail g = geometric_tail(std::span<const Complex>(c.data(), end), false);
    if (!g.ok) return plain;
    Complex dropped{0.0, 0.0};
    for (std::size_t k = end; k < n; ++k) dropped += c[k];
    t[i] = g.value - dropped;
  }
  const Complex d1 = t[1] - t[0], d2 = t[2] - t[1];
  if (!(std::abs(d2) < 0.9 * std::abs(d1))) return plain;
  const Complex refined = t[2] - d2 * d2 / (d2 - d1);
  return {true, refined, std::abs(refined - plain.value)};
}

}  // namespace

std::vector<IntegralResult> integrate_disk_batch(const BatchIntegrand& integrand,
                                                 std::size_t width, const Region& region,
                                                 const QuadratureSpec& spec, Execution exec) {
  spec.validate();
  if (width == 0) return {};
  const CellContext ctx = make_context(region, spec);

  std::vector<IntegralResult> results(width);
  std::vector<Complex> partial_sum(width), extrapolated(width), previous(width);
  std::vector<double> geometric_error(width, 0.0), tail_spread(width, 0.0);
  // per component: how many of the latest annuli had cells but a zero |sum|
  std::vector<int> vanished(width, 0);
  // per component: consecutive depths at which the extrapolated sum held still
  std::vector<int> steady(width, 0);
  CellTables tables;

  int depth = 0;
  for (int j = 0; j < spec.boundary_depth; ++j) {
    const AnnulusGeometry geom = AnnulusGeometry::dyadic(j, spec.angular_base);
    const CellList cells = cells_for(geom, region);
    if (exec == Execution::Parallel) {
      kernels::annulus_sums_omp(geom, cells, ctx, integrand, width, tables);
    } else {
      kernels::annulus_sums_serial(geom, cells, ctx, integrand, width, tables);
    }
    const std::span<const Complex> sums(tables.sums);
    std::vector<double> weighted_abs(cells.size());
    for (std::size_t k = 0; k < width; ++k) {
      const Complex a = pairwise_column_sum(sums, width, k, 0, cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        weighted_abs[i] = tables.rel_error[i] * tables.abs_sums[i * width + k] +
                          tables.quad_error[i * width + k];
      }
      geometric_error[k] += pairwise_sum(std::span<const double>(weighted_abs));
      double abs_total = 0.0;
      for (std::size_t i = 0; i < cells.size(); ++i) abs_total += tables.abs_sums[i * width + k];
      vanished[k] = cells.size() > 0 && abs_total == 0.0 ? vanished[k] + 1 : 0;
      partial_sum[k] += a;
      results[k].annulus_contributions.push_back(a);
      results[k].cells_used += cells.size();
    }
    depth = j + 1;

    const bool exhausted = geom.r_hi >= region.r_max() || region.is_empty_region();
    bool all_settled = true;
    for (std::size_t k = 0; k < width; ++k) {
      previous[k] = extrapolated[k];
      // zeros where the region is present mean the integrand itself vanishes
      const Tail tail =
          extrapolated_tail(results[k].annulus_contributions, exhausted || vanished[k] >= 2);
      extrapolated[k] = partial_sum[k] + tail.value;
      tail_spread[k] = tail.spread;
      // Settled when the tail itself is negligible, or when the extrapolation
      // has stopped moving twice running and the tail it bridges is modest.
      const bool still = tail.ok && depth > 1 &&
                         std::abs(extrapolated[k] - previous[k]) <= spec.tolerance / 64.0 &&
                         tail.spread <= spec.tolerance / 64.0 &&
                         std::abs(tail.value) <= 100.0 * spec.tolerance;
      steady[k] = still ? steady[k] + 1 : 0;
      const bool small = tail.ok && std::abs(tail.value) <= spec.tolerance / 8.0;
      if (!small && steady[k] < 2) all_settled = false;
    }
    if (spec.early_exit && depth >= spec.min_depth && all_settled) break;
  }

  for (std::size_t k = 0; k < width; ++k) {
    IntegralResult& r = results[k];
    r.value = extrapolated[k];
    r.depth_reached = depth;
    r.error_estimate =
        std::abs(extrapolated[k] - previous[k]) + tail_spread[k] + geometric_error[k];
    const auto& c = r.annulus_contributions;
    const std::size_t n = c.size();
    r.truncated_tail = std::abs(c.back()) > spec.tolerance;
    if (n >= 3) {
      const double a0 = std::abs(c[n - 3]), a1 = std::abs(c[n - 2]), a2 = std::abs(c[n - 1]);
      r.divergent = a0 <= a1 && a1 <= a2 && a2 > spec.tolerance;
    }
  }
  return results;
}

IntegralResult integrate_disk(const Integrand& integrand, const Region& region,
                              const QuadratureSpec& spec, Execution exec) {
  auto batch = [&integrand](Complex w, std::span<Complex> out) { out[0] = integrand(w); };
  return integrate_disk_batch(batch, 1, region, spec, exec).front();
}

NodeSet discretize(const Region& region, const QuadratureSpec& spec, Execution exec) {
  spec.validate();
  const CellContext ctx = make_context(region, spec);
  NodeSet set;
  set.annuli.resize(static_cast<std::size_t>(spec.boundary_depth));
  std::vector<std::vector<QuadNode>> per_cell;
  for (int j = 0; j < spec.boundary_depth; ++j) {
    const AnnulusGeometry geom = AnnulusGeometry::dyadic(j, spec.angular_base);
    const CellList cells = cells_for(geom, region);
    if (exec == Execution::Parallel) {
      kernels::annulus_nodes_omp(geom, cells, ctx, per_cell);
    } else {
      kernels::annulus_nodes_serial(geom, cells, ctx, per_cell);
    }
    auto& dst = set.annuli[static_cast<std::size_t>(j)];
    for (const auto& nodes : per_cell) dst.insert(dst.end(), nodes.begin(), nodes.end());
  }
  return set;
}

double integrate_circle(const std::function<double(BoundaryPoint)>& g, int points) {
  if (points < 1) throw DomainError("integrate_circle: need at least one point");
  std::vector<double> values(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    values[static_cast<std::size_t>(k)] = g(BoundaryPoint(kTwoPi * k / points));
  }
  return pairwise_sum(std::span<const double>(values)) / points;
}

double integrate_circle(const std::function<double(BoundaryPoint)>& g,
                        const QuadratureSpec& spec) {
  return integrate_circle(g, spec.circle_points);
}

}  // namespace bloch
