#include "bloch/quad_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <omp.h>

namespace bloch::kernels {

namespace {

constexpr int kVote = 4;            // votes per direction
constexpr int kPerimeter = 8;       // perimeter samples per edge
constexpr int kRaySamples = 33;     // membership samples along a ray
constexpr int kBisections = 44;     // ~1e-13 of the radial width
constexpr int kMaxAngularDepth = 22;
constexpr double kInvPi = 1.0 / std::numbers::pi;

constexpr std::size_t kMaxSeeds = 32;
constexpr int kMaxCellDepth = 6;    // 2x2 splits of a full cell

// Error of an n-point Gauss rule on data with Legendre coefficients c_p,
// p < n, by extrapolating the decay of the top coefficients out to degree 2n.
// Coefficients are taken in pairs so that odd or even symmetry does not fake
// convergence.
double gauss_tail(const GaussRule& g, std::span<const Complex> v) {
  const std::size_t n = v.size();
  auto coef = [&](std::size_t p) {
    Complex c{0.0, 0.0};
    for (std::size_t a = 0; a < n; ++a) c += g.projection[p * n + a] * v[a];
    return std::abs(c);
  };
  if (n < 4) return n > 1 ? coef(n - 1) : 0.0;
  const double e1 = std::max(coef(n - 1), coef(n - 2));
  const double e2 = std::max(coef(n - 3), coef(n - 4));
  if (e1 == 0.0) return 0.0;
  if (e2 == 0.0) return e1;
  const double q = std::min(1.0, std::sqrt(e1 / e2));
  return e1 * std::pow(q, static_cast<double>(n));
}

struct Chords {
  static constexpr int kCapacity = (kRaySamples + static_cast<int>(kMaxSeeds)) / 2 + 1;
  int count = 0;
  std::array<double, 2 * kCapacity> ends{};
  double measure = 0.0;  // int r dr over the chords
};

double bisect(const Region& region, Complex dir, double a, double b, bool state_a) {
  for (int it = 0; it < kBisections; ++it) {
    const double mid = 0.5 * (a + b);
    if (region.contains(mid * dir) == state_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Chords of the region along the ray at angle theta, r in [r_lo, r_hi].
// Besides the uniform samples the ray is probed at `seeds`, the chord
// midpoints of neighbouring rays, so chords much thinner than the sample
// spacing are still found near tangency.
Chords ray_chords(const Region& region, double theta, double r_lo, double r_hi,
                  std::span<const double> seeds) {
  std::array<double, kRaySamples + kMaxSeeds> rs{};
  std::size_t n = 0;
  for (int i = 0; i < kRaySamples; ++i) rs[n++] = r_lo + (r_hi - r_lo) * i / (kRaySamples - 1);
  for (double s : seeds) {
    if (s > r_lo && s < r_hi && n < rs.size()) rs[n++] = s;
  }
  if (n > static_cast<std::size_t>(kRaySamples)) std::sort(rs.begin(), rs.begin() + n);

  const Complex dir = std::polar(1.0, theta);
  Chords c;
  double open = r_lo;
  bool prev = region.contains(rs[0] * dir);
  bool inside = prev;
  for (std::size_t i = 1; i < n; ++i) {
    const bool cur = region.contains(rs[i] * dir);
    if (cur == prev) continue;
    const double t = bisect(region, dir, rs[i - 1], rs[i], prev);
    prev = cur;
    if (inside) {
      c.ends[2 * c.count] = open;
      c.ends[2 * c.count + 1] = t;
      ++c.count;
      inside = false;
    } else {
      open = t;
      inside = true;
    }
  }
  if (inside) {
    c.ends[2 * c.count] = open;
    c.ends[2 * c.count + 1] = r_hi;
    ++c.count;
  }
  for (int k = 0; k < c.count; ++k) {
    const double a = c.ends[2 * k], b = c.ends[2 * k + 1];
    c.measure += 0.5 * (b * b - a * a);
  }
  return c;
}

/// Emits the nodes of one cell through `sink(w, weight)` and returns the
/// relative geometric error (0 for full cells).
template <class Sink>
struct CellWalker {
  const AnnulusGeometry& geom;
  const CellContext& ctx;
  Sink& sink;
  double th_lo = 0.0;
  double cell_measure = 0.0;
  double err_sum = 0.0;
  double seed_gap = 0.0;

  void full_cell() {
    if constexpr (Sink::kAdaptive) {
      full_block(geom.r_lo, geom.r_hi, th_lo, geom.dtheta, 0);
    } else {
      emit_full_cell();
    }
  }

  void full_block(double r0, double r1, double t0, double dt, int depth) {
    if (sink.block(ctx, r0, r1, t0, dt, depth < kMaxCellDepth)) return;
    const double rm = 0.5 * (r0 + r1), h = 0.5 * dt;
    full_block(r0, rm, t0, h, depth + 1);
    full_block(r0, rm, t0 + h, h, depth + 1);
    full_block(rm, r1, t0, h, depth + 1);
    full_block(rm, r1, t0 + h, h, depth + 1);
  }

  void emit_full_cell() {
    const GaussRule& g = *ctx.cell_rule;
    const double dr = geom.r_hi - geom.r_lo;
    const double dt = geom.dtheta;
    for (std::size_t a = 0; a < g.nodes.size(); ++a) {
      const double r = geom.r_lo + 0.5 * (g.nodes[a] + 1.0) * dr;
      const double wr = 0.5 * g.weights[a] * dr * r * kInvPi;
      for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        const double th = th_lo + 0.5 * (g.nodes[b] + 1.0) * dt;
        sink(std::polar(r, th), wr * 0.5 * g.weights[b] * dt);
      }
    }
  }

  void emit_ray(double theta, double angular_weight, const Chords& c) {
    const GaussRule& g = *ctx.chord_rule;
    const Complex dir = std::polar(1.0, theta);
    for (int k = 0; k < c.count; ++k) {
      const double a = c.ends[2 * k], b = c.ends[2 * k + 1];
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      if (half <= 0.0) continue;
      for (std::size_t l = 0; l < g.nodes.size(); ++l) {
        const double r = mid + half * g.nodes[l];
        sink(r * dir, angular_weight * g.weights[l] * half * r * kInvPi);
      }
    }
  }

  void refine(double a, double b, int depth, double tol, std::span<const double> seeds) {
    const KronrodRule& gk = gauss_kronrod15();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::array<Chords, 15> chords;
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
      chords[i] = ray_chords(*ctx.region, mid + half * gk.nodes[i], geom.r_lo, geom.r_hi, seeds);
      kron += gk.kronrod_weights[i] * chords[i].measure;
      gauss += gk.gauss_weights[i] * chords[i].measure;
    }
    const double err = std::abs(kron - gauss) * half;
    if (err <= tol || depth >= kMaxAngularDepth) {
      err_sum += err;
      for (int i = 0; i < 15; ++i) {
        emit_ray(mid + half * gk.nodes[i], gk.kronrod_weights[i] * half, chords[i]);
      }
      return;
    }
    // Chord midpoints seed the children's rays.
    std::array<double, kMaxSeeds> next{};
    std::size_t n = 0;
    for (const Chords& c : chords) {
      for (int k = 0; k < c.count; ++k) {
        const double m = 0.5 * (c.ends[2 * k] + c.ends[2 * k + 1]);
        bool known = false;
        for (std::size_t q = 0; q < n; ++q) known = known || std::abs(next[q] - m) < seed_gap;
        if (!known && n < next.size()) next[n++] = m;
      }
    }
    const std::span<const double> child_seeds(next.data(), n);
    const double child_tol = tol * std::numbers::sqrt2 * 0.5;
    refine(a, mid, depth + 1, child_tol, child_seeds);
    refine(mid, b, depth + 1, child_tol, child_seeds);
  }

  void partial_cell() {
    seed_gap = (geom.r_hi - geom.r_lo) / (4.0 * (kRaySamples - 1));
    refine(th_lo, th_lo + geom.dtheta, 0, ctx.geometry_tolerance * cell_measure, {});
  }
};

enum class CellClass { Empty, Full, Partial };

CellClass classify(const AnnulusGeometry& geom, double th_lo, const Region& region,
                   bool straddles) {
  if (region.is_whole_disk() && !straddles) return CellClass::Full;
  if (straddles) return CellClass::Partial;
  int inside = 0;
  const double dr = geom.r_hi - geom.r_lo;
  for (int a = 0; a < kVote; ++a) {
    const double r = geom.r_lo + (a + 0.5) / kVote * dr;
    for (int b = 0; b < kVote; ++b) {
      const double th = th_lo + (b + 0.5) / kVote * geom.dtheta;
      inside += region.contains(std::polar(r, th)) ? 1 : 0;
    }
  }
  if (inside != 0 && inside != kVote * kVote) return CellClass::Partial;
  // A uniform vote is confirmed on the perimeter, which catches boundaries
  // that clip a corner or an edge of the cell between vote points.
  const bool expect = inside != 0;
  for (int k = 0; k < kPerimeter; ++k) {
    const double s = static_cast<double>(k) / kPerimeter;
    const double r = geom.r_lo + s * dr;
    const double th = th_lo + s * geom.dtheta;
    if (region.contains(std::polar(r, th_lo)) != expect ||
        region.contains(std::polar(geom.r_hi - s * dr, th_lo + geom.dtheta)) != expect ||
        region.contains(std::polar(geom.r_lo, th_lo + geom.dtheta - s * geom.dtheta)) != expect ||
        region.contains(std::polar(geom.r_hi, th)) != expect) {
      return CellClass::Partial;
    }
  }
  return expect ? CellClass::Full : CellClass::Empty;
}

template <class Sink>
double walk_cell(const AnnulusGeometry& geom, std::size_t cell, bool straddles,
                 const CellContext& ctx, Sink& sink, bool& partial) {
  const double th_lo = geom.theta_lo(cell);
  const CellClass cls = classify(geom, th_lo, *ctx.region, straddles);
  partial = cls == CellClass::Partial;
  if (cls == CellClass::Empty) return 0.0;
  CellWalker<Sink> walker{geom, ctx, sink};
  walker.th_lo = th_lo;
  walker.cell_measure = 0.5 * geom.dtheta * (geom.r_hi * geom.r_hi - geom.r_lo * geom.r_lo);
  if (cls == CellClass::Full) {
    walker.full_cell();
    return 0.0;
  }
  walker.partial_cell();
  return walker.err_sum / walker.cell_measure;
}

struct SumSink {
  static constexpr bool kAdaptive = true;
  const BatchIntegrand& f;
  std::span<Complex> scratch;
  std::span<Complex> sums;
  std::span<double> abs_sums;
  std::span<double> quad_error;
  std::vector<Complex>& values;  // n * n * width, reused between blocks
  std::vector<Complex>& line;    // n

  void operator()(Complex w, double weight) {
    f(w, scratch);
    for (std::size_t k = 0; k < scratch.size(); ++k) {
      const Complex t = weight * scratch[k];
      sums[k] += t;
      abs_sums[k] += std::abs(t);
    }
  }

  // Tensor rule on [r0, r1] x [t0, t0 + dt]. Returns false, adding nothing,
  // when the block should be split instead.
  bool block(const CellContext& ctx, double r0, double r1, double t0, double dt, bool may_split) {
    const GaussRule& g = *ctx.cell_rule;
    const std::size_t n = g.nodes.size(), width = scratch.size();
    values.resize(n * n * width);
    line.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      const double r = r0 + 0.5 * (g.nodes[a] + 1.0) * (r1 - r0);
      for (std::size_t b = 0; b < n; ++b) {
        f(std::polar(r, t0 + 0.5 * (g.nodes[b] + 1.0) * dt), scratch);
        for (std::size_t k = 0; k < width; ++k) values[(a * n + b) * width + k] = r * scratch[k];
      }
    }
    const double scale = 0.25 * (r1 - r0) * dt * kInvPi;
    const double floor = ctx.cell_absolute_floor * 0.5 * dt * (r1 * r1 - r0 * r0) * kInvPi;
    auto at = [&](std::size_t a, std::size_t b, std::size_t k) {
      return values[(a * n + b) * width + k];
    };
    // First pass decides, second pass commits, so a split leaves no trace.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < width; ++k) {
        Complex total{0.0, 0.0};
        double abs_total = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
          Complex row{0.0, 0.0};
          for (std::size_t b = 0; b < n; ++b) {
            row += g.weights[b] * at(a, b, k);
            abs_total += g.weights[a] * g.weights[b] * std::abs(at(a, b, k));
          }
          line[a] = row;
          total += g.weights[a] * row;
        }
        double err = gauss_tail(g, line);
        for (std::size_t b = 0; b < n; ++b) {
          Complex col{0.0, 0.0};
          for (std::size_t a = 0; a < n; ++a) col += g.weights[a] * at(a, b, k);
          line[b] = col;
        }
        err = 2.0 * scale * (err + gauss_tail(g, line));
        if (pass == 0) {
          if (may_split && err > ctx.cell_relative_tolerance * scale * abs_total && err > floor) {
            return false;
          }
        } else {
          sums[k] += scale * total;
          abs_sums[k] += scale * abs_total;
          quad_error[k] += err;
        }
      }
    }
    return true;
  }
};

struct CollectSink {
  static constexpr bool kAdaptive = false;
  std::vector<QuadNode>& nodes;
  void operator()(Complex w, double weight) { nodes.push_back({w, weight}); }
};

struct Workspace {
  std::vector<Complex> scratch, values, line;
  explicit Workspace(std::size_t width) : scratch(width) {}
};

void sum_one_cell(const AnnulusGeometry& geom, const CellList& cells, std::size_t i,
                  const CellContext& ctx, const BatchIntegrand& f, std::size_t width,
                  Workspace& ws, CellTables& out) {
  std::span<Complex> sums(out.sums.data() + i * width, width);
  std::span<double> abs_sums(out.abs_sums.data() + i * width, width);
  std::span<double> quad_error(out.quad_error.data() + i * width, width);
  SumSink sink{f, ws.scratch, sums, abs_sums, quad_error, ws.values, ws.line};
  bool partial = false;
  out.rel_error[i] = walk_cell(geom, cells.index[i], cells.straddles[i] != 0, ctx, sink, partial);
  out.partial[i] = partial ? 1 : 0;
}

}  // namespace

AnnulusGeometry AnnulusGeometry::dyadic(int j, int angular_base) {
  AnnulusGeometry g;
  g.r_lo = 1.0 - std::ldexp(1.0, -j);
  g.r_hi = 1.0 - std::ldexp(1.0, -(j + 1));
  g.cells = static_cast<std::size_t>(angular_base) << j;
  g.dtheta = kTwoPi / static_cast<double>(g.cells);
  return g;
}

void CellTables::resize(std::size_t cells, std::size_t width) {
  sums.assign(cells * width, Complex{0.0, 0.0});
  abs_sums.assign(cells * width, 0.0);
  rel_error.assign(cells, 0.0);
  quad_error.assign(cells * width, 0.0);
  partial.assign(cells, 0);
}

void annulus_sums_omp(const AnnulusGeometry& geom, const CellList& cells,
                      const CellContext& ctx, const BatchIntegrand& f, std::size_t width,
                      CellTables& out) {
  out.resize(cells.size(), width);
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel
  {
    Workspace ws(width);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      sum_one_cell(geom, cells, static_cast<std::size_t>(i), ctx, f, width, ws, out);
    }
  }
}

void annulus_sums_serial(const AnnulusGeometry& geom, const CellList& cells,
                         const CellContext& ctx, const BatchIntegrand& f, std::size_t width,
                         CellTables& out) {
  out.resize(cells.size(), width);
  Workspace ws(width);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    sum_one_cell(geom, cells, i, ctx, f, width, ws, out);
  }
}

void annulus_nodes_omp(const AnnulusGeometry& geom, const CellList& cells,
                       const CellContext& ctx, std::vector<std::vector<QuadNode>>& out) {
  out.assign(cells.size(), {});
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    CollectSink sink{out[k]};
    bool partial = false;
    walk_cell(geom, cells.index[k], cells.straddles[k] != 0, ctx, sink, partial);
  }
}

void annulus_nodes_serial(const AnnulusGeometry& geom, const CellList& cells,
                          const CellContext& ctx, std::vector<std::vector<QuadNode>>& out) {
  out.assign(cells.size(), {});
  for (std::size_t k = 0; k < cells.size(); ++k) {
    CollectSink sink{out[k]};
    bool partial = false;
    walk_cell(geom, cells.index[k], cells.straddles[k] != 0, ctx, sink, partial);
  }
}

void point_values_omp(const RealIntegrand& h, std::span<const Complex> points,
                      std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = h(points[i]);
}

void point_values_serial(const RealIntegrand& h, std::span<const Complex> points,
                         std::span<double> out) {
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = h(points[i]);
}

}  // namespace bloch::kernels
