#pragma once

// Boundary-refined quadrature on the unit disk.
//
// The disk is cut into dyadic annuli r_j = 1 - 2^{-j} (j = 0..J) and each
// annulus into base * 2^j angular cells, so every cell has bounded hyperbolic
// size. Fully covered cells get a tensor Gauss rule in (r, theta). Cells that a
// 4x4 membership vote finds partially covered are resolved by ray casting:
// along radial rays the region's chords are located by bisection and the
// angular direction is refined with adaptive Gauss-Kronrod on the covered area.
// All area integrals use the normalised measure dA = r dr dtheta / pi.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bloch/region.hpp"
#include "bloch/types.hpp"

namespace bloch {

struct QuadratureSpec {
  int boundary_depth = 14;        // J; truncation radius 1 - 2^{-J}
  int angular_base = 16;          // cells in annulus j: angular_base * 2^j
  double tolerance = 1e-6;
  int circle_points = 512;        // M
  double sup_lattice_gap = 0.2;   // sigma, pseudo-hyperbolic
  int cell_order = 6;             // Gauss points per direction in full cells
  bool early_exit = true;         // stop once every tail is below tol/8 or extrapolates steadily
  int min_depth = 8;              // never stop before this many annuli

  void validate() const;
  double r_max() const;
  /// Stable text id of every field that can change a number.
  std::string fingerprint() const;
};

enum class Execution { Parallel, Serial };

struct IntegralResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool truncated_tail = false;
  bool divergent = false;
  std::size_t cells_used = 0;
  int depth_reached = 0;
  std::vector<Complex> annulus_contributions;

  double real() const { return value.real(); }
};

using Integrand = std::function<Complex(Complex)>;
using RealIntegrand = std::function<double(Complex)>;
/// Writes `out.size()` integrand components at w.
using BatchIntegrand = std::function<void(Complex w, std::span<Complex> out)>;

IntegralResult integrate_disk(const Integrand& integrand, const Region& region,
                              const QuadratureSpec& spec,
                              Execution exec = Execution::Parallel);

/// Several integrands over one region in a single sweep; membership and node
/// generation are shared. Early exit waits for every component.
std::vector<IntegralResult> integrate_disk_batch(const BatchIntegrand& integrand,
                                                 std::size_t width, const Region& region,
                                                 const QuadratureSpec& spec,
                                                 Execution exec = Execution::Parallel);

/// Quadrature node of the disk rule: sum weight * F(w) approximates int F dA.
struct QuadNode {
  Complex w;
  double weight;
};

/// Materialised nodes for a region, grouped by annulus (no early exit).
struct NodeSet {
  std::vector<std::vector<QuadNode>> annuli;
  std::size_t size() const;
};

NodeSet discretize(const Region& region, const QuadratureSpec& spec,
                   Execution exec = Execution::Parallel);

/// Uniform M-point trapezoid against dtheta / 2pi.
double integrate_circle(const std::function<double(BoundaryPoint)>& g,
                        const QuadratureSpec& spec);
double integrate_circle(const std::function<double(BoundaryPoint)>& g, int points);

/// Pseudo-hyperbolic lattice: rings r_{i+1} = (r_i + sigma) / (1 + sigma r_i)
/// up to r_max, with angular spacing sigma (1 - r^2) / r on each ring.
std::vector<Complex> make_lattice(double sigma, double r_max);

struct SupResult {
  double value = 0.0;
  Complex argmax{0.0, 0.0};
  double lattice_gap = 0.0;
  std::size_t evaluations = 0;
};

/// Max of h over the spec's lattice, then three rounds of shrinking local
/// search around the best point. Every reported value is an attained value of
/// h, so the result is a lower bound for sup h.
SupResult sup_on_lattice(const RealIntegrand& h, const QuadratureSpec& spec,
                         Execution exec = Execution::Parallel);
SupResult sup_on_points(const RealIntegrand& h, std::span<const Complex> points,
                        double gap, Execution exec = Execution::Parallel);

}  // namespace bloch
