#pragma once

// Per-annulus quadrature kernels. Each kernel exists twice: an OpenMP version
// used in production and a plain loop kept as the reference. Both write one
// row per cell into caller-owned tables, so the later pairwise reduction sees
// identical inputs and the two paths agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bloch/quad.hpp"
#include "bloch/region.hpp"
#include "bloch/rules.hpp"

namespace bloch::kernels {

struct AnnulusGeometry {
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::size_t cells = 0;  // cells around the full circle
  double dtheta = 0.0;

  static AnnulusGeometry dyadic(int j, int angular_base);
  double theta_lo(std::size_t cell) const { return static_cast<double>(cell) * dtheta; }
};

struct CellContext {
  const Region* region = nullptr;
  const GaussRule* cell_rule = nullptr;   // tensor rule for full cells
  const GaussRule* chord_rule = nullptr;  // radial rule on chords of partial cells
  double geometry_tolerance = 1e-8;       // relative to the cell's area
  // A full cell is split 2x2 while its estimated quadrature error exceeds
  // both this fraction of its |integral| and the floor times its share of the
  // disk's normalised area.
  double cell_relative_tolerance = 1e-9;
  double cell_absolute_floor = 0.0;
};

/// Cells to visit in one annulus. `straddles[i]` marks cells that cross the
/// boundary of the region's hint and must be resolved as partial cells.
struct CellList {
  std::vector<std::size_t> index;
  std::vector<std::uint8_t> straddles;
  std::size_t size() const { return index.size(); }
};

/// Output tables: rows follow CellList order.
struct CellTables {
  std::vector<Complex> sums;      // cells x width
  std::vector<double> abs_sums;   // cells x width, sum of |weight * F|
  std::vector<double> rel_error;  // per cell, relative geometric error
  std::vector<double> quad_error;  // cells x width, estimated error of full cells
  std::vector<std::uint8_t> partial;

  void resize(std::size_t cells, std::size_t width);
};

void annulus_sums_omp(const AnnulusGeometry& geom, const CellList& cells,
                      const CellContext& ctx, const BatchIntegrand& f, std::size_t width,
                      CellTables& out);
void annulus_sums_serial(const AnnulusGeometry& geom, const CellList& cells,
                         const CellContext& ctx, const BatchIntegrand& f, std::size_t width,
                         CellTables& out);

void annulus_nodes_omp(const AnnulusGeometry& geom, const CellList& cells,
                       const CellContext& ctx, std::vector<std::vector<QuadNode>>& out);
void annulus_nodes_serial(const AnnulusGeometry& geom, const CellList& cells,
                          const CellContext& ctx, std::vector<std::vector<QuadNode>>& out);

void point_values_omp(const RealIntegrand& h, std::span<const Complex> points,
                      std::span<double> out);
void point_values_serial(const RealIntegrand& h, std::span<const Complex> points,
                         std::span<double> out);

}  // namespace bloch::kernels
