#pragma once

// Disk geometry: approach regions with vertex on the circle, pseudo-hyperbolic
// disks, and hyperbolic area against dA / (1 - |z|^2)^2 with dA = Lebesgue / pi.

#include "bloch/quad.hpp"
#include "bloch/region.hpp"
#include "bloch/types.hpp"

namespace bloch {

enum class TentFlavor { Koranyi, Classical };

inline constexpr double kDefaultAperture = 4.0;

/// Non-tangential approach region with vertex zeta and aperture alpha > 2.
///   Koranyi:   |1 - z conj(zeta)| < (alpha/2)(1 - |z|^2)
///   Classical: |z - zeta|         < (alpha/2)(1 - |z|)
struct TentRegion {
  BoundaryPoint vertex;
  double aperture = kDefaultAperture;
  TentFlavor flavor = TentFlavor::Koranyi;

  TentRegion() = default;
  TentRegion(BoundaryPoint v, double alpha, TentFlavor fl = TentFlavor::Koranyi);

  bool contains(Complex z) const;
  /// Largest |arg(z conj(zeta))| of a member with |z| = r (negative if none).
  double half_angle_at(double r) const;
  Region region() const;
};

bool in_tent(const TentRegion& t, Complex z);

/// |z - w| / |1 - conj(w) z|
double pseudo_distance(Complex z, Complex w);

/// {z : pseudo_distance(z, center) < pseudo_radius}
struct HyperbolicDisk {
  Complex center;
  double pseudo_radius;

  HyperbolicDisk(Complex c, double rho);
  bool contains(Complex z) const;
  Complex euclidean_center() const;
  double euclidean_radius() const;
  Region region() const;
  /// A_h of the disk in closed form: rho^2 / (1 - rho^2).
  double exact_hyperbolic_area() const;
};

/// Disk automorphism phi_a(xi) = (a + xi) / (1 + conj(a) xi), which maps 0 to a.
inline Complex mobius_from_origin(Complex a, Complex xi) {
  return (a + xi) / (1.0 + std::conj(a) * xi);
}

/// Integral of (1 - |z|^2)^{-2} dA over the region.
IntegralResult hyperbolic_area(const Region& region, const QuadratureSpec& spec);

}  // namespace bloch
