#include <algorithm>
#include <cmath>

#include "bloch/hypgeo.hpp"
#include "bloch/quad.hpp"
#include "bloch/quad_kernels.hpp"

namespace bloch {

std::vector<Complex> make_lattice(double sigma, double r_max) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("lattice gap must lie in (0, 1)");
  std::vector<Complex> pts{Complex{0.0, 0.0}};
  double r = 0.0;
  for (int ring = 1;; ++ring) {
    r = (r + sigma) / (1.0 + sigma * r);
    if (r > r_max) break;
    const double step = sigma * (1.0 - r * r) / r;
    const auto count = static_cast<std::size_t>(std::ceil(kTwoPi / step));
    const double offset = (ring % 2 == 0) ? 0.0 : 0.5;
    for (std::size_t k = 0; k < count; ++k) {
      pts.push_back(std::polar(r, kTwoPi * (static_cast<double>(k) + offset) /
                                      static_cast<double>(count)));
    }
  }
  return pts;
}

SupResult sup_on_points(const RealIntegrand& h, std::span<const Complex> points, double gap,
                        Execution exec) {
  SupResult out;
  out.lattice_gap = gap;
  if (points.empty()) return out;
  std::vector<double> values(points.size());
  if (exec == Execution::Parallel) {
    kernels::point_values_omp(h, points, values);
  } else {
    kernels::point_values_serial(h, points, values);
  }
  const auto best = std::max_element(values.begin(), values.end());
  out.value = *best;
  out.argmax = points[static_cast<std::size_t>(best - values.begin())];
  out.evaluations = points.size();

  // Shrinking 7x7 searches in Mobius-transported local coordinates.
  constexpr int kHalf = 3;
  double step = gap / 3.0;
  for (int round = 0; round < 3; ++round) {
    const Complex centre = out.argmax;
    for (int a = -kHalf; a <= kHalf; ++a) {
      for (int b = -kHalf; b <= kHalf; ++b) {
        if (a == 0 && b == 0) continue;
        const Complex xi{step * a, step * b};
        if (std::abs(xi) >= 1.0) continue;
        const Complex z = mobius_from_origin(centre, xi);
        const double v = h(z);
        ++out.evaluations;
        if (v > out.value) {
          out.value = v;
          out.argmax = z;
        }
      }
    }
    step /= 3.0;
  }
  return out;
}

SupResult sup_on_lattice(const RealIntegrand& h, const QuadratureSpec& spec, Execution exec) {
  spec.validate();
  const auto lattice = make_lattice(spec.sup_lattice_gap, spec.r_max());
  return sup_on_points(h, lattice, spec.sup_lattice_gap, exec);
}

}  // namespace bloch
