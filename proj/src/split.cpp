#include <cmath>

#include "bloch/operators.hpp"
#include "bloch/summation.hpp"

namespace bloch {

SplitResult split(const FunctionModel& f, double eps, const KernelParams& kp,
                  std::span<const Complex> points, const QuadratureSpec& spec,
                  const SplitOptions& opt) {
  if (!(eps > 0.0)) throw DomainError("split: eps must be positive");
  if (opt.lattice_depth < 1) throw DomainError("split: lattice depth must be positive");
  const Region omega = level_set(f, eps, DensityFlavor::Radial);

  SplitResult out;
  out.points.assign(points.begin(), points.end());
  out.beta = kp.beta();
  out.eps = eps;
  const ReproduceResult f2 = reproduce(f, points, kp, spec, omega);
  out.flags = f2.flags;
  out.f2_values = f2.values;
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.f1_values.push_back(f.value(points[k]) - out.f2_values[k]);
  }

  if (!opt.estimate_f1_norm) return out;

  // Rf_2(z) = sum_i a_i ((1 - z conj(w_i))^{-m} - 1) over the nodes of Omega.
  const NodeSet nodes = discretize(omega, spec);
  std::vector<Complex> coef, ws;
  coef.reserve(nodes.size());
  ws.reserve(nodes.size());
  for (const auto& annulus : nodes.annuli) {
    for (const QuadNode& n : annulus) {
      coef.push_back(n.weight * kp.weight(n.w) * f.radial_derivative(n.w));
      ws.push_back(n.w);
    }
  }
  out.omega_nodes = coef.size();
  const Complex coef_sum = pairwise_sum(std::span<const Complex>(coef));
  const KernelParams k = kp;
  auto density = [&](Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < coef.size(); ++i) {
      acc += coef[i] * (radial_kernel_L(z, ws[i], k) + 1.0);
    }
    const Complex rf1 = f.radial_derivative(z) - (acc - coef_sum);
    return (1.0 - std::norm(z)) * std::abs(rf1);
  };
  const int depth = std::min(spec.boundary_depth, opt.lattice_depth);
  const auto lattice = make_lattice(opt.lattice_gap, 1.0 - std::ldexp(1.0, -depth));
  const SupResult sup = sup_on_points(density, lattice, opt.lattice_gap);
  out.f1_bloch_estimate = sup.value;
  out.f1_argmax = sup.argmax;
  return out;
}

Complex radial_f1_direct(const FunctionModel& f, double eps, const KernelParams& kp, Complex z,
                         const QuadratureSpec& spec) {
  const Region rest = level_set(f, eps, DensityFlavor::Radial).complement();
  auto integrand = [&](Complex w) {
    return f.radial_derivative(w) * kp.weight(w) * radial_kernel_L(z, w, kp);
  };
  return integrate_disk(integrand, rest, spec).value;
}

}  // namespace bloch
