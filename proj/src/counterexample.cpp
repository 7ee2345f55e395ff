#include <algorithm>
#include <cmath>
#include <limits>

#include "bloch/operators.hpp"

namespace bloch {

namespace {

constexpr double kRhoCandidates[] = {0.2, 0.1, 0.05};

// Density >= eps on a polar sample of each D_h(z_k, rho), and the disks
// pairwise disjoint: D_h(a, rho), D_h(b, rho) are disjoint iff
// pseudo_distance(a, b) >= 2 rho / (1 + rho^2).
bool rho_admissible(const FunctionModel& B, const std::vector<Complex>& zeros, double rho,
                    double eps) {
  const double gap = 2.0 * rho / (1.0 + rho * rho);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      if (pseudo_distance(zeros[i], zeros[j]) < gap) return false;
    }
  }
  constexpr int kRings = 4, kAngles = 32;
  for (Complex a : zeros) {
    if (bloch_density(B, a, DensityFlavor::FPrime) < eps) return false;
    for (int i = 1; i <= kRings; ++i) {
      for (int k = 0; k < kAngles; ++k) {
        const Complex xi = std::polar(rho * i / kRings, kTwoPi * k / kAngles);
        if (bloch_density(B, mobius_from_origin(a, xi), DensityFlavor::FPrime) < eps) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

double separation_constant(const FunctionModel& blaschke) {
  const auto* b = blaschke.as<BlaschkeProduct>();
  if (!b) throw DomainError("separation constant: a Blaschke product is required");
  double best = std::numeric_limits<double>::infinity();
  for (Complex a : b->zeros) best = std::min(best, bloch_density(blaschke, a, DensityFlavor::FPrime));
  return best;
}

CounterexampleResult counterexample_profile(int K, double eps, int m_max,
                                            const QuadratureSpec& spec) {
  if (K < 1) throw DomainError("counterexample: K must be positive");
  if (m_max < 2 || m_max > K - 2) throw DomainError("counterexample: need 2 <= m_max <= K - 2");
  if (!(eps > 0.0)) throw DomainError("counterexample: eps must be positive");
  const FunctionModel B = blaschke_geometric(K);
  CounterexampleResult out;
  out.K = K;
  out.eps = eps;
  out.delta_hat = separation_constant(B);
  if (eps > out.delta_hat / 4.0) {
    throw DomainError("counterexample: eps must not exceed delta_hat / 4 = " +
                      std::to_string(out.delta_hat / 4.0));
  }

  const auto& zeros = B.as<BlaschkeProduct>()->zeros;
  const std::vector<Complex> first(zeros.begin(), zeros.begin() + m_max);
  for (double rho : kRhoCandidates) {
    if (rho_admissible(B, first, rho, eps)) {
      out.rho_hat = rho;
      break;
    }
  }

  std::vector<Complex> probes;
  for (int m = 2; m <= m_max; ++m) probes.emplace_back(1.0 - std::ldexp(1.0, -m), 0.0);
  const XiaoResult x = xiao_functional(B, eps, spec, probes, DensityFlavor::FPrime);
  out.flags = x.flags;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    out.rows.push_back({static_cast<int>(i) + 2, x.integrals[i], x.error_estimates[i],
                        out.delta_hat});
  }

  if (out.rho_hat) {
    const double rho = *out.rho_hat;
    const double reference = hyperbolic_area(HyperbolicDisk(0.0, rho).region(), spec).real();
    for (int k = 1; k <= m_max; ++k) {
      const HyperbolicDisk d(zeros[static_cast<std::size_t>(k - 1)], rho);
      out.mobius.push_back({k, hyperbolic_area(d.region(), spec).real(), reference,
                            d.exact_hyperbolic_area()});
    }
  }
  return out;
}

}  // namespace bloch
