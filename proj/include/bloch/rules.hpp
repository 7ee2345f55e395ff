#pragma once

// One-dimensional quadrature rules on [-1, 1]. Node tables come from
// Boost.Math; this header only reshapes them into full symmetric arrays.

#include <array>
#include <vector>

namespace bloch {

struct GaussRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;  // sum to 2
  /// projection[p * n + a] = (2p + 1)/2 w_a P_p(x_a): Legendre coefficient p
  /// of the degree < n interpolant is sum_a projection[p * n + a] f(x_a).
  std::vector<double> projection;
};

/// n-point Gauss-Legendre rule (n >= 1). Rules are cached per n.
const GaussRule& gauss_legendre(int n);

/// 15-point Kronrod extension with its embedded 7-point Gauss rule.
struct KronrodRule {
  std::array<double, 15> nodes;
  std::array<double, 15> kronrod_weights;
  std::array<double, 15> gauss_weights;  // zero on Kronrod-only nodes
};

const KronrodRule& gauss_kronrod15();

}  // namespace bloch
