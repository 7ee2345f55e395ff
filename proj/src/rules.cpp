#include "bloch/rules.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace bloch {

namespace {

GaussRule build_gauss(int n) {
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  GaussRule rule;
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (x == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w);
    } else {
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  std::vector<std::size_t> idx(rule.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  GaussRule sorted;
  for (std::size_t i : idx) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  const auto m = static_cast<std::size_t>(n);
  sorted.projection.resize(m * m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t a = 0; a < m; ++a) {
      sorted.projection[p * m + a] = 0.5 * (2.0 * p + 1.0) * sorted.weights[a] *
                                     boost::math::legendre_p(static_cast<int>(p), sorted.nodes[a]);
    }
  }
  return sorted;
}

KronrodRule build_kronrod() {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& x = GK::abscissa();   // 0 first, then positive ascending
  const auto& wk = GK::weights();
  const auto& wg = G::weights();    // Gauss nodes are the even-indexed abscissae
  KronrodRule rule{};
  // Slot 7 is the centre; slots 8..14 mirror 6..0.
  for (std::size_t i = 0; i < 8; ++i) {
    const double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
    rule.nodes[7 + i] = x[i];
    rule.kronrod_weights[7 + i] = wk[i];
    rule.gauss_weights[7 + i] = g;
    rule.nodes[7 - i] = -x[i];
    rule.kronrod_weights[7 - i] = wk[i];
    rule.gauss_weights[7 - i] = g;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order must be in [1, 64]");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

const KronrodRule& gauss_kronrod15() {
  static const KronrodRule rule = build_kronrod();
  return rule;
}

}  // namespace bloch
