#include "bloch/hypgeo.hpp"

#include <algorithm>
#include <cmath>

namespace bloch {

namespace {

double angle_offset(double theta, double centre) {
  return std::remainder(theta - centre, kTwoPi);
}

}  // namespace

bool AngularWindow::contains(double theta) const {
  if (is_empty()) return false;
  if (is_full()) return true;
  return std::abs(angle_offset(theta, center)) <= half_width;
}

bool AngularWindow::covers(double lo, double hi) const {
  if (is_empty()) return false;
  if (is_full()) return true;
  const double a = angle_offset(lo, center);
  const double b = a + (hi - lo);
  return a >= -half_width && b <= half_width;
}

Region::Region(Membership membership, double r_min, double r_max, WindowFn window)
    : membership_(std::make_shared<const Membership>(std::move(membership))),
      window_(std::move(window)),
      r_min_(std::max(0.0, r_min)),
      r_max_(std::min(1.0, r_max)) {}

Region Region::disk() {
  Region r([](Complex) { return true; });
  r.whole_disk_ = true;
  return r;
}

Region Region::empty() { return Region([](Complex) { return false; }, 1.0, 0.0); }

Region Region::euclidean_disk(Complex center, double radius) {
  const double c = std::abs(center);
  WindowFn window;
  if (c > radius) {
    const double arg = std::arg(center);
    const double half = std::asin(std::min(1.0, radius / c));
    window = [arg, half](double, double) { return AngularWindow{arg, half}; };
  }
  return Region([center, radius](Complex z) { return std::abs(z - center) < radius; },
                std::max(0.0, c - radius), c + radius, std::move(window));
}

bool Region::contains(Complex z) const { return (*membership_)(z); }

AngularWindow Region::window(double r_lo, double r_hi) const {
  return window_ ? window_(r_lo, r_hi) : AngularWindow::full();
}

Region Region::intersect(const Region& other) const {
  if (is_whole_disk()) return other;
  if (other.is_whole_disk()) return *this;
  auto a = membership_;
  auto b = other.membership_;
  WindowFn wa = window_;
  WindowFn wb = other.window_;
  WindowFn window;
  if (wa || wb) {
    // The narrower arc is a sound hint for the intersection.
    window = [wa, wb](double lo, double hi) {
      const AngularWindow x = wa ? wa(lo, hi) : AngularWindow::full();
      const AngularWindow y = wb ? wb(lo, hi) : AngularWindow::full();
      if (x.is_empty() || y.is_empty()) return AngularWindow::none();
      return x.half_width <= y.half_width ? x : y;
    };
  }
  return Region([a, b](Complex z) { return (*a)(z) && (*b)(z); },
                std::max(r_min_, other.r_min_), std::min(r_max_, other.r_max_),
                std::move(window));
}

Region Region::complement() const {
  if (is_whole_disk()) return Region::empty();
  auto a = membership_;
  return Region([a](Complex z) { return !(*a)(z); });
}

Region Region::rotated(double theta) const {
  const Complex back = std::polar(1.0, -theta);
  auto a = membership_;
  WindowFn window;
  if (window_) {
    WindowFn inner = window_;
    window = [inner, theta](double lo, double hi) {
      AngularWindow w = inner(lo, hi);
      w.center += theta;
      return w;
    };
  }
  Region r([a, back](Complex z) { return (*a)(z * back); }, r_min_, r_max_, std::move(window));
  r.whole_disk_ = whole_disk_;
  return r;
}

TentRegion::TentRegion(BoundaryPoint v, double alpha, TentFlavor fl)
    : vertex(v), aperture(alpha), flavor(fl) {
  if (!(alpha > 2.0)) throw DomainError("tent aperture must exceed 2");
}

bool TentRegion::contains(Complex z) const {
  const double a = 0.5 * aperture;
  const double r2 = std::norm(z);
  if (flavor == TentFlavor::Koranyi) {
    return std::abs(1.0 - z * std::conj(vertex.value())) < a * (1.0 - r2);
  }
  return std::abs(z - vertex.value()) < a * (1.0 - std::sqrt(r2));
}

double TentRegion::half_angle_at(double r) const {
  // |1 - r e^{i phi}|^2 < B^2  <=>  cos(phi) > (1 + r^2 - B^2) / (2 r)
  const double a = 0.5 * aperture;
  const double bound = flavor == TentFlavor::Koranyi ? a * (1.0 - r * r) : a * (1.0 - r);
  if (r <= 0.0) return bound > 1.0 ? std::numbers::pi : -1.0;
  const double c = (1.0 + r * r - bound * bound) / (2.0 * r);
  if (c >= 1.0) return -1.0;
  if (c <= -1.0) return std::numbers::pi;
  return std::acos(c);
}

Region TentRegion::region() const {
  const TentRegion t = *this;
  auto window = [t](double lo, double hi) {
    // Dense sampling of the half-angle plus the largest jump between samples.
    constexpr int kSamples = 64;
    double best = -1.0;
    double prev = t.half_angle_at(lo);
    double jump = 0.0;
    best = prev;
    for (int i = 1; i <= kSamples; ++i) {
      const double v = t.half_angle_at(lo + (hi - lo) * i / kSamples);
      jump = std::max(jump, std::abs(v - prev));
      best = std::max(best, v);
      prev = v;
    }
    if (best < 0.0) return AngularWindow::none();
    const double half = best + jump + 1e-9;
    if (half >= std::numbers::pi) return AngularWindow::full();
    return AngularWindow{t.vertex.theta(), half};
  };
  return Region([t](Complex z) { return t.contains(z); }, 0.0, 1.0, window);
}

bool in_tent(const TentRegion& t, Complex z) { return t.contains(z); }

double pseudo_distance(Complex z, Complex w) {
  return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

HyperbolicDisk::HyperbolicDisk(Complex c, double rho) : center(c), pseudo_radius(rho) {
  if (!(std::norm(c) < 1.0)) throw DomainError("hyperbolic disk centre must lie in the disk");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("pseudo-hyperbolic radius must lie in (0, 1)");
}

bool HyperbolicDisk::contains(Complex z) const {
  return pseudo_distance(z, center) < pseudo_radius;
}

Complex HyperbolicDisk::euclidean_center() const {
  const double r2 = pseudo_radius * pseudo_radius;
  return center * (1.0 - r2) / (1.0 - r2 * std::norm(center));
}

double HyperbolicDisk::euclidean_radius() const {
  const double r2 = pseudo_radius * pseudo_radius;
  return pseudo_radius * (1.0 - std::norm(center)) / (1.0 - r2 * std::norm(center));
}

Region HyperbolicDisk::region() const {
  const HyperbolicDisk d = *this;
  const Complex c = euclidean_center();
  const double rad = euclidean_radius();
  const double cabs = std::abs(c);
  Region::WindowFn window;
  if (cabs > rad) {
    const double arg = std::arg(c);
    const double half = std::asin(std::min(1.0, rad / cabs)) + 1e-12;
    window = [arg, half](double, double) { return AngularWindow{arg, half}; };
  }
  // Slightly padded radial bounds keep the hint sound under rounding.
  const double pad = 1e-12;
  return Region([d](Complex z) { return d.contains(z); }, cabs - rad - pad, cabs + rad + pad,
                std::move(window));
}

double HyperbolicDisk::exact_hyperbolic_area() const {
  const double r2 = pseudo_radius * pseudo_radius;
  return r2 / (1.0 - r2);
}

IntegralResult hyperbolic_area(const Region& region, const QuadratureSpec& spec) {
  return integrate_disk(
      [](Complex z) {
        const double s = 1.0 - std::norm(z);
        return Complex{1.0 / (s * s), 0.0};
      },
      region, spec);
}

}  // namespace bloch
