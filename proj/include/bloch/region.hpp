#pragma once

// Measurable subsets of the disk described by a membership predicate plus an
// optional sound hint (radial bounds and an angular window per annulus) that
// the integrator uses to skip cells.

#include <functional>
#include <memory>

#include "bloch/types.hpp"

namespace bloch {

/// Arc of angles {center + t : |t| <= half_width}. A half-width >= pi means
/// the whole circle; a negative half-width means no angle qualifies.
struct AngularWindow {
  double center = 0.0;
  double half_width = std::numbers::pi;

  static AngularWindow full() { return {0.0, std::numbers::pi}; }
  static AngularWindow none() { return {0.0, -1.0}; }
  bool is_full() const { return half_width >= std::numbers::pi; }
  bool is_empty() const { return half_width < 0.0; }
  bool contains(double theta) const;
  /// True if the whole interval [lo, hi] (lo <= hi, hi - lo < 2 pi) lies in the arc.
  bool covers(double lo, double hi) const;
};

class Region {
 public:
  using Membership = std::function<bool(Complex)>;
  using WindowFn = std::function<AngularWindow(double r_lo, double r_hi)>;

  /// Region given by `membership`; points with |z| outside [r_min, r_max]
  /// are promised to be outside. `window`, when set, must return an arc
  /// containing every member with radius in [r_lo, r_hi].
  Region(Membership membership, double r_min = 0.0, double r_max = 1.0,
         WindowFn window = {});

  static Region disk();
  static Region empty();
  /// {|z - center| < radius}
  static Region euclidean_disk(Complex center, double radius);

  bool contains(Complex z) const;
  bool is_whole_disk() const { return whole_disk_; }
  bool is_empty_region() const { return r_min_ > r_max_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  bool has_window() const { return static_cast<bool>(window_); }
  AngularWindow window(double r_lo, double r_hi) const;

  Region intersect(const Region& other) const;
  Region complement() const;
  /// e^{i theta} * region.
  Region rotated(double theta) const;

 private:
  Region() = default;
  std::shared_ptr<const Membership> membership_;
  WindowFn window_;
  double r_min_ = 0.0;
  double r_max_ = 1.0;
  bool whole_disk_ = false;
};

}  // namespace bloch
