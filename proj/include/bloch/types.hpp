#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bloch {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised for arguments outside an operation's domain (bad parameters,
/// points outside the disk, malformed configs).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the open unit disk. Construction rejects |z| >= 1.
class DiskPoint {
 public:
  DiskPoint() = default;
  DiskPoint(double re, double im) : DiskPoint(Complex{re, im}) {}
  explicit DiskPoint(Complex z) : z_(z) {
    if (!(std::norm(z) < 1.0)) {
      throw DomainError("DiskPoint must satisfy |z| < 1");
    }
  }

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  Complex value() const { return z_; }
  operator Complex() const { return z_; }

 private:
  Complex z_{0.0, 0.0};
};

/// A point of the unit circle, stored by its angle in [0, 2*pi).
class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double theta) : theta_(normalize(theta)) {}

  double theta() const { return theta_; }
  Complex value() const { return std::polar(1.0, theta_); }

  static double normalize(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
  }

 private:
  double theta_ = 0.0;
};

}  // namespace bloch
