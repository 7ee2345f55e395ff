#pragma once

// Norms, area functions, tent volumes, the kernel decomposition of a Bloch
// function, numerical checks of the integral lemmas, and the Blaschke
// counterexample. Everything is on the unit disk (n = 1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bloch/holofn.hpp"
#include "bloch/hypgeo.hpp"
#include "bloch/quad.hpp"

namespace bloch {

enum Flag : unsigned {
  kFlagDivergent = 1u << 0,
  kFlagTruncatedTail = 1u << 1,
  kFlagNoPlateau = 1u << 2,
};

/// "DIVERGENT|NO_PLATEAU" style text; empty when no flag is set.
std::string flag_text(unsigned flags);

struct Estimate {
  double value = 0.0;
  double error_estimate = 0.0;
  unsigned flags = 0;

  bool has(Flag f) const { return (flags & f) != 0; }
};

unsigned flags_of(const IntegralResult& r);
Estimate estimate_of(const IntegralResult& r);

// ---------------------------------------------------------------------------
// Bloch densities and level sets

/// f' flavour: (1 - |z|^2)|f'(z)|; radial flavour: (1 - |z|^2)|z f'(z)|.
enum class DensityFlavor { FPrime, Radial };

double bloch_density(const FunctionModel& f, Complex z, DensityFlavor flavor);

/// Sup of the density over the spec's lattice (a lower bound for the seminorm).
SupResult bloch_seminorm(const FunctionModel& f, const QuadratureSpec& spec,
                         DensityFlavor flavor = DensityFlavor::FPrime,
                         Execution exec = Execution::Parallel);

/// {z : density(z) >= eps}
Region level_set(const FunctionModel& f, double eps, DensityFlavor flavor);

// ---------------------------------------------------------------------------
// Tent quantities

struct TentOptions {
  double aperture = kDefaultAperture;
  TentFlavor flavor = TentFlavor::Koranyi;
};

/// (int_{Gamma(zeta)} |g|^2 dA)^{1/2} with g = f' (Lusin) or g = Rf (admissible).
Estimate area_function(const FunctionModel& f, BoundaryPoint zeta, const QuadratureSpec& spec,
                       const TentOptions& tent = {},
                       DensityFlavor flavor = DensityFlavor::FPrime);

/// A_h(Gamma(zeta) ∩ Omega_eps(f)).
Estimate tent_levelset_volume(const FunctionModel& f, double eps, BoundaryPoint zeta,
                              const QuadratureSpec& spec, const TentOptions& tent = {},
                              DensityFlavor flavor = DensityFlavor::FPrime);

struct TentProfile {
  BoundaryPoint zeta;
  double area_fn = 0.0;
  double tent_volume = 0.0;
  double eps = 0.0;
  double alpha = 0.0;
  unsigned flags = 0;
};

struct CriterionResult {
  double value = 0.0;  // (int V_h^{p/2} dsigma)^{1/p}
  unsigned flags = 0;  // union over the sampled vertices
  std::vector<TentProfile> profile;
};

/// L^p(T) norm of zeta -> A_h(Gamma(zeta) ∩ Omega_eps)^{1/2} over M vertices.
/// Set `with_area_fn` to also fill the Lusin area function per vertex.
CriterionResult criterion_lp(const FunctionModel& f, double eps, double p,
                             const QuadratureSpec& spec, const TentOptions& tent = {},
                             DensityFlavor flavor = DensityFlavor::FPrime,
                             bool with_area_fn = false);

// ---------------------------------------------------------------------------
// Hardy norm

struct HardyResult {
  double value = 0.0;               // extrapolated norm, or the raw sup without a plateau
  double raw_sup = 0.0;             // max_j of the circle means, to the power 1/p
  double error_estimate = 0.0;
  unsigned flags = 0;
  std::vector<double> radii;        // r_j = 1 - 2^{-j}
  std::vector<double> means;        // int |f(r_j zeta)|^p dsigma
};

HardyResult hardy_norm(const FunctionModel& f, double p, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Kernel decomposition

/// Weight c_beta (1 - |w|^2)^beta with c_beta = beta + 1, so v_beta(D) = 1.
class KernelParams {
 public:
  explicit KernelParams(double beta = 3.0);
  /// Also enforces beta > max(0, 2/p - 1), needed for the L^p control of Af_2.
  static KernelParams for_exponent(double p, double beta);
  /// 3, raised to ceil(2/p - 1) + 1 when that is larger.
  static double default_beta(double p);

  double beta() const { return beta_; }
  double c_beta() const { return c_beta_; }
  double weight(Complex w) const;
  /// v_beta(D) measured by quadrature at construction.
  double measured_mass() const { return mass_; }

 private:
  double beta_;
  double c_beta_;
  double mass_;
};

/// L(z, w) = int_0^1 ((1 - t z conj(w))^{-(2 + beta)} - 1) dt / t.
Complex kernel_L(Complex z, Complex w, const KernelParams& kp);
/// The same integral as a function of x = z conj(w) and m = 2 + beta.
Complex kernel_L_x(Complex x, double m);
/// R_z L(z, w) = (1 - z conj(w))^{-(2 + beta)} - 1 in closed form.
Complex radial_kernel_L(Complex z, Complex w, const KernelParams& kp);
/// R_z L by t-quadrature of the differentiated integrand; used as a check.
Complex radial_kernel_L_quadrature(Complex z, Complex w, const KernelParams& kp);

struct ReproduceResult {
  std::vector<Complex> values;
  std::vector<double> error_estimates;
  unsigned flags = 0;
};

/// f(0) + int Rf(w) L(z, w) dv_beta(w) at every point in one sweep.
ReproduceResult reproduce(const FunctionModel& f, std::span<const Complex> points,
                          const KernelParams& kp, const QuadratureSpec& spec,
                          const Region& region = Region::disk());
Complex reproduce(const FunctionModel& f, Complex z, const KernelParams& kp,
                  const QuadratureSpec& spec);

struct SplitOptions {
  /// The f_1 sup runs on its own lattice: coarser gap and a capped depth,
  /// since every lattice point costs a sum over the nodes of Omega_eps.
  double lattice_gap = 0.35;
  int lattice_depth = 10;
  /// Off: skip the f_1 sup and only return the pointwise split.
  bool estimate_f1_norm = true;
};

struct SplitResult {
  std::vector<Complex> points;
  std::vector<Complex> f2_values;
  std::vector<Complex> f1_values;  // f - f2
  double f1_bloch_estimate = 0.0;
  Complex f1_argmax{0.0, 0.0};
  double beta = 0.0;
  double eps = 0.0;
  std::size_t omega_nodes = 0;
  unsigned flags = 0;
};

/// Splits f = f_1 + f_2 along Omega_eps(f) (radial flavour).
SplitResult split(const FunctionModel& f, double eps, const KernelParams& kp,
                  std::span<const Complex> points, const QuadratureSpec& spec,
                  const SplitOptions& opt = {});

/// Rf_1(z) integrated directly over the complement of Omega_eps; a check on
/// the Rf - Rf_2 route used by split.
Complex radial_f1_direct(const FunctionModel& f, double eps, const KernelParams& kp, Complex z,
                         const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Xiao functional and the Blaschke counterexample

struct XiaoResult {
  double value = 0.0;  // max over probes
  Complex argmax{0.0, 0.0};
  std::vector<Complex> probes;
  std::vector<double> integrals;
  std::vector<double> error_estimates;
  unsigned flags = 0;
};

/// Radial probes w_m = 1 - 2^{-m}, m = 1..J-2, plus 16 directions at the
/// radii 1 - 2^{-j}, j = 1..J-2.
std::vector<Complex> default_xiao_probes(const QuadratureSpec& spec);

/// max_w int_{Omega_eps(f)} |1 - conj(w) z|^{-2} dA(z).
XiaoResult xiao_functional(const FunctionModel& f, double eps, const QuadratureSpec& spec,
                           std::span<const Complex> probes = {},
                           DensityFlavor flavor = DensityFlavor::FPrime);

/// min_k (1 - |z_k|^2)|B'(z_k)| over the zeros.
double separation_constant(const FunctionModel& blaschke);

struct CounterexampleRow {
  int m = 0;
  double integral = 0.0;  // I(w_m)
  double error_estimate = 0.0;
  double sep_check = 0.0;  // delta hat
};

struct MobiusCheck {
  int k = 0;
  double area = 0.0;        // A_h(D_h(z_k, rho)) by quadrature
  double reference = 0.0;   // A_h(D_h(0, rho)) by quadrature
  double exact = 0.0;       // rho^2 / (1 - rho^2)
};

struct CounterexampleResult {
  int K = 0;
  double eps = 0.0;
  double delta_hat = 0.0;
  std::optional<double> rho_hat;  // empty when no candidate radius qualifies
  std::vector<CounterexampleRow> rows;
  std::vector<MobiusCheck> mobius;
  unsigned flags = 0;
};

/// B = blaschke_geometric(K); rows for m = 2..m_max.
CounterexampleResult counterexample_profile(int K, double eps, int m_max,
                                            const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Integral lemmas

struct Lemma1Result {
  std::vector<Complex> z;
  std::vector<double> integrals;
  std::vector<double> ratios;  // I(z) (1 - |z|^2)^s
  double slope = 0.0;          // of log I against log 1/(1 - |z|^2)
  double max_ratio = 0.0;
  unsigned flags = 0;
};

/// I(z) = int (1 - |w|^2)^t / |1 - z conj(w)|^{2 + t + s} dA(w).
Lemma1Result verify_lemma1(double t, double s, std::span<const Complex> z_list,
                           const QuadratureSpec& spec);

struct Lemma2Result {
  std::vector<double> integrals;
  std::vector<double> ratios;  // integral |1 - z conj(a)|^{r + t - s - 2}
  double max_ratio = 0.0;
  unsigned flags = 0;
};

/// int (1 - |w|^2)^s / (|1 - z conj(w)|^r |1 - a conj(w)|^t) dA(w) per pair.
Lemma2Result verify_lemma2(double s, double r, double t,
                           std::span<const std::pair<Complex, Complex>> pairs,
                           const QuadratureSpec& spec);

struct PointMass {
  Complex z;
  double weight = 1.0;
};

struct Lemma3Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// lhs = int_T (sum_i m_i ((1 - |z_i|^2)/|1 - z_i conj(zeta)|)^b)^s dsigma,
/// rhs = int_T mu(Gamma(zeta))^s dsigma, both by M-point circle quadrature.
Lemma3Result verify_lemma3(std::span<const PointMass> mu, double b, double s,
                           const QuadratureSpec& spec, const TentOptions& tent = {});

}  // namespace bloch
