#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn {

/// Macroscopic hexagon proportions and a location inside them.
struct LimitRegime {
  double N = 1;
  double S = 1;
  double T = 2;
  double t = 1;
  double x = 1;

  /// Validates 0 < S <= T, N > 0, 0 <= t <= T and
  /// max(0, t+S-T) <= x <= min(t,S)+N; throws InputError.
  static LimitRegime make(double N, double S, double T, double t, double x);

  /// The same regime after the flip (t, x) -> (T - t, S + N - x).
  LimitRegime flipped() const;

  std::string str() const;
};

struct LimitKernelParams {
  double c = 1;    // amplitude
  double phi = 0;  // arc half-angle in [0, pi]
  double D = 0;    // unclamped arccos argument
};

/// c and phi at the regime point. D > 1 gives phi = 0, D < -1 gives pi.
/// Throws BoundaryRegime when a box distance in a denominator vanishes.
LimitKernelParams limit_params(const LimitRegime& regime);

/// Coefficients of the limiting three-term operator. Checks that
/// (-N(N+T) - A) / (2B) reproduces D; throws BoundaryRegime when B = 0.
struct Tridiagonal {
  double A = 0;
  double B = 0;
};
Tridiagonal limit_tridiagonal(const LimitRegime& regime);

/// sin(phi d) / (pi d), and phi / pi at d = 0.
double sine_kernel_static(double phi, long d);

enum class ArcSide { Right, Left };
std::string to_string(ArcSide side);

/// Right for dt <= 0, left otherwise (dt = t_hat - s_hat).
ArcSide arc_side(long dt);

struct ContourValue {
  std::complex<double> value;
  long panels = 0;
};

/// (1/2 pi i) int (1 + c w)^dt w^(dx-1) dw along the unit-circle arc from
/// e^{-i phi} to e^{i phi} through 1 (Right) or through -1 (Left), by
/// adaptive Simpson in the angle (absolute tolerance 1e-12, at most 2^20
/// panels). Throws PoleOnContour when -1/c lies on the arc and dt < 0.
ContourValue arc_integral_quadrature(const LimitKernelParams& params, long dx,
                                     long dt, ArcSide side);

/// The same integral for dt >= 0 as sum_k C(dt,k) c^k times closed-form arc
/// integrals of w^(dx+k-1).
double arc_integral_binomial(const LimitKernelParams& params, long dx, long dt,
                             ArcSide side);

/// Extended sine kernel. Uses the binomial form when dt >= 0 and checks it
/// against quadrature (1e-10); always checks the imaginary part. Throws
/// IdentityViolation if either check fails.
double extended_sine_kernel(const LimitKernelParams& params, long dx, long dt,
                            ArcSide side);
double extended_sine_kernel(const LimitKernelParams& params, long dx, long dt);

/// c^dt K(1/c, phi; -dx-dt, dt): the kernel after w -> 1/w.
double inverted_extended_sine_kernel(const LimitKernelParams& params, long dx,
                                     long dt);

/// (1/2 pi i) int (1 - w)^dt w^(m-1) dw along the circle of radius c from
/// conj(z) to z, z = c e^{i psi}, over the right arc when dt >= 0 and the
/// left one otherwise; m = dx_lattice - dt/2 (dt even).
std::complex<double> or_kernel(double radius, double psi, long dx_lattice,
                               long dt);

/// (-1)^dx K(c, phi; dx, dt) - (delta - K_OR(c, pi - phi; dx + dt/2, dt) / c^dx).
/// For c > 1 the inversion w -> 1/w is applied first. Needs even dt.
double or_duality_residual(const LimitKernelParams& params, long dx, long dt);

enum class Region { Inside, FrozenEmpty, FrozenFull };
std::string to_string(Region r);

/// T^2 x^2 + (S+N)^2 t^2 + 2xt(NT - ST - 2SN) + 2t(SN^2 - NTS - N^2 T + S^2 N)
///   + 2x(NTS - NT^2) + N^2 (T-S)^2, negative strictly inside the ellipse.
double ellipse_form(const LimitRegime& regime);

/// Inside when the form is <= 0, otherwise frozen by the sign of D.
Region ellipse_classify(const LimitRegime& regime);

/// Limit density: phi/pi inside, exactly 0 or 1 on the frozen side.
double limit_density(const LimitRegime& regime);

/// Discriminant of the form restricted to each hexagon side line, in the
/// order t=0, t=T, x=0, x=S+N, x=t+N, x=t-(T-S).
struct SideDiscriminant {
  std::string side;
  double discriminant = 0;
};
std::vector<SideDiscriminant> ellipse_tangency(double N, double S, double T);

/// Integer model and location nearest to rho times the regime, rounded half
/// up. x is nudged by at most one when a required point leaves its support.
struct ScaledPoint {
  double rho = 0;
  ModelParams model;
  int t = 0;
  int x = 0;
  int repair = 0;  // applied change to x
};
ScaledPoint scale_regime(const LimitRegime& regime, double rho,
                         const std::vector<std::pair<long, long>>& offsets);

/// sqrt((T-t-S+x)(t+N-x) / ((t+N)(T+N-t))): the per-step factor removed from
/// the pre-limit kernel before comparison.
double gauge_step_factor(const LimitRegime& regime);

struct ProbeCell {
  long dx = 0;
  long dt = 0;
  double prelimit = 0;
  double limit = 0;
  double error = 0;
};

struct ProbeRow {
  ScaledPoint point;
  std::vector<ProbeCell> cells;
  double max_error = 0;
};

struct ProbeTable {
  LimitRegime regime;
  LimitKernelParams params;
  std::vector<ProbeRow> rows;
  /// max_error never increases along the rho list.
  bool non_increasing = true;
};

/// Compares the gauge-aligned pre-limit kernel
///   K(x+dx, t; x, t+dt) / a^dt,   a = gauge_step_factor(regime),
/// with extended_sine_kernel(dx, dt) for each offset and scale.
ProbeTable convergence_probe(const LimitRegime& regime,
                             const std::vector<std::pair<long, long>>& offsets,
                             const std::vector<double>& rhos,
                             const NumericBackend& backend = NumericBackend::exact());

/// One-point density K(x, t; x, t) of the scaled model.
struct ScaledDensity {
  ScaledPoint point;
  double value = 0;
};
ScaledDensity prelimit_density(const LimitRegime& regime, double rho);

}  // namespace hahn
