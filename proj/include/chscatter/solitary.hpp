#pragma once

#include "chscatter/jost.hpp"
#include "chscatter/liouville.hpp"
#include "chscatter/numerics.hpp"
#include "chscatter/recovery.hpp"

namespace chscatter {

/// Solitary wave m(t, x) = Phi(x - c t) of speed c > 2. Its potential is the
/// sech^2 well -(c - 2) / (2c cosh^2(kappa (y - y0))), kappa = sqrt((c - 2) / (4c)).
class SolitaryWaveSpec {
 public:
  explicit SolitaryWaveSpec(double c, double y0 = 0.0);

  double c() const noexcept { return c_; }
  double y0() const noexcept { return y0_; }
  double kappa() const noexcept;
  double depth() const noexcept;  ///< (c - 2) / (2c)
  /// c = 8/3, y0 = 0: the case with closed-form Jost function.
  bool has_exact_jost() const noexcept;

 private:
  double c_;
  double y0_;
};

double solitary_potential(const SolitaryWaveSpec& spec, double y);

/// (3e^{-y/4} + e^{-3y/4}) / (6 cosh(y/4)): the Jost function for c = 8/3, y0 = 0.
double solitary_jost_exact(double y);

/// g(y) = 4 cosh^2(y/4), the growing solution of f'' = (Q + 1/4) f for c = 8/3.
double verify_homogeneous_solution(double y);

/// int_y^inf g^{-2} sampled on ygrid: reverse 4th-order cumulative sum plus the
/// analytic tail int_{y_max}^inf, which is e^{-y_max} to relative O(e^{-y_max/2}).
SampledFunction reduction_of_order_integral(const Grid1D& ygrid);

/// g(y) int_y^inf g^{-2}, divided by its amplitude g e^{y/2} int at y_max.
SampledFunction reduction_of_order_jost(const Grid1D& ygrid);

/// Symmetric grid about y0 with spacing dy, wide enough that |Q| at the ends
/// is below decay_tol / 100 and at least 8 decay lengths 1/kappa.
Grid1D solitary_ygrid(const SolitaryWaveSpec& spec, double dy = 1e-3, double decay_tol = kDefaultDecayTol);

PotentialProfile solitary_potential_profile(const SolitaryWaveSpec& spec, const Grid1D& ygrid,
                                            double decay_tol = kDefaultDecayTol);

struct SolitaryOptions {
  double dy = 1e-3;
  double decay_tol = kDefaultDecayTol;
  JostMethod method = JostMethod::ode;
  VolterraOptions volterra{};
  /// Use solitary_jost_exact when the wave has one (c = 8/3, y0 = 0).
  bool exact_fast_path = true;
};

/// Phi recovered on xgrid from the closed-form potential.
RecoveryResult solitary_profile(const SolitaryWaveSpec& spec, const Grid1D& xgrid, const SolitaryOptions& opts = {});

/// Same, on the admissible x-grid with spacing dx.
RecoveryResult solitary_profile(const SolitaryWaveSpec& spec, double dx, const SolitaryOptions& opts = {});

/// u = (1 - d^2/dx^2)^{-1} m = (1/2) int e^{-|x - xi|} m(xi) dxi, from the two
/// one-sided exponential sweeps (trapezoid on each cell).
SampledFunction helmholtz_inverse(const MomentumProfile& m);

/// sup |-c Phi' + 2u' + u Phi' + 2 Phi u'| / (c sup |Phi'|) over nodes at least 5
/// from either end, u = helmholtz_inverse(Phi).
double traveling_wave_residual(const MomentumProfile& phi, double c);

}  // namespace chscatter
