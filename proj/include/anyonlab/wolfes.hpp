#pragma once
// Three-body extension with both inverse-sin^2 and inverse-cos^2 angular
// terms:
//
//   -(a/pi)^2 K'' + [ g / sin^2(pi x/a) + f / cos^2(pi x/a) ] K = (lambda/3)^2 K,
//
// with g = s^2 - 1/4, f = w^2 - 1/4 and both couplings in (-1/4, 0). The
// period-a cell carries two inequivalent singularities (a sin-type pole at
// cell boundaries, a cos-type pole at the cell midpoint), so each bracket
// [3(2n+1-s-w), 3(2n+1+s+w)] splits into two true sub-bands separated by an
// interior gap with antiperiodic edges at 3(2n+1 -+ (s-w)). Sub-bands are
// indexed nu = 0, 1, 2, ... from below; the Floquet phase on sub-band nu is
// theta with cos(theta) = (-1)^nu cos(ka), as in the single-pole lattice.

#include <utility>

#include "anyonlab/types.hpp"

namespace anyonlab::wolfes {

struct WolfesParams {
  Real g = 0, f = 0;  // couplings, both in (-1/4, 0)
  Real s = 0, w = 0;  // sqrt(g + 1/4), sqrt(f + 1/4), both in (0, 1/2)
  Real a = 0;         // lattice period
};

WolfesParams wolfes_from_couplings(Real g, Real f, Real a);

// Basis solutions on the open half cell 0 < x < a/2:
//   u = [sin^2]^(1/4+s/2) [cos^2]^(1/4+w/2) 2F1(1/2+s/2+w/2-lambda/6, ...+lambda/6; 1+s; sin^2)
//   v = same with s -> -s in the exponent and parameters.
Real wolfes_basis_u(const WolfesParams& p, Real lambda, Real x);
Real wolfes_basis_v(const WolfesParams& p, Real lambda, Real x);
ValueDeriv wolfes_basis_u_deriv(const WolfesParams& p, Real lambda, Real x);
ValueDeriv wolfes_basis_v_deriv(const WolfesParams& p, Real lambda, Real x);

// Coefficients of u, v on the cos-pole Frobenius pair at x = a/2:
// u = Qu * U_W + Pu * V_W with U_W ~ |x-a/2|^(1/2+w), V_W ~ |x-a/2|^(1/2-w),
// and likewise for v.
struct WolfesConnection {
  Real Pu, Qu, Pv, Qv;
};
WolfesConnection wolfes_connection(const WolfesParams& p, Real lambda);

// Closed-form one-period discriminant tr(T)/2 built from the connection
// coefficients: (Pv Qu + Pu Qv) / (Pv Qu - Pu Qv). Equals +1 at
// lambda = 3(2n+1 -+ (s+w)) and -1 at 3(2n+1 -+ (s-w)).
Real wolfes_discriminant(const WolfesParams& p, Real lambda);

// Periodic band-edge pair (3(2n+1-s-w), 3(2n+1+s+w)) from the 2F1
// truncation conditions. Each value is confirmed against the numerical
// transfer-matrix discriminant before being returned; disagreement beyond
// 1e-6 throws std::runtime_error.
std::pair<Real, Real> wolfes_band_edges(const WolfesParams& p, int n);

// True sub-band interval for index nu (nu = 2n and 2n+1 partition the
// bracket of wolfes_band_edges(n)).
std::pair<Real, Real> wolfes_subband(const WolfesParams& p, int nu);

// Numerical dispersion on sub-band nu: the root of
// Delta(lambda) = (-1)^nu cos(ka) in the sub-band interval.
Real wolfes_dispersion(const WolfesParams& p, int nu, Real k);

// Bloch eigenfunction assembled from the half-cell basis with the
// even/odd Frobenius continuations at both pole types. Satisfies
// K(x + a) = exp(i theta) K(x).
class WolfesBloch {
 public:
  WolfesBloch(const WolfesParams& p, int nu, Real k);

  Complex evaluate(Real x) const;
  Complex derivative(Real x) const;
  Real theta() const { return theta_; }
  Complex bloch_factor() const;
  Real lambda() const { return lambda_; }
  const WolfesParams& params() const { return params_; }

 private:
  WolfesParams params_;
  int nu_;
  Real k_;
  Real lambda_;
  Real theta_;
  Complex A_, B_;  // coefficients on (v, u) in the reference half cell
};

}  // namespace anyonlab::wolfes
