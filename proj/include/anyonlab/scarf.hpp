#pragma once
// Band structure of the periodic inverse-square lattice
//
//   -(a/pi)^2 K'' - (1/4 - s^2) / sin^2(pi x / a) K = lambda^2 K,
//
// with 0 < s < 1/2 (coupling g = s^2 - 1/4 in (-1/4, 0)) and lattice
// period a. Band n occupies lambda in [n + 1/2 - s, n + 1/2 + s] and is
// parameterized by the reduced wave number k in [0, pi/a] through
//
//   lambda_n(k) = n + arccos(sin(pi s) cos(ka)) / pi,
//
// equivalently cos(pi lambda) = sin(pi s) cos(ka) on the n-th arccos
// branch. The one-period Floquet multiplier of the (n, k) state is
// exp(i theta) with cos(theta) = (-1)^n cos(ka): theta = ka on even
// bands and pi - ka on odd bands (the discriminant alternates sign from
// band to band, as its free-particle limit cos(pi lambda) requires).
//
// Solutions are assembled cell by cell from the basis pair u, v defined
// on a half cell, with u continued oddly and v evenly across the lattice
// singularities; that is the unique Wronskian-preserving connection under
// which the assembled wavefunction is C^1 at the potential minima exactly
// when lambda lies on the dispersion curve.

#include <utility>

#include "anyonlab/types.hpp"

namespace anyonlab::scarf {

struct ScarfParams {
  Real g = 0;  // coupling, band window -1/4 < g < 0
  Real s = 0;  // sqrt(g + 1/4) in (0, 1/2)
  Real a = 0;  // lattice period, > 0
};

// Validates the band window and derives s. Throws std::domain_error for
// g outside (-1/4, 0) or a <= 0.
ScarfParams scarf_from_coupling(Real g, Real a);

struct BandPoint {
  int n = 0;        // band index >= 0
  Real k = 0;       // reduced wave number in [0, pi/a]
  Real lambda = 0;  // angular eigenvalue root
  Real m = 0;       // separation constant feeding the radial sector, m = 3 lambda
};

// lambda_n(k) on the n-th arccos branch; strictly increasing in k.
BandPoint dispersion_lambda(const ScarfParams& p, int n, Real k);

// (n + 1/2 - s, n + 1/2 + s): the k = 0 and k = pi/a limits of the band.
std::pair<Real, Real> band_edges(const ScarfParams& p, int n);

// Floquet phase theta in [0, pi] with cos(theta) = (-1)^n cos(ka).
Real bloch_phase(int n, Real ka);

// Basis solutions on the half cell 0 < x <= a/2 (x measured from a lattice
// singularity):
//   u(x) = [sin^2(pi x/a)]^(1/4+s/2) 2F1(1/4+s/2+lambda/2, 1/4+s/2-lambda/2; 1+s; sin^2(pi x/a))
//   v(x) = same with s -> -s.
// Leading behavior u ~ (pi x/a)^(1/2+s), v ~ (pi x/a)^(1/2-s).
Real basis_u(const ScarfParams& p, Real lambda, Real x);
Real basis_v(const ScarfParams& p, Real lambda, Real x);
ValueDeriv basis_u_deriv(const ScarfParams& p, Real lambda, Real x);
ValueDeriv basis_v_deriv(const ScarfParams& p, Real lambda, Real x);

// Decomposition of the half-cell basis on the even/odd solutions E, O
// about the potential minimum x = a/2: u = Pu E + Qu O, v = Pv E + Qv O
// (E(a/2) = 1, O(a/2) = 0, O'(a/2) = -pi/a). In particular
// u(a/2) = Pu and v(a/2) = Pv.
struct Connection {
  Real Pu, Qu, Pv, Qv;
};
Connection connection_coeffs(const ScarfParams& p, Real lambda);

enum class Edge { lower, upper };

// Band-edge eigenfunction in closed polynomial form,
//   [sin^2(pi x/a)]^(n/2 -+ s/2 + 1/4) P_n^{(nu,nu)}(-i cot(pi x/a)),
// nu = -n +- s - 1/2, times a per-cell sign when the edge multiplier is -1
// (lower edges carry (-1)^n, upper edges (-1)^(n+1)). Returns 0 at lattice
// points.
Complex band_edge_wavefunction(const ScarfParams& p, int n, Edge edge, Real x);

// Bloch eigenfunction for a point on the dispersion curve. With j the
// index of the nearest lattice singularity and d = x - j a,
//   K(x) = exp(i theta j) [ cos(theta/2) v(|d|)/v0 + i sin(theta/2) sgn(d) u(|d|)/u0 ],
// which satisfies K(x + a) = exp(i theta) K(x). At exact band edges the
// degenerate standing wave is selected automatically and the normalization
// falls back to a bounded one when u0 or v0 vanishes there.
class BlochSolution {
 public:
  BlochSolution(const ScarfParams& p, const BandPoint& pt);

  Complex evaluate(Real x) const;
  Complex derivative(Real x) const;  // dK/dx
  Real theta() const { return theta_; }
  Complex bloch_factor() const;      // exp(i theta)

  const ScarfParams& params() const { return params_; }
  const BandPoint& point() const { return point_; }
  Real u0() const { return u0_; }
  Real v0() const { return v0_; }

 private:
  ScarfParams params_;
  BandPoint point_;
  Real theta_;
  Real u0_, v0_;
  Real coef_v_, coef_u_;  // K = e^{i theta j} [coef_v V(|d|) + i coef_u sgn(d) U(|d|)]
};

}  // namespace anyonlab::scarf
