#include "anyonlab/scarf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anyonlab/specfun.hpp"

namespace anyonlab::scarf {

using specfun::arccos_branch;
using specfun::gamma_fn;
using specfun::hyp2f1_series;
using specfun::jacobi_poly;
using specfun::rgamma;

ScarfParams scarf_from_coupling(Real g, Real a) {
  if (!(g > -0.25 && g < 0.0))
    throw std::domain_error("scarf_from_coupling: band window requires -1/4 < g < 0, got g = " +
                            std::to_string(g));
  if (!(a > 0.0)) throw std::domain_error("scarf_from_coupling: lattice period must be positive");
  return {g, std::sqrt(g + 0.25), a};
}

BandPoint dispersion_lambda(const ScarfParams& p, int n, Real k) {
  if (n < 0) throw std::domain_error("dispersion_lambda: band index must be non-negative");
  const Real ka = k * p.a;
  if (ka < -1e-12 || ka > kPi + 1e-12)
    throw std::domain_error("dispersion_lambda: k outside [0, pi/a]");
  const Real y = std::sin(kPi * p.s) * std::cos(std::clamp(ka, 0.0, kPi));
  const Real lambda = arccos_branch(y, n) / kPi;
  return {n, k, lambda, 3.0 * lambda};
}

std::pair<Real, Real> band_edges(const ScarfParams& p, int n) {
  if (n < 0) throw std::domain_error("band_edges: band index must be non-negative");
  return {n + 0.5 - p.s, n + 0.5 + p.s};
}

Real bloch_phase(int n, Real ka) {
  return (n % 2 == 0) ? ka : kPi - ka;
}

namespace {

struct BasisParams {
  Real expo;     // sin^2 exponent 1/4 + sgn*s/2
  Real A, B, C;  // 2F1 parameters
};

BasisParams basis_params(Real s, Real lambda, int sgn) {
  const Real ss = sgn * s;
  return {0.25 + 0.5 * ss, 0.25 + 0.5 * ss + 0.5 * lambda, 0.25 + 0.5 * ss - 0.5 * lambda,
          1.0 + ss};
}

// z -> 1-z connection coefficients of 2F1(A,B;C;z) for c - a - b = 1/2:
// F = P F(A,B;1/2;1-z) + Q (1-z)^{1/2} F(C-A,C-B;3/2;1-z).
void connection_pq(const BasisParams& bp, Real& P, Real& Q) {
  P = gamma_fn(bp.C) * gamma_fn(0.5) * rgamma(bp.C - bp.A) * rgamma(bp.C - bp.B);
  Q = gamma_fn(bp.C) * gamma_fn(-0.5) * rgamma(bp.A) * rgamma(bp.B);
}

ValueDeriv basis_eval(const ScarfParams& p, Real lambda, Real x, int sgn) {
  if (!(x > 0.0 && x <= 0.5 * p.a + 1e-12))
    throw std::domain_error("basis: x must lie in (0, a/2]");
  const Real b = kPi / p.a;
  const BasisParams bp = basis_params(p.s, lambda, sgn);
  const Real sn = std::sin(b * x);
  const Real cs = std::cos(b * x);
  const Real z = sn * sn;
  const Real dz = 2.0 * b * sn * cs;  // dz/dx

  if (z <= 0.5) {
    const Real f = hyp2f1_series(bp.A, bp.B, bp.C, z);
    const Real fp = bp.A * bp.B / bp.C * hyp2f1_series(bp.A + 1, bp.B + 1, bp.C + 1, z);
    const Real zp = std::pow(z, bp.expo);
    return {zp * f, dz * zp * (bp.expo * f / z + fp)};
  }

  // near the cell midpoint: expand about 1 - z = cos^2(pi x/a)
  Real P, Q;
  connection_pq(bp, P, Q);
  const Real zc = 1.0 - z;
  const Real g1 = hyp2f1_series(bp.A, bp.B, 0.5, zc);
  const Real g2 = hyp2f1_series(bp.C - bp.A, bp.C - bp.B, 1.5, zc);
  const Real g1p = bp.A * bp.B / 0.5 * hyp2f1_series(bp.A + 1, bp.B + 1, 1.5, zc);
  const Real g2p = (bp.C - bp.A) * (bp.C - bp.B) / 1.5 *
                   hyp2f1_series(bp.C - bp.A + 1, bp.C - bp.B + 1, 2.5, zc);
  const Real zp = std::pow(z, bp.expo);
  // on (0, a/2]: (1-z)^{1/2} = cos(pi x / a) >= 0, d/dx cos = -b sin
  const Real value = zp * (P * g1 + Q * cs * g2);
  const Real dval = dz * bp.expo * (value / z) +
                    zp * (P * g1p * (-dz) + Q * (-b * sn) * g2 + Q * cs * g2p * (-dz));
  return {value, dval};
}

int nearest_cell(Real x, Real a) { return static_cast<int>(std::llround(x / a)); }

}  // namespace

Real basis_u(const ScarfParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, +1).value; }
Real basis_v(const ScarfParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, -1).value; }
ValueDeriv basis_u_deriv(const ScarfParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, +1); }
ValueDeriv basis_v_deriv(const ScarfParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, -1); }

Connection connection_coeffs(const ScarfParams& p, Real lambda) {
  Connection c{};
  const BasisParams bu = basis_params(p.s, lambda, +1);
  const BasisParams bv = basis_params(p.s, lambda, -1);
  connection_pq(bu, c.Pu, c.Qu);
  connection_pq(bv, c.Pv, c.Qv);
  return c;
}

Complex band_edge_wavefunction(const ScarfParams& p, int n, Edge edge, Real x) {
  if (n < 0) throw std::domain_error("band_edge_wavefunction: band index must be non-negative");
  const Real b = kPi / p.a;
  const Real sn = std::sin(b * x);
  if (std::abs(sn) < 1e-14) return {0.0, 0.0};
  const Real sgn_s = (edge == Edge::lower) ? -1.0 : 1.0;
  const Real expo = 0.5 * n + 0.5 * sgn_s * p.s + 0.25;
  const Real nu = -n + (edge == Edge::lower ? p.s : -p.s) - 0.5;
  const Complex arg(0.0, -std::cos(b * x) / sn);
  Complex val = std::pow(sn * sn, expo) * jacobi_poly(n, nu, nu, arg);
  // multiplier (-1)^n at lower edges, (-1)^(n+1) at upper edges: flip the
  // a-periodic core per cell whenever the multiplier is -1
  const bool flip = (edge == Edge::lower) ? (n % 2 == 1) : (n % 2 == 0);
  if (flip) {
    const long cell = static_cast<long>(std::floor(x / p.a));
    if (cell % 2 != 0) val = -val;
  }
  return val;
}

BlochSolution::BlochSolution(const ScarfParams& p, const BandPoint& pt)
    : params_(p), point_(pt) {
  theta_ = bloch_phase(pt.n, pt.k * p.a);
  const Connection c = connection_coeffs(p, pt.lambda);
  u0_ = c.Pu;
  v0_ = c.Pv;
  const Real ch = std::cos(0.5 * theta_);
  const Real sh = std::sin(0.5 * theta_);
  // Null vector of the cell-matching system; the two candidate rows are
  // parallel exactly on the dispersion curve and at least one survives at
  // the degenerate band edges.
  const Real n1v = c.Pu * ch, n1u = c.Pv * sh;
  const Real n2v = c.Qu * sh, n2u = -c.Qv * ch;
  Real cv, cu;
  if (n1v * n1v + n1u * n1u >= n2v * n2v + n2u * n2u) {
    cv = n1v;
    cu = n1u;
  } else {
    cv = n2v;
    cu = n2u;
  }
  const Real prod = u0_ * v0_;
  if (std::abs(prod) > 1e-10) {
    // printed normalization: coefficients cos(theta/2)/v0 and sin(theta/2)/u0
    cv /= prod;
    cu /= prod;
  } else {
    const Real scale = std::max(std::abs(cv), std::abs(cu));
    cv /= scale;
    cu /= scale;
  }
  coef_v_ = cv;
  coef_u_ = cu;
}

Complex BlochSolution::bloch_factor() const { return std::polar(1.0, theta_); }

Complex BlochSolution::evaluate(Real x) const {
  const int j = nearest_cell(x, params_.a);
  const Real d = x - j * params_.a;
  if (std::abs(d) < 1e-14 * params_.a) return {0.0, 0.0};
  const Real vv = basis_v(params_, point_.lambda, std::abs(d));
  const Real uu = basis_u(params_, point_.lambda, std::abs(d));
  const Real sgn = d > 0 ? 1.0 : -1.0;
  const Complex mix(coef_v_ * vv, coef_u_ * sgn * uu);
  return std::polar(1.0, theta_ * j) * mix;
}

Complex BlochSolution::derivative(Real x) const {
  const int j = nearest_cell(x, params_.a);
  const Real d = x - j * params_.a;
  if (std::abs(d) < 1e-14 * params_.a)
    throw std::domain_error("BlochSolution::derivative: singular lattice point");
  const ValueDeriv vv = basis_v_deriv(params_, point_.lambda, std::abs(d));
  const ValueDeriv uu = basis_u_deriv(params_, point_.lambda, std::abs(d));
  const Real sgn = d > 0 ? 1.0 : -1.0;
  // d/dx v(|d|) = sgn v'(|d|);  d/dx [sgn u(|d|)] = u'(|d|)
  const Complex mix(coef_v_ * sgn * vv.deriv, coef_u_ * uu.deriv);
  return std::polar(1.0, theta_ * j) * mix;
}

}  // namespace anyonlab::scarf
