#include "anyonlab/wolfes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anyonlab/oracle.hpp"
#include "anyonlab/scarf.hpp"
#include "anyonlab/specfun.hpp"

namespace anyonlab::wolfes {

using specfun::gamma_fn;
using specfun::hyp2f1_series;
using specfun::rgamma;

WolfesParams wolfes_from_couplings(Real g, Real f, Real a) {
  if (!(g > -0.25 && g < 0.0) || !(f > -0.25 && f < 0.0))
    throw std::domain_error("wolfes_from_couplings: band window requires -1/4 < g, f < 0");
  if (!(a > 0.0)) throw std::domain_error("wolfes_from_couplings: lattice period must be positive");
  return {g, f, std::sqrt(g + 0.25), std::sqrt(f + 0.25), a};
}

namespace {

struct BasisParams {
  Real alpha;    // sin^2 exponent 1/4 +- s/2
  Real beta;     // cos^2 exponent 1/4 + w/2
  Real A, B, C;  // 2F1 parameters
};

BasisParams basis_params(const WolfesParams& p, Real lambda, int sgn) {
  const Real ss = sgn * p.s;
  const Real base = 0.5 + 0.5 * ss + 0.5 * p.w;
  return {0.25 + 0.5 * ss, 0.25 + 0.5 * p.w, base - lambda / 6.0, base + lambda / 6.0, 1.0 + ss};
}

// Coefficients of the basis function on the cos-pole pair
//   U_W ~ (1-t)^(1/4+w/2), V_W ~ (1-t)^(1/4-w/2)
// from the z -> 1-z connection with c - a - b = -w.
void connection_pq(const WolfesParams& p, const BasisParams& bp, Real& P, Real& Q) {
  Q = gamma_fn(bp.C) * gamma_fn(-p.w) * rgamma(bp.C - bp.A) * rgamma(bp.C - bp.B);
  P = gamma_fn(bp.C) * gamma_fn(p.w) * rgamma(bp.A) * rgamma(bp.B);
}

ValueDeriv basis_eval(const WolfesParams& p, Real lambda, Real x, int sgn) {
  if (!(x > 0.0 && x < 0.5 * p.a))
    throw std::domain_error("wolfes basis: x must lie strictly inside (0, a/2)");
  const Real b = kPi / p.a;
  const BasisParams bp = basis_params(p, lambda, sgn);
  const Real sn = std::sin(b * x);
  const Real cs = std::cos(b * x);
  const Real t = sn * sn;
  const Real tc = 1.0 - t;  // = cos^2
  const Real dt = 2.0 * b * sn * cs;

  if (t <= 0.5) {
    const Real fv = hyp2f1_series(bp.A, bp.B, bp.C, t);
    const Real fp = bp.A * bp.B / bp.C * hyp2f1_series(bp.A + 1, bp.B + 1, bp.C + 1, t);
    const Real pref = std::pow(t, bp.alpha) * std::pow(tc, bp.beta);
    const Real val = pref * fv;
    const Real dval = dt * (bp.alpha / t * val - bp.beta / tc * val + pref * fp);
    return {val, dval};
  }

  Real P, Q;
  connection_pq(p, bp, P, Q);
  const Real e1 = 0.25 + 0.5 * p.w;   // exponent of the U_W piece
  const Real e2 = 0.25 - 0.5 * p.w;   // exponent of the V_W piece
  const Real g1 = hyp2f1_series(bp.A, bp.B, 1.0 + p.w, tc);
  const Real g2 = hyp2f1_series(bp.C - bp.A, bp.C - bp.B, 1.0 - p.w, tc);
  const Real g1p = bp.A * bp.B / (1.0 + p.w) * hyp2f1_series(bp.A + 1, bp.B + 1, 2.0 + p.w, tc);
  const Real g2p = (bp.C - bp.A) * (bp.C - bp.B) / (1.0 - p.w) *
                   hyp2f1_series(bp.C - bp.A + 1, bp.C - bp.B + 1, 2.0 - p.w, tc);
  const Real ta = std::pow(t, bp.alpha);
  const Real u1 = std::pow(tc, e1), u2 = std::pow(tc, e2);
  const Real val = ta * (Q * u1 * g1 + P * u2 * g2);
  const Real dval = dt * bp.alpha / t * val +
                    ta * (Q * (-dt) * (e1 / tc * u1 * g1 + u1 * g1p) +
                          P * (-dt) * (e2 / tc * u2 * g2 + u2 * g2p));
  return {val, dval};
}

Real subband_target(int nu, Real ka) { return (nu % 2 == 0 ? 1.0 : -1.0) * std::cos(ka); }

}  // namespace

Real wolfes_basis_u(const WolfesParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, +1).value; }
Real wolfes_basis_v(const WolfesParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, -1).value; }
ValueDeriv wolfes_basis_u_deriv(const WolfesParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, +1); }
ValueDeriv wolfes_basis_v_deriv(const WolfesParams& p, Real lambda, Real x) { return basis_eval(p, lambda, x, -1); }

WolfesConnection wolfes_connection(const WolfesParams& p, Real lambda) {
  WolfesConnection c{};
  connection_pq(p, basis_params(p, lambda, +1), c.Pu, c.Qu);
  connection_pq(p, basis_params(p, lambda, -1), c.Pv, c.Qv);
  return c;
}

Real wolfes_discriminant(const WolfesParams& p, Real lambda) {
  const WolfesConnection c = wolfes_connection(p, lambda);
  return (c.Pv * c.Qu + c.Pu * c.Qv) / (c.Pv * c.Qu - c.Pu * c.Qv);
}

std::pair<Real, Real> wolfes_subband(const WolfesParams& p, int nu) {
  if (nu < 0) throw std::domain_error("wolfes_subband: index must be non-negative");
  const int n = nu / 2;
  const Real base = 3.0 * (2 * n + 1);
  const Real outer = 3.0 * (p.s + p.w);
  const Real inner = 3.0 * std::abs(p.s - p.w);
  if (nu % 2 == 0) return {base - outer, base - inner};
  return {base + inner, base + outer};
}

std::pair<Real, Real> wolfes_band_edges(const WolfesParams& p, int n) {
  if (n < 0) throw std::domain_error("wolfes_band_edges: band index must be non-negative");
  const Real lower = 3.0 * (2 * n + 1 - p.s - p.w);
  const Real upper = 3.0 * (2 * n + 1 + p.s + p.w);
  const Real gap = 6.0 * (1.0 - p.s - p.w);            // width of the outer gaps
  const Real band = 6.0 * std::min(p.s, p.w);          // width of the adjacent sub-band

  const oracle::CellProblem base = oracle::cell_problem(p, 0.0);
  auto delta = [&](Real lam) {
    oracle::CellProblem prob = base;
    prob.lambda_theta = lam / 3.0;
    return oracle::discriminant(prob) - 1.0;
  };
  // Delta - 1 changes sign across a periodic edge: > 0 in the gap outside,
  // < 0 just inside the sub-band.
  const Real out_lo = lower - 0.45 * std::min(gap, lower);
  const Real root_lo = oracle::find_root(delta, out_lo, lower + 0.45 * band, 1e-9);
  const Real root_up = oracle::find_root(delta, upper - 0.45 * band, upper + 0.45 * gap, 1e-9);
  if (std::abs(root_lo - lower) > 1e-6 || std::abs(root_up - upper) > 1e-6)
    throw std::runtime_error(
        "wolfes_band_edges: truncation values disagree with the discriminant roots (lower " +
        std::to_string(root_lo - lower) + ", upper " + std::to_string(root_up - upper) + ")");
  return {lower, upper};
}

Real wolfes_dispersion(const WolfesParams& p, int nu, Real k) {
  const Real ka = k * p.a;
  if (ka < -1e-12 || ka > kPi + 1e-12)
    throw std::domain_error("wolfes_dispersion: k outside [0, pi/a]");
  const auto [lo, hi] = wolfes_subband(p, nu);
  const Real target = subband_target(nu, std::clamp(ka, 0.0, kPi));
  const oracle::CellProblem base = oracle::cell_problem(p, 0.0);
  auto fn = [&](Real lam) {
    oracle::CellProblem prob = base;
    prob.lambda_theta = lam / 3.0;
    return oracle::discriminant(prob) - target;
  };
  return oracle::find_root(fn, lo - 1e-7, hi + 1e-7, 1e-11);
}

WolfesBloch::WolfesBloch(const WolfesParams& p, int nu, Real k) : params_(p), nu_(nu), k_(k) {
  const Real ka = k * p.a;
  theta_ = scarf::bloch_phase(nu, ka);
  const auto [lo, hi] = wolfes_subband(p, nu);
  const Real target = subband_target(nu, ka);
  lambda_ = oracle::find_root([&](Real lam) { return wolfes_discriminant(p, lam) - target; },
                              lo - 1e-9, hi + 1e-9, 1e-13);

  // Coefficients on (v, u) in the reference half cell: eigenvector of the
  // one-period coefficient map G = S^-1 C for the multiplier exp(i theta).
  const WolfesConnection c = wolfes_connection(p, lambda_);
  Mat2 C, S;
  C << c.Pv, c.Pu, -c.Qv, -c.Qu;
  S << c.Pv, -c.Pu, c.Qv, -c.Qu;
  const Mat2 G = S.inverse() * C;
  const Complex mu = bloch_factor();
  Complex A, B;
  if (std::abs(G(0, 1)) > 1e-12 * G.cwiseAbs().maxCoeff()) {
    A = G(0, 1);
    B = mu - G(0, 0);
  } else {
    A = mu - G(1, 1);
    B = G(1, 0);
  }
  const Real norm = std::max(std::abs(A), std::abs(B));
  A_ = A / norm;
  B_ = B / norm;
}

Complex WolfesBloch::bloch_factor() const { return std::polar(1.0, theta_); }

Complex WolfesBloch::evaluate(Real x) const {
  const Real a = params_.a;
  const long j = static_cast<long>(std::floor(x / a));
  const Real y = x - j * a;
  const Real guard = 1e-12 * a;
  if (y < guard || std::abs(y - 0.5 * a) < guard || y > a - guard) return {0.0, 0.0};
  if (y < 0.5 * a) {
    const Real vv = wolfes_basis_v(params_, lambda_, y);
    const Real uu = wolfes_basis_u(params_, lambda_, y);
    return std::polar(1.0, theta_ * j) * (A_ * vv + B_ * uu);
  }
  const Real vv = wolfes_basis_v(params_, lambda_, a - y);
  const Real uu = wolfes_basis_u(params_, lambda_, a - y);
  return std::polar(1.0, theta_ * (j + 1)) * (A_ * vv - B_ * uu);
}

Complex WolfesBloch::derivative(Real x) const {
  const Real a = params_.a;
  const long j = static_cast<long>(std::floor(x / a));
  const Real y = x - j * a;
  const Real guard = 1e-12 * a;
  if (y < guard || std::abs(y - 0.5 * a) < guard || y > a - guard)
    throw std::domain_error("WolfesBloch::derivative: singular point");
  if (y < 0.5 * a) {
    const ValueDeriv vv = wolfes_basis_v_deriv(params_, lambda_, y);
    const ValueDeriv uu = wolfes_basis_u_deriv(params_, lambda_, y);
    return std::polar(1.0, theta_ * j) * (A_ * vv.deriv + B_ * uu.deriv);
  }
  const ValueDeriv vv = wolfes_basis_v_deriv(params_, lambda_, a - y);
  const ValueDeriv uu = wolfes_basis_u_deriv(params_, lambda_, a - y);
  return std::polar(1.0, theta_ * (j + 1)) * (-A_ * vv.deriv + B_ * uu.deriv);
}

}  // namespace anyonlab::wolfes
