#include "anyonlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace anyonlab::oracle {

namespace {

// ---------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) for y'' = W(x) y, state (y, y').
// Templated on the scalar so the same stepper continues real branch
// solutions and complex Bloch states.
// ---------------------------------------------------------------------

template <typename Scalar, typename WFun>
Eigen::Matrix<Scalar, 2, 1> dopri5_span(WFun&& w, Real x0, Eigen::Matrix<Scalar, 2, 1> y,
                                        Real x1, Real rtol, Real atol, Real h0) {
  using State = Eigen::Matrix<Scalar, 2, 1>;
  if (x1 <= x0) {
    if (x1 == x0) return y;
    throw std::invalid_argument("dopri5_span: backward span");
  }
  auto rhs = [&w](Real x, const State& s) { return State(s(1), Scalar(w(x)) * s(0)); };

  Real x = x0;
  Real h = std::min(h0, x1 - x0);
  long steps = 0;
  State k1 = rhs(x, y);
  while (x < x1) {
    if (++steps > 4000000)
      throw std::runtime_error("integration step-size failure near x = " + std::to_string(x));
    h = std::min(h, x1 - x);

    const State k2 = rhs(x + 0.2 * h, y + h * (0.2 * k1));
    const State k3 = rhs(x + 0.3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    const State k4 = rhs(x + 0.8 * h, y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    const State k5 = rhs(x + 8.0 / 9 * h,
                         y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                  64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    const State k6 = rhs(x + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                                         46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                                         5103.0 / 18656 * k5));
    const State y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                              2187.0 / 6784 * k5 + 11.0 / 84 * k6);
    const State k7 = rhs(x + h, y5);
    const State y4 = y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 + 393.0 / 640 * k4 -
                              92097.0 / 339200 * k5 + 187.0 / 2100 * k6 + 1.0 / 40 * k7);

    Real err = 0;
    for (int i = 0; i < 2; ++i) {
      const Real sc = atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
      const Real e = std::abs(y5(i) - y4(i)) / sc;
      err = std::max(err, e);
    }
    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;  // first-same-as-last
    }
    const Real fac = std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 8.0);
    h *= fac;
  }
  return y;
}

// ---------------------------------------------------------------------
// Frobenius expansion at an inverse-square pole. With d the distance to
// the pole, K'' = [ sigma(sigma-1)/d^2 + sum_j G_{2j} d^{2j} ] K has the
// solutions d^sigma (1 + c_2 d^2 + c_4 d^4 + ...) with
//   c_{2i} = sum_{j<i} G_{2j} c_{2(i-1-j)} / (2i (2 sigma + 2i - 1)).
// Five correction orders keep the truncation below 1e-15 at the default
// matching offset.
// ---------------------------------------------------------------------

struct FrobLocal {
  Real exp_s = 0;               // exponents 1/2 +- exp_s
  std::array<Real, 5> G{};      // even-series coefficients of the regular part
};

FrobLocal pole_local(const CellProblem& prob, bool cos_type) {
  const Real b = kPi / prob.a;
  const Real q2 = b * b * prob.lambda_theta * prob.lambda_theta;
  const Real cp = cos_type ? prob.f : prob.g;   // coupling of this pole
  const Real co = cos_type ? prob.g : prob.f;   // the other, regular here
  FrobLocal loc;
  loc.exp_s = std::sqrt(cp + 0.25);
  const Real b2 = b * b, b4 = b2 * b2, b6 = b4 * b2, b8 = b4 * b4, b10 = b8 * b2;
  loc.G = {-q2 + b2 * (cp / 3.0 + co),
           b4 * (cp / 15.0 + co),
           b6 * (2.0 * cp / 189.0 + 2.0 * co / 3.0),
           b8 * (cp / 675.0 + 17.0 * co / 45.0),
           b10 * (2.0 * cp / 10395.0 + 62.0 * co / 315.0)};
  return loc;
}

ValueDeriv seed_local(const FrobLocal& loc, Branch branch, Real eps) {
  const Real sigma = 0.5 + (branch == Branch::plus ? loc.exp_s : -loc.exp_s);
  std::array<Real, 6> c{};
  c[0] = 1.0;
  for (int i = 1; i <= 5; ++i) {
    Real acc = 0;
    for (int j = 0; j < i; ++j) acc += loc.G[j] * c[i - 1 - j];
    c[i] = acc / (2.0 * i * (2.0 * sigma + 2.0 * i - 1.0));
  }
  Real val = 0, der = 0, e2i = 1.0;
  for (int i = 0; i <= 5; ++i) {
    val += c[i] * e2i;
    der += (sigma + 2.0 * i) * c[i] * e2i;
    e2i *= eps * eps;
  }
  return {std::pow(eps, sigma) * val, std::pow(eps, sigma - 1.0) * der};
}

// Crossing map at a pole: project on the mirrored local pair just left of
// it, continue the sigma_- branch evenly and the sigma_+ branch oddly, and
// re-emit at the same distance on the right. Determinant +1.
Mat2 crossing_matrix(const FrobLocal& loc, Real eps) {
  const ValueDeriv v = seed_local(loc, Branch::minus, eps);
  const ValueDeriv u = seed_local(loc, Branch::plus, eps);
  Mat2 left, right;
  left << v.value, u.value, -v.deriv, -u.deriv;
  right << v.value, -u.value, v.deriv, -u.deriv;
  return right * left.inverse();
}

auto make_w(const CellProblem& prob, bool potential_off) {
  const Real b = kPi / prob.a;
  const Real q2 = b * b * prob.lambda_theta * prob.lambda_theta;
  const Real g = prob.g, f = prob.f;
  return [=](Real x) -> Real {
    if (potential_off) return -q2;
    const Real sn = std::sin(b * x);
    Real w = -q2 + b * b * g / (sn * sn);
    if (f != 0.0) {
      const Real cs = std::cos(b * x);
      w += b * b * f / (cs * cs);
    }
    return w;
  };
}

struct Pole {
  Real x;
  bool cos_type;
};

std::vector<Pole> poles_between(const CellProblem& prob, Real x0, Real x1) {
  std::vector<Pole> out;
  const Real a = prob.a;
  const long jlo = static_cast<long>(std::floor(x0 / (0.5 * a))) - 1;
  const long jhi = static_cast<long>(std::ceil(x1 / (0.5 * a))) + 1;
  for (long j = jlo; j <= jhi; ++j) {
    const Real xp = 0.5 * a * j;
    if (xp <= x0 || xp >= x1) continue;
    const bool cos_type = (((j % 2) + 2) % 2) == 1;
    if (cos_type && prob.f == 0.0) continue;
    out.push_back({xp, cos_type});
  }
  std::sort(out.begin(), out.end(), [](const Pole& l, const Pole& r) { return l.x < r.x; });
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> continue_state_impl(const CellProblem& prob, Real x0,
                                                Eigen::Matrix<Scalar, 2, 1> y, Real x1,
                                                const Options& opt) {
  const Real eps = opt.eps_rel * prob.a;
  auto w = make_w(prob, opt.potential_off);
  const auto poles = opt.potential_off ? std::vector<Pole>{} : poles_between(prob, x0, x1);
  Real x = x0;
  for (const Pole& p : poles) {
    if (p.x - x < 2 * eps || x1 - p.x < 2 * eps)
      throw std::domain_error("continue_state: endpoint too close to a singularity");
    y = dopri5_span(w, x, y, p.x - eps, opt.rtol, opt.atol, 0.1 * eps);
    const Mat2 cross = crossing_matrix(pole_local(prob, p.cos_type), eps);
    y = (cross.template cast<Scalar>() * y).eval();
    x = p.x + eps;
  }
  return dopri5_span(w, x, y, x1, opt.rtol, opt.atol, 0.1 * eps);
}

}  // namespace

Real find_root(const std::function<Real(Real)>& fn, Real lo, Real hi, Real xtol) {
  Real a = lo, b = hi;
  Real fa = fn(a), fb = fn(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) throw std::runtime_error("bracket failure: no sign change");
  Real c = a, fc = fa;
  Real d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Real tol = 2 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const Real xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      Real p, q;
      const Real s = fb / fa;
      if (a == c) {
        p = 2 * xm * s;
        q = 1 - s;
      } else {
        const Real qq = fa / fc, r = fb / fc;
        p = s * (2 * xm * qq * (qq - r) - (b - a) * (r - 1));
        q = (qq - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2 * p < std::min(3 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (xm > 0 ? tol : -tol);
    fb = fn(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw std::runtime_error("find_root: no convergence");
}

CellProblem cell_problem(const scarf::ScarfParams& p, Real lambda) {
  return {p.a, p.g, 0.0, lambda};
}

CellProblem cell_problem(const wolfes::WolfesParams& p, Real lambda) {
  return {p.a, p.g, p.f, lambda / 3.0};
}

ValueDeriv frobenius_seed(const scarf::ScarfParams& p, Real lambda, Real eps, Branch branch) {
  if (!(eps > 0) || eps > p.a / 10.0)
    throw std::domain_error("frobenius_seed: eps must lie in (0, a/10]");
  return seed_local(pole_local(cell_problem(p, lambda), false), branch, eps);
}

TransferMatrix integrate_cell(const CellProblem& prob, const Options& opt) {
  const Real a = prob.a;
  const Real eps = opt.eps_rel * a;
  auto w = make_w(prob, opt.potential_off);
  TransferMatrix t;

  if (opt.potential_off) {
    Vec2 e1(1, 0), e2(0, 1);
    e1 = dopri5_span(w, eps, e1, a + eps, opt.rtol, opt.atol, 1e-3 * a);
    e2 = dopri5_span(w, eps, e2, a + eps, opt.rtol, opt.atol, 1e-3 * a);
    t.m.col(0) = e1;
    t.m.col(1) = e2;
    return t;
  }

  const FrobLocal sin_local = pole_local(prob, false);
  const ValueDeriv v0 = seed_local(sin_local, Branch::minus, eps);
  const ValueDeriv u0 = seed_local(sin_local, Branch::plus, eps);
  Vec2 yv(v0.value, v0.deriv), yu(u0.value, u0.deriv);

  if (prob.f != 0.0) {
    const Mat2 cross_mid = crossing_matrix(pole_local(prob, true), eps);
    yv = dopri5_span(w, eps, yv, 0.5 * a - eps, opt.rtol, opt.atol, 0.1 * eps);
    yu = dopri5_span(w, eps, yu, 0.5 * a - eps, opt.rtol, opt.atol, 0.1 * eps);
    yv = cross_mid * yv;
    yu = cross_mid * yu;
    yv = dopri5_span(w, 0.5 * a + eps, yv, a - eps, opt.rtol, opt.atol, 0.1 * eps);
    yu = dopri5_span(w, 0.5 * a + eps, yu, a - eps, opt.rtol, opt.atol, 0.1 * eps);
  } else {
    yv = dopri5_span(w, eps, yv, a - eps, opt.rtol, opt.atol, 0.1 * eps);
    yu = dopri5_span(w, eps, yu, a - eps, opt.rtol, opt.atol, 0.1 * eps);
  }
  const Mat2 cross_end = crossing_matrix(sin_local, eps);
  yv = cross_end * yv;
  yu = cross_end * yu;

  Mat2 start, final;
  start << v0.value, u0.value, v0.deriv, u0.deriv;
  final.col(0) = yv;
  final.col(1) = yu;
  t.m = final * start.inverse();
  return t;
}

TransferMatrix integrate_cell(const scarf::ScarfParams& p, Real lambda, const Options& opt) {
  return integrate_cell(cell_problem(p, lambda), opt);
}

Real discriminant(const CellProblem& prob, const Options& opt) {
  if (!(prob.lambda_theta > 0)) throw std::domain_error("discriminant: lambda must be positive");
  return integrate_cell(prob, opt).half_trace();
}

Real discriminant(const scarf::ScarfParams& p, Real lambda, const Options& opt) {
  return discriminant(cell_problem(p, lambda), opt);
}

Real numerical_dispersion(const scarf::ScarfParams& p, int n, Real k, const Options& opt) {
  const Real ka = k * p.a;
  if (ka < -1e-12 || ka > kPi + 1e-12)
    throw std::domain_error("numerical_dispersion: k outside [0, pi/a]");
  const auto [lo, hi] = scarf::band_edges(p, n);
  const Real target = (n % 2 == 0 ? 1.0 : -1.0) * std::cos(std::clamp(ka, 0.0, kPi));
  auto fn = [&](Real lam) { return discriminant(p, lam, opt) - target; };
  return find_root(fn, lo - 1e-7, hi + 1e-7, 1e-11);
}

Real ode_residual(const SampledFunction& f) {
  const auto n = f.xs.size();
  if (n < 24 || n != f.values.size())
    throw std::domain_error("ode_residual: grid too coarse (fewer than 16 interior points)");
  const Real h = f.xs(1) - f.xs(0);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    if (std::abs((f.xs(i + 1) - f.xs(i)) - h) > 1e-9 * std::abs(h))
      throw std::domain_error("ode_residual: grid must be uniform");

  const CellProblem prob{f.meta.a, f.meta.g, f.meta.f, f.meta.lambda_theta};
  auto w = make_w(prob, false);
  const Real b = kPi / f.meta.a;
  const Real scale = (b * f.meta.lambda_theta) * (b * f.meta.lambda_theta);

  Real denom = 0;
  for (Eigen::Index i = 0; i < n; ++i) denom = std::max(denom, scale * std::abs(f.values(i)));
  if (denom == 0) throw std::domain_error("ode_residual: zero sample");

  // two Richardson levels: error O(h^6)
  Real worst = 0;
  for (Eigen::Index i = 4; i + 4 < n; ++i) {
    const Complex d1 = (f.values(i - 1) - 2.0 * f.values(i) + f.values(i + 1)) / (h * h);
    const Complex d2 = (f.values(i - 2) - 2.0 * f.values(i) + f.values(i + 2)) / (4.0 * h * h);
    const Complex d4 = (f.values(i - 4) - 2.0 * f.values(i) + f.values(i + 4)) / (16.0 * h * h);
    const Complex second = (64.0 * d1 - 20.0 * d2 + d4) / 45.0;
    const Complex res = second - w(f.xs(i)) * f.values(i);
    worst = std::max(worst, std::abs(res));
  }
  return worst / denom;
}

Vec2c continue_state(const CellProblem& prob, Real x0, const Vec2c& y0, Real x1,
                     const Options& opt) {
  return continue_state_impl<Complex>(prob, x0, y0, x1, opt);
}

namespace {

template <typename Solution>
Real bloch_deviation(const Solution& sol, const CellProblem& prob, const ArrayX& xs,
                     const Options& opt) {
  const Complex mu = sol.bloch_factor();
  Real maxk = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) maxk = std::max(maxk, std::abs(sol.evaluate(xs(i))));
  if (maxk == 0) throw std::domain_error("check_bloch: solution vanishes on the grid");
  Real worst = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const Real x = xs(i);
    Vec2c y(sol.evaluate(x), sol.derivative(x));
    y = continue_state_impl<Complex>(prob, x, y, x + prob.a, opt);
    worst = std::max(worst, std::abs(y(0) - mu * sol.evaluate(x)));
  }
  return worst / maxk;
}

}  // namespace

Real check_bloch(const scarf::BlochSolution& sol, const ArrayX& xs, const Options& opt) {
  return bloch_deviation(sol, cell_problem(sol.params(), sol.point().lambda), xs, opt);
}

Real check_bloch(const wolfes::WolfesBloch& sol, const ArrayX& xs, const Options& opt) {
  return bloch_deviation(sol, cell_problem(sol.params(), sol.lambda()), xs, opt);
}

}  // namespace anyonlab::oracle
