#include "anyonlab/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace anyonlab::specfun {

namespace {

constexpr int kMaxTerms = 2000;

bool near_nonpositive_integer(Real x, Real tol) {
  return x <= 0.5 && std::abs(x - std::round(x)) < tol;
}

}  // namespace

Real rgamma(Real x) {
  if (x > 0.5) return 1.0 / std::tgamma(x);
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, entire in x
  return std::sin(kPi * x) * std::tgamma(1.0 - x) / kPi;
}

Real gamma_fn(Real x) {
  if (x > 0.5) return std::tgamma(x);
  if (near_nonpositive_integer(x, 1e-12))
    throw std::domain_error("gamma_fn: pole at x = " + std::to_string(x));
  return kPi / (std::sin(kPi * x) * std::tgamma(1.0 - x));
}

Real hyp2f1_series(Real a, Real b, Real c, Real z) {
  Real sum = 1.0;
  Real term = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1_series: no convergence");
}

Real hyp2f1(Real a, Real b, Real c, Real z) {
  return hyp2f1({a, b, c, z});
}

Real hyp2f1(const Hyp2F1Params& p) {
  if (near_nonpositive_integer(p.c, 1e-12))
    throw std::domain_error("hyp2f1: c must not be zero or a negative integer");
  if (p.z < 0.0 || p.z >= 1.0)
    throw std::domain_error("hyp2f1: z outside [0, 1)");
  if (p.z <= 0.5) return hyp2f1_series(p.a, p.b, p.c, p.z);

  const Real cab = p.c - p.a - p.b;
  if (std::abs(cab - std::round(cab)) < 1e-9)
    throw std::domain_error("hyp2f1: c - a - b too close to an integer for the z -> 1-z connection");

  // F(a,b;c;z) = G1 * F(a,b;a+b-c+1;1-z) + G2 * (1-z)^(c-a-b) * F(c-a,c-b;c-a-b+1;1-z)
  const Real zc = 1.0 - p.z;
  const Real g1 = gamma_fn(p.c) * gamma_fn(cab) * rgamma(p.c - p.a) * rgamma(p.c - p.b);
  const Real g2 = gamma_fn(p.c) * gamma_fn(-cab) * rgamma(p.a) * rgamma(p.b);
  return g1 * hyp2f1_series(p.a, p.b, p.a + p.b - p.c + 1.0, zc) +
         g2 * std::pow(zc, cab) * hyp2f1_series(p.c - p.a, p.c - p.b, cab + 1.0, zc);
}

Complex jacobi_poly(int n, Real alpha, Real beta, Complex z) {
  if (n < 0) throw std::domain_error("jacobi_poly: n must be non-negative");
  if (n == 0) return Complex(1.0, 0.0);
  Complex pm1(1.0, 0.0);
  Complex p0 = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * z;
  for (int m = 2; m <= n; ++m) {
    const Real ab = alpha + beta;
    const Real c1 = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0);
    const Real c2 = (2.0 * m + ab - 1.0) * (alpha * alpha - beta * beta);
    const Real c3 = (2.0 * m + ab - 1.0) * (2.0 * m + ab) * (2.0 * m + ab - 2.0);
    const Real c4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab);
    Complex p = ((c2 + c3 * z) * p0 - c4 * pm1) / c1;
    pm1 = p0;
    p0 = p;
  }
  return p0;
}

Real laguerre(int l, Real m, Real z) {
  if (l < 0) throw std::domain_error("laguerre: l must be non-negative");
  if (m <= -1.0) throw std::domain_error("laguerre: m must exceed -1");
  if (l == 0) return 1.0;
  Real lm1 = 1.0;
  Real l0 = 1.0 + m - z;
  for (int j = 1; j < l; ++j) {
    const Real next = ((2.0 * j + 1.0 + m - z) * l0 - (j + m) * lm1) / (j + 1.0);
    lm1 = l0;
    l0 = next;
  }
  return l0;
}

Real arccos_branch(Real y, int n) {
  if (n < 0) throw std::domain_error("arccos_branch: n must be non-negative");
  if (std::abs(y) > 1.0) {
    if (std::abs(y) > 1.0 + 1e-12)
      throw std::domain_error("arccos_branch: |y| > 1");
    y = std::clamp(y, -1.0, 1.0);
  }
  return n * kPi + std::acos(y);
}

}  // namespace anyonlab::specfun
