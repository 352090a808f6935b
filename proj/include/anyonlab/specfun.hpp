#pragma once
// Scalar special-function kernels: Gauss hypergeometric 2F1 on [0, 1),
// Jacobi polynomials with complex argument, generalized Laguerre
// polynomials with real upper index, and a branch-resolved inverse cosine.
// All functions are pure and thread-safe.

#include "anyonlab/types.hpp"

namespace anyonlab::specfun {

struct Hyp2F1Params {
  Real a = 0;
  Real b = 0;
  Real c = 1;
  Real z = 0;  // in [0, 1)
};

// Gauss 2F1(a, b; c; z). Direct series for z <= 1/2; two-term z -> 1 - z
// connection for 1/2 < z < 1. The connection degenerates when c - a - b
// approaches an integer, which is rejected; every use in this project has
// c - a - b = +-1/2.
Real hyp2f1(const Hyp2F1Params& p);
Real hyp2f1(Real a, Real b, Real c, Real z);

// Plain power series sum of 2F1, valid for |z| < 1 (used directly on the
// connection branches where the mapped argument is <= 1/2).
Real hyp2f1_series(Real a, Real b, Real c, Real z);

// P_n^{(alpha,beta)}(z) by the three-term recurrence in complex arithmetic.
Complex jacobi_poly(int n, Real alpha, Real beta, Complex z);

// Generalized Laguerre polynomial L_l^{(m)}(z), m > -1.
Real laguerre(int l, Real m, Real z);

// n-th branch of the inverse cosine: n*pi + acos(y) with acos in [0, pi].
// Monotone decreasing in y for fixed n.
Real arccos_branch(Real y, int n);

// 1/Gamma(x): entire, evaluates to 0 at the poles of Gamma.
Real rgamma(Real x);

// Gamma(x) for non-pole x of either sign (reflection formula for x < 1/2).
Real gamma_fn(Real x);

}  // namespace anyonlab::specfun
