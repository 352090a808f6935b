#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "anyonlab/specfun.hpp"

using namespace anyonlab;
using namespace anyonlab::specfun;

namespace {

// independent oracle: plain 60-term power series
Real series60(Real a, Real b, Real c, Real z) {
  Real sum = 1.0, term = 1.0;
  for (int n = 0; n < 60; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z;
    sum += term;
  }
  return sum;
}

// independent oracle: finite hypergeometric sum
// P_n^{(a,b)}(z) = binom(n+a, n) 2F1(-n, n+a+b+1; a+1; (1-z)/2)
Complex jacobi_sum(int n, Real al, Real be, Complex z) {
  const Real binom = std::tgamma(n + al + 1.0) * rgamma(al + 1.0) / std::tgamma(n + 1.0);
  Complex tot(1.0), term(1.0);
  for (int j = 0; j < n; ++j) {
    term *= (static_cast<Real>(-n + j)) * (n + al + be + 1.0 + j) /
            ((al + 1.0 + j) * (1.0 + j)) * (0.5 * (1.0 - z));
    tot += term;
  }
  return binom * tot;
}

}  // namespace

TEST_CASE("hyp2f1 basics") {
  CHECK(hyp2f1(0.55, -0.15, 1.3, 0.0) == 1.0);  // empty series

  // a = -1 truncates after one term: 1 - b z / c
  CHECK(hyp2f1(-1.0, 0.7, 1.4, 0.31) == doctest::Approx(1.0 - 0.7 * 0.31 / 1.4).epsilon(1e-14));

  // frozen from the 60-term series oracle
  const Real frozen = 1.0683190207554167;
  CHECK(std::abs(series60(0.4, 0.6, 1.25, 0.3) - frozen) < 1e-15);
  CHECK(std::abs(hyp2f1(0.4, 0.6, 1.25, 0.3) - frozen) < 1e-12 * frozen);
}

TEST_CASE("hyp2f1 connection region") {
  // c - a - b = 1/2 family, as used by the band basis
  const Real a = 0.25 + 0.15 + 0.21, b = 0.25 + 0.15 - 0.21, c = 1.3;
  for (Real z : {0.51, 0.7, 0.9, 0.99, 0.9999}) {
    // reference: series at mirrored argument via the same connection the
    // implementation uses is not independent, so compare against a direct
    // high-order series at z (converges slowly but surely for z < 1)
    Real sum = 1.0, term = 1.0;
    int n = 0;
    while (std::abs(term) > 1e-17 * std::abs(sum) && n < 200000) {
      term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z;
      sum += term;
      ++n;
    }
    CHECK(std::abs(hyp2f1(a, b, c, z) - sum) < 1e-10 * std::abs(sum));
  }
}

TEST_CASE("hyp2f1 domain errors") {
  CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.2, -0.1), std::domain_error);
  CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -2.0, 0.3), std::domain_error);
  // c - a - b integral: connection degenerates
  CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 2.0, 0.75), std::domain_error);
}

TEST_CASE("hyp2f1 contiguous relation") {
  // c(c-1)(z-1)F(c-1) + c[c-1-(2c-a-b-1)z]F(c) + (c-a)(c-b)z F(c+1) = 0
  std::mt19937 rng(17);
  std::uniform_real_distribution<Real> par(0.05, 0.9), zd(0.05, 0.45);
  for (int trial = 0; trial < 200; ++trial) {
    const Real a = par(rng), b = -par(rng), c = 1.0 + par(rng), z = zd(rng);
    const Real fm = hyp2f1(a, b, c - 1, z);
    const Real f0 = hyp2f1(a, b, c, z);
    const Real fp = hyp2f1(a, b, c + 1, z);
    const Real lhs = c * (c - 1) * (z - 1) * fm +
                     c * (c - 1 - (2 * c - a - b - 1) * z) * f0 + (c - a) * (c - b) * z * fp;
    const Real scale = std::abs(c * (c - 1) * (z - 1) * fm) + std::abs(f0) + 1.0;
    CHECK(std::abs(lhs) < 1e-9 * scale);
  }
}

TEST_CASE("jacobi polynomial") {
  const Complex z(0.3, -0.4);
  CHECK(jacobi_poly(0, -0.7, 1.3, z) == Complex(1.0, 0.0));

  const Complex p1 = jacobi_poly(1, -0.7, 1.3, z);
  const Complex p1_ref = 0.5 * (-0.7 - 1.3) + 0.5 * (-0.7 + 1.3 + 2.0) * z;
  CHECK(std::abs(p1 - p1_ref) < 1e-14);

  // frozen from the finite-sum oracle
  const Complex frozen(2.4424906541753462e-18, 0.032396000000000022);
  const Complex via_sum = jacobi_sum(3, -3.2, -3.2, Complex(0.0, -0.7));
  CHECK(std::abs(via_sum - frozen) < 1e-14);
  CHECK(std::abs(jacobi_poly(3, -3.2, -3.2, Complex(0.0, -0.7)) - frozen) < 1e-12);
}

TEST_CASE("jacobi recurrence matches hypergeometric expansion") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<Real> pd(-3.4, 1.5), xr(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Real al = pd(rng), be = pd(rng);
    for (int n = 0; n <= 6; ++n) {
      // keep away from degenerate recurrence denominators
      if (std::abs(al + be + n) < 0.1 || std::abs(al + be + 2 * n) < 0.2) continue;
      bool skip = false;
      for (int j = 1; j <= n; ++j)
        if (std::abs(al + be + n + j) < 0.05 || std::abs(al + be + 2.0 * j - 2.0) < 0.05 ||
            std::abs(al + be + 2.0 * j) < 0.05)
          skip = true;
      if (skip) continue;
      const Complex z(xr(rng), 0.0);
      const Complex zi(0.0, xr(rng));
      for (const Complex& arg : {z, zi}) {
        const Complex a1 = jacobi_poly(n, al, be, arg);
        const Complex a2 = jacobi_sum(n, al, be, arg);
        CHECK(std::abs(a1 - a2) <= 1e-10 * (1.0 + std::abs(a2)));
      }
    }
  }
}

TEST_CASE("laguerre polynomial") {
  CHECK(laguerre(0, 0.7, 2.3) == 1.0);
  CHECK(laguerre(1, 0.7, 2.3) == doctest::Approx(1.0 + 0.7 - 2.3).epsilon(1e-15));
  // explicit degree-2 form (m+1)(m+2)/2 - (m+2) z + z^2/2
  CHECK(laguerre(2, 0.27, 1.5) == doctest::Approx(-0.83855).epsilon(1e-14));
  CHECK_THROWS_AS(laguerre(2, -1.0, 0.5), std::domain_error);
}

TEST_CASE("laguerre differential equation") {
  // z L'' + (m + 1 - z) L' + l L = 0, derivatives from d/dz L_l^m = -L_{l-1}^{m+1}
  for (int l : {1, 2, 3, 5}) {
    for (Real m : {-0.4, 0.27, 1.8}) {
      for (Real z : {0.3, 1.1, 4.7}) {
        const Real lp = -laguerre(l - 1, m + 1, z);
        const Real lpp = l >= 2 ? laguerre(l - 2, m + 2, z) : 0.0;
        const Real res = z * lpp + (m + 1 - z) * lp + l * laguerre(l, m, z);
        CHECK(std::abs(res) < 1e-10);
      }
    }
  }
}

TEST_CASE("arccos_branch") {
  CHECK(arccos_branch(1.0, 0) == 0.0);
  CHECK(arccos_branch(0.0, 2) == doctest::Approx(2.0 * kPi + 0.5 * kPi).epsilon(1e-15));
  // arccos(sin(pi s)) = pi/2 - pi s
  CHECK(arccos_branch(std::sin(0.3 * kPi), 0) == doctest::Approx(0.2 * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(arccos_branch(1.5, 0), std::domain_error);

  for (int n : {0, 1, 3}) {
    for (Real th = 0.05; th < kPi; th += 0.3)
      CHECK(arccos_branch(std::cos(th), n) == doctest::Approx(n * kPi + th).epsilon(1e-13));
  }
}
