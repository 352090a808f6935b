#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "anyonlab/oracle.hpp"
#include "anyonlab/scarf.hpp"

using namespace anyonlab;
using namespace anyonlab::scarf;

namespace {

const ScarfParams kP = scarf_from_coupling(-0.16, kPi / 3.0);  // s = 0.3

// finite-difference residual of the cell equation on one analytic sample,
// two Richardson levels
Real fd_residual(const ScarfParams& p, Real lambda,
                 const std::function<Complex(Real)>& f, Real x0, Real x1, int npts) {
  const Real b = kPi / p.a;
  const Real h = (x1 - x0) / (npts - 1);
  Real worst = 0, denom = 0;
  for (int i = 4; i < npts - 4; ++i) {
    const Real x = x0 + i * h;
    const Complex d1 = (f(x - h) - 2.0 * f(x) + f(x + h)) / (h * h);
    const Complex d2 = (f(x - 2 * h) - 2.0 * f(x) + f(x + 2 * h)) / (4.0 * h * h);
    const Complex d4 = (f(x - 4 * h) - 2.0 * f(x) + f(x + 4 * h)) / (16.0 * h * h);
    const Complex second = (64.0 * d1 - 20.0 * d2 + d4) / 45.0;
    const Real w = -b * b * lambda * lambda + b * b * p.g / std::pow(std::sin(b * x), 2);
    worst = std::max(worst, std::abs(second - w * f(x)));
    denom = std::max(denom, b * b * lambda * lambda * std::abs(f(x)));
  }
  return worst / denom;
}

}  // namespace

TEST_CASE("coupling window") {
  CHECK(scarf_from_coupling(-0.16, kPi / 3).s == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(scarf_from_coupling(-1e-9, 1.0).s == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(scarf_from_coupling(-0.25 + 1e-9, 1.0).s == doctest::Approx(0.0).epsilon(1e-4));
  CHECK_THROWS_AS(scarf_from_coupling(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(scarf_from_coupling(-0.25, 1.0), std::domain_error);
  CHECK_THROWS_AS(scarf_from_coupling(0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(scarf_from_coupling(-0.1, -1.0), std::domain_error);
}

TEST_CASE("dispersion and band edges") {
  const Real ka_max = kPi / kP.a;
  CHECK(dispersion_lambda(kP, 0, 0.0).lambda == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(dispersion_lambda(kP, 0, ka_max).lambda == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(dispersion_lambda(kP, 0, 0.0).m == doctest::Approx(0.6).epsilon(1e-12));

  const auto [lo0, hi0] = band_edges(kP, 0);
  CHECK(lo0 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(hi0 == doctest::Approx(0.8).epsilon(1e-15));
  const auto [lo2, hi2] = band_edges(kP, 2);
  CHECK(lo2 == doctest::Approx(2.2).epsilon(1e-15));
  CHECK(hi2 == doctest::Approx(2.8).epsilon(1e-15));

  // gap closes at s = 1/2: free-particle spectrum
  const ScarfParams free{0.0, 0.5, kPi / 3.0};
  CHECK(dispersion_lambda(free, 0, kPi / free.a).lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dispersion_lambda(free, 1, 0.0).lambda == doctest::Approx(1.0).epsilon(1e-12));

  // bandwidth 2s, gap 1 - 2s for every band
  for (int n = 0; n < 5; ++n) {
    const auto [lo, hi] = band_edges(kP, n);
    CHECK(hi - lo == doctest::Approx(2 * kP.s).epsilon(1e-15));
    CHECK(band_edges(kP, n + 1).first - hi == doctest::Approx(1 - 2 * kP.s).epsilon(1e-13));
    CHECK(dispersion_lambda(kP, n, 0.0).lambda == doctest::Approx(lo).epsilon(1e-14));
    CHECK(dispersion_lambda(kP, n, kPi / kP.a).lambda == doctest::Approx(hi).epsilon(1e-14));
  }
}

TEST_CASE("dispersion is monotone and continuous in k") {
  for (int n : {0, 1, 2, 3}) {
    Real prev = dispersion_lambda(kP, n, 0.0).lambda;
    for (int i = 1; i <= 64; ++i) {
      const Real k = (kPi / kP.a) * i / 64.0;
      const Real lam = dispersion_lambda(kP, n, k).lambda;
      CHECK(lam > prev);
      CHECK(lam - prev < 0.05);  // no jumps on a fine grid
      prev = lam;
    }
  }
}

TEST_CASE("free-particle limit of the band union") {
  const ScarfParams nearly{0.4999 * 0.4999 - 0.25, 0.4999, kPi / 3.0};
  for (int n = 0; n < 4; ++n) {
    const Real gap = band_edges(nearly, n + 1).first - band_edges(nearly, n).second;
    CHECK(gap > 0);
    CHECK(gap <= 3e-4);
  }
}

TEST_CASE("basis leading behavior at the singularity") {
  const Real lambda = 0.55;
  const Real b = kPi / kP.a;
  for (Real x : {1e-6, 1e-7, 1e-8}) {
    CHECK(basis_u(kP, lambda, x) / std::pow(x, 0.5 + kP.s) ==
          doctest::Approx(std::pow(b, 0.5 + kP.s)).epsilon(1e-8));
    CHECK(basis_v(kP, lambda, x) / std::pow(x, 0.5 - kP.s) ==
          doctest::Approx(std::pow(b, 0.5 - kP.s)).epsilon(1e-8));
  }
}

TEST_CASE("basis functions solve the cell equation") {
  const Real lambda = 0.55;
  auto fu = [&](Real x) { return Complex(basis_u(kP, lambda, x), 0.0); };
  auto fv = [&](Real x) { return Complex(basis_v(kP, lambda, x), 0.0); };
  // margins keep the Richardson truncation of the x^(1/2-s) branch small
  CHECK(fd_residual(kP, lambda, fu, 0.2 * kP.a, 0.5 * kP.a, 257) < 1e-8);
  CHECK(fd_residual(kP, lambda, fv, 0.2 * kP.a, 0.5 * kP.a, 257) < 1e-8);

  // derivative consistency against central differences
  const Real x = 0.31 * kP.a, h = 1e-6;
  CHECK(basis_u_deriv(kP, lambda, x).deriv ==
        doctest::Approx((basis_u(kP, lambda, x + h) - basis_u(kP, lambda, x - h)) / (2 * h))
            .epsilon(1e-8));
  CHECK(basis_v_deriv(kP, lambda, x).deriv ==
        doctest::Approx((basis_v(kP, lambda, x + h) - basis_v(kP, lambda, x - h)) / (2 * h))
            .epsilon(1e-8));
}

TEST_CASE("basis at band edges reduces to the polynomial form") {
  // pointwise proportionality via cross products: u_i e_j = u_j e_i avoids
  // amplification near the interior nodes of the higher edge functions.
  // The polynomial form is real for even n and purely imaginary for odd n.
  for (int n : {0, 1, 2, 3}) {
    const auto [lo, hi] = band_edges(kP, n);
    for (Edge e : {Edge::lower, Edge::upper}) {
      const Real lambda = e == Edge::lower ? lo : hi;
      std::vector<Real> bas(64), edge(64);
      Real bmax = 0, emax = 0;
      for (int i = 0; i < 64; ++i) {
        const Real x = 0.5 * kP.a * (i + 1) / 64.0;
        bas[i] = e == Edge::lower ? basis_v(kP, lambda, x) : basis_u(kP, lambda, x);
        const Complex ef = band_edge_wavefunction(kP, n, e, x);
        edge[i] = n % 2 == 0 ? ef.real() : ef.imag();
        bmax = std::max(bmax, std::abs(bas[i]));
        emax = std::max(emax, std::abs(edge[i]));
      }
      for (int i = 0; i < 64; i += 3)
        for (int j = i + 1; j < 64; j += 5)
          CHECK(std::abs(bas[i] * edge[j] - bas[j] * edge[i]) <= 1e-8 * bmax * emax);
    }
  }
}

TEST_CASE("band edge wavefunctions") {
  // n = 0 lower edge: pure [sin^2]^(1/4 - s/2)
  for (Real x : {0.1, 0.4, 0.7}) {
    const Complex val = band_edge_wavefunction(kP, 0, Edge::lower, x * kP.a);
    const Real expect = std::pow(std::pow(std::sin(kPi * x), 2), 0.25 - 0.5 * kP.s);
    CHECK(val.real() == doctest::Approx(expect).epsilon(1e-13));
    CHECK(val.imag() == 0.0);
  }

  // vanishes at lattice points
  CHECK(std::abs(band_edge_wavefunction(kP, 2, Edge::upper, kP.a)) == 0.0);

  // solves the cell equation at lambda = n + 1/2 -+ s
  for (int n : {0, 1, 2}) {
    const auto [lo, hi] = band_edges(kP, n);
    auto flo = [&](Real x) { return band_edge_wavefunction(kP, n, Edge::lower, x); };
    auto fhi = [&](Real x) { return band_edge_wavefunction(kP, n, Edge::upper, x); };
    CHECK(fd_residual(kP, lo, flo, 0.2 * kP.a, 0.8 * kP.a, 257) < 1e-8);
    CHECK(fd_residual(kP, hi, fhi, 0.2 * kP.a, 0.8 * kP.a, 257) < 1e-8);
  }

  // constant complex phase across the grid (real content)
  for (int n : {0, 1, 2, 3}) {
    for (Edge e : {Edge::lower, Edge::upper}) {
      Real phase0 = -10;
      for (int i = 1; i < 48; ++i) {
        const Complex val = band_edge_wavefunction(kP, n, e, kP.a * i / 48.0);
        if (std::abs(val) < 1e-12) continue;
        Real ph = std::fmod(std::arg(val) + 2 * kPi, kPi);  // mod pi: sign flips allowed
        if (phase0 == -10) phase0 = ph;
        const Real d = std::min(std::abs(ph - phase0), kPi - std::abs(ph - phase0));
        CHECK(d < 1e-10);
      }
    }
  }

  // edge multiplier across one period: (-1)^n lower, (-1)^(n+1) upper
  for (int n : {0, 1, 2}) {
    const Real x = 0.37 * kP.a;
    const Complex lo_ratio = band_edge_wavefunction(kP, n, Edge::lower, x + kP.a) /
                             band_edge_wavefunction(kP, n, Edge::lower, x);
    const Complex hi_ratio = band_edge_wavefunction(kP, n, Edge::upper, x + kP.a) /
                             band_edge_wavefunction(kP, n, Edge::upper, x);
    CHECK(std::abs(lo_ratio - Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0)) < 1e-10);
    CHECK(std::abs(hi_ratio - Complex(n % 2 == 0 ? -1.0 : 1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("bloch wavefunction properties") {
  const Real ka_max = kPi / kP.a;

  // quasi-periodicity with the Floquet phase at scattered points
  for (int n : {0, 1, 2}) {
    for (Real kf : {0.15, 0.5, 0.85}) {
      const BlochSolution sol(kP, dispersion_lambda(kP, n, kf * ka_max));
      const Complex mu = sol.bloch_factor();
      for (Real xf : {-0.7, 0.23, 0.61, 1.37, 2.81}) {
        const Real x = xf * kP.a;
        CHECK(std::abs(sol.evaluate(x + kP.a) - mu * sol.evaluate(x)) < 1e-12);
      }
      // even bands carry exactly exp(i k a)
      if (n % 2 == 0)
        CHECK(std::abs(mu - std::polar(1.0, kf * kPi)) < 1e-14);
    }
  }

  // k = 0 on an even band: real, cell-translation invariant
  const BlochSolution sol0(kP, dispersion_lambda(kP, 0, 0.0));
  for (Real xf : {0.2, 0.55, 1.3}) {
    const Complex val = sol0.evaluate(xf * kP.a);
    CHECK(std::abs(val.imag()) < 1e-14);
    CHECK(std::abs(sol0.evaluate(xf * kP.a + kP.a) - val) < 1e-13);
  }

  // k = pi/a on an even band: sign flip per cell
  const BlochSolution solpi(kP, dispersion_lambda(kP, 0, ka_max));
  for (Real xf : {0.2, 0.55, 1.3})
    CHECK(std::abs(solpi.evaluate(xf * kP.a + kP.a) + solpi.evaluate(xf * kP.a)) < 1e-13);

  // vanishes at lattice points
  CHECK(std::abs(sol0.evaluate(0.0)) == 0.0);
  CHECK(std::abs(solpi.evaluate(3 * kP.a)) == 0.0);
}

TEST_CASE("bloch solutions solve the lattice equation") {
  for (int n : {0, 1}) {
    for (Real kf : {0.0, 0.35, 1.0}) {
      const auto pt = dispersion_lambda(kP, n, kf * kPi / kP.a);
      const BlochSolution sol(kP, pt);
      auto f = [&](Real x) { return sol.evaluate(x); };
      // windows inside two different cells
      CHECK(fd_residual(kP, pt.lambda, f, 0.2 * kP.a, 0.8 * kP.a, 257) < 1e-7);
      CHECK(fd_residual(kP, pt.lambda, f, 1.2 * kP.a, 1.8 * kP.a, 257) < 1e-7);
    }
  }
}

TEST_CASE("bloch matches the band-edge forms at k = 0 and pi/a") {
  for (int n : {0, 1, 2, 3}) {
    const BlochSolution at0(kP, dispersion_lambda(kP, n, 0.0));
    const BlochSolution atpi(kP, dispersion_lambda(kP, n, kPi / kP.a));
    Real r0 = 0, rpi = 0;
    for (int i = 1; i <= 64; ++i) {
      const Real x = 1.9 * kP.a * i / 65.0 + 0.02 * kP.a;
      const Complex e0 = band_edge_wavefunction(kP, n, Edge::lower, x);
      const Complex epi = band_edge_wavefunction(kP, n, Edge::upper, x);
      if (std::abs(e0) > 1e-10) {
        const Real q = std::abs(at0.evaluate(x)) / std::abs(e0);
        if (r0 == 0) r0 = q;
        CHECK(q == doctest::Approx(r0).epsilon(1e-8));
      }
      if (std::abs(epi) > 1e-10) {
        const Real q = std::abs(atpi.evaluate(x)) / std::abs(epi);
        if (rpi == 0) rpi = q;
        CHECK(q == doctest::Approx(rpi).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("check_bloch regression and negative control") {
  const ArrayX grid = ArrayX::LinSpaced(24, 0.08 * kP.a, 0.92 * kP.a);

  const auto pt = dispersion_lambda(kP, 0, 0.4 * kPi / kP.a);
  const BlochSolution sol(kP, pt);
  CHECK(oracle::check_bloch(sol, grid) < 1e-8);

  const BlochSolution sol0(kP, dispersion_lambda(kP, 0, 0.0));
  CHECK(oracle::check_bloch(sol0, grid) < 1e-8);

  // odd band: the continuation confirms the multiplier exp(i(pi - ka))
  const BlochSolution sol1(kP, dispersion_lambda(kP, 1, 0.4 * kPi / kP.a));
  CHECK(std::abs(sol1.theta() - (kPi - 0.4 * kPi)) < 1e-14);
  CHECK(oracle::check_bloch(sol1, grid) < 1e-8);

  // off-dispersion negative control
  BandPoint bad = pt;
  bad.lambda += 1e-3;
  const BlochSolution broken(kP, bad);
  CHECK(oracle::check_bloch(broken, grid) > 1e-3);
}
