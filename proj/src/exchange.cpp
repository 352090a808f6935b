#include "anyonlab/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace anyonlab::exchange {

namespace {

Real wrap_2pi(Real x) {
  Real r = std::fmod(x, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  if (std::abs(r - 2.0 * kPi) < 1e-14) r = 0.0;
  return r;
}

}  // namespace

JacobiCoords to_jacobi(const ParticleConfig& c) {
  return {(c.x1 + c.x2 + c.x3) / 3.0, (c.x1 - c.x2) / std::sqrt(2.0),
          (c.x1 + c.x2 - 2.0 * c.x3) / std::sqrt(6.0)};
}

PolarCoords to_polar(Real x, Real y) {
  const Real r = std::hypot(x, y);
  if (r == 0) throw std::domain_error("to_polar: full coincidence point");
  Real phi = std::atan2(x, y);  // phi measured from the +y axis
  if (phi < 0) phi += 2.0 * kPi;
  return {r, phi};
}

OrderingSector sector_of(Real phi) {
  phi = wrap_2pi(phi);
  if (std::abs(std::sin(3.0 * phi)) < 1e-12)
    throw std::domain_error("sector_of: phi lies on a coincidence line");
  const int p = static_cast<int>(std::floor(3.0 * phi / kPi));

  // representative configuration at the sector midpoint, inverted from the
  // Jacobi map with the center of mass at zero
  const Real mid = (p + 0.5) * kPi / 3.0;
  const Real x = std::sin(mid), y = std::cos(mid);
  const std::array<Real, 3> pos{x / std::sqrt(2.0) + y / std::sqrt(6.0),
                                -x / std::sqrt(2.0) + y / std::sqrt(6.0),
                                -2.0 * y / std::sqrt(6.0)};
  std::array<int, 3> order{1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return pos[i - 1] > pos[j - 1]; });
  return {p, order};
}

ExchangeReport exchange_phase(Real k, Real a, std::pair<int, int> transposition) {
  if (k < 0 || k * a > kPi + 1e-12)
    throw std::domain_error("exchange_phase: k outside [0, pi/a]");
  auto [i, j] = transposition;
  if (i > j) std::swap(i, j);
  int cells;
  if (i == 1 && j == 2) cells = 1;        // x1>x2>x3 -> x2>x1>x3, next sector
  else if (i == 2 && j == 3) cells = -1;  // -> x1>x3>x2, previous sector
  else if (i == 1 && j == 3) cells = 3;   // full reversal, opposite sector
  else throw std::domain_error("exchange_phase: transposition must name two of particles 1,2,3");

  ExchangeReport rep;
  rep.k = k;
  rep.cells_translated = cells;
  rep.theta = wrap_2pi(cells * k * a);
  if (rep.theta == 0.0)
    rep.classification = Statistics::bosonic;
  else if (std::abs(rep.theta - kPi) < 1e-14)
    rep.classification = Statistics::fermionic;
  else
    rep.classification = Statistics::anyonic;
  return rep;
}

Real measured_exchange_phase(const scarf::BlochSolution& sol, Real x_probe) {
  const Complex k0 = sol.evaluate(x_probe);
  const Complex k1 = sol.evaluate(x_probe + sol.params().a);
  if (std::abs(k0) < 1e-12)
    throw std::domain_error("measured_exchange_phase: probe too near a node, reposition it");
  return wrap_2pi(std::arg(k1 / k0));
}

Real momentum(Real k, Real a, int n_prime) {
  if (n_prime < 0) throw std::domain_error("momentum: n' must be non-negative");
  const Real h = 2.0 * kPi;
  return (h / a) * (k * a / (2.0 * kPi) + n_prime);
}

}  // namespace anyonlab::exchange
