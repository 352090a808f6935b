#include "anyonlab/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "anyonlab/specfun.hpp"

namespace anyonlab::radial {

RadialState radial_from_band(const scarf::BandPoint& pt, Real omega, int l) {
  if (l < 0) throw std::domain_error("radial_from_band: l must be non-negative");
  if (!(omega > 0)) throw std::domain_error("radial_from_band: omega must be positive");
  return {l, pt.m, omega};
}

Real energy(const RadialState& st) { return (2.0 * st.l + st.m + 1.0) * st.omega; }

Real radial_wavefunction(const RadialState& st, Real r) {
  if (r < 0) throw std::domain_error("radial_wavefunction: r must be non-negative");
  if (r == 0) return 0.0;
  const Real z = 0.5 * st.omega * r * r;
  return std::pow(r, st.m + 0.5) * std::exp(-0.5 * z) * specfun::laguerre(st.l, st.m, z);
}

Real radial_reduced(const RadialState& st, Real r) {
  if (r < 0) throw std::domain_error("radial_reduced: r must be non-negative");
  const Real z = 0.5 * st.omega * r * r;
  return std::pow(r, st.m) * std::exp(-0.5 * z) * specfun::laguerre(st.l, st.m, z);
}

Complex full_wavefunction(const RadialState& st, const scarf::BlochSolution& angular, Real r,
                          Real phi) {
  if (std::abs(st.m - angular.point().m) > 1e-12 * (1.0 + std::abs(st.m)))
    throw std::invalid_argument("full_wavefunction: radial and angular separation constants differ");
  const Real x = 3.0 * angular.params().a * phi / kPi;
  return radial_reduced(st, r) * angular.evaluate(x);
}

}  // namespace anyonlab::radial
