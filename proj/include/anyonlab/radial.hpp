#pragma once
// Radial sector of the separated planar problem,
//
//   -u'' + [ omega^2 r^2 / 4 + (m^2 - 1/4) / r^2 ] u = E u,
//
// with eigenfunctions u = r^(m+1/2) exp(-omega r^2/4) L_l^(m)(omega r^2/2)
// and E = (2l + m + 1) omega, plus the assembly of the full planar
// eigenfunction Psi(r, phi) = r^m exp(-omega r^2/4) L_l^(m)(omega r^2/2) K(3 phi).

#include "anyonlab/scarf.hpp"
#include "anyonlab/types.hpp"

namespace anyonlab::radial {

struct RadialState {
  int l = 0;        // radial quantum number >= 0
  Real m = 0;       // angular separation constant, >= 0 here (m > -1 required)
  Real omega = 1;   // oscillator frequency > 0
};

RadialState radial_from_band(const scarf::BandPoint& pt, Real omega, int l);

Real energy(const RadialState& st);  // (2l + m + 1) omega

// u(r) = r^(m+1/2) exp(-omega r^2/4) L_l^(m)(omega r^2/2)
Real radial_wavefunction(const RadialState& st, Real r);

// the 1/sqrt(r)-reduced profile r^m exp(-omega r^2/4) L_l^(m)(omega r^2/2)
Real radial_reduced(const RadialState& st, Real r);

// Psi(r, phi) = radial_reduced(r) * K(3 a phi / pi). The angular solution
// must carry the same separation constant as the radial state.
Complex full_wavefunction(const RadialState& st, const scarf::BlochSolution& angular, Real r,
                          Real phi);

}  // namespace anyonlab::radial
