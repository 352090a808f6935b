#pragma once
// Particle-level semantics: Jacobi and polar coordinate maps, ordering
// sectors of the angular variable, the exchange phase Theta = ka picked up
// per lattice-cell translation, and the crystal-momentum ladder
// p = (h/a)(Theta/2pi + n').

#include <array>

#include "anyonlab/scarf.hpp"
#include "anyonlab/types.hpp"

namespace anyonlab::exchange {

struct ParticleConfig {
  Real x1 = 0, x2 = 0, x3 = 0;
};

struct JacobiCoords {
  Real X = 0;  // center of mass
  Real x = 0;  // (x1 - x2)/sqrt(2)
  Real y = 0;  // (x1 + x2 - 2 x3)/sqrt(6)
};

JacobiCoords to_jacobi(const ParticleConfig& c);

struct PolarCoords {
  Real r = 0;
  Real phi = 0;  // in [0, 2pi); x = r sin(phi), y = r cos(phi)
};

PolarCoords to_polar(Real x, Real y);

// Sector p of phi in (p pi/3, (p+1) pi/3) and the descending-position
// ordering of the three particles there; p = 0 is x1 > x2 > x3.
struct OrderingSector {
  int p = 0;
  std::array<int, 3> ordering{1, 2, 3};  // particle labels, largest first
};

OrderingSector sector_of(Real phi);

enum class Statistics { bosonic, fermionic, anyonic };

struct ExchangeReport {
  Real k = 0;
  int cells_translated = 0;  // signed lattice-cell steps of the transposition
  Real theta = 0;            // exchange phase in [0, 2pi)
  Statistics classification = Statistics::bosonic;
};

// Phase acquired when the pair (i, j) is exchanged starting from the
// reference ordering x1 > x2 > x3: neighbor swaps step one sector
// ((1,2) forward, (2,3) backward), the outer swap (1,3) steps three.
// Each sector step is one lattice-cell translation, contributing ka.
ExchangeReport exchange_phase(Real k, Real a, std::pair<int, int> transposition);

// arg[K(x + a)/K(x)] in [0, 2pi), measured from the wavefunction itself.
// Throws if |K(x_probe)| is too small to divide by.
Real measured_exchange_phase(const scarf::BlochSolution& sol, Real x_probe);

// Crystal momentum p = (h/a)(Theta/2pi + n'), h = 2pi, Theta = ka.
Real momentum(Real k, Real a, int n_prime);

}  // namespace anyonlab::exchange
