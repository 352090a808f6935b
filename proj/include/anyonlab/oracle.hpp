#pragma once
// Independent numerical verification engine: Frobenius-seeded integration
// of the angular equation across one period, transfer-matrix discriminant,
// numerical dispersion, Bloch-property measurement by continuation, and
// finite-difference residuals. Everything here works directly on the ODE
// and arbitrates the closed-form constructions.

#include <functional>
#include <optional>

#include "anyonlab/scarf.hpp"
#include "anyonlab/types.hpp"
#include "anyonlab/wolfes.hpp"

namespace anyonlab::oracle {

struct Options {
  // Frobenius matching offset, relative to the period. The projection onto
  // the local pair amplifies integrator error like eps^-(1/2+s), so the
  // offset is kept macroscopic and the seed series carries five correction
  // orders (truncation < 1e-15 here) instead of shrinking eps.
  Real eps_rel = 2e-3;
  Real rtol = 1e-13;     // integrator relative tolerance
  Real atol = 1e-16;     // integrator absolute tolerance
  bool potential_off = false;  // test hook: free particle, no singularities
};

// One-period transfer matrix propagating (K, K') from eps to a + eps.
struct TransferMatrix {
  Mat2 m = Mat2::Identity();
  Real det() const { return m.determinant(); }
  Real half_trace() const { return 0.5 * m.trace(); }
};

// Angular cell problem in the dimensionless form K'' = W(x) K,
// W = (pi/a)^2 [ g / sin^2(pi x/a) + f / cos^2(pi x/a) - lambda_theta^2 ].
// For the single-pole lattice f = 0 and lambda_theta is the band eigenvalue
// root; for the two-pole extension lambda_theta = lambda / 3.
struct CellProblem {
  Real a = 0;
  Real g = 0;             // sin-pole coupling (negative in the band window)
  Real f = 0;             // cos-pole coupling; 0 disables the interior pole
  Real lambda_theta = 0;  // eigenvalue root of the theta-form equation
};

CellProblem cell_problem(const scarf::ScarfParams& p, Real lambda);
CellProblem cell_problem(const wolfes::WolfesParams& p, Real lambda);

// Two-term-corrected Frobenius seed x^(1/2 +- s)(1 + c1 x^2 + c2 x^4) of the
// solution at distance eps from a singularity; returns value and derivative.
enum class Branch { plus, minus };
ValueDeriv frobenius_seed(const scarf::ScarfParams& p, Real lambda, Real eps, Branch branch);

TransferMatrix integrate_cell(const CellProblem& prob, const Options& opt = {});
TransferMatrix integrate_cell(const scarf::ScarfParams& p, Real lambda, const Options& opt = {});

// Delta(lambda) = tr(T)/2; bands are |Delta| <= 1.
Real discriminant(const CellProblem& prob, const Options& opt = {});
Real discriminant(const scarf::ScarfParams& p, Real lambda, const Options& opt = {});

// Root of Delta(lambda) = (-1)^n cos(ka) bracketed in the n-th band
// [n + 1/2 - s, n + 1/2 + s]; the sign alternation is the same branch
// convention that resolves the arccos in the analytic dispersion.
Real numerical_dispersion(const scarf::ScarfParams& p, int n, Real k, const Options& opt = {});

// Complex-valued samples on a grid, with enough provenance to reconstruct
// the differential operator they are supposed to satisfy.
struct SampledFunction {
  ArrayX xs;
  ArrayXc values;
  struct Meta {
    Real a = 0;
    Real g = 0;
    Real f = 0;
    Real lambda_theta = 0;
    Real k = 0;  // provenance only
  } meta;
};

// Max relative residual of K'' = W K on a uniform grid, central second
// differences with one Richardson extrapolation step, measured relative to
// max |(pi/a)^2 lambda_theta^2 K|. Throws if the grid has fewer than 16
// usable interior points or is not uniform.
Real ode_residual(const SampledFunction& f);

// Max over the grid of |K(x + a) - mu K(x)| / max |K|, where K(x + a) is
// obtained by numerically continuing (K, K')(x) across the period (poles
// crossed with the Frobenius connection) and mu is the solution's Floquet
// multiplier. This is the arbitration test of the closed-form assembly:
// it fails loudly when lambda is taken off the dispersion curve.
Real check_bloch(const scarf::BlochSolution& sol, const ArrayX& xs, const Options& opt = {});
Real check_bloch(const wolfes::WolfesBloch& sol, const ArrayX& xs, const Options& opt = {});

// Continuation of a complex solution state over [x0, x1] for the given cell
// problem (used by check_bloch; exposed for tests).
Vec2c continue_state(const CellProblem& prob, Real x0, const Vec2c& y0, Real x1,
                     const Options& opt = {});

// Safeguarded bisection/secant root of fn on [lo, hi]; requires a sign
// change and reports bracket failure otherwise.
Real find_root(const std::function<Real(Real)>& fn, Real lo, Real hi, Real xtol);

}  // namespace anyonlab::oracle
