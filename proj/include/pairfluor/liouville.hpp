#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pairfluor/basis.hpp"
#include "pairfluor/params.hpp"

namespace pairfluor {

// Dissipator term rate/2 (2 x rho y+ - y+ x rho - rho y+ x).
struct JumpTerm {
  Mat4 x;
  Mat4 y;
  cplx rate;
  std::string label;
};

// Generator acting on column-stacked density matrices.
struct Liouvillian {
  Mat16 matrix;
  Mat4 hamiltonian;
  std::vector<JumpTerm> jumps;
  SystemParams params;
};

Liouvillian build_liouvillian(const SystemParams& p);

// Column stacking: vec(A X B) = (B^T kron A) vec(X).
Vec16 vectorize(const Mat4& m);
Mat4 devectorize(const Vec16& v);

struct DensityMatrix {
  Mat4 rho = Mat4::Zero();

  std::array<double, 4> populations() const;
  cplx expectation(const Mat4& op) const;  // Tr[op rho]
  // Throws NumericalError if not Hermitian, unit trace and positive within tolerance.
  void check() const;
};

DensityMatrix ground_state();

// Unique stationary state. Throws DegenerateSteadyStateError when the kernel has
// dimension above one.
DensityMatrix steady_state_dm(const Liouvillian& lv);
int kernel_dimension(const Liouvillian& lv);

DensityMatrix evolve_dm(const Liouvillian& lv, const DensityMatrix& rho0, double t);

// Eigenvalues sorted by descending real part.
std::vector<cplx> liouvillian_eigenvalues(const Liouvillian& lv);

enum class Emitter { First = 1, Second = 2 };

struct CorrelatorResult {
  std::vector<cplx> values;  // <s+(0) s(tau)> at steady state
  cplx offset = 0.0;         // |<s>|^2, the tau -> infinity limit
  bool truncated = false;    // not decayed to 1e-6 of the initial value by the last tau
  bool used_diagonalization = true;
};

CorrelatorResult two_time_correlator(const Liouvillian& lv, std::span<const double> tau_grid,
                                     Emitter e = Emitter::First);

struct OracleSpectrum {
  std::vector<double> values;  // normalized incoherent density on the grid
  double delta_weight = 0.0;   // |<s>|^2 / n
  double tau_max = 0.0;
  double dt = 0.0;
  bool truncated = false;  // step cap reached before the correlator decayed
};

// Spectrum from a time-domain quadrature of the offset-subtracted correlator.
// Throws ResolutionError if the grid has fewer than 8 points per width of the
// narrowest contributing line.
OracleSpectrum spectrum_fft(const Liouvillian& lv, std::span<const double> grid,
                            Emitter e = Emitter::First);

}  // namespace pairfluor
