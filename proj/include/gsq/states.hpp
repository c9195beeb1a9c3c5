#pragma once

#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "gsq/fock.hpp"

namespace gsq {

struct VacuumSpec {};

struct FockStateSpec {
  int n1 = 0;
  int n2 = 0;
};

struct CoherentSpec {
  cplx alpha;
  cplx beta;
};

/// D1(alpha) D2(alpha) S1(xi) S2(xi) |0,0> with xi = q e^{i theta}.
struct DisplacedSqueezedSpec {
  cplx alpha;
  double q = 0.0;
  double theta = 0.0;
};

/// c1 |1,0> + c2 |0,1>.
struct SinglePhotonSpec {
  cplx c1;
  cplx c2;
};

struct CustomTerm {
  int n1 = 0;
  int n2 = 0;
  cplx amplitude;
};

struct CustomSpec {
  std::vector<CustomTerm> terms;
};

using StateKind =
    std::variant<VacuumSpec, FockStateSpec, CoherentSpec, DisplacedSqueezedSpec, SinglePhotonSpec, CustomSpec>;

struct StateSpec {
  StateKind kind;
  std::optional<std::pair<int, int>> cutoff;
};

struct BuildOptions {
  double leakage_tol = 1e-10;
  double exp_tol = 1e-6;
  /// Upper bound on auto-grown cutoffs.
  int max_auto_cutoff = 400;
};

/// Throws InputError on malformed fields (q < 0, theta outside [0, 2pi),
/// unnormalized single-photon amplitudes, empty custom list).
void validate(const StateSpec& spec);

/// Default per-mode cutoff for a target mean occupation mu:
/// ceil(mu + 8 sqrt(mu + 1) + 10).
int default_cutoff(double mean_occupation);

/// Builds a normalized state. Throws NumericError when the truncation leakage
/// exceeds options.leakage_tol.
QState build(const StateSpec& spec, const BuildOptions& options = {});

struct CoherentSeries {
  std::vector<cplx> amplitudes;  // unnormalized, n = 0..cutoff
  double leakage;                // tail probability beyond the cutoff
};

/// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!). Rejects |alpha| > 30.
CoherentSeries coherent_series(cplx alpha, int cutoff);

/// Single-mode displaced squeezed vacuum amplitudes (theta = 0, real alpha)
/// from the closed-form squeezed-vacuum series, displaced by a dense matrix
/// exponential in a padded space. Independent of build(). Requires
/// |alpha| <= 3, 0 <= q <= 0.8, cutoff <= 40.
std::vector<cplx> displaced_squeezed_oracle(double alpha, double q, int cutoff);

/// D(alpha) S(q e^{i theta}) |0> on the single-mode space (working_cutoff, 0),
/// squeeze applied first, both by exp_action.
QState displaced_squeezed_mode(cplx alpha, double q, double theta, int working_cutoff,
                               const BuildOptions& options = {});

/// Haar-like random pure state: i.i.d. complex Gaussian amplitudes, normalized.
QState random_state(const FockSpace& space, std::mt19937_64& rng);

}  // namespace gsq
