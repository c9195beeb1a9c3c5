#pragma once

#include <optional>
#include <vector>

#include "gsq/fock.hpp"
#include "gsq/gops.hpp"

namespace gsq {

/// Fringe grid over the path-difference phase phi = k * dr. Only |K| enters
/// the intensity operator, so the phase of K is not stored.
struct FringeConfig {
  double k_abs = 1.0;
  double phi_min = -1.5 * 3.14159265358979323846;
  double phi_max = 1.5 * 3.14159265358979323846;
  int n_points = 256;

  void validate() const;
  std::vector<double> grid() const;
};

struct FringePoint {
  double phi = 0.0;
  double mean_intensity = 0.0;
  double std_exact = 0.0;
  std::optional<double> std_analytic;
  bool zero_reachable = false;  // mean - std <= 0
};

struct PhiInterval {
  double lo;
  double hi;
};

/// I = |K|^2 [G0 + G2 cos(phi) - G3 sin(phi)].
QOperator intensity_operator(const FockSpace& space, double k_abs, double phi);

/// Exact mean and standard deviation of I at every grid point. G_n|psi> is
/// computed once; I|psi> is recombined per phase and <I^2> = ||I psi||^2.
std::vector<FringePoint> fringe_scan(const QState& state, const FringeConfig& config);

/// |K|^2 {G0 + |G2 + iG3| cos[arg(G2 + iG3) + phi]}.
double classical_mean_intensity(const GStats& stats, double k_abs, double phi);

/// |K|^4 c^T C c with c = (1, cos phi, -sin phi) over the symmetrized
/// (G0, G2, G3) covariance block. Compares against the direct variance and
/// throws NumericError on disagreement beyond 1e-8.
double variance_decomposition(const QState& state, double k_abs, double phi, const GStats& stats);

/// Same quadratic form without the direct cross-check.
double variance_from_covariance(const GStats& stats, double k_abs, double phi);

/// Maximal runs where mean - std <= 0, with linearly interpolated edges.
std::vector<PhiInterval> zero_reachable_regions(const std::vector<FringePoint>& points);

}  // namespace gsq
