#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gsq/fock.hpp"
#include "gsq/gops.hpp"
#include "gsq/states.hpp"

namespace gsq {

/// The two squeeze angles with closed-form results: amplitude squeezing
/// (theta = 0) and phase squeezing (theta = pi).
enum class SqueezeAngle { zero, pi };

double radians(SqueezeAngle a);

/// Bright symmetric state D1(alpha) D2(alpha) S1(q) S2(q)|0,0>, real alpha,
/// n_bar = 2 alpha^2.
struct RegimeParams {
  double n_bar = 32.0;
  double q = 0.0;
  SqueezeAngle theta = SqueezeAngle::zero;
  double k_abs = 1.0;

  /// n_bar / sinh(q); infinite at q = 0.
  double regime_ratio() const;
  bool in_regime() const { return regime_ratio() >= 50.0; }
};

std::array<double, 4> analytic_g_std(const RegimeParams& params);

/// |K|^2 n_bar (1 + cos phi).
double analytic_mean_intensity(const RegimeParams& params, double phi);

enum class VarianceCase { coherent, theta0, thetaPi };

struct AnalyticVariance {
  double value = 0.0;
  bool clamped = false;  // theta = pi form went negative outside its regime
};

/// coherent: 2|K|^2 I(phi) at q = 0.
/// theta0:   coherent e^{-2q} + 2|K|^4 n_bar sinh(2q) sin^2 phi.
/// thetaPi:  coherent e^{2q}  - 2|K|^4 n_bar sinh(2q) sin^2 phi, clamped at 0.
AnalyticVariance analytic_intensity_variance(const RegimeParams& params, double phi, VarianceCase which);

VarianceCase variance_case(SqueezeAngle a);

/// Balanced (|c1| = |c2|): |K|^2 |sin phi|. One-sided (|c1| in {0, 1}): |K|^2.
double analytic_single_photon_std(cplx c1, cplx c2, double k_abs, double phi);

struct PhaseComparison {
  double phi = 0.0;
  double exact_variance = 0.0;
  double analytic_variance = 0.0;
  bool analytic_clamped = false;
  double relative_deviation = 0.0;  // infinite where the analytic value is 0
};

struct ComparisonReport {
  RegimeParams params;
  double regime_ratio = 0.0;
  bool in_regime = false;
  std::pair<int, int> cutoff;
  double leakage = 0.0;
  double exact_n_bar = 0.0;  // <G0> of the truncated state
  GStats exact;
  std::array<double, 4> analytic_std{};  // evaluated at exact_n_bar
  std::array<double, 4> std_relative_deviation{};
  SqueezeReport squeeze;
  std::vector<PhaseComparison> phases;  // phi in {0, +-pi/2, +-pi}
};

/// Builds the bright state exactly and measures how far the closed forms are
/// from exact truncated-Fock moments. Desk scale only: n_bar <= 100, q <= 0.6.
ComparisonReport compare_exact(const RegimeParams& params,
                               std::optional<std::pair<int, int>> cutoff = std::nullopt,
                               const BuildOptions& options = {});

/// The bright-state spec behind compare_exact.
StateSpec bright_state_spec(const RegimeParams& params);

}  // namespace gsq
