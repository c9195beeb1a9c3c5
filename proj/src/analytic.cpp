#include "gsq/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gsq/interference.hpp"

namespace gsq {

double radians(SqueezeAngle a) { return a == SqueezeAngle::zero ? 0.0 : std::numbers::pi; }

double RegimeParams::regime_ratio() const {
  const double s = std::sinh(q);
  return s == 0.0 ? std::numeric_limits<double>::infinity() : n_bar / s;
}

std::array<double, 4> analytic_g_std(const RegimeParams& p) {
  const double root = std::sqrt(p.n_bar);
  const double squeezed = root * std::exp(-p.q);
  const double anti = root * std::exp(p.q);
  if (p.theta == SqueezeAngle::zero) return {squeezed, squeezed, squeezed, anti};
  return {anti, anti, anti, squeezed};
}

double analytic_mean_intensity(const RegimeParams& p, double phi) {
  return p.k_abs * p.k_abs * p.n_bar * (1.0 + std::cos(phi));
}

VarianceCase variance_case(SqueezeAngle a) {
  return a == SqueezeAngle::zero ? VarianceCase::theta0 : VarianceCase::thetaPi;
}

AnalyticVariance analytic_intensity_variance(const RegimeParams& p, double phi, VarianceCase which) {
  const double k2 = p.k_abs * p.k_abs;
  const double coherent = 2.0 * k2 * analytic_mean_intensity(p, phi);
  if (which == VarianceCase::coherent) return {coherent, false};

  const double s = std::sin(phi);
  const double extra = 2.0 * k2 * k2 * p.n_bar * std::sinh(2.0 * p.q) * s * s;
  if (which == VarianceCase::theta0) return {coherent * std::exp(-2.0 * p.q) + extra, false};

  const double v = coherent * std::exp(2.0 * p.q) - extra;
  if (v >= 0.0) return {v, false};
  // Rounding-level negatives at the fringe minimum are not a regime breakdown.
  const double scale = 4.0 * k2 * k2 * p.n_bar * std::exp(2.0 * p.q);
  return {0.0, v < -1e-12 * scale};
}

double analytic_single_photon_std(cplx c1, cplx c2, double k_abs, double phi) {
  const double p1 = std::norm(c1);
  const double p2 = std::norm(c2);
  if (std::abs(p1 + p2 - 1.0) > 1e-9) throw InputError("single-photon amplitudes are not normalized");
  const double k2 = k_abs * k_abs;
  if (std::abs(p1 - p2) <= 1e-12) return k2 * std::abs(std::sin(phi));
  if (p1 <= 1e-12 || p2 <= 1e-12) return k2;
  throw InputError("closed form covers only balanced or one-sided single-photon states");
}

StateSpec bright_state_spec(const RegimeParams& p) {
  if (!(p.n_bar >= 0.0)) throw InputError("n_bar must be non-negative");
  return StateSpec{DisplacedSqueezedSpec{cplx(std::sqrt(p.n_bar / 2.0), 0.0), p.q, radians(p.theta)}, std::nullopt};
}

ComparisonReport compare_exact(const RegimeParams& params, std::optional<std::pair<int, int>> cutoff,
                               const BuildOptions& options) {
  if (!(params.n_bar > 0.0) || params.n_bar > 100.0 || params.q < 0.0 || params.q > 0.6) {
    throw InputError("compare_exact is limited to 0 < n_bar <= 100 and 0 <= q <= 0.6");
  }
  StateSpec spec = bright_state_spec(params);
  spec.cutoff = cutoff;
  const QState state = build(spec, options);

  ComparisonReport r;
  r.params = params;
  r.regime_ratio = params.regime_ratio();
  r.in_regime = params.in_regime();
  r.cutoff = {state.space().cutoff1(), state.space().cutoff2()};
  r.leakage = state.leakage();
  r.exact = g_stats(state);
  r.exact_n_bar = r.exact.n_bar;
  r.squeeze = squeeze_report(r.exact);

  RegimeParams at_exact = params;
  at_exact.n_bar = r.exact_n_bar;
  r.analytic_std = analytic_g_std(at_exact);
  for (int j = 0; j < 4; ++j) {
    r.std_relative_deviation[j] = std::abs(r.exact.stddev[j] - r.analytic_std[j]) / r.analytic_std[j];
  }

  const double pi = std::numbers::pi;
  const VarianceCase which = params.q == 0.0 ? VarianceCase::coherent : variance_case(params.theta);
  for (double phi : {0.0, pi / 2.0, -pi / 2.0, pi, -pi}) {
    PhaseComparison c;
    c.phi = phi;
    c.exact_variance = variance_decomposition(state, params.k_abs, phi, r.exact);
    const auto a = analytic_intensity_variance(at_exact, phi, which);
    c.analytic_variance = a.value;
    c.analytic_clamped = a.clamped;
    const double diff = std::abs(c.exact_variance - c.analytic_variance);
    c.relative_deviation = c.analytic_variance == 0.0 ? (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                                      : diff / c.analytic_variance;
    r.phases.push_back(c);
  }
  return r;
}

}  // namespace gsq
