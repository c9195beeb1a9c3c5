#include "gsq/interference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace gsq {

namespace {

constexpr double kMeanClampTol = 1e-9;
constexpr double kZeroReachTol = 1e-9;
constexpr double kDecompositionTol = 1e-8;

double clamp_mean(double mean) {
  if (mean >= 0.0) return mean;
  if (mean >= -kMeanClampTol) return 0.0;
  throw NumericError("negative mean intensity " + brief(mean));
}

}  // namespace

void FringeConfig::validate() const {
  if (!(k_abs > 0.0)) throw InputError("|K| must be positive");
  if (n_points < 2) throw InputError("fringe grid needs at least 2 points");
  if (!(phi_min < phi_max)) throw InputError("phi_min must be below phi_max");
}

std::vector<double> FringeConfig::grid() const {
  validate();
  std::vector<double> phis(n_points);
  const double step = (phi_max - phi_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) phis[i] = phi_min + i * step;
  phis.back() = phi_max;
  return phis;
}

QOperator intensity_operator(const FockSpace& space, double k_abs, double phi) {
  const double k2 = k_abs * k_abs;
  const QOperator g0 = g_operator(space, 0);
  const QOperator g2 = g_operator(space, 2);
  const QOperator g3 = g_operator(space, 3);
  return scale(k2, add(g0, subtract(scale(std::cos(phi), g2), scale(std::sin(phi), g3))));
}

std::vector<FringePoint> fringe_scan(const QState& state, const FringeConfig& config) {
  const auto phis = config.grid();
  const FockSpace& space = state.space();
  const Vector& psi = state.amplitudes();

  std::array<Vector, 3> images{apply(g_operator(space, 0), state), apply(g_operator(space, 2), state),
                               apply(g_operator(space, 3), state)};
  std::array<double, 3> means{};
  for (int i = 0; i < 3; ++i) {
    means[i] = psi.dot(images[i]).real();
    images[i] -= means[i] * psi;  // (G - <G>) psi
  }

  const double k2 = config.k_abs * config.k_abs;
  std::vector<FringePoint> points;
  points.reserve(phis.size());
  for (double phi : phis) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double mean = k2 * (means[0] + c * means[1] - s * means[2]);
    const double var = (k2 * (images[0] + c * images[1] - s * images[2])).squaredNorm();

    FringePoint p;
    p.phi = phi;
    p.mean_intensity = clamp_mean(mean);
    p.std_exact = std::sqrt(var);
    p.zero_reachable = p.mean_intensity - p.std_exact <= kZeroReachTol;
    points.push_back(p);
  }
  return points;
}

double classical_mean_intensity(const GStats& stats, double k_abs, double phi) {
  const cplx z(stats.mean[2], stats.mean[3]);
  return k_abs * k_abs * (stats.mean[0] + std::abs(z) * std::cos(std::arg(z) + phi));
}

double variance_from_covariance(const GStats& stats, double k_abs, double phi) {
  const Eigen::Vector3d c(1.0, std::cos(phi), -std::sin(phi));
  Eigen::Matrix3d block;
  const std::array<int, 3> idx{0, 2, 3};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) block(i, j) = stats.cov(idx[i], idx[j]);
  }
  const double k4 = std::pow(k_abs, 4);
  return k4 * c.dot(block * c);
}

double variance_decomposition(const QState& state, double k_abs, double phi, const GStats& stats) {
  const double decomposed = variance_from_covariance(stats, k_abs, phi);
  const double direct = variance(state, intensity_operator(state.space(), k_abs, phi));
  if (std::abs(decomposed - direct) > kDecompositionTol * std::max(1.0, std::abs(direct))) {
    throw NumericError("variance decomposition disagrees with the direct moment: " + brief(decomposed) +
                       " vs " + brief(direct));
  }
  return decomposed;
}

std::vector<PhiInterval> zero_reachable_regions(const std::vector<FringePoint>& points) {
  std::vector<PhiInterval> out;
  const auto n = points.size();
  auto excess = [&](std::size_t i) { return points[i].mean_intensity - points[i].std_exact - kZeroReachTol; };
  // Zero crossing of mean - std between neighbouring grid points a (outside) and b (inside).
  auto crossing = [&](std::size_t a, std::size_t b) {
    const double fa = excess(a);
    const double fb = excess(b);
    const double t = fa == fb ? 0.0 : fa / (fa - fb);
    return points[a].phi + t * (points[b].phi - points[a].phi);
  };

  std::size_t i = 0;
  while (i < n) {
    if (!points[i].zero_reachable) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && points[j + 1].zero_reachable) ++j;
    const double lo = i == 0 ? points[i].phi : crossing(i - 1, i);
    const double hi = j + 1 == n ? points[j].phi : crossing(j + 1, j);
    out.push_back({lo, hi});
    i = j + 1;
  }
  return out;
}

}  // namespace gsq
