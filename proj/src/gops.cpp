#include "gsq/gops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gsq {

namespace {

constexpr double kG0Undefined = 1e-12;

}  // namespace

QOperator g_operator(const FockSpace& space, int n) {
  const QOperator a1 = annihilation(space, Mode::one);
  const QOperator a2 = annihilation(space, Mode::two);
  const QOperator n1 = number(space, Mode::one);
  const QOperator n2 = number(space, Mode::two);
  switch (n) {
    case 0:
      return add(n1, n2);
    case 1:
      return subtract(n1, n2);
    case 2: {
      const QOperator hop = multiply(adjoint(a1), a2);
      return add(hop, adjoint(hop));
    }
    case 3: {
      const QOperator fwd = multiply(adjoint(a2), a1);
      const QOperator bwd = multiply(adjoint(a1), a2);
      return scale(cplx(0.0, 1.0), subtract(fwd, bwd));
    }
    default:
      throw InputError("G operator index must be 0..3, got " + std::to_string(n));
  }
}

GStats g_stats(const QState& state) {
  const FockSpace& space = state.space();
  const Vector& psi = state.amplitudes();

  std::array<Vector, 4> images;
  GStats s;
  for (int n = 0; n < 4; ++n) {
    images[n] = apply(g_operator(space, n), state);
    const cplx m = psi.dot(images[n]);
    if (std::abs(m.imag()) > kHermitianTol) {
      throw NumericError("G" + std::to_string(n) + " expectation is not real");
    }
    s.mean[n] = m.real();
  }
  for (int n = 0; n < 4; ++n) images[n] -= s.mean[n] * psi;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const double c = images[i].dot(images[j]).real();
      s.cov(i, j) = s.cov(j, i) = c;
    }
    s.cov(i, i) = clamp_variance(s.cov(i, i), "G variance");
    s.stddev[i] = std::sqrt(s.cov(i, i));
  }

  s.n_bar = s.mean[0];
  s.gamma12 = cplx(s.mean[2] / 2.0, s.mean[3] / 2.0);
  if (s.mean[0] >= kG0Undefined) {
    const double g0 = s.mean[0];
    s.visibility = std::hypot(s.mean[2], s.mean[3]) / g0;
    s.distinguishability = std::abs(s.mean[1]) / g0;
    s.g_vector = std::array<double, 3>{s.mean[1] / g0, s.mean[2] / g0, s.mean[3] / g0};
  }
  return s;
}

CommutatorReport check_commutators(const FockSpace& space) {
  if (space.cutoff1() < 3 || space.cutoff2() < 3) {
    throw InputError("commutator check needs cutoffs >= 3");
  }
  std::array<QOperator, 4> g{g_operator(space, 0), g_operator(space, 1), g_operator(space, 2),
                             g_operator(space, 3)};

  auto interior_residual = [&](const SparseMatrix& m) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      if (!space.interior(r, 2)) continue;
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
        if (space.interior(it.col(), 2)) best = std::max(best, std::abs(it.value()));
      }
    }
    return best;
  };

  CommutatorReport report;
  auto record = [&](std::string name, const QOperator& diff) {
    const double r = interior_residual(diff.matrix());
    report.entries.push_back({std::move(name), r});
    report.max_residual = std::max(report.max_residual, r);
  };
  const cplx two_i(0.0, 2.0);
  for (int j = 1; j <= 3; ++j) {
    record("[G0,G" + std::to_string(j) + "]", commutator(g[0], g[j]));
  }
  record("[G1,G2]-2iG3", subtract(commutator(g[1], g[2]), scale(two_i, g[3])));
  record("[G2,G3]-2iG1", subtract(commutator(g[2], g[3]), scale(two_i, g[1])));
  record("[G3,G1]-2iG2", subtract(commutator(g[3], g[1]), scale(two_i, g[2])));

  if (report.max_residual > 1e-10) {
    throw NumericError("G commutator residual " + brief(report.max_residual) + " exceeds 1e-10");
  }
  return report;
}

double UncertaintyReport::min_slack() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : relations) {
    if (r.defined) best = std::min(best, r.slack);
  }
  return best;
}

UncertaintyReport uncertainty_report(const GStats& stats) {
  const auto& m = stats.mean;
  const auto& d = stats.stddev;
  UncertaintyReport report;
  auto push = [&](std::string name, double lhs, double rhs) {
    Relation r{std::move(name), lhs, rhs, true, true, lhs - rhs};
    r.satisfied = r.slack >= -kTheoremSlackTol;
    report.relations.push_back(std::move(r));
  };
  push("dG2*dG3 >= |G1|", d[2] * d[3], std::abs(m[1]));
  push("dG1*dG2 >= |G3|", d[1] * d[2], std::abs(m[3]));
  push("dG1*dG3 >= |G2|", d[1] * d[3], std::abs(m[2]));
  if (stats.visibility && stats.distinguishability) {
    push("dG2*dG3/G0 >= D", d[2] * d[3] / m[0], *stats.distinguishability);
    push("dG1*sqrt(dG2^2+dG3^2)/G0 >= V", d[1] * std::hypot(d[2], d[3]) / m[0], *stats.visibility);
  } else {
    report.relations.push_back({"dG2*dG3/G0 >= D", 0.0, 0.0, false, true, 0.0});
    report.relations.push_back({"dG1*sqrt(dG2^2+dG3^2)/G0 >= V", 0.0, 0.0, false, true, 0.0});
  }
  for (const auto& r : report.relations) {
    if (!r.satisfied) {
      throw NumericError("uncertainty relation " + r.name + " violated with slack " + brief(r.slack));
    }
  }
  return report;
}

SqueezeReport squeeze_report(const GStats& stats, double strict_margin) {
  if (!(stats.n_bar > 0.0)) throw InputError("squeeze report needs a positive mean photon number");
  SqueezeReport r;
  r.n_bar = stats.n_bar;
  r.strict_margin = strict_margin;
  const double ref = std::sqrt(stats.n_bar);
  for (int j = 0; j < 4; ++j) {
    r.margins[j] = ref - stats.stddev[j];
    r.squeezed[j] = r.margins[j] > strict_margin;
  }
  return r;
}

}  // namespace gsq
