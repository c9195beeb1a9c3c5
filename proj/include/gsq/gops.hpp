#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gsq/fock.hpp"

namespace gsq {

/// G0 = n1 + n2, G1 = n1 - n2, G2 = a1^dag a2 + a2^dag a1,
/// G3 = i(a2^dag a1 - a1^dag a2).
QOperator g_operator(const FockSpace& space, int n);

struct GStats {
  std::array<double, 4> mean{};
  std::array<double, 4> stddev{};
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();  // symmetrized covariances
  double n_bar = 0.0;
  cplx gamma12;  // G2/2 + i G3/2
  // Undefined (nullopt) when G0 < 1e-12.
  std::optional<double> visibility;
  std::optional<double> distinguishability;
  std::optional<std::array<double, 3>> g_vector;
};

GStats g_stats(const QState& state);

struct CommutatorResidual {
  std::string identity;
  double residual;
};

struct CommutatorReport {
  std::vector<CommutatorResidual> entries;
  double max_residual = 0.0;
};

/// Checks [G0, Gj] = 0 and [Gj, Gk] = 2i eps_jkl Gl on the interior subspace
/// n_m <= cutoff_m - 2. Needs cutoffs >= 3; throws NumericError when a
/// residual exceeds 1e-10.
CommutatorReport check_commutators(const FockSpace& space);

struct Relation {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool defined = true;  // false for the G0-normalized forms at G0 = 0
  bool satisfied = true;
  double slack = 0.0;
};

struct UncertaintyReport {
  std::vector<Relation> relations;
  double min_slack() const;
};

inline constexpr double kTheoremSlackTol = 1e-9;

/// Evaluates dG2 dG3 >= |G1|, dG1 dG2 >= |G3|, dG1 dG3 >= |G2|,
/// dG2 dG3 / G0 >= D and dG1 sqrt(dG2^2 + dG3^2) / G0 >= V.
/// Throws NumericError on slack below -1e-9.
UncertaintyReport uncertainty_report(const GStats& stats);

struct SqueezeReport {
  double n_bar = 0.0;
  double strict_margin = 0.0;
  std::array<double, 4> margins{};  // sqrt(n_bar) - dG_j
  std::array<bool, 4> squeezed{};   // margins[j] > strict_margin
  bool squeezed_g2() const { return squeezed[2]; }
  bool squeezed_g3() const { return squeezed[3]; }
  bool coherence_squeezed() const { return squeezed[2] || squeezed[3]; }
};

SqueezeReport squeeze_report(const GStats& stats, double strict_margin = 1e-9);

}  // namespace gsq
