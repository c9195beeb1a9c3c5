#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstddef>
#include <utility>

#include "gsq/error.hpp"

namespace gsq {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNegativeVarianceTol = 1e-10;

enum class Mode { one = 1, two = 2 };

Mode mode_from_int(int m);

/// Truncated two-mode Fock basis |n1, n2>, 0 <= n_m <= cutoff_m.
/// index(n1, n2) = n1 * (cutoff2 + 1) + n2.
class FockSpace {
 public:
  FockSpace(int cutoff1, int cutoff2);

  int cutoff1() const { return cutoff1_; }
  int cutoff2() const { return cutoff2_; }
  int cutoff(Mode m) const { return m == Mode::one ? cutoff1_ : cutoff2_; }
  Eigen::Index dim() const { return dim_; }

  Eigen::Index index(int n1, int n2) const;
  std::pair<int, int> occupations(Eigen::Index idx) const;

  /// Basis states with n_m <= cutoff_m - margin on both modes.
  bool interior(Eigen::Index idx, int margin) const;

  bool operator==(const FockSpace& other) const = default;

 private:
  int cutoff1_;
  int cutoff2_;
  Eigen::Index dim_;
};

FockSpace make_space(int cutoff1, int cutoff2);

/// Normalized pure state on a FockSpace. `leakage` is the probability mass
/// lost to truncation (or to numeric norm drift) before renormalization.
class QState {
 public:
  QState(FockSpace space, Vector amplitudes, double leakage = 0.0);

  /// Renormalizes `amplitudes`; throws InputError on a zero vector.
  static QState normalized(FockSpace space, Vector amplitudes, double leakage = 0.0);

  const FockSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double leakage() const { return leakage_; }
  cplx amplitude(int n1, int n2) const { return amplitudes_[space_.index(n1, n2)]; }

 private:
  FockSpace space_;
  Vector amplitudes_;
  double leakage_;
};

class QOperator {
 public:
  /// Throws InputError when `hermitian` is claimed but ||M - M^dag||_max > 1e-10.
  QOperator(FockSpace space, SparseMatrix matrix, bool hermitian);

  const FockSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

 private:
  FockSpace space_;
  SparseMatrix matrix_;
  bool hermitian_;
};

double max_abs_entry(const SparseMatrix& m);
bool is_hermitian(const SparseMatrix& m, double tol = kHermitianTol);
bool is_anti_hermitian(const SparseMatrix& m, double tol = kHermitianTol);

QOperator identity(const FockSpace& space);
QOperator annihilation(const FockSpace& space, Mode mode);
QOperator creation(const FockSpace& space, Mode mode);
QOperator number(const FockSpace& space, Mode mode);

QOperator adjoint(const QOperator& op);
QOperator multiply(const QOperator& a, const QOperator& b);
QOperator add(const QOperator& a, const QOperator& b);
QOperator subtract(const QOperator& a, const QOperator& b);
QOperator scale(cplx c, const QOperator& op);
QOperator commutator(const QOperator& a, const QOperator& b);

/// Raw image M|psi>, not renormalized.
Vector apply(const QOperator& op, const QState& state);

/// <psi|M|psi>. For Hermitian-flagged operators the imaginary part must be
/// below 1e-10 and is dropped.
cplx expectation(const QState& state, const QOperator& op);

/// <M^2> - <M>^2, clamped to zero inside [-1e-10, 0].
double variance(const QState& state, const QOperator& op);

/// <(AB + BA)/2> - <A><B> for Hermitian A, B.
double symmetrized_covariance(const QState& state, const QOperator& a, const QOperator& b);

enum class Quadrature { X, Y };

/// X = (a^dag + a)/2, Y = i(a^dag - a)/2.
QOperator quadrature_operator(const FockSpace& space, Mode mode, Quadrature which);

struct ExpActionOptions {
  double exp_tol = 1e-6;
};

/// exp(G)|psi> for anti-Hermitian G by substepped Taylor action on the
/// vector. The result is renormalized; |1 - ||v||^2| is added to leakage.
QState exp_action(const QOperator& generator, const QState& state,
                  const ExpActionOptions& options = {});

/// Clamp window shared by variance-like quantities.
double clamp_variance(double value, const char* what);

}  // namespace gsq
