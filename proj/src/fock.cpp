#include "gsq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gsq {

namespace {

void require_same_space(const FockSpace& a, const FockSpace& b, const char* what) {
  if (!(a == b)) {
    throw InputError(std::string(what) + ": operands live on different Fock spaces");
  }
}

SparseMatrix from_triplets(Eigen::Index dim, const std::vector<Eigen::Triplet<cplx>>& trips) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

double sparse_one_norm(const SparseMatrix& m) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m.cols());
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) col[it.col()] += std::abs(it.value());
  }
  return m.cols() == 0 ? 0.0 : col.maxCoeff();
}

double sparse_inf_norm(const SparseMatrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

Mode mode_from_int(int m) {
  if (m == 1) return Mode::one;
  if (m == 2) return Mode::two;
  throw InputError("mode must be 1 or 2, got " + std::to_string(m));
}

FockSpace::FockSpace(int cutoff1, int cutoff2) : cutoff1_(cutoff1), cutoff2_(cutoff2) {
  if (cutoff1 < 0 || cutoff2 < 0) {
    throw InputError("Fock cutoffs must be non-negative");
  }
  const long long d = (static_cast<long long>(cutoff1) + 1) * (static_cast<long long>(cutoff2) + 1);
  if (d > std::numeric_limits<int>::max()) {
    throw InputError("Fock space dimension overflows the index type");
  }
  dim_ = static_cast<Eigen::Index>(d);
}

Eigen::Index FockSpace::index(int n1, int n2) const {
  if (n1 < 0 || n1 > cutoff1_ || n2 < 0 || n2 > cutoff2_) {
    throw InputError("occupation (" + std::to_string(n1) + ", " + std::to_string(n2) +
                     ") outside the truncated basis");
  }
  return static_cast<Eigen::Index>(n1) * (cutoff2_ + 1) + n2;
}

std::pair<int, int> FockSpace::occupations(Eigen::Index idx) const {
  return {static_cast<int>(idx / (cutoff2_ + 1)), static_cast<int>(idx % (cutoff2_ + 1))};
}

bool FockSpace::interior(Eigen::Index idx, int margin) const {
  const auto [n1, n2] = occupations(idx);
  return n1 <= cutoff1_ - margin && n2 <= cutoff2_ - margin;
}

FockSpace make_space(int cutoff1, int cutoff2) { return FockSpace(cutoff1, cutoff2); }

QState::QState(FockSpace space, Vector amplitudes, double leakage)
    : space_(space), amplitudes_(std::move(amplitudes)), leakage_(leakage) {
  if (amplitudes_.size() != space_.dim()) {
    throw InputError("amplitude vector length does not match the Fock space dimension");
  }
  if (!(leakage_ >= 0.0)) throw InputError("leakage must be non-negative");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw InputError("state amplitudes are not normalized");
  }
}

QState QState::normalized(FockSpace space, Vector amplitudes, double leakage) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("cannot normalize a zero or non-finite vector");
  amplitudes /= n;
  return QState(space, std::move(amplitudes), leakage);
}

QOperator::QOperator(FockSpace space, SparseMatrix matrix, bool hermitian)
    : space_(space), matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw InputError("operator matrix shape does not match the Fock space dimension");
  }
  if (hermitian_ && !is_hermitian(matrix_)) {
    throw InputError("operator flagged Hermitian but M != M^dag");
  }
}

double max_abs_entry(const SparseMatrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

bool is_hermitian(const SparseMatrix& m, double tol) {
  SparseMatrix diff = m - SparseMatrix(m.adjoint());
  return max_abs_entry(diff) <= tol;
}

bool is_anti_hermitian(const SparseMatrix& m, double tol) {
  SparseMatrix sum = m + SparseMatrix(m.adjoint());
  return max_abs_entry(sum) <= tol;
}

QOperator identity(const FockSpace& space) {
  SparseMatrix m(space.dim(), space.dim());
  m.setIdentity();
  return QOperator(space, std::move(m), true);
}

QOperator annihilation(const FockSpace& space, Mode mode) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int n1 = 0; n1 <= space.cutoff1(); ++n1) {
    for (int n2 = 0; n2 <= space.cutoff2(); ++n2) {
      const int n = mode == Mode::one ? n1 : n2;
      if (n == 0) continue;
      const auto to = mode == Mode::one ? space.index(n1 - 1, n2) : space.index(n1, n2 - 1);
      trips.emplace_back(to, space.index(n1, n2), std::sqrt(static_cast<double>(n)));
    }
  }
  return QOperator(space, from_triplets(space.dim(), trips), false);
}

QOperator creation(const FockSpace& space, Mode mode) { return adjoint(annihilation(space, mode)); }

// Built as a diagonal so occupations come out as exact integers.
QOperator number(const FockSpace& space, Mode mode) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    const auto [n1, n2] = space.occupations(i);
    const int n = mode == Mode::one ? n1 : n2;
    if (n != 0) trips.emplace_back(i, i, static_cast<double>(n));
  }
  return QOperator(space, from_triplets(space.dim(), trips), true);
}

QOperator adjoint(const QOperator& op) {
  return QOperator(op.space(), SparseMatrix(op.matrix().adjoint()), op.hermitian());
}

QOperator multiply(const QOperator& a, const QOperator& b) {
  require_same_space(a.space(), b.space(), "multiply");
  SparseMatrix m = (a.matrix() * b.matrix()).pruned();
  const bool herm = is_hermitian(m);
  return QOperator(a.space(), std::move(m), herm);
}

QOperator add(const QOperator& a, const QOperator& b) {
  require_same_space(a.space(), b.space(), "add");
  SparseMatrix m = a.matrix() + b.matrix();
  const bool herm = (a.hermitian() && b.hermitian()) || is_hermitian(m);
  return QOperator(a.space(), std::move(m), herm);
}

QOperator subtract(const QOperator& a, const QOperator& b) {
  require_same_space(a.space(), b.space(), "subtract");
  SparseMatrix m = a.matrix() - b.matrix();
  const bool herm = (a.hermitian() && b.hermitian()) || is_hermitian(m);
  return QOperator(a.space(), std::move(m), herm);
}

QOperator scale(cplx c, const QOperator& op) {
  SparseMatrix m = c * op.matrix();
  const bool herm = (op.hermitian() && c.imag() == 0.0) || is_hermitian(m);
  return QOperator(op.space(), std::move(m), herm);
}

QOperator commutator(const QOperator& a, const QOperator& b) {
  require_same_space(a.space(), b.space(), "commutator");
  SparseMatrix m = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).pruned();
  return QOperator(a.space(), std::move(m), false);
}

Vector apply(const QOperator& op, const QState& state) {
  require_same_space(op.space(), state.space(), "apply");
  return op.matrix() * state.amplitudes();
}

cplx expectation(const QState& state, const QOperator& op) {
  const Vector image = apply(op, state);
  const cplx value = state.amplitudes().dot(image);
  if (op.hermitian()) {
    if (std::abs(value.imag()) > kHermitianTol) {
      throw NumericError("expectation of a Hermitian operator has imaginary part " +
                         brief(value.imag()));
    }
    return {value.real(), 0.0};
  }
  return value;
}

double clamp_variance(double value, const char* what) {
  if (value >= 0.0) return value;
  if (value >= -kNegativeVarianceTol) return 0.0;
  throw NumericError(std::string(what) + " is negative beyond tolerance: " + brief(value));
}

double variance(const QState& state, const QOperator& op) {
  if (!op.hermitian()) throw InputError("variance requires a Hermitian operator");
  const Vector image = apply(op, state);
  const double mean = state.amplitudes().dot(image).real();
  // centered form keeps tiny variances from cancelling away
  return clamp_variance((image - mean * state.amplitudes()).squaredNorm(), "variance");
}

double symmetrized_covariance(const QState& state, const QOperator& a, const QOperator& b) {
  if (!a.hermitian() || !b.hermitian()) {
    throw InputError("symmetrized covariance requires Hermitian operators");
  }
  const Vector va = apply(a, state);
  const Vector vb = apply(b, state);
  // <psi|AB|psi> = (A psi)^dag (B psi); the symmetrized part is its real part.
  const Vector& psi = state.amplitudes();
  const double ma = psi.dot(va).real();
  const double mb = psi.dot(vb).real();
  return (va - ma * psi).dot(vb - mb * psi).real();
}

QOperator quadrature_operator(const FockSpace& space, Mode mode, Quadrature which) {
  const QOperator a = annihilation(space, mode);
  const QOperator ad = adjoint(a);
  if (which == Quadrature::X) return scale(0.5, add(ad, a));
  return scale(cplx(0.0, 0.5), subtract(ad, a));
}

QState exp_action(const QOperator& generator, const QState& state, const ExpActionOptions& options) {
  require_same_space(generator.space(), state.space(), "exp_action");
  const SparseMatrix& g = generator.matrix();
  if (!is_anti_hermitian(g)) {
    throw InputError("exp_action requires an anti-Hermitian generator");
  }

  // sqrt(||G||_1 ||G||_inf) bounds the spectral norm.
  const double norm = std::sqrt(sparse_one_norm(g) * sparse_inf_norm(g));
  if (norm == 0.0) return state;

  const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
  const double step_norm = norm / steps;
  const int max_terms = static_cast<int>(std::ceil(10.0 * step_norm)) + 50;

  Vector v = state.amplitudes();
  for (int s = 0; s < steps; ++s) {
    Vector term = v;
    Vector acc = v;
    bool converged = false;
    for (int k = 1; k <= max_terms; ++k) {
      term = (g * term) / (static_cast<double>(k) * steps);
      acc += term;
      if (term.norm() <= 1e-16 * acc.norm()) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericError("exp_action: Taylor series did not converge");
    v = std::move(acc);
  }

  const double drift = std::abs(1.0 - v.squaredNorm());
  if (drift > options.exp_tol) {
    throw NumericError("exp_action: norm drift " + brief(drift) +
                       " exceeds tolerance; increase the cutoff");
  }
  return QState::normalized(state.space(), std::move(v), state.leakage() + drift);
}

}  // namespace gsq
