#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gsq/fock.hpp"
#include "gsq/gops.hpp"
#include "gsq/states.hpp"
#include "oracles.hpp"

using namespace gsq;

namespace {

QState basis(const FockSpace& s, int n1, int n2) {
  Vector v = Vector::Zero(s.dim());
  v[s.index(n1, n2)] = 1.0;
  return QState(s, v);
}

QState photon(cplx c1, cplx c2, std::pair<int, int> cutoff = {1, 1}) {
  return build({SinglePhotonSpec{c1, c2}, cutoff});
}

const double kH = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("G operators are Hermitian and match their definitions") {
  const FockSpace s(4, 3);
  const auto dense = oracle::g_ops(4, 3);
  for (int n = 0; n < 4; ++n) {
    const QOperator g = g_operator(s, n);
    CHECK(g.hermitian());
    CHECK(is_hermitian(g.matrix()));
    const oracle::Mat m = g.matrix();
    CHECK((m - dense[n]).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK_THROWS_AS(g_operator(s, 4), InputError);
  CHECK_THROWS_AS(g_operator(s, -1), InputError);
}

TEST_CASE("G operator matrix elements") {
  const FockSpace s(3, 3);
  const QOperator g0 = g_operator(s, 0);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const auto [n1, n2] = s.occupations(i);
    CHECK(g0.matrix().coeff(i, i) == cplx(n1 + n2));
  }
  const Vector v2 = apply(g_operator(s, 2), basis(s, 1, 0));
  CHECK(std::abs(v2[s.index(0, 1)] - 1.0) <= 1e-15);
  CHECK(std::abs(v2.norm() - 1.0) <= 1e-15);
  const Vector v3 = apply(g_operator(s, 3), basis(s, 1, 0));
  CHECK(std::abs(v3[s.index(0, 1)] - cplx(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(v3.norm() - 1.0) <= 1e-15);
}

TEST_CASE("G operators conserve total photon number") {
  const FockSpace s(5, 5);
  for (int n = 0; n < 4; ++n) {
    const QOperator g = g_operator(s, n);
    const SparseMatrix& m = g.matrix();
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
        const auto [a1, a2] = s.occupations(r);
        const auto [b1, b2] = s.occupations(it.col());
        CHECK(a1 + a2 == b1 + b2);
      }
    }
  }
}

TEST_CASE("expectation examples") {
  CHECK(expectation(build({VacuumSpec{}, std::nullopt}), g_operator(FockSpace(1, 1), 0)) == cplx(0.0));
  const QState coh = build({CoherentSpec{1.0, 1.0}, std::pair{20, 20}});
  CHECK(std::abs(expectation(coh, g_operator(coh.space(), 0)) - 2.0) <= 1e-12);
  const QState bal = photon(kH, kH);
  CHECK(std::abs(expectation(bal, g_operator(bal.space(), 2)) - 1.0) <= 1e-15);
  CHECK(variance(bal, g_operator(bal.space(), 2)) <= 1e-15);
}

TEST_CASE("symmetrized covariance examples") {
  const QState vac = build({VacuumSpec{}, std::nullopt});
  CHECK(symmetrized_covariance(vac, g_operator(vac.space(), 2), g_operator(vac.space(), 3)) == 0.0);
  const QState bal = photon(kH, kH);
  const double c = symmetrized_covariance(bal, g_operator(bal.space(), 2), g_operator(bal.space(), 3));
  // (G2 G3 + G3 G2)/2 vanishes on the one-photon block and <G3> = 0
  CHECK(std::abs(c) <= 1e-15);
}

TEST_CASE("coherent reference statistics") {
  const QState coh = build({CoherentSpec{1.0, 1.0}, std::pair{25, 25}});
  const GStats st = g_stats(coh);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(st.stddev[j] - std::sqrt(2.0)) <= 1e-9);
  CHECK(std::abs(st.n_bar - 2.0) <= 1e-12);
  CHECK(std::abs(*st.visibility - 1.0) <= 1e-12);
  CHECK(std::abs(*st.distinguishability) <= 1e-12);
  const SqueezeReport sq = squeeze_report(st);
  for (int j = 0; j < 4; ++j) CHECK_FALSE(sq.squeezed[j]);
  CHECK_FALSE(sq.coherence_squeezed());

  const UncertaintyReport ur = uncertainty_report(st);
  REQUIRE(ur.relations.size() == 5);
  CHECK(ur.relations[4].lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(ur.relations[4].rhs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("balanced single photon statistics") {
  const GStats st = g_stats(photon(kH, kH));
  const std::array<double, 4> mean{1, 0, 1, 0}, sd{0, 1, 0, 1};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(st.mean[j] - mean[j]) <= 1e-12);
    CHECK(std::abs(st.stddev[j] - sd[j]) <= 1e-12);
  }
  CHECK(std::abs(*st.visibility - 1.0) <= 1e-12);
  CHECK(std::abs(*st.distinguishability) <= 1e-12);
  const UncertaintyReport ur = uncertainty_report(st);
  CHECK(std::abs(ur.relations[0].slack) <= 1e-12);  // Delta G2 Delta G3 = |G1| = 0
  const SqueezeReport sq = squeeze_report(st);
  CHECK(sq.squeezed_g2());
  CHECK_FALSE(sq.squeezed_g3());
}

TEST_CASE("one-sided single photon statistics") {
  const GStats st = g_stats(photon(1.0, 0.0));
  const std::array<double, 4> mean{1, 1, 0, 0}, sd{0, 0, 1, 1};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(st.mean[j] - mean[j]) <= 1e-12);
    CHECK(std::abs(st.stddev[j] - sd[j]) <= 1e-12);
  }
  CHECK(std::abs(*st.visibility) <= 1e-12);
  CHECK(std::abs(*st.distinguishability - 1.0) <= 1e-12);
  const UncertaintyReport ur = uncertainty_report(st);
  CHECK(std::abs(ur.relations[0].lhs - 1.0) <= 1e-12);
  CHECK(std::abs(ur.relations[0].slack) <= 1e-12);  // saturated
}

TEST_CASE("vacuum leaves V, D and g undefined") {
  const GStats st = g_stats(build({VacuumSpec{}, std::nullopt}));
  CHECK_FALSE(st.visibility.has_value());
  CHECK_FALSE(st.distinguishability.has_value());
  CHECK_FALSE(st.g_vector.has_value());
  const UncertaintyReport ur = uncertainty_report(st);
  CHECK_FALSE(ur.relations[3].defined);
  CHECK_FALSE(ur.relations[4].defined);
  CHECK_THROWS_AS(squeeze_report(st), InputError);
}

TEST_CASE("commutators on the interior") {
  const CommutatorReport r = check_commutators(FockSpace(8, 8));
  CHECK(r.entries.size() == 6);
  CHECK(r.max_residual <= 1e-12);
  CHECK_THROWS_AS(check_commutators(FockSpace(2, 5)), InputError);

  // the boundary really does break the algebra, so the restriction matters
  const FockSpace s(4, 4);
  const QOperator g1 = g_operator(s, 1), g2 = g_operator(s, 2), g3 = g_operator(s, 3);
  const QOperator diff = subtract(commutator(g1, g2), scale(cplx(0.0, 2.0), g3));
  CHECK(max_abs_entry(diff.matrix()) <= 1e-12);  // number-conserving: exact even at the edge
  const QOperator a1 = annihilation(s, Mode::one);
  const QOperator ccr = subtract(commutator(a1, adjoint(a1)), identity(s));
  CHECK(max_abs_entry(ccr.matrix()) > 1.0);
}

TEST_CASE("uncertainty relations hold for seeded random states") {
  const FockSpace s(6, 6);
  std::mt19937_64 rng(12345);
  double worst = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const GStats st = g_stats(random_state(s, rng));
    const UncertaintyReport ur = uncertainty_report(st);
    worst = std::min(worst, ur.min_slack());
    const double v = *st.visibility, d = *st.distinguishability;
    REQUIRE(v >= 0.0);
    REQUIRE(d >= 0.0);
    REQUIRE(v * v + d * d <= 1.0 + 1e-9);
    REQUIRE(std::sqrt(st.mean[1] * st.mean[1] + st.mean[2] * st.mean[2] + st.mean[3] * st.mean[3]) <=
            st.mean[0] + 1e-9);
  }
  CHECK(worst >= -1e-9);
}

TEST_CASE("GStats internal consistency against dense moments") {
  const FockSpace s(4, 4);
  const auto g = oracle::g_ops(4, 4);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const QState psi = random_state(s, rng);
    const GStats st = g_stats(psi);
    const oracle::Vec v = psi.amplitudes();
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(st.mean[j] - oracle::expect(v, g[j])) <= 1e-12);
      CHECK(std::abs(st.stddev[j] * st.stddev[j] - st.cov(j, j)) <= 1e-10);
      CHECK(std::abs(st.cov(j, j) - oracle::var(v, g[j])) <= 1e-10);
      for (int k = 0; k < 4; ++k) {
        const oracle::Mat sym = 0.5 * (g[j] * g[k] + g[k] * g[j]);
        const double c = oracle::expect(v, sym) - oracle::expect(v, g[j]) * oracle::expect(v, g[k]);
        CHECK(std::abs(st.cov(j, k) - c) <= 1e-10);
      }
    }
    CHECK(std::abs(2.0 * std::abs(st.gamma12) - std::hypot(st.mean[2], st.mean[3])) <= 1e-10);
    CHECK(std::abs(2.0 * std::abs(st.gamma12) - *st.visibility * st.mean[0]) <= 1e-10);
    const auto gv = *st.g_vector;
    for (int j = 0; j < 3; ++j) CHECK(std::abs(gv[j] * st.mean[0] - st.mean[j + 1]) <= 1e-12);
  }
}

TEST_CASE("mode-2 phase shift rotates (G2, G3)") {
  const FockSpace s(4, 4);
  std::mt19937_64 rng(3);
  for (double phi : {0.3, 1.2, -2.0}) {
    const QState psi = random_state(s, rng);
    // a2 -> e^{i phi} a2: amplitude of |n1,n2> picks up e^{-i n2 phi}
    Vector rotated = psi.amplitudes();
    for (Eigen::Index i = 0; i < s.dim(); ++i) rotated[i] *= std::polar(1.0, -phi * s.occupations(i).second);
    const GStats a = g_stats(psi);
    const GStats b = g_stats(QState::normalized(s, rotated));
    CHECK(std::abs(a.mean[0] - b.mean[0]) <= 1e-9);
    CHECK(std::abs(a.mean[1] - b.mean[1]) <= 1e-9);
    // <a1^dag a2> -> e^{i phi} <a1^dag a2>, so G2 + i G3 = 2<a2^dag a1> turns by -phi
    const cplx before(a.mean[2], a.mean[3]);
    const cplx after(b.mean[2], b.mean[3]);
    CHECK(std::abs(after - before * std::polar(1.0, -phi)) <= 1e-9);
    CHECK(std::abs(std::abs(after) - std::abs(before)) <= 1e-9);
  }
}

TEST_CASE("bright amplitude-squeezed state is coherence squeezed in G2") {
  const QState psi = build({DisplacedSqueezedSpec{4.0, 0.3, 0.0}, std::pair{47, 47}});
  const SqueezeReport sq = squeeze_report(g_stats(psi));
  CHECK(sq.squeezed_g2());
  CHECK_FALSE(sq.squeezed_g3());
  CHECK(sq.margins[3] < 0.0);
}

TEST_CASE("squeeze report consistency") {
  GStats st;
  st.n_bar = 4.0;
  st.stddev = {2.0, 2.0 - 1e-10, 1.5, 2.5};
  const SqueezeReport sq = squeeze_report(st);
  CHECK_FALSE(sq.squeezed[0]);
  CHECK_FALSE(sq.squeezed[1]);  // inside the strict margin
  CHECK(sq.squeezed[2]);
  CHECK_FALSE(sq.squeezed[3]);
  for (int j = 0; j < 4; ++j) CHECK(sq.squeezed[j] == (sq.margins[j] > sq.strict_margin));
}
