#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "gsq/io.hpp"

using namespace gsq;
using gsq::io::json;

TEST_CASE("parse state specs") {
  const StateSpec bal = io::parse_state_spec(
      R"({"type":"single_photon","c1":[0.7071067811865476,0],"c2":[0.7071067811865476,0]})");
  const auto* sp = std::get_if<SinglePhotonSpec>(&bal.kind);
  REQUIRE(sp);
  CHECK(sp->c1 == cplx(0.7071067811865476, 0));
  CHECK_FALSE(bal.cutoff.has_value());

  CHECK(std::holds_alternative<VacuumSpec>(io::parse_state_spec(R"({"type":"vacuum"})").kind));

  const StateSpec ds = io::parse_state_spec(R"({"type":"displaced_squeezed","alpha":[4,0],"q":0.3,"theta":0})");
  const auto* d = std::get_if<DisplacedSqueezedSpec>(&ds.kind);
  REQUIRE(d);
  CHECK(d->alpha == cplx(4.0));
  CHECK(d->q == 0.3);
  CHECK(d->theta == 0.0);

  const StateSpec coh = io::parse_state_spec(R"({"type":"coherent","alpha":1,"beta":[0,-2],"cutoff":[12,14]})");
  const auto* c = std::get_if<CoherentSpec>(&coh.kind);
  REQUIRE(c);
  CHECK(c->beta == cplx(0, -2));
  CHECK(coh.cutoff == std::pair{12, 14});
  CHECK(io::parse_state_spec(R"({"type":"fock","n1":1,"n2":2,"cutoff":5})").cutoff == std::pair{5, 5});

  const StateSpec cu = io::parse_state_spec(R"({"type":"custom","terms":[[1,0,[0.6,0]],[0,1,[0,0.8]]]})");
  const auto* t = std::get_if<CustomSpec>(&cu.kind);
  REQUIRE(t);
  REQUIRE(t->terms.size() == 2);
  CHECK(t->terms[1].n2 == 1);
  CHECK(t->terms[1].amplitude == cplx(0, 0.8));
}

TEST_CASE("bright spec has n_bar near 2 alpha^2 + 2 sinh^2 q") {
  const StateSpec ds = io::parse_state_spec(R"({"type":"displaced_squeezed","alpha":[4,0],"q":0.3,"theta":0})");
  const QState s = build(ds);
  const double expected = 2.0 * 16.0 + 2.0 * std::sinh(0.3) * std::sinh(0.3);
  CHECK(std::abs(g_stats(s).n_bar - expected) <= 1e-8);
}

TEST_CASE("malformed specs are input errors") {
  for (const char* text : {
           "not json",
           "[1,2]",
           R"({"kind":"vacuum"})",
           R"({"type":"squeezed_vacuum"})",
           R"({"type":"coherent","alpha":[1,0]})",
           R"({"type":"coherent","alpha":[1,0,3],"beta":0})",
           R"({"type":"coherent","alpha":"one","beta":0})",
           R"({"type":"fock","n1":1.5,"n2":0})",
           R"({"type":"single_photon","c1":[0.7,0],"c2":[0.7,0]})",
           R"({"type":"displaced_squeezed","alpha":[1,0],"q":-0.1,"theta":0})",
           R"({"type":"displaced_squeezed","alpha":[1,0],"q":0.1,"theta":7})",
           R"({"type":"custom","terms":[]})",
           R"({"type":"custom","terms":[[0,0]]})",
           R"({"type":"vacuum","cutoff":"big"})",
       }) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::parse_state_spec(text), InputError);
  }
}

TEST_CASE("format_number uses 17 significant digits") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(1.0) == "1");
  CHECK(io::format_number(-0.0) == "-0");
  const double x = std::sqrt(2.0);
  CHECK(std::stod(io::format_number(x)) == x);
}

TEST_CASE("GStats JSON round trip is bit identical") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const GStats a = g_stats(random_state(FockSpace(3, 3), rng));
    const GStats b = io::gstats_from_json(json::parse(io::to_json(a).dump()));
    CHECK(std::memcmp(a.mean.data(), b.mean.data(), sizeof a.mean) == 0);
    CHECK(std::memcmp(a.stddev.data(), b.stddev.data(), sizeof a.stddev) == 0);
    CHECK(a.cov == b.cov);
    CHECK(a.n_bar == b.n_bar);
    CHECK(a.gamma12 == b.gamma12);
    CHECK(a.visibility == b.visibility);
    CHECK(a.distinguishability == b.distinguishability);
    CHECK(a.g_vector == b.g_vector);
  }
  const GStats vac = g_stats(build({VacuumSpec{}, std::nullopt}));
  const GStats back = io::gstats_from_json(io::to_json(vac));
  CHECK_FALSE(back.visibility.has_value());
  CHECK_FALSE(back.g_vector.has_value());
  CHECK_THROWS_AS(io::gstats_from_json(json::parse(R"({"mean":[1]})")), InputError);
}

TEST_CASE("fringe csv layout") {
  std::vector<FringePoint> pts(2);
  pts[0] = {0.0, 2.0, 0.5, 0.25, false};
  pts[1] = {0.5, 0.1, 0.2, std::nullopt, true};
  std::ostringstream os;
  io::write_fringe_csv(os, pts, {"a: 1", "b"});
  CHECK(os.str() ==
        "# a: 1\n# b\nphi,mean,std_exact,std_analytic,zero_reachable\n"
        "0,2,0.5,0.25,0\n0.5,0.10000000000000001,0.20000000000000001,,1\n");
}

TEST_CASE("report JSON shapes") {
  const GStats st = g_stats(build({CoherentSpec{1.0, 1.0}, std::pair{20, 20}}));
  const json u = io::to_json(uncertainty_report(st));
  CHECK(u["relations"].size() == 5);
  CHECK(u["min_slack"].get<double>() >= -1e-9);
  const json s = io::to_json(squeeze_report(st));
  CHECK(s["coherence_squeezed"] == false);
  const json c = io::to_json(check_commutators(FockSpace(5, 5)));
  CHECK(c["entries"].size() == 6);
  const json r = io::to_json(std::vector<PhiInterval>{{-1.0, 1.0}});
  CHECK(r.dump() == "[[-1.0,1.0]]");
}
