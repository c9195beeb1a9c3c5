#include "gsq/io.hpp"

#include <cmath>
#include <cstdio>

namespace gsq::io {

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("state spec is missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("state spec is missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

cplx complex_value(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError(what + " must be a [re, im] pair");
}

cplx complex_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("state spec is missing \"") + key + "\"");
  return complex_value(j.at(key), std::string("\"") + key + "\"");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

StateSpec parse_state_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("state spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("state spec must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw InputError("state spec needs a string \"type\"");
  }
  const auto type = j.at("type").get<std::string>();

  StateSpec spec;
  if (type == "vacuum") {
    spec.kind = VacuumSpec{};
  } else if (type == "fock") {
    spec.kind = FockStateSpec{int_field(j, "n1"), int_field(j, "n2")};
  } else if (type == "coherent") {
    spec.kind = CoherentSpec{complex_field(j, "alpha"), complex_field(j, "beta")};
  } else if (type == "displaced_squeezed") {
    spec.kind = DisplacedSqueezedSpec{complex_field(j, "alpha"), number_field(j, "q"), number_field(j, "theta")};
  } else if (type == "single_photon") {
    spec.kind = SinglePhotonSpec{complex_field(j, "c1"), complex_field(j, "c2")};
  } else if (type == "custom") {
    if (!j.contains("terms") || !j.at("terms").is_array()) {
      throw InputError("custom state needs a \"terms\" array of [n1, n2, [re, im]]");
    }
    CustomSpec c;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer()) {
        throw InputError("custom term must be [n1, n2, [re, im]]");
      }
      c.terms.push_back({t[0].get<int>(), t[1].get<int>(), complex_value(t[2], "custom amplitude")});
    }
    spec.kind = std::move(c);
  } else {
    throw InputError("unknown state type \"" + type + "\"");
  }

  if (j.contains("cutoff")) {
    const auto& c = j.at("cutoff");
    if (c.is_number_integer()) {
      spec.cutoff = std::pair{c.get<int>(), c.get<int>()};
    } else if (c.is_array() && c.size() == 2 && c[0].is_number_integer() && c[1].is_number_integer()) {
      spec.cutoff = std::pair{c[0].get<int>(), c[1].get<int>()};
    } else {
      throw InputError("\"cutoff\" must be an integer or [n1, n2]");
    }
  }
  validate(spec);
  return spec;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const GStats& s) {
  json cov = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(s.cov(i, k));
    cov.push_back(row);
  }
  json out{{"mean", s.mean},
           {"std", s.stddev},
           {"cov", cov},
           {"n_bar", s.n_bar},
           {"gamma12", complex_json(s.gamma12)},
           {"visibility", optional_json(s.visibility)},
           {"distinguishability", optional_json(s.distinguishability)}};
  out["g_vector"] = s.g_vector ? json(*s.g_vector) : json(nullptr);
  return out;
}

GStats gstats_from_json(const json& j) {
  GStats s;
  try {
    s.mean = j.at("mean").get<std::array<double, 4>>();
    s.stddev = j.at("std").get<std::array<double, 4>>();
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) s.cov(i, k) = j.at("cov").at(i).at(k).get<double>();
    }
    s.n_bar = j.at("n_bar").get<double>();
    s.gamma12 = complex_value(j.at("gamma12"), "gamma12");
    if (!j.at("visibility").is_null()) s.visibility = j.at("visibility").get<double>();
    if (!j.at("distinguishability").is_null()) s.distinguishability = j.at("distinguishability").get<double>();
    if (!j.at("g_vector").is_null()) s.g_vector = j.at("g_vector").get<std::array<double, 3>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed GStats JSON: ") + e.what());
  }
  return s;
}

json to_json(const UncertaintyReport& r) {
  json rel = json::array();
  for (const auto& x : r.relations) {
    rel.push_back({{"name", x.name},
                   {"lhs", x.lhs},
                   {"rhs", x.rhs},
                   {"defined", x.defined},
                   {"satisfied", x.satisfied},
                   {"slack", x.slack}});
  }
  return json{{"relations", rel}, {"min_slack", r.min_slack()}};
}

json to_json(const SqueezeReport& r) {
  return json{{"n_bar", r.n_bar},
              {"strict_margin", r.strict_margin},
              {"margins", r.margins},
              {"squeezed", r.squeezed},
              {"coherence_squeezed", r.coherence_squeezed()}};
}

json to_json(const CommutatorReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"identity", e.identity}, {"residual", e.residual}});
  return json{{"entries", entries}, {"max_residual", r.max_residual}};
}

json to_json(const ComparisonReport& r) {
  json phases = json::array();
  for (const auto& p : r.phases) {
    phases.push_back({{"phi", p.phi},
                      {"exact_variance", p.exact_variance},
                      {"analytic_variance", p.analytic_variance},
                      {"analytic_clamped", p.analytic_clamped},
                      {"relative_deviation", std::isfinite(p.relative_deviation) ? json(p.relative_deviation)
                                                                                 : json(nullptr)}});
  }
  return json{{"n_bar_nominal", r.params.n_bar},
              {"q", r.params.q},
              {"theta", radians(r.params.theta)},
              {"k_abs", r.params.k_abs},
              {"regime_ratio", std::isfinite(r.regime_ratio) ? json(r.regime_ratio) : json(nullptr)},
              {"in_regime", r.in_regime},
              {"cutoff", {r.cutoff.first, r.cutoff.second}},
              {"leakage", r.leakage},
              {"exact_n_bar", r.exact_n_bar},
              {"exact", to_json(r.exact)},
              {"analytic_std", r.analytic_std},
              {"std_relative_deviation", r.std_relative_deviation},
              {"squeeze", to_json(r.squeeze)},
              {"phases", phases}};
}

json to_json(const std::vector<PhiInterval>& regions) {
  json out = json::array();
  for (const auto& r : regions) out.push_back(json::array({r.lo, r.hi}));
  return out;
}

json to_json(const std::vector<FringePoint>& points) {
  json out = json::array();
  for (const auto& p : points) {
    out.push_back({{"phi", p.phi},
                   {"mean", p.mean_intensity},
                   {"std_exact", p.std_exact},
                   {"std_analytic", optional_json(p.std_analytic)},
                   {"zero_reachable", p.zero_reachable}});
  }
  return out;
}

void write_fringe_csv(std::ostream& os, const std::vector<FringePoint>& points,
                      const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "phi,mean,std_exact,std_analytic,zero_reachable\n";
  for (const auto& p : points) {
    os << format_number(p.phi) << ',' << format_number(p.mean_intensity) << ',' << format_number(p.std_exact) << ','
       << (p.std_analytic ? format_number(*p.std_analytic) : std::string()) << ',' << (p.zero_reachable ? 1 : 0)
       << '\n';
  }
}

}  // namespace gsq::io
