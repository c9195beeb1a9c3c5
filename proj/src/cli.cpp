#include "gsq/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "gsq/analytic.hpp"
#include "gsq/gops.hpp"
#include "gsq/io.hpp"
#include "gsq/states.hpp"

namespace gsq::cli {

namespace {

using io::json;
constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("malformed number for ") + what + ": \"" + text + "\"");
  }
}

std::string format_cutoff(const FockSpace& s) {
  return std::to_string(s.cutoff1()) + "," + std::to_string(s.cutoff2());
}

/// Closed-form intensity standard deviation for states that have one.
std::optional<std::function<double(double)>> analytic_std_for(const StateSpec& spec, double k_abs) {
  if (const auto* s = std::get_if<SinglePhotonSpec>(&spec.kind)) {
    const double p1 = std::norm(s->c1);
    const double p2 = std::norm(s->c2);
    if (std::abs(p1 - p2) <= 1e-12 || p1 <= 1e-12 || p2 <= 1e-12) {
      const cplx c1 = s->c1;
      const cplx c2 = s->c2;
      return [=](double phi) { return analytic_single_photon_std(c1, c2, k_abs, phi); };
    }
  }
  if (const auto* c = std::get_if<CoherentSpec>(&spec.kind)) {
    if (c->alpha == c->beta) {
      const RegimeParams p{2.0 * std::norm(c->alpha), 0.0, SqueezeAngle::zero, k_abs};
      return [=](double phi) { return std::sqrt(analytic_intensity_variance(p, phi, VarianceCase::coherent).value); };
    }
  }
  if (const auto* d = std::get_if<DisplacedSqueezedSpec>(&spec.kind)) {
    const bool angle_zero = d->theta == 0.0;
    const bool angle_pi = std::abs(d->theta - kPi) <= 1e-12;
    if (d->alpha.imag() == 0.0 && (angle_zero || angle_pi)) {
      const RegimeParams p{2.0 * std::norm(d->alpha), d->q, angle_zero ? SqueezeAngle::zero : SqueezeAngle::pi,
                           k_abs};
      const VarianceCase which = d->q == 0.0 ? VarianceCase::coherent : variance_case(p.theta);
      return [=](double phi) { return std::sqrt(analytic_intensity_variance(p, phi, which).value); };
    }
  }
  return std::nullopt;
}

std::vector<FringePoint> scan_with_analytic(const QState& state, const StateSpec& spec, const FringeConfig& config) {
  auto points = fringe_scan(state, config);
  if (auto analytic = analytic_std_for(spec, config.k_abs)) {
    for (auto& p : points) p.std_analytic = (*analytic)(p.phi);
  }
  return points;
}

json state_summary(const QState& s) {
  return json{{"cutoff", {s.space().cutoff1(), s.space().cutoff2()}}, {"dim", s.space().dim()},
              {"leakage", s.leakage()}};
}

json gstats_document(const QState& state) {
  const GStats stats = g_stats(state);
  json doc = io::to_json(stats);
  doc["state"] = state_summary(state);
  doc["uncertainty"] = io::to_json(uncertainty_report(stats));
  doc["squeeze"] = stats.n_bar > 0.0 ? io::to_json(squeeze_report(stats)) : json(nullptr);
  return doc;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_text(const std::vector<FringePoint>& points, const std::vector<std::string>& comments) {
  std::ostringstream os;
  io::write_fringe_csv(os, points, comments);
  return os.str();
}

FringeConfig figure_grid(const FigureOptions& o, double lo, double hi) {
  FringeConfig c;
  c.k_abs = o.k_abs;
  c.phi_min = o.phi_min.value_or(lo);
  c.phi_max = o.phi_max.value_or(hi);
  c.n_points = o.points;
  c.validate();
  return c;
}

std::string desk_scale_note(double n_bar) {
  return "n_bar: " + io::format_number(n_bar) +
         " (desk-scale stand-in for n_bar = 1e15, which a truncated Fock basis cannot represent)";
}

struct BrightCase {
  const char* name;
  StateSpec spec;
  VarianceCase analytic;
};

std::vector<BrightCase> bright_cases(double n_bar, double q) {
  const cplx alpha(std::sqrt(n_bar / 2.0), 0.0);
  return {
      {"coherent", StateSpec{CoherentSpec{alpha, alpha}, std::nullopt}, VarianceCase::coherent},
      {"theta0", StateSpec{DisplacedSqueezedSpec{alpha, q, 0.0}, std::nullopt}, VarianceCase::theta0},
      {"thetapi", StateSpec{DisplacedSqueezedSpec{alpha, q, kPi}, std::nullopt}, VarianceCase::thetaPi},
  };
}

std::vector<FringePoint> bright_curve(const BrightCase& c, const FringeConfig& grid, double n_bar, double q,
                                      const QState& state) {
  auto points = fringe_scan(state, grid);
  const RegimeParams p{n_bar, q, SqueezeAngle::zero, grid.k_abs};
  for (auto& pt : points) pt.std_analytic = std::sqrt(analytic_intensity_variance(p, pt.phi, c.analytic).value);
  return points;
}

std::vector<std::filesystem::path> figure_single_photon(const std::string& name, cplx c1, cplx c2,
                                                        const char* label, const FigureOptions& o,
                                                        const std::filesystem::path& dir) {
  const StateSpec spec{SinglePhotonSpec{c1, c2}, std::nullopt};
  const QState state = build(spec);
  const FringeConfig grid = figure_grid(o, -1.5 * kPi, 1.5 * kPi);
  auto points = fringe_scan(state, grid);
  for (auto& p : points) p.std_analytic = analytic_single_photon_std(c1, c2, grid.k_abs, p.phi);

  const std::vector<std::string> comments{
      "figure: " + name,
      std::string("state: ") + label,
      "k_abs: " + io::format_number(grid.k_abs),
      "envelope: mean +- std_exact/2",
  };
  const auto csv = dir / (name + ".csv");
  write_text(csv, csv_text(points, comments));

  json doc = gstats_document(state);
  doc["zero_reachable_regions"] = io::to_json(zero_reachable_regions(points));
  const auto js = dir / (name + "_gstats.json");
  write_text(js, doc.dump(2) + "\n");
  return {csv, js};
}

int cmd_gstats(const std::string& state_arg, const std::optional<std::string>& cutoff, std::ostream& out) {
  StateSpec spec = io::parse_state_spec(read_state_argument(state_arg));
  if (cutoff) spec.cutoff = parse_cutoff(*cutoff);
  const QState state = build(spec);
  out << gstats_document(state).dump(2) << '\n';
  return kSuccess;
}

int cmd_check(const std::optional<std::string>& state_arg, const std::string& cutoff, int count, std::uint64_t seed,
              std::ostream& out) {
  const auto c = parse_cutoff(cutoff);
  const FockSpace space(c.first, c.second);
  json doc;
  doc["commutators"] = io::to_json(check_commutators(space));

  if (count < 0) throw InputError("--count must be non-negative");
  std::mt19937_64 rng(seed);
  double min_slack = std::numeric_limits<double>::infinity();
  double max_vd = 0.0;
  double max_g_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const GStats s = g_stats(random_state(space, rng));
    min_slack = std::min(min_slack, uncertainty_report(s).min_slack());
    if (s.visibility) {
      max_vd = std::max(max_vd, *s.visibility * *s.visibility + *s.distinguishability * *s.distinguishability);
    }
    max_g_excess = std::max(max_g_excess, std::hypot(s.mean[1], s.mean[2], s.mean[3]) - s.mean[0]);
  }
  if (max_vd > 1.0 + 1e-9) throw NumericError("V^2 + D^2 exceeds 1");
  if (max_g_excess > 1e-9) throw NumericError("|G| exceeds G0");
  doc["random_states"] = {{"count", count},
                          {"seed", seed},
                          {"cutoff", {c.first, c.second}},
                          {"min_slack", count > 0 ? json(min_slack) : json(nullptr)},
                          {"max_v2_plus_d2", max_vd},
                          {"max_g_norm_minus_g0", count > 0 ? json(max_g_excess) : json(nullptr)}};
  if (state_arg) {
    const QState state = build(io::parse_state_spec(read_state_argument(*state_arg)));
    doc["state"] = gstats_document(state);
  }
  doc["ok"] = true;
  out << doc.dump(2) << '\n';
  return kSuccess;
}

int cmd_fringe(const std::string& state_arg, const std::optional<std::string>& cutoff, const FringeConfig& config,
               const std::string& format, std::ostream& out) {
  StateSpec spec = io::parse_state_spec(read_state_argument(state_arg));
  if (cutoff) spec.cutoff = parse_cutoff(*cutoff);
  const QState state = build(spec);
  const auto points = scan_with_analytic(state, spec, config);
  if (format == "json") {
    json doc{{"k_abs", config.k_abs},
             {"state", state_summary(state)},
             {"points", io::to_json(points)},
             {"zero_reachable_regions", io::to_json(zero_reachable_regions(points))}};
    out << doc.dump(2) << '\n';
  } else {
    io::write_fringe_csv(out, points,
                         {"k_abs: " + io::format_number(config.k_abs), "cutoff: " + format_cutoff(state.space()),
                          "leakage: " + io::format_number(state.leakage())});
  }
  return kSuccess;
}

int cmd_compare(double n_bar, double q, const std::string& theta, double k_abs, const std::optional<std::string>& cutoff,
                double leakage_tol, std::ostream& out) {
  RegimeParams p{n_bar, q, parse_theta(theta) == 0.0 ? SqueezeAngle::zero : SqueezeAngle::pi, k_abs};
  if (!(k_abs > 0.0)) throw InputError("--k-abs must be positive");
  BuildOptions options;
  options.leakage_tol = leakage_tol;
  std::optional<std::pair<int, int>> c;
  if (cutoff) c = parse_cutoff(*cutoff);
  const ComparisonReport r = compare_exact(p, c, options);
  json doc = io::to_json(r);
  json warnings = json::array();
  if (!r.in_regime) warnings.push_back("outside the bright regime (n_bar / sinh q < 50)");
  for (const auto& ph : r.phases) {
    if (ph.analytic_clamped) warnings.push_back("analytic variance clamped at phi = " + io::format_number(ph.phi));
  }
  doc["warnings"] = warnings;
  out << doc.dump(2) << '\n';
  return kSuccess;
}

}  // namespace

std::string read_state_argument(const std::string& arg) {
  const std::string t = trim(arg);
  if (!t.empty() && t.front() == '{') return t;
  std::ifstream f(arg);
  if (!f) throw InputError("cannot read state spec file \"" + arg + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::pair<int, int> parse_cutoff(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InputError("malformed cutoff \"" + text + "\"");
    }
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    const int n = to_int(trim(text));
    return {n, n};
  }
  return {to_int(trim(text.substr(0, comma))), to_int(trim(text.substr(comma + 1)))};
}

double parse_theta(const std::string& text) {
  const std::string t = trim(text);
  if (t == "pi" || t == "PI") return kPi;
  const double v = parse_double(t, "--theta");
  if (v == 0.0) return 0.0;
  if (std::abs(v - kPi) <= 1e-9) return kPi;
  throw InputError("--theta must be 0 or pi");
}

std::vector<std::filesystem::path> write_figure(const std::string& name, const FigureOptions& o,
                                                const std::filesystem::path& dir) {
  if (!(o.k_abs > 0.0)) throw InputError("--k-abs must be positive");
  if (!(o.n_bar > 0.0)) throw InputError("--nbar must be positive");
  std::filesystem::create_directories(dir);

  if (name == "fig5") {
    const double h = 1.0 / std::sqrt(2.0);
    return figure_single_photon(name, h, h, "single_photon c1 = c2 = 1/sqrt(2)", o, dir);
  }
  if (name == "fig6") return figure_single_photon(name, 1.0, 0.0, "single_photon c1 = 1, c2 = 0", o, dir);

  std::vector<std::filesystem::path> files;
  if (name == "fig4") {
    const FringeConfig grid = figure_grid(o, -1.5 * kPi, 1.5 * kPi);
    json regions;
    for (const auto& c : bright_cases(o.n_bar, o.q)) {
      const QState state = build(c.spec);
      const auto points = bright_curve(c, grid, o.n_bar, o.q, state);
      regions[c.name] = io::to_json(zero_reachable_regions(points));
      const std::vector<std::string> comments{"figure: fig4", std::string("curve: ") + c.name,
                                              desk_scale_note(o.n_bar), "q: " + io::format_number(o.q),
                                              "k_abs: " + io::format_number(grid.k_abs),
                                              "cutoff: " + format_cutoff(state.space()),
                                              "envelope: mean +- std_exact"};
      files.push_back(dir / (std::string("fig4_") + c.name + ".csv"));
      write_text(files.back(), csv_text(points, comments));
    }
    files.push_back(dir / "fig4_regions.json");
    write_text(files.back(), regions.dump(2) + "\n");
    return files;
  }
  if (name == "fig3") {
    const FringeConfig grid = figure_grid(o, -kPi, kPi);
    for (double q : {0.15, 0.4, 0.6, 0.8}) {
      for (const auto& c : bright_cases(o.n_bar, q)) {
        const QState state = build(c.spec);
        const auto points = bright_curve(c, grid, o.n_bar, q, state);
        const std::vector<std::string> comments{"figure: fig3", std::string("curve: ") + c.name,
                                                desk_scale_note(o.n_bar), "q: " + io::format_number(q),
                                                "k_abs: " + io::format_number(grid.k_abs),
                                                "cutoff: " + format_cutoff(state.space()),
                                                "std_analytic: closed form; std_exact: truncated Fock overlay"};
        char qtag[16];
        std::snprintf(qtag, sizeof qtag, "%.2f", q);
        files.push_back(dir / (std::string("fig3_q") + qtag + "_" + c.name + ".csv"));
        write_text(files.back(), csv_text(points, comments));
      }
    }
    return files;
  }
  throw InputError("unknown figure \"" + name + "\" (expected fig3, fig4, fig5 or fig6)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-mode Fock-space simulator for G-operator statistics and fringe fluctuations", "gsq"};
  app.require_subcommand(1);

  std::string state_arg;
  std::optional<std::string> cutoff;
  std::string out_path;
  std::string format;

  auto* gstats = app.add_subcommand("gstats", "G-operator statistics, uncertainty and squeeze reports (json)");
  gstats->add_option("--state", state_arg, "Inline JSON state spec or path to one")->required();
  gstats->add_option("--cutoff", cutoff, "Per-mode cutoff override: n or n1,n2");
  gstats->add_option("--format", format, "Output format (json)");
  gstats->add_option("--out", out_path, "Output file (default stdout)");

  std::optional<std::string> check_state;
  std::string check_cutoff = "6,6";
  int count = 500;
  std::uint64_t seed = 42;
  auto* check = app.add_subcommand("check", "Commutators and uncertainty theorems over seeded random states");
  check->add_option("--state", check_state, "Optional state to report on as well");
  check->add_option("--cutoff", check_cutoff, "Space for commutators and random states")->capture_default_str();
  check->add_option("--count", count, "Number of random states")->capture_default_str();
  check->add_option("--seed", seed, "Random seed")->capture_default_str();
  check->add_option("--format", format, "Output format (json)");
  check->add_option("--out", out_path, "Output file (default stdout)");

  FringeConfig fringe_config;
  auto* fringe = app.add_subcommand("fringe", "Exact intensity mean and fluctuations over a phase grid");
  fringe->add_option("--state", state_arg, "Inline JSON state spec or path to one")->required();
  fringe->add_option("--cutoff", cutoff, "Per-mode cutoff override: n or n1,n2");
  fringe->add_option("--phi-min", fringe_config.phi_min, "Grid start (radians)")->capture_default_str();
  fringe->add_option("--phi-max", fringe_config.phi_max, "Grid end (radians)")->capture_default_str();
  fringe->add_option("--points", fringe_config.n_points, "Grid size")->capture_default_str();
  fringe->add_option("--k-abs", fringe_config.k_abs, "|K|")->capture_default_str();
  fringe->add_option("--format", format, "csv (default) or json");
  fringe->add_option("--out", out_path, "Output file (default stdout)");

  double n_bar = 32.0;
  double q = 0.3;
  std::string theta = "0";
  double k_abs = 1.0;
  double leakage_tol = 1e-10;
  auto* compare = app.add_subcommand("compare", "Closed-form bright-state results vs exact Fock moments");
  compare->add_option("--nbar", n_bar, "Nominal mean photon number 2 alpha^2")->capture_default_str();
  compare->add_option("--q", q, "Squeeze parameter")->capture_default_str();
  compare->add_option("--theta", theta, "Squeeze angle: 0 or pi")->capture_default_str();
  compare->add_option("--k-abs", k_abs, "|K|")->capture_default_str();
  compare->add_option("--cutoff", cutoff, "Per-mode cutoff override: n or n1,n2");
  compare->add_option("--leakage-tol", leakage_tol, "Accepted truncation leakage")->capture_default_str();
  compare->add_option("--format", format, "Output format (json)");
  compare->add_option("--out", out_path, "Output file (default stdout)");

  std::string figure_name;
  FigureOptions fig;
  std::string fig_dir = ".";
  auto* figure = app.add_subcommand("figure", "Write figure data files (fig3, fig4, fig5, fig6)");
  figure->add_option("name", figure_name, "fig3 | fig4 | fig5 | fig6")->required();
  figure->add_option("--out", fig_dir, "Output directory")->capture_default_str();
  figure->add_option("--nbar", fig.n_bar, "Desk-scale mean photon number")->capture_default_str();
  figure->add_option("--q", fig.q, "Squeeze parameter for fig4")->capture_default_str();
  figure->add_option("--points", fig.points, "Grid size")->capture_default_str();
  figure->add_option("--k-abs", fig.k_abs, "|K|")->capture_default_str();
  figure->add_option("--phi-min", fig.phi_min, "Grid start override (radians)");
  figure->add_option("--phi-max", fig.phi_max, "Grid end override (radians)");
  figure->add_option("--format", format, "Output format (csv)");

  std::vector<const char*> argv{"gsq"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  try {
    const bool csv_capable = fringe->parsed() || figure->parsed();
    if (format.empty()) format = csv_capable ? "csv" : "json";
    if (format != "json" && format != "csv") throw InputError("--format must be csv or json");
    if (format == "csv" && !csv_capable) throw InputError("csv output is only available for fringe and figure");
    if (format == "json" && figure->parsed()) throw InputError("figure data is written as csv");

    if (figure->parsed()) {
      for (const auto& f : write_figure(figure_name, fig, fig_dir)) out << f.string() << '\n';
      return kSuccess;
    }

    std::ostringstream buffer;
    int code = kSuccess;
    if (gstats->parsed()) code = cmd_gstats(state_arg, cutoff, buffer);
    if (check->parsed()) code = cmd_check(check_state, check_cutoff, count, seed, buffer);
    if (fringe->parsed()) code = cmd_fringe(state_arg, cutoff, fringe_config, format, buffer);
    if (compare->parsed()) code = cmd_compare(n_bar, q, theta, k_abs, cutoff, leakage_tol, buffer);

    if (out_path.empty() || out_path == "-") {
      out << buffer.str();
    } else {
      write_text(out_path, buffer.str());
    }
    return code;
  } catch (const InputError& e) {
    err << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump() << '\n';
    return kInputError;
  } catch (const NumericError& e) {
    err << json{{"error", {{"kind", "numeric"}, {"message", e.what()}}}}.dump() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return kUnexpected;
  }
}

}  // namespace gsq::cli
