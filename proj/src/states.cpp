#include "gsq/states.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gsq {

namespace {

constexpr double kSinglePhotonNormTol = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double product_leakage(double l1, double l2) { return 1.0 - (1.0 - l1) * (1.0 - l2); }

double tail_mass(const Vector& amps, int from) {
  double tail = 0.0;
  for (Eigen::Index n = from; n < amps.size(); ++n) tail += std::norm(amps[n]);
  return tail;
}

void require_within(const std::pair<int, int>& cutoff, int n1, int n2) {
  if (n1 > cutoff.first || n2 > cutoff.second) {
    throw InputError("cutoff override (" + std::to_string(cutoff.first) + ", " +
                     std::to_string(cutoff.second) + ") cannot hold occupation (" + std::to_string(n1) +
                     ", " + std::to_string(n2) + ")");
  }
}

QState product_state(const FockSpace& space, const std::vector<cplx>& mode1, const std::vector<cplx>& mode2,
                     double leakage) {
  Vector amps(space.dim());
  for (int n1 = 0; n1 <= space.cutoff1(); ++n1) {
    for (int n2 = 0; n2 <= space.cutoff2(); ++n2) {
      amps[space.index(n1, n2)] = mode1[n1] * mode2[n2];
    }
  }
  return QState::normalized(space, std::move(amps), leakage);
}

void check_leakage(double leakage, const BuildOptions& options) {
  if (leakage > options.leakage_tol) {
    throw NumericError("truncation leakage " + brief(leakage) + " exceeds tolerance " +
                       brief(options.leakage_tol) + "; increase the cutoff");
  }
}

int grow(int cutoff) { return std::max(cutoff + 1, static_cast<int>(std::ceil(cutoff * 1.25))); }

QState build_coherent(const CoherentSpec& c, const std::optional<std::pair<int, int>>& override,
                      const BuildOptions& options) {
  int c1 = override ? override->first : default_cutoff(std::norm(c.alpha));
  int c2 = override ? override->second : default_cutoff(std::norm(c.beta));
  for (;;) {
    const auto s1 = coherent_series(c.alpha, c1);
    const auto s2 = coherent_series(c.beta, c2);
    const double leak = product_leakage(s1.leakage, s2.leakage);
    if (leak <= options.leakage_tol || override) {
      check_leakage(leak, options);
      return product_state(FockSpace(c1, c2), s1.amplitudes, s2.amplitudes, leak);
    }
    if (s1.leakage > s2.leakage) c1 = grow(c1); else c2 = grow(c2);
    if (std::max(c1, c2) > options.max_auto_cutoff) check_leakage(leak, options);
  }
}

QState build_displaced_squeezed(const DisplacedSqueezedSpec& d, const std::optional<std::pair<int, int>>& override,
                                const BuildOptions& options) {
  const double sh = std::sinh(d.q);
  const double mu = std::norm(d.alpha) + sh * sh;
  // Photon-number spread, maximized over the squeeze angle.
  const double sigma = std::sqrt(std::norm(d.alpha) * std::exp(2.0 * d.q) + 2.0 * sh * sh * std::cosh(d.q) * std::cosh(d.q));
  int working = static_cast<int>(std::ceil(mu + 20.0 * sigma + 40.0));
  if (override) working = std::max(working, std::max(override->first, override->second) + 40);

  const QState mode = displaced_squeezed_mode(d.alpha, d.q, d.theta, working, options);
  const Vector amps = mode.amplitudes();
  if (tail_mass(amps, working - 9) > 1e-20) {
    throw NumericError("displaced squeezed state reaches the edge of its working space");
  }
  const double drift = mode.leakage();

  auto leakage_for = [&](int c1, int c2) {
    return product_leakage(tail_mass(amps, c1 + 1), tail_mass(amps, c2 + 1)) + 2.0 * drift;
  };

  int c1 = override ? override->first : default_cutoff(mu);
  int c2 = override ? override->second : c1;
  double leak = leakage_for(c1, c2);
  if (!override) {
    while (leak > options.leakage_tol && c1 < std::min(options.max_auto_cutoff, working - 10)) {
      c1 = c2 = std::min(grow(c1), working - 10);
      leak = leakage_for(c1, c2);
    }
  }
  check_leakage(leak, options);

  std::vector<cplx> m(amps.data(), amps.data() + amps.size());
  return product_state(FockSpace(c1, c2), m, m, leak);
}

}  // namespace

int default_cutoff(double mean_occupation) {
  const double mu = std::max(0.0, mean_occupation);
  return static_cast<int>(std::ceil(mu + 8.0 * std::sqrt(mu + 1.0) + 10.0));
}

void validate(const StateSpec& spec) {
  if (spec.cutoff && (spec.cutoff->first < 0 || spec.cutoff->second < 0)) {
    throw InputError("cutoff override must be non-negative");
  }
  std::visit(Overloaded{
                 [](const VacuumSpec&) {},
                 [](const FockStateSpec& f) {
                   if (f.n1 < 0 || f.n2 < 0) throw InputError("Fock occupations must be non-negative");
                 },
                 [](const CoherentSpec& c) {
                   if (std::abs(c.alpha) > 30.0 || std::abs(c.beta) > 30.0) {
                     throw InputError("coherent amplitudes above 30 are not supported");
                   }
                 },
                 [](const DisplacedSqueezedSpec& d) {
                   if (!(d.q >= 0.0)) throw InputError("squeeze parameter q must be >= 0");
                   if (!(d.theta >= 0.0 && d.theta < 2.0 * std::numbers::pi)) {
                     throw InputError("squeeze angle theta must lie in [0, 2pi)");
                   }
                   if (std::abs(d.alpha) > 30.0) throw InputError("displacement above 30 is not supported");
                 },
                 [](const SinglePhotonSpec& s) {
                   const double n = std::norm(s.c1) + std::norm(s.c2);
                   if (std::abs(n - 1.0) > kSinglePhotonNormTol) {
                     throw InputError("single-photon amplitudes must satisfy |c1|^2 + |c2|^2 = 1 (got " +
                                      std::to_string(n) + ")");
                   }
                 },
                 [](const CustomSpec& c) {
                   if (c.terms.empty()) throw InputError("custom state needs at least one term");
                   double n = 0.0;
                   for (const auto& t : c.terms) {
                     if (t.n1 < 0 || t.n2 < 0) throw InputError("custom occupations must be non-negative");
                     if (!std::isfinite(t.amplitude.real()) || !std::isfinite(t.amplitude.imag())) {
                       throw InputError("custom amplitudes must be finite");
                     }
                     n += std::norm(t.amplitude);
                   }
                   if (!(n > 0.0)) throw InputError("custom state has zero norm");
                 },
             },
             spec.kind);
}

QState build(const StateSpec& spec, const BuildOptions& options) {
  validate(spec);
  const auto& override = spec.cutoff;
  return std::visit(
      Overloaded{
          [&](const VacuumSpec&) {
            const auto c = override.value_or(std::pair{1, 1});
            const FockSpace space(c.first, c.second);
            Vector amps = Vector::Zero(space.dim());
            amps[0] = 1.0;
            return QState(space, std::move(amps));
          },
          [&](const FockStateSpec& f) {
            const auto c = override.value_or(std::pair{std::max(f.n1, 1), std::max(f.n2, 1)});
            require_within(c, f.n1, f.n2);
            const FockSpace space(c.first, c.second);
            Vector amps = Vector::Zero(space.dim());
            amps[space.index(f.n1, f.n2)] = 1.0;
            return QState(space, std::move(amps));
          },
          [&](const CoherentSpec& c) { return build_coherent(c, override, options); },
          [&](const DisplacedSqueezedSpec& d) { return build_displaced_squeezed(d, override, options); },
          [&](const SinglePhotonSpec& s) {
            const auto c = override.value_or(std::pair{1, 1});
            require_within(c, 1, 1);
            const FockSpace space(c.first, c.second);
            Vector amps = Vector::Zero(space.dim());
            amps[space.index(1, 0)] = s.c1;
            amps[space.index(0, 1)] = s.c2;
            return QState::normalized(space, std::move(amps));
          },
          [&](const CustomSpec& cs) {
            int m1 = 0;
            int m2 = 0;
            for (const auto& t : cs.terms) {
              m1 = std::max(m1, t.n1);
              m2 = std::max(m2, t.n2);
            }
            const auto c = override.value_or(std::pair{std::max(m1, 1), std::max(m2, 1)});
            require_within(c, m1, m2);
            const FockSpace space(c.first, c.second);
            Vector amps = Vector::Zero(space.dim());
            for (const auto& t : cs.terms) amps[space.index(t.n1, t.n2)] += t.amplitude;
            return QState::normalized(space, std::move(amps));
          },
      },
      spec.kind);
}

CoherentSeries coherent_series(cplx alpha, int cutoff) {
  if (cutoff < 0) throw InputError("coherent_series: cutoff must be >= 0");
  const double r = std::abs(alpha);
  if (r > 30.0) throw InputError("coherent_series: |alpha| > 30 overflows the series");

  CoherentSeries out{std::vector<cplx>(cutoff + 1, cplx{}), 0.0};
  if (r == 0.0) {
    out.amplitudes[0] = 1.0;
    return out;
  }
  const double lambda = r * r;
  const double phase = std::arg(alpha);
  auto log_weight = [&](int n) { return -0.5 * lambda + n * std::log(r) - 0.5 * std::lgamma(n + 1.0); };
  for (int n = 0; n <= cutoff; ++n) {
    out.amplitudes[n] = std::polar(std::exp(log_weight(n)), n * phase);
  }
  // Poisson tail summed directly so tiny leakages are not lost to 1 - sum.
  double tail = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double p = std::exp(2.0 * log_weight(n));
    tail += p;
    if (n > lambda && (p == 0.0 || p < 1e-20 * tail)) break;
  }
  out.leakage = tail;
  return out;
}

std::vector<cplx> displaced_squeezed_oracle(double alpha, double q, int cutoff) {
  if (std::abs(alpha) > 3.0 || q < 0.0 || q > 0.8 || cutoff < 1 || cutoff > 40) {
    throw InputError("displaced_squeezed_oracle: parameters outside the oracle range");
  }
  const int padded = cutoff + 60;
  const int dim = padded + 1;

  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
  const double t = std::tanh(q);
  cplx c = 1.0 / std::sqrt(std::cosh(q));
  vac[0] = c;
  for (int m = 1; 2 * m <= padded; ++m) {
    c *= -t * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
    vac[2 * m] = c;
  }

  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    gen(n, n - 1) = alpha * s;   // alpha a^dag
    gen(n - 1, n) = -alpha * s;  // -alpha a
  }
  const Eigen::MatrixXcd disp = gen.exp();
  const Eigen::VectorXcd out = disp * vac;
  return {out.data(), out.data() + cutoff + 1};
}

QState displaced_squeezed_mode(cplx alpha, double q, double theta, int working_cutoff,
                               const BuildOptions& options) {
  const FockSpace space(working_cutoff, 0);
  const QOperator a = annihilation(space, Mode::one);
  const QOperator ad = adjoint(a);
  const QOperator a2 = multiply(a, a);
  const QOperator ad2 = multiply(ad, ad);
  const cplx xi = std::polar(q, theta);

  const QOperator squeeze = scale(0.5, subtract(scale(std::conj(xi), a2), scale(xi, ad2)));
  const QOperator displace = subtract(scale(alpha, ad), scale(std::conj(alpha), a));

  Vector vac = Vector::Zero(space.dim());
  vac[0] = 1.0;
  const ExpActionOptions exp_opts{options.exp_tol};
  QState s(space, std::move(vac));
  s = exp_action(squeeze, s, exp_opts);
  return exp_action(displace, s, exp_opts);
}

QState random_state(const FockSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector amps(space.dim());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    amps[i] = cplx(re, im);
  }
  return QState::normalized(space, std::move(amps));
}

}  // namespace gsq
