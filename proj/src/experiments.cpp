#include "disint/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "disint/concentration.hpp"
#include "disint/errors.hpp"
#include "disint/latent.hpp"
#include "disint/lln.hpp"
#include "disint/sampling.hpp"
#include "disint/stats.hpp"

namespace disint {

namespace {

constexpr std::string_view kKeys[] = {
    "experiment", "n",        "trials",    "seed",      "q00",       "q01",
    "q10",        "q11",      "mu1",       "lambda1",   "alpha",     "beta",
    "w_max",      "z_levels", "z_max",     "truncation_terms",       "t",
    "t_over_n",   "mixing",   "f",         "family",    "disintegration",
    "hoeffding",  "output_dir"};

constexpr CatalogEntry kCatalog[] = {
    {"random-walk", "Example 4.2", "Rademacher steps Z = 2X - 1 over iid uniform parameters"},
    {"exchangeable", "Example 4.3", "terminal means of uniform-mixing exchangeable sequences"},
    {"regime-switch", "Example 4.6", "regime-switching frequencies and the ergodic limit"},
    {"submartingale", "Figure 1", "parameter path, outcomes and running mean (Example 4.7)"},
    {"stochvol", "Example 4.8", "time average of f(X) against the latent functional"},
    {"hoeffding", "Example 4.4", "conditional Hoeffding-type bound and tail decomposition"},
    {"characterization-forward", "Theorem 1", "Cesaro limit of X from the parameter limit"},
    {"characterization-converse", "Theorem 1", "canonical disintegration series equality"},
    {"residual", "Theorem 3.8", "partial means of f(X_i) - xi_i(f)"},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(v) + "'");
  }
  return out;
}

// Accepts plain integers and integral reals such as 1e5.
std::uint64_t parse_count(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec == std::errc{} && res.ptr == v.data() + v.size()) return out;
  const double d = parse_real(key, v);
  if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
    throw ConfigError("key '" + std::string(key) + "': not a non-negative integer: '" +
                      std::string(v) + "'");
  }
  return static_cast<std::uint64_t>(d);
}

int parse_int(std::string_view key, std::string_view v) {
  const std::uint64_t c = parse_count(key, v);
  if (c > 1'000'000'000) throw ConfigError("key '" + std::string(key) + "': value too large");
  return static_cast<int>(c);
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    out.push_back(parse_real(key, trim(v.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void assign(ExperimentConfig& c, std::string_view key, std::string_view v) {
  const std::string value(v);
  if (key == "experiment") c.experiment = value;
  else if (key == "n") c.n = parse_count(key, v);
  else if (key == "trials") c.trials = parse_count(key, v);
  else if (key == "seed") c.seed = parse_count(key, v);
  else if (key == "q00") c.q[0][0] = parse_real(key, v);
  else if (key == "q01") c.q[0][1] = parse_real(key, v);
  else if (key == "q10") c.q[1][0] = parse_real(key, v);
  else if (key == "q11") c.q[1][1] = parse_real(key, v);
  else if (key == "mu1") c.mu1 = parse_real(key, v);
  else if (key == "lambda1") c.lambda1 = parse_real(key, v);
  else if (key == "alpha") c.alpha = parse_real(key, v);
  else if (key == "beta") c.beta = parse_real(key, v);
  else if (key == "w_max") c.w_max = parse_real(key, v);
  else if (key == "z_levels") c.z_levels = parse_int(key, v);
  else if (key == "z_max") c.z_max = parse_real(key, v);
  else if (key == "truncation_terms") c.truncation_terms = parse_int(key, v);
  else if (key == "t") c.t = parse_list(key, v);
  else if (key == "t_over_n") c.t_over_n = parse_list(key, v);
  else if (key == "mixing") c.mixing = value;
  else if (key == "f") c.f = value;
  else if (key == "family") c.family = value;
  else if (key == "disintegration") c.disintegration = value;
  else if (key == "hoeffding") c.hoeffding = value;
  else if (key == "output_dir") c.output_dir = value;
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::pair<std::string_view, std::string_view> split_entry(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(line) + "'");
  }
  const auto key = trim(line.substr(0, eq));
  if (key.empty()) throw ConfigError("empty key in '" + std::string(line) + "'");
  return {key, trim(line.substr(eq + 1))};
}

bool is_experiment(std::string_view name) {
  return std::any_of(std::begin(kCatalog), std::end(kCatalog),
                     [&](const CatalogEntry& e) { return e.name == name; });
}

SeedSpec base_seed(const ExperimentConfig& c) { return {c.seed, 0}; }

std::vector<double> thresholds(const ExperimentConfig& c) {
  if (!c.t.empty()) return c.t;
  std::vector<double> out;
  for (double r : c.t_over_n) {
    // 0.55 * 100 is 55.000000000000007; snap to the integer S_n is compared with
    const double t = r * static_cast<double>(c.n);
    const double whole = std::round(t);
    out.push_back(std::abs(t - whole) <= 1e-9 * std::max(1.0, whole) ? whole : t);
  }
  return out;
}

std::vector<double> iota(std::size_t count, double first) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + static_cast<double>(i);
  return out;
}

Disintegration parse_disintegration(const std::string& s) {
  if (s == "generated") return Disintegration::generated;
  if (s == "canonical") return Disintegration::canonical;
  throw ConfigError("disintegration must be generated or canonical, got '" + s + "'");
}

RegimeParams regime_params(const ExperimentConfig& c) {
  return {StochasticMatrix2(c.q), c.mu1, c.lambda1};
}

VolatilityParams volatility_params(const ExperimentConfig& c) {
  return {c.alpha, c.beta, c.w_max, c.truncation_terms};
}

std::string threshold_tag(double t) { return "t=" + format_double(t); }

// ---- experiments ----

ExperimentOutput random_walk(const ExperimentConfig& c) {
  RandomWalkResult r = random_walk_symmetry(c.n, c.trials, base_seed(c));
  ExperimentOutput out;
  out.report = std::move(r.report);
  std::vector<double> z(r.first_path.begin(), r.first_path.end());
  std::vector<double> s(z.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) s[k] = acc += z[k];
  const auto k = iota(z.size(), 1.0);
  out.csv.add_column("k", k);
  out.csv.add_column("z_k", z);
  out.csv.add_column("s_k", s);
  out.chart = {"Random walk S_k (trial 0)", "k", "S_k", {{"S_k", k, s}}};
  return out;
}

ExperimentOutput exchangeable(const ExperimentConfig& c) {
  const Mixing mixing = parse_mixing(c.mixing);
  const LimitDistributionReport r =
      exchangeable_limit_distribution(mixing, c.n, c.trials, base_seed(c));
  ExperimentOutput out;
  out.report.experiment = "exchangeable";
  if (std::holds_alternative<UniformMixing>(mixing)) {
    out.report.metrics.push_back(at_most("ks_distance", r.ks_distance, r.ks_threshold));
    out.report.metrics.push_back(at_least("across_trial_stddev", r.across_trial_stddev, 0.25));
  } else {
    out.report.notes.push_back("ks_distance vs uniform[0,1] = " + format_double(r.ks_distance));
  }
  out.report.metrics.push_back(
      at_least("conditional_band_fraction", r.conditional_band_fraction, 0.99));

  out.csv.add_column("trial", iota(c.trials, 0.0));
  out.csv.add_column("theta", r.drawn_thetas);
  out.csv.add_column("terminal_mean", r.terminal_means);

  std::vector<double> sorted = r.terminal_means;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ecdf(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ecdf[i] = static_cast<double>(i + 1) / static_cast<double>(sorted.size());
  }
  out.chart = {"Empirical CDF of terminal means",
               "terminal mean",
               "F",
               {{"empirical", sorted, ecdf}, {"uniform[0,1]", {0.0, 1.0}, {0.0, 1.0}}}};
  return out;
}

ExperimentOutput regime_switch(const ExperimentConfig& c) {
  const RegimeParams params = regime_params(c);
  const SeedSpec seed = base_seed(c);
  const LatentEstimateReport est = estimate_regime_functional(params, c.n, seed);

  // Same streams as the estimator, so this is the trajectory it averaged.
  const TrialSeeds s = trial_seeds(seed, 0);
  Stream regime_stream(s.params);
  const auto regimes = regime_path(params.q, c.n, regime_stream);
  const Trajectory t = sample_conditional(regime_switching_params(params, c.n, s.params), s.sampling);

  ExperimentOutput out;
  out.report.experiment = "regime-switch";
  out.report.metrics.push_back(within_band("regime_functional", est.estimator, est.target, 0.02));
  out.report.metrics.push_back(within_band("oracle_vs_target", est.oracle, est.target, 0.01));
  if (c.n >= 2) {
    const PairMatrix freq = regime_pair_frequencies(regimes);
    const PairMatrix law = regime_pair_law(params.q);
    std::vector<std::uint8_t> obs(c.n);
    for (std::size_t k = 0; k < c.n; ++k) obs[k] = t.labels[k] == 1 ? 1 : 0;
    const PairMatrix obs_freq = regime_pair_frequencies(obs);
    const PairMatrix obs_law = observation_pair_law(params);
    double regime_gap = 0.0, obs_gap = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        regime_gap = std::max(regime_gap, std::abs(freq[i][j] - law[i][j]));
        obs_gap = std::max(obs_gap, std::abs(obs_freq[i][j] - obs_law[i][j]));
      }
    }
    out.report.metrics.push_back(at_most("regime_pair_max_gap", regime_gap, 0.01));
    out.report.metrics.push_back(at_most("observation_pair_max_gap", obs_gap, 0.01));
  }

  std::vector<double> regime(c.n), x(c.n), running(c.n), target(c.n, est.target);
  double ups = 0.0;
  for (std::size_t k = 0; k < c.n; ++k) {
    regime[k] = regimes[k];
    x[k] = t.labels[k];
    ups += t.labels[k] == 1 ? 1.0 : 0.0;
    running[k] = ups / static_cast<double>(k + 1);
  }
  const auto k = iota(c.n, 0.0);
  out.csv.add_column("k", k);
  out.csv.add_column("regime", regime);
  out.csv.add_column("x_k", x);
  out.csv.add_column("running_freq", running);
  out.chart = {"Frequency of state 1",
               "k",
               "running frequency",
               {{"running frequency", k, running}, {"mu(1) pi_mu + lambda(1) pi_lambda", k, target}}};
  return out;
}

ExperimentOutput submartingale(const ExperimentConfig& c) {
  const SubmartingaleEstimate est = estimate_submartingale_limit(c.n, base_seed(c));
  std::size_t violations = 0;
  for (std::size_t k = 0; k < c.n; ++k) {
    const int e = static_cast<int>(std::min<std::size_t>(k + 1, 2000));
    const bool ok = est.theta[k] >= 0.0 && est.theta[k] <= 1.0 - std::ldexp(1.0, -e) &&
                    (k == 0 || est.theta[k] >= est.theta[k - 1]);
    if (!ok) ++violations;
  }
  ExperimentOutput out;
  out.report.experiment = "submartingale";
  out.report.metrics.push_back(at_most("envelope_violations", static_cast<double>(violations), 0.0));
  out.report.metrics.push_back(
      within_band("running_mean_vs_theta_n", est.report.estimator, est.report.target, est.band));

  const auto k = iota(c.n, 0.0);
  std::vector<double> x(est.x.begin(), est.x.end());
  out.csv.add_column("k", k);
  out.csv.add_column("theta_k", est.theta);
  out.csv.add_column("x_k", x);
  out.csv.add_column("running_mean", est.running_mean);
  out.chart = {"Sample path of the submartingale",
               "k",
               "",
               {{"theta_k", k, est.theta}, {"X_k", k, x, true}, {"running mean", k, est.running_mean}}};
  return out;
}

ExperimentOutput stochvol(const ExperimentConfig& c) {
  const VolatilityParams params = volatility_params(c);
  const StateFunction f = parse_state_function(c.f);
  const VolatilityEstimate est =
      estimate_volatility_functional(params, c.z_levels, c.z_max, f, c.n, base_seed(c));
  ExperimentOutput out;
  out.report.experiment = "stochvol";
  out.report.metrics.push_back(
      within_band("time_average_vs_oracle", est.report.estimator, est.report.oracle, 0.02));
  if (c.beta == 0.0 && c.f == "square") {
    // E e^{alpha + W} mean(z^2) with W uniform on [-w, w]
    const double w = c.w_max;
    const double mgf = w > 0.0 ? std::sinh(w) / w : 1.0;
    double z2 = 0.0;
    const auto z = z_grid(c.z_levels, c.z_max);
    for (double zj : z) z2 += zj * zj;
    z2 /= static_cast<double>(z.size());
    const double closed = std::exp(c.alpha) * mgf * z2;
    out.report.metrics.push_back(
        within_band("time_average_vs_closed_form", est.report.estimator, closed, 0.02));
  }
  const auto k = iota(c.n, 0.0);
  std::vector<double> oracle(c.n, est.report.oracle);
  out.csv.add_column("t", k);
  out.csv.add_column("h_t", est.path.h);
  out.csv.add_column("x_t", est.x);
  out.csv.add_column("running_mean", est.running_mean);
  out.chart = {"Time average of f(X_t)",
               "t",
               "",
               {{"running mean of f(X)", k, est.running_mean}, {"oracle E g(H)", k, oracle}}};
  return out;
}

ExperimentOutput hoeffding(const ExperimentConfig& c) {
  const auto ts = thresholds(c);
  const SeedSpec seed = base_seed(c);
  std::vector<ConcentrationReport> reports;
  if (c.hoeffding == "classical") {
    for (double t : ts) reports.push_back(independent_params_unconditional(c.n, t, c.trials, seed));
  } else {
    reports = conditional_hoeffding_sweep(family_from_config(c), c.n, ts, c.trials, seed,
                                          parse_disintegration(c.disintegration));
  }

  ExperimentOutput out;
  out.report.experiment = "hoeffding";
  CsvTable& csv = out.csv;
  const char* names[] = {"t",
                         "t_over_n",
                         "conditioning_count",
                         "empirical_conditional",
                         "bound",
                         "centered_conditional_bound",
                         "conditional_slack",
                         "empirical_unconditional",
                         "decomposition_rhs",
                         "classical_bound",
                         "unconditional_slack",
                         "low_power",
                         "pass"};
  std::vector<std::vector<double>> values(std::size(names));
  for (const auto& r : reports) {
    const std::string tag = threshold_tag(r.t);
    if (c.hoeffding == "classical") {
      out.report.metrics.push_back(at_most("classical_" + tag, r.empirical_unconditional,
                                           r.classical_bound + r.unconditional_slack));
    } else {
      out.report.metrics.push_back(at_most("conditional_" + tag, r.empirical_conditional,
                                           r.bound + r.conditional_slack));
      out.report.metrics.push_back(at_most("decomposition_" + tag, r.empirical_unconditional,
                                           r.decomposition_rhs + r.unconditional_slack));
      out.report.notes.push_back(tag + " centered_conditional_bound=" +
                                 format_double(r.centered_conditional_bound));
      if (r.low_power) out.report.notes.push_back(tag + " low_power conditioning_count=" +
                                                  std::to_string(r.conditioning_count));
    }
    const double row[] = {r.t,
                          r.t / static_cast<double>(r.n),
                          static_cast<double>(r.conditioning_count),
                          r.empirical_conditional,
                          r.bound,
                          r.centered_conditional_bound,
                          r.conditional_slack,
                          r.empirical_unconditional,
                          r.decomposition_rhs,
                          r.classical_bound,
                          r.unconditional_slack,
                          r.low_power ? 1.0 : 0.0,
                          r.pass ? 1.0 : 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) values[i].push_back(row[i]);
  }
  out.report.notes.push_back("bound form " + reports.front().bound_form);
  for (std::size_t i = 0; i < values.size(); ++i) csv.add_column(names[i], values[i]);

  const bool classical = c.hoeffding == "classical";
  out.chart = {"Tail probabilities against the bound",
               "t / n",
               "probability",
               {{classical ? "P(S_n >= t)" : "P(S_n >= t | E(S_n|xi) < t)", values[1],
                 classical ? values[7] : values[3], true},
                {classical ? "classical bound" : "exp(-2 t^2 / n)", values[1],
                 classical ? values[9] : values[4]}}};
  return out;
}

ExperimentOutput characterization_forward(const ExperimentConfig& c) {
  const CharacterizationReport r = check_forward(family_from_config(c), c.n, c.trials, base_seed(c));
  ExperimentOutput out;
  out.report.experiment = "characterization-forward";
  out.report.metrics.push_back(within_band("x_cesaro_terminal", r.x_cesaro_terminal, r.target_p, r.band));
  out.report.notes.push_back("theta_cesaro_terminal=" + format_double(r.theta_cesaro_terminal));
  out.report.notes.push_back("worst of " + std::to_string(c.trials) + " trials");
  std::vector<double> n, logn, theta, x;
  for (std::size_t i = 0; i < r.x_series.checkpoints.size(); ++i) {
    n.push_back(static_cast<double>(r.x_series.checkpoints[i].n));
    logn.push_back(std::log10(n.back()));
    theta.push_back(r.theta_series.checkpoints[i].partial_mean);
    x.push_back(r.x_series.checkpoints[i].partial_mean);
  }
  out.csv.add_column("n", n);
  out.csv.add_column("theta_mean", theta);
  out.csv.add_column("x_mean", x);
  std::vector<double> target(n.size(), r.target_p);
  out.chart = {"Cesaro means (worst trial)",
               "log10 n",
               "mean",
               {{"theta", logn, theta}, {"X", logn, x}, {"p", logn, target}}};
  return out;
}

ExperimentOutput characterization_converse(const ExperimentConfig& c) {
  const ProcessFamily family = family_from_config(c);
  std::vector<double> theta(c.trials), x(c.trials), equal(c.trials);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < c.trials; ++i) {
    const CharacterizationReport r = check_converse(family, c.n, SeedSpec{c.seed, i});
    theta[i] = r.theta_cesaro_terminal;
    x[i] = r.x_cesaro_terminal;
    equal[i] = r.pass ? 1.0 : 0.0;
    if (r.pass) ++matches;
  }
  ExperimentOutput out;
  out.report.experiment = "characterization-converse";
  out.report.metrics.push_back(
      at_least("exact_matches", static_cast<double>(matches), static_cast<double>(c.trials)));
  const auto trial = iota(c.trials, 0.0);
  out.csv.add_column("trial", trial);
  out.csv.add_column("theta_terminal", theta);
  out.csv.add_column("x_terminal", x);
  out.csv.add_column("equal", equal);
  out.chart = {"Terminal Cesaro means under the canonical disintegration",
               "trial",
               "mean",
               {{"theta", trial, theta}, {"X", trial, x, true}}};
  return out;
}

ExperimentOutput residual(const ExperimentConfig& c) {
  const ResidualDecayReport r = residual_decay(family_from_config(c), parse_state_function(c.f),
                                               c.f, c.n, c.trials, base_seed(c));
  ExperimentOutput out;
  out.report.experiment = "residual";
  out.report.metrics.push_back(at_least("terminal_within_band",
                                        static_cast<double>(r.terminal_within_band),
                                        static_cast<double>(r.runs)));
  out.report.metrics.push_back(
      at_least("monotone_fraction", r.monotone_fraction, kResidualMonotoneFraction));
  out.report.notes.push_back("endpoint_fraction=" + format_double(r.endpoint_fraction));
  out.report.notes.push_back("worst_terminal=" + format_double(r.worst_terminal) +
                             " band=" + format_double(r.band));

  std::vector<double> run, n, value;
  for (std::size_t i = 0; i < r.runs; ++i) {
    for (std::size_t j = 0; j < r.checkpoints.size(); ++j) {
      run.push_back(static_cast<double>(i));
      n.push_back(static_cast<double>(r.checkpoints[j]));
      value.push_back(r.abs_partial_means[i][j]);
    }
  }
  out.csv.add_column("run", run);
  out.csv.add_column("n", n);
  out.csv.add_column("abs_partial_mean", value);

  std::vector<double> logn, mean, band;
  for (std::size_t j = 0; j < r.checkpoints.size(); ++j) {
    const double cn = static_cast<double>(r.checkpoints[j]);
    logn.push_back(std::log10(cn));
    double acc = 0.0;
    for (const auto& row : r.abs_partial_means) acc += row[j];
    mean.push_back(acc / static_cast<double>(r.runs));
    band.push_back(4.0 * std::sqrt(0.25 / cn));
  }
  out.chart = {"Residual partial means",
               "log10 n",
               "|partial mean|",
               {{"mean over runs", logn, mean}, {"4 sqrt(0.25/n)", logn, band}}};
  return out;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeys; }

ExperimentConfig parse_config(std::string_view text, std::span<const std::string> overrides) {
  ExperimentConfig c;
  std::vector<std::string> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = trim(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (!line.empty() && line.front() != '#') {
      const auto [key, value] = split_entry(line);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        throw ConfigError("duplicate config key '" + std::string(key) + "'");
      }
      seen.emplace_back(key);
      assign(c, key, value);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  for (const auto& o : overrides) {
    const auto [key, value] = split_entry(trim(o));
    assign(c, key, value);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

std::vector<std::pair<std::string, std::string>> config_pairs(const ExperimentConfig& c) {
  return {{"experiment", c.experiment},
          {"n", std::to_string(c.n)},
          {"trials", std::to_string(c.trials)},
          {"seed", std::to_string(c.seed)},
          {"q00", format_double(c.q[0][0])},
          {"q01", format_double(c.q[0][1])},
          {"q10", format_double(c.q[1][0])},
          {"q11", format_double(c.q[1][1])},
          {"mu1", format_double(c.mu1)},
          {"lambda1", format_double(c.lambda1)},
          {"alpha", format_double(c.alpha)},
          {"beta", format_double(c.beta)},
          {"w_max", format_double(c.w_max)},
          {"z_levels", std::to_string(c.z_levels)},
          {"z_max", format_double(c.z_max)},
          {"truncation_terms", std::to_string(c.truncation_terms)},
          {"t", join(c.t)},
          {"t_over_n", join(c.t_over_n)},
          {"mixing", c.mixing},
          {"f", c.f},
          {"family", c.family},
          {"disintegration", c.disintegration},
          {"hoeffding", c.hoeffding},
          {"output_dir", c.output_dir}};
}

StateFunction parse_state_function(std::string_view spec) {
  if (spec == "identity") return [](double x) { return x; };
  if (spec == "square") return [](double x) { return x * x; };
  if (spec == "positive") return [](double x) { return x > 0.0 ? 1.0 : 0.0; };
  if (spec.starts_with("indicator:")) {
    const double v = parse_real("f", spec.substr(10));
    return [v](double x) { return x == v ? 1.0 : 0.0; };
  }
  if (spec.starts_with("const:")) {
    const double v = parse_real("f", spec.substr(6));
    return [v](double) { return v; };
  }
  if (spec.starts_with("table:")) {
    std::map<double, double> table;
    std::string_view rest = spec.substr(6);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto [k, v] = split_entry(rest.substr(0, semi));
      table[parse_real("f", k)] = parse_real("f", v);
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    }
    if (table.empty()) throw ConfigError("f table is empty");
    return [table](double x) {
      const auto it = table.find(x);
      if (it == table.end()) throw DomainError("f table has no entry for " + format_double(x));
      return it->second;
    };
  }
  throw ConfigError("unknown f '" + std::string(spec) + "'");
}

ProcessFamily family_from_config(const ExperimentConfig& c) {
  if (c.family == "iid-uniform") return IidUniformFamily{};
  if (c.family == "exchangeable") return ExchangeableFamily{parse_mixing(c.mixing)};
  if (c.family == "regime-switch") return RegimeSwitchFamily{regime_params(c)};
  if (c.family == "submartingale") return SubmartingaleFamily{};
  if (c.family == "stochvol") return VolatilityFamily{volatility_params(c), c.z_levels, c.z_max};
  throw ConfigError("unknown family '" + c.family + "'");
}

void validate_config(const ExperimentConfig& c) {
  if (!is_experiment(c.experiment)) {
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  }
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  try {
    const std::string& e = c.experiment;
    auto check_family = [&]() {
      const ProcessFamily family = family_from_config(c);
      if (const auto* r = std::get_if<RegimeSwitchFamily>(&family)) validate_regime(r->params);
      if (const auto* v = std::get_if<VolatilityFamily>(&family)) {
        validate_volatility(v->params);
        (void)z_grid(v->z_levels, v->z_max);
      }
      if (const auto* x = std::get_if<ExchangeableFamily>(&family)) validate_mixing(x->mixing);
      return family;
    };
    if (e == "exchangeable") {
      validate_mixing(parse_mixing(c.mixing));
      if (c.trials < 100) throw ConfigError("exchangeable needs trials >= 100");
    } else if (e == "regime-switch") {
      validate_regime(regime_params(c));
    } else if (e == "stochvol") {
      validate_volatility(volatility_params(c));
      (void)z_grid(c.z_levels, c.z_max);
      (void)parse_state_function(c.f);
    } else if (e == "hoeffding") {
      const auto ts = thresholds(c);
      if (ts.empty()) throw ConfigError("hoeffding needs at least one threshold");
      for (double t : ts) {
        if (!(t > 0.0)) throw ConfigError("thresholds must be > 0");
      }
      if (c.hoeffding == "classical") {
        for (double t : ts) {
          if (!(t > static_cast<double>(c.n) / 2.0)) {
            throw ConfigError("classical bound needs t > n/2");
          }
        }
      } else if (c.hoeffding == "conditional") {
        (void)parse_disintegration(c.disintegration);
        const ProcessFamily family = check_family();
        if (std::holds_alternative<RegimeSwitchFamily>(family) ||
            std::holds_alternative<VolatilityFamily>(family)) {
          throw ConfigError("hoeffding needs a [0,1]-valued family");
        }
      } else {
        throw ConfigError("hoeffding must be conditional or classical");
      }
    } else if (e == "characterization-forward") {
      if (!known_cesaro_limit(check_family())) {
        throw ConfigError("family " + c.family + " has no constant Cesaro limit");
      }
    } else if (e == "characterization-converse") {
      const ProcessFamily family = check_family();
      if (const auto* v = std::get_if<VolatilityFamily>(&family); v && v->z_levels != 2) {
        throw ConfigError("converse check needs a two-point support (z_levels = 2)");
      }
    } else if (e == "residual") {
      (void)check_family();
      (void)parse_state_function(c.f);
    }
  } catch (const NonErgodicError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
}

ExperimentOutput run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  const std::string& e = c.experiment;
  if (e == "random-walk") out = random_walk(c);
  else if (e == "exchangeable") out = exchangeable(c);
  else if (e == "regime-switch") out = regime_switch(c);
  else if (e == "submartingale") out = submartingale(c);
  else if (e == "stochvol") out = stochvol(c);
  else if (e == "hoeffding") out = hoeffding(c);
  else if (e == "characterization-forward") out = characterization_forward(c);
  else if (e == "characterization-converse") out = characterization_converse(c);
  else out = residual(c);
  out.report.experiment = e;
  out.report.seed = c.seed;
  out.report.config = config_pairs(c);
  out.report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

OutputPaths output_paths(const ExperimentConfig& c) {
  const std::filesystem::path dir(c.output_dir);
  const std::string stem = c.experiment + "-" + std::to_string(c.seed);
  return {dir / (stem + ".csv"), dir / (stem + ".svg"), dir / (stem + ".report.txt")};
}

ExperimentReport run_and_write(const ExperimentConfig& c) {
  ExperimentOutput out = run_experiment(c);
  const OutputPaths paths = output_paths(c);
  write_text_file(paths.csv, render_csv(out.csv));
  write_text_file(paths.svg, render_svg(out.chart));
  write_text_file(paths.report, format_report(out.report));
  return std::move(out.report);
}

std::span<const CatalogEntry> experiment_catalog() { return kCatalog; }

std::string catalog_text() {
  std::string out;
  for (const auto& e : kCatalog) {
    out += std::string(e.name) + " — " + std::string(e.reference) + ": " +
           std::string(e.summary) + '\n';
  }
  return out;
}

std::string catalog_json_lines() {
  std::string out;
  for (const auto& e : kCatalog) {
    const nlohmann::json record = {{"name", e.name}, {"reference", e.reference}, {"summary", e.summary}};
    out += record.dump() + '\n';
  }
  return out;
}

}  // namespace disint
