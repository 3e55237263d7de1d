#include "disint/processes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <type_traits>

namespace disint {

namespace {

constexpr std::uint64_t kFingerprintOffset = 0xcbf29ce484222325ull;

void mix(std::uint64_t& h, std::uint64_t v) { h = splitmix64(h ^ v); }

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::iid_uniform: return "iid-uniform";
    case Family::exchangeable: return "exchangeable";
    case Family::regime_switching: return "regime-switch";
    case Family::submartingale: return "submartingale";
    case Family::stochastic_volatility: return "stochvol";
    case Family::canonical: return "canonical";
  }
  return "unknown";
}

MeasureSequence::MeasureSequence(Family family, SeedSpec seed, std::vector<int> labels,
                                 std::vector<double> weights, std::vector<double> positions)
    : family_(family),
      seed_(seed),
      labels_(std::move(labels)),
      weights_(std::move(weights)),
      positions_(std::move(positions)) {
  const std::size_t k = labels_.size();
  if (k == 0 || weights_.size() % k != 0) {
    throw DomainError("measure sequence weights do not tile the support");
  }
  n_ = weights_.size() / k;
  if (positions_.size() == k) {
    shared_positions_ = true;
  } else if (positions_.size() == n_ * k) {
    shared_positions_ = false;
  } else {
    throw DomainError("measure sequence positions do not match its support");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    validate_measure(labels_, std::span(weights_).subspan(i * k, k));
  }

  std::uint64_t h = kFingerprintOffset;
  mix(h, static_cast<std::uint64_t>(family_));
  mix(h, seed_.base_seed);
  mix(h, seed_.stream_index);
  mix(h, n_);
  for (int l : labels_) mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
  for (double w : weights_) mix(h, std::bit_cast<std::uint64_t>(w));
  for (double p : positions_) mix(h, std::bit_cast<std::uint64_t>(p));
  id_ = h;
}

MeasureSequence MeasureSequence::two_point(Family family, SeedSpec seed, int low, int high,
                                           std::span<const double> thetas) {
  std::vector<double> weights(2 * thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theta = thetas[i];
    if (!(theta >= 0.0 && theta <= 1.0)) {
      throw DomainError("Bernoulli parameter " + std::to_string(theta) + " outside [0,1]");
    }
    weights[2 * i] = 1.0 - theta;
    weights[2 * i + 1] = theta;
  }
  return {family, seed, {low, high}, std::move(weights),
          {static_cast<double>(low), static_cast<double>(high)}};
}

MeasureView MeasureSequence::operator[](std::size_t i) const {
  const std::size_t k = labels_.size();
  const std::span<const double> pos = shared_positions_
                                          ? std::span<const double>(positions_)
                                          : std::span<const double>(positions_).subspan(i * k, k);
  return {labels_, pos, std::span<const double>(weights_).subspan(i * k, k)};
}

double MeasureSequence::upper_weight(std::size_t i) const {
  if (!is_two_point()) throw DomainError("measure sequence is not two-point");
  return labels_[1] > labels_[0] ? weight(i, 1) : weight(i, 0);
}

Mixing parse_mixing(std::string_view text) {
  if (text == "uniform") return UniformMixing{};
  if (text.starts_with("point:")) {
    Mixing m = PointMassMixing{parse_number(text.substr(6), "point mass")};
    validate_mixing(m);
    return m;
  }
  if (text.starts_with("two-point:")) {
    std::string_view rest = text.substr(10);
    double v[3];
    for (int i = 0; i < 3; ++i) {
      const auto comma = rest.find(',');
      if ((i < 2) == (comma == std::string_view::npos)) {
        throw ConfigError("two-point mixing needs low,high,weight_low");
      }
      v[i] = parse_number(rest.substr(0, comma), "two-point mixing");
      rest = i < 2 ? rest.substr(comma + 1) : std::string_view{};
    }
    Mixing m = TwoPointMixing{v[0], v[1], v[2]};
    validate_mixing(m);
    return m;
  }
  throw ConfigError("unsupported mixing '" + std::string(text) + "'");
}

std::string to_string(const Mixing& mixing) {
  if (std::holds_alternative<UniformMixing>(mixing)) return "uniform";
  std::ostringstream out;
  out.precision(17);
  if (const auto* p = std::get_if<PointMassMixing>(&mixing)) {
    out << "point:" << p->c;
  } else {
    const auto& t = std::get<TwoPointMixing>(mixing);
    out << "two-point:" << t.low << ',' << t.high << ',' << t.weight_low;
  }
  return out.str();
}

void validate_mixing(const Mixing& mixing) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (const auto* p = std::get_if<PointMassMixing>(&mixing); p && !unit(p->c)) {
    throw ConfigError("point-mass mixing location must lie in [0,1]");
  }
  if (const auto* t = std::get_if<TwoPointMixing>(&mixing);
      t && !(unit(t->low) && unit(t->high) && unit(t->weight_low))) {
    throw ConfigError("two-point mixing values must lie in [0,1]");
  }
}

void validate_regime(const RegimeParams& params) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(params.mu_up) || !unit(params.lambda_up)) {
    throw DomainError("regime weights must lie in [0,1]");
  }
  if (!(params.mu_up > params.lambda_up)) {
    throw ConventionError("regime convention requires mu(1) > lambda(1)");
  }
  (void)stationary_distribution(params.q);
}

void validate_volatility(const VolatilityParams& params) {
  if (!(std::abs(params.beta) < 1.0)) {
    throw StationarityError("volatility persistence |beta| must be < 1");
  }
  if (!(params.w_max >= 0.0) || !std::isfinite(params.w_max)) {
    throw DomainError("innovation bound w_max must be finite and >= 0");
  }
  if (!std::isfinite(params.alpha)) throw DomainError("alpha must be finite");
  if (params.truncation_terms < 1) throw DomainError("truncation_terms must be >= 1");
}

double VolatilityPath::bound() const {
  return (std::abs(params.alpha) + params.w_max) / (1.0 - std::abs(params.beta));
}

std::vector<double> z_grid(int levels, double z_max) {
  if (levels < 2) throw DomainError("z_levels must be >= 2");
  if (!(z_max > 0.0)) throw DomainError("z_max must be > 0");
  std::vector<double> z(static_cast<std::size_t>(levels));
  const int span = levels - 1;
  for (int j = 0; j < levels; ++j) {
    z[static_cast<std::size_t>(j)] = z_max * static_cast<double>(2 * j - span) / span;
  }
  return z;
}

void require_horizon(std::size_t n) {
  if (n < 1) throw DomainError("horizon n must be >= 1");
}

std::vector<double> submartingale_thetas(std::span<const double> uniforms) {
  std::vector<double> thetas(uniforms.size());
  if (uniforms.empty()) return thetas;
  thetas[0] = uniforms[0] / 2.0;
  for (std::size_t k = 1; k < uniforms.size(); ++k) {
    const int exponent = -static_cast<int>(std::min<std::size_t>(k + 1, 2000));
    thetas[k] = thetas[k - 1] + std::ldexp(uniforms[k], exponent);
  }
  return thetas;
}

MeasureSequence iid_uniform_params(std::size_t n, SeedSpec seed) {
  Stream s(seed);
  return iid_uniform_params(n, s, seed);
}

MeasureSequence exchangeable_params(std::size_t n, const Mixing& mixing, SeedSpec seed) {
  Stream s(seed);
  return exchangeable_params(n, mixing, s, seed);
}

MeasureSequence regime_switching_params(const RegimeParams& params, std::size_t n, SeedSpec seed) {
  Stream s(seed);
  return regime_switching_params(params, n, s, seed);
}

MeasureSequence submartingale_params(std::size_t n, SeedSpec seed) {
  Stream s(seed);
  return submartingale_params(n, s, seed);
}

VolatilityPath volatility_path(const VolatilityParams& params, std::size_t n, SeedSpec seed) {
  Stream s(seed);
  return volatility_path(params, n, s, seed);
}

MeasureSequence volatility_measures(const VolatilityPath& path, int z_levels, double z_max) {
  const std::vector<double> z = z_grid(z_levels, z_max);
  const std::size_t k = z.size();
  const std::size_t n = path.h.size();
  std::vector<int> labels(k);
  for (std::size_t j = 0; j < k; ++j) labels[j] = static_cast<int>(j);
  std::vector<double> weights(n * k, 1.0 / static_cast<double>(k));
  std::vector<double> positions(n * k);
  for (std::size_t t = 0; t < n; ++t) {
    const double scale = std::exp(path.h[t] / 2.0);
    for (std::size_t j = 0; j < k; ++j) positions[t * k + j] = scale * z[j];
  }
  return {Family::stochastic_volatility, path.seed, std::move(labels), std::move(weights),
          std::move(positions)};
}

MeasureSequence generate(const ProcessFamily& family, std::size_t n, SeedSpec seed) {
  return std::visit(
      [&](const auto& f) -> MeasureSequence {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, IidUniformFamily>) {
          return iid_uniform_params(n, seed);
        } else if constexpr (std::is_same_v<T, ExchangeableFamily>) {
          return exchangeable_params(n, f.mixing, seed);
        } else if constexpr (std::is_same_v<T, RegimeSwitchFamily>) {
          return regime_switching_params(f.params, n, seed);
        } else if constexpr (std::is_same_v<T, SubmartingaleFamily>) {
          return submartingale_params(n, seed);
        } else {
          return volatility_measures(volatility_path(f.params, n, seed), f.z_levels, f.z_max);
        }
      },
      family);
}

std::string describe(const ProcessFamily& family) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, IidUniformFamily>) {
          out << "iid-uniform";
        } else if constexpr (std::is_same_v<T, ExchangeableFamily>) {
          out << "exchangeable(" << to_string(f.mixing) << ")";
        } else if constexpr (std::is_same_v<T, RegimeSwitchFamily>) {
          const auto& q = f.params.q;
          out << "regime-switch(q=[[" << q(0, 0) << ',' << q(0, 1) << "],[" << q(1, 0) << ','
              << q(1, 1) << "]],mu1=" << f.params.mu_up << ",lambda1=" << f.params.lambda_up << ')';
        } else if constexpr (std::is_same_v<T, SubmartingaleFamily>) {
          out << "submartingale";
        } else {
          out << "stochvol(alpha=" << f.params.alpha << ",beta=" << f.params.beta
              << ",w_max=" << f.params.w_max << ",z_levels=" << f.z_levels
              << ",z_max=" << f.z_max << ')';
        }
      },
      family);
  return out.str();
}

}  // namespace disint
