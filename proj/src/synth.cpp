#include "wordlen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string_view>
#include <vector>

#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr double kPoissonChunk = 10.0;

std::uint64_t poisson_inversion(double mean, double u) {
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0) break;
  }
  return k;
}

// Largest-remainder apportionment of n over weights r^-s, each count >= 1.
std::vector<std::uint64_t> zipf_frequencies(std::uint64_t n, std::size_t v, double s) {
  std::vector<double> quota(v);
  for (std::size_t r = 0; r < v; ++r) quota[r] = std::pow(static_cast<double>(r + 1), -s);
  const double total = std::accumulate(quota.begin(), quota.end(), 0.0);
  for (auto& q : quota) q *= static_cast<double>(n) / total;

  std::vector<std::uint64_t> freq(v);
  std::uint64_t assigned = 0;
  std::vector<std::size_t> eligible;
  for (std::size_t r = 0; r < v; ++r) {
    const auto f = static_cast<std::uint64_t>(std::floor(quota[r]));
    if (f == 0) {
      freq[r] = 1;
    } else {
      freq[r] = f;
      eligible.push_back(r);
    }
    assigned += freq[r];
  }
  if (assigned < n) {
    std::stable_sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
      return quota[a] - std::floor(quota[a]) > quota[b] - std::floor(quota[b]);
    });
    const auto extra = std::min<std::uint64_t>(n - assigned, eligible.size());
    for (std::uint64_t i = 0; i < extra; ++i) ++freq[eligible[i]];
  }
  return freq;
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, kPoissonChunk);
    total += poisson_inversion(chunk, uniform());
    mean -= chunk;
  }
  return total;
}

void validate(const SynthConfig& cfg) {
  validate(cfg.params);
  if (cfg.n_types < 2) throw DomainError("n_types must be >= 2");
  if (cfg.n_tokens < cfg.n_types) throw DomainError("n_tokens must be >= n_types");
  if (!(cfg.zipf_exponent > 0.0) || !std::isfinite(cfg.zipf_exponent)) throw DomainError("zipf_exponent must be > 0");
}

RankSpectrum generate_rank_spectrum(const SynthConfig& cfg) {
  validate(cfg);
  const auto freq = zipf_frequencies(cfg.n_tokens, cfg.n_types, cfg.zipf_exponent);

  std::vector<TypeCount> types;
  types.reserve(freq.size());
  for (std::size_t r = 0; r < freq.size(); ++r) types.push_back({"w" + std::to_string(r + 1), freq[r], 1});
  RankSpectrum spec = make_rank_spectrum(std::move(types));

  Rng rng(cfg.seed);
  for (auto& e : spec.entries) {
    const double m = std::max(conditional_mean(e.t, cfg.params) - 1.0, 0.0);
    e.length = 1 + static_cast<int>(rng.poisson(m));
  }
  return spec;
}

LengthSpectrum sample_lengths(const ModelParams& params, std::uint64_t n, std::uint64_t seed) {
  validate(params);
  if (n < 1) throw DomainError("sample size must be >= 1");
  Rng rng(seed);
  LengthSpectrum out;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double m = std::max(conditional_mean(u, params) - 1.0, 0.0);
    ++out.counts[1 + static_cast<int>(rng.poisson(m))];
  }
  out.total_tokens = n;
  return out;
}

std::string synthetic_word(std::size_t index, int syllables) {
  static constexpr std::string_view consonants = "bcdfghjklmnpqrstvwxz";
  if (index < 1) throw DomainError("type index must be >= 1");
  if (syllables < 1) throw DomainError("syllable count must be >= 1");
  // Bijective base-20 numeral over consonants.
  std::string code;
  for (std::size_t i = index; i > 0; i = (i - 1) / consonants.size()) {
    code.push_back(consonants[(i - 1) % consonants.size()]);
  }
  std::reverse(code.begin(), code.end());
  code += 'a';
  for (int s = 1; s < syllables; ++s) code += "ta";
  return code;
}

void write_pseudo_corpus(std::ostream& out, const RankSpectrum& spec) {
  std::size_t on_line = 0;
  for (std::size_t r = 0; r < spec.entries.size(); ++r) {
    const auto word = synthetic_word(r + 1, spec.entries[r].length);
    for (std::uint64_t i = 0; i < spec.entries[r].freq; ++i) {
      out << word;
      if (++on_line == 16) {
        out << '\n';
        on_line = 0;
      } else {
        out << ' ';
      }
    }
  }
  if (on_line != 0) out << '\n';
}

}  // namespace wordlen
