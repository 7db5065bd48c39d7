#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include "wordlen/model.hpp"
#include "wordlen/spectrum.hpp"

namespace wordlen {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard library distributions are not, so the transforms are
/// implemented here: uniform doubles take the top 53 bits, and Poisson
/// variates use sequential inversion on chunks of mean at most 10 (sums of
/// independent Poisson variates are Poisson).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

struct SynthConfig {
  ModelParams params;
  std::uint64_t n_tokens = 10000;
  std::size_t n_types = 1000;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;
};

void validate(const SynthConfig& cfg);

// Types are named w1 .. wV by Zipf rank. Each type gets one length,
// 1 + Poisson(max(conditional_mean(t) - 1, 0)) at its block position t.
RankSpectrum generate_rank_spectrum(const SynthConfig& cfg);

LengthSpectrum sample_lengths(const ModelParams& params, std::uint64_t n, std::uint64_t seed);

// A pronounceable stand-in for type `index` (1-based) with exactly
// `syllables` vowel clusters under every bundled rule pack: a consonant code
// identifying the type, then "a", then "ta" repeated.
std::string synthetic_word(std::size_t index, int syllables);

// Writes each type's synthetic word freq times, whitespace separated.
void write_pseudo_corpus(std::ostream& out, const RankSpectrum& spec);

}  // namespace wordlen
