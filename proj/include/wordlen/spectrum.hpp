#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wordlen/textproc.hpp"

namespace wordlen {

struct RankEntry {
  std::string word_type;
  std::uint64_t freq = 0;
  int length = 0;  // syllables
  double t = 0.0;  // coverage position, token-mass midpoint of the frequency block
};

/// Word types in descending frequency order (ties by word_type).
struct RankSpectrum {
  std::vector<RankEntry> entries;
  std::uint64_t total_tokens = 0;
  std::size_t total_types = 0;
};

struct LengthSpectrum {
  std::map<int, std::uint64_t> counts;  // syllable length -> tokens
  std::uint64_t total_tokens = 0;
};

/// Maximal run of equal-frequency entries. `length_mass` is the exact
/// integer sum of freq * length over the run.
struct FrequencyBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint64_t freq = 0;
  std::uint64_t tokens = 0;
  std::uint64_t length_mass = 0;
  double t = 0.0;
};

struct TypeCount {
  std::string word_type;
  std::uint64_t freq = 0;
  int length = 0;
};

// Sorts by (freq desc, word_type asc) and assigns block coverage positions.
// Throws EmptyText when there are no tokens, DomainError on freq or length < 1.
RankSpectrum make_rank_spectrum(std::vector<TypeCount> types);

RankSpectrum build_rank_spectrum(const TokenStream& stream, const LanguageRules& rules);

std::vector<FrequencyBlock> frequency_blocks(const RankSpectrum& spec);

LengthSpectrum length_spectrum(const RankSpectrum& spec);

// Columns: rank,word_type,freq,length,t
void write_rank_spectrum_csv(std::ostream& out, const RankSpectrum& spec);

}  // namespace wordlen
