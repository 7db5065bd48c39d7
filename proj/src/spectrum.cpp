#include "wordlen/spectrum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <unordered_map>

#include "csv.hpp"
#include "wordlen/errors.hpp"

namespace wordlen {

RankSpectrum make_rank_spectrum(std::vector<TypeCount> types) {
  RankSpectrum spec;
  for (const auto& tc : types) {
    if (tc.freq < 1) throw DomainError("type '" + tc.word_type + "' has zero frequency");
    if (tc.length < 1) throw DomainError("type '" + tc.word_type + "' has length < 1");
    spec.total_tokens += tc.freq;
  }
  if (spec.total_tokens == 0) throw EmptyText();

  std::sort(types.begin(), types.end(), [](const TypeCount& a, const TypeCount& b) {
    if (a.freq != b.freq) return a.freq > b.freq;
    return a.word_type < b.word_type;
  });

  spec.entries.reserve(types.size());
  for (auto& tc : types) spec.entries.push_back({std::move(tc.word_type), tc.freq, tc.length, 0.0});
  spec.total_types = spec.entries.size();

  // t = (F_before + F_block / 2) / N, computed as one integer ratio so that
  // scaling every frequency by the same factor reproduces t bit for bit.
  const double denom = 2.0 * static_cast<double>(spec.total_tokens);
  std::uint64_t before = 0;
  std::size_t i = 0;
  while (i < spec.entries.size()) {
    std::size_t j = i;
    std::uint64_t block = 0;
    while (j < spec.entries.size() && spec.entries[j].freq == spec.entries[i].freq) {
      block += spec.entries[j].freq;
      ++j;
    }
    const double t = static_cast<double>(2 * before + block) / denom;
    for (std::size_t k = i; k < j; ++k) spec.entries[k].t = t;
    before += block;
    i = j;
  }
  return spec;
}

RankSpectrum build_rank_spectrum(const TokenStream& stream, const LanguageRules& rules) {
  if (stream.tokens.empty()) throw EmptyText();
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& tok : stream.tokens) ++counts[tok];

  std::vector<TypeCount> types;
  types.reserve(counts.size());
  for (auto& [word, freq] : counts) types.push_back({word, freq, count_syllables(word, rules)});
  return make_rank_spectrum(std::move(types));
}

std::vector<FrequencyBlock> frequency_blocks(const RankSpectrum& spec) {
  std::vector<FrequencyBlock> blocks;
  const auto& e = spec.entries;
  std::size_t i = 0;
  while (i < e.size()) {
    FrequencyBlock b;
    b.begin = i;
    b.freq = e[i].freq;
    b.t = e[i].t;
    std::size_t j = i;
    while (j < e.size() && e[j].freq == b.freq && e[j].t == b.t) {
      b.tokens += e[j].freq;
      b.length_mass += e[j].freq * static_cast<std::uint64_t>(e[j].length);
      ++j;
    }
    b.end = j;
    blocks.push_back(b);
    i = j;
  }
  return blocks;
}

LengthSpectrum length_spectrum(const RankSpectrum& spec) {
  LengthSpectrum out;
  for (const auto& e : spec.entries) {
    out.counts[e.length] += e.freq;
    out.total_tokens += e.freq;
  }
  return out;
}

void write_rank_spectrum_csv(std::ostream& out, const RankSpectrum& spec) {
  out << "rank,word_type,freq,length,t\n";
  std::size_t rank = 0;
  for (const auto& e : spec.entries) {
    out << fmt::format("{},{},{},{},{:.6f}\n", ++rank, csv::quote(e.word_type), e.freq, e.length, e.t);
  }
}

}  // namespace wordlen
