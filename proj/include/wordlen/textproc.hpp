#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wordlen {

enum class ApostrophePolicy {
  split,  // apostrophe is a separator: "l'uomo" -> "l", "uomo"
  keep,   // word-internal apostrophe stays: "don't" -> "don't"
};

/// Per-language tokenization and syllable-counting rules.
///
/// Rule packs are plain key-value files, one per language:
///
///     language = de
///     version = 1
///     letters = abcdefghijklmnopqrstuvwxyzäöüß
///     vowels = aeiouäöü
///     diphthong_exceptions =
///     final_e_silent = false
///     apostrophe = split
///
/// `letters` and `vowels` are lowercase (case-folded) characters.
/// `diphthong_exceptions` is a comma-separated list of vowel sequences that
/// are counted as two nuclei when they occur inside a vowel cluster.
struct LanguageRules {
  std::string language_code;
  int version = 1;
  std::set<char32_t> letters;
  std::set<char32_t> vowels;
  std::vector<std::u32string> diphthong_exceptions;
  bool final_e_silent = false;
  ApostrophePolicy apostrophe = ApostrophePolicy::split;
  static constexpr int min_syllables = 1;

  bool is_letter(char32_t c) const { return letters.count(c) != 0; }
  bool is_vowel(char32_t c) const { return vowels.count(c) != 0; }
};

struct TokenStream {
  std::vector<std::string> tokens;  // case-folded UTF-8
  std::string source_id;
};

// Parses a rule pack; throws ParseError on malformed input or when the
// vowel set is not a subset of the letter set.
LanguageRules parse_rules(std::string_view text, const std::string& origin = "<rules>");
LanguageRules load_rules(const std::filesystem::path& path);

/// All rule packs found in one directory (`<code>.rules`).
class RuleSet {
 public:
  RuleSet() = default;

  static RuleSet load_dir(const std::filesystem::path& dir);
  // Directory from $WORDLEN_RULES_DIR, else the one bundled with the build.
  static RuleSet load_default();

  void add(LanguageRules rules);
  bool contains(const std::string& code) const { return packs_.count(code) != 0; }
  // Throws UnknownLanguage.
  const LanguageRules& at(const std::string& code) const;
  std::vector<std::string> codes() const;

 private:
  std::map<std::string, LanguageRules> packs_;
};

std::filesystem::path default_data_dir();
std::filesystem::path default_rules_dir();

// Case-folds (full Unicode folding) and NFC-normalizes UTF-8 text.
// Throws EncodingError on invalid UTF-8.
std::u32string fold_text(std::string_view utf8);

std::string to_utf8(std::u32string_view text);
std::u32string to_utf32(std::string_view utf8);

TokenStream tokenize(std::string_view text, const LanguageRules& rules,
                     std::string source_id = {});

int count_syllables(std::string_view word, const LanguageRules& rules);
int count_syllables(std::u32string_view word, const LanguageRules& rules);

}  // namespace wordlen
