#include "wordlen/textproc.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr char32_t kApostrophe = U'\'';
constexpr char32_t kRightQuote = U'’';

bool is_apostrophe(char32_t c) { return c == kApostrophe || c == kRightQuote; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void validate_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw EncodingError("invalid UTF-8 sequence at byte " + std::to_string(at));
    }
  }
}

std::set<char32_t> char_set(std::string_view value) {
  std::set<char32_t> out;
  for (char32_t c : fold_text(value)) {
    if (c != U' ' && c != U'\t') out.insert(c);
  }
  return out;
}

// Extra nuclei contributed by diphthong exceptions inside one vowel cluster.
int exception_splits(std::u32string_view cluster, const LanguageRules& rules) {
  int splits = 0;
  std::size_t pos = 0;
  while (pos < cluster.size()) {
    bool matched = false;
    for (const auto& exc : rules.diphthong_exceptions) {
      if (cluster.substr(pos, exc.size()) == exc) {
        ++splits;
        pos += exc.size() - 1;  // the last vowel may open the next split
        matched = true;
        break;
      }
    }
    if (!matched) ++pos;
  }
  return splits;
}

}  // namespace

std::u32string fold_text(std::string_view utf8) {
  validate_utf8(utf8);
  auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  text.foldCase(U_FOLD_CASE_DEFAULT);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString normalized = nfc->normalize(text, status);
  if (U_FAILURE(status)) throw EncodingError("normalization failed");

  std::u32string out(static_cast<std::size_t>(normalized.countChar32()), U'\0');
  status = U_ZERO_ERROR;
  normalized.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()), status);
  if (U_FAILURE(status)) throw EncodingError("UTF-32 conversion failed");
  return out;
}

std::string to_utf8(std::u32string_view text) {
  auto u = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                         static_cast<int32_t>(text.size()));
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::u32string to_utf32(std::string_view utf8) {
  validate_utf8(utf8);
  auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  std::u32string out(static_cast<std::size_t>(u.countChar32()), U'\0');
  UErrorCode status = U_ZERO_ERROR;
  u.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()), status);
  return out;
}

LanguageRules parse_rules(std::string_view text, const std::string& origin) {
  LanguageRules rules;
  bool have_language = false, have_letters = false, have_vowels = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(origin, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));

    if (key == "language") {
      rules.language_code = std::string(value);
      have_language = !value.empty();
    } else if (key == "version") {
      try {
        rules.version = std::stoi(std::string(value));
      } catch (const std::exception&) {
        throw ParseError(origin, line_no, "version must be an integer");
      }
    } else if (key == "letters") {
      rules.letters = char_set(value);
      have_letters = true;
    } else if (key == "vowels") {
      rules.vowels = char_set(value);
      have_vowels = true;
    } else if (key == "diphthong_exceptions") {
      rules.diphthong_exceptions.clear();
      std::size_t p = 0;
      while (p <= value.size()) {
        auto comma = value.find(',', p);
        if (comma == std::string_view::npos) comma = value.size();
        const auto item = trim(value.substr(p, comma - p));
        if (!item.empty()) {
          auto seq = fold_text(item);
          if (seq.size() < 2) throw ParseError(origin, line_no, "diphthong exception needs two vowels");
          rules.diphthong_exceptions.push_back(std::move(seq));
        }
        p = comma + 1;
      }
    } else if (key == "final_e_silent") {
      if (value == "true") rules.final_e_silent = true;
      else if (value == "false") rules.final_e_silent = false;
      else throw ParseError(origin, line_no, "final_e_silent must be true or false");
    } else if (key == "apostrophe") {
      if (value == "split") rules.apostrophe = ApostrophePolicy::split;
      else if (value == "keep") rules.apostrophe = ApostrophePolicy::keep;
      else throw ParseError(origin, line_no, "apostrophe must be split or keep");
    } else {
      throw ParseError(origin, line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_language) throw ParseError(origin, line_no, "missing 'language'");
  if (!have_letters || rules.letters.empty()) throw ParseError(origin, line_no, "missing 'letters'");
  if (!have_vowels || rules.vowels.empty()) throw ParseError(origin, line_no, "missing 'vowels'");
  for (char32_t v : rules.vowels) {
    if (!rules.is_letter(v)) throw ParseError(origin, line_no, "vowel '" + to_utf8(std::u32string(1, v)) + "' is not a letter");
  }
  for (const auto& exc : rules.diphthong_exceptions) {
    for (char32_t v : exc) {
      if (!rules.is_vowel(v)) throw ParseError(origin, line_no, "diphthong exception contains a non-vowel");
    }
  }
  return rules;
}

LanguageRules load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rule pack " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str(), path.string());
}

RuleSet RuleSet::load_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("rules directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rules") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  RuleSet set;
  for (const auto& f : files) set.add(load_rules(f));
  return set;
}

RuleSet RuleSet::load_default() { return load_dir(default_rules_dir()); }

void RuleSet::add(LanguageRules rules) {
  auto code = rules.language_code;
  packs_.insert_or_assign(std::move(code), std::move(rules));
}

const LanguageRules& RuleSet::at(const std::string& code) const {
  auto it = packs_.find(code);
  if (it == packs_.end()) throw UnknownLanguage("no rule pack for language '" + code + "'");
  return it->second;
}

std::vector<std::string> RuleSet::codes() const {
  std::vector<std::string> out;
  for (const auto& [code, _] : packs_) out.push_back(code);
  return out;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("WORDLEN_DATA_DIR"); env && *env) return env;
  return WORDLEN_DATA_DIR;
}

std::filesystem::path default_rules_dir() {
  if (const char* env = std::getenv("WORDLEN_RULES_DIR"); env && *env) return env;
  return default_data_dir() / "lang";
}

TokenStream tokenize(std::string_view text, const LanguageRules& rules, std::string source_id) {
  TokenStream stream;
  stream.source_id = std::move(source_id);
  const std::u32string folded = fold_text(text);

  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) {
      stream.tokens.push_back(to_utf8(current));
      current.clear();
    }
  };

  for (std::size_t i = 0; i < folded.size(); ++i) {
    const char32_t c = folded[i];
    if (rules.is_letter(c)) {
      current.push_back(c);
    } else if (rules.apostrophe == ApostrophePolicy::keep && is_apostrophe(c) && !current.empty() &&
               i + 1 < folded.size() && rules.is_letter(folded[i + 1])) {
      current.push_back(kApostrophe);
    } else {
      flush();
    }
  }
  flush();
  return stream;
}

int count_syllables(std::u32string_view word, const LanguageRules& rules) {
  int count = 0;
  std::size_t last_cluster_start = std::u32string_view::npos;
  std::size_t last_cluster_len = 0;

  std::size_t i = 0;
  while (i < word.size()) {
    if (!rules.is_vowel(word[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < word.size() && rules.is_vowel(word[j])) ++j;
    count += 1 + exception_splits(word.substr(i, j - i), rules);
    last_cluster_start = i;
    last_cluster_len = j - i;
    i = j;
  }

  // A lone final "e" after a consonant is not a nucleus ("made").
  if (rules.final_e_silent && count > 1 && last_cluster_len == 1 &&
      last_cluster_start == word.size() - 1 && word.back() == U'e') {
    --count;
  }
  return std::max(count, LanguageRules::min_syllables);
}

int count_syllables(std::string_view word, const LanguageRules& rules) {
  return count_syllables(std::u32string_view(to_utf32(word)), rules);
}

}  // namespace wordlen
