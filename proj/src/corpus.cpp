#include "wordlen/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "csv.hpp"
#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr double kTieTolerance = 1e-12;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '[';
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<ManifestEntry> parse_manifest_csv(const std::string& text, const std::string& origin) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  int col_id = -1, col_path = -1, col_lang = -1, col_genre = -1;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!csv::split(line, fields)) throw ParseError(origin, line_no, "unterminated quote");
    for (auto& f : fields) f = trim(f);

    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& name = fields[i];
        if (name == "text_id") col_id = static_cast<int>(i);
        else if (name == "path") col_path = static_cast<int>(i);
        else if (name == "language") col_lang = static_cast<int>(i);
        else if (name == "genre") col_genre = static_cast<int>(i);
      }
      if (col_id < 0 || col_path < 0 || col_lang < 0 || col_genre < 0) {
        throw ParseError(origin, line_no, "header must name text_id, path, language, genre");
      }
      have_header = true;
      continue;
    }

    const int needed = std::max({col_id, col_path, col_lang, col_genre});
    if (static_cast<int>(fields.size()) <= needed) throw ParseError(origin, line_no, "too few fields");
    ManifestEntry e{fields[col_id], fields[col_path], fields[col_lang], fields[col_genre]};
    if (e.text_id.empty()) throw ParseError(origin, line_no, "empty text_id");
    if (e.path.empty()) throw ParseError(origin, line_no, "empty path");
    if (e.language.empty()) throw ParseError(origin, line_no, "empty language");
    out.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(origin, line_no, "missing header");
  return out;
}

std::vector<ManifestEntry> parse_manifest_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, line_of_offset(text, e.byte), e.what());
  }
  if (!doc.is_array()) throw ParseError(origin, 1, "manifest JSON must be an array");
  std::vector<ManifestEntry> out;
  std::size_t index = 0;
  for (const auto& item : doc) {
    ++index;
    auto field = [&](const char* key) -> std::string {
      if (!item.is_object() || !item.contains(key) || !item[key].is_string()) {
        throw ParseError(origin, 1, "entry " + std::to_string(index) + ": missing string field '" + key + "'");
      }
      return item[key].get<std::string>();
    };
    ManifestEntry e{field("text_id"), field("path"), field("language"), field("genre")};
    if (e.text_id.empty()) throw ParseError(origin, 1, "entry " + std::to_string(index) + ": empty text_id");
    out.push_back(std::move(e));
  }
  return out;
}

double mean_of(std::vector<double> values) {
  // Sorted summation keeps the mean independent of input order.
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename Map>
std::pair<std::string, double> nearest(const Map& anchors, double value, std::vector<std::string>& ties) {
  std::string best;
  double best_d = INFINITY;
  for (const auto& [key, anchor] : anchors) {
    const double d = std::fabs(value - anchor);
    if (d < best_d - kTieTolerance) {
      best = key;
      best_d = d;
    }
  }
  ties.clear();
  for (const auto& [key, anchor] : anchors) {
    if (std::fabs(std::fabs(value - anchor) - best_d) <= kTieTolerance) ties.push_back(key);
  }
  return {best, best_d};
}

}  // namespace

TextResult make_text_result(const std::string& text_id, const std::string& language, const std::string& genre,
                            const FitResult& fit) {
  TextResult r;
  r.text_id = text_id;
  r.language = language;
  r.genre = genre;
  r.n_tokens = fit.n_tokens;
  r.n_types = fit.n_types;
  r.lambda0 = fit.params.lambda0;
  r.lambda1 = fit.params.lambda1;
  r.i_lang = fit.invariants.i_lang;
  r.alpha = fit.invariants.alpha;
  r.chi_square = fit.chi_square;
  r.dof = fit.dof;
  r.clipped = fit.clipped;
  r.unreliable = fit.unreliable;
  return r;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, const RuleSet& rules) {
  const std::string text = read_file(path);
  const std::string origin = path.string();
  auto entries = looks_like_json(text) ? parse_manifest_json(text, origin) : parse_manifest_csv(text, origin);

  const auto base = path.parent_path();
  std::unordered_set<std::string> seen;
  for (auto& e : entries) {
    if (!seen.insert(e.text_id).second) throw DuplicateId("duplicate text_id '" + e.text_id + "' in " + origin);
    if (!rules.contains(e.language)) {
      throw UnknownLanguage("text '" + e.text_id + "': no rule pack for language '" + e.language + "'");
    }
    if (e.path.is_relative()) e.path = base / e.path;
  }
  return entries;
}

TextResult analyze_text(const ManifestEntry& entry, const RuleSet& rules, const FitOptions& options) {
  const auto& lang = rules.at(entry.language);
  const auto stream = tokenize(read_file(entry.path), lang, entry.text_id);
  return make_text_result(entry.text_id, entry.language, entry.genre, fit_text(stream, lang, options));
}

std::vector<TextResult> analyze_corpus(const std::vector<ManifestEntry>& entries, const RuleSet& rules,
                                       const FitOptions& options, unsigned threads) {
  std::vector<TextResult> out(entries.size());
  if (entries.empty()) return out;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& e = entries[i];
      try {
        out[i] = analyze_text(e, rules, options);
      } catch (const std::exception& ex) {
        TextResult r;
        r.text_id = e.text_id;
        r.language = e.language;
        r.genre = e.genre;
        r.error = ex.what();
        out[i] = std::move(r);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, entries.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

GroupMeans group_means(std::span<const TextResult> results) {
  std::map<std::string, std::vector<double>> by_lang, by_genre;
  GroupMeans g;
  for (const auto& r : results) {
    by_lang[r.language];
    by_genre[r.genre];
    if (!r.ok() || r.unreliable) continue;
    by_lang[r.language].push_back(r.i_lang);
    by_genre[r.genre].push_back(r.alpha);
  }
  for (auto& [lang, v] : by_lang) {
    if (v.empty()) g.empty_languages.insert(lang);
    else g.language_i[lang] = mean_of(std::move(v));
  }
  for (auto& [genre, v] : by_genre) {
    if (v.empty()) g.empty_genres.insert(genre);
    else g.genre_alpha[genre] = mean_of(std::move(v));
  }
  return g;
}

ReferenceTable ReferenceTable::defaults() {
  ReferenceTable t;
  t.language_anchors = {{"en", 0.08}, {"it", 0.84}, {"de", 0.34}};
  t.genre_anchors = {{"letters", 0.6}, {"scientific", 0.8}, {"newspaper", 0.8}};
  return t;
}

ReferenceTable parse_reference_table(const std::string& text, ReferenceTable base, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(origin, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != raw.size() || !std::isfinite(value)) throw ParseError(origin, line_no, "value is not a number");

    if (key.rfind("language.", 0) == 0 && key.size() > 9) {
      if (value < 0.0) throw ParseError(origin, line_no, "language anchor I must be >= 0");
      base.language_anchors[key.substr(9)] = value;
    } else if (key.rfind("genre.", 0) == 0 && key.size() > 6) {
      if (value < 0.0 || value > 1.0) throw ParseError(origin, line_no, "genre anchor alpha must lie in [0, 1]");
      base.genre_anchors[key.substr(6)] = value;
    } else {
      throw ParseError(origin, line_no, "key must be language.<code> or genre.<label>");
    }
  }
  return base;
}

ReferenceTable load_reference_table(const std::filesystem::path& path, ReferenceTable base) {
  return parse_reference_table(read_file(path), std::move(base), path.string());
}

Classification classify(double i_lang, double alpha, const ReferenceTable& table) {
  if (table.language_anchors.empty() || table.genre_anchors.empty()) {
    throw EmptyTable("reference table needs at least one language and one genre anchor");
  }
  if (!std::isfinite(i_lang) || !std::isfinite(alpha)) throw DomainError("classify needs finite coordinates");
  Classification c;
  std::tie(c.language, c.language_distance) = nearest(table.language_anchors, i_lang, c.language_ties);
  std::tie(c.genre, c.genre_distance) = nearest(table.genre_anchors, alpha, c.genre_ties);
  return c;
}

}  // namespace wordlen
