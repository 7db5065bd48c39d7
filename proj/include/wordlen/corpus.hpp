#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wordlen/estimate.hpp"
#include "wordlen/textproc.hpp"

namespace wordlen {

struct ManifestEntry {
  std::string text_id;
  std::filesystem::path path;  // resolved against the manifest's directory
  std::string language;
  std::string genre;
};

/// One analysed text. Failed analyses keep their identity fields and carry
/// a non-empty `error`; their numeric fields are meaningless.
struct TextResult {
  std::string text_id;
  std::string language;
  std::string genre;
  std::uint64_t n_tokens = 0;
  std::size_t n_types = 0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double i_lang = 0.0;
  double alpha = 0.0;
  double chi_square = 0.0;
  int dof = 0;
  bool clipped = false;
  bool unreliable = false;
  std::string error;

  bool ok() const { return error.empty(); }
};

TextResult make_text_result(const std::string& text_id, const std::string& language,
                            const std::string& genre, const FitResult& fit);

/// CSV with header `text_id,path,language,genre`, or a JSON array of objects
/// with the same keys. Throws ParseError, DuplicateId, UnknownLanguage.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, const RuleSet& rules);

TextResult analyze_text(const ManifestEntry& entry, const RuleSet& rules, const FitOptions& options);

/// Analyses every entry; output follows manifest order for any thread count.
/// Per-entry failures become error rows. threads = 0 uses the hardware count.
std::vector<TextResult> analyze_corpus(const std::vector<ManifestEntry>& entries, const RuleSet& rules,
                                       const FitOptions& options = {}, unsigned threads = 0);

/// Unweighted means over rows that are neither errors nor unreliable.
/// Groups present in the input with no eligible row are listed as empty.
struct GroupMeans {
  std::map<std::string, double> language_i;
  std::map<std::string, double> genre_alpha;
  std::set<std::string> empty_languages;
  std::set<std::string> empty_genres;
};

GroupMeans group_means(std::span<const TextResult> results);

struct ReferenceTable {
  std::map<std::string, double> language_anchors;
  std::map<std::string, double> genre_anchors;

  static ReferenceTable defaults();
};

// Applies `language.<code> = I` / `genre.<label> = alpha` lines on top of base.
ReferenceTable load_reference_table(const std::filesystem::path& path, ReferenceTable base = ReferenceTable::defaults());
ReferenceTable parse_reference_table(const std::string& text, ReferenceTable base,
                                     const std::string& origin = "<table>");

struct Classification {
  std::string language;
  std::string genre;
  double language_distance = 0.0;
  double genre_distance = 0.0;
  std::vector<std::string> language_ties;  // every anchor at the minimal distance, sorted
  std::vector<std::string> genre_ties;
};

// Nearest vertical line (language) and horizontal line (genre); ties go to
// the lexicographically first key. Throws EmptyTable.
Classification classify(double i_lang, double alpha, const ReferenceTable& table);

enum class ResultFormat { csv, json };

ResultFormat format_from_name(const std::string& name);

// Columns: text_id,language,genre,n_tokens,n_types,lambda0,lambda1,I,alpha,
// chi_square,dof,clipped,unreliable,error. Floats use 6 decimals.
void write_results(std::span<const TextResult> results, std::ostream& out, ResultFormat format);
void write_results(std::span<const TextResult> results, const std::filesystem::path& path, ResultFormat format);
std::string result_to_json(const TextResult& r);

// Format is detected from the content (leading '[' means JSON).
std::vector<TextResult> read_results(const std::filesystem::path& path);
std::vector<TextResult> parse_results(const std::string& text, const std::string& origin = "<results>");

/// The bundled demo corpus: one row per synthetic text with target (I, alpha).
struct DemoText {
  std::string text_id;
  std::string language;
  std::string genre;
  double i_lang = 0.0;
  double alpha = 0.0;
  std::uint64_t n_tokens = 0;
  std::size_t n_types = 0;
  std::uint64_t seed = 0;
};

std::vector<DemoText> load_demo_spec(const std::filesystem::path& path);
std::filesystem::path default_demo_spec();

// Generates one pseudo-corpus file per demo row plus `manifest.csv` in
// out_dir, and returns the manifest entries.
std::vector<ManifestEntry> write_demo_corpus(const std::vector<DemoText>& demo, const std::filesystem::path& out_dir,
                                             double lambda1_min = kDefaultLambda1Min);

}  // namespace wordlen
