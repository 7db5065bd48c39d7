#include "wordlen/cli.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "wordlen/corpus.hpp"
#include "wordlen/errors.hpp"
#include "wordlen/estimate.hpp"
#include "wordlen/plot.hpp"
#include "wordlen/synth.hpp"
#include "wordlen/textproc.hpp"

namespace wordlen {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `path`, or to `out` when path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  fn(file);
  file.flush();
  if (!file) throw IoError("write failed for " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word-length mixture model: fit texts, compute the language (I) and genre (alpha) invariants"};
  app.name("wordlen");
  app.require_subcommand(1);
  app.fallthrough();

  double lambda1_min = kDefaultLambda1Min;
  std::string rules_dir;
  app.add_option("--lambda1-min", lambda1_min, "Lower bound of lambda1 (model constant)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--rules-dir", rules_dir, "Directory of <code>.rules language packs");

  // analyze
  std::string analyze_file, analyze_lang, analyze_genre = "unspecified";
  auto* analyze = app.add_subcommand("analyze", "Fit one text and print its result as JSON");
  analyze->add_option("file", analyze_file, "UTF-8 text file")->required();
  analyze->add_option("--lang", analyze_lang, "Language code of a rule pack")->required();
  analyze->add_option("--genre", analyze_genre, "Genre label")->capture_default_str();

  // batch
  std::string batch_manifest, batch_out, batch_format = "csv";
  unsigned batch_threads = 0;
  auto* batch = app.add_subcommand("batch", "Analyse every text of a manifest");
  batch->add_option("manifest", batch_manifest, "Manifest CSV or JSON")->required();
  batch->add_option("--out", batch_out, "Results file")->required();
  batch->add_option("--format", batch_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  batch->add_option("--threads", batch_threads, "Worker threads (0 = all cores)");

  // classify
  double cls_i = 0.0, cls_alpha = 0.0;
  std::string cls_table;
  auto* cls = app.add_subcommand("classify", "Nearest language and genre anchors for a point (I, alpha)");
  cls->add_option("--i", cls_i, "Language invariant I")->required();
  cls->add_option("--alpha", cls_alpha, "Genre invariant alpha")->required();
  cls->add_option("--table", cls_table, "Reference table overrides (language.<code> = I, genre.<label> = alpha)");

  // generate
  double gen_l0 = 0.0, gen_l1 = 0.0, gen_zipf = 1.0;
  std::uint64_t gen_tokens = 0, gen_seed = 0;
  std::size_t gen_types = 0;
  std::string gen_format = "csv", gen_out;
  auto* gen = app.add_subcommand("generate", "Synthetic rank spectrum (CSV) or pseudo-corpus (text)");
  gen->add_option("--lambda0", gen_l0, "Mean length")->required();
  gen->add_option("--lambda1", gen_l1, "Head length")->required();
  gen->add_option("--tokens", gen_tokens, "Number of tokens")->required();
  gen->add_option("--types", gen_types, "Number of types")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--zipf", gen_zipf, "Zipf exponent of the frequency law")->capture_default_str();
  gen->add_option("--format", gen_format, "csv or text")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default: standard output)");

  // syllables
  std::string syl_word, syl_lang;
  auto* syl = app.add_subcommand("syllables", "Syllable count of a word");
  syl->add_option("word", syl_word, "Word")->required();
  syl->add_option("--lang", syl_lang, "Language code")->required();

  // spectrum
  std::string spec_file, spec_lang, spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "Rank spectrum of a text as CSV");
  spectrum->add_option("file", spec_file, "UTF-8 text file")->required();
  spectrum->add_option("--lang", spec_lang, "Language code")->required();
  spectrum->add_option("--out", spec_out, "Output file (default: standard output)");

  // plot
  std::string plot_results, plot_out, plot_ref_lang, plot_ref_genre;
  std::vector<double> plot_i_range{0.0, 1.0}, plot_alpha_range{0.0, 1.0};
  auto* plot = app.add_subcommand("plot", "Render results in the I-alpha plane as SVG");
  plot->add_option("results", plot_results, "Results CSV or JSON")->required();
  plot->add_option("--out", plot_out, "SVG file")->required();
  plot->add_option("--ref-lang", plot_ref_lang, "Draw the vertical line at this language's mean I");
  plot->add_option("--ref-genre", plot_ref_genre, "Draw the horizontal line at this genre's mean alpha");
  plot->add_option("--i-range", plot_i_range, "I axis range: lo hi")->expected(2);
  plot->add_option("--alpha-range", plot_alpha_range, "alpha axis range: lo hi")->expected(2);

  // demo
  std::string demo_dir, demo_spec;
  auto* demo = app.add_subcommand("demo", "Write the bundled synthetic demo corpus and its manifest");
  demo->add_option("dir", demo_dir, "Output directory")->required();
  demo->add_option("--spec", demo_spec, "Demo definition CSV (default: bundled)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << app.get_name() << ": " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    auto load_rules = [&] { return rules_dir.empty() ? RuleSet::load_default() : RuleSet::load_dir(rules_dir); };
    FitOptions options;
    options.lambda1_min = lambda1_min;

    if (*analyze) {
      const auto rules = load_rules();
      const auto& lang = rules.at(analyze_lang);
      const std::string id = std::filesystem::path(analyze_file).stem().string();
      const auto fit = fit_text(tokenize(read_text(analyze_file), lang, id), lang, options);
      if (fit.unreliable) err << "warning: fewer than " << options.min_reliable_tokens << " tokens; estimates are unreliable\n";
      out << result_to_json(make_text_result(id, analyze_lang, analyze_genre, fit)) << '\n';
    } else if (*batch) {
      const auto rules = load_rules();
      const auto entries = load_manifest(batch_manifest, rules);
      const auto results = analyze_corpus(entries, rules, options, batch_threads);
      write_results(results, std::filesystem::path(batch_out), format_from_name(batch_format));
      std::size_t failed = 0;
      for (const auto& r : results) {
        if (!r.ok()) {
          ++failed;
          err << "error: " << r.text_id << ": " << r.error << '\n';
        }
      }
      err << fmt::format("analysed {} texts ({} failed) -> {}\n", results.size(), failed, batch_out);
    } else if (*cls) {
      auto table = cls_table.empty() ? ReferenceTable::defaults() : load_reference_table(cls_table);
      const auto c = classify(cls_i, cls_alpha, table);
      out << c.language << ' ' << c.genre << '\n';
      out << fmt::format("distance_I {:.6f}\ndistance_alpha {:.6f}\n", c.language_distance, c.genre_distance);
      auto ties = [&](const char* label, const std::vector<std::string>& keys) {
        if (keys.size() < 2) return;
        out << label;
        for (const auto& k : keys) out << ' ' << k;
        out << '\n';
      };
      ties("tie_language", c.language_ties);
      ties("tie_genre", c.genre_ties);
    } else if (*gen) {
      SynthConfig cfg;
      cfg.params = {gen_l0, gen_l1, lambda1_min};
      cfg.n_tokens = gen_tokens;
      cfg.n_types = gen_types;
      cfg.zipf_exponent = gen_zipf;
      cfg.seed = gen_seed;
      const auto spec = generate_rank_spectrum(cfg);
      emit(gen_out, out, [&](std::ostream& o) {
        if (gen_format == "csv") write_rank_spectrum_csv(o, spec);
        else write_pseudo_corpus(o, spec);
      });
    } else if (*syl) {
      const auto rules = load_rules();
      const auto& lang = rules.at(syl_lang);
      const auto stream = tokenize(syl_word, lang);
      if (stream.tokens.empty()) throw DomainError("'" + syl_word + "' contains no letters of language " + syl_lang);
      if (stream.tokens.size() == 1) {
        out << count_syllables(stream.tokens.front(), lang) << '\n';
      } else {
        for (const auto& t : stream.tokens) out << t << ' ' << count_syllables(t, lang) << '\n';
      }
    } else if (*spectrum) {
      const auto rules = load_rules();
      const auto& lang = rules.at(spec_lang);
      const auto spec = build_rank_spectrum(tokenize(read_text(spec_file), lang, spec_file), lang);
      emit(spec_out, out, [&](std::ostream& o) { write_rank_spectrum_csv(o, spec); });
    } else if (*plot) {
      PlotConfig pc;
      pc.results = read_results(plot_results);
      if (!plot_ref_lang.empty()) pc.ref_language = plot_ref_lang;
      if (!plot_ref_genre.empty()) pc.ref_genre = plot_ref_genre;
      pc.i_range = {plot_i_range[0], plot_i_range[1]};
      pc.alpha_range = {plot_alpha_range[0], plot_alpha_range[1]};
      const auto rendered = plot_plane(pc);
      for (const auto& w : rendered.warnings) err << "warning: " << w << '\n';
      emit(plot_out, out, [&](std::ostream& o) { o << rendered.svg; });
    } else if (*demo) {
      const auto spec = load_demo_spec(demo_spec.empty() ? default_demo_spec() : std::filesystem::path(demo_spec));
      const auto entries = write_demo_corpus(spec, demo_dir, lambda1_min);
      err << fmt::format("wrote {} texts and manifest.csv to {}\n", entries.size(), demo_dir);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace wordlen
