#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "wordlen/corpus.hpp"
#include "wordlen/errors.hpp"
#include "wordlen/synth.hpp"

namespace wordlen {

std::filesystem::path default_demo_spec() { return default_data_dir() / "demo" / "demo.csv"; }

std::vector<DemoText> load_demo_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<DemoText> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::string> f;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;  // text_id,language,genre,I,alpha,tokens,types,seed
      continue;
    }
    if (!csv::split(line, f) || f.size() != 8) throw ParseError(path.string(), line_no, "expected 8 fields");
    try {
      out.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stod(f[4]), std::stoull(f[5]),
                     static_cast<std::size_t>(std::stoull(f[6])), std::stoull(f[7])});
    } catch (const std::logic_error&) {
      throw ParseError(path.string(), line_no, "malformed number");
    }
  }
  return out;
}

std::vector<ManifestEntry> write_demo_corpus(const std::vector<DemoText>& demo, const std::filesystem::path& out_dir,
                                             double lambda1_min) {
  std::filesystem::create_directories(out_dir);
  std::vector<ManifestEntry> entries;
  std::ofstream manifest(out_dir / "manifest.csv", std::ios::binary);
  if (!manifest) throw IoError("cannot write manifest in " + out_dir.string());
  manifest << "text_id,path,language,genre\n";

  for (const auto& d : demo) {
    SynthConfig cfg;
    cfg.params = params_from_invariants({d.i_lang, d.alpha}, lambda1_min);
    cfg.n_tokens = d.n_tokens;
    cfg.n_types = d.n_types;
    cfg.seed = d.seed;
    const auto spec = generate_rank_spectrum(cfg);

    const std::string file = d.text_id + ".txt";
    std::ofstream text(out_dir / file, std::ios::binary);
    if (!text) throw IoError("cannot write " + (out_dir / file).string());
    write_pseudo_corpus(text, spec);

    manifest << csv::quote(d.text_id) << ',' << csv::quote(file) << ',' << csv::quote(d.language) << ','
             << csv::quote(d.genre) << '\n';
    entries.push_back({d.text_id, out_dir / file, d.language, d.genre});
  }
  return entries;
}

}  // namespace wordlen
