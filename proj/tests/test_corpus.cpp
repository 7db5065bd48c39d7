#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "tempdir.hpp"
#include "wordlen/corpus.hpp"
#include "wordlen/errors.hpp"
#include "wordlen/synth.hpp"

using namespace wordlen;

namespace {

const RuleSet& packs() {
  static const RuleSet rules = RuleSet::load_default();
  return rules;
}

TextResult row(const std::string& id, const std::string& lang, const std::string& genre, double i, double a,
               bool unreliable = false) {
  TextResult r;
  r.text_id = id;
  r.language = lang;
  r.genre = genre;
  r.i_lang = i;
  r.alpha = a;
  r.unreliable = unreliable;
  return r;
}

void write_synthetic_text(const std::filesystem::path& path, const ModelParams& p, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.params = p;
  cfg.n_types = 2000;
  cfg.n_tokens = 200000;
  cfg.seed = seed;
  std::ofstream out(path, std::ios::binary);
  write_pseudo_corpus(out, generate_rank_spectrum(cfg));
}

}  // namespace

TEST_CASE("load_manifest: CSV") {
  TempDir dir;
  dir.write("manifest.csv",
            "text_id,path,language,genre\n"
            "a,texts/a.txt,de,letters\n"
            "b,/abs/b.txt,en,\"news, daily\"\n"
            "\n"
            "c,c.txt,it,letters\n");
  const auto m = load_manifest(dir / "manifest.csv", packs());
  REQUIRE(m.size() == 3);
  CHECK(m[0].text_id == "a");
  CHECK(m[0].path == dir.path() / "texts/a.txt");
  CHECK(m[1].path == "/abs/b.txt");
  CHECK(m[1].genre == "news, daily");
  CHECK(m[2].language == "it");
}

TEST_CASE("load_manifest: columns are matched by header name") {
  TempDir dir;
  dir.write("m.csv", "language,genre,text_id,path\nde,letters,x,x.txt\n");
  const auto m = load_manifest(dir / "m.csv", packs());
  REQUIRE(m.size() == 1);
  CHECK(m[0].text_id == "x");
  CHECK(m[0].language == "de");
}

TEST_CASE("load_manifest: JSON") {
  TempDir dir;
  dir.write("m.json",
            R"([{"text_id": "a", "path": "a.txt", "language": "de", "genre": "letters"},
                {"text_id": "b", "path": "b.txt", "language": "sv", "genre": "essay"}])");
  const auto m = load_manifest(dir / "m.json", packs());
  REQUIRE(m.size() == 2);
  CHECK(m[1].language == "sv");
  CHECK(m[1].path == dir.path() / "b.txt");
}

TEST_CASE("load_manifest: errors") {
  TempDir dir;
  dir.write("dup.csv", "text_id,path,language,genre\na,a.txt,de,x\na,b.txt,de,x\n");
  CHECK_THROWS_AS(load_manifest(dir / "dup.csv", packs()), DuplicateId);

  dir.write("xx.csv", "text_id,path,language,genre\na,a.txt,xx,x\n");
  CHECK_THROWS_AS(load_manifest(dir / "xx.csv", packs()), UnknownLanguage);

  dir.write("bad.csv", "text_id,path,language,genre\na,a.txt,de,x\nb,\"b.txt,de,x\n");
  try {
    load_manifest(dir / "bad.csv", packs());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  dir.write("header.csv", "id,file,lang\na,a.txt,de\n");
  CHECK_THROWS_AS(load_manifest(dir / "header.csv", packs()), ParseError);

  dir.write("bad.json", "[{\"text_id\": \"a\"}]");
  CHECK_THROWS_AS(load_manifest(dir / "bad.json", packs()), ParseError);

  CHECK_THROWS_AS(load_manifest(dir / "missing.csv", packs()), IoError);
}

TEST_CASE("analyze_corpus: empty manifest, missing files, order") {
  CHECK(analyze_corpus({}, packs()).empty());

  TempDir dir;
  dir.write("ok.txt", "Das ist ein kurzer Brief und der Brief ist gut.");
  dir.write("one.txt", "haben haben haben");
  const std::vector<ManifestEntry> entries = {
      {"ok", dir / "ok.txt", "de", "letters"},
      {"missing", dir / "nope.txt", "de", "letters"},
      {"flat", dir / "one.txt", "de", "letters"},
      {"ok2", dir / "ok.txt", "de", "essay"},
  };
  const auto serial = analyze_corpus(entries, packs(), {}, 1);
  REQUIRE(serial.size() == 4);
  CHECK(serial[0].ok());
  CHECK(serial[0].unreliable);
  CHECK_FALSE(serial[1].ok());
  CHECK(serial[1].text_id == "missing");
  CHECK_FALSE(serial[2].ok());
  CHECK(serial[3].ok());
  CHECK(serial[3].genre == "essay");

  const auto parallel = analyze_corpus(entries, packs(), {}, 4);
  REQUIRE(parallel.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(parallel[i].text_id == serial[i].text_id);
    CHECK(parallel[i].error == serial[i].error);
    CHECK(parallel[i].lambda1 == serial[i].lambda1);
  }
}

TEST_CASE("analyze_corpus: two synthetic corpora recover their invariants") {
  TempDir dir;
  const Invariants de_inv{0.34, 0.6};
  const Invariants it_inv{0.84, 0.6};
  write_synthetic_text(dir / "de.txt", params_from_invariants(de_inv), 1);
  write_synthetic_text(dir / "it.txt", params_from_invariants(it_inv), 2);
  const auto res = analyze_corpus({{"de", dir / "de.txt", "de", "letters"}, {"it", dir / "it.txt", "it", "letters"}},
                                  packs());
  REQUIRE(res.size() == 2);
  for (const auto& [r, inv] : {std::pair{res[0], de_inv}, std::pair{res[1], it_inv}}) {
    REQUIRE(r.ok());
    const auto p = params_from_invariants(inv);
    MESSAGE(r.text_id << ": lambda0 " << r.lambda0 << " lambda1 " << r.lambda1 << " I " << r.i_lang << " alpha "
                      << r.alpha);
    CHECK(std::fabs(r.lambda0 - p.lambda0) < 0.02);
    CHECK(std::fabs(r.lambda1 - p.lambda1) < 0.05);
    CHECK(std::fabs(r.i_lang - inv.i_lang) < 0.05);
    CHECK(std::fabs(r.alpha - inv.alpha) < 0.05);
    CHECK(r.n_tokens >= 200000);
  }
}

TEST_CASE("group_means") {
  auto g = group_means(std::vector<TextResult>{row("a", "de", "letters", 0.30, 0.5), row("b", "de", "news", 0.38, 0.7)});
  CHECK(g.language_i.at("de") == doctest::Approx(0.34).epsilon(1e-15));
  CHECK(g.genre_alpha.at("letters") == 0.5);
  CHECK(g.genre_alpha.at("news") == 0.7);
  CHECK(g.empty_languages.empty());

  g = group_means(std::vector<TextResult>{row("a", "it", "x", 0.84, 0.6)});
  CHECK(g.language_i.at("it") == 0.84);

  auto failed = row("c", "en", "letters", 9.0, 0.0);
  failed.error = "boom";
  g = group_means(std::vector<TextResult>{row("a", "sv", "letters", 0.4, 0.6, true), failed,
                                          row("b", "de", "letters", 0.3, 0.5)});
  CHECK(g.empty_languages == std::set<std::string>{"en", "sv"});
  CHECK(g.language_i.count("sv") == 0);
  CHECK(g.genre_alpha.at("letters") == 0.5);
}

TEST_CASE("property: group means do not depend on row order") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* langs[] = {"de", "en", "it"};
  const char* genres[] = {"letters", "news", "essay"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TextResult> rows;
    for (int i = 0; i < 30; ++i) rows.push_back(row(std::to_string(i), langs[gen() % 3], genres[gen() % 3], u(gen), u(gen)));
    const auto a = group_means(rows);
    std::shuffle(rows.begin(), rows.end(), gen);
    const auto b = group_means(rows);
    CHECK(a.language_i == b.language_i);
    CHECK(a.genre_alpha == b.genre_alpha);
  }
}

TEST_CASE("classify: reference anchors") {
  const auto table = ReferenceTable::defaults();
  auto c = classify(0.34, 0.6, table);
  CHECK(c.language == "de");
  CHECK(c.genre == "letters");
  CHECK(c.language_distance == 0.0);

  c = classify(0.08, 0.8, table);
  CHECK(c.language == "en");
  CHECK(c.genre == "newspaper");
  CHECK(c.genre_ties == std::vector<std::string>{"newspaper", "scientific"});
  CHECK(c.language_ties == std::vector<std::string>{"en"});

  c = classify(0.84, 0.6, table);
  CHECK(c.language == "it");
  CHECK(c.genre == "letters");

  c = classify(0.60, 0.69, table);
  CHECK(c.language == "it");
  CHECK(c.genre == "letters");
  CHECK(c.genre_distance == doctest::Approx(0.09));

  // Equidistant from de and it.
  c = classify(0.59, 0.6, table);
  CHECK(c.language == "de");
  CHECK(c.language_ties == std::vector<std::string>{"de", "it"});

  CHECK_THROWS_AS(classify(0.3, 0.6, ReferenceTable{}), EmptyTable);
  CHECK_THROWS_AS(classify(NAN, 0.6, table), DomainError);
}

TEST_CASE("reference table overrides") {
  auto t = parse_reference_table("# extra anchors\nlanguage.fr = 0.2\n\ngenre.letters=0.55\n", ReferenceTable::defaults());
  CHECK(t.language_anchors.at("fr") == 0.2);
  CHECK(t.language_anchors.at("de") == 0.34);
  CHECK(t.genre_anchors.at("letters") == 0.55);
  CHECK(classify(0.21, 0.6, t).language == "fr");

  CHECK_THROWS_AS(parse_reference_table("language.fr = -1\n", {}), ParseError);
  CHECK_THROWS_AS(parse_reference_table("genre.x = 1.5\n", {}), ParseError);
  CHECK_THROWS_AS(parse_reference_table("colour.x = 0.5\n", {}), ParseError);
  CHECK_THROWS_AS(parse_reference_table("genre.x = abc\n", {}), ParseError);
  CHECK_THROWS_AS(parse_reference_table("genre.x\n", {}), ParseError);
}

TEST_CASE("results CSV and JSON round trip") {
  auto a = row("t1", "de", "letters", 0.3412345678, 0.6);
  a.n_tokens = 1234;
  a.n_types = 321;
  a.lambda0 = 1.70524865;
  a.lambda1 = 0.98209946;
  a.chi_square = 12.5;
  a.dof = 4;
  a.clipped = true;
  auto b = row("t,2", "en", "news \"daily\"", 0, 0);
  b.error = "cannot open x.txt";
  const std::vector<TextResult> rows = {a, b};

  std::ostringstream csv_out;
  write_results(rows, csv_out, ResultFormat::csv);
  const std::string csv = csv_out.str();
  CHECK(csv.rfind("text_id,language,genre,n_tokens,n_types,lambda0,lambda1,I,alpha,chi_square,dof,clipped,unreliable,error\n", 0) == 0);
  CHECK(csv.find("t1,de,letters,1234,321,1.705249,0.982099,0.341235,0.600000,12.500000,4,true,false,\n") != std::string::npos);
  CHECK(csv.find("\"t,2\",en,\"news \"\"daily\"\"\",,,,,,,,,,,cannot open x.txt\n") != std::string::npos);

  std::ostringstream json_out;
  write_results(rows, json_out, ResultFormat::json);
  const std::string json = json_out.str();
  CHECK(json.find("\"error\":null") != std::string::npos);
  CHECK(json.find("\"lambda0\":null") != std::string::npos);

  for (const auto& text : {csv, json}) {
    const auto back = parse_results(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].text_id == "t1");
    CHECK(back[0].i_lang == 0.341235);
    CHECK(back[0].lambda0 == 1.705249);
    CHECK(back[0].clipped);
    CHECK_FALSE(back[0].unreliable);
    CHECK(back[0].dof == 4);
    CHECK(back[0].n_tokens == 1234);
    CHECK(back[1].text_id == "t,2");
    CHECK(back[1].genre == "news \"daily\"");
    CHECK(back[1].error == "cannot open x.txt");
  }

  std::ostringstream empty;
  write_results(std::vector<TextResult>{}, empty, ResultFormat::json);
  CHECK(empty.str() == "[]\n");
  CHECK(parse_results(empty.str()).empty());

  CHECK(format_from_name("json") == ResultFormat::json);
  CHECK_THROWS_AS(format_from_name("xml"), DomainError);
  CHECK_THROWS_AS(parse_results("text_id,language\n"), ParseError);
  CHECK_THROWS_AS(parse_results("[{\"text_id\": 1}]"), ParseError);
}

TEST_CASE("bundled demo spec") {
  const auto demo = load_demo_spec(default_demo_spec());
  REQUIRE(demo.size() == 10);
  std::set<std::string> letters_langs;
  int german = 0;
  for (const auto& d : demo) {
    if (d.genre == "letters") letters_langs.insert(d.language);
    if (d.language == "de") ++german;
    CHECK(packs().contains(d.language));
  }
  CHECK(letters_langs.size() == 6);
  CHECK(german == 5);

  TempDir dir;
  const std::vector<DemoText> two(demo.begin(), demo.begin() + 2);
  const auto entries = write_demo_corpus(two, dir.path());
  REQUIRE(entries.size() == 2);
  CHECK(std::filesystem::exists(dir / "manifest.csv"));
  const auto reloaded = load_manifest(dir / "manifest.csv", packs());
  REQUIRE(reloaded.size() == 2);
  CHECK(reloaded[0].path == entries[0].path);
  CHECK(std::filesystem::file_size(entries[0].path) > 0);
}
