#include <fmt/format.h>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "wordlen/corpus.hpp"
#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr std::array<const char*, 14> kColumns = {"text_id", "language", "genre",  "n_tokens", "n_types",
                                                  "lambda0", "lambda1",  "I",      "alpha",    "chi_square",
                                                  "dof",     "clipped",  "unreliable", "error"};

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }
const char* flag(bool b) { return b ? "true" : "false"; }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_csv(std::span<const TextResult> results, std::ostream& out) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const auto& r : results) {
    out << csv::quote(r.text_id) << ',' << csv::quote(r.language) << ',' << csv::quote(r.genre) << ',';
    if (r.ok()) {
      out << r.n_tokens << ',' << r.n_types << ',' << fixed6(r.lambda0) << ',' << fixed6(r.lambda1) << ','
          << fixed6(r.i_lang) << ',' << fixed6(r.alpha) << ',' << fixed6(r.chi_square) << ',' << r.dof << ','
          << flag(r.clipped) << ',' << flag(r.unreliable) << ",\n";
    } else {
      out << ",,,,,,,,,," << csv::quote(r.error) << '\n';
    }
  }
}

bool parse_flag(const std::string& s, const std::string& origin, std::size_t line) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError(origin, line, "expected true/false, got '" + s + "'");
}

double parse_double(const std::string& s, const std::string& origin, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(origin, line, "expected a number, got '" + s + "'");
  return v;
}

std::uint64_t parse_count(const std::string& s, const std::string& origin, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(origin, line, "expected an integer, got '" + s + "'");
  return v;
}

std::vector<TextResult> parse_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> f;
  std::vector<TextResult> out;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!csv::split(line, f)) throw ParseError(origin, line_no, "unterminated quote");
    if (!header) {
      // The trailing error column is optional.
      if (f.size() < kColumns.size() - 1) throw ParseError(origin, line_no, "unexpected results header");
      for (std::size_t i = 0; i < f.size() && i < kColumns.size(); ++i) {
        if (f[i] != kColumns[i]) throw ParseError(origin, line_no, "unexpected column '" + f[i] + "'");
      }
      header = true;
      continue;
    }
    if (f.size() < kColumns.size() - 1) throw ParseError(origin, line_no, "too few fields");
    TextResult r;
    r.text_id = f[0];
    r.language = f[1];
    r.genre = f[2];
    if (f.size() >= kColumns.size()) r.error = f[13];
    if (r.ok()) {
      r.n_tokens = parse_count(f[3], origin, line_no);
      r.n_types = parse_count(f[4], origin, line_no);
      r.lambda0 = parse_double(f[5], origin, line_no);
      r.lambda1 = parse_double(f[6], origin, line_no);
      r.i_lang = parse_double(f[7], origin, line_no);
      r.alpha = parse_double(f[8], origin, line_no);
      r.chi_square = parse_double(f[9], origin, line_no);
      r.dof = static_cast<int>(parse_count(f[10], origin, line_no));
      r.clipped = parse_flag(f[11], origin, line_no);
      r.unreliable = parse_flag(f[12], origin, line_no);
    }
    out.push_back(std::move(r));
  }
  if (!header) throw ParseError(origin, line_no, "missing results header");
  return out;
}

std::vector<TextResult> parse_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, 1, e.what());
  }
  if (!doc.is_array()) throw ParseError(origin, 1, "results JSON must be an array");
  std::vector<TextResult> out;
  try {
    for (const auto& o : doc) {
      TextResult r;
      r.text_id = o.at("text_id").get<std::string>();
      r.language = o.at("language").get<std::string>();
      r.genre = o.at("genre").get<std::string>();
      if (o.contains("error") && o["error"].is_string()) r.error = o["error"].get<std::string>();
      if (r.ok()) {
        r.n_tokens = o.at("n_tokens").get<std::uint64_t>();
        r.n_types = o.at("n_types").get<std::size_t>();
        r.lambda0 = o.at("lambda0").get<double>();
        r.lambda1 = o.at("lambda1").get<double>();
        r.i_lang = o.at("I").get<double>();
        r.alpha = o.at("alpha").get<double>();
        r.chi_square = o.at("chi_square").get<double>();
        r.dof = o.at("dof").get<int>();
        r.clipped = o.at("clipped").get<bool>();
        r.unreliable = o.at("unreliable").get<bool>();
      }
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin, 1, e.what());
  }
  return out;
}

}  // namespace

std::string result_to_json(const TextResult& r) {
  std::string s = "{\"text_id\":" + json_string(r.text_id) + ",\"language\":" + json_string(r.language) +
                  ",\"genre\":" + json_string(r.genre);
  if (r.ok()) {
    s += fmt::format(
        ",\"n_tokens\":{},\"n_types\":{},\"lambda0\":{},\"lambda1\":{},\"I\":{},\"alpha\":{},\"chi_square\":{},"
        "\"dof\":{},\"clipped\":{},\"unreliable\":{},\"error\":null}}",
        r.n_tokens, r.n_types, fixed6(r.lambda0), fixed6(r.lambda1), fixed6(r.i_lang), fixed6(r.alpha),
        fixed6(r.chi_square), r.dof, flag(r.clipped), flag(r.unreliable));
  } else {
    s += ",\"n_tokens\":null,\"n_types\":null,\"lambda0\":null,\"lambda1\":null,\"I\":null,\"alpha\":null,"
         "\"chi_square\":null,\"dof\":null,\"clipped\":null,\"unreliable\":null,\"error\":" +
         json_string(r.error) + "}";
  }
  return s;
}

ResultFormat format_from_name(const std::string& name) {
  if (name == "csv") return ResultFormat::csv;
  if (name == "json") return ResultFormat::json;
  throw DomainError("unknown results format '" + name + "' (expected csv or json)");
}

void write_results(std::span<const TextResult> results, std::ostream& out, ResultFormat format) {
  if (format == ResultFormat::csv) {
    write_csv(results, out);
    return;
  }
  out << '[';
  for (std::size_t i = 0; i < results.size(); ++i) out << (i ? ",\n " : "\n ") << result_to_json(results[i]);
  out << (results.empty() ? "]\n" : "\n]\n");
}

void write_results(std::span<const TextResult> results, const std::filesystem::path& path, ResultFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_results(results, out, format);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<TextResult> parse_results(const std::string& text, const std::string& origin) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '[') return parse_json(text, origin);
  return parse_csv(text, origin);
}

std::vector<TextResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_results(buf.str(), path.string());
}

}  // namespace wordlen
