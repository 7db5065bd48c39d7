#include "wordlen/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
enum class Shape { circle, square, triangle, diamond, inverted_triangle, pentagon };
constexpr std::array<Shape, 6> kShapes = {Shape::circle,  Shape::square,           Shape::triangle,
                                          Shape::diamond, Shape::inverted_triangle, Shape::pentagon};
constexpr double kMarkerRadius = 6.0;

std::string num(double v) { return fmt::format("{:.3f}", v); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string polygon_points(double cx, double cy, double r, int sides, double start_deg) {
  std::string pts;
  for (int i = 0; i < sides; ++i) {
    const double a = (start_deg + 360.0 * i / sides) * M_PI / 180.0;
    if (i) pts += ' ';
    pts += num(cx + r * std::cos(a)) + "," + num(cy - r * std::sin(a));
  }
  return pts;
}

// `attrs` carries class, fill and stroke attributes.
std::string shape_element(Shape shape, double cx, double cy, double r, const std::string& attrs) {
  switch (shape) {
    case Shape::circle:
      return fmt::format("<circle {} cx=\"{}\" cy=\"{}\" r=\"{}\"/>", attrs, num(cx), num(cy), num(r));
    case Shape::square:
      return fmt::format("<rect {} x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>", attrs, num(cx - r * 0.85),
                         num(cy - r * 0.85), num(r * 1.7), num(r * 1.7));
    case Shape::triangle:
      return fmt::format("<polygon {} points=\"{}\"/>", attrs, polygon_points(cx, cy, r, 3, 90.0));
    case Shape::diamond:
      return fmt::format("<polygon {} points=\"{}\"/>", attrs, polygon_points(cx, cy, r, 4, 90.0));
    case Shape::inverted_triangle:
      return fmt::format("<polygon {} points=\"{}\"/>", attrs, polygon_points(cx, cy, r, 3, 270.0));
    case Shape::pentagon:
      return fmt::format("<polygon {} points=\"{}\"/>", attrs, polygon_points(cx, cy, r, 5, 90.0));
  }
  return {};
}

void check_range(const AxisRange& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
    throw DomainError(std::string(name) + " axis range must be strictly increasing");
  }
}

}  // namespace

double PlotFrame::x(double i_lang) const {
  return margin + (i_lang - i_range.lo) / (i_range.hi - i_range.lo) * (width - 2 * margin);
}

double PlotFrame::y(double alpha) const {
  return height - margin - (alpha - alpha_range.lo) / (alpha_range.hi - alpha_range.lo) * (height - 2 * margin);
}

PlotOutput plot_plane(const PlotConfig& cfg) {
  check_range(cfg.i_range, "I");
  check_range(cfg.alpha_range, "alpha");

  PlotOutput out;
  std::vector<const TextResult*> points;
  for (const auto& r : cfg.results) {
    if (r.ok()) points.push_back(&r);
    else out.warnings.push_back("skipping failed text '" + r.text_id + "': " + r.error);
  }
  if (points.empty()) throw EmptyResults("no analysed texts to plot");

  const auto means = group_means(cfg.results);
  std::optional<double> ref_x, ref_y;
  if (cfg.ref_language) {
    auto it = means.language_i.find(*cfg.ref_language);
    if (it == means.language_i.end()) {
      throw UnknownGroup("reference language '" + *cfg.ref_language + "' has no reliable texts in the results");
    }
    ref_x = it->second;
  }
  if (cfg.ref_genre) {
    auto it = means.genre_alpha.find(*cfg.ref_genre);
    if (it == means.genre_alpha.end()) {
      throw UnknownGroup("reference genre '" + *cfg.ref_genre + "' has no reliable texts in the results");
    }
    ref_y = it->second;
  }

  std::map<std::string, Shape> shape_of;
  std::map<std::string, const char*> color_of;
  {
    std::set<std::string> langs, genres;
    for (const auto* p : points) {
      langs.insert(p->language);
      genres.insert(p->genre);
    }
    std::size_t i = 0;
    for (const auto& l : langs) shape_of[l] = kShapes[i++ % kShapes.size()];
    i = 0;
    for (const auto& g : genres) color_of[g] = kPalette[i++ % kPalette.size()];
  }

  const PlotFrame frame{cfg.i_range, cfg.alpha_range};
  const double left = PlotFrame::margin;
  const double right = PlotFrame::width - PlotFrame::margin;
  const double top = PlotFrame::margin;
  const double bottom = PlotFrame::height - PlotFrame::margin;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

  svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg += fmt::format("<line class=\"axis\" x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\"/>\n", num(left), num(right), num(bottom));
  svg += fmt::format("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", num(left), num(top), num(bottom));
  for (int i = 0; i <= 5; ++i) {
    const double iv = cfg.i_range.lo + (cfg.i_range.hi - cfg.i_range.lo) * i / 5.0;
    const double av = cfg.alpha_range.lo + (cfg.alpha_range.hi - cfg.alpha_range.lo) * i / 5.0;
    const double tx = frame.x(iv);
    const double ty = frame.y(av);
    svg += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", num(tx), num(bottom), num(bottom + 5));
    svg += fmt::format("<text class=\"tick-label\" stroke=\"none\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3f}</text>\n",
                       num(tx), num(bottom + 20), iv);
    svg += fmt::format("<line class=\"tick\" x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"/>\n", num(ty), num(left - 5), num(left));
    svg += fmt::format("<text class=\"tick-label\" stroke=\"none\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3f}</text>\n",
                       num(left - 8), num(ty + 4), av);
  }
  svg += fmt::format("<text class=\"axis-label\" stroke=\"none\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">I</text>\n",
                     num((left + right) / 2), num(bottom + 42));
  svg += fmt::format("<text class=\"axis-label\" stroke=\"none\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">α</text>\n",
                     num(left - 45), num((top + bottom) / 2));
  svg += "</g>\n";

  svg += "<g class=\"reference\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\">\n";
  if (ref_x) {
    double x = frame.x(*ref_x);
    if (x < left || x > right) {
      out.warnings.push_back("reference I line lies outside the axis range; drawn at the border");
      x = std::clamp(x, left, right);
    }
    svg += fmt::format("<line class=\"ref-line ref-language\" data-group=\"{}\" data-value=\"{:.6f}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                       xml_escape(*cfg.ref_language), *ref_x, num(x), num(top), num(x), num(bottom));
  }
  if (ref_y) {
    double y = frame.y(*ref_y);
    if (y < top || y > bottom) {
      out.warnings.push_back("reference alpha line lies outside the axis range; drawn at the border");
      y = std::clamp(y, top, bottom);
    }
    svg += fmt::format("<line class=\"ref-line ref-genre\" data-group=\"{}\" data-value=\"{:.6f}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                       xml_escape(*cfg.ref_genre), *ref_y, num(left), num(y), num(right), num(y));
  }
  svg += "</g>\n";

  svg += "<g class=\"points\" stroke-width=\"1.2\">\n";
  for (const auto* p : points) {
    double x = frame.x(p->i_lang);
    double y = frame.y(p->alpha);
    const bool outside = x < left || x > right || y < top || y > bottom;
    const char* color = color_of[p->genre];
    std::string attrs = fmt::format("class=\"marker\" data-text-id=\"{}\" ", xml_escape(p->text_id));
    if (outside) {
      out.warnings.push_back(fmt::format("text '{}' at (I={:.6f}, alpha={:.6f}) is outside the axis range; drawn hollow at the border",
                                         p->text_id, p->i_lang, p->alpha));
      x = std::clamp(x, left, right);
      y = std::clamp(y, top, bottom);
      attrs += fmt::format("fill=\"none\" stroke=\"{}\"", color);
    } else {
      attrs += fmt::format("fill=\"{}\" stroke=\"black\"", color);
    }
    svg += shape_element(shape_of[p->language], x, y, kMarkerRadius, attrs) + "\n";
  }
  svg += "</g>\n";

  // Legend in the top-right corner of the plot area.
  const double lx = right - 130;
  double ly = top + 16;
  const double rows = static_cast<double>(shape_of.size() + color_of.size() + 2);
  svg += "<g class=\"legend\">\n";
  svg += fmt::format("<rect class=\"legend-box\" x=\"{}\" y=\"{}\" width=\"124\" height=\"{}\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n",
                     num(lx - 6), num(top + 4), num(rows * 16 + 4));
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-weight=\"bold\">language</text>\n", num(lx), num(ly));
  for (const auto& [lang, shape] : shape_of) {
    ly += 16;
    svg += shape_element(shape, lx + 6, ly - 4, 5, "class=\"legend-marker\" fill=\"#bbbbbb\" stroke=\"black\"") + "\n";
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(lx + 18), num(ly), xml_escape(lang));
  }
  ly += 16;
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-weight=\"bold\">genre</text>\n", num(lx), num(ly));
  for (const auto& [genre, color] : color_of) {
    ly += 16;
    svg += fmt::format("<rect class=\"legend-swatch\" x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\" stroke=\"black\"/>\n",
                       num(lx + 1), num(ly - 9), color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(lx + 18), num(ly), xml_escape(genre));
  }
  svg += "</g>\n</svg>\n";

  out.svg = std::move(svg);
  return out;
}

}  // namespace wordlen
