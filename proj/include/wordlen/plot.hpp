#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordlen/corpus.hpp"

namespace wordlen {

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct PlotConfig {
  std::vector<TextResult> results;
  std::optional<std::string> ref_language;  // vertical line at the language's mean I
  std::optional<std::string> ref_genre;     // horizontal line at the genre's mean alpha
  AxisRange i_range;
  AxisRange alpha_range;
};

struct PlotOutput {
  std::string svg;
  std::vector<std::string> warnings;
};

/// Fixed SVG layout: 800x600 viewport with 60-unit margins.
struct PlotFrame {
  static constexpr double width = 800.0;
  static constexpr double height = 600.0;
  static constexpr double margin = 60.0;

  AxisRange i_range;
  AxisRange alpha_range;

  double x(double i_lang) const;
  double y(double alpha) const;
};

/// Renders texts as points alpha(I): one marker per successful result,
/// shape keyed by language, fill keyed by genre. Output bytes depend only on
/// the config. Throws EmptyResults, UnknownGroup, DomainError (bad ranges).
PlotOutput plot_plane(const PlotConfig& cfg);

}  // namespace wordlen
