#pragma once

#include <cstddef>
#include <cstdint>

#include "wordlen/model.hpp"
#include "wordlen/spectrum.hpp"
#include "wordlen/textproc.hpp"

namespace wordlen {

struct FitOptions {
  double lambda1_min = kDefaultLambda1Min;
  double min_expected = 5.0;                 // chi-square bin merge threshold
  std::uint64_t min_reliable_tokens = 100;   // below this the fit is flagged unreliable
};

struct Lambda1Estimate {
  double value = 0.0;
  bool clipped = false;
};

struct GoodnessOfFit {
  double chi_square = 0.0;
  int dof = 1;
};

struct FitResult {
  ModelParams params;
  Invariants invariants;
  double chi_square = 0.0;
  int dof = 1;
  std::uint64_t n_tokens = 0;
  std::size_t n_types = 0;
  bool clipped = false;
  bool unreliable = false;
};

// Token-weighted mean syllable length. Throws EmptyText.
double estimate_lambda0(const RankSpectrum& spec);

// Frequency-weighted least squares of per-type length against the model line
// lambda1 + 2 (lambda0 - lambda1) t with lambda0 held fixed, then clipped
// into [lambda1_min, lambda0]. Throws DegenerateSpectrum when the spectrum
// has a single frequency block.
Lambda1Estimate estimate_lambda1(const RankSpectrum& spec, double lambda0,
                                 double lambda1_min = kDefaultLambda1Min);

// Pearson chi-square over length bins, merging adjacent bins until every
// expected count reaches min_expected; dof = bins - 3, floored at 1.
GoodnessOfFit goodness_of_fit(const LengthSpectrum& obs, const ModelParams& params,
                              double min_expected = 5.0);

FitResult fit_spectrum(const RankSpectrum& spec, const FitOptions& options = {});

FitResult fit_text(const TokenStream& stream, const LanguageRules& rules,
                   const FitOptions& options = {});

}  // namespace wordlen
