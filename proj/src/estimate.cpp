#include "wordlen/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wordlen/errors.hpp"

namespace wordlen {

double estimate_lambda0(const RankSpectrum& spec) {
  if (spec.total_tokens == 0 || spec.entries.empty()) throw EmptyText();
  std::uint64_t mass = 0;
  for (const auto& e : spec.entries) mass += e.freq * static_cast<std::uint64_t>(e.length);
  return static_cast<double>(mass) / static_cast<double>(spec.total_tokens);
}

Lambda1Estimate estimate_lambda1(const RankSpectrum& spec, double lambda0, double lambda1_min) {
  if (spec.total_tokens == 0 || spec.entries.empty()) throw EmptyText();

  // Entries of one block share t, so their contributions are aggregated with
  // exact integer sums first; the result does not depend on tie order.
  double num = 0.0;
  double den = 0.0;
  for (const auto& b : frequency_blocks(spec)) {
    const double x = 1.0 - 2.0 * b.t;
    const double tokens = static_cast<double>(b.tokens);
    num += x * (static_cast<double>(b.length_mass) - 2.0 * lambda0 * b.t * tokens);
    den += x * x * tokens;
  }
  if (den == 0.0) throw DegenerateSpectrum();

  Lambda1Estimate est;
  est.value = num / den;
  const double lo = lambda1_min;
  const double hi = lambda0;
  if (est.value < lo) {
    est.value = lo;
    est.clipped = true;
  } else if (est.value > hi) {
    est.value = hi;
    est.clipped = true;
  }
  return est;
}

GoodnessOfFit goodness_of_fit(const LengthSpectrum& obs, const ModelParams& params, double min_expected) {
  if (obs.total_tokens < 1) throw DomainError("goodness_of_fit needs at least one token");
  validate(params);
  const double n = static_cast<double>(obs.total_tokens);

  const int max_observed = obs.counts.empty() ? 1 : obs.counts.rbegin()->first;
  const int k_tail = std::max(static_cast<int>(std::ceil(2.0 * params.lambda0 + 20.0)), max_observed);

  // Bins 1 .. k_tail - 1 are single lengths; bin k_tail collects the tail.
  std::vector<double> expected;
  std::vector<double> observed;
  double cumulative = 0.0;
  for (int k = 1; k < k_tail; ++k) {
    const double p = mixture_pmf(k, params);
    cumulative += p;
    expected.push_back(n * p);
    auto it = obs.counts.find(k);
    observed.push_back(it == obs.counts.end() ? 0.0 : static_cast<double>(it->second));
  }
  expected.push_back(n * std::max(0.0, 1.0 - cumulative));
  double tail_obs = 0.0;
  for (auto it = obs.counts.lower_bound(k_tail); it != obs.counts.end(); ++it) tail_obs += static_cast<double>(it->second);
  observed.push_back(tail_obs);

  // Greedy merge in length order; a short remainder joins the last bin.
  std::vector<double> bin_exp;
  std::vector<double> bin_obs;
  double acc_e = 0.0, acc_o = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    acc_e += expected[i];
    acc_o += observed[i];
    if (acc_e >= min_expected) {
      bin_exp.push_back(acc_e);
      bin_obs.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (bin_exp.empty()) {
      bin_exp.push_back(acc_e);
      bin_obs.push_back(acc_o);
    } else {
      bin_exp.back() += acc_e;
      bin_obs.back() += acc_o;
    }
  }

  GoodnessOfFit g;
  for (std::size_t i = 0; i < bin_exp.size(); ++i) {
    if (bin_exp[i] > 0.0) {
      const double d = bin_obs[i] - bin_exp[i];
      g.chi_square += d * d / bin_exp[i];
    }
  }
  g.dof = std::max(1, static_cast<int>(bin_exp.size()) - 3);
  return g;
}

FitResult fit_spectrum(const RankSpectrum& spec, const FitOptions& options) {
  FitResult r;
  r.params.lambda1_min = options.lambda1_min;
  r.params.lambda0 = estimate_lambda0(spec);
  const auto l1 = estimate_lambda1(spec, r.params.lambda0, options.lambda1_min);
  r.params.lambda1 = l1.value;
  r.clipped = l1.clipped;
  r.invariants = compute_invariants(r.params);
  const auto gof = goodness_of_fit(length_spectrum(spec), r.params, options.min_expected);
  r.chi_square = gof.chi_square;
  r.dof = gof.dof;
  r.n_tokens = spec.total_tokens;
  r.n_types = spec.total_types;
  r.unreliable = spec.total_tokens < options.min_reliable_tokens;
  return r;
}

FitResult fit_text(const TokenStream& stream, const LanguageRules& rules, const FitOptions& options) {
  return fit_spectrum(build_rank_spectrum(stream, rules), options);
}

}  // namespace wordlen
