#pragma once

namespace wordlen {

inline constexpr double kDefaultLambda1Min = 0.5;

/// Parameters of the word-length mixture.
///
/// lambda0 is the mean word length in syllables, lambda1 the expected
/// length at the head of the rank list (coverage position t = 0) and
/// lambda1_min the lower bound of lambda1.
struct ModelParams {
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  double lambda1_min = kDefaultLambda1Min;
};

/// Coordinates of a text in the I-alpha plane.
///   I     = (lambda0 - 1) * (lambda1 - lambda1_min)           (language)
///   alpha = (lambda0 - lambda1) / (lambda0 - lambda1_min)      (genre)
struct Invariants {
  double i_lang = 0.0;
  double alpha = 0.0;
};

/// The Poisson parameter m(t) = conditional_mean(t) - 1 runs linearly from
/// lambda1 - 1 at t = 0 to 2*lambda0 - lambda1 - 1 at t = 1. Where it would
/// be negative (lambda1 < 1) the mass is clamped to m = 0, i.e. length 1.
struct MixtureSpec {
  double m_lo = 0.0;
  double m_hi = 0.0;
  double t_clamp = 0.0;
};

// Throws DomainError unless lambda0 >= 1, lambda1_min <= lambda1 <= lambda0
// (1e-12 slack for values produced by floating-point inversion).
void validate(const ModelParams& params);

MixtureSpec mixture_spec(const ModelParams& params);

/// e^-m m^(k-1) / (k-1)!, the 1-displaced Poisson law. Throws DomainError
/// for k < 1 or m < 0.
double shifted_poisson_pmf(int k, double m);

/// lambda1 + 2 (lambda0 - lambda1) t for t in [0, 1].
double conditional_mean(double t, const ModelParams& params);

/// Probability of length k under the uniform-parameter mixture, in closed
/// form via regularized incomplete gamma differences.
double mixture_pmf(int k, const ModelParams& params);

Invariants compute_invariants(const ModelParams& params);

/// Inverse of compute_invariants. Requires 0 <= alpha < 1 and I >= 0.
ModelParams params_from_invariants(const Invariants& inv,
                                   double lambda1_min = kDefaultLambda1Min);

}  // namespace wordlen
