#include "wordlen/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wordlen/errors.hpp"

namespace wordlen {

namespace {

constexpr double kSlack = 1e-12;

constexpr std::array<double, 21> kFactorial = [] {
  std::array<double, 21> f{};
  f[0] = 1.0;
  for (int i = 1; i <= 20; ++i) f[i] = f[i - 1] * i;
  return f;
}();

// e^-x x^i / i!; log space above i = 20.
double poisson_term(int i, double x) {
  if (x == 0.0) return i == 0 ? 1.0 : 0.0;
  if (i <= 20) return std::exp(-x) * std::pow(x, i) / kFactorial[i];
  return std::exp(-x + i * std::log(x) - std::lgamma(i + 1.0));
}

// Regularized lower incomplete gamma P(a, x) for integer a >= 1 by its power
// series; accurate without cancellation for x < a + 1.
double lower_gamma_series(int a, double x) {
  if (x == 0.0) return 0.0;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return poisson_term(a, x) * sum;
}

// Regularized upper incomplete gamma Q(a, x) = e^-x sum_{i<a} x^i / i!.
double upper_gamma(int a, double x) {
  if (x < a + 1.0) return 1.0 - lower_gamma_series(a, x);
  double sum = 0.0;
  for (int i = a - 1; i >= 0; --i) sum += poisson_term(i, x);  // small terms first
  return sum;
}

// 5-point Gauss-Legendre on [lo, hi] for very narrow parameter ranges, where
// the incomplete-gamma difference would lose digits to cancellation.
double narrow_interval_mass(int j, double lo, double hi) {
  static constexpr std::array<double, 5> nodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                  -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {0.5688888888888889, 0.4786286704993665,
                                                    0.4786286704993665, 0.2369268850561891,
                                                    0.2369268850561891};
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t n = 0; n < nodes.size(); ++n) sum += weights[n] * poisson_term(j, mid + half * nodes[n]);
  return sum * half;
}

// Integral over m in [lo, hi] of e^-m m^j / j!.
double interval_mass(int j, double lo, double hi) {
  if (hi - lo < 1e-3) return narrow_interval_mass(j, lo, hi);
  const int a = j + 1;
  if (hi < a + 1.0) return lower_gamma_series(a, hi) - lower_gamma_series(a, lo);
  return upper_gamma(a, lo) - upper_gamma(a, hi);
}

}  // namespace

void validate(const ModelParams& p) {
  if (!std::isfinite(p.lambda0) || !std::isfinite(p.lambda1) || !std::isfinite(p.lambda1_min)) {
    throw DomainError("model parameters must be finite");
  }
  if (p.lambda0 < 1.0 - kSlack) throw DomainError("lambda0 must be >= 1, got " + std::to_string(p.lambda0));
  if (p.lambda1 > p.lambda0 + kSlack) throw DomainError("lambda1 must not exceed lambda0");
  if (p.lambda1 < p.lambda1_min - kSlack) throw DomainError("lambda1 must be >= lambda1_min");
}

MixtureSpec mixture_spec(const ModelParams& p) {
  validate(p);
  MixtureSpec s;
  s.m_lo = std::max(p.lambda1 - 1.0, 0.0);
  s.m_hi = std::max(2.0 * p.lambda0 - p.lambda1 - 1.0, s.m_lo);
  if (p.lambda0 > p.lambda1) s.t_clamp = std::max(0.0, (1.0 - p.lambda1) / (2.0 * (p.lambda0 - p.lambda1)));
  return s;
}

double shifted_poisson_pmf(int k, double m) {
  if (k < 1) throw DomainError("length k must be >= 1");
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("Poisson parameter must be >= 0");
  return poisson_term(k - 1, m);
}

double conditional_mean(double t, const ModelParams& p) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("coverage position t must lie in [0, 1]");
  return p.lambda1 + 2.0 * (p.lambda0 - p.lambda1) * t;
}

double mixture_pmf(int k, const ModelParams& p) {
  if (k < 1) throw DomainError("length k must be >= 1");
  const MixtureSpec s = mixture_spec(p);
  if (p.lambda1 >= p.lambda0) return shifted_poisson_pmf(k, std::max(p.lambda0 - 1.0, 0.0));

  const double spread = interval_mass(k - 1, s.m_lo, s.m_hi) / (s.m_hi - s.m_lo);
  return (k == 1 ? s.t_clamp : 0.0) + (1.0 - s.t_clamp) * spread;
}

Invariants compute_invariants(const ModelParams& p) {
  validate(p);
  if (p.lambda0 <= p.lambda1_min) throw DomainError("lambda0 must exceed lambda1_min");
  Invariants inv;
  inv.i_lang = std::max(0.0, (p.lambda0 - 1.0) * (p.lambda1 - p.lambda1_min));
  inv.alpha = std::clamp((p.lambda0 - p.lambda1) / (p.lambda0 - p.lambda1_min), 0.0, 1.0);
  return inv;
}

ModelParams params_from_invariants(const Invariants& inv, double lambda1_min) {
  if (!std::isfinite(inv.i_lang) || !std::isfinite(inv.alpha) || !std::isfinite(lambda1_min)) {
    throw DomainError("invariants must be finite");
  }
  if (inv.alpha >= 1.0) throw DomainError("alpha = 1 fixes I = 0; the inverse is undefined");
  if (inv.alpha < 0.0) throw DomainError("alpha must be >= 0");
  if (inv.i_lang < 0.0) throw DomainError("I must be >= 0");

  // (lambda0 - 1)(lambda0 - lambda1_min)(1 - alpha) = I, larger root.
  const double m = lambda1_min;
  const double disc = (1.0 - m) * (1.0 - m) + 4.0 * inv.i_lang / (1.0 - inv.alpha);
  ModelParams p;
  p.lambda1_min = m;
  p.lambda0 = 0.5 * ((1.0 + m) + std::sqrt(disc));
  p.lambda1 = p.lambda0 - inv.alpha * (p.lambda0 - m);
  return p;
}

}  // namespace wordlen
