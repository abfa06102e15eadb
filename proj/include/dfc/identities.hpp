#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/fracops.hpp"
#include "dfc/grid.hpp"
#include "dfc/kernelmath.hpp"
#include "dfc/scalar.hpp"

namespace dfc {

enum class TheoremId {
  linearity,
  constant,
  coincidence,
  composition,
  leibniz,
  reduction_gamma0,
  reduction_gamma1,
};

inline const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::linearity: return "linearity";
    case TheoremId::constant: return "constant";
    case TheoremId::coincidence: return "coincidence";
    case TheoremId::composition: return "composition";
    case TheoremId::leibniz: return "leibniz";
    case TheoremId::reduction_gamma0: return "reduction_gamma0";
    case TheoremId::reduction_gamma1: return "reduction_gamma1";
  }
  return "unknown";
}

/// Parameters echoed into a report. Fields that do not apply to a particular
/// check stay unset and serialize as null. alpha2/beta2 are only used by the
/// composition check, which involves a second order pair.
template <typename S>
struct ReportParams {
  std::optional<S> alpha;
  std::optional<S> beta;
  std::optional<S> gamma;
  std::optional<S> alpha2;
  std::optional<S> beta2;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
};

/// Worst point of a comparison: the index with the largest absolute
/// left/right deviation.
template <typename S>
struct Witness {
  std::size_t index;
  S lhs;
  S rhs;
};

template <typename S>
struct VerificationReport {
  TheoremId theorem;
  ReportParams<S> params;
  S max_abs_error;
  S tolerance;
  bool passed;
  std::optional<Witness<S>> witness;
};

template <typename S>
S default_rel_tolerance() {
  if constexpr (scalar_traits<S>::is_exact)
    return scalar_traits<S>::zero();
  else
    return 1e-10;
}

/// Knobs shared by all verify_* checks. rel_tolerance is ignored in exact
/// mode, where the tolerance is always 0. kernel substitutes the convolution
/// weight source on the operator-under-test side (empty means standard).
/// seed is echoed into reports for reproducibility; the checks themselves
/// draw no randomness.
template <typename S>
struct VerifyOptions {
  S rel_tolerance = default_rel_tolerance<S>();
  KernelSource<S> kernel = {};
  std::optional<std::uint64_t> seed;
};

namespace detail {

// Builds the report from two value sequences that an identity claims are
// equal. In exact mode tolerance is 0 unconditionally; in float mode the
// configured relative tolerance is scaled by (1 + max |lhs|) so the recorded
// tolerance and max_abs_error are directly comparable. Reduction checks pass
// zero_tolerance to demand value-exact agreement in both modes.
template <typename S>
VerificationReport<S> make_report(TheoremId theorem, ReportParams<S> params,
                                  const std::vector<S>& lhs, const std::vector<S>& rhs,
                                  const VerifyOptions<S>& opts, bool zero_tolerance = false) {
  using traits = scalar_traits<S>;
  S max_err = traits::zero();
  S max_abs_lhs = traits::zero();
  std::size_t worst = 0;
  for (std::size_t m = 0; m < lhs.size(); ++m) {
    S err = traits::abs(lhs[m] - rhs[m]);
    if (err > max_err) {
      max_err = err;
      worst = m;
    }
    S mag = traits::abs(lhs[m]);
    if (mag > max_abs_lhs) max_abs_lhs = mag;
  }
  S tolerance = traits::zero();
  if (!traits::is_exact && !zero_tolerance)
    tolerance = opts.rel_tolerance * (traits::one() + max_abs_lhs);
  bool passed = !(max_err > tolerance);
  std::optional<Witness<S>> witness;
  if (max_err > traits::zero()) witness = Witness<S>{worst, lhs[worst], rhs[worst]};
  return VerificationReport<S>{theorem, std::move(params), max_err, tolerance, passed, witness};
}

template <typename S>
ReportParams<S> params_from(const DiamondParams<S>& p, std::size_t n,
                            const VerifyOptions<S>& opts) {
  ReportParams<S> out;
  out.alpha = p.alpha().value();
  out.beta = p.beta().value();
  out.gamma = p.gamma();
  out.n = n;
  out.seed = opts.seed;
  return out;
}

}  // namespace detail

/// Values of the delta fractional sum computed literally from its defining
/// summation, one kernel factor per (point, sample) pair, with no shared
/// recurrence and no caching. This is deliberately a separate code path from
/// the production convolution so the coincidence check compares two
/// independent evaluations. Exact mode forms each factor as the product
/// prod_{i=1..d} (nu+i-1)/i from scratch; float mode goes through the
/// falling-power gamma ratio divided by gamma(nu).
template <typename S>
std::vector<S> delta_sum_by_definition(const GridFunction<S>& f, const Order<S>& nu) {
  using traits = scalar_traits<S>;
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    S acc = traits::zero();
    for (std::size_t j = 0; j <= m; ++j) {
      std::size_t d = m - j;
      S factor;
      if constexpr (traits::is_exact) {
        factor = traits::one();
        for (std::size_t i = 1; i <= d; ++i) {
          S si = traits::from_long(static_cast<long>(i));
          factor = factor * (nu.value() + si - traits::one()) / si;
        }
      } else {
        S sd = traits::from_long(static_cast<long>(d));
        factor = falling_power(sd + nu.value() - 1.0, nu.value() - 1.0) / std::tgamma(nu.value());
      }
      acc = acc + factor * f[j];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// diamond(f+g) versus diamond(f) + diamond(g), pointwise.
template <typename S>
VerificationReport<S> verify_linearity(const GridFunction<S>& f, const GridFunction<S>& g,
                                       const DiamondParams<S>& p,
                                       const VerifyOptions<S>& opts = {}) {
  GridFunction<S> lhs = diamond_fractional_sum(add(f, g), p, opts.kernel);
  GridFunction<S> rhs = add(diamond_fractional_sum(f, p, opts.kernel),
                            diamond_fractional_sum(g, p, opts.kernel));
  return detail::make_report(TheoremId::linearity, detail::params_from(p, f.size(), opts),
                             lhs.samples(), rhs.samples(), opts);
}

/// diamond of the constant function k versus the closed form
/// gamma*binom(m+alpha,m)*k + (1-gamma)*binom(m+beta,m)*k at every index m.
template <typename S>
VerificationReport<S> verify_constant(const S& k, const DiamondParams<S>& p, std::size_t n,
                                      const VerifyOptions<S>& opts = {}) {
  using traits = scalar_traits<S>;
  if (n == 0) throw InvalidArgument("verify_constant needs n >= 1");
  GridFunction<S> f(traits::zero(), std::vector<S>(n, k));
  GridFunction<S> lhs = diamond_fractional_sum(f, p, opts.kernel);
  std::vector<S> rhs;
  rhs.reserve(n);
  for (std::size_t m = 0; m < n; ++m)
    rhs.push_back(p.gamma() * constant_sum_closed_form(p.alpha(), m, k) +
                  (traits::one() - p.gamma()) * constant_sum_closed_form(p.beta(), m, k));
  return detail::make_report(TheoremId::constant, detail::params_from(p, n, opts),
                             lhs.samples(), rhs, opts);
}

/// Delta/nabla coincidence: the definitional delta evaluation against the
/// production nabla convolution, pointwise. The two value sequences are
/// computed by unrelated code paths; only this check keeps the shared
/// convolution honest.
template <typename S>
VerificationReport<S> verify_coincidence(const GridFunction<S>& f, const Order<S>& nu,
                                         const VerifyOptions<S>& opts = {}) {
  std::vector<S> lhs = delta_sum_by_definition(f, nu);
  GridFunction<S> rhs = nabla_fractional_sum(f, nu, opts.kernel);
  ReportParams<S> params;
  params.alpha = nu.value();
  params.n = f.size();
  params.seed = opts.seed;
  return detail::make_report(TheoremId::coincidence, std::move(params), lhs, rhs.samples(),
                             opts);
}

/// Nested double application versus the order-summed right side, pointwise.
template <typename S>
VerificationReport<S> verify_composition(const GridFunction<S>& f, const DiamondParams<S>& p1,
                                         const DiamondParams<S>& p2,
                                         const VerifyOptions<S>& opts = {}) {
  GridFunction<S> lhs = compose_diamond_lhs(f, p1, p2, opts.kernel);
  GridFunction<S> rhs = compose_diamond_rhs(f, p1, p2, opts.kernel);
  ReportParams<S> params = detail::params_from(p1, f.size(), opts);
  params.alpha2 = p2.alpha().value();
  params.beta2 = p2.beta().value();
  return detail::make_report(TheoremId::composition, std::move(params), lhs.samples(),
                             rhs.samples(), opts);
}

/// Precomputed tables for the product-rule series: per branch order nu, the
/// delta sums of f at orders nu+k, plus the backward differences of g and
/// the binomial prefactors. rhs_at then assembles the series value at one
/// index in O(m) scalar operations.
template <typename S>
class LeibnizEvaluator {
 public:
  LeibnizEvaluator(const GridFunction<S>& f, const GridFunction<S>& g,
                   const DiamondParams<S>& p, const KernelSource<S>& kernel = {})
      : n_(f.size()), gamma_(p.gamma()) {
    detail::require_same_domain(f, g);
    diffs_.reserve(n_);
    for (std::size_t k = 0; k < n_; ++k)
      diffs_.push_back(backward_difference(g, k).samples());
    build_branch(alpha_branch_, f, p.alpha(), kernel);
    build_branch(beta_branch_, f, p.beta(), kernel);
  }

  std::size_t size() const { return n_; }

  /// Series value at index m with the summation cap at k = trunc_cap. Any
  /// cap >= m gives the same value: for k > m the delta-sum factor is a sum
  /// over an empty range, hence zero by convention, and the whole term
  /// vanishes with it.
  S rhs_at(std::size_t m, std::size_t trunc_cap) const {
    using traits = scalar_traits<S>;
    if (m >= n_) throw IndexOutOfRange("series evaluation index out of range");
    S acc = traits::zero();
    for (std::size_t k = 0; k <= trunc_cap; ++k) {
      if (k > m) continue;  // empty-sum delta factor, term is exactly zero
      const S& diff = diffs_[k][m - k];
      acc = acc + gamma_ * alpha_branch_.binoms[k] * diff * alpha_branch_.sums[k][m - k];
      acc = acc + (traits::one() - gamma_) * beta_branch_.binoms[k] * diff *
                      beta_branch_.sums[k][m - k];
    }
    return acc;
  }

  S rhs_at(std::size_t m) const { return rhs_at(m, m); }

 private:
  struct Branch {
    std::vector<S> binoms;              // binom(-nu, k)
    std::vector<std::vector<S>> sums;   // delta sum of f at order nu+k
  };

  void build_branch(Branch& b, const GridFunction<S>& f, const Order<S>& nu,
                    const KernelSource<S>& kernel) {
    b.binoms.reserve(n_);
    b.sums.reserve(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      b.binoms.push_back(generalized_binomial(-nu.value(), k));
      b.sums.push_back(detail::fractional_sum_values(f, shifted_order(nu, k), kernel));
    }
  }

  std::size_t n_;
  S gamma_;
  std::vector<std::vector<S>> diffs_;   // diffs_[k] = backward_difference(g, k) samples
  Branch alpha_branch_;
  Branch beta_branch_;
};

/// One-shot series evaluation at a single index (series capped at k = m).
template <typename S>
S leibniz_rhs(const GridFunction<S>& f, const GridFunction<S>& g, const DiamondParams<S>& p,
              std::size_t m, const KernelSource<S>& kernel = {}) {
  return LeibnizEvaluator<S>(f, g, p, kernel).rhs_at(m);
}

/// diamond(f*g) versus the product-rule series, at every index.
template <typename S>
VerificationReport<S> verify_leibniz(const GridFunction<S>& f, const GridFunction<S>& g,
                                     const DiamondParams<S>& p,
                                     const VerifyOptions<S>& opts = {}) {
  GridFunction<S> lhs = diamond_fractional_sum(multiply(f, g), p, opts.kernel);
  LeibnizEvaluator<S> series(f, g, p, opts.kernel);
  std::vector<S> rhs;
  rhs.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) rhs.push_back(series.rhs_at(m));
  return detail::make_report(TheoremId::leibniz, detail::params_from(p, f.size(), opts),
                             lhs.samples(), rhs, opts);
}

namespace detail {

// Shared body of the two reduction checks. The operator side runs the full
// diamond blend with the options' kernel source; the reference side is the
// pure single-branch operator with the standard kernel. Agreement must be
// value-exact in both modes (tolerance 0): the blend with gamma in {0,1}
// multiplies by exact 1 and 0, which IEEE arithmetic preserves.
template <typename S>
VerificationReport<S> verify_reduction(const GridFunction<S>& f, const DiamondParams<S>& p,
                                       bool to_delta, const VerifyOptions<S>& opts) {
  using traits = scalar_traits<S>;
  DiamondParams<S> forced(p.alpha(), p.beta(), to_delta ? traits::one() : traits::zero());
  GridFunction<S> lhs = diamond_fractional_sum(f, forced, opts.kernel);
  std::vector<S> rhs = to_delta ? delta_fractional_sum(f, p.alpha()).samples()
                                : nabla_fractional_sum(f, p.beta()).samples();
  ReportParams<S> params = params_from(forced, f.size(), opts);
  return make_report(to_delta ? TheoremId::reduction_gamma1 : TheoremId::reduction_gamma0,
                     std::move(params), lhs.samples(), rhs, opts, /*zero_tolerance=*/true);
}

}  // namespace detail

/// gamma = 1 must collapse the diamond to the pure delta sum, value-exactly.
template <typename S>
VerificationReport<S> verify_reduction_gamma1(const GridFunction<S>& f,
                                              const DiamondParams<S>& p,
                                              const VerifyOptions<S>& opts = {}) {
  return detail::verify_reduction(f, p, /*to_delta=*/true, opts);
}

/// gamma = 0 must collapse the diamond to the pure nabla sum, value-exactly.
template <typename S>
VerificationReport<S> verify_reduction_gamma0(const GridFunction<S>& f,
                                              const DiamondParams<S>& p,
                                              const VerifyOptions<S>& opts = {}) {
  return detail::verify_reduction(f, p, /*to_delta=*/false, opts);
}

/// Seeded source of the random rational inputs used by the harness:
/// numerators in [-9, 9], denominators in {1, 2, 3}. The raw engine output
/// is mapped by plain modulo so the sample stream depends only on the seed,
/// not on any library's distribution implementation. Float mode draws the
/// same rationals and rounds them once.
template <typename S>
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  S next_scalar() {
    long num = static_cast<long>(engine_() % 19) - 9;
    long den = static_cast<long>(engine_() % 3) + 1;
    return scalar_traits<S>::ratio(num, den);
  }

  GridFunction<S> next_grid(const S& base, std::size_t n) {
    std::vector<S> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(next_scalar());
    return GridFunction<S>(base, std::move(samples));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dfc
