#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/scalar.hpp"

namespace dfc {

/// A strictly positive fractional order. Wrapping it in a type keeps order
/// arguments from being confused with plain scalars at call sites.
template <typename S>
class Order {
 public:
  explicit Order(S value) : value_(std::move(value)) {
    if (!scalar_traits<S>::is_finite(value_) || !(value_ > scalar_traits<S>::zero()))
      throw InvalidArgument("order must be positive");
  }

  const S& value() const { return value_; }

 private:
  S value_;
};

template <typename S>
Order<S> operator+(const Order<S>& a, const Order<S>& b) {
  return Order<S>(a.value() + b.value());
}

/// The order shifted by a nonnegative integer, as needed by series whose k-th
/// term uses order alpha+k.
template <typename S>
Order<S> shifted_order(const Order<S>& a, std::size_t k) {
  return Order<S>(a.value() + scalar_traits<S>::from_long(static_cast<long>(k)));
}

/// Normalized convolution kernel weights c_0..c_{n-1} for one order.
template <typename S>
struct WeightSequence {
  Order<S> order;
  std::vector<S> weights;
};

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// Sign of gamma(x): positive for x > 0, alternating on the negative axis
// interval by interval. x must not be a pole.
inline double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  long k = static_cast<long>(std::floor(x));  // x in (k, k+1), k <= -1
  return (k % 2 == 0) ? 1.0 : -1.0;
}

// gamma(x)/gamma(y) through log-gamma, with explicit sign tracking so
// negative non-integer arguments work.
inline double gamma_ratio(double x, double y) {
  if (is_nonpositive_integer(x) || is_nonpositive_integer(y))
    throw PoleError("gamma pole at " + format_scalar(is_nonpositive_integer(x) ? x : y));
  double r = gamma_sign(x) * gamma_sign(y) * std::exp(std::lgamma(x) - std::lgamma(y));
  if (!std::isfinite(r)) throw NonFiniteError("gamma ratio overflowed");
  return r;
}

}  // namespace detail

/// Falling factorial power t^(alpha) = gamma(t+1)/gamma(t+1-alpha).
///
/// For nonnegative integer alpha = n this is the plain product
/// t(t-1)...(t-n+1), evaluated as such in both modes so exact mode never
/// needs a gamma function. Non-integer alpha requires float mode (ModeError
/// otherwise) and may raise PoleError at non-positive integer gamma
/// arguments.
template <typename S>
S falling_power(const S& t, const S& alpha) {
  using traits = scalar_traits<S>;
  if (traits::is_integer(alpha) && !(alpha < traits::zero())) {
    long n = traits::to_long(alpha);
    S result = traits::one();
    for (long i = 0; i < n; ++i) result = result * (t - traits::from_long(i));
    return result;
  }
  if constexpr (traits::is_exact) {
    throw ModeError("non-integer falling power needs float mode");
  } else {
    return detail::gamma_ratio(t + 1.0, t + 1.0 - alpha);
  }
}

/// Rising factorial power t^{bar alpha} = gamma(t+alpha)/gamma(t).
/// Same mode rules as falling_power; the integer-order product is
/// t(t+1)...(t+n-1).
template <typename S>
S rising_power(const S& t, const S& alpha) {
  using traits = scalar_traits<S>;
  if (traits::is_integer(alpha) && !(alpha < traits::zero())) {
    long n = traits::to_long(alpha);
    S result = traits::one();
    for (long i = 0; i < n; ++i) result = result * (t + traits::from_long(i));
    return result;
  }
  if constexpr (traits::is_exact) {
    throw ModeError("non-integer rising power needs float mode");
  } else {
    return detail::gamma_ratio(t + alpha, t);
  }
}

/// Generalized binomial coefficient binom(u, k) for arbitrary scalar u and
/// nonnegative integer k, as the product of (u-i+1)/i for i = 1..k.
template <typename S>
S generalized_binomial(const S& u, std::size_t k) {
  using traits = scalar_traits<S>;
  S result = traits::one();
  for (std::size_t i = 1; i <= k; ++i) {
    S si = traits::from_long(static_cast<long>(i));
    result = result * (u - si + traits::one()) / si;
  }
  return result;
}

/// Kernel weights c_j(alpha) = gamma(j+alpha) / (gamma(alpha) gamma(j+1))
/// for j = 0..count-1, computed by the pole-free recurrence
/// c_0 = 1, c_j = c_{j-1} (j-1+alpha)/j. Exact in rational mode; in float
/// mode each weight is the product of j well-conditioned factors.
template <typename S>
WeightSequence<S> kernel_weights(const Order<S>& alpha, std::size_t count) {
  if (count == 0) throw InvalidArgument("kernel_weights needs count >= 1");
  using traits = scalar_traits<S>;
  std::vector<S> w;
  w.reserve(count);
  w.push_back(traits::one());
  for (std::size_t j = 1; j < count; ++j) {
    S sj = traits::from_long(static_cast<long>(j));
    w.push_back(w.back() * (sj - traits::one() + alpha.value()) / sj);
  }
  return WeightSequence<S>{alpha, std::move(w)};
}

/// Closed form for the delta sum of the constant function k at offset n:
/// k * prod_{j=1..n} (j+alpha)/j, i.e. binom(n+alpha, n) * k.
template <typename S>
S constant_sum_closed_form(const Order<S>& alpha, std::size_t n, const S& k) {
  using traits = scalar_traits<S>;
  S result = k;
  for (std::size_t j = 1; j <= n; ++j) {
    S sj = traits::from_long(static_cast<long>(j));
    result = result * (sj + alpha.value()) / sj;
  }
  return result;
}

}  // namespace dfc
