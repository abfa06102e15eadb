#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/scalar.hpp"

namespace dfc {

/// A function sampled at the unit-spaced points base, base+1, ...,
/// base+(n-1). The grid itself is never materialized; indexing carries the
/// spacing. Values are immutable after construction.
template <typename S>
class GridFunction {
 public:
  GridFunction(S base, std::vector<S> samples)
      : base_(std::move(base)), samples_(std::move(samples)) {
    if (samples_.empty()) throw InvalidArgument("grid function needs at least one sample");
    using traits = scalar_traits<S>;
    if (!traits::is_finite(base_)) throw NonFiniteError("grid base is not finite");
    for (const S& v : samples_)
      if (!traits::is_finite(v)) throw NonFiniteError("grid sample is not finite");
  }

  const S& base() const { return base_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<S>& samples() const { return samples_; }

  const S& operator[](std::size_t m) const {
    if (m >= samples_.size()) throw IndexOutOfRange("grid index out of range");
    return samples_[m];
  }

  /// The grid point at offset m, i.e. base + m.
  S point(std::size_t m) const {
    return base_ + scalar_traits<S>::from_long(static_cast<long>(m));
  }

  bool same_domain(const GridFunction& other) const {
    return base_ == other.base_ && samples_.size() == other.samples_.size();
  }

 private:
  S base_;
  std::vector<S> samples_;
};

namespace detail {

template <typename S>
void require_same_domain(const GridFunction<S>& f, const GridFunction<S>& g) {
  if (!f.same_domain(g))
    throw DomainMismatch("grid functions differ in base or length");
}

}  // namespace detail

template <typename S>
GridFunction<S> add(const GridFunction<S>& f, const GridFunction<S>& g) {
  detail::require_same_domain(f, g);
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) out.push_back(f[m] + g[m]);
  return GridFunction<S>(f.base(), std::move(out));
}

template <typename S>
GridFunction<S> scale(const GridFunction<S>& f, const S& c) {
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) out.push_back(c * f[m]);
  return GridFunction<S>(f.base(), std::move(out));
}

template <typename S>
GridFunction<S> multiply(const GridFunction<S>& f, const GridFunction<S>& g) {
  detail::require_same_domain(f, g);
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) out.push_back(f[m] * g[m]);
  return GridFunction<S>(f.base(), std::move(out));
}

/// k-fold backward difference. The result loses the first k points: it lives
/// on base+k with n-k samples, and h(t) = f(t) - f(t-1) iterated k times.
/// Computed by iterating first differences rather than expanding binomial
/// coefficients, which keeps exact mode free of large intermediates.
template <typename S>
GridFunction<S> backward_difference(const GridFunction<S>& f, std::size_t k) {
  if (k >= f.size())
    throw InsufficientSamples("backward difference of depth " + std::to_string(k) +
                              " needs more than " + std::to_string(f.size()) + " samples");
  std::vector<S> cur = f.samples();
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<S> next;
    next.reserve(cur.size() - 1);
    for (std::size_t m = 1; m < cur.size(); ++m) next.push_back(cur[m] - cur[m - 1]);
    cur = std::move(next);
  }
  return GridFunction<S>(f.point(k), std::move(cur));
}

/// Running prefix sums on the same grid: g(base+m) = f(base+0) + ... + f(base+m).
template <typename S>
GridFunction<S> cumulative_sum(const GridFunction<S>& f) {
  std::vector<S> out;
  out.reserve(f.size());
  S acc = f[0];
  out.push_back(acc);
  for (std::size_t m = 1; m < f.size(); ++m) {
    acc = acc + f[m];
    out.push_back(acc);
  }
  return GridFunction<S>(f.base(), std::move(out));
}

}  // namespace dfc
