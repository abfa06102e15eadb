#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/grid.hpp"
#include "dfc/kernelmath.hpp"
#include "dfc/scalar.hpp"

namespace dfc {

/// Parameter triple of the combined operator: forward order alpha, backward
/// order beta, and the blend weight gamma in [0,1].
template <typename S>
class DiamondParams {
 public:
  DiamondParams(Order<S> alpha, Order<S> beta, S gamma)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
    using traits = scalar_traits<S>;
    if (!traits::is_finite(gamma_) || gamma_ < traits::zero() || gamma_ > traits::one())
      throw InvalidArgument("gamma must lie in [0,1]");
  }

  const Order<S>& alpha() const { return alpha_; }
  const Order<S>& beta() const { return beta_; }
  const S& gamma() const { return gamma_; }

 private:
  Order<S> alpha_;
  Order<S> beta_;
  S gamma_;
};

/// Supplier of convolution weights for a given order and count. Operators
/// take one of these so tests can substitute deliberately corrupted kernels;
/// an empty function means the standard kernel_weights.
template <typename S>
using KernelSource = std::function<WeightSequence<S>(const Order<S>&, std::size_t)>;

namespace detail {

template <typename S>
WeightSequence<S> resolve_weights(const KernelSource<S>& source, const Order<S>& order,
                                  std::size_t count) {
  return source ? source(order, count) : kernel_weights(order, count);
}

// Lower-triangular convolution out[m] = sum_{j=0..m} w[m-j] * f[j].
// Summation runs left to right over j so float results are reproducible.
template <typename S>
std::vector<S> triangular_convolve(const std::vector<S>& f, const std::vector<S>& w) {
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    S acc = scalar_traits<S>::zero();
    for (std::size_t j = 0; j <= m; ++j) acc = acc + w[m - j] * f[j];
    out.push_back(std::move(acc));
  }
  return out;
}

// Shared value sequence of the delta and nabla sums; they differ only in
// where the output lives.
template <typename S>
std::vector<S> fractional_sum_values(const GridFunction<S>& f, const Order<S>& order,
                                     const KernelSource<S>& kernel) {
  WeightSequence<S> w = resolve_weights(kernel, order, f.size());
  return triangular_convolve(f.samples(), w.weights);
}

}  // namespace detail

/// Forward (delta) fractional sum of order alpha. The result lives on the
/// shifted grid starting at base + alpha and has the same length as f.
template <typename S>
GridFunction<S> delta_fractional_sum(const GridFunction<S>& f, const Order<S>& alpha,
                                     const KernelSource<S>& kernel = {}) {
  return GridFunction<S>(f.base() + alpha.value(),
                         detail::fractional_sum_values(f, alpha, kernel));
}

/// Backward (nabla) fractional sum of order beta. Input and output share the
/// same grid. The value sequence coincides with the delta sum of equal order;
/// only the domain differs.
template <typename S>
GridFunction<S> nabla_fractional_sum(const GridFunction<S>& f, const Order<S>& beta,
                                     const KernelSource<S>& kernel = {}) {
  return GridFunction<S>(f.base(), detail::fractional_sum_values(f, beta, kernel));
}

/// Combined operator: gamma times the delta branch (read off the shifted
/// grid at the same index) plus (1-gamma) times the nabla branch. Both
/// branches are evaluated in full; the output lives on the grid of f.
template <typename S>
GridFunction<S> diamond_fractional_sum(const GridFunction<S>& f, const DiamondParams<S>& p,
                                       const KernelSource<S>& kernel = {}) {
  using traits = scalar_traits<S>;
  std::vector<S> delta_vals = detail::fractional_sum_values(f, p.alpha(), kernel);
  std::vector<S> nabla_vals = detail::fractional_sum_values(f, p.beta(), kernel);
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m)
    out.push_back(p.gamma() * delta_vals[m] + (traits::one() - p.gamma()) * nabla_vals[m]);
  return GridFunction<S>(f.base(), std::move(out));
}

namespace detail {

template <typename S>
void require_same_gamma(const DiamondParams<S>& p1, const DiamondParams<S>& p2) {
  if (!(p1.gamma() == p2.gamma()))
    throw GammaMismatch("composition requires both parameter sets to share gamma");
}

}  // namespace detail

/// Left side of the composition identity: the literal nesting, applying the
/// order-(alpha2, beta2) operator first and the order-(alpha1, beta1)
/// operator to its output.
template <typename S>
GridFunction<S> compose_diamond_lhs(const GridFunction<S>& f, const DiamondParams<S>& p1,
                                    const DiamondParams<S>& p2,
                                    const KernelSource<S>& kernel = {}) {
  detail::require_same_gamma(p1, p2);
  return diamond_fractional_sum(diamond_fractional_sum(f, p2, kernel), p1, kernel);
}

/// Right side of the composition identity: a gamma blend of two single
/// combined operators whose orders are the sums (alpha1+alpha2, beta1+alpha2)
/// and (alpha1+beta2, beta1+beta2).
template <typename S>
GridFunction<S> compose_diamond_rhs(const GridFunction<S>& f, const DiamondParams<S>& p1,
                                    const DiamondParams<S>& p2,
                                    const KernelSource<S>& kernel = {}) {
  detail::require_same_gamma(p1, p2);
  using traits = scalar_traits<S>;
  const S& g = p1.gamma();
  DiamondParams<S> upper(p1.alpha() + p2.alpha(), p1.beta() + p2.alpha(), g);
  DiamondParams<S> lower(p1.alpha() + p2.beta(), p1.beta() + p2.beta(), g);
  GridFunction<S> fu = diamond_fractional_sum(f, upper, kernel);
  GridFunction<S> fl = diamond_fractional_sum(f, lower, kernel);
  std::vector<S> out;
  out.reserve(f.size());
  for (std::size_t m = 0; m < f.size(); ++m)
    out.push_back(g * fu[m] + (traits::one() - g) * fl[m]);
  return GridFunction<S>(f.base(), std::move(out));
}

}  // namespace dfc
