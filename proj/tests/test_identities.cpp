#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "dfc/identities.hpp"

using dfc::DiamondParams;
using dfc::GridFunction;
using dfc::IndexOutOfRange;
using dfc::Order;
using dfc::Rational;
using dfc::TheoremId;
using dfc::VerifyOptions;

namespace {

Rational rat(long num, long den = 1) { return dfc::scalar_traits<Rational>::ratio(num, den); }

GridFunction<Rational> ones(std::size_t n) {
  return GridFunction<Rational>(rat(0), std::vector<Rational>(n, rat(1)));
}

DiamondParams<Rational> params(long an, long ad, long bn, long bd, long gn, long gd) {
  return DiamondParams<Rational>(Order<Rational>(rat(an, ad)), Order<Rational>(rat(bn, bd)),
                                 rat(gn, gd));
}

// Adds 1/10^6 to kernel weight j whenever enough weights are requested.
dfc::KernelSource<Rational> exact_fault(std::size_t j) {
  return [j](const Order<Rational>& order, std::size_t count) {
    auto w = dfc::kernel_weights(order, count);
    if (j < count) w.weights[j] += rat(1, 1000000);
    return w;
  };
}

}  // namespace

TEST_CASE("sampler is reproducible and in range") {
  dfc::RationalSampler<Rational> a(123), b(123);
  for (int i = 0; i < 500; ++i) {
    Rational v = a.next_scalar();
    REQUIRE(v == b.next_scalar());
    REQUIRE(v >= rat(-9));
    REQUIRE(v <= rat(9));
    REQUIRE(denominator(v) <= 3);
  }
  dfc::RationalSampler<Rational> c(124);
  auto g1 = dfc::RationalSampler<Rational>(125).next_grid(rat(0), 16);
  auto g2 = dfc::RationalSampler<Rational>(125).next_grid(rat(0), 16);
  REQUIRE(g1.samples() == g2.samples());
}

TEST_CASE("linearity verifies exactly on random rational input") {
  dfc::RationalSampler<Rational> sampler(7);
  auto f = sampler.next_grid(rat(0), 16);
  auto g = sampler.next_grid(rat(0), 16);
  auto report = dfc::verify_linearity(f, g, params(1, 3, 2, 5, 1, 2));
  REQUIRE(report.theorem == TheoremId::linearity);
  REQUIRE(report.passed);
  REQUIRE(report.max_abs_error == rat(0));
  REQUIRE(report.tolerance == rat(0));
  REQUIRE_FALSE(report.witness.has_value());
  REQUIRE(report.params.alpha == rat(1, 3));
  REQUIRE(report.params.n == 16);
}

TEST_CASE("linearity verifies within tolerance in float mode") {
  dfc::RationalSampler<double> sampler(7);
  auto f = sampler.next_grid(0.0, 32);
  auto g = sampler.next_grid(0.0, 32);
  DiamondParams<double> p(Order<double>(1.0 / 3.0), Order<double>(0.4), 0.5);
  auto report = dfc::verify_linearity(f, g, p);
  REQUIRE(report.passed);
  REQUIRE(report.tolerance >= 1e-10);
}

TEST_CASE("constant closed form verifies at every index") {
  auto report = dfc::verify_constant(rat(1), params(1, 2, 1, 2, 1, 3), 3);
  REQUIRE(report.passed);
  REQUIRE(report.max_abs_error == rat(0));

  auto zero = dfc::verify_constant(rat(0), params(1, 3, 5, 4, 3, 4), 8);
  REQUIRE(zero.passed);

  auto integer = dfc::verify_constant(rat(1), params(1, 1, 1, 1, 2, 3), 4);
  REQUIRE(integer.passed);

  dfc::RationalSampler<double> sampler(41);
  auto fr = dfc::verify_constant(sampler.next_scalar(),
                                 DiamondParams<double>(Order<double>(1.3), Order<double>(0.1), 0.25),
                                 48);
  REQUIRE(fr.passed);
}

TEST_CASE("the constant diamond value matches the closed form directly") {
  // gamma*binom(m+a, m)*k + (1-gamma)*binom(m+b, m)*k against the operator.
  auto p = params(3, 4, 2, 5, 1, 4);
  Rational k = rat(7, 3);
  auto out = dfc::diamond_fractional_sum(
      GridFunction<Rational>(rat(0), std::vector<Rational>(6, k)), p);
  for (std::size_t m = 0; m < 6; ++m) {
    Rational expected = rat(1, 4) * dfc::constant_sum_closed_form(p.alpha(), m, k) +
                        rat(3, 4) * dfc::constant_sum_closed_form(p.beta(), m, k);
    REQUIRE(out[m] == expected);
  }
}

TEST_CASE("coincidence holds between the definitional and convolution paths") {
  auto simple = dfc::verify_coincidence(ones(3), Order<Rational>(rat(1, 2)));
  REQUIRE(simple.passed);
  REQUIRE(simple.max_abs_error == rat(0));

  dfc::RationalSampler<Rational> sampler(43);
  auto f = sampler.next_grid(rat(0), 16);
  auto report = dfc::verify_coincidence(f, Order<Rational>(rat(3, 4)));
  REQUIRE(report.passed);
  REQUIRE(report.max_abs_error == rat(0));

  auto unit = dfc::verify_coincidence(f, Order<Rational>(rat(1)));
  REQUIRE(unit.max_abs_error == rat(0));

  dfc::RationalSampler<double> fsampler(43);
  auto g = fsampler.next_grid(0.0, 32);
  auto freport = dfc::verify_coincidence(g, Order<double>(1.3));
  REQUIRE(freport.passed);
}

TEST_CASE("definitional delta values equal the production delta values") {
  dfc::RationalSampler<Rational> sampler(47);
  auto f = sampler.next_grid(rat(-3), 12);
  Order<Rational> nu(rat(5, 4));
  auto direct = dfc::delta_sum_by_definition(f, nu);
  auto prod = dfc::delta_fractional_sum(f, nu);
  REQUIRE(direct == prod.samples());
}

TEST_CASE("composition verifies exactly") {
  auto trivial = dfc::verify_composition(ones(3), params(1, 2, 1, 2, 0, 1),
                                         params(1, 2, 1, 2, 0, 1));
  REQUIRE(trivial.passed);
  REQUIRE(trivial.max_abs_error == rat(0));

  dfc::RationalSampler<Rational> sampler(53);
  auto f = sampler.next_grid(rat(0), 16);
  auto report = dfc::verify_composition(f, params(1, 3, 2, 5, 1, 2), params(3, 7, 1, 6, 1, 2));
  REQUIRE(report.passed);
  REQUIRE(report.max_abs_error == rat(0));
  REQUIRE(report.params.alpha2 == rat(3, 7));
  REQUIRE(report.params.beta2 == rat(1, 6));

  auto integer = dfc::verify_composition(f, params(2, 1, 1, 2, 1, 1), params(3, 1, 1, 2, 1, 1));
  REQUIRE(integer.max_abs_error == rat(0));
}

TEST_CASE("series for a product of constants reduces to the closed form") {
  // With f = g = 1 only the k = 0 term survives, leaving the constant
  // closed-form combination at each index.
  auto p = params(1, 2, 2, 5, 1, 3);
  dfc::LeibnizEvaluator<Rational> series(ones(5), ones(5), p);
  for (std::size_t m = 0; m < 5; ++m) {
    Rational expected = rat(1, 3) * dfc::constant_sum_closed_form(p.alpha(), m, rat(1)) +
                        rat(2, 3) * dfc::constant_sum_closed_form(p.beta(), m, rat(1));
    REQUIRE(series.rhs_at(m) == expected);
  }
}

TEST_CASE("series matches the worked ramp example") {
  // gamma = 1, alpha = 1, f = 1, g = ramp: at m = 2 the terms are
  // 1*2*3 = 6, then -1*1*3 = -3, then 0; the left side is 0+1+2 = 3.
  GridFunction<Rational> f(rat(0), std::vector<Rational>(3, rat(1)));
  GridFunction<Rational> g(rat(0), {rat(0), rat(1), rat(2)});
  DiamondParams<Rational> p(Order<Rational>(rat(1)), Order<Rational>(rat(1)), rat(1));
  REQUIRE(dfc::leibniz_rhs(f, g, p, 2) == rat(3));
  auto lhs = dfc::diamond_fractional_sum(dfc::multiply(f, g), p);
  REQUIRE(lhs[2] == rat(3));
}

TEST_CASE("series with a constant second factor degenerates to scaling") {
  dfc::RationalSampler<Rational> sampler(59);
  auto f = sampler.next_grid(rat(0), 10);
  GridFunction<Rational> c(rat(0), std::vector<Rational>(10, rat(5, 3)));
  DiamondParams<Rational> p(Order<Rational>(rat(1, 3)), Order<Rational>(rat(2, 5)), rat(0));
  auto nabla = dfc::nabla_fractional_sum(f, p.beta());
  for (std::size_t m = 0; m < 10; ++m)
    REQUIRE(dfc::leibniz_rhs(f, c, p, m) == rat(5, 3) * nabla[m]);
}

TEST_CASE("product rule verifies exactly on random rational input") {
  dfc::RationalSampler<Rational> sampler(61);
  auto f = sampler.next_grid(rat(0), 12);
  auto g = sampler.next_grid(rat(0), 12);
  auto report = dfc::verify_leibniz(f, g, params(1, 3, 2, 5, 1, 2));
  REQUIRE(report.passed);
  REQUIRE(report.max_abs_error == rat(0));
}

TEST_CASE("product rule verifies in float mode on short grids") {
  dfc::RationalSampler<double> sampler(61);
  auto f = sampler.next_grid(0.0, 12);
  auto g = sampler.next_grid(0.0, 12);
  DiamondParams<double> p(Order<double>(1.0 / 3.0), Order<double>(0.4), 0.5);
  auto report = dfc::verify_leibniz(f, g, p);
  REQUIRE(report.passed);
}

TEST_CASE("series cap beyond the index changes nothing") {
  dfc::RationalSampler<Rational> sampler(67);
  auto f = sampler.next_grid(rat(0), 10);
  auto g = sampler.next_grid(rat(0), 10);
  dfc::LeibnizEvaluator<Rational> series(f, g, params(1, 2, 3, 4, 1, 4));
  for (std::size_t m = 0; m < 10; ++m)
    REQUIRE(series.rhs_at(m, m) == series.rhs_at(m, m + 8));

  dfc::RationalSampler<double> fsampler(67);
  auto ff = fsampler.next_grid(0.0, 10);
  auto fg = fsampler.next_grid(0.0, 10);
  dfc::LeibnizEvaluator<double> fseries(ff, fg,
                                        DiamondParams<double>(Order<double>(0.5),
                                                              Order<double>(0.75), 0.25));
  for (std::size_t m = 0; m < 10; ++m)
    REQUIRE(fseries.rhs_at(m, m) == fseries.rhs_at(m, m + 8));
}

TEST_CASE("series index must be on the grid") {
  auto f = ones(4);
  DiamondParams<Rational> p(Order<Rational>(rat(1, 2)), Order<Rational>(rat(1, 2)), rat(1, 2));
  REQUIRE_THROWS_AS(dfc::leibniz_rhs(f, f, p, 4), IndexOutOfRange);
}

TEST_CASE("reductions agree value-exactly with the pure operators") {
  dfc::RationalSampler<Rational> sampler(71);
  auto f = sampler.next_grid(rat(0), 16);
  auto p = params(1, 3, 5, 4, 1, 2);

  auto r1 = dfc::verify_reduction_gamma1(f, p);
  REQUIRE(r1.theorem == TheoremId::reduction_gamma1);
  REQUIRE(r1.passed);
  REQUIRE(r1.max_abs_error == rat(0));
  REQUIRE(r1.tolerance == rat(0));

  auto r0 = dfc::verify_reduction_gamma0(f, p);
  REQUIRE(r0.passed);

  dfc::RationalSampler<double> fsampler(71);
  auto g = fsampler.next_grid(0.0, 32);
  DiamondParams<double> fp(Order<double>(1.0 / 3.0), Order<double>(1.25), 0.5);
  auto fr1 = dfc::verify_reduction_gamma1(g, fp);
  REQUIRE(fr1.passed);
  REQUIRE(fr1.tolerance == 0.0);
  auto fr0 = dfc::verify_reduction_gamma0(g, fp);
  REQUIRE(fr0.passed);
}

TEST_CASE("an exact kernel fault is caught and reported with a witness") {
  dfc::RationalSampler<Rational> sampler(73);
  auto f = sampler.next_grid(rat(0), 8);
  VerifyOptions<Rational> opts;
  opts.kernel = exact_fault(2);
  auto report = dfc::verify_coincidence(f, Order<Rational>(rat(1, 2)), opts);
  REQUIRE_FALSE(report.passed);
  REQUIRE(report.max_abs_error > rat(0));
  REQUIRE(report.witness.has_value());
  REQUIRE(report.witness->index >= 2);
  REQUIRE(report.witness->lhs != report.witness->rhs);
}

TEST_CASE("a one-ulp float kernel fault is caught by the reduction checks") {
  // On an impulse input the convolution returns the weights themselves, so
  // the single flipped bit cannot be swallowed by summation rounding and the
  // zero-tolerance reduction comparison must fail.
  dfc::KernelSource<double> fault = [](const Order<double>& order, std::size_t count) {
    auto w = dfc::kernel_weights(order, count);
    if (count > 3) w.weights[3] = std::nextafter(w.weights[3], 2.0 * w.weights[3] + 1.0);
    return w;
  };
  std::vector<double> impulse(16, 0.0);
  impulse[0] = 1.0;
  GridFunction<double> f(0.0, impulse);
  DiamondParams<double> p(Order<double>(0.5), Order<double>(0.75), 0.5);
  VerifyOptions<double> opts;
  opts.kernel = fault;
  auto r1 = dfc::verify_reduction_gamma1(f, p, opts);
  auto r0 = dfc::verify_reduction_gamma0(f, p, opts);
  REQUIRE_FALSE(r1.passed);
  REQUIRE_FALSE(r0.passed);
  REQUIRE(r1.witness.has_value());
  REQUIRE(r1.witness->index == 3);
}
