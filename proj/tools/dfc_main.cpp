#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "dfc/dfc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct RawConfig {
  std::string op = "diamond";
  std::string alpha = "1/2";
  std::string beta = "1/2";
  std::string gamma = "1/2";
  std::string base = "0";
  std::size_t n = 8;
  std::string fn;
  std::string input;
  std::string output;
  std::string mode;
  std::string tol;
  std::uint64_t seed = 0;
  std::string theorem = "all";
  std::string format = "csv";
  bool base_given = false;
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

int data_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitData;
}

// Writes through `sink` either to the --output path or to stdout.
template <typename Fn>
int with_output(const std::string& path, Fn sink) {
  if (path.empty()) {
    sink(std::cout);
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) return data_error("cannot open output file '" + path + "'");
  sink(out);
  return kExitOk;
}

template <typename S>
dfc::GridFunction<S> make_builtin(const std::string& spec, const S& base, std::size_t n) {
  using traits = dfc::scalar_traits<S>;
  if (n == 0) throw dfc::InvalidArgument("builtin functions need --n >= 1");
  std::vector<S> samples;
  samples.reserve(n);
  if (spec == "ramp") {
    for (std::size_t j = 0; j < n; ++j) samples.push_back(traits::from_long(static_cast<long>(j)));
  } else if (spec.rfind("const:", 0) == 0) {
    S k = dfc::parse_scalar<S>(std::string_view(spec).substr(6));
    samples.assign(n, k);
  } else if (spec.rfind("poly:", 0) == 0) {
    std::vector<S> coeffs;
    std::string_view body = std::string_view(spec).substr(5);
    while (!body.empty()) {
      auto comma = body.find(',');
      coeffs.push_back(dfc::parse_scalar<S>(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (coeffs.empty()) throw dfc::ParseError("poly: needs at least one coefficient");
    for (std::size_t j = 0; j < n; ++j) {
      S x = traits::from_long(static_cast<long>(j));
      S value = traits::zero();
      for (std::size_t i = coeffs.size(); i-- > 0;) value = value * x + coeffs[i];
      samples.push_back(value);
    }
  } else {
    throw dfc::ParseError("unknown builtin '" + spec +
                          "', expected const:k, ramp, or poly:c0,c1,...");
  }
  return dfc::GridFunction<S>(base, std::move(samples));
}

template <typename S>
void write_grid(std::ostream& out, const dfc::GridFunction<S>& g, const std::string& format) {
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t m = 0; m < g.size(); ++m)
      rows.push_back({{"t", dfc::format_scalar(g.point(m))},
                      {"value", dfc::format_scalar(g[m])}});
    out << rows.dump() << "\n";
  } else {
    dfc::write_csv(out, g);
  }
}

template <typename S>
int run_eval(const RawConfig& raw) {
  using traits = dfc::scalar_traits<S>;
  S base = traits::zero();
  std::optional<dfc::Order<S>> alpha, beta;
  std::optional<S> gamma;
  try {
    base = dfc::parse_scalar<S>(raw.base);
    if (raw.op == "delta" || raw.op == "diamond")
      alpha.emplace(dfc::parse_scalar<S>(raw.alpha));
    if (raw.op == "nabla" || raw.op == "diamond")
      beta.emplace(dfc::parse_scalar<S>(raw.beta));
    if (raw.op == "diamond") {
      gamma = dfc::parse_scalar<S>(raw.gamma);
      if (*gamma < traits::zero() || *gamma > traits::one())
        return usage_error("--gamma must lie in [0,1]");
    }
    if (raw.input.empty() && raw.fn.empty())
      return usage_error("eval needs --input or --fn");
    if (!raw.input.empty() && !raw.fn.empty())
      return usage_error("--input and --fn are mutually exclusive");
  } catch (const dfc::Error& e) {
    return usage_error(e.what());
  }

  try {
    dfc::GridFunction<S> f = [&] {
      if (!raw.input.empty()) {
        std::ifstream in(raw.input);
        if (!in) throw dfc::CsvError("cannot open input file '" + raw.input + "'");
        std::optional<S> expected;
        if (raw.base_given) expected = base;
        return dfc::read_csv<S>(in, expected);
      }
      try {
        return make_builtin<S>(raw.fn, base, raw.n);
      } catch (const dfc::Error& e) {
        // A malformed --fn is a flag problem, not an input-data problem.
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitUsage);
      }
    }();

    dfc::GridFunction<S> result = [&] {
      if (raw.op == "delta") return dfc::delta_fractional_sum(f, *alpha);
      if (raw.op == "nabla") return dfc::nabla_fractional_sum(f, *beta);
      return dfc::diamond_fractional_sum(f, dfc::DiamondParams<S>(*alpha, *beta, *gamma));
    }();

    return with_output(raw.output,
                       [&](std::ostream& out) { write_grid(out, result, raw.format); });
  } catch (const dfc::Error& e) {
    return data_error(e.what());
  }
}

template <typename S>
int run_weights(const RawConfig& raw) {
  std::optional<dfc::WeightSequence<S>> weights;
  try {
    dfc::Order<S> alpha(dfc::parse_scalar<S>(raw.alpha));
    weights = dfc::kernel_weights(alpha, raw.n);
  } catch (const dfc::Error& e) {
    return usage_error(e.what());
  }
  return with_output(raw.output, [&](std::ostream& out) {
    if (raw.format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t j = 0; j < weights->weights.size(); ++j)
        rows.push_back({{"j", j}, {"c", dfc::format_scalar(weights->weights[j])}});
      out << rows.dump() << "\n";
    } else {
      out << "j,c_j\n";
      for (std::size_t j = 0; j < weights->weights.size(); ++j)
        out << j << ',' << dfc::format_scalar(weights->weights[j]) << '\n';
    }
  });
}

template <typename S>
int run_verify(const RawConfig& raw) {
  using traits = dfc::scalar_traits<S>;
  std::vector<dfc::VerificationReport<S>> reports;
  try {
    S base = dfc::parse_scalar<S>(raw.base);
    dfc::Order<S> alpha(dfc::parse_scalar<S>(raw.alpha));
    dfc::Order<S> beta(dfc::parse_scalar<S>(raw.beta));
    S gamma = dfc::parse_scalar<S>(raw.gamma);
    if (gamma < traits::zero() || gamma > traits::one())
      return usage_error("--gamma must lie in [0,1]");
    if (raw.n == 0) return usage_error("--n must be >= 1");

    dfc::VerifyOptions<S> opts;
    opts.seed = raw.seed;
    if (!raw.tol.empty()) {
      S tol = dfc::parse_scalar<S>(raw.tol);
      if (tol < traits::zero()) return usage_error("--tol must be >= 0");
      if (traits::is_exact && !(tol == traits::zero()))
        return usage_error("--tol must be 0 in exact mode (identities hold exactly)");
      opts.rel_tolerance = tol;
    }

    dfc::DiamondParams<S> p(alpha, beta, gamma);
    dfc::RationalSampler<S> sampler(raw.seed);
    auto f = sampler.next_grid(base, raw.n);
    auto g = sampler.next_grid(base, raw.n);
    S k = sampler.next_scalar();

    bool all = raw.theorem == "all";
    if (all || raw.theorem == "linearity")
      reports.push_back(dfc::verify_linearity(f, g, p, opts));
    if (all || raw.theorem == "constant")
      reports.push_back(dfc::verify_constant(k, p, raw.n, opts));
    if (all || raw.theorem == "coincidence")
      reports.push_back(dfc::verify_coincidence(f, alpha, opts));
    if (all || raw.theorem == "composition")
      reports.push_back(dfc::verify_composition(f, p, p, opts));
    if (all || raw.theorem == "leibniz")
      reports.push_back(dfc::verify_leibniz(f, g, p, opts));
    if (all) {
      reports.push_back(dfc::verify_reduction_gamma0(f, p, opts));
      reports.push_back(dfc::verify_reduction_gamma1(f, p, opts));
    }
  } catch (const dfc::Error& e) {
    return usage_error(e.what());
  }

  bool all_passed = true;
  int rc = with_output(raw.output, [&](std::ostream& out) {
    for (const auto& report : reports) {
      out << dfc::report_to_json(report).dump() << "\n";
      if (!report.passed) all_passed = false;
    }
  });
  if (rc != kExitOk) return rc;
  return all_passed ? kExitOk : kExitVerifyFail;
}

template <typename S>
int dispatch(const std::string& subcommand, const RawConfig& raw) {
  if (subcommand == "eval") return run_eval<S>(raw);
  if (subcommand == "weights") return run_weights<S>(raw);
  return run_verify<S>(raw);
}

}  // namespace

int main(int argc, char** argv) {
  RawConfig raw;
  CLI::App app{"discrete delta, nabla, and combined fractional sums on unit grids"};
  app.require_subcommand(1);

  auto add_common = [&raw](CLI::App* cmd) {
    cmd->add_option("--mode", raw.mode, "numeric mode: exact or float (default: DFC_MODE or exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--output", raw.output, "write results to this file instead of stdout");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate an operator on a grid function");
  eval->add_option("--op", raw.op, "operator: delta, nabla, or diamond")
      ->check(CLI::IsMember({"delta", "nabla", "diamond"}));
  eval->add_option("--alpha", raw.alpha, "forward order (> 0)");
  eval->add_option("--beta", raw.beta, "backward order (> 0)");
  eval->add_option("--gamma", raw.gamma, "blend weight in [0,1]");
  auto* base_opt = eval->add_option("--base", raw.base, "grid base point");
  eval->add_option("--n", raw.n, "sample count for builtin functions");
  eval->add_option("--fn", raw.fn, "builtin input: const:k, ramp, or poly:c0,c1,...");
  eval->add_option("--input", raw.input, "CSV input file with a 't,value' header");
  eval->add_option("--format", raw.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(eval);

  CLI::App* weights = app.add_subcommand("weights", "print convolution kernel weights");
  weights->add_option("--alpha", raw.alpha, "order (> 0)");
  weights->add_option("--n", raw.n, "number of weights");
  weights->add_option("--format", raw.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(weights);

  CLI::App* verify = app.add_subcommand("verify", "run identity checks and emit JSON reports");
  verify->add_option("--theorem", raw.theorem,
                     "all, linearity, constant, coincidence, composition, or leibniz")
      ->check(CLI::IsMember({"all", "linearity", "constant", "coincidence", "composition",
                             "leibniz"}));
  verify->add_option("--alpha", raw.alpha, "forward order (> 0)");
  verify->add_option("--beta", raw.beta, "backward order (> 0)");
  verify->add_option("--gamma", raw.gamma, "blend weight in [0,1]");
  verify->add_option("--base", raw.base, "grid base point for sampled inputs");
  verify->add_option("--n", raw.n, "grid length");
  verify->add_option("--tol", raw.tol, "relative tolerance override (float mode)");
  verify->add_option("--seed", raw.seed, "seed for the rational input sampler");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  raw.base_given = base_opt->count() > 0;

  std::string mode = raw.mode;
  if (mode.empty()) {
    if (const char* env = std::getenv("DFC_MODE")) mode = env;
  }
  if (mode.empty()) mode = "exact";
  if (mode != "exact" && mode != "float")
    return usage_error("DFC_MODE must be 'exact' or 'float', got '" + mode + "'");

  const std::string& sub = app.get_subcommands().front()->get_name();
  if (mode == "exact") return dispatch<dfc::Rational>(sub, raw);
  return dispatch<double>(sub, raw);
}
