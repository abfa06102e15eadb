#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dfc/errors.hpp"
#include "dfc/grid.hpp"
#include "dfc/identities.hpp"
#include "dfc/scalar.hpp"

namespace dfc {

namespace detail {

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Unit spacing check for the t column. Exact mode demands equality; float
// mode allows for decimal text that does not hit base+j dead on.
template <typename S>
bool t_matches(const S& t, const S& expected) {
  using traits = scalar_traits<S>;
  if constexpr (traits::is_exact) {
    return t == expected;
  } else {
    S scale = traits::one() + traits::abs(expected);
    return traits::abs(t - expected) <= 1e-9 * scale;
  }
}

}  // namespace detail

/// Reads a grid function from "t,value" CSV. The base is taken from the
/// first row (or checked against expected_base when given); every further t
/// must reconstruct as base+j, since unit spacing is a precondition of all
/// the operators. Structural problems raise CsvError, unparseable numbers
/// ParseError.
template <typename S>
GridFunction<S> read_csv(std::istream& in, const std::optional<S>& expected_base = {}) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty input, expected a 't,value' header");
  if (detail::strip_cr(line) != "t,value")
    throw CsvError("missing 't,value' header, got '" + detail::strip_cr(line) + "'");

  std::optional<S> base;
  std::vector<S> samples;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw CsvError("row " + std::to_string(row + 1) + " has no comma: '" + line + "'");
    S t = parse_scalar<S>(std::string_view(line).substr(0, comma));
    S value = parse_scalar<S>(std::string_view(line).substr(comma + 1));
    if (!base) {
      base = t;
      if (expected_base && !detail::t_matches(t, *expected_base))
        throw CsvError("first t is " + format_scalar(t) + ", expected base " +
                       format_scalar(*expected_base));
    } else {
      S expected = *base + scalar_traits<S>::from_long(static_cast<long>(row));
      if (!detail::t_matches(t, expected))
        throw CsvError("t column is not unit-spaced at row " + std::to_string(row + 1) +
                       ": got " + format_scalar(t) + ", expected " + format_scalar(expected));
    }
    samples.push_back(value);
    ++row;
  }
  if (samples.empty()) throw CsvError("no data rows");
  return GridFunction<S>(*base, std::move(samples));
}

/// Writes "t,value" rows, t reconstructed as base+j.
template <typename S>
void write_csv(std::ostream& out, const GridFunction<S>& f) {
  out << "t,value\n";
  for (std::size_t m = 0; m < f.size(); ++m)
    out << format_scalar(f.point(m)) << ',' << format_scalar(f[m]) << '\n';
}

/// Scalars serialize as JSON strings in both modes ("p/q" or shortest
/// round-trip decimal), never as JSON numbers, so exact values survive the
/// trip.
template <typename S>
nlohmann::json scalar_to_json(const S& v) {
  return format_scalar(v);
}

template <typename S>
nlohmann::json scalar_to_json(const std::optional<S>& v) {
  if (!v) return nullptr;
  return format_scalar(*v);
}

template <typename S>
nlohmann::json report_to_json(const VerificationReport<S>& report) {
  nlohmann::json params{
      {"alpha", scalar_to_json(report.params.alpha)},
      {"beta", scalar_to_json(report.params.beta)},
      {"gamma", scalar_to_json(report.params.gamma)},
      {"n", report.params.n},
      {"mode", scalar_traits<S>::mode_name},
  };
  if (report.params.seed)
    params["seed"] = *report.params.seed;
  else
    params["seed"] = nullptr;
  if (report.params.alpha2) params["alpha2"] = scalar_to_json(report.params.alpha2);
  if (report.params.beta2) params["beta2"] = scalar_to_json(report.params.beta2);

  nlohmann::json witness = nullptr;
  if (report.witness)
    witness = nlohmann::json{{"index", report.witness->index},
                             {"lhs", scalar_to_json(report.witness->lhs)},
                             {"rhs", scalar_to_json(report.witness->rhs)}};

  return nlohmann::json{{"theorem", theorem_name(report.theorem)},
                        {"params", params},
                        {"max_abs_error", scalar_to_json(report.max_abs_error)},
                        {"tolerance", scalar_to_json(report.tolerance)},
                        {"passed", report.passed},
                        {"witness", witness}};
}

}  // namespace dfc
