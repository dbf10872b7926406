#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infodesign {

/// Exact rational number. GMP keeps every value in lowest terms with a positive
/// denominator; all arithmetic in the library goes through this type.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses an integer ("-3"), a fraction ("2/6") or a finite decimal ("0.05")
/// into an exact rational. Throws ParseError on anything else.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Scalar& x);

std::vector<std::string> to_strings(std::span<const Scalar> v);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Scalar sum(std::span<const Scalar> v);

/// Nonnegative entries summing to exactly one.
bool is_probability_vector(std::span<const Scalar> v);

Vector unit_vector(std::size_t n, std::size_t i);

}  // namespace infodesign
