#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace orbitkit {

/// Exact rational number. Every coordinate in [0,1] and every distance is
/// carried as a Scalar; floating point only appears in rendered output.
using Scalar = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "0.125" or "-2.5e-3"
/// into the exact rational it denotes.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Scalar& value);

double to_double(const Scalar& value);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Scalar& value, int significant_digits = 12);

std::size_t hash_value(const Scalar& value) noexcept;

/// p/q in lowest terms. mpq_class(p, q) alone does not reduce, and GMP
/// arithmetic requires reduced operands.
inline Scalar ratio(long p, long q) {
  Scalar v(p, q);
  v.canonicalize();
  return v;
}

inline Scalar abs_diff(const Scalar& a, const Scalar& b) {
  Scalar d = a - b;
  return d < 0 ? Scalar(-d) : d;
}

inline const Scalar& min_of(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Greatest integer <= value.
mpz_class floor_of(const Scalar& value);
/// Least integer >= value.
mpz_class ceil_of(const Scalar& value);

}  // namespace orbitkit
