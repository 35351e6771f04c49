#include "orbitkit/rational.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::domain_gap: return "DomainGap";
    case Errc::not_onto: return "NotOnto";
    case Errc::not_finite_valued: return "NotFiniteValued";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::no_sibling: return "NoSibling";
    case Errc::hypothesis_not_checked: return "HypothesisNotChecked";
    case Errc::not_weak_dense: return "NotWeakDense";
    case Errc::too_large: return "TooLarge";
    case Errc::unknown_name: return "UnknownName";
    case Errc::bad_params: return "BadParams";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(Errc::parse_error, "not a rational: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::parse_error, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), whole);
    mpz_class den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(whole) + "'");
    Scalar q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent.
  long exponent = 0;
  std::string_view mantissa = text;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    mpz_class ez = parse_integer(text.substr(e + 1), whole);
    if (!ez.fits_slong_p() || abs(ez) > 4096) {
      throw Error(Errc::parse_error, "exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      throw Error(Errc::parse_error, "not a rational: '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw Error(Errc::parse_error, "not a rational: '" + std::string(whole) + "'");
    digits = std::string(mantissa);
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  long scale = exponent - frac_digits;
  Scalar q;
  if (scale >= 0) {
    q = Scalar(num * pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Scalar(num, pow10(static_cast<unsigned long>(-scale)));
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Scalar& value) { return value.get_d(); }

std::string to_decimal(const Scalar& value, int significant_digits) {
  // mpf gives enough precision for any denominator we produce; 12 digits
  // is the rendering contract.
  mpf_class f(value, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant_digits));
  if (digits.empty() || digits == "0") return "0";
  bool negative = digits.front() == '-';
  if (negative) digits.erase(0, 1);
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
  } else if (static_cast<std::size_t>(exp) >= digits.size()) {
    out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
  }
  return negative ? "-" + out : out;
}

std::size_t hash_value(const Scalar& value) noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const mpz_class& z) {
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
      h *= 0x100000001b3ull;
    }
    h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
    h *= 0x100000001b3ull;
  };
  mix(value.get_num());
  mix(value.get_den());
  return h;
}

mpz_class floor_of(const Scalar& value) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

mpz_class ceil_of(const Scalar& value) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

}  // namespace orbitkit
