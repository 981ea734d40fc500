#include "geoclust/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "geoclust/error.hpp"

namespace geoclust {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidPolicy: return "InvalidPolicy";
    case ErrorKind::EmptyCluster: return "EmptyCluster";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::PartitionError: return "PartitionError";
    case ErrorKind::ContractViolation: return "ContractViolation";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::GuessUnderflow: return "GuessUnderflow";
    case ErrorKind::RejectionExhausted: return "RejectionExhausted";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) {
    throw Error(ErrorKind::InvalidInput,
                "malformed rational '" + std::string(whole) + "'");
  }
  const BigInt value{std::string(text)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) {
    throw Error(ErrorKind::InvalidInput, "empty rational literal");
  }

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), whole);
    const BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) {
      throw Error(ErrorKind::InvalidInput,
                  "zero denominator in '" + std::string(whole) + "'");
    }
    return Rational(num, den);
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(ErrorKind::InvalidInput,
                  "malformed decimal '" + std::string(whole) + "'");
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const BigInt ip = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part));
    const BigInt fp = frac_part.empty() ? BigInt(0) : BigInt(std::string(frac_part));
    Rational value(ip * scale + fp, scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(text, whole));
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_of(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& value) {
  return -floor_of(Rational(-value));
}

std::uint32_t ceil_to_hops(const Rational& value) {
  const BigInt c = ceil_of(value);
  if (c <= 0) return 0;
  if (c >= std::numeric_limits<std::uint32_t>::max()) {
    return std::numeric_limits<std::uint32_t>::max();
  }
  return c.convert_to<std::uint32_t>();
}

Rational inverse_power_of_two(unsigned j) {
  BigInt den = 1;
  den <<= j;
  return Rational(BigInt(1), den);
}

Rational sqrt_round_up(const Rational& square, std::uint32_t grid) {
  if (square < 0) {
    throw Error(ErrorKind::InvalidInput, "square root of a negative rational");
  }
  const BigInt num = boost::multiprecision::numerator(square);
  const BigInt den = boost::multiprecision::denominator(square);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn == num && rd * rd == den) return Rational(rn, rd);

  // Smallest t with (t / grid)^2 >= num / den, i.e. t^2 * den >= num * grid^2.
  const BigInt target = num * BigInt(grid) * BigInt(grid);
  BigInt t = boost::multiprecision::sqrt(BigInt(target / den));
  while (t * t * den < target) t += 1;
  return Rational(t, BigInt(grid));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace geoclust
