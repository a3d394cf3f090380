#include "aft/rational.hpp"

#include <stdexcept>

namespace aft {

namespace {

bool is_valid_integer_text(const std::string& s, bool allow_sign) {
  std::size_t start = (allow_sign && !s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string num_text = text;
  std::string den_text = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num_text = text.substr(0, slash);
    den_text = text.substr(slash + 1);
  }
  if (!is_valid_integer_text(num_text, /*allow_sign=*/true) ||
      !is_valid_integer_text(den_text, /*allow_sign=*/false)) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  BigInt num(num_text);
  BigInt den(den_text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in rational: '" + text + "'");
  }
  // The two-argument constructor canonicalizes; the string constructor of
  // mpq_rational would not (GMP keeps "3/6" as stored).
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

bool is_integer(const Rational& value) { return denominator(value) == 1; }

BigInt to_integer(const Rational& value) {
  if (!is_integer(value)) {
    throw std::invalid_argument("rational " + format_rational(value) +
                                " is not an integer");
  }
  return numerator(value);
}

}  // namespace aft
