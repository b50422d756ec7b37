#include "nmr/rational.hpp"

#include <cctype>

#include "nmr/error.hpp"

namespace nmr {
namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int to_int(std::string_view digits) { return cpp_int(std::string(digits)); }

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw SemanticError("malformed rational '" + original + "'");
    const cpp_int d = to_int(den);
    if (d == 0) throw SemanticError("zero denominator in '" + original + "'");
    value = Rational(to_int(num), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw SemanticError("malformed rational '" + original + "'");
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const cpp_int w = whole.empty() ? cpp_int(0) : to_int(whole);
    const cpp_int f = frac.empty() ? cpp_int(0) : to_int(frac);
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(text)) throw SemanticError("malformed rational '" + original + "'");
    value = Rational(to_int(text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace nmr
