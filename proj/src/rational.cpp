#include "hallforge/rational.hpp"

#include <cctype>

#include "hallforge/errors.hpp"

namespace hallforge {

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0, slash = std::string::npos;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++digits;
    } else if (text[j] == '/' && slash == std::string::npos && digits > 0) {
      slash = j;
      digits = 0;
    } else {
      throw ParseError("invalid rational '" + text + "'", j);
    }
  }
  if (digits == 0) throw ParseError("invalid rational '" + text + "'", text.size());
  std::string t = text[0] == '+' ? text.substr(1) : text;
  Rational r(t, 10);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace hallforge
