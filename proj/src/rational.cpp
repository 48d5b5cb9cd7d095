#include "severi/rational.hpp"

#include <cctype>

#include "severi/errors.hpp"

namespace severi {

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t slash = std::string_view::npos;
  bool digits = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '/' && slash == std::string_view::npos && digits) {
      slash = i;
      digits = false;
    } else if (c != '-' || i != 0) {
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
  }
  if (!digits) throw DomainError("malformed rational: '" + std::string(text) + "'");
  Rational out(std::string(text), 10);
  if (out.get_den() == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace severi
