#include "rational.hpp"

#include <stdexcept>

namespace hznf {

namespace {

bool is_int_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& s) {
  const auto slash = s.find('/');
  const std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  if (!is_int_literal(num))
    throw std::invalid_argument("bad rational: '" + s + "'");
  mpz_class n(num);
  mpz_class d(1);
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (!is_int_literal(den) || den[0] == '-')
      throw std::invalid_argument("bad rational: '" + s + "'");
    d = mpz_class(den);
    if (d == 0) throw std::invalid_argument("bad rational (zero denominator): '" + s + "'");
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  return r.get_str();
}

}  // namespace hznf
