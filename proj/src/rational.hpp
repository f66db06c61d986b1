// Exact rational coefficients.  Thin layer over GMP's mpq_class: all the
// engine needs is canonical arithmetic plus strict "p/q" parsing/printing.
#pragma once

#include <gmpxx.h>
#include <string>

namespace hznf {

using Rat = mpq_class;

// mpq_class(p, q) stores p/q verbatim; arithmetic assumes canonical form, so
// every construction from a non-literal pair must go through here.
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p" or "p/q" with optional leading '-' on p and q > 0.
// Throws std::invalid_argument on anything else.
Rat rat_parse(const std::string& s);

// Canonical form, "p" or "p/q" with q > 1.
std::string rat_str(const Rat& r);

}  // namespace hznf
