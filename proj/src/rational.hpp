#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>

namespace cartan {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are produced by arithmetic; values
// built from raw numerator/denominator pairs go through make_rat below.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

std::string rat_to_string(const Rat& q);

// Parses "a", "-a", "a/b". Returns nullopt on malformed input.
std::optional<Rat> parse_rat(const std::string& text);

}  // namespace cartan
