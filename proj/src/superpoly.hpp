#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace cartan {

// Signature of the coefficient superalgebra Lambda(m,n): m even indeterminates
// x_1..x_m, n odd (Grassmann) indeterminates x_{m+1}..x_{m+n}. Indices are
// global and 1-based throughout.
struct Signature {
  int m = 0;
  int n = 0;

  int dim() const { return m + n; }
  bool valid_index(int r) const { return r >= 1 && r <= m + n; }
  bool odd_index(int r) const { return r > m; }
  // The structural requirement is m,n >= 1; the source setting additionally
  // assumes m > 3 and n > 3, reported separately so small test signatures work.
  bool paper_regime() const { return m > 3 && n > 3; }
  bool operator==(const Signature&) const = default;
};

enum class Parity {
  Even,   // all terms of Z2-degree 0
  Odd,    // all terms of Z2-degree 1
  Mixed,  // terms of both degrees
  Zero,   // the zero element; compatible with either parity
};

inline bool parity_compatible(Parity a, int bit) {
  return a == Parity::Zero || a == (bit ? Parity::Odd : Parity::Even);
}

using Weights = std::vector<int>;  // one weight per index, size m+n

// Monomial x_1^{e_1}...x_m^{e_m} * x_{j_1}...x_{j_k} with j_1 < ... < j_k odd.
// The odd part is a bitmask: bit (j - m - 1) set iff x_j is a factor, which is
// the canonical ascending order; reordering signs live in the coefficient.
struct Mono {
  std::vector<int32_t> even;  // size m
  uint32_t odd = 0;

  int odd_count() const { return __builtin_popcount(odd); }
  int parity_bit() const { return odd_count() & 1; }
  bool has_odd(int j, int m) const { return odd >> (j - m - 1) & 1u; }
  int total_degree() const;
  long weight(const Weights& gamma) const;
  bool is_one() const;

  bool operator==(const Mono&) const = default;
  // Graded lex: (total degree, even exponents, odd mask).
  bool operator<(const Mono& o) const;
};

Mono mono_one(const Signature& sig);
Mono mono_var(const Signature& sig, int index);

// Product with the Koszul sign from sorting the concatenated odd factors.
// sign == 0 when the odd parts intersect (Grassmann square-zero).
struct MonoProduct {
  int sign = 0;
  Mono mono;
};
MonoProduct mono_mul(const Mono& a, const Mono& b);

class SuperPoly {
 public:
  explicit SuperPoly(Signature sig) : sig_(sig) {}
  static SuperPoly zero(Signature sig) { return SuperPoly(sig); }
  static SuperPoly constant(Signature sig, const Rat& c);
  static SuperPoly variable(Signature sig, int index);
  static SuperPoly monomial(Signature sig, const Mono& mono, const Rat& c);

  const Signature& sig() const { return sig_; }
  const std::map<Mono, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  Parity parity() const;
  // Z2 degree of a homogeneous element; throws on mixed input. Zero maps to
  // the requested fallback so formulas can treat 0 as either parity.
  int parity_bit_or(int fallback = 0) const;

  // Common weight of all terms under gamma, nullopt if terms disagree.
  // Undefined (throws) for the zero polynomial.
  std::optional<long> weight(const Weights& gamma) const;

  void add_term(const Mono& mono, const Rat& c);  // canonicalizing

  SuperPoly operator+(const SuperPoly& o) const;
  SuperPoly operator-(const SuperPoly& o) const;
  SuperPoly operator-() const;
  SuperPoly operator*(const SuperPoly& o) const;
  SuperPoly scaled(const Rat& c) const;

  bool operator==(const SuperPoly& o) const;

 private:
  void check_same_sig(const SuperPoly& o) const;
  Signature sig_;
  std::map<Mono, Rat> terms_;  // no zero coefficients stored
};

// Superderivation d_r with d_r(x_s) = delta_{rs}; satisfies the super-Leibniz
// rule d_r(fg) = d_r(f) g + (-1)^{|d_r||f|} f d_r(g).
SuperPoly partial(int r, const SuperPoly& p);

Weights all_ones(const Signature& sig);

// All monomials of the given gamma-weight, sorted in canonical Mono order.
std::vector<Mono> monomials_of_weight(const Signature& sig, const Weights& gamma,
                                      int w);

using Rng = std::mt19937_64;

// Deterministic pseudo-random parity-homogeneous polynomial with total degree
// of every term <= max_weight. Same rng state sequence, same output.
SuperPoly random_homogeneous(const Signature& sig, int parity_bit, int max_weight,
                             Rng& rng);

}  // namespace cartan
