#pragma once

#include "superpoly.hpp"

namespace cartan {

enum class Family { W, S, H, K, HO, KO, SHO, SKO };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// The index involution i' and sign tau from the operator definitions, plus the
// distinguished contact index nu (x_m for K, x_{2m+1} for KO/SKO).
struct IndexMaps {
  Family family = Family::W;
  int m = 0;
  int n = 0;

  Signature sig() const { return Signature{m, n}; }
  int iprime(int i) const;
  int tau(int i) const;
  std::optional<int> nu() const;
};

// Element of W(m,n) as sum f_r d_r, one coefficient polynomial per d_r.
class VectorField {
 public:
  explicit VectorField(Signature sig);
  static VectorField zero(Signature sig) { return VectorField(sig); }
  static VectorField partial_field(Signature sig, int r);  // d_r
  static VectorField term(const SuperPoly& f, int r);      // f d_r

  const Signature& sig() const { return sig_; }
  const SuperPoly& coeff(int r) const { return coeffs_[r - 1]; }
  SuperPoly& coeff(int r) { return coeffs_[r - 1]; }
  bool is_zero() const;

  // Total parity |f_r| + |d_r|, common over nonzero components.
  Parity parity() const;
  int parity_bit_or(int fallback = 0) const;
  // Common weight(f_r) - gamma_r over nonzero components; nullopt if mixed.
  // Throws for the zero field.
  std::optional<long> weight(const Weights& gamma) const;

  SuperPoly apply(const SuperPoly& f) const;  // sum f_r d_r(f)

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField scaled(const Rat& c) const;
  friend VectorField operator*(const SuperPoly& f, const VectorField& D);

  bool operator==(const VectorField& o) const;

 private:
  Signature sig_;
  std::vector<SuperPoly> coeffs_;
};

// Superderivation commutator [D,E] = D E - (-1)^{|D||E|} E D. Both arguments
// must be parity-homogeneous; callers split mixed elements first.
VectorField bracket(const VectorField& D, const VectorField& E);

// div(f_r d_r) = (-1)^{|d_r||f_r|} d_r(f_r), each coefficient homogeneous.
SuperPoly divergence(const VectorField& D);

// The named operators. Each evaluates its defining formula literally on a
// parity-homogeneous argument.
VectorField d_ij(int i, int j, const SuperPoly& f);
VectorField d_h(const SuperPoly& f, const IndexMaps& maps);
VectorField d_k(const SuperPoly& f, const IndexMaps& maps);
VectorField d_ho(const SuperPoly& f, const IndexMaps& maps);
VectorField d_ko(const SuperPoly& f, const IndexMaps& maps);

// Euler field sum_{i=1}^{2m} x_i d_i on Lambda(m,m) or Lambda(m,m+1).
VectorField euler(const Signature& sig, int m);

SuperPoly div_lambda(const SuperPoly& f, const Rat& lambda, const IndexMaps& maps);

// Dispatch to the family's presentation operator (H, K, HO, KO; SHO uses the
// HO operator and SKO the KO operator). W and S have no presentation.
VectorField d_x(Family family, const SuperPoly& f, const IndexMaps& maps);

// Right-hand side of [D_X(f), D_X(g)] =
//   D_X( D_X(f)(g) - 2 (delta_{X,K} + (-1)^{|f|} delta_{X,KO}) d_nu(f) g ),
// with SKO taking the KO delta and SHO the plain (zero-delta) form.
VectorField bracket_formula(Family family, const SuperPoly& f, const SuperPoly& g,
                            const IndexMaps& maps);

}  // namespace cartan
