#pragma once

#include <map>
#include <memory>

#include "linalg.hpp"
#include "vectorfield.hpp"

namespace cartan {

// A concrete algebra instance: family plus signature, with the derived data
// (weights gamma, contact index nu, depth) computed from them. lambda is the
// SKO deformation parameter and is ignored by every other family.
struct FamilyConfig {
  Family family = Family::W;
  int m = 0;
  int n = 0;
  Rat lambda = 0;
  // The degree-0 SKO generator x_{2m+1} + c*lambda*x_i*x_{i'} admits two
  // readings of c (m or n); default m, consistent with div_lambda.
  bool sko_weight_uses_n = false;

  Signature sig() const { return Signature{m, n}; }
  IndexMaps maps() const { return IndexMaps{family, m, n}; }
  std::optional<int> nu() const { return maps().nu(); }
  int depth() const { return nu() ? 2 : 1; }
  Weights gamma() const;
  void validate() const;  // throws std::invalid_argument
  std::string name() const;
};

// Basis of one graded piece X(m,n)_{[j]}; every element parity-homogeneous
// and weight-homogeneous of weight j. For the derived families (SHO, SKO),
// certified records that widening the generation window cannot grow the span.
struct GradedComponent {
  int degree = 0;
  std::vector<VectorField> basis;
  bool certified = true;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Caches graded components, their spans, and the SHO'/SKO' presentation
// components for one config. Components are built from the definitions:
// monomial fields for W, operator images for S/H/K/HO/KO, and brackets of
// divergence-free images for SHO/SKO.
class Algebra {
 public:
  explicit Algebra(FamilyConfig cfg);
  const FamilyConfig& config() const { return cfg_; }

  const GradedComponent& component(int j);  // throws for j < -depth
  FieldSpan& span(int j);                   // span of component(j)

  // SHO'(m,m) / SKO'(m,m+1;lambda) graded piece; defined for any j and empty
  // below the depth bound. Only valid for SHO/SKO configs.
  const GradedComponent& prime_component(int j);
  FieldSpan& prime_span(int j);

  // Exact membership of a parity- and weight-homogeneous field.
  bool member(const VectorField& D);
  // Membership in the divergence-zero presentation algebra (SHO/SKO only).
  bool member_prime(const VectorField& D);

  // The degree -2/-1/0 spanning sets as given in the source presentation
  // (with the recorded index corrections).
  std::vector<VectorField> bullet_generators(int j) const;

  CoordIndex& coords() { return coords_; }

 private:
  GradedComponent build_component(int j);
  GradedComponent build_prime(int j);
  FieldSpan& span_of(std::map<int, std::unique_ptr<FieldSpan>>& cache,
                     const GradedComponent& comp, int j);

  FamilyConfig cfg_;
  CoordIndex coords_;
  std::map<int, GradedComponent> comps_;
  std::map<int, GradedComponent> primes_;
  std::map<int, std::unique_ptr<FieldSpan>> spans_;
  std::map<int, std::unique_ptr<FieldSpan>> prime_spans_;
};

// Finite degree window with exact structure constants. Built by closing all
// in-window brackets over the component bases; construction fails loudly if
// a bracket escapes the span of its target component.
struct TruncatedAlgebra {
  FamilyConfig cfg;
  int jmin = 0;
  int jmax = 0;
  std::vector<GradedComponent> components;  // degree jmin..jmax
  // brackets[{i,j}][a][b] = coordinates of [e_a, e_b] (e_a in degree i,
  // e_b in degree j, i <= j) in the basis of degree i+j. Present only when
  // i+j lies in the window.
  std::map<std::pair<int, int>, std::vector<std::vector<SparseRow>>> brackets;

  const GradedComponent& comp(int j) const { return components[j - jmin]; }
  std::string serialize() const;  // versioned structured text
};

TruncatedAlgebra build_truncated(Algebra& alg, int jmax);

}  // namespace cartan
