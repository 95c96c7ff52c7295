#include "families.hpp"

#include <sstream>

#include "parser.hpp"

namespace cartan {

Weights FamilyConfig::gamma() const {
  Weights g = all_ones(sig());
  if (auto v = nu()) g[*v - 1] = 2;
  return g;
}

void FamilyConfig::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("m and n must be positive");
  if (n > 30) throw std::invalid_argument("n too large for the odd bitmask");
  switch (family) {
    case Family::H:
      if (m % 2 != 0) throw std::invalid_argument("H requires even m");
      break;
    case Family::K:
      if (m % 2 != 1) throw std::invalid_argument("K requires odd m");
      break;
    case Family::HO:
    case Family::SHO:
      if (n != m) throw std::invalid_argument("HO/SHO require n = m");
      break;
    case Family::KO:
    case Family::SKO:
      if (n != m + 1) throw std::invalid_argument("KO/SKO require n = m + 1");
      break;
    default:
      break;
  }
}

std::string FamilyConfig::name() const {
  std::ostringstream os;
  os << family_name(family) << "(" << m << "," << n;
  if (family == Family::SKO) os << ";" << rat_to_string(lambda);
  os << ")";
  return os.str();
}

Algebra::Algebra(FamilyConfig cfg) : cfg_(cfg) { cfg_.validate(); }

const GradedComponent& Algebra::component(int j) {
  if (j < -cfg_.depth())
    throw std::out_of_range("component degree below the depth bound");
  auto it = comps_.find(j);
  if (it == comps_.end()) it = comps_.emplace(j, build_component(j)).first;
  return it->second;
}

FieldSpan& Algebra::span_of(std::map<int, std::unique_ptr<FieldSpan>>& cache,
                            const GradedComponent& comp, int j) {
  auto it = cache.find(j);
  if (it == cache.end()) {
    auto sp = std::make_unique<FieldSpan>(&coords_);
    for (const VectorField& v : comp.basis) sp->add(v);
    it = cache.emplace(j, std::move(sp)).first;
  }
  return *it->second;
}

FieldSpan& Algebra::span(int j) { return span_of(spans_, component(j), j); }

FieldSpan& Algebra::prime_span(int j) {
  return span_of(prime_spans_, prime_component(j), j);
}

const GradedComponent& Algebra::prime_component(int j) {
  if (cfg_.family != Family::SHO && cfg_.family != Family::SKO)
    throw std::logic_error("prime components exist only for SHO/SKO");
  auto it = primes_.find(j);
  if (it == primes_.end()) it = primes_.emplace(j, build_prime(j)).first;
  return it->second;
}

GradedComponent Algebra::build_prime(int j) {
  GradedComponent out;
  out.degree = j;
  const Signature sig = cfg_.sig();
  const IndexMaps maps = cfg_.maps();
  const Weights gamma = cfg_.gamma();
  std::vector<Mono> monos = monomials_of_weight(sig, gamma, j + 2);
  FieldSpan independent(&coords_);
  for (int parity = 0; parity <= 1; ++parity) {
    std::vector<Mono> cls;
    for (const Mono& mo : monos)
      if (mo.parity_bit() == parity) cls.push_back(mo);
    if (cls.empty()) continue;
    // The defining divergence, as a linear map on this weight class.
    std::map<Mono, SparseRow> rows;  // constraint-monomial -> equation
    for (size_t c = 0; c < cls.size(); ++c) {
      SuperPoly f = SuperPoly::monomial(sig, cls[c], 1);
      SuperPoly con = cfg_.family == Family::SHO
                          ? divergence(d_ho(f, maps))
                          : div_lambda(f, cfg_.lambda, maps);
      for (const auto& [mo, v] : con.terms())
        rows[mo].emplace_back(static_cast<int>(c), v);
    }
    std::vector<SparseRow> eqs;
    eqs.reserve(rows.size());
    for (auto& [mo, r] : rows) eqs.push_back(std::move(r));
    for (const SparseRow& sol :
         nullspace_of_rows(eqs, static_cast<int>(cls.size()))) {
      SuperPoly f(sig);
      for (const auto& [c, v] : sol) f.add_term(cls[c], v);
      VectorField D = d_x(cfg_.family, f, maps);
      if (!D.is_zero() && independent.add(D)) out.basis.push_back(D);
    }
  }
  return out;
}

GradedComponent Algebra::build_component(int j) {
  GradedComponent out;
  out.degree = j;
  const Signature sig = cfg_.sig();
  const IndexMaps maps = cfg_.maps();
  const Weights gamma = cfg_.gamma();
  FieldSpan independent(&coords_);
  auto keep = [&](const VectorField& D) {
    if (!D.is_zero() && independent.add(D)) out.basis.push_back(D);
  };
  switch (cfg_.family) {
    case Family::W:
      for (int r = 1; r <= sig.dim(); ++r)
        for (const Mono& mo : monomials_of_weight(sig, gamma, j + gamma[r - 1]))
          keep(VectorField::term(SuperPoly::monomial(sig, mo, 1), r));
      break;
    case Family::S:
      for (const Mono& mo : monomials_of_weight(sig, gamma, j + 2)) {
        SuperPoly f = SuperPoly::monomial(sig, mo, 1);
        for (int p = 1; p <= sig.dim(); ++p)
          for (int q = 1; q <= sig.dim(); ++q) keep(d_ij(p, q, f));
      }
      break;
    case Family::H:
    case Family::K:
    case Family::HO:
    case Family::KO:
      for (const Mono& mo : monomials_of_weight(sig, gamma, j + 2))
        keep(d_x(cfg_.family, SuperPoly::monomial(sig, mo, 1), maps));
      break;
    case Family::SHO:
    case Family::SKO: {
      int d = cfg_.depth();
      for (int i = -d; i <= j + d; ++i)
        for (const VectorField& a : prime_component(i).basis)
          for (const VectorField& b : prime_component(j - i).basis)
            keep(bracket(a, b));
      // Widening the range one degree contributes only brackets against the
      // below-depth prime piece; certify that it vanishes.
      out.certified = prime_component(-d - 1).basis.empty();
      break;
    }
  }
  return out;
}

bool Algebra::member(const VectorField& D) {
  if (D.is_zero()) return true;
  if (D.parity() == Parity::Mixed)
    throw std::domain_error("membership requires a parity-homogeneous field");
  auto w = D.weight(cfg_.gamma());
  if (!w) throw std::domain_error("membership requires a weight-homogeneous field");
  if (cfg_.family == Family::W) return true;
  if (*w < -cfg_.depth()) return false;
  return span(static_cast<int>(*w)).contains(D);
}

bool Algebra::member_prime(const VectorField& D) {
  if (cfg_.family != Family::SHO && cfg_.family != Family::SKO)
    throw std::logic_error("prime membership exists only for SHO/SKO");
  if (D.is_zero()) return true;
  if (D.parity() == Parity::Mixed)
    throw std::domain_error("membership requires a parity-homogeneous field");
  auto w = D.weight(cfg_.gamma());
  if (!w) throw std::domain_error("membership requires a weight-homogeneous field");
  if (*w < -cfg_.depth()) return false;
  return prime_span(static_cast<int>(*w)).contains(D);
}

std::vector<VectorField> Algebra::bullet_generators(int j) const {
  const Signature sig = cfg_.sig();
  const IndexMaps maps = cfg_.maps();
  std::optional<int> nu = cfg_.nu();
  std::vector<VectorField> out;
  auto var = [&](int i) { return SuperPoly::variable(sig, i); };
  auto push = [&](const VectorField& D) {
    if (!D.is_zero()) out.push_back(D);
  };
  bool presented = cfg_.family != Family::W && cfg_.family != Family::S;
  switch (j) {
    case -2:
      if (!nu) throw std::invalid_argument("no degree -2 piece for this family");
      push(d_x(cfg_.family, SuperPoly::constant(sig, 1), maps));
      return out;
    case -1:
      if (!presented) {
        for (int i = 1; i <= sig.dim(); ++i)
          push(VectorField::partial_field(sig, i));
      } else {
        for (int i = 1; i <= sig.dim(); ++i)
          if (!(nu && *nu == i)) push(d_x(cfg_.family, var(i), maps));
      }
      return out;
    case 0:
      break;
    default:
      throw std::invalid_argument("spanning sets are given for degrees -2..0");
  }
  switch (cfg_.family) {
    case Family::W:
      for (int i = 1; i <= sig.dim(); ++i)
        for (int k = 1; k <= sig.dim(); ++k)
          push(VectorField::term(var(i), k));
      break;
    case Family::S:
      for (int i = 1; i <= sig.dim(); ++i)
        for (int k = 1; k <= sig.dim(); ++k) {
          if (i == k) continue;
          push(VectorField::term(var(i), k));
          // Supertrace-zero diagonal: the sign flips when exactly one of the
          // two indices is odd, since div(x_k d_k) = -1 there.
          VectorField diag = sig.odd_index(i) == sig.odd_index(k)
                                 ? VectorField::term(var(i), i) -
                                       VectorField::term(var(k), k)
                                 : VectorField::term(var(i), i) +
                                       VectorField::term(var(k), k);
          push(diag);
        }
      break;
    case Family::H:
    case Family::K:
    case Family::HO:
    case Family::KO:
      for (int i = 1; i <= sig.dim(); ++i)
        for (int k = i; k <= sig.dim(); ++k) {
          if ((nu && *nu == i) || (nu && *nu == k)) continue;
          push(d_x(cfg_.family, var(i) * var(k), maps));
        }
      if (cfg_.family == Family::K) push(d_x(cfg_.family, var(cfg_.m), maps));
      if (cfg_.family == Family::KO)
        push(d_x(cfg_.family, var(2 * cfg_.m + 1), maps));
      break;
    case Family::SHO:
    case Family::SKO: {
      int top = 2 * cfg_.m;  // indices 1..2m; nu (SKO) excluded from pairs
      for (int i = 1; i <= top; ++i)
        for (int k = 1; k <= top; ++k) {
          if (i != maps.iprime(k)) push(d_x(cfg_.family, var(i) * var(k), maps));
          if (i < k)
            push(d_x(cfg_.family,
                     var(i) * var(maps.iprime(i)) - var(k) * var(maps.iprime(k)),
                     maps));
        }
      if (cfg_.family == Family::SKO) {
        Rat c = Rat(cfg_.sko_weight_uses_n ? cfg_.n : cfg_.m) * cfg_.lambda;
        for (int i = 1; i <= top; ++i)
          push(d_x(cfg_.family,
                   var(2 * cfg_.m + 1) +
                       (var(i) * var(maps.iprime(i))).scaled(c),
                   maps));
      }
      break;
    }
  }
  return out;
}

TruncatedAlgebra build_truncated(Algebra& alg, int jmax) {
  TruncatedAlgebra out;
  out.cfg = alg.config();
  out.jmin = -out.cfg.depth();
  out.jmax = jmax;
  if (jmax < out.jmin) throw std::invalid_argument("empty degree window");
  for (int j = out.jmin; j <= jmax; ++j) out.components.push_back(alg.component(j));
  for (int i = out.jmin; i <= jmax; ++i)
    for (int j = i; j <= jmax; ++j) {
      int target = i + j;
      if (target > jmax) continue;
      const auto& A = out.comp(i).basis;
      const auto& B = out.comp(j).basis;
      std::vector<std::vector<SparseRow>> table(A.size());
      for (size_t a = 0; a < A.size(); ++a) {
        table[a].resize(B.size());
        for (size_t b = 0; b < B.size(); ++b) {
          VectorField br = bracket(A[a], B[b]);
          if (br.is_zero()) continue;
          if (target < out.jmin) {
            std::ostringstream os;
            os << out.cfg.name() << ": bracket of degrees (" << i << "," << j
               << ") basis (" << a << "," << b << ") lands below the depth bound";
            throw std::runtime_error(os.str());
          }
          auto coords = alg.span(target).coords_of(br);
          if (!coords) {
            std::ostringstream os;
            os << out.cfg.name() << ": closure violation at degrees (" << i << ","
               << j << ") basis (" << a << "," << b << ")";
            throw std::runtime_error(os.str());
          }
          SparseRow sparse;
          for (size_t k = 0; k < coords->size(); ++k)
            if (!is_zero((*coords)[k]))
              sparse.emplace_back(static_cast<int>(k), (*coords)[k]);
          table[a][b] = std::move(sparse);
        }
      }
      if (target >= out.jmin) out.brackets[{i, j}] = std::move(table);
    }
  return out;
}

std::string TruncatedAlgebra::serialize() const {
  std::ostringstream os;
  os << "cartan-truncated-algebra v1\n";
  os << "config " << cfg.name() << "\n";
  os << "window " << jmin << " " << jmax << "\n";
  for (const GradedComponent& c : components) {
    os << "component " << c.degree << " dim " << c.dim() << "\n";
    for (int k = 0; k < c.dim(); ++k)
      os << "  e" << k << " = " << print_field(c.basis[k]) << "\n";
  }
  for (const auto& [degs, table] : brackets) {
    os << "bracket " << degs.first << " " << degs.second << "\n";
    for (size_t a = 0; a < table.size(); ++a)
      for (size_t b = 0; b < table[a].size(); ++b) {
        if (table[a][b].empty()) continue;
        os << "  " << a << " " << b << " :";
        for (const auto& [k, v] : table[a][b])
          os << " " << rat_to_string(v) << "*e" << k;
        os << "\n";
      }
  }
  return os.str();
}

}  // namespace cartan
