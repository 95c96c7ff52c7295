#include "vectorfield.hpp"

namespace cartan {

const char* family_name(Family f) {
  switch (f) {
    case Family::W: return "W";
    case Family::S: return "S";
    case Family::H: return "H";
    case Family::K: return "K";
    case Family::HO: return "HO";
    case Family::KO: return "KO";
    case Family::SHO: return "SHO";
    case Family::SKO: return "SKO";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  static const std::pair<const char*, Family> table[] = {
      {"W", Family::W},   {"S", Family::S},   {"H", Family::H},
      {"K", Family::K},   {"HO", Family::HO}, {"KO", Family::KO},
      {"SHO", Family::SHO}, {"SKO", Family::SKO}};
  for (const auto& [nm, fam] : table)
    if (name == nm) return fam;
  return std::nullopt;
}

int IndexMaps::iprime(int i) const {
  switch (family) {
    case Family::H:
    case Family::K: {
      int r = m / 2;  // m = 2r or 2r+1
      if (i >= 1 && i <= r) return i + r;
      if (i > r && i <= 2 * r) return i - r;
      if (i > m && i <= m + n) return i;
      throw std::out_of_range("iprime: index not in the H/K domain");
    }
    case Family::HO:
    case Family::KO:
    case Family::SHO:
    case Family::SKO:
      if (i >= 1 && i <= m) return i + m;
      if (i > m && i <= 2 * m) return i - m;
      throw std::out_of_range("iprime: index not in 1..2m");
    default:
      throw std::logic_error("iprime undefined for this family");
  }
}

int IndexMaps::tau(int i) const {
  if (family != Family::H && family != Family::K)
    throw std::logic_error("tau defined only for H and K");
  int r = m / 2;
  if (i >= 1 && i <= r) return 1;
  if (i > r && i <= 2 * r) return -1;
  if (i > m && i <= m + n) return 1;
  throw std::out_of_range("tau: index out of domain");
}

std::optional<int> IndexMaps::nu() const {
  switch (family) {
    case Family::K: return m;
    case Family::KO:
    case Family::SKO: return 2 * m + 1;
    default: return std::nullopt;
  }
}

VectorField::VectorField(Signature sig) : sig_(sig) {
  coeffs_.reserve(sig.dim());
  for (int r = 0; r < sig.dim(); ++r) coeffs_.push_back(SuperPoly::zero(sig));
}

VectorField VectorField::partial_field(Signature sig, int r) {
  VectorField D(sig);
  D.coeff(r) = SuperPoly::constant(sig, 1);
  return D;
}

VectorField VectorField::term(const SuperPoly& f, int r) {
  VectorField D(f.sig());
  if (!f.sig().valid_index(r)) throw std::out_of_range("vector field component index");
  D.coeff(r) = f;
  return D;
}

bool VectorField::is_zero() const {
  for (const auto& f : coeffs_)
    if (!f.is_zero()) return false;
  return true;
}

Parity VectorField::parity() const {
  Parity result = Parity::Zero;
  for (int r = 1; r <= sig_.dim(); ++r) {
    const SuperPoly& f = coeff(r);
    if (f.is_zero()) continue;
    Parity fp = f.parity();
    if (fp == Parity::Mixed) return Parity::Mixed;
    int total = (fp == Parity::Odd ? 1 : 0) ^ (sig_.odd_index(r) ? 1 : 0);
    Parity tp = total ? Parity::Odd : Parity::Even;
    if (result == Parity::Zero)
      result = tp;
    else if (result != tp)
      return Parity::Mixed;
  }
  return result;
}

int VectorField::parity_bit_or(int fallback) const {
  switch (parity()) {
    case Parity::Even: return 0;
    case Parity::Odd: return 1;
    case Parity::Zero: return fallback;
    default: throw std::domain_error("mixed-parity vector field where homogeneous required");
  }
}

std::optional<long> VectorField::weight(const Weights& gamma) const {
  if (is_zero()) throw std::domain_error("weight of the zero field is undefined");
  std::optional<long> w;
  for (int r = 1; r <= sig_.dim(); ++r) {
    const SuperPoly& f = coeff(r);
    if (f.is_zero()) continue;
    auto fw = f.weight(gamma);
    if (!fw) return std::nullopt;
    long cw = *fw - gamma[r - 1];
    if (!w)
      w = cw;
    else if (*w != cw)
      return std::nullopt;
  }
  return w;
}

SuperPoly VectorField::apply(const SuperPoly& f) const {
  if (!(f.sig() == sig_)) throw std::invalid_argument("apply: signature mismatch");
  SuperPoly out(sig_);
  for (int r = 1; r <= sig_.dim(); ++r) {
    if (coeff(r).is_zero()) continue;
    out = out + coeff(r) * partial(r, f);
  }
  return out;
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("signature mismatch");
  VectorField out(sig_);
  for (int r = 1; r <= sig_.dim(); ++r) out.coeff(r) = coeff(r) + o.coeff(r);
  return out;
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("signature mismatch");
  VectorField out(sig_);
  for (int r = 1; r <= sig_.dim(); ++r) out.coeff(r) = coeff(r) - o.coeff(r);
  return out;
}

VectorField VectorField::operator-() const { return scaled(-1); }

VectorField VectorField::scaled(const Rat& c) const {
  VectorField out(sig_);
  for (int r = 1; r <= sig_.dim(); ++r) out.coeff(r) = coeff(r).scaled(c);
  return out;
}

VectorField operator*(const SuperPoly& f, const VectorField& D) {
  if (!(f.sig() == D.sig())) throw std::invalid_argument("signature mismatch");
  VectorField out(D.sig());
  for (int r = 1; r <= D.sig().dim(); ++r) out.coeff(r) = f * D.coeff(r);
  return out;
}

bool VectorField::operator==(const VectorField& o) const {
  return sig_ == o.sig_ && coeffs_ == o.coeffs_;
}

VectorField bracket(const VectorField& D, const VectorField& E) {
  if (!(D.sig() == E.sig())) throw std::invalid_argument("bracket: signature mismatch");
  Parity pd = D.parity(), pe = E.parity();
  if (pd == Parity::Mixed || pe == Parity::Mixed)
    throw std::domain_error("bracket: mixed-parity input; split into parity parts");
  int dbit = (pd == Parity::Odd), ebit = (pe == Parity::Odd);
  int sign = (dbit && ebit) ? -1 : 1;
  VectorField out(D.sig());
  for (int r = 1; r <= D.sig().dim(); ++r) {
    SuperPoly c = D.apply(E.coeff(r)) - E.apply(D.coeff(r)).scaled(sign);
    out.coeff(r) = c;
  }
  return out;
}

SuperPoly divergence(const VectorField& D) {
  const Signature& sig = D.sig();
  SuperPoly out(sig);
  for (int r = 1; r <= sig.dim(); ++r) {
    const SuperPoly& f = D.coeff(r);
    if (f.is_zero()) continue;
    int fb = f.parity_bit_or();  // throws on mixed
    int sign = (sig.odd_index(r) && fb) ? -1 : 1;
    out = out + partial(r, f).scaled(sign);
  }
  return out;
}

namespace {
int pbit(const Signature& sig, int r) { return sig.odd_index(r) ? 1 : 0; }
}  // namespace

VectorField d_ij(int i, int j, const SuperPoly& f) {
  const Signature& sig = f.sig();
  if (!sig.valid_index(i) || !sig.valid_index(j))
    throw std::out_of_range("d_ij: index out of range");
  int fb = f.parity_bit_or();
  int s1 = (pbit(sig, i) && pbit(sig, j)) ? -1 : 1;
  int s2 = (((pbit(sig, i) + pbit(sig, j)) & 1) && fb) ? -1 : 1;
  VectorField out(sig);
  out = VectorField::term(partial(i, f).scaled(s1), j) -
        VectorField::term(partial(j, f).scaled(s2), i);
  return out;
}

VectorField d_h(const SuperPoly& f, const IndexMaps& maps) {
  const Signature sig = maps.sig();
  if (maps.m % 2 != 0) throw std::invalid_argument("D_H requires even m");
  if (!(f.sig() == sig)) throw std::invalid_argument("signature mismatch");
  int fb = f.parity_bit_or();
  VectorField out(sig);
  for (int i = 1; i <= sig.dim(); ++i) {
    int sign = maps.tau(i) * ((pbit(sig, i) && fb) ? -1 : 1);
    SuperPoly g = partial(i, f).scaled(sign);
    if (!g.is_zero()) out = out + VectorField::term(g, maps.iprime(i));
  }
  return out;
}

VectorField d_k(const SuperPoly& f, const IndexMaps& maps) {
  const Signature sig = maps.sig();
  if (maps.m % 2 != 1) throw std::invalid_argument("D_K requires odd m");
  if (!(f.sig() == sig)) throw std::invalid_argument("signature mismatch");
  int fb = f.parity_bit_or();
  int m = maps.m;
  VectorField out(sig);
  SuperPoly trailing = f.scaled(2);
  for (int i = 1; i <= sig.dim(); ++i) {
    if (i == m) continue;
    SuperPoly xi = SuperPoly::variable(sig, i);
    SuperPoly g = xi * partial(m, f) + partial(maps.iprime(i), f).scaled(maps.tau(maps.iprime(i)));
    int sign = (pbit(sig, i) && fb) ? -1 : 1;
    g = g.scaled(sign);
    if (!g.is_zero()) out = out + VectorField::term(g, i);
    trailing = trailing - xi * partial(i, f);
  }
  out = out + VectorField::term(trailing, m);
  return out;
}

namespace {

// The HO sum over i = 1..2m; shared by D_HO and D_KO.
VectorField d_ho_sum(const SuperPoly& f, const IndexMaps& maps) {
  const Signature sig = maps.sig();
  int fb = f.parity_bit_or();
  VectorField out(sig);
  for (int i = 1; i <= 2 * maps.m; ++i) {
    int sign = (pbit(sig, i) && fb) ? -1 : 1;
    SuperPoly g = partial(i, f).scaled(sign);
    if (!g.is_zero()) out = out + VectorField::term(g, maps.iprime(i));
  }
  return out;
}

}  // namespace

VectorField d_ho(const SuperPoly& f, const IndexMaps& maps) {
  if (maps.n != maps.m) throw std::invalid_argument("D_HO requires n = m");
  if (!(f.sig() == maps.sig())) throw std::invalid_argument("signature mismatch");
  return d_ho_sum(f, maps);
}

VectorField euler(const Signature& sig, int m) {
  if (sig.dim() < 2 * m) throw std::invalid_argument("euler: signature too small");
  VectorField out(sig);
  for (int i = 1; i <= 2 * m; ++i)
    out = out + VectorField::term(SuperPoly::variable(sig, i), i);
  return out;
}

VectorField d_ko(const SuperPoly& f, const IndexMaps& maps) {
  if (maps.n != maps.m + 1) throw std::invalid_argument("D_KO requires n = m + 1");
  const Signature sig = maps.sig();
  if (!(f.sig() == sig)) throw std::invalid_argument("signature mismatch");
  int fb = f.parity_bit_or();
  int top = 2 * maps.m + 1;
  VectorField E = euler(sig, maps.m);
  VectorField out = d_ho_sum(f, maps);
  SuperPoly dtop = partial(top, f);
  if (!dtop.is_zero()) out = out + (dtop.scaled(fb ? -1 : 1)) * E;
  SuperPoly trailing = E.apply(f) - f.scaled(2);
  if (!trailing.is_zero()) out = out + VectorField::term(trailing, top);
  return out;
}

SuperPoly div_lambda(const SuperPoly& f, const Rat& lambda, const IndexMaps& maps) {
  if (maps.n != maps.m + 1)
    throw std::invalid_argument("div_lambda requires signature (m, m+1)");
  const Signature sig = maps.sig();
  if (!(f.sig() == sig)) throw std::invalid_argument("signature mismatch");
  int fb = f.parity_bit_or();
  int top = 2 * maps.m + 1;
  SuperPoly acc(sig);
  for (int i = 1; i <= maps.m; ++i) acc = acc + partial(i, partial(i + maps.m, f));
  SuperPoly dtop = partial(top, f);
  acc = acc + euler(sig, maps.m).apply(dtop) - dtop.scaled(Rat(maps.m) * lambda);
  return acc.scaled(fb ? -2 : 2);
}

VectorField d_x(Family family, const SuperPoly& f, const IndexMaps& maps) {
  switch (family) {
    case Family::H: return d_h(f, maps);
    case Family::K: return d_k(f, maps);
    case Family::HO:
    case Family::SHO: return d_ho(f, maps);
    case Family::KO:
    case Family::SKO: return d_ko(f, maps);
    default:
      throw std::invalid_argument("family has no D_X presentation");
  }
}

VectorField bracket_formula(Family family, const SuperPoly& f, const SuperPoly& g,
                            const IndexMaps& maps) {
  VectorField Df = d_x(family, f, maps);
  SuperPoly h = Df.apply(g);
  int delta_k = family == Family::K ? 1 : 0;
  int delta_ko = (family == Family::KO || family == Family::SKO) ? 1 : 0;
  if (delta_k || delta_ko) {
    int fb = f.parity_bit_or();
    long c = 2 * (delta_k + (fb ? -1 : 1) * delta_ko);
    if (c != 0) {
      int nu = *maps.nu();
      h = h - (partial(nu, f) * g).scaled(make_rat(c));
    }
  }
  return d_x(family, h, maps);
}

}  // namespace cartan
