#include "superpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  size_t slash = text.find('/');
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) return std::nullopt;
      Rat q(text);
      q.canonicalize();
      return q;
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    Rat q(text);
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

int Mono::total_degree() const {
  int d = odd_count();
  for (int e : even) d += e;
  return d;
}

long Mono::weight(const Weights& gamma) const {
  long w = 0;
  for (size_t i = 0; i < even.size(); ++i) w += static_cast<long>(even[i]) * gamma[i];
  uint32_t bits = odd;
  int m = static_cast<int>(even.size());
  while (bits) {
    int b = __builtin_ctz(bits);
    bits &= bits - 1;
    w += gamma[m + b];
  }
  return w;
}

bool Mono::is_one() const {
  if (odd) return false;
  for (int e : even)
    if (e) return false;
  return true;
}

bool Mono::operator<(const Mono& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  if (even != o.even) return even < o.even;
  return odd < o.odd;
}

Mono mono_one(const Signature& sig) {
  Mono m;
  m.even.assign(sig.m, 0);
  return m;
}

Mono mono_var(const Signature& sig, int index) {
  if (!sig.valid_index(index)) throw std::out_of_range("variable index out of range");
  Mono m = mono_one(sig);
  if (sig.odd_index(index))
    m.odd = 1u << (index - sig.m - 1);
  else
    m.even[index - 1] = 1;
  return m;
}

MonoProduct mono_mul(const Mono& a, const Mono& b) {
  if (a.even.size() != b.even.size())
    throw std::invalid_argument("mono_mul: signature mismatch");
  MonoProduct out;
  if (a.odd & b.odd) return out;  // repeated odd factor
  out.mono.even.resize(a.even.size());
  for (size_t i = 0; i < a.even.size(); ++i) out.mono.even[i] = a.even[i] + b.even[i];
  out.mono.odd = a.odd | b.odd;
  // Inversions when sorting (a-list, b-list): each factor of b passes over the
  // factors of a with larger index.
  int inv = 0;
  uint32_t bits = b.odd;
  while (bits) {
    int j = __builtin_ctz(bits);
    bits &= bits - 1;
    inv += __builtin_popcount(a.odd >> (j + 1));
  }
  out.sign = (inv & 1) ? -1 : 1;
  return out;
}

SuperPoly SuperPoly::constant(Signature sig, const Rat& c) {
  SuperPoly p(sig);
  p.add_term(mono_one(sig), c);
  return p;
}

SuperPoly SuperPoly::variable(Signature sig, int index) {
  SuperPoly p(sig);
  p.add_term(mono_var(sig, index), 1);
  return p;
}

SuperPoly SuperPoly::monomial(Signature sig, const Mono& mono, const Rat& c) {
  SuperPoly p(sig);
  p.add_term(mono, c);
  return p;
}

Parity SuperPoly::parity() const {
  if (terms_.empty()) return Parity::Zero;
  int bit = terms_.begin()->first.parity_bit();
  for (const auto& [mono, c] : terms_)
    if (mono.parity_bit() != bit) return Parity::Mixed;
  return bit ? Parity::Odd : Parity::Even;
}

int SuperPoly::parity_bit_or(int fallback) const {
  switch (parity()) {
    case Parity::Even: return 0;
    case Parity::Odd: return 1;
    case Parity::Zero: return fallback;
    default: throw std::domain_error("mixed-parity element where homogeneous required");
  }
}

std::optional<long> SuperPoly::weight(const Weights& gamma) const {
  if (terms_.empty()) throw std::domain_error("weight of the zero polynomial is undefined");
  std::optional<long> w;
  for (const auto& [mono, c] : terms_) {
    long mw = mono.weight(gamma);
    if (!w)
      w = mw;
    else if (*w != mw)
      return std::nullopt;
  }
  return w;
}

void SuperPoly::add_term(const Mono& mono, const Rat& c) {
  if (cartan::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (cartan::is_zero(it->second)) terms_.erase(it);
  }
}

void SuperPoly::check_same_sig(const SuperPoly& o) const {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("signature mismatch");
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
  check_same_sig(o);
  SuperPoly out = *this;
  for (const auto& [mono, c] : o.terms_) out.add_term(mono, c);
  return out;
}

SuperPoly SuperPoly::operator-(const SuperPoly& o) const {
  check_same_sig(o);
  SuperPoly out = *this;
  for (const auto& [mono, c] : o.terms_) out.add_term(mono, -c);
  return out;
}

SuperPoly SuperPoly::operator-() const { return scaled(-1); }

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
  check_same_sig(o);
  SuperPoly out(sig_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      MonoProduct p = mono_mul(ma, mb);
      if (p.sign == 0) continue;
      out.add_term(p.mono, ca * cb * p.sign);
    }
  return out;
}

SuperPoly SuperPoly::scaled(const Rat& c) const {
  SuperPoly out(sig_);
  if (cartan::is_zero(c)) return out;
  for (const auto& [mono, coef] : terms_) out.terms_.emplace(mono, coef * c);
  return out;
}

bool SuperPoly::operator==(const SuperPoly& o) const {
  return sig_ == o.sig_ && terms_ == o.terms_;
}

SuperPoly partial(int r, const SuperPoly& p) {
  const Signature& sig = p.sig();
  if (!sig.valid_index(r)) throw std::out_of_range("partial: index out of range");
  SuperPoly out(sig);
  if (!sig.odd_index(r)) {
    int i = r - 1;
    for (const auto& [mono, c] : p.terms()) {
      if (mono.even[i] == 0) continue;
      Mono d = mono;
      d.even[i] -= 1;
      out.add_term(d, c * mono.even[i]);
    }
  } else {
    int bit = r - sig.m - 1;
    for (const auto& [mono, c] : p.terms()) {
      if (!(mono.odd >> bit & 1u)) continue;
      // Sign (-1)^{position of x_r in the ascending factor list}.
      int below = __builtin_popcount(mono.odd & ((1u << bit) - 1));
      Mono d = mono;
      d.odd &= ~(1u << bit);
      out.add_term(d, (below & 1) ? -c : c);
    }
  }
  return out;
}

Weights all_ones(const Signature& sig) { return Weights(sig.dim(), 1); }

namespace {

void enumerate_even(const Signature& sig, const Weights& gamma, int idx, int remaining,
                    Mono& cur, std::vector<Mono>& out) {
  if (idx == sig.m) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  int g = gamma[idx];
  for (int e = 0; e * g <= remaining; ++e) {
    cur.even[idx] = e;
    enumerate_even(sig, gamma, idx + 1, remaining - e * g, cur, out);
  }
  cur.even[idx] = 0;
}

}  // namespace

std::vector<Mono> monomials_of_weight(const Signature& sig, const Weights& gamma,
                                      int w) {
  std::vector<Mono> out;
  if (w < 0) return out;
  for (uint32_t mask = 0; mask < (1u << sig.n); ++mask) {
    int ow = 0;
    for (int b = 0; b < sig.n; ++b)
      if (mask >> b & 1u) ow += gamma[sig.m + b];
    if (ow > w) continue;
    Mono cur = mono_one(sig);
    cur.odd = mask;
    enumerate_even(sig, gamma, 0, w - ow, cur, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SuperPoly random_homogeneous(const Signature& sig, int parity_bit, int max_weight,
                             Rng& rng) {
  SuperPoly out(sig);
  if (max_weight < parity_bit) return out;  // no odd elements below weight 1
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    // Odd part first: size s with s mod 2 == parity_bit.
    int max_s = std::min(sig.n, max_weight);
    std::vector<int> sizes;
    for (int s = parity_bit; s <= max_s; s += 2) sizes.push_back(s);
    if (sizes.empty()) continue;
    int s = sizes[rng() % sizes.size()];
    Mono mono = mono_one(sig);
    while (mono.odd_count() < s) mono.odd |= 1u << (rng() % sig.n);
    int budget = max_weight - s;
    int deg = budget > 0 ? static_cast<int>(rng() % (budget + 1)) : 0;
    for (int d = 0; d < deg; ++d) mono.even[rng() % sig.m] += 1;
    static const long nums[] = {1, -1, 2, -2, 3, -3, 1, -1};
    static const long dens[] = {1, 1, 1, 1, 1, 1, 2, 2};
    int pick = static_cast<int>(rng() % 8);
    out.add_term(mono, make_rat(nums[pick], dens[pick]));
  }
  return out;
}

}  // namespace cartan
