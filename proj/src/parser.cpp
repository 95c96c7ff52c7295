#include "parser.hpp"

#include <cctype>
#include <sstream>

namespace cartan {

namespace {

// Monomial factor string in canonical order: even variables by index with
// exponents, then odd variables ascending, then an optional p<r> factor.
std::string mono_factors(const Mono& mono, const Signature& sig, int r) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "*";
    first = false;
  };
  for (int i = 0; i < sig.m; ++i) {
    if (mono.even[i] == 0) continue;
    sep();
    os << "x" << i + 1;
    if (mono.even[i] > 1) os << "^" << mono.even[i];
  }
  for (int j = sig.m + 1; j <= sig.dim(); ++j)
    if (mono.has_odd(j, sig.m)) {
      sep();
      os << "x" << j;
    }
  if (r > 0) {
    sep();
    os << "p" << r;
  }
  return os.str();
}

void print_term(std::ostringstream& os, bool& first, const Rat& c,
                const std::string& factors) {
  Rat a = c < 0 ? Rat(-c) : c;
  if (first)
    os << (c < 0 ? "-" : "");
  else
    os << (c < 0 ? " - " : " + ");
  first = false;
  if (factors.empty())
    os << rat_to_string(a);
  else if (a == 1)
    os << factors;
  else
    os << rat_to_string(a) << "*" << factors;
}

}  // namespace

std::string print_poly(const SuperPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : p.terms())
    print_term(os, first, c, mono_factors(mono, p.sig(), 0));
  return os.str();
}

std::string print_field(const VectorField& D) {
  if (D.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int r = 1; r <= D.sig().dim(); ++r)
    for (const auto& [mono, c] : D.coeff(r).terms())
      print_term(os, first, c, mono_factors(mono, D.sig(), r));
  return os.str();
}

std::string print_value(const EvalValue& v) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, SuperPoly>)
          return print_poly(x);
        else
          return print_field(x);
      },
      v);
}

namespace {

enum class Tok { End, Number, Var, Partial, Head, Plus, Minus, Star, Caret,
                 LParen, RParen, Comma, Semi, Slash };

struct Token {
  Tok kind = Tok::End;
  size_t offset = 0;
  std::string text;  // head name
  long value = 0;    // number or index
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }
  const Token& cur() const { return cur_; }
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    cur_ = Token{};
    cur_.offset = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      cur_.kind = k;
      ++pos_;
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case '/': return single(Tok::Slash);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      cur_.kind = Tok::Number;
      try {
        cur_.value = std::stol(text_.substr(start, pos_ - start));
      } catch (const std::out_of_range&) {
        throw ParseError(start, "numeric literal out of range");
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      auto indexed = [&](char prefix) {
        if (word.size() < 2 || word[0] != prefix) return false;
        for (size_t i = 1; i < word.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(word[i]))) return false;
        cur_.value = std::stol(word.substr(1));
        return true;
      };
      if (indexed('x')) {
        cur_.kind = Tok::Var;
        return;
      }
      if (indexed('p')) {
        cur_.kind = Tok::Partial;
        return;
      }
      static const char* heads[] = {"D_H",  "D_K", "D_HO",      "D_KO",
                                    "D",    "div", "div_lambda", "bracket"};
      for (const char* h : heads)
        if (word == h) {
          cur_.kind = Tok::Head;
          cur_.text = word;
          return;
        }
      throw ParseError(start, "unknown identifier '" + word + "'");
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  Parser(const std::string& text, const EvalContext& ctx)
      : lex_(text), ctx_(ctx), sig_(ctx.sig()) {}

  EvalValue parse() {
    EvalValue v = sum();
    expect(Tok::End, "end of input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(lex_.cur().offset, msg);
  }
  void expect(Tok k, const std::string& what) {
    if (lex_.cur().kind != k) fail("expected " + what);
  }
  void eat(Tok k, const std::string& what) {
    expect(k, what);
    lex_.advance();
  }

  static bool is_poly(const EvalValue& v) {
    return std::holds_alternative<SuperPoly>(v);
  }

  EvalValue sum() {
    EvalValue acc = product();
    while (lex_.cur().kind == Tok::Plus || lex_.cur().kind == Tok::Minus) {
      bool minus = lex_.cur().kind == Tok::Minus;
      size_t at = lex_.cur().offset;
      lex_.advance();
      EvalValue rhs = product();
      if (is_poly(acc) != is_poly(rhs))
        throw ParseError(at, "cannot add a polynomial and a vector field");
      if (is_poly(acc)) {
        const SuperPoly& b = std::get<SuperPoly>(rhs);
        acc = minus ? std::get<SuperPoly>(acc) - b : std::get<SuperPoly>(acc) + b;
      } else {
        const VectorField& b = std::get<VectorField>(rhs);
        acc = minus ? std::get<VectorField>(acc) - b
                    : std::get<VectorField>(acc) + b;
      }
    }
    return acc;
  }

  EvalValue product() {
    EvalValue acc = unary();
    while (lex_.cur().kind == Tok::Star) {
      size_t at = lex_.cur().offset;
      lex_.advance();
      EvalValue rhs = unary();
      if (is_poly(acc) && is_poly(rhs))
        acc = std::get<SuperPoly>(acc) * std::get<SuperPoly>(rhs);
      else if (is_poly(acc))
        acc = std::get<SuperPoly>(acc) * std::get<VectorField>(rhs);
      else
        throw ParseError(at, "a vector field may only be multiplied on the left "
                             "by a polynomial");
    }
    return acc;
  }

  EvalValue unary() {
    if (lex_.cur().kind == Tok::Minus) {
      lex_.advance();
      EvalValue v = unary();
      if (is_poly(v)) return -std::get<SuperPoly>(v);
      return -std::get<VectorField>(v);
    }
    return power();
  }

  EvalValue power() {
    EvalValue base = atom();
    if (lex_.cur().kind != Tok::Caret) return base;
    size_t at = lex_.cur().offset;
    lex_.advance();
    expect(Tok::Number, "an exponent");
    long e = lex_.cur().value;
    lex_.advance();
    if (!is_poly(base)) throw ParseError(at, "cannot exponentiate a vector field");
    SuperPoly b = std::get<SuperPoly>(base);
    SuperPoly out = SuperPoly::constant(sig_, 1);
    for (long i = 0; i < e; ++i) out = out * b;
    return out;
  }

  Rat rational_literal() {
    expect(Tok::Number, "a number");
    long num = lex_.cur().value;
    lex_.advance();
    if (lex_.cur().kind != Tok::Slash) return Rat(num);
    lex_.advance();
    expect(Tok::Number, "a denominator");
    long den = lex_.cur().value;
    if (den == 0) fail("zero denominator");
    lex_.advance();
    return make_rat(num, den);
  }

  int index_literal() {
    expect(Tok::Number, "an index");
    long i = lex_.cur().value;
    if (!sig_.valid_index(static_cast<int>(i)))
      fail("index out of range for this signature");
    lex_.advance();
    return static_cast<int>(i);
  }

  SuperPoly poly_arg(size_t at, EvalValue v) {
    if (!is_poly(v))
      throw ParseError(at, "this operator takes a polynomial argument");
    return std::get<SuperPoly>(v);
  }

  EvalValue head(const std::string& name, size_t at) {
    eat(Tok::LParen, "'('");
    EvalValue out = SuperPoly::zero(sig_);
    try {
      if (name == "D") {
        int i = index_literal();
        eat(Tok::Comma, "','");
        int j = index_literal();
        eat(Tok::Semi, "';'");
        out = d_ij(i, j, poly_arg(at, sum()));
      } else if (name == "div") {
        EvalValue v = sum();
        if (is_poly(v)) throw ParseError(at, "div takes a vector field");
        out = EvalValue(divergence(std::get<VectorField>(v)));
      } else if (name == "div_lambda") {
        Rat lam = rational_literal();
        eat(Tok::Semi, "';'");
        IndexMaps maps{Family::SKO, ctx_.m, ctx_.n};
        out = EvalValue(div_lambda(poly_arg(at, sum()), lam, maps));
      } else if (name == "bracket") {
        EvalValue a = sum();
        eat(Tok::Comma, "','");
        EvalValue b = sum();
        if (is_poly(a) || is_poly(b))
          throw ParseError(at, "bracket takes two vector fields");
        out = bracket(std::get<VectorField>(a), std::get<VectorField>(b));
      } else {
        Family fam = name == "D_H"    ? Family::H
                     : name == "D_K"  ? Family::K
                     : name == "D_HO" ? Family::HO
                                      : Family::KO;
        IndexMaps maps{fam, ctx_.m, ctx_.n};
        out = d_x(fam, poly_arg(at, sum()), maps);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(at, e.what());
    }
    eat(Tok::RParen, "')'");
    return out;
  }

  EvalValue atom() {
    const Token t = lex_.cur();
    switch (t.kind) {
      case Tok::Number:
        return EvalValue(SuperPoly::constant(sig_, rational_literal()));
      case Tok::Var:
        if (!sig_.valid_index(static_cast<int>(t.value)))
          fail("variable index out of range for this signature");
        lex_.advance();
        return EvalValue(SuperPoly::variable(sig_, static_cast<int>(t.value)));
      case Tok::Partial:
        if (!sig_.valid_index(static_cast<int>(t.value)))
          fail("partial index out of range for this signature");
        lex_.advance();
        return EvalValue(VectorField::partial_field(sig_, static_cast<int>(t.value)));
      case Tok::Head: {
        lex_.advance();
        return head(t.text, t.offset);
      }
      case Tok::LParen: {
        lex_.advance();
        EvalValue v = sum();
        eat(Tok::RParen, "')'");
        return v;
      }
      default:
        fail("expected an expression");
    }
  }

  Lexer lex_;
  EvalContext ctx_;
  Signature sig_;
};

}  // namespace

EvalValue parse_expression(const std::string& text, const EvalContext& ctx) {
  if (ctx.m < 1 || ctx.n < 1)
    throw ParseError(0, "context requires positive m and n");
  return Parser(text, ctx).parse();
}

}  // namespace cartan
