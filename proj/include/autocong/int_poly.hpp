#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autocong/error.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/modulus.hpp"

namespace autocong {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial over Z, used for fixture definitions before reduction mod p^alpha.
class IntPoly {
 public:
  using Terms = std::map<ExponentVector, BigInt>;

  IntPoly() = default;
  explicit IntPoly(std::size_t arity) : k_(arity) {}

  static IntPoly constant(std::size_t arity, BigInt c) {
    IntPoly r(arity);
    if (c != 0) r.terms_[ExponentVector(arity, 0)] = std::move(c);
    return r;
  }
  static IntPoly variable(std::size_t arity, std::size_t var) {
    if (var >= arity) fail(ErrorCode::ArityMismatch, "variable index out of range");
    IntPoly r(arity);
    ExponentVector e(arity, 0);
    e[var] = 1;
    r.terms_[e] = 1;
    return r;
  }

  std::size_t arity() const noexcept { return k_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  BigInt coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  BigInt constant_term() const { return coefficient(ExponentVector(k_, 0)); }

  long degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max<long>(d, e.at(var));
    return d;
  }
  long min_degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = d < 0 ? e.at(var) : std::min<long>(d, e.at(var));
    return d;
  }

  void add_term(const ExponentVector& e, const BigInt& c) {
    if (e.size() != k_) fail(ErrorCode::ArityMismatch, "term arity");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) {
    check(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) {
    check(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    check(a, b);
    IntPoly r(a.k_);
    ExponentVector e(a.k_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.k_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.k_ == b.k_ && a.terms_ == b.terms_; }

  IntPoly pow(unsigned e) const {
    IntPoly r = constant(k_, 1), base = *this;
    while (e) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  /// Replaces variable `var` by the polynomial `g` (same arity).
  IntPoly substitute(std::size_t var, const IntPoly& g) const {
    check(*this, g);
    long d = degree_in(var);
    std::vector<IntPoly> powers;
    powers.push_back(constant(k_, 1));
    for (long i = 1; i <= d; ++i) powers.push_back(powers.back() * g);
    IntPoly r(k_);
    for (const auto& [e, c] : terms_) {
      ExponentVector rest = e;
      rest[var] = 0;
      IntPoly mono(k_);
      mono.terms_[rest] = c;
      r = r + mono * powers[e[var]];
    }
    return r;
  }

  /// Divides out var^shift; every term must be divisible.
  IntPoly divide_by_power(std::size_t var, unsigned shift) const {
    IntPoly r(k_);
    for (const auto& [e, c] : terms_) {
      if (e[var] < shift) fail(ErrorCode::InvalidArgument, "polynomial is not divisible by the requested power");
      ExponentVector f = e;
      f[var] -= shift;
      r.terms_[f] = c;
    }
    return r;
  }

  /// Greatest common divisor of the coefficients (positive), 0 for the zero polynomial.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, c);
    return boost::multiprecision::abs(g);
  }

  IntPoly divide_exact(const BigInt& d) const {
    IntPoly r(k_);
    for (const auto& [e, c] : terms_) {
      if (c % d != 0) fail(ErrorCode::InvalidArgument, "coefficient not divisible");
      r.terms_[e] = c / d;
    }
    return r;
  }

  ModPoly reduce(const ModulusSpec& m) const {
    const BigInt mod = m.modulus();
    std::vector<std::pair<ExponentVector, Residue>> out;
    for (const auto& [e, c] : terms_) {
      BigInt r = c % mod;
      if (r < 0) r += mod;
      out.emplace_back(e, static_cast<Residue>(r));
    }
    return ModPoly::from_terms(k_, m, out);
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      BigInt a = boost::multiprecision::abs(c);
      std::string mono;
      for (std::size_t i = 0; i < k_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (first) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (mono.empty()) {
        s += a.str();
      } else if (a == 1) {
        s += mono;
      } else {
        s += a.str() + "*" + mono;
      }
    }
    return s;
  }

 private:
  static void check(const IntPoly& a, const IntPoly& b) {
    if (a.k_ != b.k_) fail(ErrorCode::ArityMismatch, "polynomial arities differ");
  }

  std::size_t k_ = 0;
  Terms terms_;
};

/// Default variable names: x, y for up to two variables, x1..xk beyond.
inline std::vector<std::string> default_variable_names(std::size_t arity) {
  if (arity == 1) return {"x"};
  if (arity == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::vector<std::string> names) : text_(text), names_(std::move(names)) {}

  IntPoly parse() {
    IntPoly r = expression();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expression() {
    IntPoly r = term();
    for (;;) {
      if (accept('+')) {
        r = r + term();
      } else if (accept('-')) {
        r = r - term();
      } else {
        return r;
      }
    }
  }

  IntPoly term() {
    IntPoly r = unary();
    while (accept('*')) r = r * unary();
    return r;
  }

  IntPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  IntPoly power() {
    IntPoly base = primary();
    if (accept('^')) {
      skip();
      std::string digits = read_digits();
      if (digits.empty()) error("expected exponent");
      if (digits.size() > 6) error("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  IntPoly primary() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      IntPoly r = expression();
      if (!accept(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly::constant(names_.size(), BigInt(read_digits()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return IntPoly::variable(names_.size(), i);
      }
      // x1..xk always name the variables positionally.
      if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        std::size_t i = std::stoul(name.substr(1));
        if (i >= 1 && i <= names_.size()) return IntPoly::variable(names_.size(), i - 1);
      }
      pos_ = start;
      error("unknown variable '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses integer polynomials: integer literals, named variables, + - * ^ and
/// parentheses. Multiplication must be written explicitly.
inline IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& names) {
  return detail::PolyParser(text, names).parse();
}

inline IntPoly parse_int_poly(std::string_view text, std::size_t arity) {
  return parse_int_poly(text, default_variable_names(arity));
}

inline ModPoly parse_mod_poly(std::string_view text, std::size_t arity, const ModulusSpec& m) {
  return parse_int_poly(text, arity).reduce(m);
}

}  // namespace autocong
