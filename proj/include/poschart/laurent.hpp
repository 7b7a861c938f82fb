#pragma once

#include <cctype>
#include <complex>
#include <map>
#include <string>

#include "poschart/polytope.hpp"

namespace poschart {

/// Sparse Laurent polynomial: exponent vector in Z^d -> nonzero rational
/// coefficient. Terms iterate in ascending lex order of exponents, which is
/// also the canonical printing order.
class LaurentPolynomial {
 public:
  int nvars = 0;
  std::map<IntVec, Rat> terms;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(int nvars) : nvars(nvars) {}

  static LaurentPolynomial constant(int nvars, const Rat& c) {
    LaurentPolynomial p(nvars);
    if (c != 0) p.terms[IntVec(nvars)] = c;
    return p;
  }
  static LaurentPolynomial monomial(IntVec e, const Rat& c = Rat(1)) {
    LaurentPolynomial p(int(e.size()));
    if (c != 0) p.terms[std::move(e)] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_one() const {
    return terms.size() == 1 && terms.begin()->second == 1 &&
           poschart::is_zero(terms.begin()->first);
  }

  void add_term(const IntVec& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  LaurentPolynomial operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
  }
  LaurentPolynomial operator-(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
  }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r(nvars);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        IntVec e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }

  LaurentPolynomial pow(const Int& n) const {
    if (n < 0) throw InputError("negative polynomial power");
    LaurentPolynomial r = constant(nvars, 1);
    for (Int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  Rat eval(const RatVec& t) const {
    Rat total;
    for (const auto& [e, c] : terms) {
      Rat m = c;
      for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (t[i] == 0) throw PoleError("evaluation at a torus boundary point");
        Int a = abs(e[i]);
        Rat p(1);
        for (Int q = 0; q < a; ++q) p *= t[i];
        m *= (e[i] > 0) ? p : Rat(1) / p;
      }
      total += m;
    }
    return total;
  }

  std::complex<double> eval(const std::vector<std::complex<double>>& t) const {
    std::complex<double> total = 0.0;
    for (const auto& [e, c] : terms) {
      std::complex<double> m(c.convert_to<double>());
      for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        m *= std::pow(t[i], e[i].convert_to<double>());
      }
      total += m;
    }
    return total;
  }

  std::vector<RatVec> exponent_points() const {
    std::vector<RatVec> pts;
    for (const auto& [e, c] : terms) {
      RatVec p(nvars);
      for (int i = 0; i < nvars; ++i) p[i] = Rat(e[i]);
      pts.push_back(std::move(p));
    }
    return pts;
  }

  Polytope newton_polytope() const {
    if (terms.empty()) throw EmptyError("Newton polytope of the zero polynomial");
    return hull_ambient(exponent_points());
  }
};

namespace detail {

inline std::string monomial_string(const IntVec& e, const std::string& var) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += var + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + e[i].str();
  }
  return s;
}

}  // namespace detail

/// Canonical rendering: terms in ascending lex exponent order, " + " / " - "
/// separators, unit coefficients omitted.
inline std::string to_string(const LaurentPolynomial& p, const std::string& var = "t") {
  if (p.terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms) {
    Rat coeff = c;
    if (out.empty()) {
      if (coeff < 0) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += (coeff < 0) ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    std::string mono = detail::monomial_string(e, var);
    if (mono.empty())
      out += rat_to_string(coeff);
    else if (coeff == 1)
      out += mono;
    else
      out += rat_to_string(coeff) + "*" + mono;
  }
  return out;
}

/// Parses the shared polynomial grammar: rational coefficients, variables
/// var1..var<nvars>, '*', '^' with optionally negative integer exponents.
inline LaurentPolynomial parse_polynomial(const std::string& text, int nvars,
                                          const std::string& var = "t") {
  LaurentPolynomial poly(nvars);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> Int {
    skip();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || (text[start] == '-' && pos == start + 1))
      throw InputError("expected integer at position " + std::to_string(start) + " in '" + text + "'");
    return Int(text.substr(start, pos - start));
  };
  skip();
  bool first = true;
  while (pos < text.size()) {
    skip();
    Rat sign(1);
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-'))
        throw InputError("expected '+' or '-' in '" + text + "'");
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip();
    }
    first = false;
    Rat coeff = sign;
    IntVec expo(nvars);
    bool expect_factor = true;
    while (expect_factor) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        Int p = number();
        Int q(1);
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          q = number();
        }
        if (q == 0) throw InputError("zero denominator in '" + text + "'");
        coeff *= Rat(p) / Rat(q);
      } else if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string name = text.substr(start, pos - start);
        if (name != var)
          throw InputError("unexpected variable '" + name + "' (wanted '" + var + "')");
        size_t istart = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (istart == pos) throw InputError("missing variable index in '" + text + "'");
        int idx = std::stoi(text.substr(istart, pos - istart));
        if (idx < 1 || idx > nvars)
          throw InputError("variable index out of range in '" + text + "'");
        Int e(1);
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          e = number();
        }
        expo[idx - 1] += e;
      } else {
        throw InputError("unexpected character in '" + text + "'");
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      expect_factor = false;
    }
    poly.add_term(expo, coeff);
  }
  if (poly.nvars != nvars) throw InputError("parser dimension mismatch");
  return poly;
}

/// Exact division in the Laurent ring; nullopt when b does not divide a.
inline std::optional<LaurentPolynomial> laurent_divide(const LaurentPolynomial& a,
                                                       const LaurentPolynomial& b) {
  if (b.is_zero()) return std::nullopt;
  LaurentPolynomial rem = a;
  LaurentPolynomial quot(a.nvars);
  const auto& blead = *b.terms.rbegin();  // lex-max term of the divisor
  long guard = 8 * (long(a.terms.size()) + 1) * (long(b.terms.size()) + 1) + 64;
  while (!rem.is_zero()) {
    if (--guard < 0) return std::nullopt;
    const auto& rlead = *rem.terms.rbegin();
    IntVec qe(a.nvars);
    for (int i = 0; i < a.nvars; ++i) qe[i] = rlead.first[i] - blead.first[i];
    Rat qc = rlead.second / blead.second;
    quot.add_term(qe, qc);
    LaurentPolynomial sub = LaurentPolynomial::monomial(qe, qc) * b;
    rem = rem - sub;
  }
  return quot;
}

}  // namespace poschart
