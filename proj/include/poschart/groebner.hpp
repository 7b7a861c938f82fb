#pragma once

#include <cstdint>
#include <deque>

#include "poschart/chart.hpp"

namespace poschart {

namespace gb {

using Expo = std::vector<int32_t>;

inline int total_degree(const Expo& e) {
  int d = 0;
  for (int32_t x : e) d += x;
  return d;
}

}  // namespace gb

/// Monomial order tag. Block orders eliminate the last `elim_tail`
/// variables: tail degrevlex first, head degrevlex as tie break.
struct MonomialOrder {
  enum Kind { Degrevlex, Lex, Block } kind = Degrevlex;
  int elim_tail = 0;

  // -1 if a < b, 0 if equal, 1 if a > b
  int cmp(const gb::Expo& a, const gb::Expo& b) const {
    switch (kind) {
      case Lex: {
        for (size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      }
      case Degrevlex:
        return cmp_degrevlex(a, b, 0, int(a.size()));
      case Block: {
        int n = int(a.size());
        int split = n - elim_tail;
        int tail = cmp_degrevlex(a, b, split, n);
        if (tail != 0) return tail;
        return cmp_degrevlex(a, b, 0, split);
      }
    }
    return 0;
  }

 private:
  static int cmp_degrevlex(const gb::Expo& a, const gb::Expo& b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (int i = hi - 1; i >= lo; --i)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;  // reverse lex
    return 0;
  }
};

namespace gb {

struct Term {
  Expo e;
  Rat c;
};

/// Terms kept sorted descending in the active order; leading term first.
struct Poly {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
};

inline Poly make_poly(std::vector<Term> terms, const MonomialOrder& ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.cmp(a.e, b.e) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (t.c == 0) continue;
    if (!p.terms.empty() && p.terms.back().e == t.e)
      p.terms.back().c += t.c;
    else
      p.terms.push_back(std::move(t));
    if (!p.terms.empty() && p.terms.back().c == 0) p.terms.pop_back();
  }
  return p;
}

inline bool divides(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Expo quotient(const Expo& a, const Expo& b) {
  Expo q(a.size());
  for (size_t i = 0; i < a.size(); ++i) q[i] = a[i] - b[i];
  return q;
}

inline Expo lcm(const Expo& a, const Expo& b) {
  Expo m(a.size());
  for (size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

inline bool coprime(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// p - coeff * x^shift * q, merged in order
inline Poly subtract_scaled(const Poly& p, const Rat& coeff, const Expo& shift, const Poly& q,
                            const MonomialOrder& ord) {
  Poly r;
  r.terms.reserve(p.terms.size() + q.terms.size());
  size_t i = 0, j = 0;
  while (i < p.terms.size() || j < q.terms.size()) {
    if (j == q.terms.size()) {
      r.terms.push_back(p.terms[i++]);
      continue;
    }
    Expo qe(q.terms[j].e.size());
    for (size_t v = 0; v < qe.size(); ++v) qe[v] = q.terms[j].e[v] + shift[v];
    Rat qc = -coeff * q.terms[j].c;
    if (i == p.terms.size()) {
      r.terms.push_back({std::move(qe), std::move(qc)});
      ++j;
      continue;
    }
    int c = ord.cmp(p.terms[i].e, qe);
    if (c > 0) {
      r.terms.push_back(p.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back({std::move(qe), std::move(qc)});
      ++j;
    } else {
      Rat sum = p.terms[i].c + qc;
      if (sum != 0) r.terms.push_back({p.terms[i].e, std::move(sum)});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace gb

/// Budgets for the Buchberger loop; exceeding any raises ResourceLimit.
/// max_work caps the cumulative term-merge operations so that runaway
/// reductions fail in bounded time rather than by wall clock.
struct GroebnerBudget {
  long max_pairs = 200000;
  long max_terms = 100000;
  long max_work = 400'000'000;
};

/// Ideal presentation: generator list plus the monomial order used for
/// basis computations. A computed basis is reduced and monic.
struct PolyIdeal {
  int num_vars = 0;
  std::vector<gb::Poly> generators;
  MonomialOrder order;
  GroebnerBudget budget;

  static PolyIdeal from_strings(const std::vector<std::string>& gens, int nvars,
                                const std::string& var = "y",
                                MonomialOrder ord = MonomialOrder{}) {
    PolyIdeal ideal;
    ideal.num_vars = nvars;
    ideal.order = ord;
    for (const auto& s : gens) {
      LaurentPolynomial p = parse_polynomial(s, nvars, var);
      std::vector<gb::Term> terms;
      for (const auto& [e, c] : p.terms) {
        gb::Expo ge(nvars);
        for (int i = 0; i < nvars; ++i) {
          if (e[i] < 0) throw InputError("ideal generators must be polynomials");
          ge[i] = int32_t(e[i].convert_to<long>());
        }
        terms.push_back({std::move(ge), c});
      }
      ideal.generators.push_back(gb::make_poly(std::move(terms), ord));
    }
    return ideal;
  }
};

/// Defining ideal of a chart: generators f_i^h - 1 over the Cox variables.
inline PolyIdeal chart_ideal(const PositiveChart& chart, MonomialOrder ord = MonomialOrder{}) {
  PolyIdeal ideal;
  ideal.num_vars = chart.n;
  ideal.order = ord;
  for (const auto& s : chart.sections) {
    std::vector<gb::Term> terms;
    for (const auto& [e, c] : s.homog.terms) {
      gb::Expo ge(chart.n);
      for (int i = 0; i < chart.n; ++i) ge[i] = int32_t(e[i].convert_to<long>());
      terms.push_back({std::move(ge), c});
    }
    terms.push_back({gb::Expo(chart.n, 0), Rat(-1)});
    ideal.generators.push_back(gb::make_poly(std::move(terms), ord));
  }
  return ideal;
}

/// Full division: every term of the result is reduced modulo the leading
/// terms of the basis. Deterministic (first matching divisor wins).
inline gb::Poly normal_form(const gb::Poly& f, const std::vector<gb::Poly>& basis,
                            const MonomialOrder& ord,
                            const GroebnerBudget& budget = GroebnerBudget{},
                            long* cumulative_work = nullptr) {
  gb::Poly work = f;
  gb::Poly remainder;
  long local_work = 0;
  long& spent = cumulative_work ? *cumulative_work : local_work;
  while (!work.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (gb::divides(g.lead().e, work.lead().e)) {
        Rat coeff = work.lead().c / g.lead().c;
        spent += long(work.terms.size()) + long(g.terms.size());
        work = gb::subtract_scaled(work, coeff, gb::quotient(work.lead().e, g.lead().e), g, ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      remainder.terms.push_back(work.lead());
      work.terms.erase(work.terms.begin());
      spent += 1;
    }
    if (long(work.terms.size()) > budget.max_terms)
      throw ResourceLimitError("polynomial support exceeded the term budget");
    if (spent > budget.max_work)
      throw ResourceLimitError("reduction work exceeded the operation budget");
  }
  return remainder;
}

namespace gb {

struct Pair {
  int i, j;
  Expo lcm;
  int sugar;
};

}  // namespace gb

/// Buchberger's algorithm with the sugar selection strategy, the product
/// criterion and the chain criterion. Returns the reduced basis.
inline PolyIdeal groebner_basis(const PolyIdeal& ideal) {
  const MonomialOrder& ord = ideal.order;
  std::vector<gb::Poly> basis;
  std::vector<int> sugar_of;
  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    basis.push_back(g);
    sugar_of.push_back(gb::total_degree(g.lead().e));
  }

  std::deque<gb::Pair> pairs;
  auto push_pairs = [&](int j) {
    for (int i = 0; i < j; ++i) {
      gb::Pair p;
      p.i = i;
      p.j = j;
      p.lcm = gb::lcm(basis[i].lead().e, basis[j].lead().e);
      p.sugar = std::max(sugar_of[i] - gb::total_degree(basis[i].lead().e),
                         sugar_of[j] - gb::total_degree(basis[j].lead().e)) +
                gb::total_degree(p.lcm);
      pairs.push_back(std::move(p));
    }
  };
  for (int j = 1; j < int(basis.size()); ++j) push_pairs(j);

  long processed = 0;
  long work_spent = 0;
  while (!pairs.empty()) {
    // sugar strategy: smallest sugar, then smallest lcm in the order
    size_t best = 0;
    for (size_t q = 1; q < pairs.size(); ++q) {
      if (pairs[q].sugar < pairs[best].sugar ||
          (pairs[q].sugar == pairs[best].sugar && ord.cmp(pairs[q].lcm, pairs[best].lcm) < 0))
        best = q;
    }
    gb::Pair pair = pairs[best];
    pairs.erase(pairs.begin() + best);
    if (++processed > ideal.budget.max_pairs)
      throw ResourceLimitError("S-pair budget exhausted after " + std::to_string(processed - 1) +
                               " pairs");

    const gb::Expo& li = basis[pair.i].lead().e;
    const gb::Expo& lj = basis[pair.j].lead().e;
    if (gb::coprime(li, lj)) continue;  // product criterion
    // chain criterion: some other basis element divides the lcm and both
    // companion pairs are gone
    bool chained = false;
    for (int r = 0; r < int(basis.size()) && !chained; ++r) {
      if (r == pair.i || r == pair.j) continue;
      if (!gb::divides(basis[r].lead().e, pair.lcm)) continue;
      bool pending = false;
      for (const auto& q : pairs) {
        if ((q.i == std::min(pair.i, r) && q.j == std::max(pair.i, r)) ||
            (q.i == std::min(pair.j, r) && q.j == std::max(pair.j, r))) {
          pending = true;
          break;
        }
      }
      if (!pending) chained = true;
    }
    if (chained) continue;

    // S-polynomial
    const gb::Poly& fi = basis[pair.i];
    const gb::Poly& fj = basis[pair.j];
    gb::Poly shifted;  // (lcm/li) * fi
    {
      gb::Expo sh = gb::quotient(pair.lcm, li);
      for (const auto& t : fi.terms) {
        gb::Expo e(t.e.size());
        for (size_t v = 0; v < e.size(); ++v) e[v] = t.e[v] + sh[v];
        shifted.terms.push_back({std::move(e), t.c / fi.lead().c});
      }
    }
    gb::Poly spoly = gb::subtract_scaled(shifted, Rat(1) / fj.lead().c,
                                         gb::quotient(pair.lcm, lj), fj, ord);
    gb::Poly rem = normal_form(spoly, basis, ord, ideal.budget, &work_spent);
    if (rem.is_zero()) continue;
    // monic
    Rat lc = rem.lead().c;
    for (auto& t : rem.terms) t.c /= lc;
    basis.push_back(std::move(rem));
    sugar_of.push_back(pair.sugar);
    push_pairs(int(basis.size()) - 1);
  }

  // minimize: drop elements whose lead is divisible by another lead
  std::vector<gb::Poly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < basis.size() && keep; ++j) {
      if (i == j) continue;
      if (gb::divides(basis[j].lead().e, basis[i].lead().e)) {
        if (basis[j].lead().e == basis[i].lead().e)
          keep = j > i;  // identical leads: keep the first
        else
          keep = false;
      }
    }
    if (keep) minimal.push_back(basis[i]);
  }
  // tail-reduce each against the others and normalize
  std::vector<gb::Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<gb::Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    gb::Poly r = normal_form(minimal[i], others, ord, ideal.budget, &work_spent);
    if (r.is_zero()) continue;
    Rat lc = r.lead().c;
    for (auto& t : r.terms) t.c /= lc;
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const gb::Poly& a, const gb::Poly& b) {
    return ord.cmp(a.lead().e, b.lead().e) < 0;
  });

  PolyIdeal out = ideal;
  out.generators = std::move(reduced);
  return out;
}

/// Saturation (I : m^infty) via the extra variable w and the block
/// elimination order on w.
inline PolyIdeal saturate(const PolyIdeal& ideal, const gb::Expo& monomial) {
  int n = ideal.num_vars;
  PolyIdeal extended;
  extended.num_vars = n + 1;
  extended.order = MonomialOrder{MonomialOrder::Block, 1};
  extended.budget = ideal.budget;
  for (const auto& g : ideal.generators) {
    std::vector<gb::Term> terms;
    for (const auto& t : g.terms) {
      gb::Expo e = t.e;
      e.push_back(0);
      terms.push_back({std::move(e), t.c});
    }
    extended.generators.push_back(gb::make_poly(std::move(terms), extended.order));
  }
  {
    // 1 - w * m
    std::vector<gb::Term> terms;
    gb::Expo one(n + 1, 0);
    terms.push_back({one, Rat(1)});
    gb::Expo wm = monomial;
    wm.push_back(1);
    terms.push_back({wm, Rat(-1)});
    extended.generators.push_back(gb::make_poly(std::move(terms), extended.order));
  }
  PolyIdeal gbext = groebner_basis(extended);
  PolyIdeal out;
  out.num_vars = n;
  out.order = ideal.order;
  out.budget = ideal.budget;
  for (const auto& g : gbext.generators) {
    bool uses_w = false;
    for (const auto& t : g.terms)
      if (t.e[n] > 0) uses_w = true;
    if (uses_w) continue;
    std::vector<gb::Term> terms;
    for (const auto& t : g.terms) {
      gb::Expo e(t.e.begin(), t.e.end() - 1);
      terms.push_back({std::move(e), t.c});
    }
    out.generators.push_back(gb::make_poly(std::move(terms), out.order));
  }
  return groebner_basis(out);
}

/// Two-sided membership test through Groebner bases.
inline bool ideal_equal(const PolyIdeal& a, const PolyIdeal& b) {
  if (a.num_vars != b.num_vars) throw InputError("ideal comparison across variable sets");
  PolyIdeal ga = groebner_basis(a);
  PolyIdeal gbb = groebner_basis(b);
  for (const auto& g : a.generators)
    if (!normal_form(g, gbb.generators, gbb.order, a.budget).is_zero()) return false;
  for (const auto& g : b.generators)
    if (!normal_form(g, ga.generators, ga.order, b.budget).is_zero()) return false;
  return true;
}

namespace gb {

// numerator of the Hilbert series of a quotient by a monomial ideal
inline std::vector<Int> hilbert_numerator(std::vector<Expo> gens, int nvars) {
  // minimalize
  std::vector<Expo> min;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < gens.size() && keep; ++j) {
      if (i == j) continue;
      if (divides(gens[j], gens[i]) && (gens[j] != gens[i] || j < i)) keep = false;
    }
    if (keep) min.push_back(gens[i]);
  }
  if (min.empty()) return {Int(1)};
  for (const auto& g : min)
    if (total_degree(g) == 0) return {Int(0)};
  Expo pivot = min.back();
  std::vector<Expo> rest(min.begin(), min.end() - 1);
  std::vector<Int> base = hilbert_numerator(rest, nvars);
  std::vector<Expo> colon;
  for (const auto& g : rest) {
    Expo q(g.size());
    for (size_t v = 0; v < g.size(); ++v) q[v] = std::max(g[v] - pivot[v], 0);
    colon.push_back(std::move(q));
  }
  std::vector<Int> sub = hilbert_numerator(colon, nvars);
  int shift = total_degree(pivot);
  std::vector<Int> out = base;
  if (int(out.size()) < shift + int(sub.size())) out.resize(shift + sub.size(), Int(0));
  for (size_t i = 0; i < sub.size(); ++i) out[shift + i] -= sub[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace gb

/// Dimension and degree of the affine variety of I, via the Hilbert series
/// of the leading-term ideal under a degree-compatible order.
inline std::pair<int, Int> affine_dim_degree(const PolyIdeal& ideal) {
  PolyIdeal work = ideal;
  if (work.order.kind != MonomialOrder::Degrevlex) work.order = MonomialOrder{};
  PolyIdeal basis = groebner_basis(work);
  std::vector<gb::Expo> leads;
  for (const auto& g : basis.generators) leads.push_back(g.lead().e);
  std::vector<Int> num = gb::hilbert_numerator(leads, ideal.num_vars);
  if (num.empty()) return {-1, Int(0)};  // unit ideal: empty variety
  // cancel factors of (1 - t)
  int cancelled = 0;
  auto value_at_one = [](const std::vector<Int>& p) {
    Int s = 0;
    for (const Int& c : p) s += c;
    return s;
  };
  std::vector<Int> q = num;
  while (value_at_one(q) == 0) {
    // exact division by (1 - t): r_0 = q_0, r_i = q_i + r_{i-1}
    std::vector<Int> div(q.size() - 1);
    Int carry = 0;
    for (size_t i = 0; i + 1 < q.size(); ++i) {
      carry = (i == 0) ? q[0] : q[i] + carry;
      div[i] = carry;
    }
    q = div;
    while (!q.empty() && q.back() == 0) q.pop_back();
    ++cancelled;
    if (q.empty()) return {-1, Int(0)};
  }
  // series = q(t) / (1-t)^{n - cancelled}; the pole order is the dimension
  // and q(1) is the degree
  return {ideal.num_vars - cancelled, value_at_one(q)};
}

}  // namespace poschart
