#pragma once

#include "unef/datum.hpp"
#include "unef/poly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace unef {

// Generator names.  Places are printed 1-based.
//   omega:i        [omega_i]
//   sub:i:label    [F^i_j], auxiliary bundles (E, omega', h^l, ...)
//   H:i            [H(A/X)_i]
//   fiber:label    e.g. O(1) on a P^1-fiber
namespace gen {
inline std::string omega(int i) { return "omega:" + std::to_string(i + 1); }
inline std::string H(int i) { return "H:" + std::to_string(i + 1); }
inline std::string sub(int i, const std::string& label) {
  return "sub:" + std::to_string(i + 1) + ":" + label;
}
inline std::string flag(int i, int j) { return sub(i, "F_" + std::to_string(j)); }
inline std::string fiber(const std::string& label) { return "fiber:" + label; }

inline bool valid(const std::string& g) {
  auto colon = g.find(':');
  if (colon == std::string::npos || colon + 1 >= g.size()) return false;
  std::string kind = g.substr(0, colon);
  std::string rest = g.substr(colon + 1);
  auto place_ok = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return std::stoll(s) >= 1;
  };
  if (kind == "omega" || kind == "H") return place_ok(rest);
  if (kind == "fiber") return true;
  if (kind == "sub") {
    auto c2 = rest.find(':');
    return c2 != std::string::npos && c2 + 1 < rest.size() && place_ok(rest.substr(0, c2));
  }
  return false;
}
}  // namespace gen

template <class Coef>
class ClassExprT {
 public:
  using Map = std::map<std::string, Coef>;

  ClassExprT() = default;
  ClassExprT(std::initializer_list<std::pair<const std::string, Coef>> il) {
    for (auto& [g, c] : il) add(g, c);
  }
  static ClassExprT single(const std::string& g, const Coef& c = Coef(1)) {
    ClassExprT e;
    e.add(g, c);
    return e;
  }

  void add(const std::string& g, const Coef& c) {
    if (is_zero_coef(c)) return;
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, c);
    } else {
      it->second += c;
      if (is_zero_coef(it->second)) terms_.erase(it);
    }
  }
  Coef coef(const std::string& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Coef(0) : it->second;
  }
  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  ClassExprT& operator+=(const ClassExprT& o) {
    for (auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  ClassExprT& operator-=(const ClassExprT& o) {
    for (auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  friend ClassExprT operator+(ClassExprT a, const ClassExprT& b) { return a += b; }
  friend ClassExprT operator-(ClassExprT a, const ClassExprT& b) { return a -= b; }
  friend ClassExprT operator*(const Coef& s, const ClassExprT& e) {
    ClassExprT r;
    for (auto& [g, c] : e.terms_) r.add(g, s * c);
    return r;
  }
  friend bool operator==(const ClassExprT& a, const ClassExprT& b) { return a.terms_ == b.terms_; }

 private:
  static bool is_zero_coef(const Coef& c) {
    if constexpr (std::is_same_v<Coef, Poly>)
      return c.is_zero();
    else
      return c == 0;
  }
  Map terms_;
};

using ClassExpr = ClassExprT<Q>;
using PolyClassExpr = ClassExprT<Poly>;
using RelationSet = std::vector<ClassExpr>;  // each asserted = 0

inline PolyClassExpr lift(const ClassExpr& e) {
  PolyClassExpr r;
  for (auto& [g, c] : e.terms()) r.add(g, Poly(c));
  return r;
}

// ---------------------------------------------------------------------------
// Reduction modulo relations

namespace detail {

struct Echelon {
  std::vector<std::string> cols;  // column order used for elimination
  QMat rows;                      // reduced row echelon form
  std::vector<int> pivot;         // pivot column per row
};

inline Echelon echelon(const RelationSet& R, const std::vector<std::string>& cols) {
  std::map<std::string, int> idx;
  for (std::size_t c = 0; c < cols.size(); ++c) idx[cols[c]] = static_cast<int>(c);
  QMat M;
  for (auto& r : R) {
    QVec row(cols.size(), Q(0));
    for (auto& [g, c] : r.terms()) row[idx.at(g)] = c;
    M.push_back(std::move(row));
  }
  Echelon e;
  e.cols = cols;
  const int nc = static_cast<int>(cols.size());
  int r = 0;
  for (int c = 0; c < nc && r < static_cast<int>(M.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(M.size()); ++i)
      if (M[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    Q inv = 1 / M[r][c];
    for (auto& v : M[r]) v *= inv;
    for (int i = 0; i < static_cast<int>(M.size()); ++i) {
      if (i == r || M[i][c] == 0) continue;
      Q f = M[i][c];
      for (int k = c; k < nc; ++k) M[i][k] -= f * M[r][k];
    }
    e.pivot.push_back(c);
    ++r;
  }
  M.resize(r);
  e.rows = std::move(M);
  return e;
}

}  // namespace detail

// Express x in the given basis modulo R.  Non-basis generators are
// eliminated first; whatever cannot be eliminated is an error.
template <class Coef>
ClassExprT<Coef> reduce(const ClassExprT<Coef>& x, const RelationSet& R,
                        const std::vector<std::string>& basis) {
  std::set<std::string> in_basis(basis.begin(), basis.end());
  std::set<std::string> others;
  for (auto& r : R)
    for (auto& [g, c] : r.terms())
      if (!in_basis.count(g)) others.insert(g);
  for (auto& [g, c] : x.terms())
    if (!in_basis.count(g)) others.insert(g);
  std::vector<std::string> cols(others.begin(), others.end());
  const std::size_t n_other = cols.size();
  for (auto& b : basis) cols.push_back(b);

  auto e = detail::echelon(R, cols);
  for (std::size_t r = 0; r < e.rows.size(); ++r)
    if (static_cast<std::size_t>(e.pivot[r]) >= n_other)
      throw InputError("inconsistent relations: basis generators are dependent modulo the relations");

  ClassExprT<Coef> y = x;
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    const std::string& pg = cols[e.pivot[r]];
    Coef f = y.coef(pg);
    ClassExprT<Coef> rowexpr;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (e.rows[r][c] != 0) rowexpr.add(cols[c], Coef(e.rows[r][c]));
    if constexpr (std::is_same_v<Coef, Poly>) {
      if (!f.is_zero()) y -= f * rowexpr;
    } else {
      if (f != 0) y -= f * rowexpr;
    }
  }
  for (auto& [g, c] : y.terms())
    if (!in_basis.count(g)) throw InputError("not in span: residual involves " + g);
  return y;
}

// reduce(lhs - rhs, R, {}) == 0
template <class Coef>
bool verify_identity(const ClassExprT<Coef>& lhs, const ClassExprT<Coef>& rhs,
                     const RelationSet& R) {
  try {
    return reduce(lhs - rhs, R, {}).is_zero();
  } catch (const InputError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Relation builders

// [H_i] = 0 for all i, [omega_i] = 0 off the essential set.
inline RelationSet base_relations(const Signature& sig) {
  RelationSet R;
  for (int i = 0; i < sig.N; ++i) {
    R.push_back(ClassExpr::single(gen::H(i)));
    if (!sig.essential(i)) R.push_back(ClassExpr::single(gen::omega(i)));
  }
  return R;
}

// F^i_0 = 0, F^i_n = H_i, F^i_{m_i} = omega_i at essential places.
inline RelationSet flag_identifications(const Signature& sig) {
  RelationSet R;
  for (int i = 0; i < sig.N; ++i) {
    R.push_back(ClassExpr::single(gen::flag(i, 0)));
    R.push_back(ClassExpr{{gen::flag(i, sig.n), Q(1)}, {gen::H(i), Q(-1)}});
    if (sig.essential(i))
      R.push_back(ClassExpr{{gen::flag(i, sig.m[i]), Q(1)}, {gen::omega(i), Q(-1)}});
  }
  return R;
}

// Class of V^{-1}(F^{(p)}) (resp. F(E^{(p)})) for F living at place i.  When
// the essential Hodge bundle at i is all of H its class vanishes and only
// p[F] survives.
inline ClassExpr vpullback_class(long long p, const Signature& sig, const ClassExpr& F, int i) {
  ClassExpr r = Q(p) * F;
  if (sig.mt(i) != sig.n) r.add(gen::omega(wrap(i, sig.N)), Q(-p));
  return r;
}

struct ChainCondition {
  enum class Kind { v_inverse, f_image };
  Kind kind = Kind::v_inverse;
  int place = 0, rank = 0;          // F^{place}_{rank} = ...
  int src_place = 0, src_rank = 0;  // ... of F^{src_place,(p)}_{src_rank}
};

inline RelationSet chain_relations(long long p, const Signature& sig,
                                   const std::vector<ChainCondition>& spec) {
  RelationSet R;
  for (auto& c : spec) {
    auto bad = [&](const std::string& why) {
      return InputError("ill-typed chain condition F^" + std::to_string(c.place + 1) + "_" +
                        std::to_string(c.rank) + ": " + why);
    };
    if (c.place < 0 || c.place >= sig.N || c.src_place < 0 || c.src_place >= sig.N)
      throw bad("place out of range");
    if (wrap(c.place + 1, sig.N) != c.src_place) throw bad("source must be the next place");
    if (c.rank < 0 || c.rank > sig.n || c.src_rank < 0 || c.src_rank > sig.n)
      throw bad("rank out of range");
    if (c.kind == ChainCondition::Kind::v_inverse) {
      if (c.src_rank > sig.mt(c.src_place)) throw bad("source must lie in the Hodge bundle");
      if (c.rank != c.src_rank + sig.nt(c.src_place))
        throw bad("rank must equal source rank + " + std::to_string(sig.nt(c.src_place)));
    } else {
      if (c.src_rank < sig.m[c.src_place]) throw bad("source must contain the Hodge bundle");
      if (c.rank != c.src_rank - sig.m[c.src_place])
        throw bad("rank must equal source rank - " + std::to_string(sig.m[c.src_place]));
    }
    ClassExpr rel = ClassExpr::single(gen::flag(c.place, c.rank));
    rel -= vpullback_class(p, sig, ClassExpr::single(gen::flag(c.src_place, c.src_rank)),
                           c.src_place);
    R.push_back(std::move(rel));
  }
  return R;
}

inline RelationSet concat(RelationSet a, const RelationSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// The curve used against the t = 1, m = n - 1 case: Hodge and conjugate
// filtrations agree at every non-essential place and the flag wraps once
// around the essential place (assumed to be the first place).
inline std::vector<ChainCondition> curve_conditions(const Signature& sig) {
  std::vector<ChainCondition> out;
  for (int i = 0; i + 1 < sig.N; ++i)
    for (int j = 1; j < sig.n; ++j)
      out.push_back({ChainCondition::Kind::v_inverse, i, j, i + 1, j});
  for (int j = 2; j < sig.n; ++j)
    out.push_back({ChainCondition::Kind::v_inverse, sig.N - 1, j, 0, j - 1});
  return out;
}

// ---------------------------------------------------------------------------
// Hasse-invariant classes

// (p^{jN} - 1)[omega] - (p^{jN} - p^{(j-1)N})[F]
inline ClassExpr hasse_zj(long long p, int N, int j, const std::string& omega,
                          const std::string& F) {
  if (j < 1) throw InputError("hasse_class(Zj): j must be >= 1");
  Q a = qpow(p, static_cast<long long>(j) * N), b = qpow(p, static_cast<long long>(j - 1) * N);
  ClassExpr e;
  e.add(omega, a - 1);
  e.add(F, -(a - b));
  return e;
}

// p^N [F^{l+1}/F^l] - [F^l/F^{l-1}]
inline ClassExpr hasse_tower(long long p, int N, const std::string& Fnext, const std::string& F,
                             const std::string& Fprev) {
  Q q = qpow(p, N);
  ClassExpr e;
  e.add(Fnext, q);
  e.add(F, -(q + 1));
  e.add(Fprev, 1);
  return e;
}

// p^{a}[omega_{next}] - [omega] + [F] + [E]
inline ClassExpr hasse_schubert(long long p, int a, const std::string& omega_next,
                                const std::string& omega, const std::string& F,
                                const std::string& E) {
  ClassExpr e;
  e.add(omega_next, qpow(p, a));
  e.add(omega, -1);
  e.add(F, 1);
  e.add(E, 1);
  return e;
}

// [h^{s-1}] + (p^N+1)/p^N [h^{s-2}] + ... ; h[l-1] holds the class of h^l.
inline Q combined_coefficient(long long p, int N, int u) {
  Q num = 0;
  for (int v = 0; v <= u; ++v) num += qpow(p, static_cast<long long>(v) * N);
  return num / qpow(p, static_cast<long long>(u) * N);
}

inline ClassExpr hasse_combined(long long p, int N, const std::vector<ClassExpr>& h) {
  const int s = static_cast<int>(h.size()) + 1;
  if (s < 2) throw InputError("hasse_class(combined): need s >= 2");
  ClassExpr e;
  for (int u = 0; u <= s - 2; ++u) e += combined_coefficient(p, N, u) * h[s - 2 - u];
  return e;
}

// ---------------------------------------------------------------------------
// Identities used when splitting a weight, with symbolic coefficients.

struct IdentityCase {
  std::string name;
  PolyClassExpr lhs, rhs;
  RelationSet relations;
};

// Averaging two adjacent entries l, l+1 (1-based l) of a weight in
// xi-coordinates, written through the two auxiliary varieties X', X''.
inline IdentityCase half_half_identity(long long p, const std::vector<int>& a, int l) {
  const int t = static_cast<int>(a.size());
  if (t < 2 || l < 1 || l >= t) throw InputError("half-half identity needs 1 <= l < t");
  // essential places are labelled 0..t-1 here; only their classes matter
  auto k = [](int s) { return Poly::var("k" + std::to_string(s + 1)); };
  std::vector<Q> P(t);
  long long e = 0;
  for (int s = 0; s < t; ++s) {
    P[s] = qpow(p, e);
    e += a[s];
  }
  const int L = l - 1;
  const std::string F = gen::sub(L, "F"), E = gen::sub(L, "E");
  auto om = [](int s) { return gen::omega(s); };
  auto om1 = [](int s) { return gen::sub(s, "omega'"); };
  auto om2 = [](int s) { return gen::sub(s, "omega''"); };

  IdentityCase c;
  c.name = "half-half(l=" + std::to_string(l) + ")";
  for (int s = 0; s < t; ++s) {
    Poly ks = k(s);
    if (s == L || s == L + 1) ks = Poly(Q(1, 2)) * (k(L) + k(L + 1));
    c.lhs.add(om(s), Poly(P[s]) * ks);
  }
  PolyClassExpr Lp, Lpp;
  for (int s = 0; s < t; ++s) {
    Lp.add(om1(s), Poly(P[s]) * k(s));
    Lpp.add(om2(s), Poly(P[s]) * k(s));
  }
  ClassExpr h = hasse_schubert(p, a[L], om(L + 1), om(L), F, E);
  c.rhs = Poly(Q(1, 2)) * Lp + Poly(Q(1, 2)) * Lpp +
          (Poly(Q(1, 2)) * (k(L) - k(L + 1)) * Poly(P[L])) * lift(h);
  for (int s = 0; s < t; ++s) {
    for (auto [aux, X] : {std::pair{om1(s), F}, std::pair{om2(s), E}}) {
      ClassExpr r{{aux, Q(1)}, {om(s), Q(-1)}};
      if (s == L) r.add(X, 1);
      if (s == L + 1) r.add(X, -qpow(p, -a[L]));
      c.relations.push_back(r);
    }
  }
  return c;
}

// Splitting the minimal-flag class along a tower of length s at the first
// place: beta[h] + L(t k; alpha^s) + L((1-t) k; alpha^0) = L(k; alpha).
// Tower bundles are F^0 .. F^s = sub:1:T_0 .. T_s, and h^l are defined by
// their tower relations.
inline IdentityCase step4_identity(long long p, int N, int s, int places = 2) {
  if (s < 2) throw InputError("tower identity needs s >= 2");
  auto T = [](int l) { return gen::sub(0, "T_" + std::to_string(l)); };
  auto h = [](int l) { return gen::sub(0, "h^" + std::to_string(l)); };
  Poly k1 = Poly::var("k1"), al = Poly::var("alpha"), tt = Poly::var("t");
  Poly gamma = k1 - al;
  Q q = qpow(p, N);
  Q den = qpow(p, static_cast<long long>(s) * N) - 1;
  Q A = qpow(p, static_cast<long long>(s - 1) * N) * (q - 1) / den;
  Q B = (qpow(p, static_cast<long long>(s - 1) * N) - 1) / den;
  Q Bt = qpow(p, static_cast<long long>(s - 2) * N) * (q - 1) / den;

  auto omegas = [&](const Poly& scale) {
    PolyClassExpr e;
    for (int i = 0; i < places; ++i)
      e.add(gen::omega(i), scale * (i == 0 ? k1 : Poly::var("k" + std::to_string(i + 1))));
    return e;
  };
  IdentityCase c;
  c.name = "tower-split(s=" + std::to_string(s) + ")";
  // L(k; alpha) = sum k_i omega_i - (k1 - alpha) F^1
  c.lhs = omegas(Poly(1));
  c.lhs.add(T(1), -gamma);

  Poly alpha_s = tt * k1 - Poly(A) * gamma;
  Poly alpha_0 = (Poly(1) - tt) * k1 - Poly(B) * gamma;
  PolyClassExpr Ls = omegas(tt);
  Ls.add(T(s), -(tt * k1 - alpha_s));
  PolyClassExpr L0 = omegas(Poly(1) - tt);
  L0.add(T(0), -((Poly(1) - tt) * k1 - alpha_0));
  std::vector<ClassExpr> hs;
  for (int l = 1; l <= s - 1; ++l) hs.push_back(ClassExpr::single(h(l)));
  c.rhs = (Poly(Bt) * gamma) * lift(hasse_combined(p, N, hs)) + Ls + L0;
  for (int l = 1; l <= s - 1; ++l) {
    ClassExpr r = ClassExpr::single(h(l)) - hasse_tower(p, N, T(l + 1), T(l), T(l - 1));
    c.relations.push_back(r);
  }
  return c;
}

// Restriction of L_Y(lambda) to a P^1-fiber at the first place (t = 1,
// m_1 not in {1, n-1}).  Returns the relation set and the line-bundle class;
// reducing in the basis {fiber:O1} gives the expected coefficient.
inline IdentityCase fiber_regression(long long p, const Signature& sig) {
  const int N = sig.N, n = sig.n, m = sig.m[0];
  if (sig.t() != 1 || !sig.essential(0) || m == 1 || m == n - 1 || n < 4)
    throw InputError("fiber regression needs T = {1} and 1 < m_1 < n-1");
  const std::string O = gen::fiber("O1");
  IdentityCase c;
  c.name = "fiber";
  // quotient classes q^i_j = F^i_j - F^i_{j-1}
  auto quot = [&](int i, int j) {
    return ClassExpr{{gen::flag(i, j), Q(1)}, {gen::flag(i, j - 1), Q(-1)}};
  };
  for (int i = 0; i < N; ++i) {
    Q w = qpow(p, N - i);  // p^{N+1-i} with 1-based i
    for (int j = 1; j <= n; ++j) {
      ClassExpr r = quot(i, j);
      if (j == 1) r.add(O, -w);
      if (j == n) r.add(O, w);
      if (i == 0 && j == m + 1) r.add(O, -1);
      if (i == 0 && j == m) r.add(O, 1);
      c.relations.push_back(r);
    }
  }
  c.relations = concat(c.relations, flag_identifications(sig));
  c.relations = concat(c.relations, base_relations(sig));
  for (int i = 0; i < N; ++i)
    for (int j = 1; j <= n; ++j) {
      Poly kij = Poly::var("k" + std::to_string(i + 1) + "_" + std::to_string(j));
      c.lhs += kij * lift(quot(i, j));
    }
  Poly expect = Poly::var("k1_" + std::to_string(m + 1)) - Poly::var("k1_" + std::to_string(m));
  for (int i = 0; i < N; ++i)
    expect += Poly(qpow(p, N - i)) * (Poly::var("k" + std::to_string(i + 1) + "_1") -
                                      Poly::var("k" + std::to_string(i + 1) + "_" +
                                                std::to_string(n)));
  c.rhs = PolyClassExpr::single(O, expect);
  return c;
}

// ---------------------------------------------------------------------------
// Choice of the splitting parameter t

struct Interval {
  Q lo, hi;  // closed, lo <= hi
};

enum class FeasibleVariant { case1, case2, case3, case3prime, step5 };

struct FeasibleParams {
  long long p = 2;
  int N = 1, a1 = 1, s = 2;
  Q k1, k2, alpha;
  FeasibleVariant variant = FeasibleVariant::case1;
  // case3 / case3prime
  int n = 0, m = 0, delta = 0;
  // step5: offset d of the non-essential place from the essential one; the
  // subtracted quantity is alpha / p^d (alpha >= 0 in this normalisation)
  int offset = 0;
};

inline Q feasible_A(long long p, int N, int s) {
  Q den = qpow(p, static_cast<long long>(s) * N) - 1;
  return qpow(p, static_cast<long long>(s - 1) * N) * (qpow(p, N) - 1) / den;
}
inline Q feasible_B(long long p, int N, int s) {
  Q den = qpow(p, static_cast<long long>(s) * N) - 1;
  return (qpow(p, static_cast<long long>(s - 1) * N) - 1) / den;
}

// The summed condition the two inequalities add up to (for the patterns
// where it is a single inequality).
inline bool feasible_summed(const FeasibleParams& f) {
  Q pa = qpow(f.p, f.a1);
  switch (f.variant) {
    case FeasibleVariant::case1: return pa * f.alpha >= f.k2;
    case FeasibleVariant::case2: return qpow(f.p, f.N) * f.alpha >= f.k1;
    case FeasibleVariant::step5: return pa * (f.k1 - f.alpha / qpow(f.p, f.offset)) >= f.k2;
    default: throw InputError("no single summed condition for this variant");
  }
}

// The exact set of t in [0, 1] satisfying both inequalities.
inline std::optional<Interval> feasible_t(const FeasibleParams& f) {
  if (f.s < 2) throw InputError("feasible_t needs s >= 2");
  const Q A = feasible_A(f.p, f.N, f.s), B = feasible_B(f.p, f.N, f.s);
  // each constraint: u * t + v >= 0
  std::vector<std::pair<Q, Q>> cons;
  auto scaled = [&](const Q& w1, const Q& w2, const Q& k, const Q& g) {
    // w1 (t k - A g) >= w2 t k     and     w1 ((1-t) k - B g) >= w2 (1-t) k
    cons.push_back({w1 * k - w2 * k, -w1 * A * g});
    cons.push_back({-(w1 * k - w2 * k), w1 * k - w2 * k - w1 * B * g});
  };
  switch (f.variant) {
    case FeasibleVariant::case1:
    case FeasibleVariant::step5: {
      Q pa = qpow(f.p, f.a1);
      Q g = f.variant == FeasibleVariant::case1 ? Q(f.k1 - f.alpha)
                                                : Q(f.alpha / qpow(f.p, f.offset));
      // p^a (t k1 - A g) >= t k2 ; p^a ((1-t) k1 - B g) >= (1-t) k2
      cons.push_back({pa * f.k1 - f.k2, -pa * A * g});
      cons.push_back({-(pa * f.k1 - f.k2), pa * f.k1 - f.k2 - pa * B * g});
      break;
    }
    case FeasibleVariant::case2: {
      Q q = qpow(f.p, f.N);
      scaled(q, Q(1), f.k1, f.k1 - f.alpha);
      break;
    }
    case FeasibleVariant::case3:
    case FeasibleVariant::case3prime: {
      const int m = f.variant == FeasibleVariant::case3 ? f.m : f.n - f.m;
      const Q g = f.k1 - f.alpha;
      const int Ms = m + (f.s - 1) * f.delta, M0 = m - f.delta;
      if (Ms > f.n - 1 || M0 < 0 || f.delta < 0)
        throw InputError("tower ranks out of range for the given delta");
      auto qn = [&](int e) { return qpow(f.p, static_cast<long long>(e) * f.N); };
      Q w1 = qn(f.n - Ms) - 1, w2 = qn(f.n - Ms - 1) - 1;
      cons.push_back({w1 * f.k1 - w2 * f.k1, -w1 * A * g});
      if (M0 == 0) {
        // the bottom bundle is zero: only the Hodge term (1 - t) k1 remains
        cons.push_back({-f.k1, f.k1});
      } else {
        Q u1 = qn(f.n - M0) - 1, u2 = qn(f.n - M0 - 1) - 1;
        cons.push_back({-(u1 * f.k1 - u2 * f.k1), u1 * f.k1 - u2 * f.k1 - u1 * B * g});
      }
      break;
    }
  }
  Q lo = 0, hi = 1;
  for (auto& [u, v] : cons) {
    if (u > 0) {
      lo = std::max(lo, Q(-v / u));
    } else if (u < 0) {
      hi = std::min(hi, Q(-v / u));
    } else if (v < 0) {
      return std::nullopt;
    }
  }
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

}  // namespace unef
