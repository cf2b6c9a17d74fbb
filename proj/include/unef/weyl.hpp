#pragma once

#include "unef/datum.hpp"
#include "unef/zipmodp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace unef::weyl {

// One-line notation, values 1..n: w = (w(1), ..., w(n)).  Products are
// composition of functions, (uv)(x) = u(v(x)); s_k w swaps the values k and
// k+1, w s_k swaps the positions k and k+1.
using Perm = std::vector<int>;
using WeylElement = std::vector<Perm>;  // one permutation per place

// Per place, a composition of n; the reflections s_k with k strictly inside
// a block generate the parabolic subgroup.
using ParabolicType = std::vector<std::vector<int>>;

inline Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline Perm compose(const Perm& u, const Perm& v) {
  Perm r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = u[v[i] - 1];
  return r;
}

inline Perm inverse(const Perm& u) {
  Perm r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[u[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

inline Perm simple(int n, int k) {  // s_k, 1 <= k < n
  Perm p = identity(n);
  std::swap(p[k - 1], p[k]);
  return p;
}

inline int length(const Perm& w) {
  int inv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv;
}

inline int length(const WeylElement& w) {
  int s = 0;
  for (auto& p : w) s += length(p);
  return s;
}

inline bool is_perm(const Perm& w) {
  Perm s = w;
  std::sort(s.begin(), s.end());
  return s == identity(static_cast<int>(w.size()));
}

inline ParabolicType hodge_type(const Signature& sig) {
  ParabolicType t;
  for (int i = 0; i < sig.N; ++i) {
    std::vector<int> c;
    if (sig.m[i] > 0) c.push_back(sig.m[i]);
    if (sig.n - sig.m[i] > 0) c.push_back(sig.n - sig.m[i]);
    t.push_back(c);
  }
  return t;
}

// block index of each value 1..n
inline std::vector<int> block_of(const std::vector<int>& comp) {
  std::vector<int> b;
  for (std::size_t k = 0; k < comp.size(); ++k)
    for (int r = 0; r < comp[k]; ++r) b.push_back(static_cast<int>(k));
  return b;
}

// l(s_k w) > l(w) for every s_k in the type: inside each block, values
// appear left to right in increasing order.
inline bool is_min_rep(const Perm& w, const std::vector<int>& comp) {
  auto b = block_of(comp);
  auto pos = inverse(w);
  for (std::size_t v = 1; v < w.size(); ++v)
    if (b[v - 1] == b[v] && pos[v - 1] > pos[v]) return false;
  return true;
}

inline bool is_min_rep(const WeylElement& w, const ParabolicType& I) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_min_rep(w[i], I[i])) return false;
  return true;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<WeylElement> product(const std::vector<std::vector<Perm>>& factors) {
  std::vector<WeylElement> out{{}};
  for (auto& f : factors) {
    std::vector<WeylElement> next;
    for (auto& w : out)
      for (auto& p : f) {
        auto x = w;
        x.push_back(p);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline void check_type(const ParabolicType& I, int n) {
  for (auto& c : I) {
    int s = 0;
    for (int b : c) {
      if (b <= 0) throw InputError("parabolic type: block sizes must be positive");
      s += b;
    }
    if (s != n) throw InputError("parabolic type: blocks must sum to n");
  }
}

// The set ^I W, in lexicographic order.
inline std::vector<WeylElement> min_reps(const ParabolicType& I, int n) {
  check_type(I, n);
  auto perms = all_perms(n);
  std::vector<std::vector<Perm>> factors;
  for (auto& comp : I) {
    std::vector<Perm> f;
    for (auto& p : perms)
      if (is_min_rep(p, comp)) f.push_back(p);
    factors.push_back(f);
  }
  return product(factors);
}

// W_I: permutations mapping every block of values onto itself.
inline std::vector<WeylElement> parabolic_subgroup(const ParabolicType& I, int n) {
  check_type(I, n);
  auto perms = all_perms(n);
  std::vector<std::vector<Perm>> factors;
  for (auto& comp : I) {
    auto b = block_of(comp);
    std::vector<Perm> f;
    for (auto& p : perms) {
      bool ok = true;
      for (int v = 0; v < n; ++v)
        if (b[p[v] - 1] != b[v]) ok = false;
      if (ok) f.push_back(p);
    }
    factors.push_back(f);
  }
  return product(factors);
}

inline int eo_dimension(const WeylElement& w, const ParabolicType& I) {
  if (!is_min_rep(w, I)) throw InputError("element is not a minimal coset representative");
  return length(w);
}

// Rank-matrix criterion: u <= v iff #{a <= i : u(a) >= j} <= #{a <= i : v(a) >= j}.
inline bool bruhat_leq(const Perm& u, const Perm& v) {
  const int n = static_cast<int>(u.size());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int cu = 0, cv = 0;
      for (int a = 0; a < i; ++a) {
        if (u[a] >= j) ++cu;
        if (v[a] >= j) ++cv;
      }
      if (cu > cv) return false;
    }
  return true;
}

inline bool bruhat_leq(const WeylElement& u, const WeylElement& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!bruhat_leq(u[i], v[i])) return false;
  return true;
}

// w = s_{k_1} ... s_{k_l}
inline std::vector<int> reduced_word(Perm w) {
  std::vector<int> word;
  const int n = static_cast<int>(w.size());
  for (;;) {
    int k = 0;
    for (int a = 1; a < n; ++a)
      if (w[a - 1] > w[a]) {
        k = a;
        break;
      }
    if (!k) break;
    std::swap(w[k - 1], w[k]);  // w <- w s_k
    word.insert(word.begin(), k);
  }
  return word;
}

// Subword property: the products of subwords of a reduced word of v are
// exactly the elements below v.
inline bool bruhat_leq_subword(const Perm& u, const Perm& v) {
  auto word = reduced_word(v);
  const int n = static_cast<int>(v.size());
  const std::size_t L = word.size();
  if (L > 20) throw InputError("subword search too large");
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    Perm x = identity(n);
    for (std::size_t b = 0; b < L; ++b)
      if (mask >> b & 1) x = compose(x, simple(n, word[b]));
    if (x == u) return true;
  }
  return false;
}

// psi: cyclic shift of the place index with the identity frame.
//   plain:    (y w' psi(y))_i = y_i w'_i y_{i+1}
//   inverse:  (y w' psi(y)^{-1})_i = y_i w'_i y_{i+1}^{-1}
enum class TwistVariant { plain, inverse };

inline bool twisted_preceq(const WeylElement& wp, const WeylElement& w, const ParabolicType& I,
                           TwistVariant variant = TwistVariant::inverse,
                           std::size_t max_group = 200000) {
  const int N = static_cast<int>(w.size());
  const int n = N ? static_cast<int>(w[0].size()) : 0;
  auto WI = parabolic_subgroup(I, n);
  if (WI.size() > max_group) throw InputError("twisted order: parabolic subgroup too large to search");
  for (auto& y : WI) {
    WeylElement x(N);
    for (int i = 0; i < N; ++i) {
      const Perm& yn = y[(i + 1) % N];
      x[i] = compose(compose(y[i], wp[i]), variant == TwistVariant::plain ? yn : inverse(yn));
    }
    if (bruhat_leq(x, w)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

inline std::string to_string(const WeylElement& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "|";
    for (int v : w[i]) s += std::to_string(v);
  }
  return s;
}

// Standard point of shape w:
//   omega_i = span(e_{w_i^{-1}(1..m_i)}),  Ker V_i = span(e_1 .. e_{n-m_{i+1}}),
//   V_i(e_{n-m_{i+1}+k}) = e_{w_{i+1}^{-1}(k)},  F_i(e_{w_{i+1}^{-1}(m_{i+1}+k)}) = e_k.
inline ZipPoint standard_shape(const Signature& sig, const WeylElement& w, long long p) {
  (void)Prime{p};
  const int N = sig.N, n = sig.n;
  if (static_cast<int>(w.size()) != N) throw InputError("standard_shape: one permutation per place");
  for (auto& x : w)
    if (static_cast<int>(x.size()) != n || !is_perm(x))
      throw InputError("standard_shape: not a permutation of 1..n");
  if (!is_min_rep(w, hodge_type(sig)))
    throw InputError("standard_shape: element is not a minimal coset representative");
  ZipPoint pt{sig, p, {}, {}};
  for (int i = 0; i < N; ++i) {
    int nx = (i + 1) % N, m = sig.m[nx];
    Perm winv = inverse(w[nx]);
    fp::Mat V = fp::zeros(n, n), F = fp::zeros(n, n);
    for (int k = 1; k <= m; ++k) V[winv[k - 1] - 1][n - m + k - 1] = 1;
    for (int k = 1; k <= n - m; ++k) F[k - 1][winv[m + k - 1] - 1] = 1;
    pt.V.push_back(V);
    pt.F.push_back(F);
  }
  return pt;
}

}  // namespace unef::weyl
