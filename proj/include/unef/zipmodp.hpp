#pragma once

#include "unef/datum.hpp"
#include "unef/fp.hpp"
#include "unef/slopes.hpp"

#include <set>
#include <string>
#include <vector>

namespace unef {

// p-torsion Dieudonne data over the prime field.  V[i] maps D_i -> D_{i+1},
// F[i] maps D_{i+1} -> D_i; Frobenius is trivial on F_p so both are linear.
struct ZipPoint {
  Signature sig;
  long long p = 2;
  std::vector<fp::Mat> V, F;
};

// The same data over Z/p^2 with FV = VF = p.
struct LatticePoint {
  Signature sig;
  long long p = 2;
  std::vector<fp::Mat> V, F;
};

namespace detail {
inline fp::Mat diag_blocks(int n, int m, long long first, long long second) {
  fp::Mat D = fp::zeros(n, n);
  for (int k = 0; k < n; ++k) D[k][k] = k < m ? first : second;
  return D;
}
}  // namespace detail

inline ZipPoint sample_point(const Signature& sig, long long p, std::uint64_t seed) {
  (void)Prime{p};
  Rng rng(seed);
  const int N = sig.N, n = sig.n;
  std::vector<fp::Mat> P, Qm;
  for (int i = 0; i < N; ++i) {
    P.push_back(fp::random_invertible(n, p, p, rng));
    Qm.push_back(fp::random_invertible(n, p, p, rng));
  }
  ZipPoint pt{sig, p, {}, {}};
  for (int i = 0; i < N; ++i) {
    int nx = wrap(i + 1, N), m = sig.m[nx];
    const fp::Mat& Pn = P[nx];
    pt.V.push_back(fp::mul(fp::mul(Pn, detail::diag_blocks(n, m, 1, 0), p), Qm[i], p));
    pt.F.push_back(fp::mul(fp::mul(fp::inverse(Qm[i], p, p), detail::diag_blocks(n, m, 0, 1), p),
                           fp::inverse(Pn, p, p), p));
  }
  return pt;
}

// Names of the violated Dieudonne identities (empty when the point is valid).
inline std::vector<std::string> check_point(const ZipPoint& pt) {
  std::vector<std::string> bad;
  const int N = pt.sig.N, n = pt.sig.n;
  const long long p = pt.p;
  for (int i = 0; i < N; ++i) {
    std::string at = " at place " + std::to_string(i + 1);
    if (!fp::is_zero(fp::mul(pt.F[i], pt.V[i], p))) bad.push_back("FV = 0" + at);
    if (!fp::is_zero(fp::mul(pt.V[i], pt.F[i], p))) bad.push_back("VF = 0" + at);
    if (fp::rank(pt.V[i], p) != pt.sig.m[wrap(i + 1, N)]) bad.push_back("rank V" + at);
    auto imV = fp::column_space(pt.V[i], p), kerF = fp::kernel(pt.F[i], n, p);
    auto imF = fp::column_space(pt.F[i], p), kerV = fp::kernel(pt.V[i], n, p);
    if (imV != kerF) bad.push_back("Im V = Ker F" + at);
    if (imF != kerV) bad.push_back("Im F = Ker V" + at);
  }
  return bad;
}

// omega_i = V(D_{i-1}); the whole space where the Hodge rank is zero.
inline fp::Subspace omega_tilde(const ZipPoint& pt, int i) {
  const int N = pt.sig.N;
  i = wrap(i, N);
  if (pt.sig.m[i] == 0) return fp::full(pt.sig.n);
  return fp::column_space(pt.V[wrap(i - 1, N)], pt.p);
}

// V_es^{-1} of a subspace of D_{q+1}, landing in D_q.
inline fp::Subspace ves_inverse(const ZipPoint& pt, int q, const fp::Subspace& W) {
  const int N = pt.sig.N;
  q = wrap(q, N);
  if (pt.sig.m[wrap(q + 1, N)] != 0) return fp::preimage(pt.V[q], W, pt.sig.n, pt.p);
  return fp::image(pt.F[q], W, pt.p);
}

inline SlopeVector empirical_slope(const ZipPoint& pt, int i, const fp::Subspace& S) {
  const int N = pt.sig.N, n = pt.sig.n;
  for (auto& v : S)
    if (static_cast<int>(v.size()) != n) throw InputError("empirical_slope: dimension mismatch");
  if (!fp::contains(omega_tilde(pt, i), S, pt.p))
    throw InputError("empirical_slope: subspace is not inside the Hodge bundle");
  std::vector<int> rt{fp::dim(S)};
  fp::Subspace cur = S;
  for (int j = 1; j <= N; ++j) {
    int q = wrap(i - j, N);
    fp::Subspace W = ves_inverse(pt, q, cur);
    cur = fp::intersect(j < N ? omega_tilde(pt, q) : S, W, n, pt.p);
    rt.push_back(fp::dim(cur));
  }
  return slope_from_ranks(pt.sig, i, rt);
}

// Lexicographic maximum of empirical slopes over `samples` random points and
// random rank-r subspaces.
inline SlopeVector max_empirical_slope(const Signature& sig, long long p, int i, int r,
                                       int samples, std::uint64_t seed) {
  SlopeVector best;
  bool have = false;
  for (int s = 0; s < samples; ++s) {
    std::uint64_t sd = seed + static_cast<std::uint64_t>(s) * 0x100000001B3ULL;
    ZipPoint pt = sample_point(sig, p, sd);
    Rng rng(sd ^ 0xABCDEFULL);
    auto S = fp::random_subspace(omega_tilde(pt, i), r, sig.n, p, rng);
    SlopeVector sv = empirical_slope(pt, i, S);
    if (!have || compare_slopes(sv, best) > 0) best = sv;
    have = true;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lattice model

inline LatticePoint sample_lattice(const Signature& sig, long long p, std::uint64_t seed) {
  (void)Prime{p};
  Rng rng(seed);
  const int N = sig.N, n = sig.n;
  const long long q = p * p;
  std::vector<fp::Mat> P, Qm;
  for (int i = 0; i < N; ++i) {
    P.push_back(fp::random_invertible(n, q, p, rng));
    Qm.push_back(fp::random_invertible(n, q, p, rng));
  }
  LatticePoint lp{sig, p, {}, {}};
  for (int i = 0; i < N; ++i) {
    int nx = wrap(i + 1, N), m = sig.m[nx];
    lp.V.push_back(fp::mul(fp::mul(P[nx], detail::diag_blocks(n, m, 1, p), q), Qm[i], q));
    lp.F.push_back(fp::mul(fp::mul(fp::inverse(Qm[i], q, p), detail::diag_blocks(n, m, p, 1), q),
                           fp::inverse(P[nx], q, p), q));
  }
  return lp;
}

inline ZipPoint reduce_mod_p(const LatticePoint& lp) {
  ZipPoint pt{lp.sig, lp.p, {}, {}};
  for (auto& A : lp.V) pt.V.push_back(fp::scale(A, 1, lp.p));
  for (auto& A : lp.F) pt.F.push_back(fp::scale(A, 1, lp.p));
  return pt;
}

// Length of the Z/p^2-submodule of (Z/p^2)^n generated by `gens`:
//   dim of the reduction  +  dim of {x : p x in the module}.
inline int module_length(const std::vector<fp::Vec>& gens, int n, long long p) {
  const long long q = p * p;
  if (gens.empty()) return 0;
  const int k = static_cast<int>(gens.size());
  fp::Mat G(n, fp::Vec(k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) G[i][j] = fp::md(gens[j][i], p);
  fp::Subspace red = fp::column_space(G, p);
  std::vector<fp::Vec> lower = red;
  for (auto& c : fp::kernel(G, k, p)) {
    fp::Vec y(n, 0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) y[i] = fp::md(y[i] + c[j] * gens[j][i], q);
    for (auto& v : y) {
      if (v % p) throw InternalError("module_length: kernel lift not divisible by p");
      v /= p;
    }
    lower.push_back(y);
  }
  return fp::dim(red) + fp::dim(fp::span(lower, p));
}

using ChainSelection = std::vector<fp::Subspace>;  // per place, mod p

inline bool is_chain(const ZipPoint& pt, const ChainSelection& E) {
  const int N = pt.sig.N;
  if (static_cast<int>(E.size()) != N) return false;
  for (int i = 0; i < N; ++i) {
    int nx = wrap(i + 1, N);
    if (!fp::contains(E[nx], fp::image(pt.V[i], E[i], pt.p), pt.p)) return false;
    if (!fp::contains(E[i], fp::image(pt.F[i], E[nx], pt.p), pt.p)) return false;
  }
  return true;
}

inline std::vector<int> chain_profile(const ChainSelection& E) {
  std::vector<int> l;
  for (auto& e : E) l.push_back(fp::dim(e));
  return l;
}

struct QuotientReport {
  std::vector<int> dims, expected;
  bool match = true;
};

// dim_k V E~_{i-1} / p E~_i for the lift E~_i = E_i + p M_i.
inline QuotientReport quotient_dims(const LatticePoint& lp, const ChainSelection& E) {
  ZipPoint pt = reduce_mod_p(lp);
  if (!is_chain(pt, E)) throw InputError("quotient_dims: selection is not stable under F and V");
  const int N = lp.sig.N, n = lp.sig.n;
  const long long p = lp.p, q = p * p;
  QuotientReport rep;
  for (int i = 0; i < N; ++i) {
    int pr = wrap(i - 1, N);
    std::vector<fp::Vec> top, bottom;
    for (auto& e : E[pr]) top.push_back(fp::apply(lp.V[pr], e, q));
    for (int k = 0; k < n; ++k) {
      fp::Vec ek(n, 0);
      ek[k] = p;
      top.push_back(fp::apply(lp.V[pr], ek, q));
    }
    for (auto& e : E[i]) {
      fp::Vec v = e;
      for (auto& x : v) x = fp::md(x * p, q);
      bottom.push_back(v);
    }
    int lt = module_length(top, n, p), lb = module_length(bottom, n, p);
    std::vector<fp::Vec> both = top;
    both.insert(both.end(), bottom.begin(), bottom.end());
    if (module_length(both, n, p) != lt)
      throw InternalError("quotient_dims: p E~_i is not contained in V E~_{i-1}");
    rep.dims.push_back(lt - lb);
    rep.expected.push_back(lp.sig.m[i] - fp::dim(E[i]) + fp::dim(E[pr]));
    if (rep.dims.back() != rep.expected.back()) rep.match = false;
  }
  return rep;
}

// Smallest F,V-stable selection containing the given vectors.
inline ChainSelection closure(const ZipPoint& pt, ChainSelection E) {
  const int N = pt.sig.N;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < N; ++i) {
      int nx = wrap(i + 1, N);
      auto a = fp::sum(E[nx], fp::image(pt.V[i], E[i], pt.p), pt.p);
      if (a != E[nx]) {
        E[nx] = a;
        changed = true;
      }
      auto b = fp::sum(E[i], fp::image(pt.F[i], E[nx], pt.p), pt.p);
      if (b != E[i]) {
        E[i] = b;
        changed = true;
      }
    }
  }
  return E;
}

inline ChainSelection omega_chain(const ZipPoint& pt) {
  ChainSelection E;
  for (int i = 0; i < pt.sig.N; ++i)
    E.push_back(fp::column_space(pt.V[wrap(i - 1, pt.sig.N)], pt.p));
  return E;
}

inline ChainSelection kernel_chain(const ZipPoint& pt) {
  ChainSelection E;
  for (int i = 0; i < pt.sig.N; ++i) E.push_back(fp::kernel(pt.V[i], pt.sig.n, pt.p));
  return E;
}

// Random closure of a few random vectors.
inline ChainSelection random_chain(const ZipPoint& pt, Rng& rng) {
  const int N = pt.sig.N, n = pt.sig.n;
  ChainSelection E(N);
  int seeds = 1 + static_cast<int>(rng.below(2));
  for (int s = 0; s < seeds; ++s) {
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
    E[i] = fp::sum(E[i], {fp::random_in(fp::full(n), n, pt.p, rng)}, pt.p);
  }
  return closure(pt, E);
}

struct ChainSearch {
  std::vector<ChainSelection> found;
  int tried = 0;
  bool budget_exhausted = false;
};

inline ChainSearch find_chains(const ZipPoint& pt, const std::vector<int>& profile, int budget,
                               std::uint64_t seed) {
  const int N = pt.sig.N, n = pt.sig.n;
  if (static_cast<int>(profile.size()) != N) throw InputError("find_chains: profile needs N ranks");
  ChainSearch res;
  std::set<ChainSelection> seen;
  auto offer = [&](const ChainSelection& E) {
    if (chain_profile(E) == profile && is_chain(pt, E) && seen.insert(E).second)
      res.found.push_back(E);
  };
  offer(ChainSelection(N));
  offer(ChainSelection(N, fp::full(n)));
  offer(omega_chain(pt));
  offer(kernel_chain(pt));
  Rng rng(seed);
  for (; res.tried < budget; ++res.tried) {
    offer(random_chain(pt, rng));
    if (!res.found.empty() && res.tried >= budget / 4) break;
  }
  res.budget_exhausted = res.tried >= budget && res.found.empty();
  return res;
}

}  // namespace unef
