#pragma once

#include "unef/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace unef {

// Places are 0-based internally (0..N-1); everything user-facing (JSON,
// constraint names, CLI flags) is 1-based.  Graded positions j are also
// 0-based in containers, while ranks (sizes of subbundles) are plain counts.

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct Prime {
  long long p = 2;
  explicit Prime(long long v) : p(v) {
    if (!is_prime(v)) throw InputError("p = " + std::to_string(v) + " is not a prime");
  }
  operator long long() const { return p; }
};

class Signature {
 public:
  Signature() = default;

  int N = 0;
  int n = 0;
  std::vector<int> m;

  int mt(int i) const {  // rank of the essential Hodge bundle
    int v = m[wrap(i, N)];
    return v == 0 ? n : v;
  }
  int nt(int i) const { return n - mt(i); }
  int nn(int i) const { return n - m[wrap(i, N)]; }
  bool essential(int i) const {
    int v = m[wrap(i, N)];
    return v != 0 && v != n;
  }
  std::vector<int> T() const {
    std::vector<int> out;
    for (int i = 0; i < N; ++i)
      if (essential(i)) out.push_back(i);
    return out;
  }
  int t() const { return static_cast<int>(T().size()); }

  // Smallest a >= 1 with i + a essential.  Only meaningful when t >= 1.
  int a(int i) const {
    for (int d = 1; d <= N; ++d)
      if (essential(i + d)) return d;
    throw InputError("gap map undefined: no essential place");
  }

  // Position of place i in T, or -1.
  int t_index(int i) const {
    auto tt = T();
    auto it = std::find(tt.begin(), tt.end(), wrap(i, N));
    return it == tt.end() ? -1 : static_cast<int>(it - tt.begin());
  }

  // Nearest essential place strictly before i (cyclically); i itself when
  // i is the only essential place.
  int prev_essential(int i) const {
    for (int d = 1; d <= N; ++d)
      if (essential(i - d)) return wrap(i - d, N);
    throw InputError("no essential place");
  }

  bool operator==(const Signature& o) const { return N == o.N && n == o.n && m == o.m; }
};

// Procedure: validate_signature
inline Signature validate_signature(int N, int n, const std::vector<int>& m) {
  if (N <= 0) throw InputError("no places (N must be >= 1)");
  if (n < 2) throw InputError("n must be >= 2");
  if (static_cast<int>(m.size()) != N)
    throw InputError("m has " + std::to_string(m.size()) + " entries, expected N = " +
                     std::to_string(N));
  for (int i = 0; i < N; ++i)
    if (m[i] < 0 || m[i] > n)
      throw InputError("m out of range at place " + std::to_string(i + 1));
  Signature s;
  s.N = N;
  s.n = n;
  s.m = m;
  return s;
}

struct EssentialData {
  std::vector<int> T;  // 0-based, increasing
  int t = 0;
  std::vector<int> a;  // a[i] for every place; empty when t == 0
};

inline EssentialData essential_set(const Signature& sig) {
  EssentialData e;
  e.T = sig.T();
  e.t = static_cast<int>(e.T.size());
  if (e.t > 0)
    for (int i = 0; i < sig.N; ++i) e.a.push_back(sig.a(i));
  return e;
}

// ---------------------------------------------------------------------------
// Weights

// k[i][j] = k^{i+1}_{j+1}
struct FlagWeight {
  QMat k;
  bool operator==(const FlagWeight& o) const { return k == o.k; }
};

// Coefficients k_l of det(omega_{i_l}), indexed by the essential set.
struct ParallelWeightX {
  QVec k;
};

// det(omega_i / F^i_j)^{k_i} (x) det(F^i_j)^{alpha} (x) other det(omega)^{k}.
// `place` is 0-based, `j` is the rank of F.  For j > rank omega the quotient
// omega/F is read as (F/omega)^dual.  At non-essential places omega~ = H has
// trivial determinant, so only alpha matters there.
struct MinimalFlagWeight {
  int place = 0;
  int j = 1;
  QVec k;  // indexed by T
  Q alpha;
};

// Per place: ordered (length, value) blocks, lengths summing to n.
struct BlockWeight {
  std::vector<std::vector<std::pair<int, Q>>> blocks;
};

inline void check_dims(const Signature& sig, const FlagWeight& w) {
  if (static_cast<int>(w.k.size()) != sig.N)
    throw InputError("flag weight has " + std::to_string(w.k.size()) + " rows, expected " +
                     std::to_string(sig.N));
  for (int i = 0; i < sig.N; ++i)
    if (static_cast<int>(w.k[i].size()) != sig.n)
      throw InputError("flag weight row " + std::to_string(i + 1) + " has wrong length");
}

inline void check_dims(const Signature& sig, const ParallelWeightX& w) {
  if (static_cast<int>(w.k.size()) != sig.t())
    throw InputError("parallel weight needs one entry per essential place (t = " +
                     std::to_string(sig.t()) + ")");
}

inline void check_minimal(const Signature& sig, const MinimalFlagWeight& w) {
  if (w.place < 0 || w.place >= sig.N) throw InputError("minimal weight: place out of range");
  if (w.j < 1 || w.j > sig.n - 1) throw InputError("minimal weight: rank j must be in [1, n-1]");
  if (sig.essential(w.place) && w.j == sig.m[w.place])
    throw InputError("minimal weight with j = m_i degenerates to a parallel weight");
  if (static_cast<int>(w.k.size()) != sig.t())
    throw InputError("minimal weight: k needs one entry per essential place");
}

// Refinement of the Hodge two-block partition (m_i, n - m_i).
inline void check_blocks(const Signature& sig, const BlockWeight& w) {
  if (static_cast<int>(w.blocks.size()) != sig.N)
    throw InputError("block weight: expected one block list per place");
  for (int i = 0; i < sig.N; ++i) {
    int total = 0;
    bool hits = sig.m[i] == 0 || sig.m[i] == sig.n;
    for (auto& [len, v] : w.blocks[i]) {
      if (len <= 0) throw InputError("block weight: block lengths must be positive");
      total += len;
      if (total == sig.m[i]) hits = true;
    }
    if (total != sig.n)
      throw InputError("block weight: lengths at place " + std::to_string(i + 1) +
                       " do not sum to n");
    if (!hits)
      throw InputError("refinement violation at place " + std::to_string(i + 1) +
                       ": no block boundary at m_i");
  }
}

// Constructors of the two named specialisations.

inline BlockWeight to_blocks(const Signature& sig, const FlagWeight& w) {
  check_dims(sig, w);
  BlockWeight b;
  b.blocks.resize(sig.N);
  for (int i = 0; i < sig.N; ++i)
    for (int j = 0; j < sig.n; ++j) b.blocks[i].push_back({1, w.k[i][j]});
  return b;
}

inline BlockWeight to_blocks(const Signature& sig, const ParallelWeightX& w) {
  check_dims(sig, w);
  BlockWeight b;
  b.blocks.resize(sig.N);
  auto T = sig.T();
  for (int i = 0; i < sig.N; ++i) {
    int l = sig.t_index(i);
    Q v = l >= 0 ? w.k[l] : Q(0);
    int mi = sig.m[i];
    if (mi > 0) b.blocks[i].push_back({mi, v});
    if (sig.n - mi > 0) b.blocks[i].push_back({sig.n - mi, Q(0)});
  }
  return b;
}

inline BlockWeight to_blocks(const Signature& sig, const MinimalFlagWeight& w) {
  check_minimal(sig, w);
  BlockWeight b = to_blocks(sig, ParallelWeightX{w.k});
  const int i = w.place, j = w.j, n = sig.n;
  auto& row = b.blocks[i];
  row.clear();
  auto push = [&](int len, const Q& v) {
    if (len > 0) row.push_back({len, v});
  };
  if (!sig.essential(i)) {
    push(j, w.alpha);
    push(n - j, Q(0));
  } else {
    const int mi = sig.m[i];
    const Q& ki = w.k[sig.t_index(i)];
    if (j < mi) {
      push(j, w.alpha);
      push(mi - j, ki);
      push(n - mi, Q(0));
    } else {  // j > mi: det(F/omega)^{-k} (x) det(F)^{alpha}
      push(mi, w.alpha);
      push(j - mi, Q(w.alpha - ki));
      push(n - j, Q(0));
    }
  }
  return b;
}

// Procedure: expand_weight
inline FlagWeight expand_weight(const Signature& sig, const BlockWeight& w) {
  check_blocks(sig, w);
  FlagWeight f;
  f.k.assign(sig.N, QVec(sig.n));
  for (int i = 0; i < sig.N; ++i) {
    int pos = 0;
    for (auto& [len, v] : w.blocks[i])
      for (int r = 0; r < len; ++r) f.k[i][pos++] = v;
  }
  return f;
}

// Inverse of the parallel-weight expansion; fails when the flag weight is
// not of the form (k_i, ..., k_i, 0, ..., 0) at essential places and zero
// elsewhere.
inline std::optional<ParallelWeightX> collapse_to_parallel(const Signature& sig,
                                                           const FlagWeight& w) {
  check_dims(sig, w);
  ParallelWeightX x;
  for (int i = 0; i < sig.N; ++i) {
    bool ess = sig.essential(i);
    Q v = ess ? w.k[i][0] : Q(0);
    for (int j = 0; j < sig.n; ++j) {
      Q want = (ess && j < sig.m[i]) ? v : Q(0);
      if (w.k[i][j] != want) return std::nullopt;
    }
    if (ess) x.k.push_back(v);
  }
  return x;
}

// A weight as it arrives from the outside world.
using AnyWeight = std::variant<FlagWeight, ParallelWeightX, MinimalFlagWeight, BlockWeight>;

inline BlockWeight to_blocks(const Signature& sig, const AnyWeight& w) {
  return std::visit(
      [&](const auto& x) -> BlockWeight {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BlockWeight>) {
          check_blocks(sig, x);
          return x;
        } else {
          return to_blocks(sig, x);
        }
      },
      w);
}

inline FlagWeight expand_weight(const Signature& sig, const AnyWeight& w) {
  return expand_weight(sig, to_blocks(sig, w));
}

}  // namespace unef
