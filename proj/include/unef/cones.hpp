#pragma once

#include "unef/rational.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace unef {

// {x : rows[r] . x >= 0 for all r}
struct ConeIneq {
  int dim = 0;
  QMat rows;
};

using RaySet = std::vector<QVec>;

struct Membership {
  bool inside = true;
  std::vector<int> tight;  // 0-based row indices with equality
};

inline Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Membership member(const ConeIneq& c, const QVec& x) {
  if (static_cast<int>(x.size()) != c.dim)
    throw InputError("dimension mismatch: point has " + std::to_string(x.size()) +
                     " coordinates, cone lives in dimension " + std::to_string(c.dim));
  Membership m;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    Q v = dot(c.rows[r], x);
    if (v < 0) m.inside = false;
    if (v == 0) m.tight.push_back(static_cast<int>(r));
  }
  return m;
}

inline void check_gaps(const std::vector<int>& a) {
  if (a.empty()) throw InputError("gap list is empty (t must be >= 1)");
  for (int v : a)
    if (v < 1) throw InputError("gaps must be >= 1");
}

// p^{a_s} x_s - x_{s+1} >= 0, cyclically.  For t = 1 the two terms land on
// the same coordinate and the row collapses to (p^N - 1) x_1.
inline ConeIneq csv_cone(long long p, const std::vector<int>& a) {
  check_gaps(a);
  const int t = static_cast<int>(a.size());
  ConeIneq c;
  c.dim = t;
  for (int s = 0; s < t; ++s) {
    QVec row(t, Q(0));
    row[s] += qpow(p, a[s]);
    row[(s + 1) % t] -= 1;
    c.rows.push_back(std::move(row));
  }
  return c;
}

// Scale so that the entries are coprime integers.  Positive rescaling keeps
// the ray, and integer form is what one writes down by hand.
inline QVec normalize_ray(QVec v) {
  Z l = 1, g = 0;
  for (auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  for (auto& x : v) {
    x *= Q(l);
    g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(x));
  }
  if (g != 0)
    for (auto& x : v) x /= Q(g);
  return v;
}

// Ray s starts with 1 at coordinate s and then multiplies by p^{a} while
// walking cyclically forward, so rows s..s-2 are tight and only the wrap row
// (slack p^N - 1) is not.
inline RaySet csv_rays(long long p, const std::vector<int>& a) {
  check_gaps(a);
  const int t = static_cast<int>(a.size());
  if (t < 2) throw InputError("ray structure degenerate for t < 2 (the cone is a half-line)");
  RaySet out;
  for (int s = 0; s < t; ++s) {
    QVec v(t);
    long long e = 0;
    for (int u = 0; u < t; ++u) {
      int c = (s + u) % t;
      v[c] = qpow(p, e);
      e += a[c];
    }
    out.push_back(normalize_ray(v));
  }
  return out;
}

inline QVec xi_transform(long long p, const std::vector<int>& a, const QVec& k) {
  if (k.size() != a.size()) throw InputError("xi_transform: length mismatch");
  QVec out(k.size());
  long long e = 0;
  for (std::size_t s = 0; s < k.size(); ++s) {
    out[s] = k[s] * qpow(p, e);
    e += a[s];
  }
  return out;
}

inline QVec xi_inverse(long long p, const std::vector<int>& a, const QVec& k) {
  if (k.size() != a.size()) throw InputError("xi_inverse: length mismatch");
  QVec out(k.size());
  long long e = 0;
  for (std::size_t s = 0; s < k.size(); ++s) {
    out[s] = k[s] / qpow(p, e);
    e += a[s];
  }
  return out;
}

inline QVec hodge_seed(long long p, const std::vector<int>& a) {
  check_gaps(a);
  return xi_inverse(p, a, QVec(a.size(), Q(1)));
}

// xi^{-1}(C_SV): rows composed with xi.
inline ConeIneq tilde_cone(long long p, const std::vector<int>& a) {
  ConeIneq c = csv_cone(p, a);
  for (auto& row : c.rows) row = xi_transform(p, a, row);
  return c;
}

inline QVec average_step(QVec x, int j) {
  if (j < 1 || j + 1 > static_cast<int>(x.size()))
    throw InputError("average_step: j out of range");
  Q m = (x[j - 1] + x[j]) / 2;
  x[j - 1] = m;
  x[j] = m;
  return x;
}

// ---------------------------------------------------------------------------
// Exact feasibility:  A c = b, c >= 0.  Phase one of the simplex method with
// Bland's rule, so it terminates without any tolerance games.

inline std::optional<QVec> nonneg_solve(const QMat& A, const QVec& b) {
  const int m = static_cast<int>(b.size());
  const int n = A.empty() ? 0 : static_cast<int>(A[0].size());
  // tableau columns: n originals, m artificials, rhs
  QMat T(m, QVec(n + m + 1, Q(0)));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    Q sgn = b[r] < 0 ? Q(-1) : Q(1);
    for (int c = 0; c < n; ++c) T[r][c] = sgn * A[r][c];
    T[r][n + r] = 1;
    T[r][n + m] = sgn * b[r];
    basis[r] = n + r;
  }
  // objective: minimise sum of artificials; reduced costs
  auto reduced = [&](int c) {
    Q z = 0;
    for (int r = 0; r < m; ++r)
      if (basis[r] >= n) z += T[r][c];
    return (c >= n ? Q(1) : Q(0)) - z;
  };
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int c = 0; c < n + m; ++c)
      if (reduced(c) < 0) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Q best;
    for (int r = 0; r < m; ++r) {
      if (T[r][enter] <= 0) continue;
      Q ratio = T[r][n + m] / T[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded: cannot happen for phase one
    Q piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave || T[r][enter] == 0) continue;
      Q f = T[r][enter];
      for (int c = 0; c <= n + m; ++c) T[r][c] -= f * T[leave][c];
    }
    basis[leave] = enter;
  }
  QVec sol(n, Q(0));
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= n) {
      if (T[r][n + m] != 0) return std::nullopt;
    } else {
      sol[basis[r]] = T[r][n + m];
    }
  }
  return sol;
}

// Coefficients c >= 0 with sum c_r ray_r = x, or nullopt.
inline std::optional<QVec> decompose_in_rays(const RaySet& rays, const QVec& x) {
  if (rays.empty()) {
    for (auto& v : x)
      if (v != 0) return std::nullopt;
    return QVec{};
  }
  const int d = static_cast<int>(x.size());
  for (auto& r : rays)
    if (static_cast<int>(r.size()) != d) throw InputError("decompose: dimension mismatch");
  QMat A(d, QVec(rays.size()));
  for (int i = 0; i < d; ++i)
    for (std::size_t r = 0; r < rays.size(); ++r) A[i][r] = rays[r][i];
  return nonneg_solve(A, x);
}

// ---------------------------------------------------------------------------

struct ClosureResult {
  std::vector<RaySet> generators;  // after each iteration (index 0 = seed)
  std::vector<Q> scores;
  bool pruned = true;
  std::vector<std::string> warnings;
};

inline Q closure_score(const RaySet& g) {
  Q best = 0;
  for (auto& v : g) {
    Q lo = *std::min_element(v.begin(), v.end());
    Q hi = *std::max_element(v.begin(), v.end());
    if (hi > 0 && lo / hi > best) best = lo / hi;
  }
  return best;
}

// Drop generators that are nonnegative combinations of the remaining ones.
inline RaySet prune(RaySet g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  for (std::size_t i = 0; i < g.size();) {
    RaySet others;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) others.push_back(g[j]);
    if (!others.empty() && decompose_in_rays(others, g[i]))
      g.erase(g.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return g;
}

// Grow the set of known nef weights (in xi-coordinates) by repeatedly
// averaging adjacent entries, starting from the Hodge seed.  The score is a
// proxy for how close the generated cone gets to the diagonal (1, ..., 1).
inline ClosureResult averaging_closure(long long p, const std::vector<int>& a, int max_iter) {
  check_gaps(a);
  const int t = static_cast<int>(a.size());
  if (t < 2) throw InputError("averaging needs t >= 2");
  ConeIneq tc = tilde_cone(p, a);
  ClosureResult res;
  RaySet g{normalize_ray(hodge_seed(p, a))};
  res.pruned = t <= 6;
  if (!res.pruned) res.warnings.push_back("pruning skipped for t > 6");
  res.generators.push_back(g);
  res.scores.push_back(closure_score(g));
  for (int it = 0; it < max_iter; ++it) {
    RaySet next = g;
    for (auto& x : g) {
      if (!member(tc, x).inside) continue;
      for (int j = 1; j < t; ++j) {
        QVec y = average_step(x, j);
        if (member(tc, y).inside) next.push_back(normalize_ray(y));
      }
    }
    if (res.pruned) {
      next = prune(std::move(next));
    } else {
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
    }
    g = std::move(next);
    res.generators.push_back(g);
    res.scores.push_back(closure_score(g));
    if (res.scores.back() == 1) break;
  }
  return res;
}

}  // namespace unef
