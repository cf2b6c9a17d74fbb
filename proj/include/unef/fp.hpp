#pragma once

#include "unef/rational.hpp"

#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

namespace unef::fp {

// Dense linear algebra over Z/m for small m (a prime p, or p^2 for the
// lattice model).  Matrices are row-major; subspaces of F_p^n are lists of
// basis vectors kept in reduced row echelon form so they compare by value.

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;
using Subspace = std::vector<Vec>;

inline long long md(long long x, long long m) {
  x %= m;
  return x < 0 ? x + m : x;
}

inline long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = md(a, m);
  while (a1) {
    long long q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InternalError("element not invertible");
  return md(x, m);
}

inline Mat identity(int n) {
  Mat I(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline Mat zeros(int r, int c) { return Mat(r, Vec(c, 0)); }

inline Mat mul(const Mat& A, const Mat& B, long long m) {
  const std::size_t r = A.size(), k = B.size(), c = B.empty() ? 0 : B[0].size();
  Mat C(r, Vec(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) C[i][j] = md(C[i][j] + A[i][t] * B[t][j], m);
    }
  return C;
}

inline Vec apply(const Mat& A, const Vec& v, long long m) {
  Vec out(A.size(), 0);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = md(out[i] + A[i][j] * v[j], m);
  return out;
}

inline bool is_zero(const Mat& A) {
  for (auto& r : A)
    for (auto v : r)
      if (v) return false;
  return true;
}

inline Mat scale(Mat A, long long s, long long m) {
  for (auto& r : A)
    for (auto& v : r) v = md(v * s, m);
  return A;
}

// Reduced row echelon form over F_p; returns pivot columns.
inline std::vector<int> rref(Mat& A, long long p) {
  std::vector<int> piv;
  const int R = static_cast<int>(A.size());
  const int C = R ? static_cast<int>(A[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int s = -1;
    for (int i = r; i < R; ++i)
      if (md(A[i][c], p)) {
        s = i;
        break;
      }
    if (s < 0) continue;
    std::swap(A[r], A[s]);
    long long iv = inv_mod(A[r][c], p);
    for (auto& v : A[r]) v = md(v * iv, p);
    for (int i = 0; i < R; ++i) {
      if (i == r || md(A[i][c], p) == 0) continue;
      long long f = A[i][c];
      for (int k = 0; k < C; ++k) A[i][k] = md(A[i][k] - f * A[r][k], p);
    }
    piv.push_back(c);
    ++r;
  }
  A.resize(r);
  return piv;
}

inline int rank(Mat A, long long p) { return static_cast<int>(rref(A, p).size()); }

// Canonical basis of the span of the given vectors (all of length n).
inline Subspace span(const std::vector<Vec>& vs, long long p) {
  Mat A = vs;
  for (auto& r : A)
    for (auto& v : r) v = md(v, p);
  rref(A, p);
  return A;
}

inline int dim(const Subspace& U) { return static_cast<int>(U.size()); }

// {x : A x = 0}
inline Subspace kernel(const Mat& A, int cols, long long p) {
  Mat R = A;
  for (auto& r : R)
    for (auto& v : r) v = md(v, p);
  auto piv = rref(R, p);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = md(-R[r][f], p);
    out.push_back(x);
  }
  return span(out, p);
}

inline Subspace image(const Mat& A, const Subspace& U, long long p) {
  std::vector<Vec> out;
  for (auto& u : U) out.push_back(apply(A, u, p));
  return span(out, p);
}

inline Subspace column_space(const Mat& A, long long p) {
  const int n = A.empty() ? 0 : static_cast<int>(A[0].size());
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) {
    Vec c(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) c[i] = A[i][j];
    cols.push_back(c);
  }
  return span(cols, p);
}

inline Subspace sum(const Subspace& U, const Subspace& W, long long p) {
  std::vector<Vec> all = U;
  all.insert(all.end(), W.begin(), W.end());
  return span(all, p);
}

inline bool contains(const Subspace& U, const Subspace& W, long long p) {
  return dim(sum(U, W, p)) == dim(U);
}

inline Subspace intersect(const Subspace& U, const Subspace& W, int n, long long p) {
  if (U.empty() || W.empty()) return {};
  const int a = dim(U), b = dim(W);
  Mat M(n, Vec(a + b, 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < a; ++k) M[i][k] = U[k][i];
    for (int k = 0; k < b; ++k) M[i][a + k] = md(-W[k][i], p);
  }
  std::vector<Vec> out;
  for (auto& c : kernel(M, a + b, p)) {
    Vec v(n, 0);
    for (int k = 0; k < a; ++k)
      for (int i = 0; i < n; ++i) v[i] = md(v[i] + c[k] * U[k][i], p);
    out.push_back(v);
  }
  return span(out, p);
}

// {x : A x in W}; A maps F_p^{n_in} -> F_p^{n_out}
inline Subspace preimage(const Mat& A, const Subspace& W, int n_in, long long p) {
  const int n_out = static_cast<int>(A.size());
  const int b = dim(W);
  Mat M(n_out, Vec(n_in + b, 0));
  for (int i = 0; i < n_out; ++i) {
    for (int k = 0; k < n_in; ++k) M[i][k] = A[i][k];
    for (int k = 0; k < b; ++k) M[i][n_in + k] = md(-W[k][i], p);
  }
  std::vector<Vec> out;
  for (auto& c : kernel(M, n_in + b, p)) out.push_back(Vec(c.begin(), c.begin() + n_in));
  return span(out, p);
}

inline Subspace full(int n) { return identity(n); }

// Inverse over Z/m where every pivot must be a unit (m = p or p^2).
inline Mat inverse(const Mat& A, long long m, long long p) {
  const int n = static_cast<int>(A.size());
  Mat M(n, Vec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = md(A[i][j], m);
    M[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int s = -1;
    for (int i = c; i < n; ++i)
      if (md(M[i][c], p)) {
        s = i;
        break;
      }
    if (s < 0) throw InternalError("matrix not invertible");
    std::swap(M[c], M[s]);
    long long iv = inv_mod(M[c][c], m);
    for (auto& v : M[c]) v = md(v * iv, m);
    for (int i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      long long f = M[i][c];
      for (int k = 0; k < 2 * n; ++k) M[i][k] = md(M[i][k] - f * M[c][k], m);
    }
  }
  Mat out(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = M[i][n + j];
  return out;
}

inline Mat random_matrix(int r, int c, long long m, Rng& rng) {
  Mat A(r, Vec(c));
  for (auto& row : A)
    for (auto& v : row) v = static_cast<long long>(rng.below(static_cast<std::uint64_t>(m)));
  return A;
}

// Uniform over matrices whose reduction mod p is invertible.
inline Mat random_invertible(int n, long long m, long long p, Rng& rng) {
  for (;;) {
    Mat A = random_matrix(n, n, m, rng);
    if (rank(A, p) == n) return A;
  }
}

inline Vec random_in(const Subspace& U, int n, long long p, Rng& rng) {
  Vec v(n, 0);
  for (auto& u : U) {
    long long c = static_cast<long long>(rng.below(static_cast<std::uint64_t>(p)));
    for (int i = 0; i < n; ++i) v[i] = md(v[i] + c * u[i], p);
  }
  return v;
}

inline Subspace random_subspace(const Subspace& U, int r, int n, long long p, Rng& rng) {
  if (r > dim(U)) throw InputError("requested subspace larger than the ambient space");
  for (;;) {
    std::vector<Vec> vs;
    for (int k = 0; k < r; ++k) vs.push_back(random_in(U, n, p, rng));
    Subspace S = span(vs, p);
    if (dim(S) == r) return S;
  }
}

}  // namespace unef::fp
