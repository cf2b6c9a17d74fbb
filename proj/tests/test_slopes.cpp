#include "oracles.hpp"
#include "unef/slopes.hpp"
#include "unef/zipmodp.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace unef;

namespace {

std::vector<int> ranks(const Tower& t) {
  std::vector<int> v;
  for (auto& l : t.layers)
    for (auto& c : l) v.push_back(c.rank);
  return v;
}

}  // namespace

TEST(Slope, FromRanksExample) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto sv = slope_from_ranks(sig, 0, {2, 1, 0, 2});
  EXPECT_EQ(sv.r, (std::vector<int>{2, 3, 1}));
  auto t = total_and_chain(sig, sv);
  EXPECT_EQ(t.total, 6);
  EXPECT_EQ(t.chain_bound, 1 + 3 + 2);
  EXPECT_TRUE(t.chain);
}

TEST(Slope, RangeErrors) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  EXPECT_THROW(slope_from_ranks(sig, 0, {2, 1, 0}), InputError);
  EXPECT_THROW(slope_from_ranks(sig, 0, {5, 1, 0, 2}), InputError);
  EXPECT_THROW(slope_from_ranks(sig, 0, {2, 4, 0, 2}), InputError);  // r~_1 > m~_3
  EXPECT_THROW(slope_from_ranks(sig, 3, {2, 1, 0, 2}), InputError);
  EXPECT_THROW(generic_slope(sig, 0, 5), InputError);
}

TEST(Slope, Generic) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  EXPECT_EQ(generic_slope(sig, 0, 2).r, (std::vector<int>{2, 3, 3}));
  EXPECT_EQ(generic_slope(sig, 0, 0).r, (std::vector<int>{1, 2, 3}));
}

TEST(Slope, Compare) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto a = slope_from_ranks(sig, 0, {2, 1, 0, 2});
  auto b = generic_slope(sig, 0, 2);
  EXPECT_EQ(compare_slopes(a, b), -1);
  EXPECT_EQ(compare_slopes(b, a), 1);
  EXPECT_EQ(compare_slopes(a, a), 0);
  EXPECT_THROW(compare_slopes(a, generic_slope(sig, 0, 1)), InputError);
}

TEST(Tower, Example) {
  auto tw = tower(validate_signature(3, 7, {5, 6, 4}), 0, 2, {3, 0, 4});
  EXPECT_EQ(ranks(tw), (std::vector<int>{1, 4, 1, 5, 2, 3, 6, 3, 4}));
  EXPECT_EQ(tw.layers[0][0].place, 2);
  EXPECT_EQ(tw.layers[1][0].place, 1);
  EXPECT_EQ(tw.termination_layer, 4);
  EXPECT_EQ(tw.termination_reason, "out-of-bounds");
  EXPECT_EQ(tw.violating.rank, 7);
  EXPECT_EQ(tw.violating_bound, 6);
  EXPECT_EQ(tw.delta, 1);
}

TEST(Tower, ChainStopsAtOnce) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto tw = tower(sig, 0, 2, {2, 3, 1});
  EXPECT_EQ(tw.delta, 0);
  EXPECT_EQ(tw.layers.size(), 1u);
  EXPECT_EQ(tw.termination_reason, "chain");
}

TEST(Tower, AlwaysTerminates) {
  Rng rng(31);
  for (int it = 0; it < 400; ++it) {
    int N = static_cast<int>(rng.range(1, 3)), n = static_cast<int>(rng.range(2, 6));
    std::vector<int> m(N);
    for (auto& v : m) v = static_cast<int>(rng.range(0, n));
    auto sig = validate_signature(N, n, m);
    int i = static_cast<int>(rng.below(N));
    int r = static_cast<int>(rng.range(0, sig.mt(i)));
    auto g = generic_slope(sig, i, r);
    Tower tw;
    ASSERT_NO_THROW(tw = tower(sig, i, r, g.r));
    EXPECT_GE(tw.termination_layer, 2);
  }
}

TEST(Aux, Signatures) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto a = aux_signature(sig, {1, 1, 1}, false);
  EXPECT_EQ(a.sig.m, sig.m);
  auto b = aux_signature(sig, {2, 1, 0}, false);
  EXPECT_EQ(b.sig.m, (std::vector<int>{2, 3, 4}));
  EXPECT_THROW(aux_signature(sig, {0, 0, 5}, false), InputError);
  auto z = validate_signature(2, 4, {0, 2});
  auto e = aux_signature(z, {1, 1}, true);
  EXPECT_EQ(e.sig.m, (std::vector<int>{4, 0}));
  EXPECT_EQ(e.t, 0);
}

TEST(Aux, DegreeBounds) {
  auto s = validate_signature(3, 5, {4, 2, 3});
  auto sp = validate_signature(3, 5, {4, 2, 0});
  EXPECT_EQ(essential_degree_bounds(sp, s, true).bound, 3);
  EXPECT_THROW(essential_degree_bounds(sp, s, false), InternalError);
  EXPECT_EQ(essential_degree_bounds(s, sp, false).rule, "t' <= t");
}

TEST(Diagram, TopsAndBottoms) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto d = render_diagram(sig);
  ASSERT_EQ(d.top.size(), 4u);
  for (int c = 0; c + 1 < 4; ++c) EXPECT_EQ(d.top[c] - d.bottom[c], sig.mt(c % 3));
  // H of one column sits level with omega of the next
  for (int c = 0; c + 1 < 4; ++c) EXPECT_EQ(d.bottom[c] + sig.n, d.top[c + 1]);
  EXPECT_EQ(d.trunk.size(), 6u);
  std::size_t nodes = 0;
  for (int c = 0; c < 4; ++c) nodes += sig.mt(c % 3) + 1;
  EXPECT_EQ(d.nodes.size(), nodes);
  EXPECT_EQ(d.nodes.front().label, "0");
}

TEST(Diagram, Overlay) {
  auto sig = validate_signature(3, 5, {4, 2, 3});
  auto sv = slope_from_ranks(sig, 0, {2, 1, 0, 2});
  auto d = render_diagram(sig, {slope_overlay(sig, sv)});
  ASSERT_EQ(d.overlay.size(), 3u);
  EXPECT_EQ(d.overlay[0].c1, 4);
  EXPECT_EQ(d.overlay.back().c2, 1);
  EXPECT_THROW(render_diagram(sig, {{{1, 0}, {7, 0}}}), InputError);
  EXPECT_FALSE(diagram_ascii(d).empty());
  auto svg = diagram_svg(d);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}

// Brute force over F_p^n: subspaces as explicit vector sets.
namespace {

using VSet = std::set<fp::Vec>;

VSet all_vectors(int n, long long p) {
  VSet out;
  fp::Vec v(n, 0);
  for (;;) {
    out.insert(v);
    int k = 0;
    while (k < n && v[k] == p - 1) v[k++] = 0;
    if (k == n) break;
    ++v[k];
  }
  return out;
}

VSet span_set(const fp::Subspace& U, int n, long long p) {
  VSet out;
  const int d = static_cast<int>(U.size());
  for (auto& c : all_vectors(d, p)) {
    fp::Vec v(n, 0);
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < n; ++j) v[j] = fp::md(v[j] + c[k] * U[k][j], p);
    out.insert(v);
  }
  return out;
}

int log_size(std::size_t s, long long p) {
  int d = 0;
  while (s > 1) s /= static_cast<std::size_t>(p), ++d;
  return d;
}

std::vector<int> brute_rtilde(const ZipPoint& pt, int i, const fp::Subspace& S) {
  const int N = pt.sig.N, n = pt.sig.n;
  const long long p = pt.p;
  auto all = all_vectors(n, p);
  auto omega = [&](int q) {
    q = wrap(q, N);
    if (pt.sig.m[q] == 0) return all;
    VSet o;
    for (auto& x : all) o.insert(fp::apply(pt.V[wrap(q - 1, N)], x, p));
    return o;
  };
  VSet Sset = span_set(S, n, p), cur = Sset;
  std::vector<int> rt{log_size(cur.size(), p)};
  for (int j = 1; j <= N; ++j) {
    int q = wrap(i - j, N);
    VSet W;
    if (pt.sig.m[wrap(q + 1, N)] != 0) {
      for (auto& x : all)
        if (cur.count(fp::apply(pt.V[q], x, p))) W.insert(x);
    } else {
      for (auto& y : cur) W.insert(fp::apply(pt.F[q], y, p));
    }
    VSet target = j < N ? omega(q) : Sset, next;
    for (auto& x : W)
      if (target.count(x)) next.insert(x);
    cur = next;
    rt.push_back(log_size(cur.size(), p));
  }
  return rt;
}

}  // namespace

TEST(Empirical, MatchesBruteForce) {
  Rng rng(77);
  for (int it = 0; it < 150; ++it) {
    int N = static_cast<int>(rng.range(1, 2)), n = static_cast<int>(rng.range(2, 3));
    long long p = rng.below(2) ? 2 : 3;
    std::vector<int> m(N);
    for (auto& v : m) v = static_cast<int>(rng.range(0, n));
    auto sig = validate_signature(N, n, m);
    auto pt = sample_point(sig, p, rng.next());
    int i = static_cast<int>(rng.below(N));
    int r = static_cast<int>(rng.range(0, sig.mt(i)));
    auto S = fp::random_subspace(omega_tilde(pt, i), r, n, p, rng);
    auto sv = empirical_slope(pt, i, S);
    EXPECT_EQ(sv.rtilde, brute_rtilde(pt, i, S));
  }
}

TEST(Empirical, MaximumIsGeneric) {
  Rng rng(2024);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    int N = static_cast<int>(rng.range(1, 3)), n = static_cast<int>(rng.range(2, 5));
    std::vector<int> m(N);
    for (auto& v : m) v = static_cast<int>(rng.range(0, n));
    auto sig = validate_signature(N, n, m);
    int i = static_cast<int>(rng.below(N));
    int r = static_cast<int>(rng.range(0, sig.mt(i)));
    auto e = max_empirical_slope(sig, 7, i, r, 20, rng.next());
    auto g = generic_slope(sig, i, r);
    EXPECT_EQ(compare_slopes(e, g), 0) << "N=" << N << " n=" << n << " place " << i + 1 << " r=" << r;
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Empirical, RejectsOutsideHodge) {
  auto sig = validate_signature(1, 3, {1});
  auto pt = sample_point(sig, 3, 5);
  EXPECT_THROW(empirical_slope(pt, 0, fp::full(3)), InputError);
}
