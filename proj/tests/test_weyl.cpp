#include "oracles.hpp"
#include "unef/weyl.hpp"

#include <gtest/gtest.h>

#include <array>
#include <set>

using namespace unef;
using namespace unef::weyl;

TEST(Perm, Basics) {
  Perm w{3, 1, 2};
  EXPECT_EQ(compose(w, inverse(w)), identity(3));
  EXPECT_EQ(length(w), 2);
  EXPECT_EQ(length(identity(4)), 0);
  EXPECT_EQ(length(Perm{4, 3, 2, 1}), 6);
  EXPECT_EQ(compose(simple(3, 1), simple(3, 2)), (Perm{2, 3, 1}));
  EXPECT_TRUE(is_perm(w));
  EXPECT_FALSE(is_perm(Perm{1, 1, 2}));
}

TEST(Perm, ReducedWordRoundTrip) {
  for (int n = 1; n <= 5; ++n)
    for (auto& w : all_perms(n)) {
      auto word = reduced_word(w);
      EXPECT_EQ(static_cast<int>(word.size()), length(w));
      Perm x = identity(n);
      for (int k : word) x = compose(x, simple(n, k));
      EXPECT_EQ(x, w);
    }
}

TEST(Bruhat, SmallCases) {
  auto s1 = simple(3, 1), s2 = simple(3, 2);
  EXPECT_TRUE(bruhat_leq(s1, compose(s1, s2)));
  EXPECT_TRUE(bruhat_leq(identity(3), s1));
  EXPECT_FALSE(bruhat_leq(s1, s2));
  EXPECT_FALSE(bruhat_leq(s2, s1));
  EXPECT_FALSE(bruhat_leq(compose(s1, s2), compose(s2, s1)));
}

TEST(Bruhat, RankCriterionMatchesSubwords) {
  for (int n = 1; n <= 4; ++n) {
    auto P = all_perms(n);
    for (auto& u : P)
      for (auto& v : P) EXPECT_EQ(bruhat_leq(u, v), bruhat_leq_subword(u, v));
  }
}

TEST(Cosets, CountsAndDimension) {
  for (int n = 2; n <= 5; ++n)
    for (int m = 0; m <= n; ++m) {
      auto sig = validate_signature(1, n, {m});
      auto I = hodge_type(sig);
      auto reps = min_reps(I, n);
      EXPECT_EQ(static_cast<long long>(reps.size()), oracle::binom(n, m));
      int top = 0;
      for (auto& w : reps) top = std::max(top, eo_dimension(w, I));
      EXPECT_EQ(top, m * (n - m));
      EXPECT_EQ(static_cast<long long>(parabolic_subgroup(I, n).size()),
                static_cast<long long>(all_perms(n).size()) / oracle::binom(n, m));
    }
}

TEST(Cosets, UniqueMinimalInEachCoset) {
  // every permutation is uniquely y * w with y in W_I, w in ^I W
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m < n; ++m) {
      ParabolicType I{{m, n - m}};
      auto WI = parabolic_subgroup(I, n);
      auto reps = min_reps(I, n);
      std::set<Perm> seen;
      for (auto& y : WI)
        for (auto& w : reps) {
          auto x = compose(y[0], w[0]);
          EXPECT_TRUE(seen.insert(x).second);
          EXPECT_EQ(length(x), length(y[0]) + length(w[0]));
        }
      EXPECT_EQ(seen.size(), all_perms(n).size());
    }
}

TEST(Cosets, BadTypes) {
  EXPECT_THROW(min_reps({{2, 2}}, 3), InputError);
  EXPECT_THROW(min_reps({{0, 3}}, 3), InputError);
  EXPECT_THROW(eo_dimension({{1, 3, 2}}, {{1, 2}}), InputError);
}

namespace {

bool order_axioms(const std::vector<WeylElement>& S, const ParabolicType& I, TwistVariant v) {
  const std::size_t K = S.size();
  std::vector<std::vector<char>> L(K, std::vector<char>(K));
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = 0; b < K; ++b) L[a][b] = twisted_preceq(S[a], S[b], I, v);
  for (std::size_t a = 0; a < K; ++a) {
    if (!L[a][a]) return false;
    for (std::size_t b = 0; b < K; ++b) {
      if (a != b && L[a][b] && L[b][a]) return false;
      if (L[a][b] && length(S[a]) > length(S[b])) return false;
      for (std::size_t c = 0; c < K; ++c)
        if (L[a][b] && L[b][c] && !L[a][c]) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Twisted, RefinesToBruhatAndIsAnOrder) {
  for (auto m : std::vector<std::vector<int>>{{1}, {2}, {1, 2}, {1, 1}, {2, 0}, {0, 1}}) {
    auto sig = validate_signature(static_cast<int>(m.size()), 3, m);
    auto I = hodge_type(sig);
    auto S = min_reps(I, 3);
    EXPECT_TRUE(order_axioms(S, I, TwistVariant::inverse));
    for (auto& a : S)
      for (auto& b : S)
        if (bruhat_leq(a, b)) {
          EXPECT_TRUE(twisted_preceq(a, b, I));
        }
  }
}

TEST(Twisted, VariantsAgreeOnSmallTypes) {
  for (auto m : std::vector<std::vector<int>>{{1}, {1, 2}, {2, 0}, {1, 2, 1}}) {
    auto sig = validate_signature(static_cast<int>(m.size()), 3, m);
    auto I = hodge_type(sig);
    auto S = min_reps(I, 3);
    EXPECT_TRUE(order_axioms(S, I, TwistVariant::plain));
    for (auto& a : S)
      for (auto& b : S)
        EXPECT_EQ(twisted_preceq(a, b, I, TwistVariant::plain), twisted_preceq(a, b, I));
  }
}

TEST(Twisted, ExtremesAndBudget) {
  auto sig = validate_signature(2, 3, {1, 2});
  auto I = hodge_type(sig);
  auto S = min_reps(I, 3);
  WeylElement e{identity(3), identity(3)};
  for (auto& w : S) EXPECT_TRUE(twisted_preceq(e, w, I));
  EXPECT_THROW(twisted_preceq(e, e, I, TwistVariant::inverse, 1), InputError);
}

namespace {

// Closure of {0, D_i} under V-images and F-preimages (the canonical
// filtration).  Recording each piece with the dimensions of its two images
// gives an isomorphism invariant.
std::vector<std::array<int, 4>> canonical_type(const ZipPoint& pt) {
  const int N = pt.sig.N, n = pt.sig.n;
  std::set<std::pair<int, fp::Subspace>> S;
  std::vector<std::pair<int, fp::Subspace>> todo;
  for (int i = 0; i < N; ++i) {
    todo.push_back({i, fp::Subspace{}});
    todo.push_back({i, fp::full(n)});
  }
  while (!todo.empty()) {
    auto [i, U] = todo.back();
    todo.pop_back();
    U = fp::span(U, pt.p);
    if (!S.insert({i, U}).second) continue;
    int nx = wrap(i + 1, N);
    todo.push_back({nx, fp::image(pt.V[i], U, pt.p)});
    todo.push_back({nx, fp::preimage(pt.F[i], U, n, pt.p)});
  }
  std::vector<std::array<int, 4>> out;
  for (auto& [i, U] : S)
    out.push_back({i, fp::dim(U), fp::dim(fp::span(fp::image(pt.V[i], U, pt.p), pt.p)),
                   fp::dim(fp::preimage(pt.F[i], U, n, pt.p))});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(StandardShape, PointsAreValidAndDistinguished) {
  for (auto m : std::vector<std::vector<int>>{{1}, {2}, {1, 2}, {2, 0}, {1, 3}}) {
    int n = m.size() == 2 && m[1] == 3 ? 4 : 3;
    auto sig = validate_signature(static_cast<int>(m.size()), n, m);
    auto S = min_reps(hodge_type(sig), n);
    std::set<std::vector<std::array<int, 4>>> seen;
    for (auto& w : S) {
      auto pt = standard_shape(sig, w, 3);
      EXPECT_TRUE(check_point(pt).empty()) << to_string(w);
      seen.insert(canonical_type(pt));
    }
    EXPECT_EQ(seen.size(), S.size());
  }
}

TEST(StandardShape, Rejects) {
  auto sig = validate_signature(1, 3, {1});
  EXPECT_THROW(standard_shape(sig, {{2, 1, 3, 4}}, 3), InputError);
  EXPECT_THROW(standard_shape(sig, {{1, 2, 3}, {1, 2, 3}}, 3), InputError);
  EXPECT_THROW(standard_shape(validate_signature(1, 3, {2}), {{2, 1, 3}}, 3), InputError);
  EXPECT_EQ(to_string({{1, 2, 3}, {2, 1, 3}}), "123|213");
}
