#pragma once

#include "unef/datum.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace unef {

enum class Mode { ample, nef };
enum class CaseTag { Case1, Case2, Case2Prime, Case3 };

// Which coefficient multiplies the left-hand side of the third inequality in
// the t = 1, m = n-1 (and mirrored m = 1) case.
//   summed:  sum_{u=0}^{n-2} p^{uN}   (what the test-curve computation produces)
//   leading: p^{(n-2)N}               (only the top term of that sum)
enum class Case2Form { summed, leading };

inline std::string to_string(Mode m) { return m == Mode::ample ? "ample" : "nef"; }
inline std::string to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case2Prime: return "Case2Prime";
    default: return "Case3";
  }
}

struct Failure {
  std::string name;
  Q lhs, rhs;
};

struct Verdict {
  bool satisfied = true;
  Mode mode = Mode::nef;
  std::vector<Failure> failures;
  std::vector<std::string> tight;  // constraints holding with equality
};

// Linear form in the entries of a flag weight.
struct Lin {
  std::vector<std::tuple<int, int, Q>> terms;  // (place, position, coefficient)
  void add(int i, int j, const Q& c) { terms.emplace_back(i, j, c); }
  Q eval(const FlagWeight& w) const {
    Q s = 0;
    for (auto& [i, j, c] : terms) s += c * w.k[i][j];
    return s;
  }
};

struct FlagConstraint {
  std::string name;
  Lin lhs, rhs;  // reads  lhs > rhs  (ample)  /  lhs >= rhs  (nef)
};

struct ValueConstraint {
  std::string name;
  Q lhs, rhs;
};

inline Verdict judge(const std::vector<ValueConstraint>& cs, Mode mode) {
  Verdict v;
  v.mode = mode;
  for (auto& c : cs) {
    bool ok = mode == Mode::ample ? c.lhs > c.rhs : c.lhs >= c.rhs;
    if (!ok) v.failures.push_back({c.name, c.lhs, c.rhs});
    if (c.lhs == c.rhs) v.tight.push_back(c.name);
  }
  v.satisfied = v.failures.empty();
  return v;
}

// Procedure: classify_case
inline CaseTag classify_case(const Signature& sig) {
  auto T = sig.T();
  if (T.empty()) return CaseTag::Case1;
  if (T.size() == 1) {
    int m = sig.m[T[0]];
    if (m == sig.n - 1) return CaseTag::Case2;  // also catches n = 2
    if (m == 1) return CaseTag::Case2Prime;
  }
  return CaseTag::Case3;
}

namespace detail {

inline std::string place_name(int i) { return std::to_string(i + 1); }

// k^i_{j+1} vs k^i_j for 1-based j in [from, to)
inline void chain(std::vector<FlagConstraint>& out, int i, int from, int to) {
  for (int j = from; j < to; ++j) {
    FlagConstraint c;
    c.name = "block(" + place_name(i) + ")." + std::to_string(j);
    c.lhs.add(i, j, 1);      // position j+1 (1-based) is index j
    c.rhs.add(i, j - 1, 1);  // position j
    out.push_back(std::move(c));
  }
}

// sum_{s=0}^{len-1} p^{-s} (k^{start+s}_a - k^{start+s}_b), scaled by `scale`
inline void twisted_sum(Lin& lin, const Signature& sig, long long p, int start, int len, int a,
                        int b, const Q& scale) {
  for (int s = 0; s < len; ++s) {
    int pl = wrap(start + s, sig.N);
    Q c = scale * qpow(p, -s);
    lin.add(pl, a, c);
    lin.add(pl, b, -c);
  }
}

}  // namespace detail

// Every displayed inequality of the classified case, as linear forms.
inline std::vector<FlagConstraint> flag_constraints(long long p, const Signature& sig,
                                                    Case2Form form = Case2Form::summed) {
  using detail::chain;
  std::vector<FlagConstraint> out;
  const int N = sig.N, n = sig.n;
  const CaseTag tag = classify_case(sig);
  auto T = sig.T();
  const Q q = qpow(p, N);

  auto full_chains_except = [&](int skip) {
    for (int i = 0; i < N; ++i)
      if (i != skip) chain(out, i, 1, n);
  };

  switch (tag) {
    case CaseTag::Case1:
      full_chains_except(-1);
      break;

    case CaseTag::Case2: {
      const int i0 = T[0];
      chain(out, i0, 1, n - 1);  // k_{n-1} > ... > k_1
      full_chains_except(i0);
      FlagConstraint c;
      c.name = "case2.line3";
      Q C = 0;
      if (form == Case2Form::summed)
        for (int u = 0; u <= n - 2; ++u) C += qpow(p, static_cast<long long>(u) * N);
      else
        C = qpow(p, static_cast<long long>(n - 2) * N);
      detail::twisted_sum(c.lhs, sig, p, i0, N, 0, n - 1, C);
      for (int r = 2; r <= n - 1; ++r)
        detail::twisted_sum(c.rhs, sig, p, i0, N, r - 1, n - 1,
                            qpow(p, static_cast<long long>(r - 2) * N));
      out.push_back(std::move(c));
      break;
    }

    case CaseTag::Case2Prime: {
      const int i0 = T[0];
      chain(out, i0, 2, n);  // k_n > ... > k_2
      full_chains_except(i0);
      FlagConstraint c;
      c.name = "case2p.line3";
      Q C = 0;
      if (form == Case2Form::summed)
        for (int u = 0; u <= n - 2; ++u) C += qpow(p, static_cast<long long>(u) * N);
      else
        C = qpow(p, static_cast<long long>(n - 2) * N);
      detail::twisted_sum(c.lhs, sig, p, i0, N, 0, n - 1, C);
      for (int r = 2; r <= n - 1; ++r)
        detail::twisted_sum(c.rhs, sig, p, i0, N, 0, r - 1,
                            qpow(p, static_cast<long long>(n - 1 - r) * N));
      out.push_back(std::move(c));
      (void)q;
      break;
    }

    case CaseTag::Case3: {
      for (int i = 0; i < N; ++i) {
        if (sig.essential(i)) {
          chain(out, i, 1, sig.m[i]);      // k_m > ... > k_1
          chain(out, i, sig.m[i] + 1, n);  // k_n > ... > k_{m+1}
        } else {
          chain(out, i, 1, n);
        }
      }
      const int t = static_cast<int>(T.size());
      for (int l = 0; l < t; ++l) {
        int il = T[l], inext = T[(l + 1) % t];
        int a = sig.a(il);
        FlagConstraint c;
        c.name = "cross(" + detail::place_name(il) + "→" + detail::place_name(inext) + ")";
        detail::twisted_sum(c.lhs, sig, p, il, a, 0, n - 1, qpow(p, a));
        int mn = sig.m[inext];
        c.rhs.add(inext, mn - 1, 1);
        c.rhs.add(inext, mn, -1);
        out.push_back(std::move(c));
      }
      break;
    }
  }
  return out;
}

inline std::vector<ValueConstraint> evaluate(const std::vector<FlagConstraint>& cs,
                                             const FlagWeight& w) {
  std::vector<ValueConstraint> out;
  out.reserve(cs.size());
  for (auto& c : cs) out.push_back({c.name, c.lhs.eval(w), c.rhs.eval(w)});
  return out;
}

// Procedure: check_flag
inline Verdict check_flag(long long p, const Signature& sig, const FlagWeight& w, Mode mode,
                          Case2Form form = Case2Form::summed) {
  check_dims(sig, w);
  return judge(evaluate(flag_constraints(p, sig, form), w), mode);
}

// Procedure: check_X
inline Verdict check_X(long long p, const Signature& sig, const ParallelWeightX& w, Mode mode) {
  auto T = sig.T();
  if (T.empty()) throw InputError("degenerate: no essential place, the bundle is constant");
  check_dims(sig, w);
  const int t = static_cast<int>(T.size());
  std::vector<ValueConstraint> cs;
  for (int l = 0; l < t; ++l) {
    int a = sig.a(T[l]);
    cs.push_back({"x(" + detail::place_name(T[l]) + "→" + detail::place_name(T[(l + 1) % t]) +
                      ")",
                  qpow(p, a) * w.k[l], w.k[(l + 1) % t]});
  }
  return judge(cs, mode);
}

// Procedure: check_partial_nef — pull back to the full flag space and test there.
inline Verdict check_partial_nef(long long p, const Signature& sig, const BlockWeight& w,
                                 Case2Form form = Case2Form::summed) {
  return check_flag(p, sig, expand_weight(sig, w), Mode::nef, form);
}

struct CrosscheckResult {
  Verdict verdict;
  std::string listed_case;  // which hand-listed inequality family was used
  bool fallback = false;    // true when no family applies
  std::string note;
};

// Procedure: check_minimal_crosscheck
//
// Evaluates the short inequality lists written out case by case in the
// sufficiency proof for minimal partial flag spaces, without going through
// the flag-space engine.  Our alpha is the exponent of det(F); at
// non-essential places the proof's alpha is its negative.
inline CrosscheckResult check_minimal_crosscheck(long long p, const Signature& sig,
                                                 const MinimalFlagWeight& w) {
  check_minimal(sig, w);
  CrosscheckResult res;
  auto T = sig.T();
  const int t = static_cast<int>(T.size());
  const int N = sig.N, n = sig.n, i = w.place, j = w.j;
  if (t == 0) {
    res.fallback = true;
    res.listed_case = "none";
    res.note = "no essential place: no hand-listed inequality family; flag-space verdict used";
    res.verdict = check_partial_nef(p, sig, to_blocks(sig, w));
    return res;
  }
  const Q q = qpow(p, N);
  auto qp = [&](long long e) { return qpow(p, e * N); };
  std::vector<ValueConstraint> cs;
  auto pn = [&](int pl) { return detail::place_name(pl); };
  auto cyclic_rest = [&](int skip_l) {
    for (int l = 0; l < t; ++l) {
      if (l == skip_l) continue;
      cs.push_back({"cross(" + pn(T[l]) + "→" + pn(T[(l + 1) % t]) + ")",
                    qpow(p, sig.a(T[l])) * w.k[l], w.k[(l + 1) % t]});
    }
  };

  if (sig.essential(i)) {
    const int li = sig.t_index(i);
    const Q& kappa = w.k[li];
    cs.push_back({"dominance", kappa, w.alpha});
    if (t >= 2) {
      res.listed_case = "essential.t>=2";
      cs.push_back({"cross(" + pn(i) + "→" + pn(T[(li + 1) % t]) + ")",
                    qpow(p, sig.a(i)) * w.alpha, w.k[(li + 1) % t]});
      cyclic_rest(li);
    } else if (sig.m[i] == n - 1) {
      res.listed_case = "essential.t=1.m=n-1";
      cs.push_back({"corank", (qp(n - j) - 1) * w.alpha, (qp(n - j - 1) - 1) * kappa});
    } else if (sig.m[i] == 1) {
      res.listed_case = "essential.t=1.m=1(dual)";
      const int jj = n - j;
      cs.push_back({"corank", (qp(n - jj) - 1) * w.alpha, (qp(n - jj - 1) - 1) * kappa});
    } else {
      res.listed_case = "essential.t=1.generic";
      cs.push_back({"cross(" + pn(i) + "→" + pn(i) + ")", q * w.alpha, kappa});
    }
  } else {
    const int i1 = sig.prev_essential(i);
    const int l1 = sig.t_index(i1);
    const Q eps = qpow(p, -wrap(i - i1, N));
    const Q& k1 = w.k[l1];
    cs.push_back({"sign", Q(0), w.alpha});
    const int m1 = sig.m[i1];
    if (t >= 2 || (m1 != 1 && m1 != n - 1)) {
      res.listed_case = t >= 2 ? "nonessential.t>=2" : "nonessential.t=1.generic";
      cs.push_back({"cross(" + pn(i1) + "→" + pn(T[(l1 + 1) % t]) + ")",
                    qpow(p, sig.a(i1)) * (k1 + eps * w.alpha), w.k[(l1 + 1) % t]});
      cyclic_rest(l1);
    } else {
      int jj = j;
      if (m1 == n - 1) {
        res.listed_case = "nonessential.t=1.m=n-1";
      } else {
        res.listed_case = "nonessential.t=1.m=1(dual)";
        jj = n - j;
      }
      cs.push_back({"corank", (qp(n - jj) - 1) * (k1 + eps * w.alpha), (qp(n - jj - 1) - 1) * k1});
    }
  }
  res.verdict = judge(cs, Mode::nef);
  return res;
}

}  // namespace unef
