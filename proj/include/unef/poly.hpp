#pragma once

#include "unef/rational.hpp"

#include <map>
#include <string>

namespace unef {

// Sparse multivariate polynomial with rational coefficients.  Only what the
// class calculus needs: ring operations and comparison.  Used to carry
// indeterminate weight coefficients (k_1, alpha, t, ...) through reductions.
class Poly {
 public:
  using Monomial = std::map<std::string, int>;  // variable -> exponent (> 0)

  Poly() = default;
  Poly(const Q& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[Monomial{}] = c;
  }
  Poly(int c) : Poly(Q(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly var(const std::string& name) {
    Poly p;
    p.terms_[Monomial{{name, 1}}] = 1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Q>& terms() const { return terms_; }

  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (auto& [v, e] : mb) m[v] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Substitute rational values for every variable; throws if one is missing.
  Q eval(const std::map<std::string, Q>& vals) const {
    Q s = 0;
    for (auto& [m, c] : terms_) {
      Q term = c;
      for (auto& [v, e] : m) {
        auto it = vals.find(v);
        if (it == vals.end()) throw InputError("no value for variable " + v);
        for (int i = 0; i < e; ++i) term *= it->second;
      }
      s += term;
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + to_string(c) + ")";
      for (auto& [v, e] : m) out += "*" + v + (e > 1 ? "^" + std::to_string(e) : "");
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Q> terms_;
};

}  // namespace unef
