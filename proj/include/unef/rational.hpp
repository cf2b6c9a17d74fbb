#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace unef {

// Exact arithmetic everywhere.  cpp_rational keeps the library header-only
// (no libgmp link) and is fast enough for the matrix sizes used here.
using Z = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

// Thrown on malformed user input; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal consistency check fails (exit code 3).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Q qnum(const Q& x) { return Q(boost::multiprecision::numerator(x)); }

// "num/den" with den > 0, always carrying the slash so that the wire format
// is uniform ("3/1", "-1/2", "0/1").
inline std::string to_string(const Q& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

// Accepts "a", "a/b", with optional sign; rejects b == 0 and junk.
inline Q parse_rational(const std::string& s) {
  auto bad = [&] { return InputError("malformed rational \"" + s + "\""); };
  if (s.empty()) throw bad();
  auto check_int = [&](const std::string& t) {
    if (t.empty()) throw bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw bad();
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      check_int(s);
      return Q(Z(s[0] == '+' ? s.substr(1) : s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    check_int(a);
    check_int(b);
    Z num(a[0] == '+' ? a.substr(1) : a), den(b[0] == '+' ? b.substr(1) : b);
    if (den == 0) throw InputError("zero denominator in \"" + s + "\"");
    return Q(num, den);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

// p^e for any integer exponent.
inline Q qpow(long long base, long long e) {
  Z b(base), r(1);
  long long k = e < 0 ? -e : e;
  for (long long i = 0; i < k; ++i) r *= b;
  if (e >= 0) return Q(r);
  return Q(Z(1), r);
}

inline int sign(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

inline bool is_integer(const Q& x) { return boost::multiprecision::denominator(x) == 1; }

// Index arithmetic mod N mapped into [0, N).
inline int wrap(long long i, int N) {
  long long r = i % N;
  return static_cast<int>(r < 0 ? r + N : r);
}

// Portable deterministic randomness.  std distributions are
// implementation-defined, so we roll the (tiny) generator ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {}
  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform-ish in [lo, hi]; bias is irrelevant for test sampling
  long long range(long long lo, long long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
  }
  std::uint64_t below(std::uint64_t m) { return next() % m; }

 private:
  std::uint64_t state_;
};

}  // namespace unef
