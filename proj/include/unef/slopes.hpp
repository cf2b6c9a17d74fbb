#pragma once

#include "unef/datum.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace unef {

// Slope of a rank-r subbundle of the essential Hodge bundle at `place`.
// Step j moves from place i-j+1 to place i-j.
struct SlopeVector {
  int place = 0;                 // 0-based
  int start_rank = 0;
  std::vector<int> rtilde;       // r~_0 .. r~_N
  std::vector<int> r;            // r_1 .. r_N
};

namespace detail {
inline std::string idx(int i) { return std::to_string(i + 1); }
}  // namespace detail

inline SlopeVector slope_from_ranks(const Signature& sig, int i, const std::vector<int>& rt) {
  const int N = sig.N;
  if (i < 0 || i >= N) throw InputError("slope: place out of range");
  if (static_cast<int>(rt.size()) != N + 1)
    throw InputError("slope: need N+1 intersection ranks r~_0..r~_N");
  if (rt[0] < 0 || rt[0] > sig.mt(i))
    throw InputError("slope: start rank must lie in [0, rank of the essential Hodge bundle]");
  SlopeVector sv;
  sv.place = i;
  sv.start_rank = rt[0];
  sv.rtilde = rt;
  for (int j = 1; j <= N; ++j) {
    int pre = sig.nt(i - j + 1) + rt[j - 1];  // rank of the pulled-back bundle
    int cap = j < N ? sig.mt(i - j) : rt[0];
    int ub = std::min(cap, pre);
    if (rt[j] < 0 || rt[j] > ub)
      throw InputError("slope: r~_" + std::to_string(j) + " = " + std::to_string(rt[j]) +
                       " violates 0 <= r~_j <= " + std::to_string(ub));
    sv.r.push_back(pre - rt[j]);
  }
  return sv;
}

// Transverse intersections at every step.
inline SlopeVector generic_slope(const Signature& sig, int i, int r) {
  const int N = sig.N, n = sig.n;
  if (i < 0 || i >= N) throw InputError("slope: place out of range");
  if (r < 0 || r > sig.mt(i)) throw InputError("slope: start rank out of range");
  std::vector<int> rt{r};
  for (int j = 1; j <= N; ++j) {
    int a = j < N ? sig.mt(i - j) : r;
    rt.push_back(std::max(a + sig.nt(i - j + 1) + rt[j - 1] - n, 0));
  }
  return slope_from_ranks(sig, i, rt);
}

struct TotalSlope {
  int total = 0;
  int chain_bound = 0;  // sum of the essential coranks
  bool chain = false;
};

inline TotalSlope total_and_chain(const Signature& sig, const SlopeVector& sv) {
  TotalSlope t;
  for (int v : sv.r) t.total += v;
  for (int i = 0; i < sig.N; ++i) t.chain_bound += sig.nt(i);
  t.chain = t.total == t.chain_bound;
  return t;
}

// -1, 0, 1
inline int compare_slopes(const SlopeVector& a, const SlopeVector& b) {
  if (a.place != b.place || a.start_rank != b.start_rank || a.r.size() != b.r.size())
    throw InputError("slopes are comparable only for bundles of the same rank in the same place");
  if (a.r < b.r) return -1;
  if (b.r < a.r) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Tower

struct TowerCell {
  int place = 0;  // 0-based
  int rank = 0;
};

struct Tower {
  int place = 0, m = 0, delta = 0;
  std::vector<std::vector<TowerCell>> layers;  // layers[0] is layer 1
  int termination_layer = 0;                    // 1-based layer that could not be completed
  std::string termination_reason;               // "chain" | "out-of-bounds"
  TowerCell violating{};
  int violating_bound = 0;
};

// Layer 1 follows the intersection chain backwards from F^i_m; from layer 2
// on, each cell is the preimage-rank of the previous one, walking forwards:
//   m^l_j = m^l_{j-1} + r'_{j-1} + m~_j - n,   r'_j = r_{N+1-j}.
inline Tower tower(const Signature& sig, int i, int m, const std::vector<int>& r) {
  const int N = sig.N, n = sig.n;
  if (static_cast<int>(r.size()) != N) throw InputError("tower: slope must have N entries");
  // recover r~ from r and validate it as a slope
  std::vector<int> rt{m};
  for (int j = 1; j <= N; ++j) rt.push_back(sig.nt(i - j + 1) + rt[j - 1] - r[j - 1]);
  SlopeVector sv = slope_from_ranks(sig, i, rt);
  TotalSlope ts = total_and_chain(sig, sv);

  Tower tw;
  tw.place = i;
  tw.m = m;
  tw.delta = ts.total - ts.chain_bound;
  std::vector<TowerCell> first;
  for (int j = 1; j <= N; ++j) first.push_back({wrap(i - j, N), rt[j]});
  tw.layers.push_back(first);
  if (tw.delta == 0) {
    tw.termination_layer = 2;
    tw.termination_reason = "chain";
    return tw;
  }
  int prev = m;  // m^{l-1}_1
  for (int l = 2;; ++l) {
    std::vector<TowerCell> layer;
    int cur = prev;
    for (int j = 2; j <= N + 1; ++j) {
      int pl = wrap(i + j - 1, N);
      cur = cur + r[wrap(N + 1 - j, N)] + sig.mt(pl) - n;  // r'_{j-1} = r_{N+2-j}
      if (cur < 0 || cur > sig.mt(pl)) {  // the incomplete layer is not recorded
        tw.termination_layer = l;
        tw.termination_reason = "out-of-bounds";
        tw.violating = {pl, cur};
        tw.violating_bound = sig.mt(pl);
        return tw;
      }
      layer.push_back({pl, cur});
    }
    tw.layers.push_back(layer);
    prev = cur;
    if (l > 4 * (n + 1) * N + 4) throw InternalError("tower did not terminate");
  }
}

// ---------------------------------------------------------------------------
// Auxiliary signatures

struct AuxSignature {
  Signature sig;
  std::vector<int> T;
  int t = 0;
};

// plain:      m'_i = m_i - r_i + r_{i-1}
// essential:  0 if m_{i-1} = 0;  n - r_i + r_{i-1} if m_i = 0 != m_{i-1};  plain otherwise
inline AuxSignature aux_signature(const Signature& sig, const std::vector<int>& r, bool essential) {
  const int N = sig.N, n = sig.n;
  if (static_cast<int>(r.size()) != N) throw InputError("aux_signature: need one rank per place");
  for (int i = 0; i < N; ++i)
    if (r[i] < 0 || r[i] > n)
      throw InputError("aux_signature: rank at place " + detail::idx(i) + " out of [0, n]");
  std::vector<int> mp(N);
  for (int i = 0; i < N; ++i) {
    int prev = r[wrap(i - 1, N)];
    int mi = sig.m[i], mprev = sig.m[wrap(i - 1, N)];
    if (essential && mprev == 0)
      mp[i] = 0;
    else if (essential && mi == 0)
      mp[i] = n - r[i] + prev;
    else
      mp[i] = mi - r[i] + prev;
    if (mp[i] < 0 || mp[i] > n)
      throw InputError("aux_signature: inconsistent ranks give m'_" + detail::idx(i) + " = " +
                       std::to_string(mp[i]));
  }
  AuxSignature a;
  a.sig = validate_signature(N, n, mp);
  a.T = a.sig.T();
  a.t = static_cast<int>(a.T.size());
  return a;
}

struct DegreeBound {
  int t = 0, t_prime = 0, bound = 0;
  std::string rule;  // "t' <= t" or "t' <= t+1"
};

inline DegreeBound essential_degree_bounds(const Signature& sig, const Signature& sigp,
                                           bool allow_one_more) {
  DegreeBound d;
  d.t = sig.t();
  d.t_prime = sigp.t();
  d.bound = d.t + (allow_one_more ? 1 : 0);
  d.rule = allow_one_more ? "t' <= t+1" : "t' <= t";
  if (d.t_prime > d.bound)
    throw InternalError("essential degree bound violated: t' = " + std::to_string(d.t_prime) +
                        " > " + std::to_string(d.bound));
  return d;
}

// ---------------------------------------------------------------------------
// Diagrams

struct DiagramNode {
  std::string label;
  int column = 1;  // 1..N+1
  int rank = 0;
  int height = 0;
};

struct Segment {
  int c1, h1, c2, h2;
};

struct OverlayNode {
  int column = 1;
  int rank = 0;
};

struct Diagram {
  std::vector<DiagramNode> nodes;
  std::vector<Segment> trunk;
  std::vector<Segment> overlay;
  std::vector<int> top, bottom;  // per column
};

inline Diagram render_diagram(const Signature& sig,
                              const std::vector<std::vector<OverlayNode>>& overlays = {}) {
  const int N = sig.N, n = sig.n;
  Diagram d;
  int v = 0;  // height of omega in the current column
  for (int c = 1; c <= N + 1; ++c) {
    int pl = wrap(c - 1, N);
    int mt = sig.mt(pl);
    if (c == 1) v = mt;
    int base = v - mt;
    for (int l = 0; l <= mt; ++l) {
      std::string lab;
      if (l == 0)
        lab = "0";
      else if (l == mt)
        lab = (sig.m[pl] == 0 ? "omega~_" : "omega_") + detail::idx(pl);
      else
        lab = "F^" + detail::idx(pl) + "_" + std::to_string(l);
      d.nodes.push_back({lab, c, l, base + l});
    }
    d.bottom.push_back(base);
    d.top.push_back(v);
    v = base + n;  // height of H in this column = omega height of the next
  }
  for (int c = 1; c <= N; ++c) {
    d.trunk.push_back({c, d.top[c - 1], c + 1, d.top[c]});
    d.trunk.push_back({c, d.bottom[c - 1], c + 1, d.bottom[c]});
  }
  auto height_of = [&](const OverlayNode& o) {
    if (o.column < 1 || o.column > N + 1)
      throw InputError("overlay: column " + std::to_string(o.column) + " does not exist");
    int pl = wrap(o.column - 1, N);
    if (o.rank < 0 || o.rank > sig.mt(pl))
      throw InputError("overlay: no node of rank " + std::to_string(o.rank) + " in column " +
                       std::to_string(o.column));
    return d.bottom[o.column - 1] + o.rank;
  };
  for (auto& path : overlays)
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      d.overlay.push_back(
          {path[k].column, height_of(path[k]), path[k + 1].column, height_of(path[k + 1])});
  return d;
}

// The slope path of a bundle in the first place, right to left.
inline std::vector<OverlayNode> slope_overlay(const Signature& sig, const SlopeVector& sv) {
  if (sv.place != 0) throw InputError("slope overlays are drawn for bundles in the first place");
  std::vector<OverlayNode> path;
  for (int j = 0; j <= sig.N; ++j) path.push_back({sig.N + 1 - j, sv.rtilde[j]});
  return path;
}

inline std::string diagram_ascii(const Diagram& d) {
  int cols = 0, hmax = 0;
  for (auto& nd : d.nodes) {
    cols = std::max(cols, nd.column);
    hmax = std::max(hmax, nd.height);
  }
  const int w = 12;
  std::vector<std::string> lines(hmax + 1, std::string(cols * w, ' '));
  for (auto& nd : d.nodes) {
    auto& line = lines[hmax - nd.height];
    std::string lab = nd.label.substr(0, w - 2);
    bool on_path = false;
    for (auto& s : d.overlay)
      if ((s.c1 == nd.column && s.h1 == nd.height) || (s.c2 == nd.column && s.h2 == nd.height))
        on_path = true;
    if (on_path) lab = "*" + lab;
    line.replace((nd.column - 1) * w, lab.size(), lab);
  }
  std::ostringstream os;
  for (auto& l : lines) {
    auto end = l.find_last_not_of(' ');
    os << (end == std::string::npos ? "" : l.substr(0, end + 1)) << "\n";
  }
  return os.str();
}

// 1cm grid, y grows upwards in diagram space.
inline std::string diagram_svg(const Diagram& d) {
  int cols = 0, hmax = 0;
  for (auto& nd : d.nodes) {
    cols = std::max(cols, nd.column);
    hmax = std::max(hmax, nd.height);
  }
  const int u = 40;  // user units per cm
  auto X = [&](int c) { return c * u * 2; };
  auto Y = [&](int h) { return (hmax - h + 1) * u; };
  std::ostringstream os;
  int W = (cols + 1) * u * 2, H = (hmax + 2) * u;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W / u << "cm\" height=\"" << H / u
     << "cm\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  for (auto& s : d.trunk)
    os << "  <line x1=\"" << X(s.c1) << "\" y1=\"" << Y(s.h1) << "\" x2=\"" << X(s.c2)
       << "\" y2=\"" << Y(s.h2) << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  for (auto& s : d.overlay)
    os << "  <line x1=\"" << X(s.c1) << "\" y1=\"" << Y(s.h1) << "\" x2=\"" << X(s.c2)
       << "\" y2=\"" << Y(s.h2) << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
  for (auto& nd : d.nodes)
    os << "  <text x=\"" << X(nd.column) << "\" y=\"" << Y(nd.height)
       << "\" font-size=\"12\" text-anchor=\"middle\">" << nd.label << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace unef
