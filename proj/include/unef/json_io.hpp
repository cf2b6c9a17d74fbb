#pragma once

#include "unef/cones.hpp"
#include "unef/criteria.hpp"
#include "unef/datum.hpp"
#include "unef/picard.hpp"
#include "unef/slopes.hpp"
#include "unef/weyl.hpp"
#include "unef/zipmodp.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace unef::io {

using json = nlohmann::json;

// Every reader below throws InputError("schema violation: ...") on malformed
// input; the checks mirror the published schemas field by field.

[[noreturn]] inline void violation(const std::string& what) {
  throw InputError("schema violation: " + what);
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) violation(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) violation(std::string("missing field \"") + key + "\"");
  return *it;
}

inline long long get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) violation(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline std::vector<int> get_ints(const json& j, const char* what) {
  if (!j.is_array()) violation(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (auto& x : j) out.push_back(static_cast<int>(get_int(x, what)));
  return out;
}

inline json to_json(const Q& x) { return to_string(x); }

// Integers are accepted as a convenience; output always uses "num/den".
inline Q get_q(const json& j, const char* what) {
  if (j.is_number_integer()) return Q(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  violation(std::string(what) + " must be a rational string \"num/den\" or an integer");
}

inline QVec get_qvec(const json& j, const char* what) {
  if (!j.is_array()) violation(std::string(what) + " must be an array");
  QVec v;
  for (auto& x : j) v.push_back(get_q(x, what));
  return v;
}

inline json to_json(const QVec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

// ---------------------------------------------------------------------------

inline Signature read_signature(const json& j) {
  return validate_signature(static_cast<int>(get_int(field(j, "N"), "N")),
                            static_cast<int>(get_int(field(j, "n"), "n")), get_ints(field(j, "m"), "m"));
}

inline json to_json(const Signature& s) { return {{"N", s.N}, {"n", s.n}, {"m", s.m}}; }

inline AnyWeight read_weight(const json& j) {
  std::string kind = field(j, "kind").is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "flag") {
    FlagWeight w;
    auto& k = field(j, "k");
    if (!k.is_array()) violation("flag weight k must be an array of arrays");
    for (auto& row : k) w.k.push_back(get_qvec(row, "flag weight entry"));
    return w;
  }
  if (kind == "parallelX") return ParallelWeightX{get_qvec(field(j, "k"), "parallelX weight")};
  if (kind == "minimal") {
    MinimalFlagWeight w;
    w.place = static_cast<int>(get_int(field(j, "place"), "place")) - 1;
    w.j = static_cast<int>(get_int(field(j, "j"), "j"));
    w.k = get_qvec(field(j, "k"), "minimal weight k");
    w.alpha = get_q(field(j, "alpha"), "alpha");
    return w;
  }
  if (kind == "block") {
    BlockWeight w;
    auto& b = field(j, "blocks");
    if (!b.is_array()) violation("blocks must be an array");
    for (auto& place : b) {
      if (!place.is_array()) violation("blocks[i] must be an array of [length, value] pairs");
      std::vector<std::pair<int, Q>> row;
      for (auto& pr : place) {
        if (!pr.is_array() || pr.size() != 2) violation("block entries are [length, value]");
        row.emplace_back(static_cast<int>(get_int(pr[0], "block length")), get_q(pr[1], "block value"));
      }
      w.blocks.push_back(row);
    }
    return w;
  }
  violation("weight kind must be one of flag, parallelX, minimal, block");
}

inline json to_json(const Verdict& v) {
  json f = json::array();
  for (auto& x : v.failures)
    f.push_back({{"name", x.name}, {"lhs", to_json(x.lhs)}, {"rhs", to_json(x.rhs)}});
  return {{"satisfied", v.satisfied}, {"mode", to_string(v.mode)}, {"failures", f}, {"tight", v.tight}};
}

// ---------------------------------------------------------------------------
// Class expressions: [{"gen": "omega:1", "coef": "1/1"}, ...]

inline ClassExpr read_class(const json& j) {
  if (!j.is_array()) violation("class expression must be an array of {gen, coef}");
  ClassExpr e;
  for (auto& t : j) {
    auto& g = field(t, "gen");
    if (!g.is_string() || !gen::valid(g.get<std::string>()))
      violation("bad generator name " + g.dump());
    e.add(g.get<std::string>(), get_q(field(t, "coef"), "coef"));
  }
  return e;
}

inline json to_json(const ClassExpr& e) {
  json a = json::array();
  for (auto& [g, c] : e.terms()) a.push_back({{"gen", g}, {"coef", to_json(c)}});
  return a;
}

inline json to_json(const PolyClassExpr& e) {
  json a = json::array();
  for (auto& [g, c] : e.terms()) a.push_back({{"gen", g}, {"coef", c.str()}});
  return a;
}

// ---------------------------------------------------------------------------

inline json to_json(const SlopeVector& s) {
  return {{"place", s.place + 1}, {"start_rank", s.start_rank}, {"rtilde", s.rtilde}, {"r", s.r}};
}

inline json to_json(const Tower& t) {
  json layers = json::array();
  for (auto& l : t.layers) {
    json row = json::array();
    for (auto& c : l) row.push_back({{"place", c.place + 1}, {"rank", c.rank}});
    layers.push_back(row);
  }
  json out{{"place", t.place + 1},
           {"m", t.m},
           {"delta", t.delta},
           {"layers", layers},
           {"termination_layer", t.termination_layer},
           {"termination_reason", t.termination_reason}};
  if (t.termination_reason == "out-of-bounds")
    out["violating"] = {{"place", t.violating.place + 1},
                        {"rank", t.violating.rank},
                        {"bound", t.violating_bound}};
  return out;
}

inline json to_json(const Diagram& d) {
  json nodes = json::array();
  for (auto& n : d.nodes)
    nodes.push_back({{"label", n.label}, {"column", n.column}, {"rank", n.rank}, {"height", n.height}});
  auto segs = [](const std::vector<Segment>& s) {
    json a = json::array();
    for (auto& x : s) a.push_back({x.c1, x.h1, x.c2, x.h2});
    return a;
  };
  return {{"nodes", nodes},
          {"trunk", segs(d.trunk)},
          {"overlay", segs(d.overlay)},
          {"top", d.top},
          {"bottom", d.bottom}};
}

inline json to_json(const fp::Mat& A) {
  json a = json::array();
  for (auto& r : A) a.push_back(r);
  return a;
}

inline json to_json(const ZipPoint& pt) {
  json V = json::array(), F = json::array();
  for (auto& A : pt.V) V.push_back(to_json(A));
  for (auto& A : pt.F) F.push_back(to_json(A));
  return {{"p", pt.p}, {"sig", to_json(pt.sig)}, {"V", V}, {"F", F}};
}

inline json perm_json(const weyl::WeylElement& w) {
  json a = json::array();
  for (auto& p : w) a.push_back(p);
  return a;
}

}  // namespace unef::io
