#pragma once

#include "unef/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace unef::cli {

using io::json;

inline json load_json(const std::string& arg, const char* what) {
  if (arg.empty()) throw InputError(std::string("missing --") + what);
  std::string text = arg;
  if (arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw InputError(std::string("cannot read ") + what + " file " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

inline std::vector<int> csv_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (auto& x : split(s)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoi(x, &pos));
      if (pos != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw InputError(std::string("--") + what + ": not an integer list: " + s);
    }
  }
  return out;
}

inline QVec csv_rationals(const std::string& s) {
  QVec out;
  for (auto& x : split(s)) out.push_back(parse_rational(x));
  return out;
}

struct Options {
  std::uint64_t seed = 0;
  std::string out, batch;
  std::string action;
  long long p = 2;
  std::string sig, weight, mode = "nef", relations, params, name, svg, order = "bruhat",
                           variant = "inverse";
  bool leading_form = false, json_flag = false;
  std::string a, point, ranks, r;
  int iters = 30, place = 1, rank = -1, m = -1, l = 1, N = 1, s = 2, samples = 20, chains = 20;
};

// p from --p unless the signature file carries one
inline long long prime_of(const Options& o, const json& sig) {
  long long p = o.p;
  if (sig.is_object() && sig.contains("p")) p = io::get_int(sig["p"], "p");
  return Prime{p};
}

// ---------------------------------------------------------------------------

inline json cmd_check(const Options& o) {
  json sj = load_json(o.sig, "sig");
  Signature sig = io::read_signature(sj);
  long long p = prime_of(o, sj);
  json wj = o.weight.empty() ? io::field(sj, "weight") : load_json(o.weight, "weight");
  AnyWeight w = io::read_weight(wj);
  if (o.mode != "ample" && o.mode != "nef") throw InputError("--mode must be ample or nef");
  Mode mode = o.mode == "ample" ? Mode::ample : Mode::nef;
  Case2Form form = o.leading_form ? Case2Form::leading : Case2Form::summed;
  json res{{"signature", io::to_json(sig)}, {"p", p}};
  if (sig.t() > 0) res["case"] = to_string(classify_case(sig));
  if (o.action == "flag") {
    res["verdict"] = io::to_json(check_flag(p, sig, expand_weight(sig, w), mode, form));
  } else if (o.action == "X") {
    auto* x = std::get_if<ParallelWeightX>(&w);
    if (!x) throw InputError("check X needs a parallelX weight");
    res["verdict"] = io::to_json(check_X(p, sig, *x, mode));
  } else if (o.action == "partial") {
    if (mode == Mode::ample) throw InputError("partial flag spaces get nef verdicts only");
    res["verdict"] = io::to_json(check_partial_nef(p, sig, to_blocks(sig, w), form));
  } else if (o.action == "minimal") {
    auto* mw = std::get_if<MinimalFlagWeight>(&w);
    if (!mw) throw InputError("check minimal needs a minimal weight");
    auto cc = check_minimal_crosscheck(p, sig, *mw);
    Verdict engine = check_partial_nef(p, sig, to_blocks(sig, *mw), form);
    res["verdict"] = io::to_json(engine);
    res["crosscheck"] = {{"verdict", io::to_json(cc.verdict)},
                         {"listed_case", cc.listed_case},
                         {"fallback", cc.fallback},
                         {"note", cc.note},
                         {"agrees", cc.verdict.satisfied == engine.satisfied}};
  } else {
    throw InputError("check: unknown action " + o.action);
  }
  return res;
}

inline json cmd_cone(const Options& o) {
  long long p = Prime{o.p};
  auto a = csv_ints(o.a, "a");
  if (o.action == "rays") {
    auto rays = csv_rays(p, a);
    auto cone = csv_cone(p, a);
    json rs = json::array();
    for (auto& v : rays) rs.push_back({{"ray", io::to_json(v)}, {"tight", member(cone, v).tight.size()}});
    return {{"p", p}, {"a", a}, {"rays", rs}};
  }
  if (o.action == "member" || o.action == "decompose") {
    if (o.point.empty()) throw InputError("missing --point");
    QVec x = csv_rationals(o.point);
    auto cone = csv_cone(p, a);
    if (x.size() != a.size()) throw InputError("--point must have one entry per gap");
    if (o.action == "member") {
      auto mb = member(cone, x);
      std::vector<int> tight;
      for (int t : mb.tight) tight.push_back(t + 1);
      return {{"inside", mb.inside}, {"tight", tight}};
    }
    auto rays = csv_rays(p, a);
    auto c = decompose_in_rays(rays, x);
    return {{"rays", [&] {
               json r = json::array();
               for (auto& v : rays) r.push_back(io::to_json(v));
               return r;
             }()},
            {"coefficients", c ? io::to_json(*c) : json(nullptr)}};
  }
  if (o.action == "fixpoint") {
    auto res = averaging_closure(p, a, o.iters);
    json scores = json::array();
    for (auto& s : res.scores) scores.push_back(io::to_json(s));
    json gens = json::array();
    for (auto& g : res.generators.back()) gens.push_back(io::to_json(g));
    return {{"scores", scores},
            {"final_score", io::to_json(res.scores.back())},
            {"iterations", res.scores.size() - 1},
            {"generators", gens},
            {"pruned", res.pruned},
            {"warnings", res.warnings}};
  }
  throw InputError("cone: unknown action " + o.action);
}

inline json cmd_picard(const Options& o) {
  if (o.action == "reduce") {
    json rj = load_json(o.relations, "relations");
    ClassExpr x = io::read_class(io::field(rj, "expr"));
    RelationSet R;
    auto& rels = io::field(rj, "relations");
    if (!rels.is_array()) io::violation("relations must be an array of class expressions");
    for (auto& r : rels) R.push_back(io::read_class(r));
    if (rj.contains("builtin")) {
      Signature sig = io::read_signature(io::field(rj, "sig"));
      long long p = prime_of(o, rj);
      for (auto& b : rj["builtin"]) {
        std::string name = b.is_string() ? b.get<std::string>() : "";
        if (name == "base") R = concat(R, base_relations(sig));
        else if (name == "flags") R = concat(R, flag_identifications(sig));
        else if (name == "curve") R = concat(R, chain_relations(p, sig, curve_conditions(sig)));
        else io::violation("builtin relation families are base, flags, curve");
      }
    }
    std::vector<std::string> basis;
    for (auto& b : io::field(rj, "basis")) {
      if (!b.is_string() || !gen::valid(b.get<std::string>())) io::violation("bad basis generator");
      basis.push_back(b.get<std::string>());
    }
    return {{"reduced", io::to_json(reduce(x, R, basis))}};
  }
  if (o.action == "identity") {
    long long p = Prime{o.p};
    IdentityCase c;
    if (o.name == "half-half") c = half_half_identity(p, csv_ints(o.a, "a"), o.l);
    else if (o.name == "tower") c = step4_identity(p, o.N, o.s);
    else if (o.name == "fiber") c = fiber_regression(p, io::read_signature(load_json(o.sig, "sig")));
    else throw InputError("--name must be half-half, tower or fiber");
    return {{"name", c.name},
            {"verified", verify_identity(c.lhs, c.rhs, c.relations)},
            {"lhs", io::to_json(c.lhs)},
            {"rhs", io::to_json(c.rhs)}};
  }
  if (o.action == "feasible-t") {
    json pj = load_json(o.params, "params");
    FeasibleParams f;
    f.p = Prime{io::get_int(io::field(pj, "p"), "p")};
    f.N = static_cast<int>(io::get_int(io::field(pj, "N"), "N"));
    f.s = static_cast<int>(io::get_int(io::field(pj, "s"), "s"));
    f.a1 = static_cast<int>(io::get_int(io::field(pj, "a1"), "a1"));
    f.k1 = io::get_q(io::field(pj, "k1"), "k1");
    f.k2 = pj.contains("k2") ? io::get_q(pj["k2"], "k2") : f.k1;
    f.alpha = io::get_q(io::field(pj, "alpha"), "alpha");
    std::string v = pj.value("variant", std::string("case1"));
    if (v == "case1") f.variant = FeasibleVariant::case1;
    else if (v == "case2") f.variant = FeasibleVariant::case2;
    else if (v == "case3") f.variant = FeasibleVariant::case3;
    else if (v == "case3prime") f.variant = FeasibleVariant::case3prime;
    else if (v == "step5") f.variant = FeasibleVariant::step5;
    else io::violation("variant must be case1, case2, case3, case3prime or step5");
    if (pj.contains("n")) f.n = static_cast<int>(io::get_int(pj["n"], "n"));
    if (pj.contains("m")) f.m = static_cast<int>(io::get_int(pj["m"], "m"));
    if (pj.contains("delta")) f.delta = static_cast<int>(io::get_int(pj["delta"], "delta"));
    if (pj.contains("offset")) f.offset = static_cast<int>(io::get_int(pj["offset"], "offset"));
    auto iv = feasible_t(f);
    json out{{"A", io::to_json(feasible_A(f.p, f.N, f.s))}, {"B", io::to_json(feasible_B(f.p, f.N, f.s))}};
    out["interval"] = iv ? json{{"lo", io::to_json(iv->lo)}, {"hi", io::to_json(iv->hi)}} : json(nullptr);
    return out;
  }
  throw InputError("picard: unknown action " + o.action);
}

inline json cmd_slope(const Options& o) {
  Signature sig = io::read_signature(load_json(o.sig, "sig"));
  const int i = o.place - 1;
  if (i < 0 || i >= sig.N) throw InputError("--place out of range");
  auto with_total = [&](const SlopeVector& sv) {
    auto ts = total_and_chain(sig, sv);
    return json{{"slope", io::to_json(sv)},
                {"total", ts.total},
                {"chain_bound", ts.chain_bound},
                {"chain", ts.chain}};
  };
  if (o.action == "generic") {
    if (o.rank < 0) throw InputError("missing --rank");
    return with_total(generic_slope(sig, i, o.rank));
  }
  if (o.action == "from-ranks") return with_total(slope_from_ranks(sig, i, csv_ints(o.ranks, "ranks")));
  if (o.action == "tower") {
    if (o.m < 0) throw InputError("missing --m");
    return io::to_json(tower(sig, i, o.m, csv_ints(o.r, "r")));
  }
  if (o.action == "diagram") {
    std::vector<std::vector<OverlayNode>> ov;
    if (!o.ranks.empty()) ov.push_back(slope_overlay(sig, slope_from_ranks(sig, i, csv_ints(o.ranks, "ranks"))));
    Diagram d = render_diagram(sig, ov);
    json out = io::to_json(d);
    out["ascii"] = diagram_ascii(d);
    if (!o.svg.empty()) {
      std::ofstream f(o.svg);
      if (!f) throw InputError("cannot write " + o.svg);
      f << diagram_svg(d);
      out["svg"] = o.svg;
    }
    return out;
  }
  throw InputError("slope: unknown action " + o.action);
}

inline json cmd_zip(const Options& o) {
  json sj = load_json(o.sig, "sig");
  Signature sig = io::read_signature(sj);
  long long p = prime_of(o, sj);
  if (o.action == "sample") {
    ZipPoint pt = sample_point(sig, p, o.seed);
    return {{"point", io::to_json(pt)}, {"invariant_failures", check_point(pt)}};
  }
  if (o.action == "slope") {
    const int i = o.place - 1;
    if (i < 0 || i >= sig.N) throw InputError("--place out of range");
    if (o.rank < 0) throw InputError("missing --rank");
    auto emp = max_empirical_slope(sig, p, i, o.rank, o.samples, o.seed);
    auto gen = generic_slope(sig, i, o.rank);
    return {{"empirical", io::to_json(emp)},
            {"generic", io::to_json(gen)},
            {"samples", o.samples},
            {"agrees", compare_slopes(emp, gen) == 0}};
  }
  if (o.action == "quotient") {
    LatticePoint lp = sample_lattice(sig, p, o.seed);
    ZipPoint pt = reduce_mod_p(lp);
    Rng rng(o.seed + 1);
    json rows = json::array();
    std::set<ChainSelection> seen;
    for (int k = 0; k < o.chains * 4 && static_cast<int>(seen.size()) < o.chains; ++k) {
      ChainSelection E = k == 0 ? omega_chain(pt) : k == 1 ? kernel_chain(pt) : random_chain(pt, rng);
      if (!seen.insert(E).second) continue;
      auto rep = quotient_dims(lp, E);
      rows.push_back({{"ranks", chain_profile(E)},
                      {"dims", rep.dims},
                      {"expected", rep.expected},
                      {"match", rep.match}});
    }
    return {{"chains", rows}};
  }
  throw InputError("zip: unknown action " + o.action);
}

inline json cmd_weyl(const Options& o) {
  if (o.action != "strata") throw InputError("weyl: unknown action " + o.action);
  Signature sig = io::read_signature(load_json(o.sig, "sig"));
  auto I = weyl::hodge_type(sig);
  auto reps = weyl::min_reps(I, sig.n);
  if (o.order != "bruhat" && o.order != "twisted") throw InputError("--order must be bruhat or twisted");
  if (o.variant != "inverse" && o.variant != "plain") throw InputError("--variant must be inverse or plain");
  auto variant = o.variant == "plain" ? weyl::TwistVariant::plain : weyl::TwistVariant::inverse;
  const std::size_t K = reps.size();
  if (K > 400) throw InputError("weyl strata: " + std::to_string(K) + " strata exceed the enumeration bound 400");
  std::vector<std::vector<char>> le(K, std::vector<char>(K));
  for (std::size_t u = 0; u < K; ++u)
    for (std::size_t v = 0; v < K; ++v)
      le[u][v] = o.order == "bruhat" ? weyl::bruhat_leq(reps[u], reps[v])
                                     : weyl::twisted_preceq(reps[u], reps[v], I, variant);
  json nodes = json::array(), edges = json::array();
  for (auto& w : reps)
    nodes.push_back({{"w", weyl::to_string(w)}, {"perm", io::perm_json(w)}, {"length", weyl::length(w)}});
  for (std::size_t u = 0; u < K; ++u)
    for (std::size_t v = 0; v < K; ++v) {
      if (u == v || !le[u][v]) continue;
      bool cover = true;
      for (std::size_t z = 0; z < K && cover; ++z)
        if (z != u && z != v && le[u][z] && le[z][v]) cover = false;
      if (cover) edges.push_back({weyl::to_string(reps[u]), weyl::to_string(reps[v])});
    }
  return {{"order", o.order}, {"signature", io::to_json(sig)}, {"nodes", nodes}, {"edges", edges}};
}

// Embedded worked examples.
inline json cmd_selftest(bool& ok) {
  json checks = json::array();
  auto add = [&](const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"pass", pass}});
    ok = ok && pass;
  };
  auto guard = [&](const std::string& name, auto&& fn) {
    try {
      add(name, fn());
    } catch (const std::exception&) {
      add(name, false);
    }
  };
  guard("slope (4,1)x(2,3)x(3,2) from ranks (2,1,0,2) is (2,3,1), a chain", [] {
    auto sig = validate_signature(3, 5, {4, 2, 3});
    auto sv = slope_from_ranks(sig, 0, {2, 1, 0, 2});
    return sv.r == std::vector<int>{2, 3, 1} && total_and_chain(sig, sv).chain;
  });
  guard("generic slope of a rank-2 bundle there is (2,3,3)", [] {
    auto sig = validate_signature(3, 5, {4, 2, 3});
    return generic_slope(sig, 0, 2).r == std::vector<int>{2, 3, 3};
  });
  guard("tower for (5,6,4)/7 with slope (3,0,4)", [] {
    auto tw = tower(validate_signature(3, 7, {5, 6, 4}), 0, 2, {3, 0, 4});
    std::vector<std::vector<int>> want{{1, 4, 1}, {5, 2, 3}, {6, 3, 4}}, got;
    for (auto& l : tw.layers) {
      got.emplace_back();
      for (auto& c : l) got.back().push_back(c.rank);
    }
    return got == want && tw.termination_layer == 4 && tw.termination_reason == "out-of-bounds";
  });
  guard("[F_1] = (1 + 1/p)[omega] on the curve, N = 1, n = 3", [] {
    auto sig = validate_signature(1, 3, {2});
    for (long long p : {2, 3, 5}) {
      auto R = concat(concat(base_relations(sig), flag_identifications(sig)),
                      chain_relations(p, sig, curve_conditions(sig)));
      auto r = reduce(ClassExpr::single(gen::flag(0, 1)), R, {gen::omega(0)});
      if (!(r == ClassExpr::single(gen::omega(0), Q(1) + Q(1) / p))) return false;
    }
    return true;
  });
  guard("Hasse class of Z_j", [] {
    auto e = hasse_zj(2, 2, 2, gen::omega(0), gen::flag(0, 1));
    return e.coef(gen::omega(0)) == 15 && e.coef(gen::flag(0, 1)) == -12;
  });
  guard("feasible t for p=2, N=2, s=2, k=(2,2), alpha=1 is {4/5}", [] {
    FeasibleParams f;
    f.p = 2, f.N = 2, f.a1 = 1, f.s = 2, f.k1 = 2, f.k2 = 2, f.alpha = 1;
    auto iv = feasible_t(f);
    return iv && iv->lo == Q(4) / 5 && iv->hi == Q(4) / 5;
  });
  guard("half-half decomposition, t = 3", [] {
    for (int l = 1; l < 3; ++l) {
      auto c = half_half_identity(3, {1, 2, 1}, l);
      if (!verify_identity(c.lhs, c.rhs, c.relations)) return false;
    }
    return true;
  });
  guard("tower splitting identity, s = 2, 3", [] {
    for (int s : {2, 3}) {
      auto c = step4_identity(2, 2, s);
      if (!verify_identity(c.lhs, c.rhs, c.relations)) return false;
    }
    return true;
  });
  guard("Hodge weight (1,...,1) is ample on X", [] {
    auto sig = validate_signature(3, 5, {4, 2, 3});
    return check_X(3, sig, ParallelWeightX{QVec(3, Q(1))}, Mode::ample).satisfied;
  });
  guard("|^I W| for (4,2,3)/5 is 5*10*10", [] {
    return weyl::min_reps(weyl::hodge_type(validate_signature(3, 5, {4, 2, 3})), 5).size() == 500;
  });
  return {{"checks", checks}, {"passed", ok}};
}

// ---------------------------------------------------------------------------

inline void register_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "prime");
  sub->add_option("--sig", o.sig, "signature JSON (file or inline)");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline json run_batch(const Options& o, int& worst) {
  json list = load_json(o.batch, "batch");
  if (!list.is_array()) io::violation("batch file must be an array of argument lists");
  std::vector<std::vector<std::string>> jobs;
  for (auto& item : list) {
    if (!item.is_array()) io::violation("batch entries must be arrays of strings");
    std::vector<std::string> a;
    for (auto& s : item) {
      if (!s.is_string()) io::violation("batch entries must be arrays of strings");
      a.push_back(s.get<std::string>());
    }
    for (auto& s : a)
      if (s == "--batch" || s == "--out") io::violation("batch entries cannot nest --batch or --out");
    a.push_back("--seed");
    a.push_back(std::to_string(o.seed));
    jobs.push_back(std::move(a));
  }
  struct Done {
    int code;
    std::string text;
  };
  std::vector<std::future<Done>> futs;
  for (auto& a : jobs)
    futs.push_back(std::async(std::launch::async, [a] {
      std::ostringstream os, es;
      int code = run(a, os, es);
      return Done{code, os.str()};
    }));
  json results = json::array();
  worst = 0;
  for (auto& f : futs) {
    Done d = f.get();
    worst = std::max(worst, d.code);
    json doc = d.text.empty() ? json(nullptr) : json::parse(d.text);
    results.push_back({{"exit_code", d.code}, {"output", doc}});
  }
  return results;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unef: positivity criteria, cones, slopes and strata for unitary Shimura varieties"};
  app.set_help_all_flag("--help-all");
  Options o;
  app.add_option("--seed", o.seed, "random seed (default 0)");
  app.add_option("--out", o.out, "write the JSON document here instead of stdout");
  app.add_option("--batch", o.batch, "JSON array of argument lists, run as one batch");
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto* check = app.add_subcommand("check", "nef/ample verdicts for automorphic line bundles");
  check->add_option("action", o.action, "flag | X | partial | minimal")->required();
  register_common(check, o);
  check->add_option("--weight", o.weight, "weight JSON (defaults to the signature's \"weight\")");
  check->add_option("--mode", o.mode, "ample | nef");
  check->add_flag("--case2-leading-term", o.leading_form, "use only the leading coefficient p^{(n-2)N}");

  auto* cone = app.add_subcommand("cone", "the X-weight cone and the averaging closure");
  cone->add_option("action", o.action, "rays | member | decompose | fixpoint")->required();
  cone->add_option("--p", o.p, "prime");
  cone->add_option("--a", o.a, "gaps a(i_1),...,a(i_t)")->required();
  cone->add_option("--iters", o.iters, "averaging iterations");
  cone->add_option("--point", o.point, "comma-separated rationals");
  cone->add_flag("--json", o.json_flag, "accepted for compatibility; output is always JSON");

  auto* picard = app.add_subcommand("picard", "divisor class bookkeeping");
  picard->add_option("action", o.action, "reduce | identity | feasible-t")->required();
  register_common(picard, o);
  picard->add_option("--relations", o.relations, "reduce request JSON");
  picard->add_option("--params", o.params, "feasible-t parameters JSON");
  picard->add_option("--name", o.name, "half-half | tower | fiber");
  picard->add_option("--a", o.a, "gaps for the half-half identity");
  picard->add_option("--l", o.l, "split position for the half-half identity");
  picard->add_option("--N", o.N, "number of places for the tower identity");
  picard->add_option("--s", o.s, "tower height");

  auto* slope = app.add_subcommand("slope", "slopes, towers and diagrams");
  slope->add_option("action", o.action, "generic | from-ranks | tower | diagram")->required();
  register_common(slope, o);
  slope->add_option("--place", o.place, "place of the bundle (1-based)");
  slope->add_option("--rank", o.rank, "rank of the bundle");
  slope->add_option("--ranks", o.ranks, "intersection ranks r~_0..r~_N");
  slope->add_option("--m", o.m, "rank of the starting bundle of the tower");
  slope->add_option("--r", o.r, "slope vector r_1..r_N");
  slope->add_option("--svg", o.svg, "also write the diagram as SVG");

  auto* zip = app.add_subcommand("zip", "random points of the mod-p linear algebra model");
  zip->add_option("action", o.action, "sample | slope | quotient")->required();
  register_common(zip, o);
  zip->add_option("--place", o.place, "place (1-based)");
  zip->add_option("--rank", o.rank, "subspace rank");
  zip->add_option("--samples", o.samples, "number of sampled points");
  zip->add_option("--chains", o.chains, "number of chains to test");

  auto* weyl = app.add_subcommand("weyl", "Ekedahl-Oort strata combinatorics");
  weyl->add_option("action", o.action, "strata")->required();
  register_common(weyl, o);
  weyl->add_option("--order", o.order, "bruhat | twisted");
  weyl->add_option("--variant", o.variant, "twisted-order convention: inverse | plain");

  auto* self = app.add_subcommand("selftest", "run the embedded worked examples");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    json doc{{"command", args.empty() ? "" : args[0]},
             {"seed", o.seed},
             {"error", {{"kind", "input"}, {"message", e.what()}}}};
    out << doc.dump(2) << "\n";
    return 2;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  if (!o.action.empty()) command += " " + o.action;
  if (!o.batch.empty()) command = "batch";

  int code = 0;
  json doc{{"command", command}, {"seed", o.seed}};
  try {
    if (!o.batch.empty()) {
      int worst = 0;
      doc["result"] = run_batch(o, worst);
      code = worst;
    } else if (*check) {
      doc["result"] = cmd_check(o);
    } else if (*cone) {
      doc["result"] = cmd_cone(o);
    } else if (*picard) {
      doc["result"] = cmd_picard(o);
    } else if (*slope) {
      doc["result"] = cmd_slope(o);
    } else if (*zip) {
      doc["result"] = cmd_zip(o);
    } else if (*weyl) {
      doc["result"] = cmd_weyl(o);
    } else if (*self) {
      bool ok = true;
      doc["result"] = cmd_selftest(ok);
      if (!ok) code = 3;
    } else {
      throw InputError("no subcommand given (check, cone, picard, slope, zip, weyl, selftest)");
    }
  } catch (const InputError& e) {
    doc["error"] = {{"kind", "input"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
    err << "internal error: " << e.what() << "\n";
    code = 3;
  }
  std::string text = doc.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace unef::cli
