#include "toricob/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

namespace toricob {

namespace {

using nlohmann::json;

CmdResult guarded(const std::function<CmdResult()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return {2, {{"error", e.what()}}};
  } catch (const ToricError& e) {
    return {1, {{"error", e.what()}}};
  }
}

CobordismFan load_cobordism(const std::string& path) {
  FanFile ff = read_fan_file(path);
  if (!ff.action) throw ToricError("no action vector in '" + path + "'");
  return CobordismFan::make(to_fan(ff), *ff.action);
}

json json_cycle(const CycleError& ce) {
  json arr = json::array();
  for (const Cone& c : ce.cycle) arr.push_back(json_cone(c));
  return arr;
}

json json_labels(const std::map<std::string, int>& labels) {
  json arr = json::array();
  for (const auto& [k, v] : labels) arr.push_back({{"cone", k}, {"label", v}});
  return arr;
}

json json_chars(const std::vector<Int>& cs) {
  json arr = json::array();
  for (const Int& c : cs) arr.push_back(json_int(c));
  return arr;
}

json torific_json(const TorificRun& run) {
  json ideals = json::array();
  for (std::size_t i = 0; i < run.characters.size(); ++i)
    ideals.push_back({{"character", json_int(run.characters[i])},
                      {"gens", json_vecs(run.char_ideals[i].gens)}});
  json certs = json::array();
  for (const ToroidalWitness& w : run.certificates)
    certs.push_back({{"chart", json_cone(w.tau)},
                     {"ray", json_vec(w.ray)},
                     {"m", w.m ? json_vec(*w.m) : json(nullptr)}});
  return {{"chart", json_cone(run.sigma)},
          {"smooth", true},
          {"balanced", run.balanced},
          {"characters", json_chars(run.characters)},
          {"ideals", ideals},
          {"product", json_vecs(run.product.gens)},
          {"fan", json_fan(run.subdivision.fine)},
          {"removed_rays", json_vecs(run.removed_rays)},
          {"certificates", certs},
          {"certified", run.all_certified()}};
}

// Torific runs on the smooth maximal charts of a piece; records the first
// failed certificate into `failure`.
json piece_charts(const Fan& piece, const Vec& a, const std::vector<Int>& extra,
                  bool balanced, json& failure) {
  json charts = json::array();
  for (const Cone& sigma : piece.maximal()) {
    if (!is_smooth(sigma)) {
      charts.push_back({{"chart", json_cone(sigma)}, {"smooth", false}});
      continue;
    }
    TorificRun run = torify_chart(sigma, a, extra, balanced);
    charts.push_back(torific_json(run));
    if (!run.all_certified() && failure.is_null())
      for (const ToroidalWitness& w : run.certificates)
        if (!w.m) {
          failure = {{"chart", json_cone(w.tau)}, {"ray", json_vec(w.ray)}};
          break;
        }
  }
  return charts;
}

struct ExplicitSteps {
  json steps;
  Fan common;
};

// The explicit star-subdivision / inverse pair for a piece: every dependent
// maximal cone must produce an elementary_factor witness, and starring the
// collected rays on both quotient boundaries must meet in one common fan.
std::optional<ExplicitSteps> explicit_steps(const Fan& piece, const BoundaryPair& bp,
                                            const Vec& a) {
  std::vector<Vec> minus, plus;
  for (const Cone& sigma : piece.maximal()) {
    if (is_free(sigma, a)) continue;
    std::optional<ElementaryFactor> ef;
    try {
      ef = elementary_factor(sigma, a);
    } catch (const ToricError&) {
      return std::nullopt;  // non-simplicial dependent chart
    }
    if (!ef) return std::nullopt;
    if (ef->r_minus) minus.push_back(primitive(bp.pi.apply(*ef->r_minus)));
    if (ef->r_plus) plus.push_back(primitive(bp.pi.apply(*ef->r_plus)));
  }
  auto dedupe = [](std::vector<Vec>& v) {
    std::sort(v.begin(), v.end(), vec_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(minus);
  dedupe(plus);

  json steps = json::array();
  Fan down = bp.lower_q;
  for (const Vec& rho : minus) {
    Fan next = star_subdivision(down, rho);
    if (!fans_equal(next, down))
      steps.push_back({{"type", "star-subdivision"},
                       {"ray", json_vec(rho)},
                       {"before", json_fan(down)},
                       {"after", json_fan(next)}});
    down = next;
  }
  std::vector<json> ups;
  Fan up = bp.upper_q;
  for (const Vec& rho : plus) {
    Fan next = star_subdivision(up, rho);
    if (!fans_equal(next, up))
      ups.push_back({{"type", "inverse-star-subdivision"},
                     {"ray", json_vec(rho)},
                     {"before", json_fan(next)},
                     {"after", json_fan(up)}});
    up = next;
  }
  if (!fans_equal(down, up)) return std::nullopt;
  for (auto it = ups.rbegin(); it != ups.rend(); ++it) steps.push_back(*it);
  return ExplicitSteps{steps, down};
}

Vec vvv(std::initializer_list<long long> xs) {
  Vec v;
  for (long long x : xs) v.push_back(Int(x));
  return v;
}

Cone ccc(std::initializer_list<std::initializer_list<long long>> gens) {
  std::vector<Vec> g;
  for (const auto& x : gens) g.push_back(vvv(x));
  return Cone::from_generators(3, g);
}

}  // namespace

CmdResult cmd_check(const std::string& fan_path) {
  return guarded([&]() -> CmdResult {
    FanFile ff = read_fan_file(fan_path);
    std::vector<Cone> max_cones;
    std::vector<bool> used(ff.rays.size(), false);
    for (const std::vector<std::size_t>& idx : ff.cones) {
      std::vector<Vec> gens;
      for (std::size_t i : idx) {
        gens.push_back(ff.rays[i]);
        used[i] = true;
      }
      max_cones.push_back(Cone::from_generators(ff.rank, gens));
    }
    for (std::size_t i = 0; i < ff.rays.size(); ++i)
      if (!used[i]) max_cones.push_back(Cone::from_generators(ff.rank, {ff.rays[i]}));
    if (max_cones.empty()) max_cones.push_back(Cone::zero(ff.rank));

    // close under faces, then run the non-throwing validity check
    std::map<std::string, Cone> closed;
    for (const Cone& c : max_cones)
      for (const Cone& face : faces_of(c)) closed.emplace(face.key(), face);
    std::vector<Cone> cone_list;
    for (const auto& [k, c] : closed) cone_list.push_back(c);
    ValidityReport vr = fan_validity(ff.rank, cone_list);

    json report = {{"command", "check"}, {"rank", ff.rank}, {"valid", vr.ok}};
    if (ff.action) report["action"] = json_vec(*ff.action);
    if (!vr.ok) {
      report["message"] = vr.message;
      return {1, report};
    }
    Fan f = Fan::from_cones(ff.rank, cone_list, false);
    json cones = json::array();
    std::size_t maxdim = 0;
    for (const Cone& c : f.maximal()) {
      cones.push_back({{"rays", json_vecs(c.rays)},
                       {"dim", c.dim},
                       {"smooth", is_smooth(c)},
                       {"simplicial", is_simplicial(c)}});
      maxdim = std::max(maxdim, c.dim);
    }
    report["cones"] = cones;
    report["smooth"] = f.is_smooth();
    report["simplicial"] = f.is_simplicial();

    json support = {{"rays", json_vecs(f.ray_generators())}, {"dim", maxdim}};
    std::vector<Vec> allgens;
    for (const Cone& c : f.maximal())
      for (const Vec& g : c.generators()) allgens.push_back(g);
    Cone hull = Cone::from_generators(ff.rank, allgens);
    if (hull.lines.empty())
      support["convex"] = std::holds_alternative<Subdivision>(
          is_refinement(f, Fan::from_cones(ff.rank, {hull})));
    else
      support["convex"] = nullptr;  // hull has lineality: left undecided
    report["support"] = support;
    return {0, report};
  });
}

CmdResult cmd_dual(const std::string& fan_path) {
  return guarded([&]() -> CmdResult {
    Fan f = to_fan(read_fan_file(fan_path));
    json entries = json::array();
    bool all_ok = true;
    for (const Cone& c : f.maximal()) {
      Cone d = dual_cone(c);
      bool inv = dual_cone(d) == c;
      all_ok = all_ok && inv;
      entries.push_back(
          {{"cone", json_cone(c)}, {"dual", json_cone(d)}, {"involution_ok", inv}});
    }
    return {all_ok ? 0 : 1,
            {{"command", "dual"},
             {"rank", f.rank},
             {"duals", entries},
             {"involution_ok", all_ok}}};
  });
}

CmdResult cmd_boundary(const std::string& fan_path) {
  return guarded([&]() -> CmdResult {
    CobordismFan cb = load_cobordism(fan_path);
    BoundaryPair bp = boundary_fans(cb.fan, cb.a);
    json report = {{"command", "boundary"},
                   {"action", json_vec(cb.a)},
                   {"projection", json_vecs(bp.pi.proj.to_rows())},
                   {"lower", json_fan(bp.lower)},
                   {"upper", json_fan(bp.upper)},
                   {"lower_q", json_fan(bp.lower_q)},
                   {"upper_q", json_fan(bp.upper_q)},
                   {"trivial", fans_equal(bp.lower_q, bp.upper_q)}};
    return {0, report};
  });
}

CmdResult cmd_cobordize(const std::string& fan_path, const std::string& ideal_path,
                        const std::optional<std::string>& cobordism_out) {
  return guarded([&]() -> CmdResult {
    Fan delta2 = to_fan(read_fan_file(fan_path));
    std::vector<MonomialIdeal> ideals = to_ideals(read_ideal_file(ideal_path));
    CobordismFan cb = build_cobordism(delta2, ideals);
    Fan blow = blowup_fan(delta2, ideals);
    BoundaryPair bp = boundary_fans(cb.fan, cb.a);
    bool lower_ok = fans_equal(bp.lower_q, blow);
    bool upper_ok = fans_equal(bp.upper_q, delta2);
    std::string file_text = write_fan_file(from_fan(cb.fan, cb.a));
    if (cobordism_out) {
      std::ofstream out(*cobordism_out);
      if (!out) throw ToricError("cannot write '" + *cobordism_out + "'");
      out << file_text;
    }
    json report = {{"command", "cobordize"},
                   {"cobordism", json_fan(cb.fan)},
                   {"action", json_vec(cb.a)},
                   {"cobordism_file", file_text},
                   {"blowup", json_fan(blow)},
                   {"lower_q", json_fan(bp.lower_q)},
                   {"upper_q", json_fan(bp.upper_q)},
                   {"lower_matches_blowup", lower_ok},
                   {"upper_matches_source", upper_ok},
                   {"trivial", fans_equal(bp.lower_q, bp.upper_q)}};
    return {lower_ok && upper_ok ? 0 : 1, report};
  });
}

CmdResult cmd_chi(const std::string& fan_path) {
  return guarded([&]() -> CmdResult {
    CobordismFan cb = load_cobordism(fan_path);
    json report = {{"command", "chi"}, {"action", json_vec(cb.a)}};
    json deps = json::array();
    for (const Cone& c : dependent_cones(cb.fan, cb.a)) deps.push_back(json_cone(c));
    report["dependent_cones"] = deps;
    json edges = json::array();
    for (const auto& [x, y] : order_relation(cb.fan, cb.a))
      edges.push_back({{"from", x.key()}, {"to", y.key()}});
    report["order"] = edges;

    auto fine = chi(cb.fan, cb.a);
    if (const CycleError* ce = std::get_if<CycleError>(&fine)) {
      report["cycle"] = json_cycle(*ce);
      return {3, report};
    }
    report["chi"] = json_labels(std::get<std::map<std::string, int>>(fine));
    auto comp = component_labels(cb.fan, cb.a);
    if (const CycleError* ce = std::get_if<CycleError>(&comp)) {
      report["component_cycle"] = json_cycle(*ce);
      return {3, report};
    }
    report["component_labels"] = json_labels(std::get<std::map<std::string, int>>(comp));
    return {0, report};
  });
}

CmdResult cmd_pieces(const std::string& fan_path) {
  return guarded([&]() -> CmdResult {
    CobordismFan cb = load_cobordism(fan_path);
    auto lab = component_labels(cb.fan, cb.a);
    if (const CycleError* ce = std::get_if<CycleError>(&lab))
      return {3, {{"command", "pieces"}, {"cycle", json_cycle(*ce)}}};
    const auto& labels = std::get<std::map<std::string, int>>(lab);
    std::vector<Fan> pieces = quasi_elementary_pieces(cb.fan, cb.a, labels);
    BoundaryPair whole = boundary_fans(cb.fan, cb.a);

    std::set<int> values;
    for (const auto& [k, v] : labels) values.insert(v);
    std::vector<int> vlist(values.begin(), values.end());

    json arr = json::array();
    bool joints = true;
    std::optional<Fan> prev_upper;
    std::optional<Fan> first_lower;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      BoundaryPair bp = boundary_fans(pieces[i], cb.a);
      if (prev_upper) joints = joints && fans_equal(*prev_upper, bp.lower_q);
      if (!first_lower) first_lower = bp.lower_q;
      prev_upper = bp.upper_q;
      arr.push_back({{"label", i < vlist.size() ? json(vlist[i]) : json(nullptr)},
                     {"fan", json_fan(pieces[i])},
                     {"lower_q", json_fan(bp.lower_q)},
                     {"upper_q", json_fan(bp.upper_q)}});
    }
    bool outer = pieces.empty() || (fans_equal(*first_lower, whole.lower_q) &&
                                    fans_equal(*prev_upper, whole.upper_q));
    json report = {{"command", "pieces"},  {"action", json_vec(cb.a)},
                   {"labels", json_labels(labels)}, {"pieces", arr},
                   {"joints_ok", joints},  {"outer_ok", outer}};
    return {joints && outer ? 0 : 1, report};
  });
}

CmdResult cmd_torify(const std::string& fan_path,
                     const std::vector<Int>& extra_characters, bool balanced) {
  return guarded([&]() -> CmdResult {
    CobordismFan cb = load_cobordism(fan_path);
    json failure;
    json charts = piece_charts(cb.fan, cb.a, extra_characters, balanced, failure);
    json report = {{"command", "torify"},
                   {"action", json_vec(cb.a)},
                   {"balanced", balanced},
                   {"charts", charts}};
    if (!failure.is_null()) {
      report["failure"] = failure;
      return {4, report};
    }
    return {0, report};
  });
}

CmdResult cmd_factor(const std::string& fan_path,
                     const std::vector<Int>& extra_characters, bool balanced) {
  return guarded([&]() -> CmdResult {
    CobordismFan cb = load_cobordism(fan_path);
    json report = {{"command", "factor"},
                   {"action", json_vec(cb.a)},
                   {"balanced", balanced}};
    auto lab = component_labels(cb.fan, cb.a);
    if (const CycleError* ce = std::get_if<CycleError>(&lab)) {
      report["cycle"] = json_cycle(*ce);
      return {3, report};
    }
    const auto& labels = std::get<std::map<std::string, int>>(lab);
    report["labels"] = json_labels(labels);
    std::vector<Fan> pieces = quasi_elementary_pieces(cb.fan, cb.a, labels);
    BoundaryPair whole = boundary_fans(cb.fan, cb.a);
    report["source"] = json_fan(whole.lower_q);
    report["target"] = json_fan(whole.upper_q);

    std::set<int> values;
    for (const auto& [k, v] : labels) values.insert(v);
    std::vector<int> vlist(values.begin(), values.end());

    json pieces_json = json::array();
    json trace = json::array();
    Fan cur = whole.lower_q;
    bool ok = true;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      BoundaryPair bp = boundary_fans(pieces[i], cb.a);
      ok = ok && fans_equal(cur, bp.lower_q);

      json pj = {{"label", i < vlist.size() ? json(vlist[i]) : json(nullptr)},
                 {"fan", json_fan(pieces[i])},
                 {"lower_q", json_fan(bp.lower_q)},
                 {"upper_q", json_fan(bp.upper_q)}};
      json failure;
      pj["charts"] = piece_charts(pieces[i], cb.a, extra_characters, balanced, failure);
      if (!failure.is_null()) {
        pieces_json.push_back(pj);
        report["pieces"] = pieces_json;
        report["failure"] = failure;
        return {4, report};
      }

      if (fans_equal(bp.lower_q, bp.upper_q)) {
        pj["explicit"] = true;
        pj["steps"] = json::array();
        pj["common"] = json_fan(bp.lower_q);
      } else if (std::optional<ExplicitSteps> es = explicit_steps(pieces[i], bp, cb.a)) {
        pj["explicit"] = true;
        pj["steps"] = es->steps;
        pj["common"] = json_fan(es->common);
        for (const json& s : es->steps) {
          json t = s;
          t["piece"] = i;
          trace.push_back(t);
        }
      } else {
        Fan common = common_refinement(bp.lower_q, bp.upper_q);
        bool lo_ref =
            std::holds_alternative<Subdivision>(is_refinement(common, bp.lower_q));
        bool hi_ref =
            std::holds_alternative<Subdivision>(is_refinement(common, bp.upper_q));
        ok = ok && lo_ref && hi_ref;
        json tor = {{"type", "torific-blowup"}, {"charts", pj["charts"]}};
        json tri = {{"type", "quotient-map"},
                    {"lower", json_fan(bp.lower_q)},
                    {"common", json_fan(common)},
                    {"upper", json_fan(bp.upper_q)},
                    {"lower_refined", lo_ref},
                    {"upper_refined", hi_ref}};
        pj["explicit"] = false;
        pj["steps"] = json::array({tor, tri});
        pj["common"] = json_fan(common);
        for (json t : {tor, tri}) {
          t["piece"] = i;
          trace.push_back(t);
        }
      }
      pieces_json.push_back(pj);
      cur = bp.upper_q;
    }
    ok = ok && fans_equal(cur, whole.upper_q);
    report["pieces"] = pieces_json;
    report["trace"] = trace;
    report["replay_ok"] = ok;
    return {ok ? 0 : 1, report};
  });
}

CmdResult cmd_worked_example(bool balanced, const nlohmann::json& expected_override) {
  return guarded([&]() -> CmdResult {
    const Cone orth = ccc({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const Vec a = vvv({2, 3, -1});
    const Cone split_chart = ccc({{1, 0, 0}, {1, 0, 1}, {1, 1, 0}});
    const Fan pinned_fan =
        Fan::from_cones(3, {split_chart,
                            ccc({{1, 1, 0}, {1, 0, 1}, {2, 3, 0}, {0, 0, 1}}),
                            ccc({{2, 3, 0}, {0, 0, 1}, {1, 2, 0}, {0, 1, 1}}),
                            ccc({{1, 2, 0}, {0, 1, 1}, {0, 1, 0}})});

    json expected;
    expected["characters"] =
        balanced ? json::array({-10, -1, 2, 3, 6}) : json::array({-1, 2, 3, 6});
    expected["I_2"] = json::array({{0, 1, 1}, {1, 0, 0}});
    expected["I_3"] = json::array({{0, 1, 0}, {2, 0, 1}});
    expected["I_6"] = json::array({{0, 2, 0}, {2, 1, 1}, {3, 0, 0}});
    expected["I_-1"] = json::array({{0, 0, 1}});
    if (balanced) {
      expected["I_-10"] = json::array({{0, 0, 10}});
      expected["character_sum"] = 0;
    }
    expected["fan"] = json_fan(pinned_fan);
    expected["removed_rays"] = json::array({{0, 1, 0}, {1, 0, 0}});
    expected["witness_m"] = json::array({1, -1, -1});
    expected["certified"] = true;
    if (expected_override.is_object()) expected.update(expected_override);

    TorificRun run = torify_chart(orth, a, {Int(6)}, balanced);
    json actual;
    actual["characters"] = json_chars(run.characters);
    for (std::size_t i = 0; i < run.characters.size(); ++i)
      actual["I_" + run.characters[i].str()] = json_vecs(run.char_ideals[i].gens);
    actual["fan"] = json_fan(run.subdivision.fine);
    actual["removed_rays"] = json_vecs(run.removed_rays);
    actual["witness_m"] = nullptr;
    for (const ToroidalWitness& w : run.certificates)
      if (w.tau == split_chart && w.ray == vvv({1, 0, 0}) && w.m)
        actual["witness_m"] = json_vec(*w.m);
    actual["certified"] = run.all_certified();
    if (balanced) {
      Int sum = 0;
      for (const Int& c : run.characters) sum += c;
      actual["character_sum"] = json_int(sum);
    }

    json diff = json::array();
    for (const auto& [key, val] : expected.items()) {
      json got = actual.contains(key) ? actual[key] : json(nullptr);
      if (got != val)
        diff.push_back({{"field", key}, {"expected", val}, {"actual", got}});
    }
    json report = {{"command", "worked-example"},
                   {"balanced", balanced},
                   {"actual", actual},
                   {"diff", diff},
                   {"ok", diff.empty()}};
    return {diff.empty() ? 0 : 1, report};
  });
}

}  // namespace toricob
