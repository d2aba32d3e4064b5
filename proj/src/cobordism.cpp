#include "toricob/cobordism.hpp"

#include <algorithm>
#include <set>

namespace toricob {

namespace {

void require_outside(const Fan& f, const Vec& a, const char* who) {
  if (a.size() != f.rank) throw ToricError(std::string(who) + ": rank mismatch");
  if (is_zero(a)) throw ToricError(std::string(who) + ": zero direction");
  for (const Cone& c : f.maximal())
    if (c.contains(a) || c.contains(neg(a)))
      throw ToricError(std::string(who) + ": direction lies in +-support");
}

// a in gamma + span(tau)?
bool escapes_into(const Cone& gamma, const Cone& tau, const Vec& a) {
  GenSys g;
  g.rays = gamma.rays;
  g.lines = gamma.lines;
  for (const Vec& r : tau.rays) g.lines.push_back(r);
  for (const Vec& l : tau.lines) g.lines.push_back(l);
  return Cone::from_gensys(gamma.rank, g).contains(a);
}

Fan boundary_side(const Fan& f, const Vec& dir) {
  std::vector<Cone> max = f.maximal();
  std::vector<Cone> side;
  for (const Cone& tau : f.cones) {
    bool stays = false;
    for (const Cone& gamma : max)
      if (gamma.contains_cone(tau) && escapes_into(gamma, tau, dir)) {
        stays = true;
        break;
      }
    if (!stays) side.push_back(tau);
  }
  return Fan::from_cones(f.rank, side);
}

Fan project_fan(const Mat& proj, std::size_t out_rank, const Fan& f) {
  std::vector<Cone> img;
  for (const Cone& c : f.maximal()) img.push_back(image_cone(proj, c));
  (void)out_rank;
  return Fan::from_cones(out_rank, img);
}

}  // namespace

BoundaryPair boundary_fans(const Fan& f, const Vec& a) {
  require_outside(f, a, "boundary_fans");
  Vec ap = primitive(a);
  BoundaryPair out;
  out.lower = boundary_side(f, ap);
  out.upper = boundary_side(f, neg(ap));
  out.pi = quotient_by(ap);
  out.lower_q = project_fan(out.pi.proj, f.rank - 1, out.lower);
  out.upper_q = project_fan(out.pi.proj, f.rank - 1, out.upper);
  return out;
}

bool is_dependent(const Cone& c, const Vec& a) {
  if (a.size() != c.rank) throw ToricError("is_dependent: rank mismatch");
  std::vector<Vec> gens = c.generators();
  if (gens.empty()) return false;
  return solve_rational(transpose(Mat::from_rows(gens, c.rank)), a).has_value();
}

std::vector<Cone> dependent_cones(const Fan& f, const Vec& a) {
  std::vector<Cone> out;
  for (const Cone& c : f.cones)
    if (is_dependent(c, a)) out.push_back(c);
  return out;
}

std::optional<Cone> limit_cone(const Fan& f, const Cone& gamma, const Vec& a,
                               bool to_zero) {
  if (!f.has_cone(gamma)) throw ToricError("limit_cone: cone not in fan");
  if (is_dependent(gamma, a)) return gamma;  // fixed orbit
  Vec dir = to_zero ? a : neg(a);
  Mat proj = span_quotient(gamma.generators(), f.rank);
  Vec img = mat_vec(proj, dir);
  std::optional<Cone> found;
  for (const Cone& delta : f.cones) {
    if (!delta.contains_cone(gamma)) continue;
    if (image_cone(proj, delta).relint_contains(img)) {
      if (found) throw ToricError("limit_cone: limit not unique");
      found = delta;
    }
  }
  return found;
}

std::vector<std::pair<Cone, Cone>> order_relation(const Fan& f, const Vec& a) {
  require_outside(f, a, "order_relation");
  std::map<std::string, Cone> deps;
  for (const Cone& c : dependent_cones(f, a)) deps.emplace(c.key(), c);
  std::set<std::pair<std::string, std::string>> edges;
  for (const Cone& gamma : f.cones) {
    if (is_dependent(gamma, a)) continue;
    std::optional<Cone> lo = limit_cone(f, gamma, a, true);
    std::optional<Cone> hi = limit_cone(f, gamma, a, false);
    if (!lo || !hi) continue;
    if (!deps.count(lo->key()) || !deps.count(hi->key()))
      throw ToricError("order_relation: limit cone is not dependent");
    edges.emplace(lo->key(), hi->key());
  }
  // transitive closure
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<std::pair<std::string, std::string>> next = edges;
    for (const auto& [x, y] : edges)
      for (const auto& [u, v] : edges)
        if (y == u && !next.count({x, v})) {
          next.emplace(x, v);
          grew = true;
        }
    edges = std::move(next);
  }
  std::vector<std::pair<Cone, Cone>> out;
  for (const auto& [x, y] : edges) out.emplace_back(deps.at(x), deps.at(y));
  return out;
}

std::variant<std::map<std::string, int>, CycleError> topological_labels(
    const std::vector<Cone>& nodes, const std::vector<std::pair<Cone, Cone>>& edges) {
  std::map<std::string, Cone> by_key;
  for (const Cone& c : nodes) by_key.emplace(c.key(), c);
  std::map<std::string, std::set<std::string>> succ, pred;
  std::map<std::string, int> indeg;
  for (const auto& [k, c] : by_key) indeg[k] = 0;
  for (const auto& [x, y] : edges) {
    if (!by_key.count(x.key()) || !by_key.count(y.key()))
      throw ToricError("topological_labels: edge endpoint not a node");
    if (x.key() == y.key()) return CycleError{{x, y}};  // self-loop
    if (succ[x.key()].insert(y.key()).second) {
      pred[y.key()].insert(x.key());
      indeg[y.key()] += 1;
    }
  }
  // longest-path levels via Kahn
  std::map<std::string, int> level;
  std::set<std::string> ready;
  for (const auto& [k, d] : indeg)
    if (d == 0) {
      ready.insert(k);
      level[k] = 0;
    }
  while (!ready.empty()) {
    std::string k = *ready.begin();
    ready.erase(ready.begin());
    for (const std::string& s : succ[k]) {
      int ls = level.count(s) ? level.at(s) : 0;
      level[s] = std::max(ls, level.at(k) + 1);
      if (--indeg[s] == 0) ready.insert(s);
    }
  }
  if (level.size() != by_key.size()) {
    // walk predecessors inside the stuck subgraph until a node repeats
    std::string start;
    for (const auto& [k, d] : indeg)
      if (d > 0) {
        start = k;
        break;
      }
    std::vector<std::string> path{start};
    std::map<std::string, std::size_t> pos{{start, 0}};
    for (;;) {
      std::string next;
      for (const std::string& p : pred[path.back()])
        if (indeg.at(p) > 0) {
          next = p;
          break;
        }
      if (pos.count(next)) {
        CycleError err;
        err.cycle.push_back(by_key.at(next));
        for (std::size_t i = path.size(); i-- > pos.at(next);)
          err.cycle.push_back(by_key.at(path[i]));
        return err;
      }
      pos[next] = path.size();
      path.push_back(next);
    }
  }
  // labels by (level, key)
  std::vector<std::pair<int, std::string>> order;
  for (const auto& [k, l] : level) order.emplace_back(l, k);
  std::sort(order.begin(), order.end());
  std::map<std::string, int> label;
  int next = 0;
  for (const auto& [l, k] : order) label[k] = next++;
  return label;
}

std::variant<std::map<std::string, int>, CycleError> chi(const Fan& f, const Vec& a) {
  return topological_labels(dependent_cones(f, a), order_relation(f, a));
}

std::variant<std::map<std::string, int>, CycleError> component_labels(const Fan& f,
                                                                      const Vec& a) {
  std::vector<Cone> deps = dependent_cones(f, a);
  std::vector<size_t> parent(deps.size());
  for (size_t i = 0; i < deps.size(); ++i) parent[i] = i;
  auto root = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < deps.size(); ++i)
    for (size_t j = i + 1; j < deps.size(); ++j)
      if (deps[i].contains_cone(deps[j]) || deps[j].contains_cone(deps[i]))
        parent[root(i)] = root(j);
  std::map<size_t, Cone> rep;  // first group member in the fan's cone order
  std::map<std::string, std::string> rep_of;
  for (size_t i = 0; i < deps.size(); ++i) {
    size_t r = root(i);
    if (!rep.count(r)) rep.emplace(r, deps[i]);
    rep_of[deps[i].key()] = rep.at(r).key();
  }
  std::vector<Cone> nodes;
  for (const auto& [r, c] : rep) nodes.push_back(c);
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::pair<Cone, Cone>> edges;
  for (const auto& [x, y] : order_relation(f, a)) {
    std::string rx = rep_of.at(x.key()), ry = rep_of.at(y.key());
    if (rx == ry) {
      // comparable pair inside one group: no constant-on-group labeling exists
      if (x.key() == y.key()) return CycleError{{x, x}};
      return CycleError{{x, y, x}};
    }
    if (seen.insert({rx, ry}).second) {
      edges.emplace_back(*std::find_if(nodes.begin(), nodes.end(),
                                       [&](const Cone& c) { return c.key() == rx; }),
                         *std::find_if(nodes.begin(), nodes.end(),
                                       [&](const Cone& c) { return c.key() == ry; }));
    }
  }
  auto res = topological_labels(nodes, edges);
  if (std::holds_alternative<CycleError>(res)) return res;
  const auto& group_label = std::get<std::map<std::string, int>>(res);
  std::map<std::string, int> out;
  for (const Cone& c : deps) out[c.key()] = group_label.at(rep_of.at(c.key()));
  return out;
}

std::vector<Fan> quasi_elementary_pieces(const Fan& f, const Vec& a,
                                         const std::map<std::string, int>& labels) {
  require_outside(f, a, "quasi_elementary_pieces");
  for (const Cone& c : dependent_cones(f, a))
    if (!labels.count(c.key()))
      throw ToricError("quasi_elementary_pieces: unlabeled dependent cone");
  std::set<int> values;
  for (const auto& [k, v] : labels) values.insert(v);
  if (values.empty()) return {f};
  std::vector<Fan> out;
  for (int v : values) {
    std::vector<Cone> keep;
    for (const Cone& gamma : f.cones) {
      std::optional<Cone> lo = limit_cone(f, gamma, a, true);
      std::optional<Cone> hi = limit_cone(f, gamma, a, false);
      if (lo && labels.at(lo->key()) > v) continue;
      if (hi && labels.at(hi->key()) < v) continue;
      keep.push_back(gamma);
    }
    Fan piece = Fan::from_cones(f.rank, keep);
    if (piece.cones.size() != keep.size())
      throw ToricError("quasi_elementary_pieces: piece not face-closed");
    out.push_back(piece);
  }
  return out;
}

namespace {

Vec lift0(const Vec& v) {
  Vec w = v;
  w.push_back(0);
  return w;
}

// Chart ideal for build_cobordism's upper chart: lifted J plus z_{n+1}.
MonomialIdeal hat_ideal(const Cone& plus_chart, const MonomialIdeal& J) {
  std::vector<Vec> gens;
  for (const Vec& m : J.gens) gens.push_back(lift0(m));
  Vec zlast(plus_chart.rank);
  zlast[plus_chart.rank - 1] = 1;
  gens.push_back(zlast);
  return MonomialIdeal::make(plus_chart, gens);
}

const MonomialIdeal& ideal_for(const std::vector<MonomialIdeal>& ideals,
                               const Cone& sigma) {
  for (const MonomialIdeal& I : ideals)
    if (I.chart == sigma) return I;
  throw ToricError("build_cobordism: missing ideal for a maximal chart");
}

}  // namespace

Fan blowup_fan(const Fan& delta2, const std::vector<MonomialIdeal>& ideals) {
  std::vector<Cone> pieces;
  for (const Cone& sigma : delta2.maximal()) {
    Subdivision s = newton_subdivision(sigma, ideal_for(ideals, sigma));
    for (const Cone& c : s.fine.maximal()) pieces.push_back(c);
  }
  return Fan::from_cones(delta2.rank, pieces);
}

MonomialIdeal star_center_ideal(const Cone& sigma, const Vec& rho) {
  if (!is_smooth(sigma)) throw ToricError("star_center_ideal: chart not smooth");
  std::optional<Vec> coeff =
      solve(transpose(Mat::from_rows(sigma.rays, sigma.rank)), rho);
  if (!coeff) throw ToricError("star_center_ideal: center outside the chart span");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < coeff->size(); ++i) {
    if ((*coeff)[i] == 0) continue;
    if ((*coeff)[i] != 1)
      throw ToricError("star_center_ideal: center is not a sum of distinct rays");
    support.push_back(i);
  }
  if (support.empty()) throw ToricError("star_center_ideal: zero center");
  // dual basis vectors z_i for the rays in the support; any two choices differ
  // by units of the chart, which make() reduces away
  std::vector<Vec> gens;
  for (std::size_t i : support) {
    Vec e(sigma.rays.size());
    e[i] = 1;
    std::optional<Vec> m = solve(Mat::from_rows(sigma.rays, sigma.rank), e);
    if (!m) throw ToricError("star_center_ideal: no dual basis vector");
    gens.push_back(*m);
  }
  return MonomialIdeal::make(sigma, gens);
}

CobordismFan CobordismFan::make(Fan fan, Vec a) {
  if (is_zero(a) || !is_primitive(a))
    throw ToricError("CobordismFan: action must be primitive");
  require_outside(fan, a, "CobordismFan");
  CobordismFan out;
  out.fan = std::move(fan);
  out.a = std::move(a);
  return out;
}

CobordismFan build_cobordism(const Fan& delta2, const std::vector<MonomialIdeal>& ideals) {
  if (!delta2.is_smooth()) throw ToricError("build_cobordism: fan not smooth");
  std::vector<Cone> max = delta2.maximal();
  for (const Cone& sigma : max)
    if (ideal_for(ideals, sigma).is_zero())
      throw ToricError("build_cobordism: zero ideal on a chart");
  // chart compatibility on overlaps
  for (std::size_t i = 0; i < max.size(); ++i)
    for (std::size_t j = i + 1; j < max.size(); ++j) {
      Cone overlap = intersect_cones(max[i], max[j]);
      if (!(pullback_to_chart(ideal_for(ideals, max[i]), overlap) ==
            pullback_to_chart(ideal_for(ideals, max[j]), overlap)))
        throw ToricError("build_cobordism: ideals disagree on an overlap");
    }
  const std::size_t n = delta2.rank;
  Vec e(n + 1);
  e[n] = 1;
  std::vector<Cone> cones;
  for (const Cone& sigma : max) {
    std::vector<Vec> lifted;
    for (const Vec& r : sigma.rays) lifted.push_back(lift0(r));
    std::vector<Vec> minus = lifted, plus = lifted;
    minus.push_back(neg(e));
    plus.push_back(e);
    cones.push_back(Cone::from_generators(n + 1, minus));
    Cone plus_chart = Cone::from_generators(n + 1, plus);
    Subdivision s =
        newton_subdivision(plus_chart, hat_ideal(plus_chart, ideal_for(ideals, sigma)));
    for (const Cone& c : s.fine.maximal()) cones.push_back(c);
  }
  Fan w = Fan::from_cones(n + 1, cones);
  Desingularization res = desingularize(w);
  std::vector<Cone> kept;
  for (const Cone& c : res.sub.fine.cones)
    if (!c.contains(e) && !c.contains(neg(e))) kept.push_back(c);
  CobordismFan out = CobordismFan::make(Fan::from_cones(n + 1, kept), e);
  // boundary postconditions: the upper quotient is delta2, the lower quotient
  // is the blowup fan (a refinement of it when desingularizing was needed)
  BoundaryPair bp = boundary_fans(out.fan, out.a);
  if (!fans_equal(bp.upper_q, delta2))
    throw ToricError("build_cobordism: upper boundary is not the source fan");
  Fan blown = blowup_fan(delta2, ideals);
  if (res.centers.empty()) {
    if (!fans_equal(bp.lower_q, blown))
      throw ToricError("build_cobordism: lower boundary is not the blowup fan");
  } else if (std::holds_alternative<Cone>(is_refinement(bp.lower_q, blown))) {
    throw ToricError("build_cobordism: lower boundary does not refine the blowup fan");
  }
  return out;
}

std::optional<Cone> orbit_limit_oracle(const Fan& f, const Cone& gamma,
                                       const Vec& a, bool to_zero) {
  if (!f.has_cone(gamma)) throw ToricError("orbit_limit_oracle: cone not in fan");
  Vec dir = to_zero ? a : neg(a);
  Cone gperp = Cone::from_inequalities(f.rank, {}, gamma.generators());
  std::optional<Cone> found;
  for (const Cone& delta : f.cones) {
    if (!delta.contains_cone(gamma)) continue;
    Cone k = intersect_cones(dual_cone(delta), gperp);
    bool exists = true;
    for (const Vec& l : k.lines)
      if (dot(l, dir) != 0) {
        exists = false;
        break;
      }
    for (const Vec& r : k.rays)
      if (exists && dot(r, dir) < 0) exists = false;
    if (!exists) continue;
    // orbit cone of the limit: cut delta by the character-zero functionals
    std::vector<Vec> zero;
    for (const Vec& r : k.rays)
      if (dot(r, dir) == 0) zero.push_back(r);
    for (const Vec& l : k.lines) zero.push_back(l);
    Cone tau = intersect_cones(delta, Cone::from_inequalities(f.rank, {}, zero));
    if (found && !(*found == tau))
      throw ToricError("orbit_limit_oracle: charts disagree");
    found = tau;
  }
  return found;
}

}  // namespace toricob
