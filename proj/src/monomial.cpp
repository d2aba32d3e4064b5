#include "toricob/monomial.hpp"

#include <algorithm>
#include <set>

namespace toricob {

bool in_dual_monoid(const Cone& sigma, const Vec& m) {
  if (m.size() != sigma.rank) throw ToricError("in_dual_monoid: rank mismatch");
  for (const Vec& r : sigma.rays)
    if (dot(m, r) < 0) return false;
  for (const Vec& l : sigma.lines)
    if (dot(m, l) != 0) return false;
  return true;
}

namespace {

// HNF basis of the unit-monomial lattice sigma-perp intersect M.
std::vector<Vec> unit_lattice(const Cone& sigma) {
  std::vector<Vec> gens = sigma.generators();
  if (gens.empty()) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < sigma.rank; ++i) {
      Vec e(sigma.rank);
      e[i] = 1;
      rows.push_back(e);
    }
    return rows;
  }
  return kernel_basis(Mat::from_rows(gens, sigma.rank));
}

}  // namespace

MonomialIdeal MonomialIdeal::make(const Cone& chart, std::vector<Vec> gens) {
  MonomialIdeal out;
  out.chart = chart;
  std::vector<Vec> units = unit_lattice(chart);
  std::set<Vec> reps;
  for (const Vec& g : gens) {
    if (!in_dual_monoid(chart, g))
      throw ToricError("MonomialIdeal: generator outside the dual monoid");
    reps.insert(reduce_mod_lattice(g, units));
  }
  // After unit reduction divisibility is antisymmetric, so keeping the
  // undominated representatives yields the unique minimal generating set.
  for (const Vec& g : reps) {
    bool dominated = false;
    for (const Vec& h : reps) {
      if (h == g) continue;
      if (in_dual_monoid(chart, sub(g, h))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.gens.push_back(g);
  }
  std::sort(out.gens.begin(), out.gens.end(), vec_less);
  return out;
}

namespace {

// Hilbert basis of a pointed cone: candidates are the primitive extreme rays
// plus all parallelepiped lattice points of a triangulation; filtering in
// increasing height (against previously accepted irreducibles only) is exact.
std::vector<Vec> pointed_hilbert_basis(const Cone& c) {
  if (!c.lines.empty()) throw ToricError("hilbert_basis: internal lineality");
  if (c.rays.empty()) return {};
  std::set<Vec> cand(c.rays.begin(), c.rays.end());
  for (const std::vector<Vec>& t : triangulate_cone(c)) {
    Cone s = Cone::from_generators(c.rank, t);
    for (const Vec& p : parallelepiped_lattice_points(s)) cand.insert(p);
  }
  Vec u(c.rank);  // strictly positive on c minus the origin
  for (const Vec& d : c.dual_rays) u = add(u, d);
  std::vector<std::pair<Int, Vec>> by_height;
  for (const Vec& x : cand) by_height.emplace_back(dot(u, x), x);
  std::sort(by_height.begin(), by_height.end(),
            [](const std::pair<Int, Vec>& p, const std::pair<Int, Vec>& q) {
              if (p.first != q.first) return p.first < q.first;
              return vec_less(p.second, q.second);
            });
  std::vector<Vec> out;
  for (const auto& [h, x] : by_height) {
    bool reducible = false;
    for (const Vec& y : out) {
      if (dot(u, y) >= h) break;  // out is height-sorted
      if (c.contains(sub(x, y))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), vec_less);
  return out;
}

}  // namespace

std::vector<Vec> hilbert_basis(const Cone& c) {
  if (c.dim == 0) return {};
  if (c.lines.empty()) return pointed_hilbert_basis(c);
  const std::size_t n = c.rank, k = c.lines.size();
  // Split off the lineality lattice; any integral lift of the pointed part
  // lies in c (the whole fiber coset does), reduced canonically mod the lines.
  Mat proj = span_quotient(c.lines, n);
  std::vector<Vec> prays;
  for (const Vec& r : c.rays) prays.push_back(mat_vec(proj, r));
  Cone q = Cone::from_generators(n - k, prays);
  if (!q.lines.empty()) throw ToricError("hilbert_basis: quotient not pointed");
  std::vector<Vec> out;
  for (const Vec& l : c.lines) {
    out.push_back(l);
    out.push_back(neg(l));
  }
  for (const Vec& h : pointed_hilbert_basis(q)) {
    std::optional<Vec> x = solve(proj, h);
    if (!x) throw ToricError("hilbert_basis: lift solve failed");
    out.push_back(reduce_mod_lattice(*x, c.lines));
  }
  std::sort(out.begin(), out.end(), vec_less);
  return out;
}

MonomialIdeal torific_generators(const Cone& sigma, const Vec& a, const Int& alpha) {
  if (a.size() != sigma.rank) throw ToricError("torific_generators: rank mismatch");
  if (is_zero(a) || !is_primitive(a))
    throw ToricError("torific_generators: a must be primitive");
  if (sigma.contains(a) || sigma.contains(neg(a)))
    throw ToricError("torific_generators: a lies in +-sigma");
  const std::size_t n = sigma.rank;
  // Cone of (m, k) with m in sigma-dual, <m,a> = alpha*k, k >= 0; the minimal
  // ideal generators are the level-one Hilbert basis elements.
  std::vector<Vec> half;
  for (const Vec& g : sigma.generators()) {
    Vec h = g;
    h.push_back(0);
    half.push_back(h);
  }
  Vec klast(n + 1);
  klast[n] = 1;
  half.push_back(klast);
  Vec eq = a;
  eq.push_back(-alpha);
  Cone calpha = Cone::from_inequalities(n + 1, half, {eq});
  std::vector<Vec> gens;
  for (const Vec& h : hilbert_basis(calpha))
    if (h[n] == 1) gens.push_back(Vec(h.begin(), h.end() - 1));
  return MonomialIdeal::make(sigma, gens);
}

MonomialIdeal ideal_product(const MonomialIdeal& x, const MonomialIdeal& y) {
  if (!(x.chart == y.chart)) throw ToricError("ideal_product: chart mismatch");
  std::vector<Vec> sums;
  for (const Vec& gx : x.gens)
    for (const Vec& gy : y.gens) sums.push_back(add(gx, gy));
  return MonomialIdeal::make(x.chart, sums);
}

MonomialIdeal pullback_to_chart(const MonomialIdeal& I, const Cone& tau) {
  if (tau.rank != I.chart.rank || !I.chart.contains_cone(tau))
    throw ToricError("pullback_to_chart: tau is not contained in the chart");
  return MonomialIdeal::make(tau, I.gens);
}

Subdivision newton_subdivision(const Cone& sigma, const MonomialIdeal& I) {
  if (!(I.chart == sigma)) throw ToricError("newton_subdivision: chart mismatch");
  if (I.is_zero()) throw ToricError("newton_subdivision: zero ideal");
  std::vector<Cone> cells;
  for (const Vec& m : I.gens) {
    // domain where z^m realizes the order of I: <m,v> <= <m',v> for all m'
    std::vector<Vec> half = sigma.dual_rays;
    for (const Vec& mp : I.gens)
      if (!(mp == m)) half.push_back(sub(mp, m));
    Cone cell = Cone::from_inequalities(sigma.rank, half, sigma.dual_lines);
    if (cell.dim == sigma.dim) cells.push_back(cell);
  }
  Fan fine = Fan::from_cones(sigma.rank, cells);
  Fan coarse = Fan::from_cones(sigma.rank, {sigma});
  std::variant<Subdivision, Cone> r = is_refinement(fine, coarse);
  if (std::holds_alternative<Cone>(r))
    throw ToricError("newton_subdivision: cells do not subdivide the chart");
  return std::get<Subdivision>(std::move(r));
}

}  // namespace toricob
