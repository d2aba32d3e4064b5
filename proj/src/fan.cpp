#include "toricob/fan.hpp"

#include <algorithm>
#include <set>

namespace toricob {

Fan Fan::from_cones(std::size_t rank, const std::vector<Cone>& cones, bool validate) {
  std::set<std::string> seen;
  std::vector<Cone> all;
  for (const Cone& c : cones) {
    if (c.rank != rank) throw ToricError("fan: cone rank mismatch");
    if (!c.is_strictly_convex()) throw ToricError("fan: cone not strictly convex");
    for (Cone& f : faces_of(c))
      if (seen.insert(f.key()).second) all.push_back(std::move(f));
  }
  if (all.empty()) throw ToricError("fan: no cones");
  std::sort(all.begin(), all.end(), cone_less);
  Fan f;
  f.rank = rank;
  f.cones = all;
  if (validate) {
    std::vector<Cone> max = f.maximal();
    for (std::size_t i = 0; i < max.size(); ++i)
      for (std::size_t j = i + 1; j < max.size(); ++j) {
        Cone meet = intersect_cones(max[i], max[j]);
        if (!is_face_of(meet, max[i]) || !is_face_of(meet, max[j]))
          throw ToricError("fan: incompatible cones " + max[i].key() + " and " +
                           max[j].key());
      }
  }
  return f;
}

std::vector<Cone> Fan::maximal() const {
  std::vector<Cone> out;
  for (const Cone& c : cones) {
    bool is_max = true;
    for (const Cone& d : cones)
      if (d.dim > c.dim && d.contains_cone(c)) {
        is_max = false;
        break;
      }
    if (is_max) out.push_back(c);
  }
  return out;
}

std::vector<Vec> Fan::ray_generators() const {
  std::vector<Vec> out;
  for (const Cone& c : cones)
    if (c.dim == 1) out.push_back(c.rays[0]);
  std::sort(out.begin(), out.end(), vec_less);
  return out;
}

bool Fan::has_cone(const Cone& c) const {
  auto it = std::lower_bound(cones.begin(), cones.end(), c, cone_less);
  return it != cones.end() && *it == c;
}

std::optional<Cone> Fan::smallest_containing(const Vec& v) const {
  for (const Cone& c : cones)
    if (c.relint_contains(v)) return c;
  return std::nullopt;
}

std::optional<Cone> Fan::smallest_containing_q(const QVec& v) const {
  for (const Cone& c : cones)
    if (c.relint_contains_q(v)) return c;
  return std::nullopt;
}

bool Fan::is_smooth() const {
  for (const Cone& c : cones)
    if (!toricob::is_smooth(c)) return false;
  return true;
}

bool Fan::is_simplicial() const {
  for (const Cone& c : cones)
    if (!toricob::is_simplicial(c)) return false;
  return true;
}

ValidityReport fan_validity(std::size_t rank, const std::vector<Cone>& cones) {
  if (cones.empty()) return {false, "fan has no cones"};
  std::set<std::string> keys;
  for (const Cone& c : cones) {
    if (c.rank != rank) return {false, "cone rank mismatch: " + c.key()};
    if (!c.is_strictly_convex())
      return {false, "cone not strictly convex: " + c.key()};
    keys.insert(c.key());
  }
  for (const Cone& c : cones)
    for (const Cone& f : faces_of(c))
      if (!keys.count(f.key()))
        return {false, "missing face " + f.key() + " of " + c.key()};
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (cones[i] == cones[j]) continue;
      Cone meet = intersect_cones(cones[i], cones[j]);
      if (!is_face_of(meet, cones[i]) || !is_face_of(meet, cones[j]))
        return {false,
                "incompatible cones " + cones[i].key() + " and " + cones[j].key()};
    }
  return {true, ""};
}

Fan star_subdivision(const Fan& f, const Vec& rho_in) {
  if (is_zero(rho_in)) throw ToricError("star_subdivision: zero ray");
  Vec rho = primitive(rho_in);
  bool inside = false;
  for (const Cone& c : f.cones)
    if (c.contains(rho)) {
      inside = true;
      break;
    }
  if (!inside) throw ToricError("star_subdivision: ray outside support");
  if (f.has_cone(Cone::from_generators(f.rank, {rho}))) return f;  // existing ray

  std::vector<Cone> newmax;
  for (const Cone& sigma : f.maximal()) {
    if (!sigma.contains(rho)) {
      newmax.push_back(sigma);
      continue;
    }
    for (const Cone& tau : faces_of(sigma)) {
      if (tau.contains(rho)) continue;
      std::vector<Vec> gens = tau.rays;
      gens.push_back(rho);
      newmax.push_back(Cone::from_generators(f.rank, gens));
    }
  }
  return Fan::from_cones(f.rank, newmax);
}

Fan barycentric_subdivision(const Fan& f) {
  if (!f.is_simplicial())
    throw ToricError("barycentric_subdivision: fan not simplicial");
  std::vector<Cone> originals = f.cones;
  std::sort(originals.begin(), originals.end(), [](const Cone& a, const Cone& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return cone_less(a, b);
  });
  Fan cur = f;
  for (const Cone& c : originals) {
    if (c.dim < 2) continue;
    cur = star_subdivision(cur, c.relint_point());
  }
  return cur;
}

std::vector<Vec> parallelepiped_lattice_points(const Cone& c) {
  if (!is_simplicial(c)) throw ToricError("parallelepiped_points: not simplicial");
  if (c.rays.empty()) return {};
  const std::size_t d = c.dim;
  std::vector<Vec> basis = lattice_saturation(c.rays, c.rank);
  Mat bt = transpose(Mat::from_rows(basis, c.rank));
  std::vector<Vec> coord_rows;
  for (const Vec& r : c.rays) {
    std::optional<Vec> y = solve(bt, r);
    if (!y) throw ToricError("parallelepiped_points: coordinate solve failed");
    coord_rows.push_back(*y);
  }
  Mat ct = transpose(Mat::from_rows(coord_rows, d));
  Snf s = smith_normal_form(ct);
  Int mult = 1;
  for (std::size_t i = 0; i < d; ++i) mult *= s.d.at(i, i);
  if (mult > 1000000) throw ToricError("parallelepiped_points: multiplicity too large");
  // integer inverse of the unimodular u
  Mat uinv(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec e(d);
    e[j] = 1;
    std::optional<Vec> col = solve(s.u, e);
    if (!col) throw ToricError("parallelepiped_points: u not unimodular");
    for (std::size_t i = 0; i < d; ++i) uinv.at(i, j) = (*col)[i];
  }
  std::set<Vec> out;
  Vec t(d);
  while (true) {
    // residue representative y = uinv * t, normalized into the half-open box
    Vec y = mat_vec(uinv, t);
    std::optional<QVec> lam = solve_rational(ct, y);
    if (!lam) throw ToricError("parallelepiped_points: lambda solve failed");
    Vec fl(d);
    for (std::size_t i = 0; i < d; ++i) fl[i] = rat_floor((*lam)[i]);
    Vec ynorm = sub(y, mat_vec(ct, fl));
    Vec x = mat_vec(bt, ynorm);
    if (!is_zero(x)) out.insert(x);
    // increment mixed-radix counter over the elementary divisors
    std::size_t k = 0;
    while (k < d) {
      t[k] += 1;
      if (t[k] < s.d.at(k, k)) break;
      t[k] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return std::vector<Vec>(out.begin(), out.end());
}

std::vector<Vec> parallelepiped_points(const Cone& c) {
  std::set<Vec> out;
  for (const Vec& x : parallelepiped_lattice_points(c)) out.insert(primitive(x));
  return std::vector<Vec>(out.begin(), out.end());
}

Desingularization desingularize(const Fan& f) {
  Desingularization out;
  Fan cur = f;
  while (true) {
    // phase 1: non-simplicial cones, minimal dimension first (cones are sorted)
    const Cone* pick = nullptr;
    for (const Cone& c : cur.cones)
      if (!is_simplicial(c)) {
        pick = &c;
        break;
      }
    if (pick) {
      Vec center = primitive(pick->relint_point());
      out.centers.push_back(center);
      cur = star_subdivision(cur, center);
      continue;
    }
    // phase 2: simplicial but singular cones
    Int max_mult = 1;
    for (const Cone& c : cur.cones) {
      Int m = multiplicity(c);
      if (m > max_mult) max_mult = m;
    }
    if (max_mult == 1) break;
    std::optional<Vec> best;
    for (const Cone& c : cur.cones) {
      if (multiplicity(c) != max_mult) continue;
      for (const Vec& p : parallelepiped_points(c))
        if (!best || vec_less(p, *best)) best = p;
    }
    if (!best) throw ToricError("desingularize: no candidate center");
    out.centers.push_back(*best);
    cur = star_subdivision(cur, *best);
  }
  out.sub.fine = cur;
  out.sub.coarse = f;
  for (const Cone& c : cur.cones) {
    std::optional<Cone> w = f.smallest_containing(c.relint_point());
    if (!w || !w->contains_cone(c))
      throw ToricError("desingularize: witness failure");
    out.sub.witness[c.key()] = *w;
  }
  return out;
}

bool fans_equal(const Fan& a, const Fan& b) {
  return a.rank == b.rank && a.cones == b.cones;
}

std::variant<Subdivision, Cone> is_refinement(const Fan& fine, const Fan& coarse) {
  if (fine.rank != coarse.rank) throw ToricError("is_refinement: rank mismatch");
  Subdivision s;
  s.fine = fine;
  s.coarse = coarse;
  for (const Cone& c : fine.cones) {
    std::optional<Cone> w = coarse.smallest_containing(c.relint_point());
    if (!w || !w->contains_cone(c)) return c;
    s.witness[c.key()] = *w;
  }
  for (const Cone& m : coarse.maximal()) {
    Rat vol = section_volume(m, m);
    Rat sum = 0;
    for (const Cone& c : fine.cones) {
      if (c.dim != m.dim || !m.contains_cone(c)) continue;
      sum += section_volume(c, m);
    }
    if (sum != vol) return m;
  }
  return s;
}

Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.rank != b.rank) throw ToricError("common_refinement: rank mismatch");
  std::vector<Cone> cells;
  for (const Cone& x : a.maximal())
    for (const Cone& y : b.maximal()) cells.push_back(intersect_cones(x, y));
  return Fan::from_cones(a.rank, cells);
}

}  // namespace toricob
