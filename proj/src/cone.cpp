#include "toricob/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toricob {

namespace {

struct Constraint {
  Vec h;
  bool eq;
};

std::size_t rank_of_rows(const std::vector<Vec>& rows, std::size_t n) {
  if (rows.empty()) return 0;
  return rank_of(Mat::from_rows(rows, n));
}

Vec content_reduced(Vec v) {
  if (is_zero(v)) return v;
  return primitive(v);
}

// Double description state: cone(L-lines + R-rays) == {x : all processed constraints}.
struct DD {
  std::size_t n;
  std::vector<Vec> L;  // independent line generators (exact lineality space)
  std::vector<Vec> R;  // candidate extreme rays, primitive
  std::vector<Vec> processed;  // constraint normals seen so far (eq counted once)

  explicit DD(std::size_t rank) : n(rank) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      L.push_back(e);
    }
  }

  bool in_span_L(const Vec& r) const {
    std::vector<Vec> rows = L;
    rows.push_back(r);
    return rank_of_rows(rows, n) == L.size();
  }

  void prune() {
    // dedupe
    std::set<Vec> seen;
    std::vector<Vec> uniq;
    for (const Vec& r : R) {
      if (is_zero(r) || in_span_L(r)) continue;
      if (seen.insert(r).second) uniq.push_back(r);
    }
    // exact extremality: the active constraints of an extreme ray cut its span
    // together with the\ lineality down to dim(L) + 1
    std::vector<Vec> keep;
    for (const Vec& r : uniq) {
      std::vector<Vec> zero_set;
      for (const Vec& p : processed)
        if (dot(p, r) == 0) zero_set.push_back(p);
      if (rank_of_rows(zero_set, n) == n - L.size() - 1) keep.push_back(r);
    }
    R = keep;
  }

  bool maybe_adjacent(const Vec& p, const Vec& q) const {
    std::vector<Vec> common;
    for (const Vec& c : processed)
      if (dot(c, p) == 0 && dot(c, q) == 0) common.push_back(c);
    return rank_of_rows(common, n) + 2 >= n - L.size();
  }

  void cut(const Constraint& c) {
    if (is_zero(c.h)) return;
    // a line with nonzero pairing absorbs the constraint
    std::size_t pivot = L.size();
    for (std::size_t i = 0; i < L.size(); ++i)
      if (dot(c.h, L[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot != L.size()) {
      Vec l0 = L[pivot];
      if (dot(c.h, l0) < 0) l0 = neg(l0);
      Int c0 = dot(c.h, l0);
      std::vector<Vec> newL;
      for (std::size_t i = 0; i < L.size(); ++i) {
        if (i == pivot) continue;
        Vec adj = sub(scale(c0, L[i]), scale(dot(c.h, L[i]), l0));
        if (!is_zero(adj)) newL.push_back(content_reduced(adj));
      }
      std::vector<Vec> newR;
      for (const Vec& r : R) {
        Vec adj = sub(scale(c0, r), scale(dot(c.h, r), l0));
        if (!is_zero(adj)) newR.push_back(content_reduced(adj));
      }
      if (!c.eq) newR.push_back(content_reduced(l0));
      L = newL;
      R = newR;
    } else {
      std::vector<Vec> pos, zer, neg_;
      for (const Vec& r : R) {
        Int s = dot(c.h, r);
        if (s > 0)
          pos.push_back(r);
        else if (s == 0)
          zer.push_back(r);
        else
          neg_.push_back(r);
      }
      std::vector<Vec> newR = zer;
      if (!c.eq)
        for (const Vec& r : pos) newR.push_back(r);
      for (const Vec& p : pos)
        for (const Vec& q : neg_) {
          if (!maybe_adjacent(p, q)) continue;
          Vec w = sub(scale(dot(c.h, p), q), scale(dot(c.h, q), p));
          if (!is_zero(w)) newR.push_back(content_reduced(w));
        }
      R = newR;
    }
    processed.push_back(c.h);
    prune();
  }
};

}  // namespace

GenSys dual_of(const GenSys& g, std::size_t rank) {
  DD dd(rank);
  for (const Vec& r : g.rays) dd.cut({r, false});
  for (const Vec& l : g.lines) dd.cut({l, true});
  GenSys out;
  out.rays = dd.R;
  std::sort(out.rays.begin(), out.rays.end(), vec_less);
  out.lines = lattice_saturation(dd.L, rank);
  return out;
}

Cone Cone::from_gensys(std::size_t rank, const GenSys& g) {
  for (const Vec& v : g.rays)
    if (v.size() != rank) throw ToricError("cone: generator rank mismatch");
  for (const Vec& v : g.lines)
    if (v.size() != rank) throw ToricError("cone: generator rank mismatch");
  GenSys polar = dual_of(g, rank);
  GenSys canon = dual_of(polar, rank);
  Cone c;
  c.rank = rank;
  c.rays = canon.rays;
  c.lines = canon.lines;
  c.dual_rays = polar.rays;
  c.dual_lines = polar.lines;
  c.dim = rank - polar.lines.size();
  return c;
}

Cone Cone::from_generators(std::size_t rank, const std::vector<Vec>& gens) {
  return from_gensys(rank, GenSys{gens, {}});
}

Cone Cone::from_inequalities(std::size_t rank, const std::vector<Vec>& halfspaces,
                             const std::vector<Vec>& equalities) {
  GenSys gens = dual_of(GenSys{halfspaces, equalities}, rank);
  return from_gensys(rank, gens);
}

Cone Cone::zero(std::size_t rank) { return from_generators(rank, {}); }

bool Cone::contains(const Vec& v) const {
  for (const Vec& l : dual_lines)
    if (dot(l, v) != 0) return false;
  for (const Vec& d : dual_rays)
    if (dot(d, v) < 0) return false;
  return true;
}

bool Cone::contains_q(const QVec& v) const {
  for (const Vec& l : dual_lines)
    if (dot_q(l, v) != 0) return false;
  for (const Vec& d : dual_rays)
    if (dot_q(d, v) < 0) return false;
  return true;
}

bool Cone::relint_contains(const Vec& v) const {
  for (const Vec& l : dual_lines)
    if (dot(l, v) != 0) return false;
  for (const Vec& d : dual_rays)
    if (dot(d, v) <= 0) return false;
  return true;
}

bool Cone::relint_contains_q(const QVec& v) const {
  for (const Vec& l : dual_lines)
    if (dot_q(l, v) != 0) return false;
  for (const Vec& d : dual_rays)
    if (dot_q(d, v) <= 0) return false;
  return true;
}

bool Cone::contains_cone(const Cone& other) const {
  for (const Vec& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

std::vector<Vec> Cone::generators() const {
  std::vector<Vec> g = rays;
  for (const Vec& l : lines) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  return g;
}

Vec Cone::relint_point() const {
  Vec p(rank);
  for (const Vec& r : rays) p = add(p, r);
  return p;
}

std::string Cone::key() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? " " : "") << show(rays[i]);
  if (!lines.empty()) {
    os << " |";
    for (const Vec& l : lines) os << " " << show(l);
  }
  os << "]";
  return os.str();
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.rays != b.rays)
    return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(),
                                        b.rays.end(), vec_less);
  return std::lexicographical_compare(a.lines.begin(), a.lines.end(), b.lines.begin(),
                                      b.lines.end(), vec_less);
}

Cone dual_cone(const Cone& c) {
  Cone d;
  d.rank = c.rank;
  d.rays = c.dual_rays;
  d.lines = c.dual_lines;
  d.dual_rays = c.rays;
  d.dual_lines = c.lines;
  d.dim = c.rank - c.lines.size();
  return d;
}

Cone intersect_cones(const Cone& a, const Cone& b) {
  if (a.rank != b.rank) throw ToricError("intersect_cones: rank mismatch");
  std::vector<Vec> half = a.dual_rays;
  half.insert(half.end(), b.dual_rays.begin(), b.dual_rays.end());
  std::vector<Vec> eqs = a.dual_lines;
  eqs.insert(eqs.end(), b.dual_lines.begin(), b.dual_lines.end());
  return Cone::from_inequalities(a.rank, half, eqs);
}

bool is_simplicial(const Cone& c) {
  return c.lines.empty() && c.rays.size() == c.dim;
}

bool is_smooth(const Cone& c) {
  std::vector<Vec> gens = c.rays;
  gens.insert(gens.end(), c.lines.begin(), c.lines.end());
  if (gens.size() != c.dim) return false;
  if (gens.empty()) return true;
  return saturation_index(gens, c.rank) == 1;
}

Int multiplicity(const Cone& c) {
  if (!is_simplicial(c)) throw ToricError("multiplicity: cone not simplicial");
  if (c.rays.empty()) return 1;
  return saturation_index(c.rays, c.rank);
}

std::vector<Cone> faces_of(const Cone& c) {
  const std::size_t k = c.dual_rays.size();
  if (k > 20) throw ToricError("faces_of: too many facets");
  std::set<std::vector<std::size_t>> seen;
  std::vector<Cone> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::vector<std::size_t> ray_idx;
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
      bool on = true;
      for (std::size_t j = 0; j < k && on; ++j)
        if (mask & (std::size_t(1) << j))
          if (dot(c.dual_rays[j], c.rays[i]) != 0) on = false;
      if (on) ray_idx.push_back(i);
    }
    if (!seen.insert(ray_idx).second) continue;
    std::vector<Vec> gens;
    for (std::size_t i : ray_idx) gens.push_back(c.rays[i]);
    for (const Vec& l : c.lines) {
      gens.push_back(l);
      gens.push_back(neg(l));
    }
    out.push_back(Cone::from_generators(c.rank, gens));
  }
  std::sort(out.begin(), out.end(), cone_less);
  return out;
}

bool is_face_of(const Cone& tau, const Cone& sigma) {
  if (tau.rank != sigma.rank) return false;
  if (tau.lines != sigma.lines) return false;
  for (const Vec& r : tau.rays)
    if (!sigma.contains(r)) return false;
  Vec b = tau.relint_point();
  std::vector<Vec> face_rays;
  for (const Vec& r : sigma.rays) {
    bool on = true;
    for (const Vec& d : sigma.dual_rays)
      if (dot(d, b) == 0 && dot(d, r) != 0) {
        on = false;
        break;
      }
    if (on) face_rays.push_back(r);
  }
  std::sort(face_rays.begin(), face_rays.end(), vec_less);
  return face_rays == tau.rays;
}

namespace {

void pulling_triangulate(const Cone& c, std::vector<std::vector<Vec>>& out) {
  // Recursive pulling construction: cone over triangulations of the facets
  // not containing the pulled (last) ray.
  if (!c.lines.empty()) throw ToricError("triangulate: cone has lineality");
  if (c.rays.size() == c.dim) {
    if (!c.rays.empty()) out.push_back(c.rays);
    return;
  }
  const Vec v = c.rays.back();
  for (const Vec& d : c.dual_rays) {
    if (dot(d, v) <= 0) continue;  // facet contains v (or d is not active on it)
    std::vector<Vec> fgens;
    for (const Vec& r : c.rays)
      if (dot(d, r) == 0) fgens.push_back(r);
    Cone f = Cone::from_generators(c.rank, fgens);
    if (f.dim + 1 != c.dim) continue;  // not a facet
    std::vector<std::vector<Vec>> sub;
    pulling_triangulate(f, sub);
    for (std::vector<Vec>& s : sub) {
      s.push_back(v);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<std::vector<Vec>> triangulate_cone(const Cone& c) {
  std::vector<std::vector<Vec>> out;
  pulling_triangulate(c, out);
  return out;
}

Rat section_volume(const Cone& c, const Cone& ref) {
  if (c.dim != ref.dim) throw ToricError("section_volume: dimension mismatch");
  if (c.dim == 0) return Rat(0);
  Vec u(ref.rank);
  for (const Vec& d : ref.dual_rays) u = add(u, d);
  std::vector<Vec> span_gens = ref.rays;
  span_gens.insert(span_gens.end(), ref.lines.begin(), ref.lines.end());
  std::vector<Vec> basis = lattice_saturation(span_gens, ref.rank);
  if (basis.size() != ref.dim) throw ToricError("section_volume: span basis");
  Mat bt = transpose(Mat::from_rows(basis, ref.rank));
  auto coords = [&](const Vec& x) {
    std::optional<Vec> y = solve(bt, x);
    if (!y) throw ToricError("section_volume: point outside reference span");
    return *y;
  };
  std::vector<std::vector<Vec>> tris = triangulate_cone(c);
  Rat vol = 0;
  for (const std::vector<Vec>& t : tris) {
    std::vector<Vec> rows;
    Int denom = 1;
    for (const Vec& r : t) {
      Int h = dot(u, r);
      if (h <= 0) throw ToricError("section_volume: cone not inside reference");
      denom *= h;
      rows.push_back(coords(r));
    }
    vol += Rat(saturation_index(rows, ref.dim)) / Rat(denom);
  }
  return vol;
}

Cone image_cone(const Mat& m, const Cone& c) {
  std::vector<Vec> gens;
  for (const Vec& g : c.generators()) gens.push_back(mat_vec(m, g));
  return Cone::from_generators(m.rows, gens);
}

}  // namespace toricob
