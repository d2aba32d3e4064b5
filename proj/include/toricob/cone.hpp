#pragma once

#include <vector>

#include "toricob/lattice.hpp"

// Rational polyhedral cones with exact generator and facet descriptions.
// A cone is stored canonically: primitive sorted extreme rays, an HNF basis of
// the (saturated) lineality lattice, plus the same data for its polar dual.
// All membership, face, and intersection queries are exact.

namespace toricob {

// Generator system: rays plus lines (a line l stands for the pair ±l).
struct GenSys {
  std::vector<Vec> rays;
  std::vector<Vec> lines;
};

// Canonical generators of {x : <x,r> >= 0 for r in g.rays, <x,l> = 0 for l in
// g.lines}, i.e. the polar of the cone generated by g. Double description with
// exact rank-based extremality pruning; output rays are primitive and sorted,
// output lines are an HNF basis of the saturated lineality lattice.
GenSys dual_of(const GenSys& g, std::size_t rank);

struct Cone {
  std::size_t rank = 0;  // ambient lattice rank
  std::vector<Vec> rays;
  std::vector<Vec> lines;
  std::vector<Vec> dual_rays;   // facet data: x in cone iff <d,x> >= 0, <l,x> = 0
  std::vector<Vec> dual_lines;  // basis of span(cone)ized perp
  std::size_t dim = 0;

  static Cone from_generators(std::size_t rank, const std::vector<Vec>& gens);
  static Cone from_gensys(std::size_t rank, const GenSys& g);
  static Cone from_inequalities(std::size_t rank, const std::vector<Vec>& halfspaces,
                                const std::vector<Vec>& equalities = {});
  static Cone zero(std::size_t rank);

  bool contains(const Vec& v) const;
  bool contains_q(const QVec& v) const;
  bool relint_contains(const Vec& v) const;
  bool relint_contains_q(const QVec& v) const;
  bool is_strictly_convex() const { return lines.empty(); }
  bool contains_cone(const Cone& other) const;

  // rays followed by +/- pairs for each line; generates the cone
  std::vector<Vec> generators() const;
  // sum of the extreme rays; lies in the relative interior
  Vec relint_point() const;

  bool operator==(const Cone& o) const {
    return rank == o.rank && rays == o.rays && lines == o.lines;
  }
  std::string key() const;
};

// Total order on canonical cones: by dim, then rays, then lines.
bool cone_less(const Cone& a, const Cone& b);

Cone dual_cone(const Cone& c);
Cone intersect_cones(const Cone& a, const Cone& b);

bool is_simplicial(const Cone& c);
bool is_smooth(const Cone& c);
// Index of the sublattice spanned by the rays of a simplicial cone.
Int multiplicity(const Cone& c);

// All faces, including the cone itself and its minimal face.
std::vector<Cone> faces_of(const Cone& c);
bool is_face_of(const Cone& tau, const Cone& sigma);

// Pulling triangulation of a strictly convex cone into simplicial subcones
// spanned by subsets of its extreme rays (no new rays).
std::vector<std::vector<Vec>> triangulate_cone(const Cone& c);

// Exact cross-section volume of c relative to a reference cone ref with
// c ⊆ ref, dim c == dim ref: the volume of c ∩ {<u,x> = 1} where u is the sum
// of ref's facet normals (strictly positive on ref minus 0), measured in
// coordinates of ref's span lattice. Additive across subdivisions of ref, so
// a family of same-dimensional subcones covers ref exactly iff their section
// volumes sum to ref's own.
Rat section_volume(const Cone& c, const Cone& ref);

// Image cone under a linear map given by matrix rows (applied to generators).
Cone image_cone(const Mat& m, const Cone& c);

}  // namespace toricob
