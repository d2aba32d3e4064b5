#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toricob/cone.hpp"

// Fans: finite face-closed, pairwise-compatible collections of strictly convex
// cones, stored as the full sorted cone list. Subdivision operations (star,
// barycentric, desingularization, Newton-style refinements elsewhere) produce
// witness maps from fine cones to the coarse cones containing them.

namespace toricob {

struct Fan {
  std::size_t rank = 0;
  std::vector<Cone> cones;  // all cones incl. {0}, sorted by cone_less

  // Face-closes, dedupes, sorts; validates compatibility unless told not to.
  static Fan from_cones(std::size_t rank, const std::vector<Cone>& cones,
                        bool validate = true);

  std::vector<Cone> maximal() const;
  std::vector<Vec> ray_generators() const;  // sorted primitive generators of 1-cones
  bool has_cone(const Cone& c) const;
  // The unique cone whose relative interior contains v; nullopt if outside.
  std::optional<Cone> smallest_containing(const Vec& v) const;
  std::optional<Cone> smallest_containing_q(const QVec& v) const;
  bool is_smooth() const;
  bool is_simplicial() const;
};

struct ValidityReport {
  bool ok = true;
  std::string message;  // first failure found, empty when ok
};

// Checks an arbitrary cone list: equal rank, strict convexity, face closure,
// pairwise compatibility (intersection is a face of both).
ValidityReport fan_validity(std::size_t rank, const std::vector<Cone>& cones);

// A refinement: every fine cone is contained in its witness coarse cone and
// the supports agree.
struct Subdivision {
  Fan fine;
  Fan coarse;
  std::map<std::string, Cone> witness;  // fine cone key -> coarse cone
};

// Star subdivision at a primitive ray in the support. If rho already spans a
// ray of the fan the fan is returned unchanged.
Fan star_subdivision(const Fan& f, const Vec& rho);

// Iterated star subdivision at the barycenters (= sums of primitive ray
// generators) of the original cones, in decreasing dimension, canonical order
// within a dimension. Input must be simplicial.
Fan barycentric_subdivision(const Fan& f);

struct Desingularization {
  Subdivision sub;        // fine = smooth result, coarse = input
  std::vector<Vec> centers;  // star subdivision centers, in order
};

// Deterministic resolution: first eliminate non-simplicial cones by starring
// at barycenters of minimal-dimension offenders, then repeatedly star at the
// lexicographically smallest primitivized fundamental-parallelepiped point of
// the maximal-multiplicity cones.
Desingularization desingularize(const Fan& f);

bool fans_equal(const Fan& a, const Fan& b);

// If `fine` refines `coarse` (same support, every cone contained in a coarse
// cone) returns the witness subdivision, otherwise a certificate cone: either
// a fine cone not contained in any coarse cone, or a coarse maximal cone that
// is not exactly covered.
std::variant<Subdivision, Cone> is_refinement(const Fan& fine, const Fan& coarse);

// Fan of pairwise intersections; the exact common refinement when supports agree.
Fan common_refinement(const Fan& a, const Fan& b);

// All nonzero lattice points of the half-open fundamental parallelepiped
// { sum t_i r_i : 0 <= t_i < 1 } of a simplicial cone, sorted. There are
// multiplicity(c) - 1 of them.
std::vector<Vec> parallelepiped_lattice_points(const Cone& c);

// The same points primitivized and deduped, sorted. Empty iff the cone is smooth.
std::vector<Vec> parallelepiped_points(const Cone& c);

}  // namespace toricob
