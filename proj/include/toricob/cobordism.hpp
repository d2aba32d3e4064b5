#pragma once

#include <optional>
#include <utility>

#include "toricob/monomial.hpp"

namespace toricob {

// A fan with a one-parameter subgroup action: the combinatorial model of a
// birational cobordism. The action vector a is primitive and neither a nor -a
// lies in the support.
struct CobordismFan {
  Fan fan;
  Vec a;

  static CobordismFan make(Fan fan, Vec a);
};

// Lower/upper boundary subfans and their images in N/Za.
// A cone is in the lower boundary when a generic point of it leaves the
// support under a small push along +a: no cone gamma containing it satisfies
// a in gamma + span(tau). Upper boundary: same with -a.
struct BoundaryPair {
  Fan lower, upper;      // subfans of the input, in N
  QuotientMap pi;        // N -> N/Za
  Fan lower_q, upper_q;  // projected fans in N/Za
};

BoundaryPair boundary_fans(const Fan& f, const Vec& a);

// a lies in the linear span of c.
bool is_dependent(const Cone& c, const Vec& a);
inline bool is_free(const Cone& c, const Vec& a) { return !is_dependent(c, a); }

// All cones of f with a in their span, sorted.
std::vector<Cone> dependent_cones(const Fan& f, const Vec& a);

// Limit cone of gamma as t->0 (to_zero) or t->infinity: the unique cone delta
// containing gamma whose image in N/span(gamma) has the image of +-a in its
// relative interior; nullopt when the limit leaves the fan. A dependent gamma
// is fixed and is its own limit.
std::optional<Cone> limit_cone(const Fan& f, const Cone& gamma, const Vec& a,
                               bool to_zero);

// The order on dependent cones: sigma1 < sigma2 when some free cone has t->0
// limit cone sigma1 and t->infinity limit cone sigma2; returned transitively
// closed, sorted by (key1, key2).
std::vector<std::pair<Cone, Cone>> order_relation(const Fan& f, const Vec& a);

struct CycleError {
  std::vector<Cone> cycle;  // c0 < c1 < ... < ck = c0
};

// Topological sorter behind chi, usable on an arbitrary digraph of cones:
// labels 0..k-1 assigned by (longest-path level, canonical cone key), or a
// cycle certificate. Edge endpoints must be listed in nodes.
std::variant<std::map<std::string, int>, CycleError> topological_labels(
    const std::vector<Cone>& nodes, const std::vector<std::pair<Cone, Cone>>& edges);

// Strictly increasing integer labels on the dependent cones (distinct,
// deterministic: sorted by level then canonical key), or the offending cycle
// when the relation is not acyclic.
std::variant<std::map<std::string, int>, CycleError> chi(const Fan& f, const Vec& a);

// Labels constant on containment-connected groups of dependent cones (the
// fan shadow of the connected fixed components: any cone containing a
// dependent cone is dependent, so containment chains connect them), strictly
// increasing along the order between groups. This is the labeling the piece
// decomposition needs: a group-splitting labeling drops a face of a kept cone.
// The returned cycle may close through a containment step (a comparable pair
// inside one group) rather than a literal order edge.
std::variant<std::map<std::string, int>, CycleError> component_labels(const Fan& f,
                                                                      const Vec& a);

// The quasi-elementary pieces of the cobordism in increasing label order:
// for each label value v keep the cones whose t->infinity limit has label
// >= v and whose t->0 limit has label <= v.
std::vector<Fan> quasi_elementary_pieces(const Fan& f, const Vec& a,
                                         const std::map<std::string, int>& labels);

// Fan of the normalized blowup of a smooth fan along a compatible family of
// chart ideals (one per maximal cone): glued Newton subdivisions.
Fan blowup_fan(const Fan& delta2, const std::vector<MonomialIdeal>& ideals);

// The explicit cobordism between delta2 and its blowup along the ideal family:
// product with the projective line, blowup of (lifted J) + (z_{n+1}) on the
// upper charts, desingularization, and removal of every cone containing
// +-e_{n+1}. Action vector e_{n+1}; the quotient boundary fans are the blowup
// fan (lower) and delta2 (upper).
CobordismFan build_cobordism(const Fan& delta2, const std::vector<MonomialIdeal>& ideals);

// The ideal (z_i : i in S) on a smooth chart, for a star subdivision center
// rho = sum over S of the chart's rays.
MonomialIdeal star_center_ideal(const Cone& sigma, const Vec& rho);

// Independent limit oracle: for each chart delta containing gamma run the
// dual-side sign test on generators of delta-dual intersect gamma-perp; the
// limit exists in the chart when all signs are nonnegative, and its orbit cone
// is cut out by the character-zero generators. All charts must agree.
std::optional<Cone> orbit_limit_oracle(const Fan& f, const Cone& gamma,
                                       const Vec& a, bool to_zero);

}  // namespace toricob
