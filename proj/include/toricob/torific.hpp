#pragma once

#include "toricob/cobordism.hpp"

namespace toricob {

// Splitting certificate for a chart tau and one of its rays: an m in M with
// <m, ray> = 1, <m, w> = 0 on every other generator of tau, and <m, a> = 0.
// Such an m makes z^m invariant and tau-regular, so the chart factors as
// <ray> x (complement containing a); nullopt when the integer system has no
// solution.
std::optional<Vec> toroidal_certificate(const Cone& tau, const Vec& ray, const Vec& a);

struct ToroidalWitness {
  Cone tau;             // a maximal chart of the torified fan
  Vec ray;              // a removed ray of that chart
  std::optional<Vec> m; // witness functional, nullopt = obstruction
};

// One torified chart: the action characters, their character ideals, the
// product ideal, its Newton subdivision, the rays whose strict-transform
// divisors leave the toroidal structure, and the splitting certificates.
struct TorificRun {
  Cone sigma;
  Vec a;
  bool balanced = false;
  std::vector<Int> characters;             // sorted, distinct
  std::vector<MonomialIdeal> char_ideals;  // aligned with characters
  MonomialIdeal product;
  Subdivision subdivision;                 // fine = the torified fan on sigma
  std::vector<Vec> removed_rays;           // sorted
  std::vector<ToroidalWitness> certificates;

  bool all_certified() const;
};

// Torify a smooth chart for the action a (a outside +-sigma): characters are
// the tangent characters <v_i*, a> of the rays, plus the extras, plus the
// single balancing character -sum when `balanced` is set and the sum is
// nonzero. A ray v_i is removed exactly when its character ideal I_{c_i} is
// not principal; certificates are computed per maximal chart of the
// subdivision and per removed ray of that chart.
TorificRun torify_chart(const Cone& sigma, const Vec& a,
                        const std::vector<Int>& extra_characters, bool balanced);

// Blow up I_alpha * I_{-alpha} on the smooth chart sigma (alpha nonzero and
// divisible by every nonzero tangent character) and compare the two quotient
// boundary fans of the subdivision: true when they are equal as fans.
bool tor_isom_check(const Cone& sigma, const Vec& a, const Int& alpha);

// Blowup-blowdown presentation of the elementary map between the quotient
// boundary fans of a single simplicial cone: rays r-+ in the boundary
// supports with star(pi(lower), pi(r-)) == star(pi(upper), pi(r+)) == common.
// A nullopt ray means that side needs no subdivision at all (the two quotient
// boundaries already agree). The outer nullopt reports search failure.
struct ElementaryFactor {
  std::optional<Vec> r_minus, r_plus;
  Fan common;
};
std::optional<ElementaryFactor> elementary_factor(const Cone& sigma, const Vec& a);

}  // namespace toricob
