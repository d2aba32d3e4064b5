#pragma once

#include "toricob/fan.hpp"

namespace toricob {

// The character of the monomial z^m under the one-parameter subgroup a.
inline Int character(const Vec& m, const Vec& a) { return dot(m, a); }

// A monomial ideal on the affine chart of a cone sigma: generators are
// exponent vectors in the dual monoid sigma-dual intersect M.  Stored
// generators are minimal (none divides another in the monoid) and reduced
// modulo the unit monomials (lattice sigma-perp intersect M), so equal ideals
// compare equal componentwise.  The zero ideal has no generators; the unit
// ideal has the single generator 0.
struct MonomialIdeal {
  Cone chart;
  std::vector<Vec> gens;

  static MonomialIdeal make(const Cone& chart, std::vector<Vec> gens);

  bool is_zero() const { return gens.empty(); }
  bool is_principal() const { return gens.size() == 1; }
  bool is_unit() const { return gens.size() == 1 && toricob::is_zero(gens[0]); }
  bool operator==(const MonomialIdeal& o) const {
    return chart == o.chart && gens == o.gens;
  }
};

// Test m in sigma-dual (all generators of sigma pair nonnegatively, lines
// pair to zero).
bool in_dual_monoid(const Cone& sigma, const Vec& m);

// The Hilbert basis of the monoid c intersect Z^n: the unique minimal
// generating set for pointed c; for a cone with lineality the result is
// +-(a lattice basis of the lineality) together with canonical lifts of the
// Hilbert basis of the pointed quotient.  Sorted.
std::vector<Vec> hilbert_basis(const Cone& c);

// Minimal monomial generators of the ideal I_alpha generated by all monomials
// of character alpha on the chart sigma (the torific ideal of the character).
// Requires a nonzero with neither a nor -a in sigma.
MonomialIdeal torific_generators(const Cone& sigma, const Vec& a, const Int& alpha);

// Product of two ideals on the same chart.
MonomialIdeal ideal_product(const MonomialIdeal& x, const MonomialIdeal& y);

// The same ideal on a face/subcone tau of the original chart (re-minimalized
// in the bigger dual monoid of tau).
MonomialIdeal pullback_to_chart(const MonomialIdeal& I, const Cone& tau);

// Subdivision of sigma into the maximal domains of linearity of
// v -> min over generators m of <m, v> (the normalized blowup of the ideal,
// for torus-invariant centers).  The zero ideal is rejected; the unit ideal
// gives the trivial subdivision.
Subdivision newton_subdivision(const Cone& sigma, const MonomialIdeal& I);

}  // namespace toricob
