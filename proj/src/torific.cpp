#include "toricob/torific.hpp"

#include <algorithm>
#include <set>

namespace toricob {

namespace {

void require_outside(const Cone& sigma, const Vec& a, const char* who) {
  if (a.size() != sigma.rank) throw ToricError(std::string(who) + ": rank mismatch");
  if (is_zero(a)) throw ToricError(std::string(who) + ": zero direction");
  if (sigma.contains(a) || sigma.contains(neg(a)))
    throw ToricError(std::string(who) + ": direction lies in +-sigma");
}

// Dual-basis functional of ray i on a smooth chart. Underdetermined on
// non-full-dimensional charts; the integer solver's normal form fixes the
// choice, and every downstream use is insensitive to it modulo sigma-perp.
Vec dual_functional(const Cone& sigma, std::size_t i) {
  Vec e(sigma.rays.size());
  e[i] = 1;
  std::optional<Vec> m = solve(Mat::from_rows(sigma.rays, sigma.rank), e);
  if (!m) throw ToricError("torific: chart has no dual basis");
  return *m;
}

std::vector<Int> tangent_characters(const Cone& sigma, const Vec& a) {
  std::vector<Int> cs;
  for (std::size_t i = 0; i < sigma.rays.size(); ++i)
    cs.push_back(dot(dual_functional(sigma, i), a));
  return cs;
}

}  // namespace

std::optional<Vec> toroidal_certificate(const Cone& tau, const Vec& ray, const Vec& a) {
  bool found = false;
  std::vector<Vec> rows;
  Vec rhs;
  for (const Vec& r : tau.rays) {
    rows.push_back(r);
    if (r == ray) {
      found = true;
      rhs.push_back(1);
    } else {
      rhs.push_back(0);
    }
  }
  if (!found) throw ToricError("toroidal_certificate: not a ray of the cone");
  for (const Vec& l : tau.lines) {
    rows.push_back(l);
    rhs.push_back(0);
  }
  rows.push_back(a);
  rhs.push_back(0);
  return solve(Mat::from_rows(rows, tau.rank), rhs);
}

bool TorificRun::all_certified() const {
  for (const ToroidalWitness& w : certificates)
    if (!w.m) return false;
  return true;
}

TorificRun torify_chart(const Cone& sigma, const Vec& a,
                        const std::vector<Int>& extra_characters, bool balanced) {
  if (!is_smooth(sigma)) throw ToricError("torify_chart: chart not smooth");
  require_outside(sigma, a, "torify_chart");

  std::vector<Int> tangent = tangent_characters(sigma, a);
  std::set<Int> charset(tangent.begin(), tangent.end());
  charset.insert(extra_characters.begin(), extra_characters.end());
  if (balanced) {
    Int sum = 0;
    for (const Int& c : charset) sum += c;
    if (sum != 0) {
      if (charset.count(-sum))
        throw ToricError("torify_chart: balancing character already present");
      charset.insert(-sum);
    }
  }

  TorificRun run;
  run.sigma = sigma;
  run.a = a;
  run.balanced = balanced;
  run.characters.assign(charset.begin(), charset.end());
  run.product = MonomialIdeal::make(sigma, {Vec(sigma.rank)});  // unit
  for (const Int& c : run.characters) {
    MonomialIdeal I = torific_generators(sigma, a, c);
    if (I.is_zero()) throw ToricError("torific: empty character ideal");
    run.product = ideal_product(run.product, I);
    run.char_ideals.push_back(std::move(I));
  }
  run.subdivision = newton_subdivision(sigma, run.product);

  for (std::size_t i = 0; i < sigma.rays.size(); ++i) {
    std::size_t at = std::lower_bound(run.characters.begin(), run.characters.end(),
                                      tangent[i]) -
                     run.characters.begin();
    if (!run.char_ideals[at].is_principal()) run.removed_rays.push_back(sigma.rays[i]);
  }
  std::sort(run.removed_rays.begin(), run.removed_rays.end(), vec_less);

  for (const Cone& tau : run.subdivision.fine.maximal())
    for (const Vec& r : run.removed_rays)
      if (std::find(tau.rays.begin(), tau.rays.end(), r) != tau.rays.end())
        run.certificates.push_back({tau, r, toroidal_certificate(tau, r, a)});
  return run;
}

bool tor_isom_check(const Cone& sigma, const Vec& a, const Int& alpha) {
  if (!is_smooth(sigma)) throw ToricError("tor_isom_check: chart not smooth");
  require_outside(sigma, a, "tor_isom_check");
  if (alpha == 0) throw ToricError("tor_isom_check: zero weight");
  for (const Int& c : tangent_characters(sigma, a))
    if (c != 0 && alpha % c != 0)
      throw ToricError("tor_isom_check: weight not divisible by a tangent character");
  MonomialIdeal I = ideal_product(torific_generators(sigma, a, alpha),
                                  torific_generators(sigma, a, -alpha));
  Fan fine = newton_subdivision(sigma, I).fine;
  BoundaryPair bp = boundary_fans(fine, a);
  return fans_equal(bp.lower_q, bp.upper_q);
}

namespace {

// Existing rays of the side fan first (canonical order), then primitive sums
// of its ray subsets, smallest subsets first; duplicates skipped.
std::vector<Vec> side_candidates(const Fan& side, std::size_t dim_bound) {
  std::vector<Vec> rays = side.ray_generators();
  std::vector<Vec> out = rays;
  std::vector<std::pair<int, unsigned>> masks;
  for (unsigned mask = 1; mask < (1u << rays.size()); ++mask) {
    int bits = __builtin_popcount(mask);
    if (bits >= 2 && bits <= int(dim_bound)) masks.push_back({bits, mask});
  }
  std::sort(masks.begin(), masks.end());
  for (auto [bits, mask] : masks) {
    Vec s(side.rank);
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (mask & (1u << i)) s = add(s, rays[i]);
    s = primitive(s);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace

std::optional<ElementaryFactor> elementary_factor(const Cone& sigma, const Vec& a) {
  require_outside(sigma, a, "elementary_factor");
  if (!is_simplicial(sigma)) throw ToricError("elementary_factor: cone not simplicial");
  Fan f = Fan::from_cones(sigma.rank, {sigma});
  BoundaryPair bp = boundary_fans(f, a);
  if (fans_equal(bp.lower_q, bp.upper_q))
    return ElementaryFactor{std::nullopt, std::nullopt, bp.lower_q};

  std::size_t d = sigma.rays.size() + sigma.lines.size();
  std::vector<Vec> lo = side_candidates(bp.lower, d);
  std::vector<Vec> hi = side_candidates(bp.upper, d);
  for (const Vec& rm : lo) {
    Vec pm = bp.pi.apply(rm);
    if (is_zero(pm)) continue;
    Fan starm = star_subdivision(bp.lower_q, primitive(pm));
    for (const Vec& rp : hi) {
      Vec pp = bp.pi.apply(rp);
      if (is_zero(pp)) continue;
      if (fans_equal(starm, star_subdivision(bp.upper_q, primitive(pp))))
        return ElementaryFactor{rm, rp, starm};
    }
  }
  return std::nullopt;
}

}  // namespace toricob
