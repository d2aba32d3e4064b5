#pragma once

#include <initializer_list>
#include <random>

#include "toricob/fan.hpp"

// Shared helpers for the test suites: terse constructors for vectors, cones
// and fans, plus a deterministic generator of random smooth fans with a
// one-parameter subgroup direction (the "suite" used by the property tests).

namespace th {

using toricob::Cone;
using toricob::Fan;
using toricob::Int;
using toricob::Mat;
using toricob::Vec;

inline Vec V(std::initializer_list<long long> xs) {
  Vec v;
  for (long long x : xs) v.push_back(Int(x));
  return v;
}

inline Cone C(std::size_t rank, std::initializer_list<std::initializer_list<long long>> gens) {
  std::vector<Vec> g;
  for (const auto& x : gens) g.push_back(V(x));
  return Cone::from_generators(rank, g);
}

inline Fan F(std::size_t rank, std::initializer_list<std::initializer_list<std::initializer_list<long long>>> max_cones) {
  std::vector<Cone> cones;
  for (const auto& c : max_cones) {
    std::vector<Vec> g;
    for (const auto& x : c) g.push_back(V(x));
    cones.push_back(Cone::from_generators(rank, g));
  }
  return Fan::from_cones(rank, cones);
}

inline Fan orthant_fan(std::size_t n) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = 1;
    gens.push_back(e);
  }
  return Fan::from_cones(n, {Cone::from_generators(n, gens)});
}

// Deterministic random smooth fans of rank <= 4 together with a primitive
// direction a outside +/- the support.
struct SuiteGen {
  std::mt19937_64 rng;

  explicit SuiteGen(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) {  // uniform in [0, n)
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  long long pick_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  }

  Mat rand_unimodular(std::size_t n) {
    Mat u = Mat::identity(n);
    const int ops = 4 + int(pick(4));
    for (int k = 0; k < ops; ++k) {
      std::size_t i = pick(n), j = pick(n);
      if (i == j) continue;
      Int c = pick(2) ? 1 : -1;
      for (std::size_t t = 0; t < n; ++t) u.at(i, t) += c * u.at(j, t);
    }
    return u;
  }

  Fan rand_smooth_fan(std::size_t rank) {
    Mat u = rand_unimodular(rank);
    std::vector<Vec> rays;
    for (std::size_t j = 0; j < rank; ++j) rays.push_back(u.col(j));
    Fan f = Fan::from_cones(rank, {Cone::from_generators(rank, rays)});
    const int subdivisions = int(pick(3));  // 0..2 smooth star subdivisions
    for (int s = 0; s < subdivisions; ++s) {
      std::vector<Cone> max = f.maximal();
      const Cone& sigma = max[pick(max.size())];
      if (sigma.rays.size() < 2) continue;
      // sum of a random subset of >= 2 rays keeps the fan smooth
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < sigma.rays.size(); ++i) idx.push_back(i);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::size_t take = 2 + pick(sigma.rays.size() - 1);
      if (take > sigma.rays.size()) take = sigma.rays.size();
      Vec rho(rank);
      for (std::size_t i = 0; i < take; ++i)
        rho = toricob::add(rho, sigma.rays[idx[i]]);
      f = star_subdivision(f, rho);
    }
    return f;
  }

  // primitive a with a not in the support and -a not in the support
  Vec rand_direction(const Fan& f) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Vec a(f.rank);
      for (std::size_t i = 0; i < f.rank; ++i) a[i] = Int(pick_int(-3, 3));
      if (toricob::is_zero(a)) continue;
      a = toricob::primitive(a);
      bool bad = false;
      for (const toricob::Cone& c : f.maximal())
        if (c.contains(a) || c.contains(toricob::neg(a))) {
          bad = true;
          break;
        }
      if (!bad) return a;
    }
    throw toricob::ToricError("rand_direction: no direction found");
  }
};

}  // namespace th
