#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact integer linear algebra over Z: vectors, matrices, Hermite and Smith
// normal forms, kernels, integer solving, and quotient lattices N -> N/Za.
// Everything is deterministic; normal forms use fixed pivot rules so that
// downstream canonical forms (cone keys, witnesses) are reproducible.

namespace toricob {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Vec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Precondition violations and internal invariant failures.
struct ToricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  std::vector<Vec> to_rows() const;
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
Vec mat_vec(const Mat& m, const Vec& v);
QVec mat_qvec(const Mat& m, const QVec& v);
Mat transpose(const Mat& m);

// Elementary vector operations.
Int dot(const Vec& x, const Vec& y);
Rat dot_q(const Vec& x, const QVec& y);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec neg(const Vec& x);
Vec scale(const Int& c, const Vec& x);
bool is_zero(const Vec& x);
std::string show(const Vec& x);

// gcd of the entries, >= 0; zero vector has content 0.
Int content(const Vec& x);
// content == 1; throws on the zero vector.
bool is_primitive(const Vec& v);
// v / content(v); throws on the zero vector.
Vec primitive(const Vec& v);

// Lexicographic order on entries; total order used for all canonical sorts.
bool vec_less(const Vec& x, const Vec& y);

// Row-style Hermite normal form: echelon, positive pivots, entries above a
// pivot reduced into [0, pivot). Zero rows dropped. Canonical for the row lattice.
Mat hermite_normal_form(const Mat& m);

// u * m * v = d diagonal with d11 | d22 | ...; u, v unimodular.
// Pivot rule: among nonzero entries of the working submatrix take the one with
// the smallest absolute value, ties broken by smallest (row, col) index.
struct Snf {
  Mat u, d, v;
  std::size_t rank = 0;
};
Snf smith_normal_form(const Mat& m);

std::size_t rank_of(const Mat& m);

// Basis of {x : m x = 0} over Z (a saturated lattice), rows in HNF.
std::vector<Vec> kernel_basis(const Mat& m);

// One integer solution of m x = b, if any.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// One rational solution of m x = b, if any.
std::optional<QVec> solve_rational(const Mat& m, const Vec& b);

Int rat_floor(const Rat& r);

// Basis (HNF rows) of the saturation QSpan(rows) ∩ Z^n.
std::vector<Vec> lattice_saturation(const std::vector<Vec>& rows, std::size_t n);

// Reduce v modulo the row lattice of an HNF basis; canonical coset representative.
Vec reduce_mod_lattice(Vec v, const std::vector<Vec>& hnf_rows);

// Index of the lattice generated by `rows` inside its saturation
// (product of elementary divisors); 0 if rows are linearly dependent...
// callers pass independent rows. A simplicial cone is smooth iff this is 1.
Int saturation_index(const std::vector<Vec>& rows, std::size_t n);

// Surjection Z^n -> Z^(n-k) with kernel the saturated span of the given
// vectors (k = rank of their span).
Mat span_quotient(const std::vector<Vec>& gens, std::size_t n);

// N -> N/Za for primitive a: proj is (n-1) x n with proj * a = 0, and
// section is n x (n-1) with proj * section = id.
struct QuotientMap {
  std::size_t n = 0;
  Vec a;
  Mat proj;
  Mat section;
  Vec apply(const Vec& v) const { return mat_vec(proj, v); }
};
QuotientMap quotient_by(const Vec& a);

}  // namespace toricob
