#include "toricob/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace toricob {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ToricError("Mat::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Vec> Mat::to_rows() const {
  std::vector<Vec> out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = row(i);
  return out;
}

Vec Mat::row(std::size_t i) const {
  Vec r(cols);
  for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
  return r;
}

Vec Mat::col(std::size_t j) const {
  Vec c(rows);
  for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
  return c;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw ToricError("mat_mul: shape mismatch");
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  if (m.cols != v.size()) throw ToricError("mat_vec: shape mismatch");
  Vec out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

QVec mat_qvec(const Mat& m, const QVec& v) {
  if (m.cols != v.size()) throw ToricError("mat_qvec: shape mismatch");
  QVec out(m.rows, Rat(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += Rat(m.at(i, j)) * v[j];
  return out;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Int dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw ToricError("dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Rat dot_q(const Vec& x, const QVec& y) {
  if (x.size() != y.size()) throw ToricError("dot_q: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += Rat(x[i]) * y[i];
  return s;
}

Vec add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw ToricError("add: size mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

Vec sub(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw ToricError("sub: size mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

Vec neg(const Vec& x) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
  return z;
}

Vec scale(const Int& c, const Vec& x) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
  return z;
}

bool is_zero(const Vec& x) {
  for (const Int& e : x)
    if (e != 0) return false;
  return true;
}

std::string show(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ",";
    os << x[i];
  }
  os << ")";
  return os.str();
}

Int content(const Vec& x) {
  Int g = 0;
  for (const Int& e : x) g = boost::multiprecision::gcd(g, e);
  return g < 0 ? Int(-g) : g;
}

bool is_primitive(const Vec& v) {
  if (is_zero(v)) throw ToricError("is_primitive: zero vector");
  return content(v) == 1;
}

Vec primitive(const Vec& v) {
  if (is_zero(v)) throw ToricError("primitive: zero vector");
  Int g = content(v);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool vec_less(const Vec& x, const Vec& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Mat hermite_normal_form(const Mat& m) {
  std::vector<Vec> rows = m.to_rows();
  std::size_t top = 0;
  for (std::size_t col = 0; col < m.cols && top < rows.size(); ++col) {
    // repeatedly pick the entry of the smallest absolute value in this column
    // (at or below `top`) and reduce the others with it
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() ||
            abs(rows[i][col]) < abs(rows[best][col]))
          best = i;
      }
      if (best == rows.size()) break;  // column clear below top
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[top][col];
        rows[i] = sub(rows[i], scale(q, rows[top]));
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] != 0) {
      if (rows[top][col] < 0) rows[top] = neg(rows[top]);
      // reduce the entries above the pivot into [0, pivot)
      for (std::size_t i = 0; i < top; ++i) {
        Int q = rows[i][col] / rows[top][col];
        if (rows[i][col] - q * rows[top][col] < 0) q -= 1;
        rows[i] = sub(rows[i], scale(q, rows[top]));
      }
      ++top;
    }
  }
  rows.resize(top);
  return Mat::from_rows(rows, m.cols);
}

Snf smith_normal_form(const Mat& m) {
  Snf s;
  s.d = m;
  s.u = Mat::identity(m.rows);
  s.v = Mat::identity(m.cols);
  Mat& d = s.d;

  auto row_op = [&](std::size_t i, std::size_t k, const Int& q) {
    // row i -= q * row k, both in d and u
    for (std::size_t j = 0; j < d.cols; ++j) d.at(i, j) -= q * d.at(k, j);
    for (std::size_t j = 0; j < s.u.cols; ++j) s.u.at(i, j) -= q * s.u.at(k, j);
  };
  auto col_op = [&](std::size_t j, std::size_t k, const Int& q) {
    for (std::size_t i = 0; i < d.rows; ++i) d.at(i, j) -= q * d.at(i, k);
    for (std::size_t i = 0; i < s.v.rows; ++i) s.v.at(i, j) -= q * s.v.at(i, k);
  };
  auto row_swap = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(i, j), d.at(k, j));
    for (std::size_t j = 0; j < s.u.cols; ++j) std::swap(s.u.at(i, j), s.u.at(k, j));
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, j), d.at(i, k));
    for (std::size_t i = 0; i < s.v.rows; ++i) std::swap(s.v.at(i, j), s.v.at(i, k));
  };
  auto row_negate = [&](std::size_t i) {
    for (std::size_t j = 0; j < d.cols; ++j) d.at(i, j) = -d.at(i, j);
    for (std::size_t j = 0; j < s.u.cols; ++j) s.u.at(i, j) = -s.u.at(i, j);
  };

  std::size_t t = 0;
  const std::size_t steps = std::min(m.rows, m.cols);
  while (t < steps) {
    // pivot: smallest |value|, ties by (row, col)
    std::size_t pi = d.rows, pj = d.cols;
    for (std::size_t i = t; i < d.rows; ++i)
      for (std::size_t j = t; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi == d.rows || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi == d.rows) break;  // submatrix is zero
    row_swap(t, pi);
    col_swap(t, pj);

    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        row_op(i, t, q);
        if (d.at(i, t) != 0) {
          row_swap(t, i);  // remainder is smaller; keep reducing
          done = false;
        }
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        col_op(j, t, q);
        if (d.at(t, j) != 0) {
          col_swap(t, j);
          done = false;
        }
      }
    }
    if (d.at(t, t) < 0) row_negate(t);
    // enforce divisibility d[t][t] | d[i][j] for the rest
    bool redo = false;
    for (std::size_t i = t + 1; i < d.rows && !redo; ++i)
      for (std::size_t j = t + 1; j < d.cols && !redo; ++j)
        if (d.at(i, j) % d.at(t, t) != 0) {
          // fold row i into row t and restart this step
          Int minus_one = -1;
          row_op(t, i, minus_one);  // row t += row i
          redo = true;
        }
    if (!redo) ++t;
  }
  s.rank = 0;
  for (std::size_t i = 0; i < steps; ++i)
    if (s.d.at(i, i) != 0) ++s.rank;
  return s;
}

std::size_t rank_of(const Mat& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return hermite_normal_form(m).rows;
}

std::vector<Vec> kernel_basis(const Mat& m) {
  if (m.cols == 0) return {};
  if (m.rows == 0) return Mat::identity(m.cols).to_rows();
  Snf s = smith_normal_form(m);
  std::vector<Vec> cols;
  for (std::size_t j = s.rank; j < m.cols; ++j) cols.push_back(s.v.col(j));
  if (cols.empty()) return {};
  return hermite_normal_form(Mat::from_rows(cols, m.cols)).to_rows();
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (m.rows != b.size()) throw ToricError("solve: size mismatch");
  Snf s = smith_normal_form(m);
  Vec y = mat_vec(s.u, b);
  Vec x(m.cols);
  const std::size_t steps = std::min(m.rows, m.cols);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < steps && s.d.at(i, i) != 0) {
      if (y[i] % s.d.at(i, i) != 0) return std::nullopt;
      x[i] = y[i] / s.d.at(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.v, x);
}

std::optional<QVec> solve_rational(const Mat& m, const Vec& b) {
  if (m.rows != b.size()) throw ToricError("solve_rational: size mismatch");
  // plain rational Gaussian elimination on [m | b]
  std::vector<QVec> a(m.rows, QVec(m.cols + 1, Rat(0)));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = Rat(m.at(i, j));
    a[i][m.cols] = Rat(b[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t top = 0;
  for (std::size_t col = 0; col < m.cols && top < m.rows; ++col) {
    std::size_t p = top;
    while (p < m.rows && a[p][col] == 0) ++p;
    if (p == m.rows) continue;
    std::swap(a[top], a[p]);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == top || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[top][col];
      for (std::size_t j = col; j <= m.cols; ++j) a[i][j] -= f * a[top][j];
    }
    pivot_col.push_back(col);
    ++top;
  }
  for (std::size_t i = top; i < m.rows; ++i)
    if (a[i][m.cols] != 0) return std::nullopt;
  QVec x(m.cols, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = a[i][m.cols] / a[i][pivot_col[i]];
  return x;
}

Int rat_floor(const Rat& r) {
  Int n = numerator(r), d = denominator(r);  // d > 0 canonical
  Int q = n / d;
  if (n - q * d < 0) q -= 1;
  return q;
}

std::vector<Vec> lattice_saturation(const std::vector<Vec>& rows, std::size_t n) {
  if (rows.empty()) return {};
  std::vector<Vec> perp = kernel_basis(Mat::from_rows(rows, n));
  if (perp.empty()) return Mat::identity(n).to_rows();
  return kernel_basis(Mat::from_rows(perp, n));
}

Vec reduce_mod_lattice(Vec v, const std::vector<Vec>& hnf_rows) {
  for (const Vec& b : hnf_rows) {
    std::size_t p = 0;
    while (p < b.size() && b[p] == 0) ++p;
    if (p == b.size()) continue;
    Int q = v[p] / b[p];
    if (v[p] - q * b[p] < 0) q -= 1;
    if (q != 0) v = sub(v, scale(q, b));
  }
  return v;
}

Int saturation_index(const std::vector<Vec>& rows, std::size_t n) {
  if (rows.empty()) return 1;
  Snf s = smith_normal_form(Mat::from_rows(rows, n));
  if (s.rank != rows.size())
    throw ToricError("saturation_index: rows are linearly dependent");
  Int idx = 1;
  for (std::size_t i = 0; i < s.rank; ++i) idx *= s.d.at(i, i);
  return idx;
}

Mat span_quotient(const std::vector<Vec>& gens, std::size_t n) {
  std::vector<Vec> v = lattice_saturation(gens, n);
  if (v.empty()) return Mat::identity(n);
  if (v.size() == n) return Mat(0, n);
  // rows of the result are a basis of the perp of span(gens); the kernel of
  // x -> (row . x) is the double perp = the saturation, and the map is onto
  // because a saturated-lattice basis has all elementary divisors 1
  return Mat::from_rows(kernel_basis(Mat::from_rows(v, n)), n);
}

QuotientMap quotient_by(const Vec& a) {
  if (is_zero(a) || !is_primitive(a))
    throw ToricError("quotient_by: direction must be primitive");
  QuotientMap q;
  q.n = a.size();
  q.a = a;
  std::vector<Vec> ker = kernel_basis(Mat::from_rows({a}, q.n));
  if (ker.size() != q.n - 1) throw ToricError("quotient_by: kernel rank");
  q.proj = Mat::from_rows(ker, q.n);
  // proj has all elementary divisors 1 (its rows are a basis of a saturated
  // lattice), so an integral right inverse exists
  q.section = Mat(q.n, q.n - 1);
  for (std::size_t j = 0; j + 1 < q.n; ++j) {
    Vec e(q.n - 1);
    e[j] = 1;
    std::optional<Vec> s = solve(q.proj, e);
    if (!s) throw ToricError("quotient_by: no integral section");
    for (std::size_t i = 0; i < q.n; ++i) q.section.at(i, j) = (*s)[i];
  }
  return q;
}

}  // namespace toricob
