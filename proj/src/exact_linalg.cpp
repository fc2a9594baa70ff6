#include "galefan/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace galefan {

// ---- IntMatrix -------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, std::span<const IntVector> rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::span<const IntVector> cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  auto s = row_span(i);
  return IntVector(s.begin(), s.end());
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<IntVector> IntMatrix::column_vectors() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
  return m;
}

IntMatrix IntMatrix::drop_columns(std::span<const std::size_t> idx) const {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < cols_; ++j)
    if (std::find(idx.begin(), idx.end(), j) == idx.end()) keep.push_back(j);
  return select_columns(keep);
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& x : row_span(i)) x = -x;
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

// ---- RatMatrix -------------------------------------------------------------

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix RatMatrix::to_integer() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& q = (*this)(i, j);
      if (q.get_den() != 1) throw std::domain_error("matrix entry is not integral");
      m(i, j) = q.get_num();
    }
  return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// ---- vector helpers --------------------------------------------------------

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

IntVector mat_vec(const IntMatrix& m, std::span<const Integer> v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector dimension mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row_span(i), v);
  return out;
}

IntVector vec_mat(std::span<const Integer> v, const IntMatrix& m) {
  if (m.rows() != v.size()) throw DimensionError("vector-matrix dimension mismatch");
  IntVector out(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntVector primitive(IntVector v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

Integer lcm_of_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

IntVector primitive(const RatVector& v) {
  Integer l = lcm_of_denominators(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
  }
  return primitive(std::move(out));
}

IntVector sign_normalized(IntVector v) {
  v = primitive(std::move(v));
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

RatVector to_rational(std::span<const Integer> v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

// ---- normal forms ----------------------------------------------------------

namespace {

// Floor division for the HNF reduction step.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Replaces rows (p, i) by [[s, t], [-b/g, a/g]] * (p, i) in both matrices.
void gcd_combine(IntMatrix& h, IntMatrix& u, std::size_t p, std::size_t i, std::size_t col) {
  Integer a = h(p, col), b = h(i, col), g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer bg = b / g, ag = a / g;
  auto combine = [&](IntMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer x = m(p, j), y = m(i, j);
      m(p, j) = s * x + t * y;
      m(i, j) = ag * y - bg * x;
    }
  };
  combine(h);
  combine(u);
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm f{m, IntMatrix::identity(m.rows()), 0, {}};
  IntMatrix& h = f.h;
  IntMatrix& u = f.u;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i)
      if (h(i, col) != 0) gcd_combine(h, u, row, i, col);
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.negate_row(row);
      u.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q = floor_div(h(i, col), h(row, col));
      if (q != 0) {
        h.add_row_multiple(i, row, -q);
        u.add_row_multiple(i, row, -q);
      }
    }
    f.pivots.push_back(col);
    ++row;
  }
  f.rank = row;
  return f;
}

IntMatrix row_lattice_basis(const IntMatrix& m) {
  HermiteForm f = hnf(m);
  std::vector<std::size_t> idx(f.rank);
  std::iota(idx.begin(), idx.end(), 0);
  return f.h.select_rows(idx);
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> out;
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, x), a(i, y));
  };
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      a.swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = floor_div(a(i, t), a(t, t));
        a.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = floor_div(a(t, j), a(t, t));
        if (q != 0)
          for (std::size_t i = 0; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

bool is_row_saturated(const IntMatrix& m) {
  for (const auto& d : smith_invariants(m))
    if (d != 1) return false;
  return true;
}

std::size_t rank(const IntMatrix& m) { return hnf(m).rank; }

std::size_t rank(std::span<const IntVector> vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  // Fraction-free elimination; cheaper than a full HNF.
  std::vector<IntVector> a(vectors.begin(), vectors.end());
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < a.size(); ++col) {
    std::size_t p = r;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      Integer f = a[i][col], g = a[r][col];
      for (std::size_t j = col; j < dim; ++j) a[i][j] = a[i][j] * g - a[r][j] * f;
      a[i] = primitive(std::move(a[i]));
    }
    ++r;
  }
  return r;
}

Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer x = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = x;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix kernel_saturated(const IntMatrix& m) {
  const std::size_t width = m.cols();
  HermiteForm f = hnf(m.transpose());
  std::vector<std::size_t> idx;
  for (std::size_t i = f.rank; i < width; ++i) idx.push_back(i);
  if (idx.empty()) return IntMatrix(0, width);
  return row_lattice_basis(f.u.select_rows(idx));
}

IntMatrix saturation(const IntMatrix& m) {
  IntMatrix k = kernel_saturated(m);
  if (k.rows() == 0) return IntMatrix::identity(m.cols());
  return kernel_saturated(k);
}

RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots) {
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t p = r;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    if (pivots) pivots->push_back(col);
    ++r;
  }
  return a;
}

RatVector solve_exact(const IntMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  RatMatrix red = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) throw NoSolutionError();
  RatVector x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = red(i, a.cols());
  return x;
}

RatMatrix rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  RatMatrix red = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrixError();
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

IntMatrix adjugate(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  Integer d = det(m);
  if (d != 0) {
    RatMatrix inv = rational_inverse(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational x = inv(i, j) * d;
        adj(i, j) = x.get_num();
      }
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t a = 0, ra = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, cb = 0; b < n; ++b) {
          if (b == i) continue;
          minor(ra, cb++) = m(a, b);
        }
        ++ra;
      }
      adj(i, j) = ((i + j) % 2 ? -1 : 1) * det(minor);
    }
  return adj;
}

std::vector<IntVector> span_basis(std::span<const IntVector> vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  RatMatrix a(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = vectors[i][j];
  std::vector<std::size_t> piv;
  RatMatrix red = rref(a, &piv);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(primitive(red.row(i)));
  return out;
}

std::vector<IntVector> orthogonal_complement(std::span<const IntVector> vectors, std::size_t dim) {
  std::vector<std::size_t> piv;
  RatMatrix red;
  if (!vectors.empty()) {
    RatMatrix a(vectors.size(), dim);
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = vectors[i][j];
    red = rref(a, &piv);
  }
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    RatVector x(dim, Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -red(i, f);
    basis.push_back(primitive(x));
  }
  return span_basis(basis, dim);
}

IntVector project_out(std::span<const Integer> v, std::span<const IntVector> basis) {
  if (basis.empty()) return primitive(IntVector(v.begin(), v.end()));
  const std::size_t k = basis.size();
  IntMatrix gram(k, k);
  RatVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  RatVector c = solve_exact(gram, rhs);
  RatVector p = to_rational(v);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < v.size(); ++j) p[j] -= c[i] * basis[i][j];
  return primitive(p);
}

IntMatrix complete_to_unimodular(std::span<const Integer> v) {
  const std::size_t n = v.size();
  if (content(v) != 1) throw std::invalid_argument("vector is not primitive");
  IntMatrix col(n, 1);
  for (std::size_t i = 0; i < n; ++i) col(i, 0) = v[i];
  // U v = e_1, so the first column of U^{-1} is v.
  HermiteForm f = hnf(col);
  IntMatrix inv = rational_inverse(f.u).to_integer();
  IntMatrix out(n, n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i - 1, j) = inv(j, i);
  for (std::size_t j = 0; j < n; ++j) out(n - 1, j) = inv(j, 0);
  return out;
}

}  // namespace galefan
