#pragma once

// Exact integer and rational linear algebra. Every routine here works on
// arbitrary-precision values; nothing in the library uses floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace galefan {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what = "matrix is singular")
      : std::runtime_error(what) {}
};

class NoSolutionError : public std::runtime_error {
 public:
  explicit NoSolutionError(const std::string& what = "linear system is inconsistent")
      : std::runtime_error(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Dense row-major integer matrix. Zero-row matrices are legal (an empty
/// kernel is represented that way); zero columns are not.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::size_t cols, std::span<const IntVector> rows);
  static IntMatrix from_columns(std::size_t rows, std::span<const IntVector> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> row_vectors() const;
  std::vector<IntVector> column_vectors() const;

  IntMatrix transpose() const;
  /// Submatrix keeping the listed columns, in the given order.
  IntMatrix select_columns(std::span<const std::size_t> idx) const;
  /// Submatrix dropping the listed columns (the A^I of the toric literature).
  IntMatrix drop_columns(std::span<const std::size_t> idx) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;

  void swap_rows(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Dense row-major rational matrix, entries always in canonical form.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  /// Exact conversion; throws std::domain_error if an entry is not integral.
  IntMatrix to_integer() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// ---- vector helpers -------------------------------------------------------

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
IntVector mat_vec(const IntMatrix& m, std::span<const Integer> v);
/// v * M for a row vector v.
IntVector vec_mat(std::span<const Integer> v, const IntMatrix& m);
bool is_zero(std::span<const Integer> v);
/// gcd of all entries (0 for the zero vector).
Integer content(std::span<const Integer> v);
/// Divides by the content; the zero vector is returned unchanged.
IntVector primitive(IntVector v);
/// Scales a rational vector by the lcm of denominators, then makes it primitive.
IntVector primitive(const RatVector& v);
/// Primitive with the first nonzero entry positive.
IntVector sign_normalized(IntVector v);
RatVector to_rational(std::span<const Integer> v);
Integer lcm_of_denominators(const RatVector& v);

// ---- normal forms ---------------------------------------------------------

struct HermiteForm {
  IntMatrix h;  ///< row-style HNF, zero rows last
  IntMatrix u;  ///< unimodular transform with h == u * m
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above a pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& m);

/// HNF with the zero rows removed: a canonical basis of the row lattice.
IntMatrix row_lattice_basis(const IntMatrix& m);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& m);

/// True when the row lattice equals its rational span intersected with Z^cols.
bool is_row_saturated(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(std::span<const IntVector> vectors, std::size_t dim);

Integer det(const IntMatrix& m);

/// Basis of the integer kernel {x : M x = 0}, as rows in HNF. The row lattice
/// is saturated. Returns a 0-row matrix when M has full column rank.
IntMatrix kernel_saturated(const IntMatrix& m);

/// Saturation of the row lattice of M, in HNF.
IntMatrix saturation(const IntMatrix& m);

/// Reduced row echelon form over Q.
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);

/// A particular solution of A x = b (free variables set to zero).
RatVector solve_exact(const IntMatrix& a, const RatVector& b);

RatMatrix rational_inverse(const IntMatrix& m);

/// Integer adjugate; adj(M) * M == det(M) * I.
IntMatrix adjugate(const IntMatrix& m);

/// Canonical integer basis of the rational span of the given vectors: the
/// rows of the RREF, each scaled to a primitive integer vector.
std::vector<IntVector> span_basis(std::span<const IntVector> vectors, std::size_t dim);

/// Canonical integer basis of the orthogonal complement of span(vectors).
std::vector<IntVector> orthogonal_complement(std::span<const IntVector> vectors, std::size_t dim);

/// Orthogonal projection of v onto span(basis)^perp, scaled to a primitive
/// integer vector (zero if v lies in the span).
IntVector project_out(std::span<const Integer> v, std::span<const IntVector> basis);

/// Completes a primitive vector to a unimodular matrix whose LAST row is v.
IntMatrix complete_to_unimodular(std::span<const Integer> v);

}  // namespace galefan
