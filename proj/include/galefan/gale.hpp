#pragma once

// Fan matrices, weight matrices and the integral Gale duality between them.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galefan/exact_linalg.hpp"

namespace galefan {

inline constexpr long kDefaultRefBound = 64;

/// n x (n+r) fan matrix; columns are ray generators of a complete fan.
struct FMatrix {
  IntMatrix m;
  std::size_t n = 0;
  std::size_t r = 0;
  bool f_complete = false;
  bool reduced = false;
  bool cf = false;
};

/// r x (n+r) weight matrix stored as a positive REF representative.
struct WMatrix {
  IntMatrix m;
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<IntVector> columns() const { return m.column_vectors(); }
};

/// One violated clause of the F- or W-matrix definition, e.g. {"d", "..."}.
struct Violation {
  std::string clause;
  std::string message;
};

struct FValidation {
  std::optional<FMatrix> matrix;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct WValidation {
  std::optional<WMatrix> matrix;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

class PositiveRefError : public std::runtime_error {
 public:
  enum class Kind { not_w_positive, bound_too_small };
  PositiveRefError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Raised when a computed or supplied matrix fails validation.
class InvalidMatrixError : public std::runtime_error {
 public:
  InvalidMatrixError(const std::string& what, std::vector<Violation> v)
      : std::runtime_error(what), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

FValidation validate_f(const IntMatrix& m, std::optional<std::size_t> expect_n = std::nullopt);
WValidation validate_w(const IntMatrix& m, std::optional<std::size_t> expect_r = std::nullopt,
                       long ref_bound = kDefaultRefBound);

/// True if m is in row echelon form with positive pivots and no negative entry.
bool is_positive_ref(const IntMatrix& m);

/// A basis of the row lattice of m in REF with all entries >= 0.
///
/// Starts from the HNF and fixes rows bottom-up: row i is replaced by
/// row_i + sum_k c_k row_k over the (already nonnegative) lower rows, with
/// integer c_k in [-bound, bound], choosing the nonnegative result with the
/// smallest entry sum and then the lexicographically smallest row.
/// If the given column order admits no such basis, each r-subset of columns
/// is tried in front (lexicographic order); the result is then echelon only
/// up to that reordering.
IntMatrix positive_ref(const IntMatrix& m, long bound = kDefaultRefBound);

/// Positive REF weight matrix whose row lattice is the integer kernel of V.
WMatrix gale_dual_of_f(const FMatrix& v, long ref_bound = kDefaultRefBound);

/// Fan matrix whose row lattice is the integer kernel of Q, rows in HNF and
/// columns reduced to primitive vectors.
FMatrix gale_dual_of_w(const WMatrix& q);

/// Convenience wrappers that throw InvalidMatrixError on violations.
FMatrix require_f(const IntMatrix& m);
WMatrix require_w(const IntMatrix& m, long ref_bound = kDefaultRefBound);

}  // namespace galefan
