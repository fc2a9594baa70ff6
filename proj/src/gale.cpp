#include "galefan/gale.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "galefan/cone.hpp"

namespace galefan {

namespace {

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string col_name(std::size_t j) { return "column " + std::to_string(j + 1); }

// Integer left kernel of the columns of q outside `keep`, evaluated on the kept
// columns: the lattice of restrictions to `keep` of row-lattice vectors that
// vanish everywhere else.
IntMatrix supported_sublattice(const IntMatrix& q, const std::vector<std::size_t>& keep) {
  IntMatrix rest = q.drop_columns(keep);
  IntMatrix ys = rest.cols() == 0 ? IntMatrix::identity(q.rows()) : kernel_saturated(rest.transpose());
  IntMatrix vals(ys.rows(), keep.size());
  for (std::size_t i = 0; i < ys.rows(); ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) vals(i, k) = dot(ys.row_span(i), q.column(keep[k]));
  return vals;
}

}  // namespace

bool is_positive_ref(const IntMatrix& m) {
  std::size_t last_pivot = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t p = 0;
    while (p < m.cols() && m(i, p) == 0) ++p;
    if (p == m.cols()) return false;
    if (i > 0 && p <= last_pivot) return false;
    last_pivot = p;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) return false;
  }
  return true;
}

namespace {

IntMatrix positive_ref_in_order(const IntMatrix& m, long bound) {
  IntMatrix h = row_lattice_basis(m);
  const std::size_t r = h.rows(), c = h.cols();
  if (r == 0) throw PositiveRefError(PositiveRefError::Kind::not_w_positive, "zero row lattice");

  for (std::size_t ii = r; ii-- > 0;) {
    const std::size_t lower = r - 1 - ii;
    // Entries where every lower row vanishes cannot be changed.
    for (std::size_t j = 0; j < c; ++j) {
      bool covered = false;
      for (std::size_t k = ii + 1; k < r && !covered; ++k) covered = h(k, j) > 0;
      if (!covered && h(ii, j) < 0)
        throw PositiveRefError(PositiveRefError::Kind::not_w_positive,
                               "row lattice admits no nonnegative echelon basis (" + col_name(j) + ")");
    }
    if (lower == 0) continue;

    IntVector base = h.row(ii);
    std::optional<IntVector> best;
    Integer best_sum;
    std::vector<long> coef(lower - 1, -bound);
    const std::size_t last = r - 1;
    for (;;) {
      IntVector partial = base;
      for (std::size_t t = 0; t + 1 < lower; ++t)
        if (coef[t] != 0)
          for (std::size_t j = 0; j < c; ++j) partial[j] += coef[t] * h(ii + 1 + t, j);
      // Smallest admissible multiple of the last row.
      bool ok = true;
      Integer need = -bound;
      for (std::size_t j = 0; j < c && ok; ++j) {
        if (h(last, j) > 0) {
          need = std::max(need, ceil_div(-partial[j], h(last, j)));
        } else if (partial[j] < 0) {
          ok = false;
        }
      }
      if (ok && need <= bound) {
        for (std::size_t j = 0; j < c; ++j) partial[j] += need * h(last, j);
        Integer s = std::accumulate(partial.begin(), partial.end(), Integer(0));
        if (!best || s < best_sum || (s == best_sum && partial < *best)) {
          best = partial;
          best_sum = s;
        }
      }
      std::size_t t = 0;
      while (t < coef.size() && coef[t] == bound) coef[t++] = -bound;
      if (t == coef.size()) break;
      ++coef[t];
    }
    if (!best)
      throw PositiveRefError(PositiveRefError::Kind::bound_too_small,
                             "no nonnegative row within coefficient bound " + std::to_string(bound));
    for (std::size_t j = 0; j < c; ++j) h(ii, j) = (*best)[j];
  }
  return h;
}

IntMatrix permute_columns(const IntMatrix& m, const std::vector<std::size_t>& order) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < order.size(); ++k) out(i, k) = m(i, order[k]);
  return out;
}

}  // namespace

IntMatrix positive_ref(const IntMatrix& m, long bound) {
  std::optional<PositiveRefError> err;
  try {
    return positive_ref_in_order(m, bound);
  } catch (const PositiveRefError& e) {
    err = e;
  }
  // REF up to a reordering of the columns: bring each r-subset to the front,
  // in lexicographic order, and map the first success back.
  const std::size_t r = rank(m), c = m.cols();
  std::vector<bool> pick(c, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(r, c)), true);
  do {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < c; ++j)
      if (pick[j]) order.push_back(j);
    for (std::size_t j = 0; j < c; ++j)
      if (!pick[j]) order.push_back(j);
    try {
      IntMatrix h = positive_ref_in_order(permute_columns(m, order), bound);
      IntMatrix out(h.rows(), c);
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t k = 0; k < c; ++k) out(i, order[k]) = h(i, k);
      return out;
    } catch (const PositiveRefError& e) {
      if (e.kind() == PositiveRefError::Kind::bound_too_small) err = e;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  throw *err;
}

FValidation validate_f(const IntMatrix& m, std::optional<std::size_t> expect_n) {
  FValidation out;
  auto fail = [&](std::string clause, std::string msg) { out.violations.push_back({std::move(clause), std::move(msg)}); };
  const std::size_t n = m.rows(), w = m.cols();
  if (n == 0 || w == 0) {
    fail("a", "empty matrix");
    return out;
  }
  if (expect_n && *expect_n != n) fail("a", "expected " + std::to_string(*expect_n) + " rows");
  if (rank(m) != n) fail("a", "rank is " + std::to_string(rank(m)) + ", not " + std::to_string(n));
  auto cols = m.column_vectors();
  Cone span = Cone::from_generators(n, cols);
  bool complete = span.lineality_dim() == n;
  if (!complete) fail("b", "columns do not generate the whole space");
  for (std::size_t j = 0; j < w; ++j)
    if (is_zero(cols[j])) fail("c", col_name(j) + " is zero");
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = i + 1; j < w; ++j)
      if (!is_zero(cols[i]) && primitive(cols[i]) == primitive(cols[j]))
        fail("d", col_name(i) + " and " + col_name(j) + " are positively proportional");
  if (!out.ok()) return out;
  FMatrix f;
  f.m = m;
  f.n = n;
  f.r = w - n;
  f.f_complete = complete;
  f.reduced = std::all_of(cols.begin(), cols.end(), [](const IntVector& v) { return content(v) == 1; });
  f.cf = is_row_saturated(m.transpose());
  out.matrix = std::move(f);
  return out;
}

WValidation validate_w(const IntMatrix& m, std::optional<std::size_t> expect_r, long ref_bound) {
  WValidation out;
  auto fail = [&](std::string clause, std::string msg) { out.violations.push_back({std::move(clause), std::move(msg)}); };
  const std::size_t r = m.rows(), w = m.cols();
  if (r == 0 || w == 0) {
    fail("a", "empty matrix");
    return out;
  }
  if (expect_r && *expect_r != r) fail("a", "expected " + std::to_string(*expect_r) + " rows");
  const std::size_t rk = rank(m);
  if (rk != r) {
    fail("a", "rank is " + std::to_string(rk) + ", not " + std::to_string(r));
    return out;
  }
  if (!is_row_saturated(m)) fail("b", "row lattice has cotorsion");
  IntMatrix rep = m;
  if (!is_positive_ref(m)) {
    try {
      rep = positive_ref(m, ref_bound);
    } catch (const PositiveRefError& e) {
      fail("c", e.kind() == PositiveRefError::Kind::not_w_positive
                    ? std::string("not W-positive: ") + e.what()
                    : std::string("positive REF search inconclusive: ") + e.what());
    }
  }
  for (std::size_t j = 0; j < w; ++j)
    if (is_zero(m.column(j))) fail("d", col_name(j) + " is zero");
  if (w > r) {
    for (std::size_t i = 0; i < w; ++i) {
      IntMatrix vals = supported_sublattice(m, {i});
      if (content(vals.column(0)) == 1)
        fail("e", "row lattice contains the standard vector e_" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = i + 1; j < w; ++j) {
        IntMatrix vals = supported_sublattice(m, {i, j});
        IntMatrix basis = row_lattice_basis(vals);
        bool bad = basis.rows() == 2 || (basis.rows() == 1 && basis(0, 0) * basis(0, 1) < 0);
        if (bad)
          fail("f", "row lattice contains a vector supported on columns " + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + " with entries of opposite sign");
      }
  } else {
    fail("e", "no columns beyond the rank");
  }
  if (out.ok()) {
    // Reduced: every column of the Gale dual is primitive.
    IntMatrix k = kernel_saturated(m);
    for (std::size_t j = 0; j < k.cols(); ++j)
      if (content(k.column(j)) != 1)
        fail("reduced", "column " + std::to_string(j + 1) + " of the Gale dual is not primitive");
  }
  if (!out.ok()) return out;
  WMatrix q;
  q.m = std::move(rep);
  q.r = r;
  q.n = w - r;
  out.matrix = std::move(q);
  return out;
}

WMatrix gale_dual_of_f(const FMatrix& v, long ref_bound) {
  IntMatrix k = kernel_saturated(v.m);
  WMatrix q;
  q.m = positive_ref(k, ref_bound);
  q.r = q.m.rows();
  q.n = v.n;
  return q;
}

FMatrix gale_dual_of_w(const WMatrix& q) {
  IntMatrix k = kernel_saturated(q.m);
  if (k.rows() == 0) throw InvalidMatrixError("weight matrix has trivial kernel", {});
  for (std::size_t j = 0; j < k.cols(); ++j)
    if (content(k.column(j)) != 1)
      throw InvalidMatrixError("weight matrix is not reduced",
                               {{"reduced", "column " + std::to_string(j + 1) + " of the Gale dual is not primitive"}});
  FValidation fv = validate_f(k);
  if (!fv.ok()) throw InvalidMatrixError("Gale dual is not an F-matrix", fv.violations);
  return *fv.matrix;
}

FMatrix require_f(const IntMatrix& m) {
  FValidation fv = validate_f(m);
  if (!fv.ok()) throw InvalidMatrixError("not an F-matrix", fv.violations);
  return *fv.matrix;
}

WMatrix require_w(const IntMatrix& m, long ref_bound) {
  WValidation wv = validate_w(m, std::nullopt, ref_bound);
  if (!wv.ok()) throw InvalidMatrixError("not a W-matrix", wv.violations);
  return *wv.matrix;
}

}  // namespace galefan
