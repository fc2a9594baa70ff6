#include "doctest.h"

#include <random>

#include "galefan/exact_linalg.hpp"

using namespace galefan;

namespace {

// Independent rank over Q by plain rational elimination.
std::size_t rational_rank(const IntMatrix& m) {
  RatMatrix a(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

// Cofactor expansion, fine for the small sizes used here.
Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 0, c = 0; b < n; ++b)
        if (b != j) minor(a - 1, c++) = m(a, b);
    s += (j % 2 ? -1 : 1) * m(0, j) * cofactor_det(minor);
  }
  return s;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
  for (int step = 0; step < 12; ++step) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    u.add_row_multiple(a, b, coef(rng));
    if (step % 5 == 0) u.swap_rows(a, b);
  }
  return u;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  return row_lattice_basis(a) == row_lattice_basis(b);
}

}  // namespace

TEST_CASE("hnf of the identity is the identity") {
  auto f = hnf(IntMatrix::identity(3));
  CHECK(f.h == IntMatrix::identity(3));
  CHECK(f.u == IntMatrix::identity(3));
  CHECK(f.rank == 3);
}

TEST_CASE("hnf of a small matrix") {
  IntMatrix m{{2, 4}, {1, 3}};
  auto f = hnf(m);
  CHECK(f.h == IntMatrix{{1, 1}, {0, 2}});
  CHECK(f.u * m == f.h);
  CHECK(abs(det(f.u)) == 1);
}

TEST_CASE("hnf shape and transform on random input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
    IntMatrix m = random_matrix(rng, r, c, 4);
    if (trial % 7 == 0 && r > 1) m.add_row_multiple(r - 1, 0, 0), m.row_span(r - 1)[0] = 0;
    auto f = hnf(m);
    CHECK(f.u * m == f.h);
    CHECK(abs(det(f.u)) == 1);
    CHECK(f.rank == rational_rank(m));
    for (std::size_t i = 0; i < f.rank; ++i) {
      std::size_t p = f.pivots[i];
      CHECK(f.h(i, p) > 0);
      for (std::size_t j = 0; j < p; ++j) CHECK(f.h(i, j) == 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(f.h(k, p) >= 0);
        CHECK(f.h(k, p) < f.h(i, p));
      }
      for (std::size_t k = i + 1; k < r; ++k) CHECK(f.h(k, p) == 0);
      if (i > 0) CHECK(f.pivots[i - 1] < p);
    }
    for (std::size_t i = f.rank; i < r; ++i) CHECK(is_zero(f.h.row_span(i)));
    // Row lattice is invariant under unimodular row action.
    CHECK(same_row_lattice(random_unimodular(rng, r) * m, m));
  }
}

TEST_CASE("example fan matrix has rank 3") {
  IntMatrix v{{1, 0, 0, 0, -1, 1}, {0, 1, 0, 0, -1, 1}, {0, 0, 1, -1, -1, 1}};
  CHECK(hnf(v).rank == 3);
  CHECK(hnf(v).pivots == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("kernel_saturated basics") {
  CHECK(kernel_saturated(IntMatrix{{1, -1}}) == IntMatrix{{1, 1}});
  CHECK(kernel_saturated(IntMatrix{{2, 0}, {0, 2}}).rows() == 0);
  IntMatrix v{{1, 0, 0, 0, -1, 1}, {0, 1, 0, 0, -1, 1}, {0, 0, 1, -1, -1, 1}};
  IntMatrix q{{1, 1, 1, 0, 1, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}};
  IntMatrix k = kernel_saturated(v);
  CHECK(k.rows() == 3);
  CHECK(same_row_lattice(k, q));
}

TEST_CASE("kernel_saturated on random input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + trial % 4, c = 2 + (trial / 4) % 6;
    IntMatrix m = random_matrix(rng, r, c, 3);
    // Scale a row to create a non-saturated row lattice.
    for (auto& x : m.row_span(0)) x *= 3;
    IntMatrix k = kernel_saturated(m);
    CHECK(k.rows() == c - rational_rank(m));
    if (k.rows() == 0) continue;
    IntMatrix prod = m * k.transpose();
    for (std::size_t i = 0; i < prod.rows(); ++i) CHECK(is_zero(prod.row_span(i)));
    for (const auto& d : smith_invariants(k)) CHECK(d == 1);
  }
}

TEST_CASE("smith invariants and saturation") {
  CHECK(smith_invariants(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Integer>{1, 6});
  CHECK(smith_invariants(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) ==
        std::vector<Integer>{2, 6, 12});
  CHECK_FALSE(is_row_saturated(IntMatrix{{2, 4}}));
  CHECK(saturation(IntMatrix{{2, 4}}) == IntMatrix{{1, 2}});
  CHECK(saturation(IntMatrix{{1, 1, 0}, {1, -1, 0}}) == IntMatrix{{1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 5;
    IntMatrix m = random_matrix(rng, n, n, 3);
    CHECK(det(m) == cofactor_det(m));
  }
  CHECK(det(IntMatrix{{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("reference inverse of the G10 generator matrix") {
  // Columns q6, w4, w2, w3: the reference inverse lists its rows in this order.
  IntMatrix g{{1, 2, 2, 1}, {1, 2, 1, 2}, {2, 3, 2, 2}, {1, 1, 1, 1}};
  IntMatrix expected{{-1, -1, 1, 1}, {0, 0, 1, -2}, {1, 0, -1, 1}, {0, 1, -1, 1}};
  RatMatrix inv = rational_inverse(g);
  CHECK(inv.to_integer() == expected);
  CHECK(RatMatrix(g) * inv == RatMatrix::identity(4));
  CHECK(adjugate(g) == expected * IntMatrix{{det(g).get_si(), 0, 0, 0},
                                            {0, det(g).get_si(), 0, 0},
                                            {0, 0, det(g).get_si(), 0},
                                            {0, 0, 0, det(g).get_si()}});
}

TEST_CASE("inverse of identity, singular error, random unimodular") {
  CHECK(rational_inverse(IntMatrix::identity(3)) == RatMatrix::identity(3));
  CHECK_THROWS_AS(rational_inverse(IntMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix u = random_unimodular(rng, 4);
    RatMatrix inv = rational_inverse(u);
    CHECK_NOTHROW((void)inv.to_integer());
    CHECK(u * inv.to_integer() == IntMatrix::identity(4));
  }
}

TEST_CASE("adjugate of singular matrices") {
  IntMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  IntMatrix a = adjugate(m);
  IntMatrix z = a * m;
  for (std::size_t i = 0; i < 3; ++i) CHECK(is_zero(z.row_span(i)));
}

TEST_CASE("solve_exact substitutes back") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    IntMatrix a = random_matrix(rng, r, c, 3);
    RatVector x0(c);
    for (std::size_t j = 0; j < c; ++j) {
      x0[j] = Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
      x0[j].canonicalize();
    }
    RatVector b(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b[i] += a(i, j) * x0[j];
    RatVector x = solve_exact(a, b);
    for (std::size_t i = 0; i < r; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < c; ++j) s += a(i, j) * x[j];
      CHECK(s == b[i]);
    }
  }
  CHECK_THROWS_AS(solve_exact(IntMatrix{{1, 1}, {1, 1}}, RatVector{1, 2}), NoSolutionError);
}

TEST_CASE("span helpers") {
  std::vector<IntVector> vs{{2, 2, 0}, {1, 1, 0}};
  auto b = span_basis(vs, 3);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == IntVector{1, 1, 0});
  auto c = orthogonal_complement(vs, 3);
  CHECK(c == std::vector<IntVector>{{1, -1, 0}, {0, 0, 1}});
  CHECK(orthogonal_complement({}, 2) == std::vector<IntVector>{{1, 0}, {0, 1}});
  IntVector p = project_out(IntVector{3, 1, 5}, b);
  CHECK(p == IntVector{1, -1, 5});
  CHECK(is_zero(project_out(IntVector{2, 2, 0}, b)));
}

TEST_CASE("complete_to_unimodular") {
  std::vector<IntVector> cases{{0, 0, 1}, {1, 2, 3}, {-3, 5}, {2, 3, 4, 5}, {1}};
  for (const auto& v : cases) {
    IntMatrix u = complete_to_unimodular(v);
    CHECK(abs(det(u)) == 1);
    CHECK(u.row(u.rows() - 1) == v);
  }
  CHECK_THROWS(complete_to_unimodular(IntVector{2, 4}));
}

TEST_CASE("vector helpers") {
  CHECK(primitive(IntVector{4, -6, 0}) == IntVector{2, -3, 0});
  CHECK(primitive(RatVector{Rational(1, 2), Rational(1, 3)}) == IntVector{3, 2});
  CHECK(sign_normalized(IntVector{0, -2, 4}) == IntVector{0, 1, -2});
  CHECK(content(IntVector{0, 0}) == 0);
  CHECK(lcm_of_denominators(RatVector{Rational(1, 4), Rational(5, 6)}) == 12);
}
