#include "doctest.h"

#include "galefan/golden.hpp"
#include "galefan/mori.hpp"
#include "oracles.hpp"

using namespace galefan;

namespace {

struct Instance {
  FMatrix v;
  WMatrix q;
  std::vector<Chamber> chambers;
};

Instance load_w(const IntMatrix& qm) {
  Instance in;
  in.q = require_w(qm);
  in.v = gale_dual_of_w(in.q);
  in.chambers = enumerate_chambers(in.q, Region::mov);
  return in;
}

const Chamber& by_generators(const std::vector<Chamber>& ch, std::vector<IntVector> gens) {
  std::sort(gens.begin(), gens.end());
  for (const auto& c : ch)
    if (c.cone.rays() == gens) return c;
  throw std::runtime_error("chamber not found");
}

std::vector<IndexSet> indices_of(const std::vector<PrimitiveCollection>& pcs) {
  std::vector<IndexSet> out;
  for (const auto& pc : pcs) out.push_back(pc.indices);
  return out;
}

void check_invariants(const Instance& in, const Chamber& c, const std::vector<PrimitiveCollection>& pcs) {
  const std::size_t w = in.q.m.cols();
  for (const auto& pc : pcs) {
    CHECK(pc.indices.size() >= 2);
    CHECK(pc.indices.size() <= in.v.n + 1);
    CHECK(is_zero(mat_vec(in.v.m, pc.relation)));
    CHECK(vec_mat(pc.n_class, in.q.m) == pc.relation);
    RatVector expect(w, Rational(0));
    for (std::size_t j : pc.indices) expect[j] += 1;
    for (std::size_t k = 0; k < pc.sigma.size(); ++k) {
      CHECK(pc.coeffs[k] > 0);
      expect[pc.sigma[k]] -= pc.coeffs[k];
    }
    for (std::size_t j = 0; j < w; ++j) CHECK(Rational(pc.relation[j]) == expect[j] * pc.scale);
    bool nonneg = std::all_of(pc.relation.begin(), pc.relation.end(), [](const Integer& x) { return x >= 0; });
    CHECK(pc.nef == nonneg);
    if (pc.nef) {
      // Every bunch cone has a column on the support hyperplane.
      for (const auto& j : c.bunch) {
        bool hit = std::any_of(j.begin(), j.end(), [&](std::size_t col) {
          return dot(pc.support_normal, in.q.m.column(col)) == 0;
        });
        CHECK(hit);
      }
    }
  }
  std::vector<IndexSet> fan;
  for (const auto& j : c.bunch) fan.push_back(complement(j, w));
  CHECK(indices_of(pcs) == oracle::primitive_collections_from_fan(w, fan));
}

}  // namespace

TEST_CASE("product of projective lines") {
  Instance in = load_w(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}});
  REQUIRE(in.chambers.size() == 1);
  auto pcs = enumerate_primitive_collections(in.v, in.q, in.chambers[0]);
  CHECK(indices_of(pcs) == std::vector<IndexSet>{{0, 2}, {1, 3}});
  for (const auto& pc : pcs) CHECK(pc.nef);
  check_invariants(in, in.chambers[0], pcs);
}

TEST_CASE("projective plane") {
  Instance in = load_w(IntMatrix{{1, 1, 1}});
  auto pcs = enumerate_primitive_collections(in.v, in.q, in.chambers[0]);
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].relation == IntVector{1, 1, 1});
  CHECK(pcs[0].sigma.empty());
  CHECK(numerical_class(in.q.m, IntVector{1, 1, 1}) == IntVector{1});
  CHECK(mori_cone(in.v, in.q, in.chambers[0]).rays() == std::vector<IntVector>{{1}});
}

TEST_CASE("numerical classes") {
  CHECK(numerical_class(IntMatrix{{1, 1}}, IntVector{1, 1}) == IntVector{1});
  CHECK_THROWS_AS(numerical_class(IntMatrix{{1, 1}}, IntVector{1, 0}), NotInLatticeError);
  CHECK_THROWS_AS(numerical_class(IntMatrix{{2, 2, 0}, {0, 1, 1}}, IntVector{1, 1, 0}), NotInLatticeError);
  CHECK(support_hyperplane(IntVector{0, -2}) == IntVector{0, 1});
}

TEST_CASE("rank-2 normal form") {
  // Columns: j1 copies of e1, then (a,1) with a descending, then m copies of e2.
  for (std::size_t j1 = 2; j1 <= 3; ++j1)
    for (long a1 = 0; a1 <= 3; ++a1)
      for (long a2 = 0; a2 <= a1; ++a2)
        for (std::size_t m = 1; m <= 2; ++m) {
          std::vector<long> top(j1, 1), bottom(j1, 0);
          top.push_back(a1);
          top.push_back(a2);
          bottom.push_back(1);
          bottom.push_back(1);
          for (std::size_t k = 0; k < m; ++k) {
            top.push_back(0);
            bottom.push_back(1);
          }
          IntMatrix qm(2, top.size());
          for (std::size_t j = 0; j < top.size(); ++j) {
            qm(0, j) = top[j];
            qm(1, j) = bottom[j];
          }
          if (!validate_w(qm).ok()) continue;
          Instance in = load_w(qm);
          const Chamber& g = by_generators(in.chambers, {IntVector{1, 0}, primitive(IntVector{a1, 1})});
          auto pcs = enumerate_primitive_collections(in.v, in.q, g);
          IndexSet p;
          for (std::size_t j = j1; j < top.size(); ++j) p.push_back(j);
          auto it = std::find_if(pcs.begin(), pcs.end(), [&](const PrimitiveCollection& pc) { return pc.indices == p; });
          REQUIRE(it != pcs.end());
          CHECK(it->nef);
          CHECK(it->relation == IntVector(bottom.begin(), bottom.end()));
          CHECK(it->n_class == IntVector{0, 1});
          CHECK(it->support_normal == IntVector{0, 1});
          check_invariants(in, g, pcs);
        }
}

TEST_CASE("relations of the interior-nef chamber") {
  Instance in = load_w(golden::cex_q());
  std::vector<IntVector> g10;
  const auto golden_chambers = golden::cex_chambers();
  for (const auto& nm : golden_chambers[9].generators) g10.push_back(golden::cex_vec(nm));
  const Chamber& c = by_generators(in.chambers, g10);
  auto pcs = enumerate_primitive_collections(in.v, in.q, c);
  check_invariants(in, c, pcs);
  auto p678 = std::find_if(pcs.begin(), pcs.end(), [](const PrimitiveCollection& pc) { return pc.indices == IndexSet{5, 6, 7}; });
  REQUIRE(p678 != pcs.end());
  CHECK(p678->relation == IntVector{0, 0, 0, 0, 0, 1, 1, 1});
  CHECK(p678->sigma.empty());
  // The Mori cone is generated by the rows of G10^{-1}; its extremal
  // relations are the reference ones.
  Cone mori = mori_cone(pcs, 4);
  std::vector<IntVector> rows = golden::cex_g10_inverse().row_vectors();
  std::sort(rows.begin(), rows.end());
  CHECK(mori.rays() == rows);
  std::vector<IntVector> rels;
  for (const auto& r : mori.rays()) rels.push_back(vec_mat(r, in.q.m));
  std::sort(rels.begin(), rels.end());
  auto expected = golden::cex_g10_relations();
  std::sort(expected.begin(), expected.end());
  CHECK(rels == expected);
  IntVector sum(8, Integer(0));
  for (const auto& r : expected)
    for (std::size_t j = 0; j < 8; ++j) sum[j] += r[j];
  CHECK(sum == p678->relation);
  CHECK(mori.dual() == c.cone);
}

TEST_CASE("Mori duality and oracle agreement on all corpus chambers") {
  for (const auto& qm : {golden::ex1_q(), golden::ex2_q(), golden::cex_q(), golden::qs(2)}) {
    Instance in = load_w(qm);
    for (const auto& c : in.chambers) {
      auto pcs = enumerate_primitive_collections(in.v, in.q, c);
      check_invariants(in, c, pcs);
      CHECK_MESSAGE(mori_cone(pcs, in.q.r).dual() == c.cone, "chamber " << c.id);
    }
  }
}

TEST_CASE("anticanonical class") {
  Instance in = load_w(golden::cex_q());
  std::vector<IntVector> g10;
  const auto golden_chambers = golden::cex_chambers();
  for (const auto& nm : golden_chambers[9].generators) g10.push_back(golden::cex_vec(nm));
  const Chamber& c = by_generators(in.chambers, g10);
  auto rep = anticanonical_position(in.q, c);
  CHECK(rep.cls == golden::cex_anticanonical());
  CHECK(rep.nef);
  CHECK(rep.on_boundary);
  CHECK(rep.big);
  CHECK_FALSE(rep.ample);
  CHECK(rep.verdict == "weak_fano");
  Instance p2 = load_w(IntMatrix{{1, 1, 1}});
  auto rp2 = anticanonical_position(p2.q, p2.chambers[0]);
  CHECK(rp2.cls == IntVector{3});
  CHECK(rp2.ample);
  CHECK(rp2.verdict == "fano");
  for (long s = 2; s <= 3; ++s) {
    Instance qs = load_w(golden::qs(s));
    const Chamber& cs = by_generators(qs.chambers, g10);
    CHECK_FALSE(anticanonical_position(qs.q, cs).nef);
  }
}
