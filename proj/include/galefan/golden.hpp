#pragma once

// Reference matrices and published outcomes for the worked examples. Column
// indices in this file are 1-based, as in the reference data.

#include <cstddef>
#include <string>
#include <vector>

#include "galefan/exact_linalg.hpp"

namespace galefan::golden {

// Threefold of rank 3 with two chambers (blow-ups of P^3).
IntMatrix ex1_v();
IntMatrix ex1_q();
IntMatrix ex1_contracted_v();  // column v4 removed
IntMatrix ex1_contracted_q();

// Fourfold of rank 3 obtained by adding a weight column to ex1.
IntMatrix ex2_q();
IntMatrix ex2_v();

// Smooth projective fourfold of rank 4 whose nef cone is interior to Eff.
IntMatrix cex_v();
IntMatrix cex_q();

struct NamedVector {
  std::string name;
  IntVector v;
};

/// q3, q4, q6, q7 and the five extra generators w1..w5.
std::vector<NamedVector> cex_named();
IntVector cex_vec(const std::string& name);

struct GoldenChamber {
  std::vector<std::string> generators;
  bool smooth;
};
/// gamma_1 .. gamma_10 in reference order.
std::vector<GoldenChamber> cex_chambers();
std::vector<std::string> cex_mov();

/// Maximal cones of the fan of gamma_10, 1-based, reference order.
std::vector<std::vector<std::size_t>> cex_sigma10();
IntMatrix cex_g10_inverse();
/// Rows of G10^{-1} Q: the four Nef-generating relations.
std::vector<IntVector> cex_g10_relations();

struct GoldenWall {
  int from;  // chamber numbers, 1-based
  int to;
  IntVector normal;
  IntVector relation;
};
std::vector<GoldenWall> cex_walls();
IntVector cex_anticanonical();
IntMatrix cex_base_q();
IntMatrix cex_base_v();

/// Weight matrix of the family: the column (1,1,1,1) repeated s times.
IntMatrix qs(long s);

}  // namespace galefan::golden
