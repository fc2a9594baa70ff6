#pragma once

// Primitive collections, primitive relations and the Mori cone.

#include <string>
#include <vector>

#include "galefan/secondary_fan.hpp"

namespace galefan {

struct PrimitiveCollection {
  IndexSet indices;          // P
  IntVector relation;        // r_Z(P), length n+r
  Integer scale = 1;         // l: lcm of the denominators of the coefficients
  IndexSet sigma;            // cone whose relative interior contains v_P
  RatVector coeffs;          // c_rho > 0, aligned with sigma
  IntVector n_class;         // n_P with Q^T n_P = r_Z(P)
  IntVector support_normal;  // primitive normal of H_P, first nonzero entry positive
  bool nef = false;
};

struct PrimitiveRelation {
  IntVector relation;
  Integer scale;
  IndexSet sigma;
  RatVector coeffs;
};

class NotInLatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Primitive collections of the fan of gamma, via the cone criterion
/// gamma ⊄ <Q^P> and gamma ⊆ <Q^{P\i}> for all i in P. Sorted by size, then
/// lexicographically.
std::vector<PrimitiveCollection> enumerate_primitive_collections(const FMatrix& v, const WMatrix& q,
                                                                 const Chamber& gamma);

PrimitiveRelation primitive_relation(const IntMatrix& v, const std::vector<IndexSet>& fan_cones, const IndexSet& p);

/// Solves Q^T n = rz exactly; throws NotInLatticeError if rz is not in the row lattice.
IntVector numerical_class(const IntMatrix& q, const IntVector& rz);
IntVector support_hyperplane(const IntVector& n_class);

/// Cone in the class space generated by the classes of all primitive relations.
Cone mori_cone(const std::vector<PrimitiveCollection>& collections, std::size_t r);
Cone mori_cone(const FMatrix& v, const WMatrix& q, const Chamber& gamma);
/// dual(mori_cone) == gamma.
bool nef_cone_check(const FMatrix& v, const WMatrix& q, const Chamber& gamma);

struct AnticanonicalReport {
  IntVector cls;
  bool ample = false;       // relative interior of gamma
  bool nef = false;         // in gamma
  bool big = false;         // interior of <Q>
  bool on_boundary = false; // on the boundary of gamma
  bool outside = false;
  std::string verdict;      // "fano", "weak_fano" or "neither"
};

IntVector anticanonical(const WMatrix& q);
AnticanonicalReport anticanonical_position(const WMatrix& q, const Chamber& gamma);

}  // namespace galefan
