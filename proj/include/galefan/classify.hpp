#pragma once

// Bordering taxonomy of chambers, fibration and contraction analysis, flips.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galefan/mori.hpp"

namespace galefan {

enum class BorderKind { nonbordering, bordering, intbord, maxbord };
std::string to_string(BorderKind k);

/// Position of a chamber against one facet hyperplane of <Q>.
struct HyperplaneStatus {
  IntVector normal;       // inward primitive normal of the facet of <Q>
  std::size_t dim = 0;    // dim(gamma ∩ H)
  BorderKind kind = BorderKind::nonbordering;
  std::optional<IntVector> h_prime;  // inward normal of a facet of gamma certifying intbord
};

struct BorderingStatus {
  BorderKind kind = BorderKind::nonbordering;
  std::vector<HyperplaneStatus> hyperplanes;  // facets of <Q> with dim(gamma ∩ H) >= 1
  bool totally_maxbord = false;               // maxbord w.r.t. two or more facets of <Q>
};

BorderingStatus bordering_status(const WMatrix& q, const Chamber& gamma);
/// Status of gamma against a single hyperplane cutting a facet of <Q>.
HyperplaneStatus hyperplane_status(const WMatrix& q, const Chamber& gamma, const IntVector& normal);

/// Nef primitive collection whose support borders gamma. Preference: larger
/// dim(gamma ∩ H_P), then smaller support normal, then smaller P.
std::optional<PrimitiveCollection> find_bordering_witness(const FMatrix& v, const WMatrix& q, const Chamber& gamma);
std::optional<PrimitiveCollection> find_bordering_witness(const WMatrix& q, const Chamber& gamma,
                                                          const std::vector<PrimitiveCollection>& collections);

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BaseExtraction {
  FMatrix v;
  WMatrix q;
  IndexSet deleted;     // columns of P
  IntMatrix transform;  // unimodular U with last row the inward normal of H_P
  Chamber base_chamber;
};

/// Base of the fibration given by a maxbord witness P.
BaseExtraction extract_ptb_base(const FMatrix& v, const WMatrix& q, const Chamber& gamma, const IndexSet& p);

struct Contraction {
  FMatrix v;
  WMatrix q;
  std::size_t contracted_index = 0;
  Chamber image_chamber;
};

/// Blow-down along the facet of gamma with inward normal h_prime.
Contraction contract_divisor(const FMatrix& v, const WMatrix& q, const Chamber& gamma, const IntVector& h_prime);

struct WallCrossing {
  std::string from;
  std::string to;
  IntVector normal;    // inward w.r.t. `from`
  IntVector relation;  // normal * Q
  IndexSet contract_fwd;
  IndexSet contract_bwd;
};

WallCrossing wall_crossing(const WMatrix& q, const Chamber& a, const Chamber& b);

struct FlipPath {
  std::vector<std::size_t> chambers;  // indices into the chamber list, endpoints included
  std::vector<WallCrossing> crossings;
  std::vector<std::vector<std::size_t>> alternatives;  // other shortest routes
};

/// Shortest route through the adjacency graph of `chambers`; neighbours are
/// expanded in list order, which fixes the canonical route.
FlipPath flip_path(const WMatrix& q, const std::vector<Chamber>& chambers, std::size_t from, std::size_t to,
                   std::size_t max_alternatives = 16);

struct ContractionStep {
  std::string kind;  // "ptb-extraction", "blow-down" or "wall-crossing"
  FMatrix v;
  WMatrix q;
  std::string chamber;
  IndexSet indices;  // P for an extraction, {j} for a blow-down
  std::optional<WallCrossing> crossing;
};

struct ClassificationReport {
  std::string case_label;
  BorderingStatus status;
  std::optional<PrimitiveCollection> witness;
  std::size_t relation_count = 0;
  std::vector<ContractionStep> contraction_chain;
  bool counterexample = false;  // smooth, and no nef divisor is non-big
  bool in_scope = false;        // r <= 3, or n = 3 and r = 4
};

/// Follows the decision tree down to rank one. Requires a smooth chamber.
ClassificationReport classification_report(const FMatrix& v, const WMatrix& q, const Chamber& gamma);

}  // namespace galefan
