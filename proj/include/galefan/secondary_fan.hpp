#pragma once

// Chambers of the secondary fan and the chamber <-> projective fan dictionary.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galefan/cone.hpp"
#include "galefan/gale.hpp"

namespace galefan {

using IndexSet = std::vector<std::size_t>;  // sorted, 0-based column indices

/// A simplicial cone <Q_J> spanned by r linearly independent columns.
struct ColumnCone {
  IndexSet cols;
  Integer det;                     // det(Q_J), columns in the order of `cols`
  std::vector<IntVector> normals;  // inward facet normals; normals[k] vanishes on all columns but cols[k]
  bool contains_interior(std::span<const Integer> x) const;
};

/// Every full-dimensional <Q_J>, |J| = r, in lexicographic order of J.
std::vector<ColumnCone> simplicial_column_cones(const IntMatrix& q);

struct Chamber {
  Cone cone;
  std::vector<IndexSet> bunch;  // all J with det(Q_J) != 0 and cone ⊆ <Q_J>, sorted
  std::string id;
  std::optional<bool> smooth;
  bool in_mov = false;
};

struct Fan {
  IntMatrix v;
  std::vector<IndexSet> cones;  // maximal cones, sorted
  bool complete = false;
  bool simplicial = false;
};

struct FanReport {
  bool simplicial = true;
  bool complete = true;
  std::vector<Integer> dets;  // |det V_I| per maximal cone
  std::vector<std::string> problems;
  bool ok() const { return simplicial && complete; }
};

class FanNotProjectiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bug-signalling consistency failure rather than a mathematical outcome.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Region { all, mov };

Cone eff_cone(const WMatrix& q);
Cone mov_cone(const WMatrix& q);
Cone column_cone(const IntMatrix& q, const IndexSet& cols);
IndexSet complement(const IndexSet& s, std::size_t total);

/// Canonical id: primitive generators joined as "a,b,c/d,e,f/...".
std::string chamber_id(const Cone& c);

/// Chamber containing a point that lies on no wall of the arrangement.
Chamber chamber_at(const WMatrix& q, std::span<const Integer> x);

/// All chambers inside the region, sorted by generator list, each certified
/// to equal the intersection of its bunch.
std::vector<Chamber> enumerate_chambers(const WMatrix& q, Region region);

/// Finds by canonical id or by alias g1..gK (1-based position in the list).
const Chamber& find_chamber(const std::vector<Chamber>& chambers, const std::string& key);
std::optional<std::size_t> chamber_index(const std::vector<Chamber>& chambers, const std::string& key);

Fan fan_from_chamber(const FMatrix& v, const WMatrix& q, const Chamber& gamma);
Chamber chamber_from_fan(const FMatrix& v, const WMatrix& q, const Fan& fan);
FanReport verify_fan(const IntMatrix& v, const std::vector<IndexSet>& cones);
/// Smooth iff every maximal cone of the associated fan is unimodular.
bool is_smooth_chamber(const FMatrix& v, const WMatrix& q, const Chamber& gamma);

/// Inward normal (w.r.t. a) of the common facet, if a and b share one.
std::optional<IntVector> shared_facet(const Chamber& a, const Chamber& b);

/// A point of the relative interior of c on none of the given hyperplanes,
/// except those containing c entirely.
IntVector generic_relint_point(const Cone& c, std::span<const IntVector> walls);

}  // namespace galefan
