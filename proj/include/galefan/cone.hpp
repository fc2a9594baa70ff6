#pragma once

// Rational polyhedral cones with both descriptions kept in canonical form.

#include <cstddef>
#include <span>
#include <vector>

#include "galefan/exact_linalg.hpp"

namespace galefan {

/// Output of the double description method: C = span(lineality) + cone(rays).
struct DDResult {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// Motzkin double description for {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.
DDResult double_description(std::size_t dim, std::span<const IntVector> ineqs,
                            std::span<const IntVector> eqs = {});

/// A cone C = L + cone(rays) = {x : f.x >= 0, e.x = 0}.
///
/// Canonical form: lineality and equations are RREF-primitive bases; rays are
/// projected orthogonally to the lineality space, facets orthogonally to the
/// equations; both lists are primitive and sorted lexicographically. Two
/// cones are equal iff their canonical forms are equal.
class Cone {
 public:
  Cone() = default;

  static Cone zero(std::size_t dim);
  static Cone full(std::size_t dim);
  static Cone from_generators(std::size_t dim, std::span<const IntVector> gens,
                              std::span<const IntVector> lineality = {});
  static Cone from_inequalities(std::size_t dim, std::span<const IntVector> ineqs,
                                std::span<const IntVector> eqs = {});

  std::size_t ambient_dim() const { return dim_; }
  /// Dimension of the linear span.
  std::size_t dim() const { return dim_ - equations_.size(); }
  std::size_t lineality_dim() const { return lineality_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dimensional() const { return equations_.empty(); }
  bool is_zero() const { return dim() == 0; }

  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  /// Inward facet normals.
  const std::vector<IntVector>& facets() const { return facets_; }
  /// Basis of the orthogonal complement of the linear span.
  const std::vector<IntVector>& equations() const { return equations_; }

  bool contains(std::span<const Integer> x) const;
  bool contains(const Cone& other) const;
  bool in_relint(std::span<const Integer> x) const;

  Cone intersect(const Cone& other) const;
  /// C ∩ {normal.x = 0}.
  Cone slice(std::span<const Integer> normal) const;
  /// Dual cone {y : y.x >= 0 for all x in C}.
  Cone dual() const;
  /// All faces of dimension k, sorted.
  std::vector<Cone> faces(std::size_t k) const;
  bool is_simplicial() const { return rays_.size() + lineality_.size() == dim(); }
  /// Sum of the rays: a point of the relative interior.
  IntVector relint_point() const;

  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone& a, const Cone& b) {
    if (auto c = a.rays_ <=> b.rays_; c != 0) return c;
    return a.lineality_ <=> b.lineality_;
  }

 private:
  static Cone assemble(std::size_t dim, const DDResult& vrep, const DDResult& hrep);

  std::size_t dim_ = 0;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> equations_;
  std::vector<IntVector> facets_;
};

}  // namespace galefan
