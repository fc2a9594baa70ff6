#include "galefan/cone.hpp"

#include <algorithm>

#include <boost/dynamic_bitset.hpp>

namespace galefan {

namespace {

using Bits = boost::dynamic_bitset<>;

IntVector combine(const Integer& s, const IntVector& x, const Integer& t, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i] - t * y[i];
  return primitive(std::move(out));
}

void sort_unique(std::vector<IntVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

DDResult double_description(std::size_t dim, std::span<const IntVector> ineqs,
                            std::span<const IntVector> eqs) {
  std::vector<IntVector> rows;
  for (const auto& e : eqs) {
    if (e.size() != dim) throw DimensionError("equation length mismatch");
    if (is_zero(e)) continue;
    IntVector p = primitive(e);
    rows.push_back(p);
    for (auto& x : p) x = -x;
    rows.push_back(std::move(p));
  }
  for (const auto& a : ineqs) {
    if (a.size() != dim) throw DimensionError("inequality length mismatch");
    if (!is_zero(a)) rows.push_back(primitive(a));
  }
  sort_unique(rows);
  const std::size_t m = rows.size();

  std::vector<IntVector> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<IntVector> rays;
  std::vector<Bits> zeros;  // processed rows on which each ray is tight

  for (std::size_t k = 0; k < m; ++k) {
    const IntVector& a = rows[k];
    auto pivot = std::find_if(lin.begin(), lin.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
    if (pivot != lin.end()) {
      IntVector ls = *pivot;
      lin.erase(pivot);
      Integer s = dot(a, ls);
      if (s < 0) {
        for (auto& x : ls) x = -x;
        s = -s;
      }
      for (auto& l : lin) {
        Integer t = dot(a, l);
        if (t != 0) l = combine(s, l, t, ls);
      }
      for (std::size_t i = 0; i < rays.size(); ++i) {
        Integer t = dot(a, rays[i]);
        if (t != 0) rays[i] = combine(s, rays[i], t, ls);
        zeros[i].set(k);
      }
      Bits z(m);
      for (std::size_t i = 0; i < k; ++i) z.set(i);
      rays.push_back(std::move(ls));
      zeros.push_back(std::move(z));
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<IntVector> next;
    std::vector<Bits> next_zeros;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i]);
      if (val[i] > 0) {
        pos.push_back(i);
      } else if (val[i] < 0) {
        neg.push_back(i);
      } else {
        next.push_back(rays[i]);
        Bits z = zeros[i];
        z.set(k);
        next_zeros.push_back(std::move(z));
      }
    }
    for (std::size_t i : pos) {
      next.push_back(rays[i]);
      next_zeros.push_back(zeros[i]);
    }
    // Two rays span a 2-face iff no third ray is tight on all their common rows.
    const std::size_t need = dim >= lin.size() + 2 ? dim - lin.size() - 2 : 0;
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bits common = zeros[p] & zeros[q];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
          if (o != p && o != q && common.is_subset_of(zeros[o])) adjacent = false;
        if (!adjacent) continue;
        next.push_back(combine(val[p], rays[q], val[q], rays[p]));
        common.set(k);
        next_zeros.push_back(std::move(common));
      }
    rays = std::move(next);
    zeros = std::move(next_zeros);
  }
  return {std::move(lin), std::move(rays)};
}

Cone Cone::assemble(std::size_t dim, const DDResult& vrep, const DDResult& hrep) {
  Cone c;
  c.dim_ = dim;
  c.lineality_ = span_basis(vrep.lineality, dim);
  c.equations_ = span_basis(hrep.lineality, dim);
  for (const auto& r : vrep.rays) {
    IntVector p = project_out(r, c.lineality_);
    if (!galefan::is_zero(p)) c.rays_.push_back(std::move(p));
  }
  for (const auto& f : hrep.rays) {
    IntVector p = project_out(f, c.equations_);
    if (!galefan::is_zero(p)) c.facets_.push_back(std::move(p));
  }
  sort_unique(c.rays_);
  sort_unique(c.facets_);
  return c;
}

Cone Cone::zero(std::size_t dim) { return from_generators(dim, {}); }

Cone Cone::full(std::size_t dim) { return from_inequalities(dim, {}); }

Cone Cone::from_generators(std::size_t dim, std::span<const IntVector> gens,
                           std::span<const IntVector> lineality) {
  DDResult hrep = double_description(dim, gens, lineality);
  DDResult vrep = double_description(dim, hrep.rays, hrep.lineality);
  return assemble(dim, vrep, hrep);
}

Cone Cone::from_inequalities(std::size_t dim, std::span<const IntVector> ineqs,
                             std::span<const IntVector> eqs) {
  DDResult vrep = double_description(dim, ineqs, eqs);
  DDResult hrep = double_description(dim, vrep.rays, vrep.lineality);
  return assemble(dim, vrep, hrep);
}

bool Cone::contains(std::span<const Integer> x) const {
  if (x.size() != dim_) throw DimensionError("point dimension mismatch");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  for (const auto& r : other.rays_)
    if (!contains(r)) return false;
  for (const auto& l : other.lineality_) {
    if (!contains(l)) return false;
    IntVector m = l;
    for (auto& x : m) x = -x;
    if (!contains(m)) return false;
  }
  return true;
}

bool Cone::in_relint(std::span<const Integer> x) const {
  if (x.size() != dim_) throw DimensionError("point dimension mismatch");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) <= 0) return false;
  return true;
}

Cone Cone::intersect(const Cone& other) const {
  if (other.dim_ != dim_) throw DimensionError("cone dimension mismatch");
  std::vector<IntVector> ineqs = facets_, eqs = equations_;
  ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  return from_inequalities(dim_, ineqs, eqs);
}

Cone Cone::slice(std::span<const Integer> normal) const {
  std::vector<IntVector> eqs = equations_;
  eqs.emplace_back(normal.begin(), normal.end());
  return from_inequalities(dim_, facets_, eqs);
}

Cone Cone::dual() const {
  // Facets and rays trade places; the canonical forms line up exactly.
  Cone d;
  d.dim_ = dim_;
  d.lineality_ = equations_;
  d.rays_ = facets_;
  d.equations_ = lineality_;
  d.facets_ = rays_;
  return d;
}

std::vector<Cone> Cone::faces(std::size_t k) const {
  if (k > dim() || k < lineality_dim()) return {};
  std::vector<Cone> level{*this};
  for (std::size_t d = dim(); d > k; --d) {
    std::vector<Cone> lower;
    for (const auto& f : level)
      for (const auto& n : f.facets_) lower.push_back(f.slice(n));
    std::sort(lower.begin(), lower.end());
    lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    level = std::move(lower);
  }
  return level;
}

IntVector Cone::relint_point() const {
  IntVector s(dim_, Integer(0));
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < dim_; ++i) s[i] += r[i];
  return s;
}

}  // namespace galefan
