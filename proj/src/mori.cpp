#include "galefan/mori.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace galefan {

PrimitiveRelation primitive_relation(const IntMatrix& v, const std::vector<IndexSet>& fan_cones, const IndexSet& p) {
  const std::size_t n = v.rows(), w = v.cols();
  IntVector vp(n, Integer(0));
  for (std::size_t j : p)
    for (std::size_t i = 0; i < n; ++i) vp[i] += v(i, j);

  PrimitiveRelation out;
  bool located = is_zero(vp);
  for (std::size_t c = 0; c < fan_cones.size() && !located; ++c) {
    const IndexSet& cone = fan_cones[c];
    RatVector coef = solve_exact(v.select_columns(cone), to_rational(vp));
    if (std::any_of(coef.begin(), coef.end(), [](const Rational& x) { return x < 0; })) continue;
    for (std::size_t k = 0; k < cone.size(); ++k)
      if (coef[k] > 0) {
        out.sigma.push_back(cone[k]);
        out.coeffs.push_back(coef[k]);
      }
    located = true;
  }
  if (!located) throw ConsistencyError("v_P lies in no cone of the fan");

  RatVector rel(w, Rational(0));
  for (std::size_t j : p) rel[j] += 1;
  for (std::size_t k = 0; k < out.sigma.size(); ++k) rel[out.sigma[k]] -= out.coeffs[k];
  out.scale = lcm_of_denominators(rel);
  out.relation.resize(w);
  for (std::size_t j = 0; j < w; ++j) {
    Rational s = rel[j] * out.scale;
    out.relation[j] = s.get_num();
  }
  return out;
}

IntVector numerical_class(const IntMatrix& q, const IntVector& rz) {
  RatVector sol;
  try {
    sol = solve_exact(q.transpose(), to_rational(rz));
  } catch (const NoSolutionError&) {
    throw NotInLatticeError("relation is not in the row space of Q");
  }
  IntVector n(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (sol[i].get_den() != 1) throw NotInLatticeError("relation is not in the row lattice of Q");
    n[i] = sol[i].get_num();
  }
  return n;
}

IntVector support_hyperplane(const IntVector& n_class) { return sign_normalized(n_class); }

std::vector<PrimitiveCollection> enumerate_primitive_collections(const FMatrix& v, const WMatrix& q,
                                                                 const Chamber& gamma) {
  const std::size_t w = q.m.cols(), n = v.n;
  std::map<IndexSet, bool> contained;  // gamma ⊆ <Q^S>
  auto inside = [&](const IndexSet& s) {
    auto it = contained.find(s);
    if (it != contained.end()) return it->second;
    bool res = column_cone(q.m, complement(s, w)).contains(gamma.cone);
    contained.emplace(s, res);
    return res;
  };

  std::vector<IndexSet> found;
  // Level-wise: S of size k is examined only if every (k-1)-subset is contained.
  std::vector<IndexSet> level{{}};
  for (std::size_t k = 1; k <= n + 1 && !level.empty(); ++k) {
    std::set<IndexSet> candidates;
    for (const auto& s : level)
      for (std::size_t j = (s.empty() ? 0 : s.back() + 1); j < w; ++j) {
        IndexSet t = s;
        t.push_back(j);
        candidates.insert(std::move(t));
      }
    std::vector<IndexSet> next;
    for (const auto& p : candidates) {
      bool all_sub = true;
      for (std::size_t i = 0; i < p.size() && all_sub; ++i) {
        IndexSet sub = p;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
        all_sub = inside(sub);
      }
      if (!all_sub) continue;
      if (inside(p)) {
        next.push_back(p);
      } else if (k >= 2) {
        found.push_back(p);
      }
    }
    level = std::move(next);
  }

  std::vector<IndexSet> cones;
  for (const auto& j : gamma.bunch) cones.push_back(complement(j, w));
  std::vector<PrimitiveCollection> out;
  for (const auto& p : found) {
    PrimitiveRelation rel = primitive_relation(v.m, cones, p);
    PrimitiveCollection pc;
    pc.indices = p;
    pc.relation = rel.relation;
    pc.scale = rel.scale;
    pc.sigma = rel.sigma;
    pc.coeffs = rel.coeffs;
    pc.n_class = numerical_class(q.m, rel.relation);
    pc.support_normal = support_hyperplane(pc.n_class);
    pc.nef = std::all_of(pc.relation.begin(), pc.relation.end(), [](const Integer& x) { return x >= 0; });
    out.push_back(std::move(pc));
  }
  std::sort(out.begin(), out.end(), [](const PrimitiveCollection& a, const PrimitiveCollection& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
    return a.indices < b.indices;
  });
  return out;
}

Cone mori_cone(const std::vector<PrimitiveCollection>& collections, std::size_t r) {
  std::vector<IntVector> gens;
  for (const auto& pc : collections) gens.push_back(pc.n_class);
  return Cone::from_generators(r, gens);
}

Cone mori_cone(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  return mori_cone(enumerate_primitive_collections(v, q, gamma), q.r);
}

bool nef_cone_check(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  return mori_cone(v, q, gamma).dual() == gamma.cone;
}

IntVector anticanonical(const WMatrix& q) {
  IntVector k(q.r, Integer(0));
  for (std::size_t i = 0; i < q.r; ++i)
    for (std::size_t j = 0; j < q.m.cols(); ++j) k[i] += q.m(i, j);
  return k;
}

AnticanonicalReport anticanonical_position(const WMatrix& q, const Chamber& gamma) {
  AnticanonicalReport rep;
  rep.cls = anticanonical(q);
  rep.ample = gamma.cone.in_relint(rep.cls);
  rep.nef = gamma.cone.contains(rep.cls);
  rep.big = eff_cone(q).in_relint(rep.cls);
  rep.on_boundary = rep.nef && !rep.ample;
  rep.outside = !rep.nef;
  if (rep.ample) {
    rep.verdict = "fano";
  } else if (rep.nef && rep.big) {
    rep.verdict = "weak_fano";
  } else {
    rep.verdict = "neither";
  }
  return rep;
}

}  // namespace galefan
