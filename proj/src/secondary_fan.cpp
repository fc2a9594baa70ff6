#include "galefan/secondary_fan.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace galefan {

namespace {

std::vector<IndexSet> k_subsets(std::size_t m, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > m) return out;
  IndexSet cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<IntVector> wall_normals(const std::vector<ColumnCone>& cones) {
  std::vector<IntVector> walls;
  for (const auto& c : cones)
    for (const auto& n : c.normals) walls.push_back(sign_normalized(n));
  std::sort(walls.begin(), walls.end());
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
  return walls;
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

Chamber chamber_from_bunch(std::size_t r, const std::vector<const ColumnCone*>& bunch) {
  std::vector<IntVector> ineqs;
  for (const ColumnCone* c : bunch) ineqs.insert(ineqs.end(), c->normals.begin(), c->normals.end());
  Chamber ch;
  ch.cone = Cone::from_inequalities(r, ineqs);
  for (const ColumnCone* c : bunch) ch.bunch.push_back(c->cols);
  std::sort(ch.bunch.begin(), ch.bunch.end());
  ch.id = chamber_id(ch.cone);
  return ch;
}

// Q-minor smoothness; equals the V-minor test for cotorsion-free duals.
bool unimodular_bunch(const IntMatrix& q, const std::vector<IndexSet>& bunch) {
  for (const auto& j : bunch)
    if (abs(det(q.select_columns(j))) != 1) return false;
  return true;
}

}  // namespace

bool ColumnCone::contains_interior(std::span<const Integer> x) const {
  for (const auto& n : normals)
    if (dot(n, x) <= 0) return false;
  return true;
}

std::vector<ColumnCone> simplicial_column_cones(const IntMatrix& q) {
  std::vector<ColumnCone> out;
  const std::size_t r = q.rows();
  for (auto& j : k_subsets(q.cols(), r)) {
    IntMatrix g = q.select_columns(j);
    Integer d = det(g);
    if (d == 0) continue;
    IntMatrix adj = adjugate(g);
    ColumnCone c;
    c.cols = j;
    c.det = d;
    for (std::size_t k = 0; k < r; ++k) {
      IntVector row = adj.row(k);
      if (d < 0) row = negated(std::move(row));
      c.normals.push_back(primitive(std::move(row)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

Cone column_cone(const IntMatrix& q, const IndexSet& cols) {
  std::vector<IntVector> gens;
  for (std::size_t j : cols) gens.push_back(q.column(j));
  return Cone::from_generators(q.rows(), gens);
}

IndexSet complement(const IndexSet& s, std::size_t total) {
  IndexSet out;
  for (std::size_t i = 0; i < total; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

Cone eff_cone(const WMatrix& q) { return Cone::from_generators(q.r, q.m.column_vectors()); }

Cone mov_cone(const WMatrix& q) {
  const std::size_t w = q.m.cols();
  std::optional<Cone> mov;
  for (std::size_t i = 0; i < w; ++i) {
    IndexSet rest = complement({i}, w);
    Cone c = column_cone(q.m, rest);
    mov = mov ? mov->intersect(c) : c;
  }
  return *mov;
}

std::string chamber_id(const Cone& c) {
  std::string s;
  for (std::size_t i = 0; i < c.rays().size(); ++i) {
    if (i) s += '/';
    const auto& v = c.rays()[i];
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ',';
      s += v[k].get_str();
    }
  }
  return s;
}

IntVector generic_relint_point(const Cone& c, std::span<const IntVector> walls) {
  const auto& rays = c.rays();
  std::vector<const IntVector*> active;
  for (const auto& h : walls)
    if (std::any_of(rays.begin(), rays.end(), [&](const IntVector& g) { return dot(h, g) != 0; }))
      active.push_back(&h);
  for (long t = 1;; ++t) {
    IntVector x(c.ambient_dim(), Integer(0));
    Integer w = 1;
    for (const auto& g : rays) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * g[i];
      w *= t;
    }
    if (std::all_of(active.begin(), active.end(), [&](const IntVector* h) { return dot(*h, x) != 0; })) return x;
  }
}

Chamber chamber_at(const WMatrix& q, std::span<const Integer> x) {
  auto cones = simplicial_column_cones(q.m);
  std::vector<const ColumnCone*> bunch;
  for (const auto& c : cones)
    if (c.contains_interior(x)) bunch.push_back(&c);
  if (bunch.empty()) throw std::invalid_argument("point lies outside the effective cone");
  Chamber ch = chamber_from_bunch(q.r, bunch);
  ch.smooth = unimodular_bunch(q.m, ch.bunch);
  ch.in_mov = mov_cone(q).contains(ch.cone);
  return ch;
}

std::vector<Chamber> enumerate_chambers(const WMatrix& q, Region region) {
  const std::size_t r = q.r;
  const auto cones = simplicial_column_cones(q.m);
  const auto walls = wall_normals(cones);
  const Cone mov = mov_cone(q);
  const Cone area = region == Region::mov ? mov : eff_cone(q);
  if (!area.is_full_dimensional()) return {};

  auto locate = [&](const IntVector& x) {
    std::vector<const ColumnCone*> bunch;
    for (const auto& c : cones)
      if (c.contains_interior(x)) bunch.push_back(&c);
    Chamber ch = chamber_from_bunch(r, bunch);
    // Certification: the bunch is exactly the set of <Q_J> containing the
    // cell, and the cell is full-dimensional.
    if (!ch.cone.is_full_dimensional()) throw ConsistencyError("chamber is not full-dimensional");
    for (const auto& c : cones) {
      bool inside = std::all_of(c.normals.begin(), c.normals.end(), [&](const IntVector& n) {
        return std::all_of(ch.cone.rays().begin(), ch.cone.rays().end(),
                           [&](const IntVector& g) { return dot(n, g) >= 0; });
      });
      if (inside != std::binary_search(ch.bunch.begin(), ch.bunch.end(), c.cols))
        throw ConsistencyError("bunch certification failed for chamber " + ch.id);
    }
    ch.smooth = unimodular_bunch(q.m, ch.bunch);
    ch.in_mov = mov.contains(ch.cone);
    return ch;
  };

  std::map<std::string, Chamber> found;
  std::deque<std::string> queue;
  {
    Chamber first = locate(generic_relint_point(area, walls));
    queue.push_back(first.id);
    found.emplace(first.id, std::move(first));
  }
  while (!queue.empty()) {
    const Chamber cur = found.at(queue.front());
    queue.pop_front();
    for (const auto& a : cur.cone.facets()) {
      Cone facet = cur.cone.slice(a);
      IntVector c = generic_relint_point(facet, walls);
      // Step across the facet far enough in, but not past any other wall.
      Integer scale = 1;
      for (const auto& h : walls) {
        Integer hc = dot(h, c);
        if (hc == 0) continue;
        Integer ha = abs(dot(h, a)), q1 = ha / abs(hc) + 1;
        if (q1 > scale) scale = q1;
      }
      IntVector y(r);
      for (std::size_t i = 0; i < r; ++i) y[i] = scale * c[i] - a[i];
      if (!area.contains(y)) continue;
      Chamber next = locate(y);
      if (found.count(next.id)) continue;
      queue.push_back(next.id);
      found.emplace(next.id, std::move(next));
    }
  }
  std::vector<Chamber> out;
  for (auto& [id, ch] : found) out.push_back(std::move(ch));
  std::sort(out.begin(), out.end(), [](const Chamber& x, const Chamber& y) { return x.cone.rays() < y.cone.rays(); });
  return out;
}

std::optional<std::size_t> chamber_index(const std::vector<Chamber>& chambers, const std::string& key) {
  for (std::size_t i = 0; i < chambers.size(); ++i)
    if (chambers[i].id == key) return i;
  if (key.size() > 1 && key[0] == 'g' &&
      std::all_of(key.begin() + 1, key.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    std::size_t k = std::stoul(key.substr(1));
    if (k >= 1 && k <= chambers.size()) return k - 1;
  }
  return std::nullopt;
}

const Chamber& find_chamber(const std::vector<Chamber>& chambers, const std::string& key) {
  auto i = chamber_index(chambers, key);
  if (!i) throw std::invalid_argument("unknown chamber: " + key);
  return chambers[*i];
}

FanReport verify_fan(const IntMatrix& v, const std::vector<IndexSet>& cones) {
  FanReport rep;
  const std::size_t n = v.rows();
  for (const auto& c : cones) {
    if (c.size() != n) {
      rep.simplicial = false;
      rep.problems.push_back("cone of wrong size");
      rep.dets.push_back(0);
      continue;
    }
    Integer d = abs(det(v.select_columns(c)));
    rep.dets.push_back(d);
    if (d == 0) {
      rep.simplicial = false;
      rep.problems.push_back("degenerate cone");
    }
  }
  if (!rep.simplicial) {
    rep.complete = false;
    return rep;
  }
  // Facet pairing: each facet lies in exactly two cones, on opposite sides.
  std::map<IndexSet, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t ci = 0; ci < cones.size(); ++ci)
    for (std::size_t k = 0; k < n; ++k) {
      IndexSet f = cones[ci];
      std::size_t opposite = f[k];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
      facets[f].push_back({ci, opposite});
    }
  for (const auto& [f, owners] : facets) {
    if (owners.size() != 2) {
      rep.complete = false;
      rep.problems.push_back("facet not shared by exactly two cones");
      continue;
    }
    std::vector<IntVector> fv;
    for (std::size_t j : f) fv.push_back(v.column(j));
    auto normal = orthogonal_complement(fv, n);
    if (normal.size() != 1) {
      rep.complete = false;
      continue;
    }
    Integer s1 = dot(normal[0], v.column(owners[0].second));
    Integer s2 = dot(normal[0], v.column(owners[1].second));
    if (sgn(s1) * sgn(s2) >= 0) {
      rep.complete = false;
      rep.problems.push_back("adjacent cones overlap");
    }
  }
  if (!rep.complete) return rep;
  // Degree one: a generic point lies in exactly one cone.
  for (long t = 2;; ++t) {
    IntVector x(n);
    Integer p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = p * ((i % 2) ? -1 : 1);
      p *= t;
    }
    std::size_t hits = 0;
    bool generic = true;
    for (const auto& c : cones) {
      RatVector coef = solve_exact(v.select_columns(c), to_rational(x));
      bool pos = true;
      for (const auto& a : coef) {
        if (a == 0) generic = false;
        if (a <= 0) pos = false;
      }
      if (pos) ++hits;
    }
    if (!generic) continue;
    if (hits != 1) {
      rep.complete = false;
      rep.problems.push_back("cones cover the space " + std::to_string(hits) + " times");
    }
    break;
  }
  return rep;
}

Fan fan_from_chamber(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  Fan f;
  f.v = v.m;
  const std::size_t w = q.m.cols();
  for (const auto& j : gamma.bunch) f.cones.push_back(complement(j, w));
  std::sort(f.cones.begin(), f.cones.end());
  FanReport rep = verify_fan(v.m, f.cones);
  if (!rep.ok()) throw ConsistencyError("fan of chamber " + gamma.id + " fails verification");
  f.complete = rep.complete;
  f.simplicial = rep.simplicial;
  return f;
}

Chamber chamber_from_fan(const FMatrix& v, const WMatrix& q, const Fan& fan) {
  const std::size_t w = q.m.cols();
  auto all = simplicial_column_cones(q.m);
  std::vector<const ColumnCone*> bunch;
  for (const auto& i : fan.cones) {
    IndexSet j = complement(i, w);
    auto it = std::find_if(all.begin(), all.end(), [&](const ColumnCone& c) { return c.cols == j; });
    if (it == all.end()) throw FanNotProjectiveError("cone complement is not a simplicial column cone");
    bunch.push_back(&*it);
  }
  if (bunch.empty()) throw FanNotProjectiveError("empty fan");
  Chamber ch = chamber_from_bunch(q.r, bunch);
  if (!ch.cone.is_full_dimensional()) throw FanNotProjectiveError("bunch intersection is not full-dimensional");
  for (const auto& c : all) {
    bool inside = true;
    for (const auto& g : ch.cone.rays())
      if (!std::all_of(c.normals.begin(), c.normals.end(), [&](const IntVector& n) { return dot(n, g) >= 0; }))
        inside = false;
    if (inside != std::binary_search(ch.bunch.begin(), ch.bunch.end(), c.cols))
      throw FanNotProjectiveError("fan is not the fan of its nef cone");
  }
  ch.smooth = is_smooth_chamber(v, q, ch);
  ch.in_mov = mov_cone(q).contains(ch.cone);
  return ch;
}

bool is_smooth_chamber(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  const std::size_t w = q.m.cols();
  for (const auto& j : gamma.bunch)
    if (abs(det(v.m.select_columns(complement(j, w)))) != 1) return false;
  return true;
}

std::optional<IntVector> shared_facet(const Chamber& a, const Chamber& b) {
  const std::size_t r = a.cone.ambient_dim();
  for (const auto& f : a.cone.facets()) {
    IntVector nf = negated(f);
    if (!std::binary_search(b.cone.facets().begin(), b.cone.facets().end(), nf)) continue;
    if (a.cone.intersect(b.cone).dim() == r - 1 && a.cone.slice(f) == b.cone.slice(nf)) return f;
  }
  return std::nullopt;
}

}  // namespace galefan
