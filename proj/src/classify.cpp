#include "galefan/classify.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace galefan {

std::string to_string(BorderKind k) {
  switch (k) {
    case BorderKind::nonbordering: return "nonbordering";
    case BorderKind::bordering: return "bordering";
    case BorderKind::intbord: return "intbord";
    case BorderKind::maxbord: return "maxbord";
  }
  return "?";
}

namespace {

std::size_t negative_count(const WMatrix& q, const IntVector& n) {
  std::size_t k = 0;
  for (std::size_t j = 0; j < q.m.cols(); ++j)
    if (dot(n, q.m.column(j)) < 0) ++k;
  return k;
}

// Row transform T with T a = b, for a of full row rank.
RatMatrix row_transform(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix at = a.transpose();
  RatMatrix t(b.rows(), a.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    RatVector row = solve_exact(at, to_rational(b.row(i)));
    for (std::size_t k = 0; k < row.size(); ++k) t(i, k) = row[k];
  }
  return t;
}

IntVector transform_point(const RatMatrix& t, std::span<const Integer> x) {
  RatVector y(t.rows(), Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t k = 0; k < t.cols(); ++k) y[i] += t(i, k) * x[k];
  return primitive(y);
}

Chamber chamber_matching(const WMatrix& q, const Cone& target, const char* what) {
  for (auto& c : enumerate_chambers(q, Region::mov))
    if (c.cone == target) return c;
  throw ClassifyError(std::string(what) + ": image of the face is not a chamber of the new weight matrix");
}

bool is_facet_of(const Cone& c, const IntVector& n) {
  return std::find(c.facets().begin(), c.facets().end(), n) != c.facets().end();
}

}  // namespace

HyperplaneStatus hyperplane_status(const WMatrix& q, const Chamber& gamma, const IntVector& normal) {
  HyperplaneStatus hs;
  hs.normal = normal;
  Cone face = gamma.cone.slice(normal);
  hs.dim = face.dim();
  if (hs.dim == 0) return hs;
  if (hs.dim + 1 == q.r) {
    hs.kind = BorderKind::maxbord;
    return hs;
  }
  hs.kind = BorderKind::bordering;

  std::vector<IntVector> on_h;
  const Cone eff = eff_cone(q);
  for (const auto& ray : eff.rays())
    if (dot(normal, ray) == 0) on_h.push_back(ray);

  // Among certifying facets prefer a divisorial one, then one with no negative index.
  std::optional<std::pair<int, IntVector>> best;
  for (const auto& np : gamma.cone.facets()) {
    bool contains_face = std::all_of(face.rays().begin(), face.rays().end(),
                                     [&](const IntVector& x) { return dot(np, x) == 0; });
    if (!contains_face) continue;
    bool pos = false, neg = false;
    for (const auto& x : on_h) {
      Integer s = dot(np, x);
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (!(pos && neg)) continue;
    std::size_t cnt = negative_count(q, np);
    int rank = cnt == 1 ? 0 : cnt == 0 ? 1 : 2;
    if (!best || rank < best->first) best.emplace(rank, np);
  }
  if (best) {
    hs.kind = BorderKind::intbord;
    hs.h_prime = best->second;
  }
  return hs;
}

BorderingStatus bordering_status(const WMatrix& q, const Chamber& gamma) {
  BorderingStatus st;
  std::size_t maxbord = 0;
  const Cone eff = eff_cone(q);
  for (const auto& h : eff.facets()) {
    HyperplaneStatus hs = hyperplane_status(q, gamma, h);
    if (hs.dim == 0) continue;
    st.kind = std::max(st.kind, hs.kind);
    if (hs.kind == BorderKind::maxbord) ++maxbord;
    st.hyperplanes.push_back(std::move(hs));
  }
  st.totally_maxbord = maxbord >= 2;
  return st;
}

std::optional<PrimitiveCollection> find_bordering_witness(const WMatrix& q, const Chamber& gamma,
                                                          const std::vector<PrimitiveCollection>& collections) {
  const Cone eff = eff_cone(q);
  std::optional<PrimitiveCollection> best;
  std::size_t best_dim = 0;
  IntVector best_normal;
  for (const auto& pc : collections) {
    if (!pc.nef) continue;
    IntVector normal = primitive(pc.n_class);
    if (!is_facet_of(eff, normal)) continue;
    std::size_t d = gamma.cone.slice(normal).dim();
    if (d == 0) continue;
    bool better = !best || d > best_dim || (d == best_dim && normal < best_normal) ||
                  (d == best_dim && normal == best_normal && pc.indices < best->indices);
    if (better) {
      best = pc;
      best_dim = d;
      best_normal = normal;
    }
  }
  return best;
}

std::optional<PrimitiveCollection> find_bordering_witness(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  return find_bordering_witness(q, gamma, enumerate_primitive_collections(v, q, gamma));
}

BaseExtraction extract_ptb_base(const FMatrix& v, const WMatrix& q, const Chamber& gamma, const IndexSet& p) {
  const std::size_t r = q.r;
  if (r < 2) throw ClassifyError("rank one has no fibration base");
  auto pcs = enumerate_primitive_collections(v, q, gamma);
  auto it = std::find_if(pcs.begin(), pcs.end(), [&](const PrimitiveCollection& pc) { return pc.indices == p; });
  if (it == pcs.end()) throw ClassifyError("index set is not a primitive collection of this chamber");
  if (!it->nef) throw ClassifyError("primitive collection is not nef");
  IntVector normal = primitive(it->n_class);
  if (gamma.cone.slice(normal).dim() + 1 != r) throw ClassifyError("chamber is not maxbord w.r.t. the support of P");

  BaseExtraction out;
  for (std::size_t j = 0; j < q.m.cols(); ++j)
    if (dot(normal, q.m.column(j)) != 0) out.deleted.push_back(j);
  if (out.deleted != p) throw ClassifyError("columns off the support hyperplane differ from P");

  out.transform = complete_to_unimodular(normal);
  IntMatrix uq = out.transform * q.m;
  std::vector<std::size_t> top(r - 1);
  for (std::size_t i = 0; i + 1 < r; ++i) top[i] = i;
  IntMatrix q1 = uq.select_rows(top).drop_columns(p);
  IntMatrix q2;
  try {
    q2 = positive_ref(q1);
    out.q = require_w(q2);
  } catch (const std::exception& e) {
    throw ClassifyError(std::string("base weight matrix is invalid: ") + e.what() + "\n" + q1.to_string());
  }
  out.v = gale_dual_of_w(out.q);

  RatMatrix t = row_transform(q1, out.q.m);
  std::vector<IntVector> gens;
  const Cone face = gamma.cone.slice(normal);
  for (const auto& x : face.rays()) {
    IntVector y = mat_vec(out.transform, x);
    y.pop_back();
    gens.push_back(transform_point(t, y));
  }
  out.base_chamber = chamber_matching(out.q, Cone::from_generators(r - 1, gens), "extract_ptb_base");
  return out;
}

Contraction contract_divisor(const FMatrix& v, const WMatrix& q, const Chamber& gamma, const IntVector& h_prime) {
  if (!is_facet_of(gamma.cone, h_prime)) throw ClassifyError("hyperplane does not cut a facet of the chamber");
  std::vector<std::size_t> neg;
  for (std::size_t j = 0; j < q.m.cols(); ++j)
    if (dot(h_prime, q.m.column(j)) < 0) neg.push_back(j);
  if (neg.size() != 1)
    throw ClassifyError("not a divisorial contraction: " + std::to_string(neg.size()) + " negative indices");

  Contraction out;
  out.contracted_index = neg[0];
  try {
    out.v = require_f(v.m.drop_columns(neg));
  } catch (const InvalidMatrixError& e) {
    throw ClassifyError(std::string("contracted fan matrix is invalid: ") + e.what());
  }
  out.q = gale_dual_of_f(out.v);

  // Push-forward on classes: q_i -> q'_i, q_j -> 0.
  const std::size_t w = q.m.cols();
  IntMatrix target(out.q.r, w);
  for (std::size_t i = 0; i < out.q.r; ++i)
    for (std::size_t c = 0, k = 0; c < w; ++c) {
      if (c == out.contracted_index) continue;
      target(i, c) = out.q.m(i, k++);
    }
  RatMatrix push = row_transform(q.m, target);
  std::vector<IntVector> gens;
  const Cone face = gamma.cone.slice(h_prime);
  for (const auto& x : face.rays()) gens.push_back(transform_point(push, x));
  out.image_chamber = chamber_matching(out.q, Cone::from_generators(out.q.r, gens), "contract_divisor");
  return out;
}

WallCrossing wall_crossing(const WMatrix& q, const Chamber& a, const Chamber& b) {
  auto n = shared_facet(a, b);
  if (!n) throw ClassifyError("chambers " + a.id + " and " + b.id + " are not adjacent");
  WallCrossing wc;
  wc.from = a.id;
  wc.to = b.id;
  wc.normal = *n;
  wc.relation = vec_mat(*n, q.m);
  for (std::size_t j = 0; j < wc.relation.size(); ++j) {
    if (wc.relation[j] < 0) wc.contract_fwd.push_back(j);
    if (wc.relation[j] > 0) wc.contract_bwd.push_back(j);
  }
  return wc;
}

FlipPath flip_path(const WMatrix& q, const std::vector<Chamber>& chambers, std::size_t from, std::size_t to,
                   std::size_t max_alternatives) {
  const std::size_t k = chambers.size();
  if (from >= k || to >= k) throw ClassifyError("chamber index out of range");
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (shared_facet(chambers[i], chambers[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  const std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(k, unseen), parent(k, unseen);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[u])
      if (dist[w] == unseen) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      }
  }
  if (dist[to] == unseen) throw ClassifyError("chambers are not connected");

  FlipPath out;
  for (std::size_t u = to; u != unseen; u = parent[u]) out.chambers.push_back(u);
  std::reverse(out.chambers.begin(), out.chambers.end());
  for (std::size_t i = 0; i + 1 < out.chambers.size(); ++i)
    out.crossings.push_back(wall_crossing(q, chambers[out.chambers[i]], chambers[out.chambers[i + 1]]));

  // Remaining shortest routes, in lexicographic order of index sequences.
  std::vector<std::size_t> cur{from};
  std::function<void(std::size_t)> walk = [&](std::size_t u) {
    if (out.alternatives.size() >= max_alternatives || dist[u] > dist[to]) return;
    if (u == to) {
      if (cur != out.chambers) out.alternatives.push_back(cur);
      return;
    }
    for (std::size_t w : adj[u])
      if (dist[w] == dist[u] + 1 && dist[w] <= dist[to]) {
        cur.push_back(w);
        walk(w);
        cur.pop_back();
      }
  };
  walk(from);
  return out;
}

namespace {

void descend(const FMatrix& v, const WMatrix& q, const Chamber& c, ClassificationReport& rep) {
  if (q.r <= 1 || !is_smooth_chamber(v, q, c)) return;
  ClassificationReport sub = classification_report(v, q, c);
  for (auto& s : sub.contraction_chain) rep.contraction_chain.push_back(std::move(s));
}

std::string fibration_label(std::size_t n, std::size_t r) {
  if (r == 2) return "ptb_over_Pm";
  if (r == 3) return "double_ptb_tower";
  if (n == 3 && r == 4) return "threefold_cases_5_6_7";
  return "unclassified";
}

}  // namespace

ClassificationReport classification_report(const FMatrix& v, const WMatrix& q, const Chamber& gamma) {
  if (!is_smooth_chamber(v, q, gamma)) throw ClassifyError("chamber " + gamma.id + " is not smooth");
  const std::size_t n = q.n, r = q.r;
  ClassificationReport rep;
  rep.in_scope = r <= 3 || (n == 3 && r == 4);
  rep.status = bordering_status(q, gamma);
  auto pcs = enumerate_primitive_collections(v, q, gamma);
  rep.relation_count = pcs.size();
  if (r == 1) {
    rep.case_label = "projective_space";
    return rep;
  }
  rep.witness = find_bordering_witness(q, gamma, pcs);
  if (!rep.witness) {
    rep.counterexample = true;
    rep.case_label = "counterexample_interior_nef";
    return rep;
  }
  if (!rep.in_scope) {
    rep.case_label = "unclassified";
    return rep;
  }

  IntVector normal = primitive(rep.witness->n_class);
  HyperplaneStatus hs = hyperplane_status(q, gamma, normal);

  if (hs.kind == BorderKind::maxbord) {
    BaseExtraction ext = extract_ptb_base(v, q, gamma, rep.witness->indices);
    rep.case_label = fibration_label(n, r);
    rep.contraction_chain.push_back({"ptb-extraction", ext.v, ext.q, ext.base_chamber.id, ext.deleted, std::nullopt});
    descend(ext.v, ext.q, ext.base_chamber, rep);
    return rep;
  }

  // Blow-down candidates: the certifying facet first, then (threefolds of
  // rank four) any facet of gamma with a single negative index.
  std::vector<IntVector> candidates;
  if (hs.h_prime && negative_count(q, *hs.h_prime) == 1) candidates.push_back(*hs.h_prime);
  if (n == 3 && r == 4)
    for (const auto& f : gamma.cone.facets())
      if (negative_count(q, f) == 1 && (candidates.empty() || f != candidates.front())) candidates.push_back(f);
  for (const auto& f : candidates) {
    Contraction c;
    try {
      c = contract_divisor(v, q, gamma, f);
    } catch (const ClassifyError&) {
      continue;
    }
    if (!is_smooth_chamber(c.v, c.q, c.image_chamber)) continue;
    rep.case_label = r == 3 ? "fibrational_contraction" : "threefold_cases_5_6_7";
    rep.contraction_chain.push_back(
        {"blow-down", c.v, c.q, c.image_chamber.id, IndexSet{c.contracted_index}, std::nullopt});
    descend(c.v, c.q, c.image_chamber, rep);
    return rep;
  }

  if (n <= 3) throw ConsistencyError("smooth chamber " + gamma.id + " of a threefold reached the fiber-type branch");
  rep.case_label = "fiber_type_nonfibration";
  if (hs.h_prime) {
    for (const auto& other : enumerate_chambers(q, Region::mov)) {
      auto f = shared_facet(gamma, other);
      if (f && *f == *hs.h_prime) {
        WallCrossing wc = wall_crossing(q, gamma, other);
        rep.contraction_chain.push_back({"wall-crossing", v, q, other.id, wc.contract_fwd, wc});
        break;
      }
    }
  }
  return rep;
}

}  // namespace galefan
