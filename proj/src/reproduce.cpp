#include "galefan/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "galefan/classify.hpp"
#include "galefan/golden.hpp"
#include "galefan/search.hpp"

namespace galefan {

bool Reproduction::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

// Runs one check; an exception counts as a failure with its message as detail.
void run(Reproduction& rep, const std::string& name, const std::function<bool(std::string&)>& body) {
  Check c{name, false, ""};
  try {
    c.passed = body(c.detail);
  } catch (const std::exception& e) {
    c.detail = std::string("exception: ") + e.what();
  }
  rep.checks.push_back(std::move(c));
}

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string show(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::optional<std::size_t> find_by_generators(const std::vector<Chamber>& ch, const std::vector<IntVector>& gens) {
  auto g = sorted(gens);
  for (std::size_t i = 0; i < ch.size(); ++i)
    if (ch[i].cone.rays() == g) return i;
  return std::nullopt;
}

IntVector inward_normal_through(const Chamber& c, std::span<const IntVector> pts) {
  auto comp = orthogonal_complement(pts, c.cone.ambient_dim());
  if (comp.size() != 1) throw std::runtime_error("points do not span a hyperplane");
  IntVector n = primitive(comp[0]);
  if (!std::all_of(c.cone.rays().begin(), c.cone.rays().end(), [&](const IntVector& x) { return dot(n, x) >= 0; }))
    for (auto& x : n) x = -x;
  return n;
}

const HyperplaneStatus* status_for(const BorderingStatus& st, const IntVector& normal) {
  for (const auto& h : st.hyperplanes)
    if (h.normal == normal) return &h;
  return nullptr;
}

}  // namespace

Reproduction reproduce_ex1() {
  Reproduction rep{"ex1", {}, {}};
  const FMatrix v = require_f(golden::ex1_v());
  const WMatrix q = gale_dual_of_f(v);
  run(rep, "gale dual of V equals the reference Q", [&](std::string&) { return q.m == golden::ex1_q(); });
  const auto chambers = enumerate_chambers(q, Region::mov);
  run(rep, "two chambers, both smooth", [&](std::string& d) {
    d = std::to_string(chambers.size()) + " chambers";
    return chambers.size() == 2 &&
           std::all_of(chambers.begin(), chambers.end(), [](const Chamber& c) { return c.smooth.value_or(false); });
  });
  if (chambers.size() != 2) return rep;

  // The maxbord chamber plays the role of gamma_1.
  const IntVector h2{0, 1, 0}, h3{0, 0, 1};
  auto maxbord_both = [&](const Chamber& c) {
    auto st = bordering_status(q, c);
    auto* a = status_for(st, h2);
    auto* b = status_for(st, h3);
    return a && b && a->kind == BorderKind::maxbord && b->kind == BorderKind::maxbord;
  };
  const std::size_t i1 = maxbord_both(chambers[0]) ? 0 : 1;
  const Chamber& g1 = chambers[i1];
  const Chamber& g2 = chambers[1 - i1];
  run(rep, "gamma_1 maxbord w.r.t. x2=0 and x3=0", [&](std::string& d) {
    d = g1.id;
    return maxbord_both(g1);
  });
  run(rep, "gamma_2 intbord and not maxbord w.r.t. x2=0 and x3=0", [&](std::string& d) {
    d = g2.id;
    auto st = bordering_status(q, g2);
    auto* a = status_for(st, h2);
    auto* b = status_for(st, h3);
    return a && b && a->kind == BorderKind::intbord && b->kind == BorderKind::intbord;
  });
  run(rep, "blow-down of gamma_2 along the plane through q3, q6 gives the reference V', Q'", [&](std::string& d) {
    const IntVector pts[] = {q.m.column(2), q.m.column(5)};
    IntVector hp = inward_normal_through(g2, pts);
    Contraction c = contract_divisor(v, q, g2, hp);
    d = "H' normal " + show(hp) + ", contracted column " + std::to_string(c.contracted_index + 1);
    return c.contracted_index == 3 && c.v.m == golden::ex1_contracted_v() && c.q.m == golden::ex1_contracted_q();
  });
  run(rep, "gamma_1 is a tower of two projective bundles", [&](std::string& d) {
    auto r = classification_report(v, q, g1);
    d = r.case_label;
    return r.case_label == "double_ptb_tower";
  });
  run(rep, "gamma_2 is a fibrational contraction with exceptional divisor D4", [&](std::string& d) {
    auto r = classification_report(v, q, g2);
    d = r.case_label;
    return r.case_label == "fibrational_contraction" && !r.contraction_chain.empty() &&
           r.contraction_chain[0].kind == "blow-down" && r.contraction_chain[0].indices == IndexSet{3};
  });
  rep.summary.push_back("2 chambers / 2 smooth / gamma_1 double PTB tower, gamma_2 blow-down of D4");
  return rep;
}

Reproduction reproduce_ex2() {
  Reproduction rep{"ex2", {}, {}};
  const WMatrix q = require_w(golden::ex2_q());
  const FMatrix v = gale_dual_of_w(q);
  run(rep, "gale dual of Q equals the reference V", [&](std::string&) { return v.m == golden::ex2_v(); });
  const auto chambers = enumerate_chambers(q, Region::mov);
  run(rep, "three chambers", [&](std::string& d) {
    d = std::to_string(chambers.size());
    return chambers.size() == 3;
  });
  std::vector<std::size_t> totally, single, edge;
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    auto st = bordering_status(q, chambers[i]);
    if (st.totally_maxbord)
      totally.push_back(i);
    else if (st.kind == BorderKind::maxbord)
      single.push_back(i);
    else
      edge.push_back(i);
  }
  run(rep, "gamma_1 totally maxbord", [&](std::string& d) {
    d = std::to_string(totally.size()) + " such chambers";
    return totally.size() == 1;
  });
  run(rep, "gamma_3 maxbord", [&](std::string& d) {
    d = std::to_string(single.size()) + " such chambers";
    return single.size() == 1;
  });
  run(rep, "gamma_2 meets a facet of <Q> in the ray <q3>", [&](std::string& d) {
    if (edge.size() != 1) return false;
    const Chamber& g2 = chambers[edge[0]];
    auto st = bordering_status(q, g2);
    d = g2.id;
    bool q3 = false;
    for (const auto& h : st.hyperplanes) {
      if (h.dim != 1) return false;
      q3 = q3 || g2.cone.slice(h.normal).rays() == std::vector<IntVector>{q.m.column(2)};
    }
    return st.kind != BorderKind::nonbordering && q3;
  });
  rep.summary.push_back("3 chambers / 1 totally maxbord / 1 maxbord / 1 bordering along <q3>");
  return rep;
}

Reproduction reproduce_cex4(const std::optional<IntMatrix>& input) {
  Reproduction rep{"cex4", {}, {}};
  const WMatrix q = require_w(input ? *input : golden::cex_q());
  const FMatrix v = gale_dual_of_w(q);
  run(rep, "weight matrix is the reference Q", [&](std::string&) { return q.m == golden::cex_q(); });
  run(rep, "gale duality between the reference V and Q", [&](std::string&) {
    return v.m == golden::cex_v() && gale_dual_of_f(require_f(golden::cex_v())).m == golden::cex_q();
  });
  const auto chambers = enumerate_chambers(q, Region::mov);
  const auto golden_ch = golden::cex_chambers();
  std::vector<std::optional<std::size_t>> pos;
  for (const auto& g : golden_ch) {
    std::vector<IntVector> gens;
    for (const auto& nm : g.generators) gens.push_back(golden::cex_vec(nm));
    pos.push_back(find_by_generators(chambers, gens));
  }
  std::size_t smooth = 0;
  for (const auto& c : chambers) smooth += c.smooth.value_or(false) ? 1 : 0;
  run(rep, "ten chambers", [&](std::string& d) {
    d = std::to_string(chambers.size());
    return chambers.size() == 10;
  });
  run(rep, "generators match the reference chambers", [&](std::string& d) {
    for (std::size_t k = 0; k < pos.size(); ++k)
      if (!pos[k]) d += "gamma_" + std::to_string(k + 1) + " missing; ";
    return std::all_of(pos.begin(), pos.end(), [](const auto& p) { return p.has_value(); });
  });
  const bool all_found = std::all_of(pos.begin(), pos.end(), [](const auto& p) { return p.has_value(); });
  if (!all_found || chambers.size() != 10) return rep;
  auto ch = [&](int k) -> const Chamber& { return chambers[*pos[k - 1]]; };

  run(rep, "smooth flags match (gamma_4, gamma_6 singular)", [&](std::string& d) {
    d = std::to_string(smooth) + " smooth";
    for (std::size_t k = 0; k < 10; ++k)
      if (chambers[*pos[k]].smooth != golden_ch[k].smooth) return false;
    return is_smooth_chamber(v, q, ch(10)) && !is_smooth_chamber(v, q, ch(4)) && !is_smooth_chamber(v, q, ch(6));
  });
  run(rep, "Mov = <q3, q4, q6, q7, w1>", [&](std::string&) {
    std::vector<IntVector> gens;
    for (const auto& nm : golden::cex_mov()) gens.push_back(golden::cex_vec(nm));
    return mov_cone(q).rays() == sorted(gens);
  });
  run(rep, "fan of gamma_10 has the 18 reference maximal cones", [&](std::string& d) {
    Fan f = fan_from_chamber(v, q, ch(10));
    std::set<IndexSet> got(f.cones.begin(), f.cones.end()), want;
    for (const auto& c : golden::cex_sigma10()) {
      IndexSet s;
      for (std::size_t j : c) s.push_back(j - 1);
      std::sort(s.begin(), s.end());
      want.insert(s);
    }
    d = std::to_string(got.size()) + " cones";
    return got == want && want.size() == 18;
  });
  run(rep, "gamma_10 meets the boundary of <Q> only at 0", [&](std::string&) {
    return bordering_status(q, ch(10)).kind == BorderKind::nonbordering;
  });
  auto pcs = enumerate_primitive_collections(v, q, ch(10));
  Cone mori = mori_cone(pcs, q.r);
  run(rep, "Mori cone of gamma_10 generated by the rows of G10^-1", [&](std::string&) {
    return mori.rays() == sorted(golden::cex_g10_inverse().row_vectors());
  });
  run(rep, "four extremal relations match and sum to v6+v7+v8", [&](std::string&) {
    std::vector<IntVector> rels;
    for (const auto& r : mori.rays()) rels.push_back(vec_mat(r, q.m));
    IntVector sum(q.m.cols(), Integer(0));
    for (const auto& r : rels)
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += r[j];
    auto p678 = std::find_if(pcs.begin(), pcs.end(), [](const PrimitiveCollection& pc) { return pc.indices == IndexSet{5, 6, 7}; });
    return sorted(rels) == sorted(golden::cex_g10_relations()) && p678 != pcs.end() && sum == p678->relation;
  });
  run(rep, "anticanonical class (4,4,6,3) nef, big, not ample", [&](std::string& d) {
    auto a = anticanonical_position(q, ch(10));
    d = a.verdict;
    return a.cls == golden::cex_anticanonical() && a.on_boundary && a.big && !a.ample && a.verdict == "weak_fano";
  });
  for (const auto& w : golden::cex_walls()) {
    run(rep, "wall relation gamma_" + std::to_string(w.from) + " -> gamma_" + std::to_string(w.to), [&](std::string& d) {
      WallCrossing wc = wall_crossing(q, ch(w.from), ch(w.to));
      d = show(wc.normal) + " " + show(wc.relation);
      return wc.normal == w.normal && wc.relation == w.relation;
    });
  }
  run(rep, "flip path gamma_1 -> gamma_10 has length 3 with both reference routes", [&](std::string& d) {
    FlipPath fp = flip_path(q, chambers, *pos[0], *pos[9]);
    std::set<std::vector<std::size_t>> routes{fp.chambers};
    routes.insert(fp.alternatives.begin(), fp.alternatives.end());
    d = std::to_string(fp.crossings.size()) + " crossings, " + std::to_string(routes.size()) + " shortest routes";
    return fp.crossings.size() == 3 && routes.count({*pos[0], *pos[2], *pos[6], *pos[9]}) &&
           routes.count({*pos[0], *pos[1], *pos[8], *pos[9]});
  });
  run(rep, "base of the fibration of gamma_1 is the reference Q', V'", [&](std::string&) {
    BaseExtraction b = extract_ptb_base(v, q, ch(1), IndexSet{5, 6, 7});
    return b.q.m == golden::cex_base_q() && b.v.m == golden::cex_base_v();
  });
  run(rep, "gamma_10 classified as interior-nef", [&](std::string& d) {
    auto r = classification_report(v, q, ch(10));
    d = r.case_label;
    return r.case_label == "counterexample_interior_nef";
  });
  rep.summary.push_back(std::to_string(chambers.size()) + " chambers / " + std::to_string(smooth) +
                        " smooth / gamma_10 interior-nef (" + ch(10).id + ")");
  return rep;
}

Reproduction reproduce_qs(long s) {
  Reproduction rep{"qs", {}, {}};
  const WMatrix q = qs_family(s);
  const FMatrix v = gale_dual_of_w(q);
  const auto chambers = enumerate_chambers(q, Region::mov);
  const auto golden_ch = golden::cex_chambers();
  run(rep, "ten chambers", [&](std::string& d) {
    d = std::to_string(chambers.size());
    return chambers.size() == 10;
  });
  std::optional<std::size_t> g10;
  run(rep, "same chambers and smooth pattern as s=1", [&](std::string& d) {
    for (std::size_t k = 0; k < golden_ch.size(); ++k) {
      std::vector<IntVector> gens;
      for (const auto& nm : golden_ch[k].generators) gens.push_back(golden::cex_vec(nm));
      auto p = find_by_generators(chambers, gens);
      if (!p) {
        d = "gamma_" + std::to_string(k + 1) + " missing";
        return false;
      }
      if (k == 9) g10 = p;
      if (chambers[*p].smooth != golden_ch[k].smooth) return false;
    }
    return true;
  });
  if (!g10) return rep;
  run(rep, "gamma_10 smooth and nonbordering", [&](std::string&) {
    auto interior = interior_smooth_chambers(v, q);
    return interior.size() == 1 && interior[0].id == chambers[*g10].id;
  });
  if (s >= 2)
    run(rep, "anticanonical class outside gamma_10", [&](std::string& d) {
      auto a = anticanonical_position(q, chambers[*g10]);
      d = show(a.cls);
      return a.outside;
    });
  rep.summary.push_back("s=" + std::to_string(s) + ": n=" + std::to_string(v.n) + ", " +
                        std::to_string(chambers.size()) + " chambers");
  return rep;
}

}  // namespace galefan
