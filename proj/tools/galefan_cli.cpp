// Command-line front end. Exit codes: 0 success, 1 negative mathematical
// outcome or bad input, 2 usage or internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "galefan/io.hpp"
#include "galefan/reproduce.hpp"

using namespace galefan;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Region parse_region(const std::string& s) { return s == "all" ? Region::all : Region::mov; }

struct Loaded {
  WMatrix q;
  FMatrix v;
  std::vector<Chamber> chambers;
};

Loaded load_w(const std::string& path, const std::string& region) {
  Loaded l;
  l.q = require_w(read_matrix_file(path));
  l.v = gale_dual_of_w(l.q);
  l.chambers = enumerate_chambers(l.q, parse_region(region));
  return l;
}

std::size_t chamber_arg(const Loaded& l, const std::string& key) {
  auto i = chamber_index(l.chambers, key);
  if (!i) throw InputError("unknown chamber: " + key);
  return *i;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// ---- reproduce -------------------------------------------------------------

int print_reproduction(const Reproduction& rep) {
  for (const auto& c : rep.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << '\n';
  for (const auto& s : rep.summary) std::cout << s << '\n';
  std::cout << rep.target << ": " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? 0 : 1;
}

// ---- hunt --------------------------------------------------------------------

json params_json(const SearchParams& p) {
  return {{"n", p.n}, {"r", p.r}, {"entry_bound", p.entry_bound}, {"seed", p.seed}};
}

constexpr std::uint64_t kBatch = 256;

int run_hunt(SearchParams p, const std::string& out_path, bool resume) {
  std::vector<std::string> kept;
  if (resume) {
    std::ifstream in(out_path);
    if (!in) throw InputError("cannot resume: " + out_path + " not found");
    std::vector<std::string> lines;
    std::string line;
    std::size_t last = 0;
    bool seen = false;
    while (std::getline(in, line)) {
      lines.push_back(line);
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) continue;
      if (j.value("type", "") == "checkpoint") {
        if (j["params"] != params_json(p)) throw InputError("checkpoint parameters differ from the command line");
        p.start_candidate = j["next_candidate"].get<std::uint64_t>();
        last = lines.size();
        seen = true;
      }
    }
    if (!seen) throw InputError("no checkpoint in " + out_path);
    kept.assign(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(last));
    p.injected.clear();
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw InputError("cannot write " + out_path);
  for (const auto& l : kept) out << l << '\n';

  std::uint64_t findings = 0, valid = 0, smooth = 0;
  const std::uint64_t budget = p.max_candidates;
  std::uint64_t next = p.start_candidate;
  bool first = true;
  while (first || next < budget) {
    SearchParams batch = p;
    batch.start_candidate = next;
    batch.max_candidates = std::min(budget, (next / kBatch + 1) * kBatch);
    if (!first) batch.injected.clear();
    HuntResult res = hunt(batch);
    for (const auto& f : res.findings) out << to_json(f, p).dump() << '\n';
    out << json{{"type", "checkpoint"}, {"next_candidate", res.next_candidate}, {"params", params_json(p)}}.dump()
        << '\n';
    out.flush();
    findings += res.findings.size();
    valid += res.valid_candidates;
    smooth += res.smooth_chambers;
    next = res.next_candidate;
    first = false;
  }
  std::cout << "candidates " << next << " valid " << valid << " smooth_chambers " << smooth << " findings " << findings
            << '\n';
  return 0;
}

// ---- plot-section ----------------------------------------------------------

std::vector<Rational> section_point(const IntVector& x) {
  Integer s = 0;
  for (const auto& e : x) s += e;
  if (s <= 0) throw std::logic_error("ray outside the positive half-space of the section");
  std::vector<Rational> p;
  for (const auto& e : x) {
    Rational q(e, s);
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

json point_json(const std::vector<Rational>& p, std::size_t coords) {
  json a = json::array();
  for (std::size_t i = 0; i < coords; ++i) a.push_back(p[i].get_str());
  return a;
}

json polygon_json(const Cone& c, std::size_t coords) {
  json a = json::array();
  for (const auto& r : c.rays()) a.push_back(point_json(section_point(r), coords));
  return a;
}

// Barycentric (a,b,c) on the simplex to the plane, for drawing only.
std::pair<double, double> to_plane(const std::vector<Rational>& p) {
  const double b = p[1].get_d(), c = p[2].get_d();
  return {b + c / 2.0, c * std::sqrt(3.0) / 2.0};
}

std::string svg_polygon(const Cone& c, const std::string& style, double scale, double pad) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : c.rays()) pts.push_back(to_plane(section_point(r)));
  double cx = 0, cy = 0;
  for (auto [x, y] : pts) cx += x, cy += y;
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](auto a, auto b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  std::ostringstream s;
  s << "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    s << (i ? " " : "") << pad + pts[i].first * scale << ',' << pad + (std::sqrt(3.0) / 2.0 - pts[i].second) * scale;
  s << "\" " << style << "/>\n";
  return s.str();
}

std::pair<double, double> svg_centroid(const Cone& c, double scale, double pad) {
  double cx = 0, cy = 0;
  for (const auto& r : c.rays()) {
    auto [x, y] = to_plane(section_point(r));
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(c.rays().size());
  cy /= static_cast<double>(c.rays().size());
  return {pad + cx * scale, pad + (std::sqrt(3.0) / 2.0 - cy) * scale};
}

int run_plot(const std::string& file, const std::string& chamber, const std::string& format, const std::string& out) {
  Loaded l = load_w(file, "mov");
  const std::size_t r = l.q.r;
  if (r != 3 && !(r == 4 && format == "json"))
    throw InputError("plot-section supports rank 3 (svg, json) and rank 4 (json); rank is " + std::to_string(r));
  std::optional<std::size_t> hi;
  if (!chamber.empty()) hi = chamber_arg(l, chamber);
  const std::size_t coords = 3;

  if (format == "json") {
    json chs = json::array();
    for (std::size_t i = 0; i < l.chambers.size(); ++i)
      chs.push_back({{"id", l.chambers[i].id},
                     {"alias", "g" + std::to_string(i + 1)},
                     {"smooth", l.chambers[i].smooth.value_or(false)},
                     {"vertices", polygon_json(l.chambers[i].cone, coords)}});
    json j{{"rank", r},
           {"section", "sum of coordinates = 1"},
           {"coordinates", r == 3 ? "x1,x2,x3" : "x1,x2,x3 (x4 = 1 - x1 - x2 - x3)"},
           {"eff", polygon_json(eff_cone(l.q), coords)},
           {"mov", polygon_json(mov_cone(l.q), coords)},
           {"chambers", chs}};
    j["highlight"] = hi ? json(l.chambers[*hi].id) : json(nullptr);
    write_output(out, j.dump(2) + "\n");
    return 0;
  }

  const double scale = 400, pad = 20;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << scale + 2 * pad << "\" height=\""
    << scale * std::sqrt(3.0) / 2.0 + 2 * pad << "\">\n";
  s << svg_polygon(eff_cone(l.q), "fill=\"#eeeeee\" stroke=\"black\"", scale, pad);
  s << svg_polygon(mov_cone(l.q), "fill=\"#d8e6f3\" stroke=\"#1f4e79\" stroke-width=\"2\"", scale, pad);
  for (std::size_t i = 0; i < l.chambers.size(); ++i) {
    const bool on = hi && *hi == i;
    s << svg_polygon(l.chambers[i].cone,
                     on ? "fill=\"#f4b183\" stroke=\"#1f4e79\"" : "fill=\"none\" stroke=\"#1f4e79\"", scale, pad);
    auto [x, y] = svg_centroid(l.chambers[i].cone, scale, pad);
    s << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"middle\">g" << i + 1
      << "</text>\n";
  }
  s << "</svg>\n";
  write_output(out, s.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gale duality and secondary fan toolkit"};
  app.require_subcommand(1);

  std::string file, from, region = "mov", chamber, to, target, out, format = "json";
  bool as_json = false, smooth_only = false, resume = false;
  long s = 1, ref_bound = kDefaultRefBound;
  SearchParams hp;
  hp.threads = threads_from_env();
  std::vector<std::string> inject;
  std::string input;

  auto* vf = app.add_subcommand("validate-f", "Check the fan-matrix conditions");
  vf->add_option("file", file)->required();
  vf->add_flag("--json", as_json);

  auto* vw = app.add_subcommand("validate-w", "Check the weight-matrix conditions");
  vw->add_option("file", file)->required();
  vw->add_flag("--json", as_json);
  vw->add_option("--ref-bound", ref_bound, "Coefficient bound of the positive REF search");

  auto* gale = app.add_subcommand("gale", "Gale dual in the matrix text format");
  gale->add_option("file", file)->required();
  gale->add_option("--from", from)->required()->check(CLI::IsMember({"f", "w"}));

  auto* chambers = app.add_subcommand("chambers", "Chambers of a weight matrix");
  chambers->add_option("file", file)->required();
  chambers->add_option("--region", region)->check(CLI::IsMember({"mov", "all"}));
  chambers->add_flag("--smooth-only", smooth_only);

  auto* fan = app.add_subcommand("fan", "Maximal cones of the fan of a chamber");
  auto* prim = app.add_subcommand("primitive", "Primitive collections of a chamber");
  auto* cls = app.add_subcommand("classify", "Classification report of a smooth chamber");
  auto* anti = app.add_subcommand("anticanonical", "Position of the anticanonical class");
  for (auto* sc : {fan, prim, cls, anti}) {
    sc->add_option("file", file)->required();
    sc->add_option("--chamber", chamber)->required();
    sc->add_option("--region", region)->check(CLI::IsMember({"mov", "all"}));
  }

  auto* walls = app.add_subcommand("walls", "Shortest flip path between two chambers");
  walls->add_option("file", file)->required();
  walls->add_option("--from", from)->required();
  walls->add_option("--to", to)->required();

  auto* repro = app.add_subcommand("reproduce", "Re-derive a worked example and diff against reference data");
  repro->add_option("target", target)->required()->check(CLI::IsMember({"ex1", "ex2", "cex4", "qs"}));
  repro->add_option("--s", s, "Column multiplicity for the qs family")->check(CLI::PositiveNumber);
  repro->add_option("--input", input, "Weight matrix to feed the cex4 pipeline (text or findings JSON line)");

  auto* hunt_cmd = app.add_subcommand("hunt", "Seeded search for interior nef chambers");
  hunt_cmd->add_option("--n", hp.n)->required()->check(CLI::PositiveNumber);
  hunt_cmd->add_option("--r", hp.r)->required()->check(CLI::PositiveNumber);
  hunt_cmd->add_option("--seed", hp.seed)->required();
  hunt_cmd->add_option("--budget", hp.max_candidates)->required();
  hunt_cmd->add_option("--entry-bound", hp.entry_bound)->check(CLI::PositiveNumber);
  hunt_cmd->add_option("--out", out)->required();
  hunt_cmd->add_option("--inject", inject, "Weight matrices evaluated before the random stream");
  hunt_cmd->add_option("--threads", hp.threads, "Worker threads (default: GALEFAN_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  hunt_cmd->add_flag("--resume", resume, "Continue from the last checkpoint in --out");

  auto* plot = app.add_subcommand("plot-section", "Affine section of <Q>, Mov and the chambers");
  plot->add_option("file", file)->required();
  plot->add_option("--chamber", chamber);
  plot->add_option("--format", format)->check(CLI::IsMember({"svg", "json"}));
  plot->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*vf) {
      FValidation v = validate_f(read_matrix_file(file));
      if (as_json) {
        emit(to_json(v));
      } else {
        std::cout << (v.ok() ? "valid F-matrix" : "not an F-matrix") << '\n';
        for (const auto& x : v.violations) std::cout << "  (" << x.clause << ") " << x.message << '\n';
        if (v.ok()) std::cout << std::boolalpha << "reduced " << v.matrix->reduced << " cf " << v.matrix->cf << '\n';
      }
      return v.ok() ? 0 : 1;
    }
    if (*vw) {
      WValidation v = validate_w(read_matrix_file(file), std::nullopt, ref_bound);
      if (as_json) {
        emit(to_json(v));
      } else {
        std::cout << (v.ok() ? "valid W-matrix" : "not a W-matrix") << '\n';
        for (const auto& x : v.violations) std::cout << "  (" << x.clause << ") " << x.message << '\n';
        if (v.ok()) std::cout << "positive REF representative:\n" << format_matrix(v.matrix->m);
      }
      return v.ok() ? 0 : 1;
    }
    if (*gale) {
      IntMatrix m = read_matrix_file(file);
      std::cout << format_matrix(from == "f" ? gale_dual_of_f(require_f(m)).m : gale_dual_of_w(require_w(m)).m);
      return 0;
    }
    if (*chambers) {
      Loaded l = load_w(file, region);
      json a = json::array();
      for (std::size_t i = 0; i < l.chambers.size(); ++i)
        if (!smooth_only || l.chambers[i].smooth.value_or(false)) a.push_back(to_json(l.chambers[i], i + 1));
      emit(a);
      return 0;
    }
    if (*fan || *prim || *cls || *anti) {
      Loaded l = load_w(file, region);
      const std::size_t i = chamber_arg(l, chamber);
      const Chamber& c = l.chambers[i];
      if (*fan) {
        Fan f = fan_from_chamber(l.v, l.q, c);
        json cones = json::array();
        for (const auto& k : f.cones) cones.push_back(indices_json(k));
        emit({{"chamber", c.id}, {"v", to_json(l.v.m)}, {"cones", cones}});
      } else if (*prim) {
        json a = json::array();
        for (const auto& pc : enumerate_primitive_collections(l.v, l.q, c)) a.push_back(to_json(pc));
        emit({{"chamber", c.id}, {"collections", a}});
      } else if (*cls) {
        json j = to_json(classification_report(l.v, l.q, c));
        j["chamber"] = c.id;
        emit(j);
      } else {
        json j = to_json(anticanonical_position(l.q, c));
        j["chamber"] = c.id;
        emit(j);
      }
      return 0;
    }
    if (*walls) {
      Loaded l = load_w(file, "mov");
      FlipPath fp = flip_path(l.q, l.chambers, chamber_arg(l, from), chamber_arg(l, to));
      auto ids = [&](const std::vector<std::size_t>& p) {
        json a = json::array();
        for (std::size_t k : p) a.push_back(l.chambers[k].id);
        return a;
      };
      json crossings = json::array();
      for (const auto& wc : fp.crossings) crossings.push_back(to_json(wc));
      json alts = json::array();
      for (const auto& p : fp.alternatives) alts.push_back(ids(p));
      emit({{"path", ids(fp.chambers)}, {"length", fp.crossings.size()}, {"crossings", crossings},
            {"alternatives", alts}});
      return 0;
    }
    if (*repro) {
      if (target == "ex1") return print_reproduction(reproduce_ex1());
      if (target == "ex2") return print_reproduction(reproduce_ex2());
      if (target == "qs") return print_reproduction(reproduce_qs(s));
      std::optional<IntMatrix> q;
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw InputError("cannot open " + input);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        json j = json::parse(text, nullptr, false);
        if (!j.is_discarded() && j.is_object()) {
          q = matrix_from_json(j.at("q"));
        } else {
          std::istringstream ss(text);
          q = read_matrix(ss);
        }
      }
      return print_reproduction(reproduce_cex4(q));
    }
    if (*hunt_cmd) {
      for (const auto& f : inject) hp.injected.push_back(read_matrix_file(f));
      return run_hunt(hp, out, resume);
    }
    if (*plot) return run_plot(file, chamber, format, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidMatrixError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.violations) std::cerr << "  (" << v.clause << ") " << v.message << '\n';
    return 1;
  } catch (const ClassifyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const FanNotProjectiveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
