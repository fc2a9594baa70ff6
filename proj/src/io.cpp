#include "galefan/io.hpp"

#include <fstream>
#include <sstream>

namespace galefan {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

std::vector<Integer> parse_integers(const std::string& line, std::size_t lineno) {
  std::istringstream ss(line);
  std::vector<Integer> out;
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    Integer x;
    if (x.set_str(tok, 10) != 0) throw ParseError("line " + std::to_string(lineno) + ": not an integer: " + tok);
    out.push_back(x);
  }
  return out;
}

}  // namespace

IntMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError("missing header line \"rows cols\"");
  auto header = parse_integers(line, lineno);
  if (header.size() != 2 || header[0] < 0 || header[1] < 0)
    throw ParseError("line " + std::to_string(lineno) + ": header must be \"rows cols\"");
  const std::size_t rows = header[0].get_ui(), cols = header[1].get_ui();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_content_line(in, line, lineno))
      throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    auto row = parse_integers(line, lineno);
    if (row.size() != cols)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(cols) + " entries, found " +
                       std::to_string(row.size()));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  if (next_content_line(in, line, lineno)) throw ParseError("line " + std::to_string(lineno) + ": trailing data");
  return m;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix(in);
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

json to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json indices_json(const IndexSet& s) {
  json a = json::array();
  for (std::size_t j : s) a.push_back(j + 1);
  return a;
}

namespace {

json violations_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"clause", v.clause}, {"message", v.message}});
  return a;
}

json rational_json(const Rational& q) { return q.get_str(); }

}  // namespace

json to_json(const FValidation& v) {
  json j{{"valid", v.ok()}, {"violations", violations_json(v.violations)}};
  if (v.matrix) {
    j["n"] = v.matrix->n;
    j["r"] = v.matrix->r;
    j["reduced"] = v.matrix->reduced;
    j["cf"] = v.matrix->cf;
  }
  return j;
}

json to_json(const WValidation& v) {
  json j{{"valid", v.ok()}, {"violations", violations_json(v.violations)}};
  if (v.matrix) {
    j["n"] = v.matrix->n;
    j["r"] = v.matrix->r;
    j["positive_ref"] = to_json(v.matrix->m);
  }
  return j;
}

json to_json(const Chamber& c, std::size_t alias) {
  json bunch = json::array();
  for (const auto& b : c.bunch) bunch.push_back(indices_json(b));
  json gens = json::array();
  for (const auto& r : c.cone.rays()) gens.push_back(to_json(r));
  json j{{"id", c.id}, {"alias", "g" + std::to_string(alias)}, {"generators", gens}, {"bunch", bunch},
         {"region", c.in_mov ? "mov" : "eff"}};
  j["smooth"] = c.smooth ? json(*c.smooth) : json(nullptr);
  return j;
}

json to_json(const PrimitiveCollection& pc) {
  json coeffs = json::array();
  for (const auto& c : pc.coeffs) coeffs.push_back(rational_json(c));
  return {{"indices", indices_json(pc.indices)}, {"relation", to_json(pc.relation)}, {"scale", to_json(pc.scale)},
          {"sigma", indices_json(pc.sigma)},     {"coefficients", coeffs},          {"class", to_json(pc.n_class)},
          {"support_normal", to_json(pc.support_normal)}, {"nef", pc.nef}};
}

json to_json(const HyperplaneStatus& hs) {
  json j{{"normal", to_json(hs.normal)}, {"dim", hs.dim}, {"kind", to_string(hs.kind)}};
  j["h_prime"] = hs.h_prime ? to_json(*hs.h_prime) : json(nullptr);
  return j;
}

json to_json(const BorderingStatus& st) {
  json hs = json::array();
  for (const auto& h : st.hyperplanes) hs.push_back(to_json(h));
  return {{"kind", to_string(st.kind)}, {"hyperplanes", hs}, {"totally_maxbord", st.totally_maxbord}};
}

json to_json(const WallCrossing& wc) {
  return {{"from", wc.from},
          {"to", wc.to},
          {"normal", to_json(wc.normal)},
          {"relation", to_json(wc.relation)},
          {"contract_fwd", indices_json(wc.contract_fwd)},
          {"contract_bwd", indices_json(wc.contract_bwd)}};
}

json to_json(const ClassificationReport& rep) {
  json chain = json::array();
  for (const auto& s : rep.contraction_chain) {
    json step{{"kind", s.kind},      {"v", to_json(s.v.m)},          {"q", to_json(s.q.m)},
              {"chamber", s.chamber}, {"indices", indices_json(s.indices)}};
    if (s.crossing) step["crossing"] = to_json(*s.crossing);
    chain.push_back(std::move(step));
  }
  json j{{"case_label", rep.case_label},
         {"status", to_json(rep.status)},
         {"relation_count", rep.relation_count},
         {"contraction_chain", chain},
         {"counterexample", rep.counterexample},
         {"in_scope", rep.in_scope}};
  j["witness"] = rep.witness ? to_json(*rep.witness) : json(nullptr);
  return j;
}

json to_json(const AnticanonicalReport& rep) {
  return {{"class", to_json(rep.cls)},   {"ample", rep.ample},           {"nef", rep.nef},
          {"big", rep.big},              {"on_boundary", rep.on_boundary}, {"outside", rep.outside},
          {"verdict", rep.verdict}};
}

json to_json(const Finding& f, const SearchParams& p) {
  return {{"type", "finding"},
          {"params", {{"n", p.n}, {"r", p.r}, {"entry_bound", p.entry_bound}, {"seed", p.seed}}},
          {"source", f.source},
          {"candidate", f.candidate},
          {"q", to_json(f.q.m)},
          {"v", to_json(f.v.m)},
          {"chamber_id", f.chamber.id},
          {"report", to_json(f.report)}};
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (e.is_number_integer()) {
        m(i, k) = e.get<long>();
      } else if (e.is_string()) {
        m(i, k) = Integer(e.get<std::string>());
      } else {
        throw ParseError("matrix entries must be integers");
      }
    }
  }
  return m;
}

}  // namespace galefan
