#pragma once

// JSON loaders for the three input schemas (Lie algebra, module, L∞
// structure), series (de)serialization in the shared monomial format, and
// the report builders behind the command-line tool.  Reports use
// nlohmann::ordered_json with fixed key and row order, so identical inputs
// produce byte-identical output.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gradual/berezin.hpp"
#include "gradual/ce.hpp"
#include "gradual/errors.hpp"
#include "gradual/formal.hpp"
#include "gradual/lie.hpp"
#include "gradual/linfty.hpp"
#include "gradual/rational.hpp"

namespace gradual::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::InvalidInput, where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorKind::InvalidInput, where + ": missing field '" + key + "'");
  return *it;
}

inline std::string str_field(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string())
    fail(ErrorKind::InvalidInput, where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer())
    fail(ErrorKind::InvalidInput, where + "." + key + ": expected an integer");
  return v.get<int>();
}

// Coefficients are written as strings ("1", "-3/2") so they stay exact;
// bare JSON integers are accepted too.
inline Rat rat_value(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput,
           where + ": cannot parse '" + v.get<std::string>() + "' as a rational");
    }
  }
  fail(ErrorKind::InvalidInput, where + ": expected a rational as string or integer");
}

inline void read_generators(const json& j, const std::string& where,
                            std::vector<std::string>& names, std::vector<int>& deg) {
  const json& gens = require(j, "generators", where);
  if (!gens.is_array() || gens.empty())
    fail(ErrorKind::InvalidInput, where + ".generators: expected a nonempty array");
  for (const auto& g : gens) {
    names.push_back(str_field(g, "name", where + ".generators"));
    deg.push_back(int_field(g, "degree", where + ".generators"));
  }
}

inline std::size_t name_index(const std::vector<std::string>& names, const std::string& n,
                              const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  fail(ErrorKind::InvalidInput, where + ": unknown generator '" + n + "'");
}

// {"mode":"Z"|"Z2","generators":[{"name","degree"},...],
//  "brackets":[{"left","right","result":[{"gen","coeff"},...]},...]}
// Unlisted brackets are zero; transposes are completed by graded
// antisymmetry, and contradictory double listings are rejected.
inline LieAlgebra algebra_from_json(const json& j) {
  std::string mode_s = str_field(j, "mode", "algebra");
  GradingMode mode;
  if (mode_s == "Z")
    mode = GradingMode::Z;
  else if (mode_s == "Z2")
    mode = GradingMode::Z2;
  else
    fail(ErrorKind::InvalidInput, "algebra.mode: expected \"Z\" or \"Z2\"");

  std::vector<std::string> names;
  std::vector<int> deg;
  read_generators(j, "algebra", names, deg);

  std::map<std::pair<int, int>, LieAlgebra::Bracket> br;
  if (j.contains("brackets")) {
    const json& bs = j["brackets"];
    if (!bs.is_array()) fail(ErrorKind::InvalidInput, "algebra.brackets: expected an array");
    for (const auto& b : bs) {
      int l = static_cast<int>(name_index(names, str_field(b, "left", "bracket"), "bracket.left"));
      int r = static_cast<int>(name_index(names, str_field(b, "right", "bracket"), "bracket.right"));
      if (br.count({l, r}))
        fail(ErrorKind::InvalidInput,
             "bracket [" + names[l] + "," + names[r] + "] listed twice");
      LieAlgebra::Bracket nb;
      const json& result = require(b, "result", "bracket");
      if (!result.is_array()) fail(ErrorKind::InvalidInput, "bracket.result: expected an array");
      for (const auto& t : result) {
        int k = static_cast<int>(name_index(names, str_field(t, "gen", "bracket.result"),
                                            "bracket.result.gen"));
        nb[k] += rat_value(require(t, "coeff", "bracket.result"), "bracket.result.coeff");
      }
      br[{l, r}] = nb;
    }
  }
  return LieAlgebra::build(mode, names, deg, br);
}

// {"carrier":[{"name","degree"},...],
//  "action":[{"gen":"e1","matrix":[["0","1"],["0","0"]]},...]}
// matrix[a][p] is the m_a-coefficient of e·m_p; unlisted actions are zero.
inline LieModule module_from_json(const json& j, const LieAlgebra& a) {
  LieModule m;
  m.alg = &a;
  const json& carrier = require(j, "carrier", "module");
  if (!carrier.is_array() || carrier.empty())
    fail(ErrorKind::InvalidInput, "module.carrier: expected a nonempty array");
  for (const auto& c : carrier) {
    m.names.push_back(str_field(c, "name", "module.carrier"));
    m.deg.push_back(int_field(c, "degree", "module.carrier"));
  }
  std::size_t d = m.names.size();
  m.rho.assign(a.dim(), SparseMatrix(d, d));
  if (j.contains("action")) {
    const json& acts = j["action"];
    if (!acts.is_array()) fail(ErrorKind::InvalidInput, "module.action: expected an array");
    for (const auto& e : acts) {
      std::size_t u = a.index(str_field(e, "gen", "module.action"));
      const json& mat = require(e, "matrix", "module.action");
      if (!mat.is_array() || mat.size() != d)
        fail(ErrorKind::ShapeMismatch, "module.action.matrix: expected " + std::to_string(d) +
                                           " rows for '" + a.names[u] + "'");
      for (std::size_t r = 0; r < d; ++r) {
        if (!mat[r].is_array() || mat[r].size() != d)
          fail(ErrorKind::ShapeMismatch,
               "module.action.matrix: row " + std::to_string(r) + " needs " +
                   std::to_string(d) + " entries");
        for (std::size_t c = 0; c < d; ++c) {
          Rat v = rat_value(mat[r][c], "module.action.matrix");
          if (v != 0) m.rho[u].set(r, c, v);
        }
      }
    }
  }
  return m;
}

inline Mono mono_from_json(const json& v, const std::vector<std::string>& names,
                           const std::string& where) {
  if (!v.is_object()) fail(ErrorKind::InvalidInput, where + ": expected an object");
  Mono m(names.size(), 0);
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::size_t i = name_index(names, it.key(), where);
    if (!it.value().is_number_integer())
      fail(ErrorKind::InvalidInput, where + "." + it.key() + ": expected an integer exponent");
    m[i] = it.value().get<int>();
  }
  return m;
}

// Series term list: [{"monomial":{"x":2,"y":1},"coeff":"-1/2"},...]
inline Elem elem_from_json(const GenSet& gs, const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(ErrorKind::InvalidInput, where + ": expected an array of terms");
  Elem e = Elem::zero(gs);
  for (const auto& t : arr) {
    Mono m = mono_from_json(require(t, "monomial", where), gs.names, where + ".monomial");
    e.add(m, rat_value(require(t, "coeff", where), where + ".coeff"));
  }
  return e;
}

inline json elem_to_json(const GenSet& gs, const Elem& e) {
  json arr = json::array();
  for (const auto& [m, c] : e.terms()) {
    json mono = json::object();
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (m[i] != 0) mono[gs.names[i]] = m[i];
    arr.push_back({{"monomial", mono}, {"coeff", rat_str(c)}});
  }
  return arr;
}

// {"generators":[{"name","degree"},...],
//  "derivation":[{"on":"x","value":[{"monomial":{...},"coeff":"1"}]},...],
//  "truncation":12}
// with "truncation" optional and the derivation zero on unlisted generators.
inline Linfty linfty_from_json(const json& j, int trunc_override = -1) {
  std::vector<std::string> names;
  std::vector<int> deg;
  read_generators(j, "linfty", names, deg);

  int trunc = trunc_override;
  if (trunc < 0 && j.contains("truncation")) {
    if (!j["truncation"].is_number_integer())
      fail(ErrorKind::InvalidInput, "linfty.truncation: expected an integer");
    trunc = j["truncation"].get<int>();
  }

  std::vector<std::map<Mono, Rat>> co(names.size());
  const json& der = require(j, "derivation", "linfty");
  if (!der.is_array()) fail(ErrorKind::InvalidInput, "linfty.derivation: expected an array");
  for (const auto& e : der) {
    std::size_t g = name_index(names, str_field(e, "on", "linfty.derivation"),
                               "linfty.derivation.on");
    const json& value = require(e, "value", "linfty.derivation");
    if (!value.is_array())
      fail(ErrorKind::InvalidInput, "linfty.derivation.value: expected an array");
    for (const auto& t : value) {
      Mono m = mono_from_json(require(t, "monomial", "linfty.derivation.value"), names,
                              "linfty.derivation.value.monomial");
      Rat c = rat_value(require(t, "coeff", "linfty.derivation.value"),
                        "linfty.derivation.value.coeff");
      if (c != 0) co[g][m] += c;
    }
  }
  return Linfty(std::move(names), std::move(deg), co, trunc);
}

// Distinguishes the two input schemas so commands can accept either.
inline bool looks_like_algebra(const json& j) {
  return j.is_object() && (j.contains("brackets") || j.contains("mode"));
}

// ---- report builders ----

inline json validation_to_json(const ValidationReport& r) {
  return json{{"valid", r.ok()}, {"problems", r.problems}};
}

inline json degrees_to_json(const std::vector<std::size_t>& dims) {
  json rows = json::array();
  for (std::size_t i = 0; i < dims.size(); ++i)
    rows.push_back({{"i", i}, {"dim", dims[i]}, {"stable", true}});
  return rows;
}

inline json cohomology_to_json(const std::vector<std::size_t>& dims) {
  return json{{"degrees", degrees_to_json(dims)}};
}

inline json hazewinkel_to_json(const HazewinkelReport& r) {
  json rows = json::array();
  std::size_t n = r.homology_twisted.size();
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back({{"i", i},
                    {"dim_homology_twisted", r.homology_twisted[i]},
                    {"dim_cohomology_dual_complement", r.cohomology_dual[n - 1 - i]},
                    {"equal", r.homology_twisted[i] == r.cohomology_dual[n - 1 - i]}});
  return json{{"degrees", rows}, {"match", r.match}};
}

inline json character_to_json(const LieAlgebra& a, const MainTheoremReport& r) {
  json ch = json::array();
  for (std::size_t q = 0; q < a.dim(); ++q)
    ch.push_back({{"gen", a.names[q]},
                  {"r", rat_str(r.character[q])},
                  {"str_ad", rat_str(r.str_ad[q])},
                  {"match", r.character[q] == r.str_ad[q]}});
  json out;
  out["character"] = ch;
  out["berezinian_degree"] = r.degree ? json(*r.degree) : json(nullptr);
  out["expected_degree"] = r.expected_degree;
  out["closed"] = r.closed;
  return out;
}

inline json linfty_to_json(const LinftyCohomology& c) {
  json degrees = json::array();
  for (const auto& d : c.degrees)
    degrees.push_back({{"i", d.degree}, {"dim", d.dim}, {"stable", d.stable}});
  json slices = json::array();
  for (const auto& s : c.slices)
    slices.push_back(
        {{"degree", s.degree}, {"order", s.order}, {"dim", s.dim}, {"stable", s.stable}});
  return json{{"truncation", c.truncation},
              {"shift", c.shift},
              {"order_graded", c.order_graded},
              {"degrees", degrees},
              {"slices", slices}};
}

inline json conjecture_to_json(const ConjectureEvidence& ev) {
  json rows = json::array();
  for (const auto& r : ev.rows)
    rows.push_back({{"degree", r.degree},
                    {"untwisted", r.untwisted},
                    {"twisted_complement", r.twisted_complement},
                    {"equal", r.equal}});
  return json{{"total_dimension", ev.total_dim}, {"rows", rows}, {"symmetric", ev.symmetric}};
}

// ---- table rendering ----
// Same data as the JSON report: scalars as "key: value" lines, arrays of
// objects as aligned columns.  Nested monomial objects print as products.

inline std::string cell_str(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  if (v.is_object()) {  // monomial exponent map
    if (v.empty()) return "1";
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!s.empty()) s += " ";
      s += it.key();
      if (!(it.value().is_number_integer() && it.value().get<long long>() == 1))
        s += "^" + it.value().dump();
    }
    return s;
  }
  return v.dump();
}

inline void render_rows(std::ostringstream& out, const json& arr) {
  std::vector<std::string> cols;
  for (const auto& row : arr)
    for (auto it = row.begin(); it != row.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  std::vector<std::vector<std::string>> cells;
  cells.push_back(cols);
  for (const auto& row : arr) {
    std::vector<std::string> line;
    for (const auto& c : cols)
      line.push_back(row.contains(c) ? cell_str(row[c]) : "");
    cells.push_back(line);
  }
  std::vector<std::size_t> width(cols.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    out << " ";
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << " " << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
    }
    out << "\n";
  }
}

inline std::string render_table(const json& report) {
  std::ostringstream out;
  for (auto it = report.begin(); it != report.end(); ++it) {
    const json& v = it.value();
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << it.key() << ":\n";
      render_rows(out, v);
    } else if (v.is_array()) {
      out << it.key() << ":";
      for (const auto& x : v) out << " " << cell_str(x);
      out << "\n";
    } else {
      out << it.key() << ": " << cell_str(v) << "\n";
    }
  }
  return out.str();
}

}  // namespace gradual::io
