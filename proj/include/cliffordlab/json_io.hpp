#pragma once

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cliffordlab/cocycle.hpp"

namespace cliffordlab {

using Json = nlohmann::json;

// Raised on structurally invalid JSON input.
struct JsonFormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::string float_text(std::complex<double> z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) {
    const auto cut = s.find_first_of("+-", 1);
    s.insert(cut == std::string::npos ? s.size() : cut, ".0");
  }
  return s;
}

}  // namespace detail

inline Json signature_to_json(const Signature& sig) { return Json::array({sig.p(), sig.q()}); }

inline Signature signature_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw JsonFormatError("sig must be [p, q]");
  return Signature(j[0].get<int>(), j[1].get<int>());
}

// {"sig":[p,q],"terms":[{"blade":[1,3],"re":"a/b","im":"c/d"}]}, generator
// indices one-based and sorted.
inline Json element_to_json(const CliffordElement& x) {
  Json terms = Json::array();
  for (const auto& [b, c] : x.terms()) {
    Json blade = Json::array();
    for (int k = 0; k < x.sig().dim(); ++k)
      if (b >> k & 1u) blade.push_back(k + 1);
    terms.push_back({{"blade", blade}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  }
  return {{"sig", signature_to_json(x.sig())}, {"terms", terms}};
}

inline CliffordElement element_from_json(const Json& j) {
  const Signature sig = signature_from_json(detail::require(j, "sig"));
  CliffordElement x(sig);
  for (const auto& term : detail::require(j, "terms")) {
    Blade b = 0;
    for (const auto& k : detail::require(term, "blade")) {
      const int idx = k.get<int>();
      if (idx < 1 || idx > sig.dim()) throw JsonFormatError("blade index out of range");
      if (b >> (idx - 1) & 1u) throw JsonFormatError("repeated generator in blade");
      b |= Blade{1} << (idx - 1);
    }
    const std::string re = term.value("re", "0"), im = term.value("im", "0");
    x.accumulate(b, GaussianRational(parse_rational(re), parse_rational(im)));
  }
  return x;
}

inline Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json matrix_to_json(const QMatrix& m) { return matrix_to_json(to_complex(m)); }

inline Json matrix_to_json(const CMatrixF& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::float_text(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json matrix_to_json(const GroupMatrix& g) {
  return std::visit([](const auto& m) { return matrix_to_json(m); }, g);
}

// Entries written in decimal or exponent notation load into the float layer.
inline GroupMatrix group_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw JsonFormatError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  bool decimal = false;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw JsonFormatError("matrix rows have unequal length");
    for (const auto& e : row) {
      if (!e.is_string()) throw JsonFormatError("matrix entries must be strings");
      if (e.get<std::string>().find_first_of(".eE") != std::string::npos) decimal = true;
    }
  }
  CMatrix exact(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) exact(r, c) = parse_gaussian(j[r][c].get<std::string>());
  if (decimal) return to_float(exact);
  return exact;
}

inline CMatrix matrix_from_json(const Json& j) {
  auto g = group_matrix_from_json(j);
  if (!is_exact(g)) throw JsonFormatError("expected an exact matrix");
  return std::get<CMatrix>(g);
}

// {"sig":[p,q],"flavor":"PauliPlus","n":2,"generators":[matrix, ...]}
inline Json rep_to_json(const MatrixRep& rep) {
  Json gens = Json::array();
  for (const auto& g : rep.generators()) gens.push_back(matrix_to_json(g));
  return {{"sig", signature_to_json(rep.sig())}, {"flavor", std::string(to_string(rep.flavor()))}, {"n", rep.n()}, {"generators", gens}};
}

inline MatrixRep rep_from_json(const Json& j) {
  const Signature sig = signature_from_json(detail::require(j, "sig"));
  const Flavor flavor = parse_flavor(detail::require(j, "flavor").get<std::string>());
  std::vector<CMatrix> gens;
  for (const auto& g : detail::require(j, "generators")) gens.push_back(matrix_from_json(g));
  auto rep = MatrixRep::make(sig, std::move(gens), flavor);
  if (j.contains("n") && j.at("n").get<std::size_t>() != rep.n()) throw JsonFormatError("n does not match the generators");
  return rep;
}

inline Json nerve_to_json(const Nerve& n) {
  Json overlaps = Json::array(), triples = Json::array(), loops = Json::object();
  for (const auto& [i, j] : n.overlaps) overlaps.push_back({i, j});
  for (const auto& t : n.triples) triples.push_back({t[0], t[1], t[2]});
  for (const auto& [name, seq] : n.loops) loops[name] = seq;
  return {{"patches", n.patches}, {"overlaps", overlaps}, {"triples", triples}, {"loops", loops}};
}

inline Nerve nerve_from_json(const Json& j) {
  Nerve n;
  n.patches = detail::require(j, "patches").get<std::vector<int>>();
  for (const auto& e : detail::require(j, "overlaps")) {
    if (!e.is_array() || e.size() != 2) throw JsonFormatError("overlap must be [i, j]");
    n.overlaps.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  if (j.contains("triples"))
    for (const auto& t : j.at("triples")) {
      if (!t.is_array() || t.size() != 3) throw JsonFormatError("triple must be [i, j, k]");
      n.triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
  if (j.contains("loops"))
    for (const auto& [name, seq] : j.at("loops").items()) n.loops[name] = seq.get<std::vector<int>>();
  return n;
}

inline Edge parse_edge_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw JsonFormatError("transition key must be \"i,j\": " + key);
  try {
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw JsonFormatError("transition key must be \"i,j\": " + key);
  }
}

// {"nerve":{...},"rep":{...},"tag":"Lipschitz","transitions":{"i,j":matrix}}
inline Json cocycle_to_json(const LipschitzCocycle& c) {
  Json transitions = Json::object();
  for (const auto& [e, g] : c.transitions) transitions[detail::edge_name(e)] = matrix_to_json(g);
  return {{"nerve", nerve_to_json(c.nerve)}, {"rep", rep_to_json(*c.rep)}, {"tag", std::string(to_string(c.tag))}, {"transitions", transitions}};
}

// Missing reverse transitions are filled in by inversion.
inline LipschitzCocycle cocycle_from_json(const Json& j) {
  LipschitzCocycle c;
  c.nerve = nerve_from_json(detail::require(j, "nerve"));
  c.rep = std::make_shared<const MatrixRep>(rep_from_json(detail::require(j, "rep")));
  if (j.contains("tag")) c.tag = parse_cocycle_tag(j.at("tag").get<std::string>());
  for (const auto& [key, m] : detail::require(j, "transitions").items()) c.transitions.emplace(parse_edge_key(key), group_matrix_from_json(m));
  complete_reverses(c);
  return c;
}

}  // namespace cliffordlab
