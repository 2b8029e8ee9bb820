#pragma once

// JSON documents for lattices, isometries, discriminant groups, Mukai data, words,
// certificates and pair-normalization solutions.

#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mlat/lemsimo.hpp"
#include "mlat/monodromy.hpp"

namespace mlat::io {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- primitives

inline json to_json(const IntMatrix& m) { return m.to_rows(); }
inline json to_json(const IntVector& v) { return v; }

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix rows must be arrays");
    IntVector row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
      row.push_back(x.get<Int>());
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return IntMatrix(0, 0);
  return IntMatrix::from_rows(rows);
}

inline IntVector vector_from_json(const json& j, std::size_t expected = 0) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  IntVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("vector entries must be integers");
    v.push_back(x.get<Int>());
  }
  if (expected != 0 && v.size() != expected)
    throw ParseError("vector must have " + std::to_string(expected) + " entries");
  return v;
}

template <class F>
auto field(const json& j, const char* key, F&& read) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return read(j.at(key));
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

inline Int int_field(const json& j, const char* key) {
  return field(j, key, [&](const json& x) {
    if (!x.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return x.get<Int>();
  });
}

// ---------------------------------------------------------------- lattices

/// Lattices named by '+'-joined summands "U", "<-2k>", or the single name "Mukai".
inline IntegerLattice lattice_from_label(const std::string& label) {
  if (label == "Mukai") return mukai_lattice();
  std::vector<IntegerLattice> parts;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "U") {
      parts.push_back(hyperbolic_U());
    } else if (part.size() > 3 && part.front() == '<' && part.back() == '>' && part[1] == '-') {
      Int n = 0;
      try {
        n = std::stoll(part.substr(2, part.size() - 3));
      } catch (const std::exception&) {
        throw ParseError("bad summand '" + part + "'");
      }
      if (n <= 0 || n % 2 != 0) throw ParseError("summand '" + part + "' is not of the form <-2k>");
      parts.push_back(minus_2k(n / 2));
    } else {
      throw ParseError("unknown lattice label '" + label + "'");
    }
  }
  if (parts.empty()) throw ParseError("empty lattice label");
  return direct_sum(parts);
}

inline json to_json(const IntegerLattice& l) {
  json j{{"label", l.label()}, {"gram", to_json(l.gram())}};
  if (l.has_embedding()) {
    const auto& emb = *l.embedding();
    std::vector<IntVector> gens;
    for (std::size_t c = 0; c < emb.basis.cols(); ++c) gens.push_back(emb.basis.col(c));
    j["embedding"] = {{"ambient", emb.ambient->label()}, {"basis", gens}};
  }
  return j;
}

inline IntegerLattice lattice_from_json(const json& j) {
  const IntMatrix gram = field(j, "gram", matrix_from_json);
  const std::string label = j.value("label", std::string());
  if (!j.contains("embedding")) return IntegerLattice(gram, label);
  const json& e = j.at("embedding");
  const std::string amb = field(e, "ambient", [](const json& x) { return x.get<std::string>(); });
  const IntMatrix rows = field(e, "basis", matrix_from_json);
  IntegerLattice l = IntegerLattice::sublattice(share(lattice_from_label(amb)), rows.transpose(), label);
  if (l.gram() != gram) throw ParseError("gram does not match the embedding");
  return l;
}

// ---------------------------------------------------------------- isometries

inline json to_json(const Isometry& g) {
  return {{"source", g.source().label()}, {"target", g.target().label()}, {"matrix", to_json(g.matrix())}};
}

using Resolver = std::function<IntegerLattice(const std::string&)>;

inline Isometry isometry_from_json(const json& j, const Resolver& resolve = lattice_from_label) {
  const auto label = [](const json& x) { return x.get<std::string>(); };
  const IntegerLattice s = resolve(field(j, "source", label));
  const IntegerLattice t = resolve(field(j, "target", label));
  return Isometry(s, t, field(j, "matrix", matrix_from_json));
}

// ---------------------------------------------------------------- discriminants

inline json to_json(const DiscriminantData& a) {
  json q = json::array();
  for (const Rational& r : a.qbar_generators()) q.push_back(r.str());
  return {{"invariants", a.invariants()}, {"qbar", q}};
}

inline json disc_to_json(const DiscHom& h) {
  if (h.is_identity()) return "+id";
  if (h.is_scalar(-1)) return "-id";
  return h.str();
}

// ---------------------------------------------------------------- Mukai data

inline json to_json(const MukaiVector& v) { return {{"r", v.r}, {"xi", v.h2()}, {"a", v.a}}; }

inline MukaiVector mukai_vector_from_json(const json& j) {
  return MukaiVector::make(int_field(j, "r"), field(j, "xi", [](const json& x) { return vector_from_json(x, 6); }),
                           int_field(j, "a"));
}

inline MukaiModel model_from_json(const json& j) { return MukaiModel(j.is_object() ? j.value("t", Int{2}) : 2); }

inline json to_json(const MkTriple& t) { return {{"m", t.m}, {"k", t.k}, {"t", t.t}, {"w", to_json(t.w)}}; }

inline MkTriple triple_from_json(const json& j) {
  MkTriple t = MkTriple::standard(int_field(j, "m"), int_field(j, "k"), j.value("t", Int{2}));
  if (j.contains("w")) t.w = mukai_vector_from_json(j.at("w"));
  t.validate();
  return t;
}

// ---------------------------------------------------------------- words

inline json to_json(const Token& t) {
  json params = json::object();
  if (t.kind == TokenKind::SurfaceLift) params["matrix"] = to_json(t.lift);
  if (t.kind == TokenKind::TensorL) params["class"] = t.cls;
  json j{{"kind", to_string(t.kind)}, {"params", params}};
  if (t.inverse) return {{"kind", "inverse"}, {"params", {{"token", j}}}};
  return j;
}

inline Token token_from_json(const json& j) {
  const std::string kind = field(j, "kind", [](const json& x) { return x.get<std::string>(); });
  const json params = j.value("params", json::object());
  if (kind == "inverse") return token_from_json(field(params, "token", [](const json& x) { return x; })).inverted();
  Token t = Token::of(token_kind_from_string(kind));
  if (t.kind == TokenKind::SurfaceLift) t.lift = field(params, "matrix", matrix_from_json);
  if (t.kind == TokenKind::TensorL) t.cls = field(params, "class", [](const json& x) { return vector_from_json(x, 6); });
  return t;
}

inline json to_json(const GroupoidWord& w) {
  json tokens = json::array();
  for (const auto& t : w.tokens) tokens.push_back(to_json(t));
  return {{"triple", to_json(w.triple)}, {"tokens", tokens}};
}

inline GroupoidWord word_from_json(const json& j) {
  GroupoidWord w{field(j, "triple", triple_from_json), {}};
  for (const auto& t : field(j, "tokens", [](const json& x) { return x; })) w.tokens.push_back(token_from_json(t));
  return w;
}

inline json to_json(const MonodromyCertificate& c) {
  return {{"word", to_json(c.word)},
          {"composite", to_json(c.composite.matrix())},
          {"ori", c.ori},
          {"restricted", to_json(c.restricted.matrix())},
          {"characters", {{"det", c.det}, {"ori", c.restricted_ori}, {"disc", c.disc}}},
          {"in_W", c.in_W},
          {"in_N", c.in_N},
          {"marking", "xi_hat = xi"},
          {"orientation", "omega, e2+f2, e3+f3, (1,0,-1)"}};
}

// ---------------------------------------------------------------- pair normalization

inline json to_json(const LemsimoSolution& s, const LemsimoProblem& p) {
  const auto& tr = s.trace;
  return {{"k", p.k},
          {"xi1", p.xi1},
          {"xi2", p.xi2},
          {"bound", p.search_bound},
          {"beta1", s.beta1},
          {"beta2", s.beta2},
          {"g", to_json(s.g.matrix())},
          {"characters", {{"det", det_char(s.g)}, {"ori", ori_char(s.g, u3_orientation())}}},
          {"trace",
           {{"targets", tr.targets},
            {"phi", to_json(tr.phi)},
            {"psi", to_json(tr.psi)},
            {"extension", to_json(tr.extension)},
            {"isotropic1", tr.isotropic1},
            {"isotropic2", tr.isotropic2},
            {"eta_applied", tr.eta_applied},
            {"theta_applied", tr.theta_applied}}}};
}

}  // namespace mlat::io
