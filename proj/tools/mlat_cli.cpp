// mlat: lattice, isometry and monodromy computations from the command line.
//
// Exit codes: 0 success (verify: all checks pass or skip), 1 a check failed or the
// input is not an isometry / has no solution, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mlat/mlat.hpp"

namespace {

using mlat::io::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw mlat::io::ParseError(path + ": " + e.what());
  }
}

/// A lattice document with a Gram matrix, or just a label such as "U+U+U+<-6>".
mlat::IntegerLattice load_lattice(const std::string& path) {
  const json j = read_json(path);
  if (j.is_string()) return mlat::io::lattice_from_label(j.get<std::string>());
  if (j.is_object() && !j.contains("gram") && j.contains("label"))
    return mlat::io::lattice_from_label(j.at("label").get<std::string>());
  return mlat::io::lattice_from_json(j);
}

mlat::IntVector parse_vector(const std::string& s, std::size_t expected) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::parse_error&) {
    // also accept "1,2,3"
    std::string t = s;
    if (t.empty() || t.front() != '[') t = "[" + t + "]";
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw mlat::io::ParseError("bad vector '" + s + "': " + e.what());
    }
  }
  return mlat::io::vector_from_json(j, expected);
}

/// U⊕U⊕U orientation when the lattice starts with that block, a diagonalization otherwise.
mlat::OrientationDatum default_orientation(const mlat::IntegerLattice& l) {
  if (l.rank() >= 6) {
    const mlat::IntMatrix u3 = mlat::hyperbolic_sum(3).gram();
    bool leading = true;
    for (std::size_t i = 0; i < 6 && leading; ++i)
      for (std::size_t j = 0; j < l.rank() && leading; ++j)
        leading = l.gram()(i, j) == (j < 6 ? u3(i, j) : 0);
    if (leading) return mlat::canonical_orientation_u3(l);
  }
  return mlat::OrientationDatum::from_diagonalization(l);
}

json characters(const mlat::Isometry& g, const mlat::OrientationDatum& eps) {
  const mlat::DiscHom d = mlat::disc_map(g);
  json j{{"det", mlat::det_char(g)}, {"ori", mlat::ori_char(g, eps)}, {"disc", mlat::io::disc_to_json(d)}};
  if (mlat::disc_group(g.source()).cyclic()) {
    j["in_W"] = mlat::in_W(g, eps);
    j["in_N"] = mlat::in_N(g, eps);
  } else {
    j["in_W"] = nullptr;
    j["in_N"] = nullptr;
  }
  return j;
}

void print_text(const json& j, std::ostream& os, const std::string& indent = "") {
  if (!j.is_object()) {
    os << indent << j.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << indent << key << ":\n";
      print_text(value, os, indent + "  ");
    } else {
      os << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

struct Output {
  std::string format = "json";
  void emit(const json& j) const {
    if (format == "text")
      print_text(j, std::cout);
    else
      std::cout << j.dump(2) << "\n";
  }
};

void print_verify_text(const mlat::VerifyConfig& c, const std::vector<mlat::CheckResult>& results) {
  std::cout << "seed " << c.seed << "\n";
  for (const auto& r : results) {
    std::cout << (r.status == mlat::CheckStatus::Pass ? "PASS " : r.status == mlat::CheckStatus::Fail ? "FAIL " : "SKIP ")
              << r.name;
    if (r.status == mlat::CheckStatus::Skipped) std::cout << " (bound " << r.bound << ")";
    std::cout << "  " << r.witness.dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice computations for monodromy of Mukai lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  int status = kOk;

  // info
  auto* info = app.add_subcommand("info", "summary of a lattice, or of the library without an argument");
  std::string info_file;
  info->add_option("lattice", info_file, "lattice JSON file");
  info->callback([&] {
    if (info_file.empty()) {
      json checks = json::array();
      for (const auto& c : mlat::registry()) checks.push_back({{"name", c.name}, {"description", c.description}});
      out.emit({{"name", "mlat"},
                {"version", "1.0.0"},
                {"subcommands",
                 {"info", "disc-group", "characters", "reflect", "fm", "word", "lemsimo", "index", "verify"}},
                {"checks", checks}});
      return;
    }
    const mlat::IntegerLattice l = load_lattice(info_file);
    const mlat::Signature sig = l.signature();
    out.emit({{"label", l.label()},
              {"rank", l.rank()},
              {"signature", {sig.positive, sig.negative}},
              {"determinant", l.determinant()},
              {"unimodular", l.unimodular()},
              {"discriminant", mlat::io::to_json(mlat::disc_group(l))}});
  });

  // disc-group
  auto* disc = app.add_subcommand("disc-group", "discriminant group and its quadratic form");
  std::string disc_file;
  disc->add_option("lattice", disc_file, "lattice JSON file")->required();
  disc->callback([&] { out.emit(mlat::io::to_json(mlat::disc_group(load_lattice(disc_file)))); });

  // characters
  auto* chars = app.add_subcommand("characters", "det, ori, disc, W and N membership of an isometry");
  std::string chars_lattice, chars_iso;
  chars->add_option("lattice", chars_lattice, "lattice JSON file")->required();
  chars->add_option("isometry", chars_iso, "isometry JSON file with a 'matrix' field")->required();
  chars->callback([&] {
    const mlat::IntegerLattice l = load_lattice(chars_lattice);
    const mlat::IntMatrix m = mlat::io::field(read_json(chars_iso), "matrix", mlat::io::matrix_from_json);
    std::optional<mlat::Isometry> g;
    try {
      g.emplace(l, l, m);
    } catch (const mlat::ArgumentError& e) {
      std::cerr << "not an isometry: " << e.what() << "\n";
      status = kFail;
      return;
    }
    out.emit(characters(*g, default_orientation(l)));
  });

  // reflect
  auto* refl = app.add_subcommand("reflect", "signed reflection rho_u in a (+-2)-vector");
  std::string refl_lattice, refl_u;
  refl->add_option("lattice", refl_lattice, "lattice JSON file")->required();
  refl->add_option("--u", refl_u, "vector, e.g. [1,-1,0,0,0,0,0]")->required();
  refl->callback([&] {
    const mlat::IntegerLattice l = load_lattice(refl_lattice);
    const mlat::IntVector u = parse_vector(refl_u, l.rank());
    const mlat::Isometry r = mlat::rho(u, l);
    out.emit({{"u", u}, {"square", l.square(u)}, {"matrix", mlat::io::to_json(r.matrix())},
              {"characters", characters(r, default_orientation(l))}});
  });

  // fm
  auto* fm = app.add_subcommand("fm", "cohomological action of a Fourier-Mukai transform");
  std::string fm_kind = "poincare", fm_class;
  mlat::Int fm_t = 2;
  fm->add_option("--kind", fm_kind, "tensor, poincare, dual, poincare_dual or elliptic")->capture_default_str();
  fm->add_option("--class", fm_class, "NS class for tensor, 6 coordinates");
  fm->add_option("--t", fm_t, "ample parameter")->capture_default_str();
  fm->callback([&] {
    const mlat::MukaiModel model(fm_t);
    const mlat::FmKind kind = mlat::fm_kind_from_string(fm_kind);
    const mlat::IntVector c = fm_class.empty() ? mlat::IntVector{} : parse_vector(fm_class, 6);
    const mlat::Isometry g = mlat::fm_action(kind, model, c);
    json j{{"kind", fm_kind}, {"t", fm_t}, {"matrix", mlat::io::to_json(g.matrix())},
           {"epsilon_ori", mlat::epsilon_ori(g, model)}};
    try {
      j["hodge_ori"] = mlat::hodge_ori(g, model);
    } catch (const mlat::PreconditionError& e) {
      j["hodge_ori"] = nullptr;
      j["hodge_note"] = e.what();
    }
    out.emit(j);
  });

  // word
  auto* word = app.add_subcommand("word", "monodromy certificate of a groupoid word");
  std::string word_file;
  mlat::Int word_m = 0, word_k = 3, word_p = 1, word_t = 2;
  word->add_option("file", word_file, "word JSON file");
  word->add_option("--propdual", word_m, "certify the duality word for v = m(1,0,-k) instead of a file");
  word->add_option("--k", word_k, "k for --propdual")->capture_default_str();
  word->add_option("--p", word_p, "multiple of the ample class for --propdual")->capture_default_str();
  word->add_option("--t", word_t, "ample parameter")->capture_default_str();
  word->callback([&] {
    const mlat::MukaiModel model(word_t);
    if (word_m > 0) {
      const mlat::MkTriple tr = mlat::MkTriple::standard(word_m, word_k, word_t);
      out.emit(mlat::io::to_json(mlat::propdual_certificate(tr, word_p, model)));
      return;
    }
    if (word_file.empty()) throw UsageError("word needs a file or --propdual M");
    const mlat::GroupoidWord w = mlat::io::word_from_json(read_json(word_file));
    const mlat::WordImage img = mlat::eval_phi_tilde(w, model);
    if (!img.fixes_v) {
      std::cerr << "word does not fix v\n";
      out.emit({{"word", mlat::io::to_json(w)}, {"composite", mlat::io::to_json(img.composite.matrix())},
                {"fixes_v", false}});
      status = kFail;
      return;
    }
    out.emit(mlat::io::to_json(mlat::certify(w, model)));
  });

  // lemsimo
  auto* lem = app.add_subcommand("lemsimo", "isometry of U+U+U normalizing a pair of vectors");
  mlat::LemsimoProblem prob;
  std::string xi1, xi2;
  lem->add_option("--k", prob.k, "k > 2")->capture_default_str();
  lem->add_option("--xi1", xi1, "6 coordinates in (e,f,e2,f2,e3,f3)")->required();
  lem->add_option("--xi2", xi2, "6 coordinates in (e,f,e2,f2,e3,f3)")->required();
  lem->add_option("--bound", prob.search_bound, "coordinate bound of the searches")->capture_default_str();
  lem->callback([&] {
    prob.xi1 = parse_vector(xi1, 6);
    prob.xi2 = parse_vector(xi2, 6);
    try {
      out.emit(mlat::io::to_json(mlat::solve(prob), prob));
    } catch (const mlat::NotFound& e) {
      out.emit({{"status", "not_found"}, {"stage", e.stage}, {"bound", e.bound}});
      status = kFail;
    } catch (const mlat::LemsimoObstructed& e) {
      out.emit({{"status", "obstructed"}, {"reason", e.what()}, {"witness", e.witness.str()}});
      status = kFail;
    }
  });

  // index
  auto* idx = app.add_subcommand("index", "index 2^rho(k) of N in O+, cross-checked against O(A)");
  mlat::Int idx_k = 0, idx_min = 3, idx_max = 0;
  idx->add_option("--k", idx_k, "single k > 2");
  idx->add_option("--k-min", idx_min, "range start")->capture_default_str();
  idx->add_option("--k-max", idx_max, "range end");
  idx->callback([&] {
    if (idx_k == 0 && idx_max == 0) throw UsageError("index needs --k or --k-max");
    const mlat::Int lo = idx_k ? idx_k : idx_min, hi = idx_k ? idx_k : idx_max;
    json rows = json::array();
    for (mlat::Int k = lo; k <= hi; ++k)
      rows.push_back({{"k", k}, {"rho", mlat::distinct_primes(k)}, {"index", mlat::index_monodromy(k)}});
    out.emit(idx_k ? rows.at(0) : json{{"values", rows}});
  });

  // verify
  auto* ver = app.add_subcommand("verify", "run the exact property checks");
  mlat::VerifyConfig cfg;
  ver->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  ver->add_option("--bound", cfg.bound, "search bound of the pair normalization (0 skips it)")->capture_default_str();
  ver->add_option("--t", cfg.t, "ample parameter")->capture_default_str();
  ver->add_option("--k-min", cfg.index_k_min, "index check range start")->capture_default_str();
  ver->add_option("--k-max", cfg.index_k_max, "index check range end")->capture_default_str();
  ver->add_option("--only", cfg.only, "run only the named checks");
  ver->callback([&] {
    for (const auto& name : cfg.only) {
      const auto& reg = mlat::registry();
      if (std::none_of(reg.begin(), reg.end(), [&](const mlat::Check& c) { return c.name == name; }))
        throw UsageError("unknown check '" + name + "'");
    }
    if (cfg.index_k_min < 3 || cfg.index_k_max < cfg.index_k_min) throw UsageError("bad k range");
    const auto results = mlat::run_checks(cfg);
    if (out.format == "text")
      print_verify_text(cfg, results);
    else
      std::cout << mlat::report_json(cfg, results).dump(2) << "\n";
    if (!mlat::all_passed(results)) status = kFail;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const mlat::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return status;
}
