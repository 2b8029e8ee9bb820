#pragma once

// Registry of exact property checks over seeded random samples. Every check is
// deterministic given (config, seed); the report lists checks in registry order.

#include <chrono>
#include <random>

#include "mlat/json_io.hpp"

namespace mlat {

// ------------------------------------------------------------------ sampling

namespace sample {

/// splitmix64 finalizer; derives an independent stream per check.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(mix(seed ^ mix(index))); }

inline Int uniform(Rng& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline IntVector box_vector(Rng& rng, std::size_t dim, Int bound) {
  IntVector v(dim);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

/// Pair (x, y) with |x|, |y| ≤ bound and x·y = n, or nothing.
inline std::optional<std::pair<Int, Int>> factor_pair(Rng& rng, Int n, Int bound) {
  if (n == 0) {
    Int x = uniform(rng, -bound, bound);
    return uniform(rng, 0, 1) ? std::pair{x, Int{0}} : std::pair{Int{0}, x};
  }
  std::vector<std::pair<Int, Int>> opts;
  for (Int d = -bound; d <= bound; ++d)
    if (d != 0 && n % d == 0 && std::abs(n / d) <= bound) opts.emplace_back(d, n / d);
  if (opts.empty()) return std::nullopt;
  return opts[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(opts.size()) - 1))];
}

/// u ∈ U⊕U⊕U⊕<-2k> with u² = sq (±2) and coordinates bounded by `bound`.
inline IntVector root(Rng& rng, Int k, Int sq, Int bound) {
  while (true) {
    const Int c = uniform(rng, -bound, bound);
    const Int half = sq / 2 + k * c * c;  // x1y1 + x2y2 + x3y3
    IntVector u = box_vector(rng, 4, bound);
    const auto xy = factor_pair(rng, half - u[0] * u[1] - u[2] * u[3], bound);
    if (!xy) continue;
    return {u[0], u[1], u[2], u[3], xy->first, xy->second, c};
  }
}

/// u ∈ U1 ⊕ <e2-f2, e3-f3> ⊂ U⊕U⊕U with u² = ±2 and small coordinates.
inline IntVector algebraic_root(Rng& rng) {
  const IntegerLattice h2 = hyperbolic_sum(3);
  while (true) {
    const IntVector c = box_vector(rng, 4, 3);
    IntVector u{c[0], c[1], c[2], -c[2], c[3], -c[3]};
    const Int sq = h2.square(u);
    if (sq == 2 || sq == -2) return u;
  }
}

/// ρ_{u1} ∘ ρ_{u2} for algebraic roots: an element of SO⁺(H²) fixing the period plane.
inline IntMatrix surface_lift(Rng& rng) {
  const IntegerLattice h2 = hyperbolic_sum(3);
  return (rho(algebraic_root(rng), h2) * rho(algebraic_root(rng), h2)).matrix();
}

/// All primitive vectors of U⊕U⊕U with square `sq` and coordinates bounded by `bound`.
inline std::vector<IntVector> primitive_of_square(Int sq, Int bound) {
  std::vector<IntVector> out;
  IntVector v(6, -bound);
  while (true) {
    if (v[0] * v[1] + v[2] * v[3] + v[4] * v[5] == sq / 2 && content(v) == 1) out.push_back(v);
    std::size_t i = 6;
    while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

/// Random pair satisfying the hypotheses of the normalization problem (non-degenerate span).
inline LemsimoProblem pair_problem(Rng& rng, Int k, const std::vector<IntVector>& pool, Int bound) {
  const auto pick = [&]() { return pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(pool.size()) - 1))]; };
  while (true) {
    LemsimoProblem p{k, pick(), pick(), bound};
    try {
      p.validate();
      return p;
    } catch (const PreconditionError&) {
    }
  }
}

}  // namespace sample

// ------------------------------------------------------------------ registry

struct VerifyConfig {
  std::uint64_t seed = 1;
  Int index_k_min = 3;
  Int index_k_max = 200;
  Int bound = 10;  // search bound for the pair normalization
  Int t = 2;       // ample parameter
  std::vector<std::string> only;  // empty: all checks
};

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  io::json witness = io::json::object();
  Int bound = 0;  // meaningful for Skipped
  double seconds = 0;  // wall time, excluded from the report body
};

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string name;
  std::string description;
  std::function<CheckResult(const VerifyConfig&, sample::Rng&)> run;
};

namespace checks {

using io::json;
using io::to_json;

/// Collects failures; a check passes when none were recorded.
struct Tally {
  Int cases = 0;
  json failures = json::array();
  void fail(json w) {
    if (failures.size() < 10) failures.push_back(std::move(w));  // keep the report short
    ++failed;
  }
  Int failed = 0;
  CheckResult result(const std::string& name, json extra = json::object()) const {
    extra["cases"] = cases;
    extra["failed"] = failed;
    if (failed) extra["failures"] = failures;
    return {name, failed ? CheckStatus::Fail : CheckStatus::Pass, extra};
  }
};

inline CheckResult index_formula(const VerifyConfig& c, sample::Rng&) {
  Tally t;
  for (Int k = c.index_k_min; k <= c.index_k_max; ++k) {
    ++t.cases;
    Int count = 0;
    for (Int a = 0; a < 2 * k; ++a)
      if (gcd(a, 2 * k) == 1 && (a * a) % (4 * k) == 1) ++count;
    const Int formula = Int{1} << distinct_primes(k);
    if (count != formula || static_cast<Int>(enum_disc_autos(k).size()) != formula)
      t.fail({{"k", k}, {"count", count}, {"formula", formula}});
  }
  return t.result("index_formula", {{"k_min", c.index_k_min}, {"k_max", c.index_k_max}});
}

inline CheckResult reflection_characters(const VerifyConfig&, sample::Rng& rng) {
  Tally t;
  for (Int k = 3; k <= 10; ++k) {
    const IntegerLattice l = u3_minus_2k(k);
    const OrientationDatum eps = canonical_orientation_u3(l);
    for (Int i = 0; i < 125; ++i) {  // 8 values of k, 1000 roots
      ++t.cases;
      const Int sq = sample::uniform(rng, 0, 1) ? 2 : -2;
      const IntVector u = sample::root(rng, k, sq, 20);
      const Isometry r = rho(u, l);
      const int ori = ori_char(r, eps), det = det_char(r);
      const bool disc_ok = disc_map(r).is_scalar(-sq / 2);
      if (ori != 0 || det != sq / 2 || !disc_ok) t.fail({{"k", k}, {"u", u}, {"ori", ori}, {"det", det}});
    }
  }
  return t.result("reflection_characters");
}

inline CheckResult involution_identity(const VerifyConfig& c, sample::Rng&) {
  Tally t;
  const MukaiModel model(c.t);
  const Isometry rr = involution_rs_rs1(model);
  ++t.cases;
  if (rr.matrix() != -fm_action(FmKind::Dual, model).matrix()) t.fail({{"R_s R_s1", to_json(rr.matrix())}});
  const IntVector s = mukai_coords(1, IntVector(6, 0), 1);
  const IntVector s1 = mukai_coords(1, IntVector(6, 0), -1);
  for (Int m : {2, 3})
    for (Int k : {3, 4, 5}) {
      ++t.cases;
      const IntVector v = mukai_coords(m, IntVector(6, 0), -m * k);
      const IntVector mid = reflection(s, model.lattice())(v);
      const IntVector out = reflection(s1, model.lattice())(mid);
      if (mid != mukai_coords(m * k, IntVector(6, 0), -m) || out != scale(Int{-1}, v))
        t.fail({{"m", m}, {"k", k}, {"mid", mid}, {"out", out}});
    }
  return t.result("involution_identity");
}

/// Random word in FM actions (with inverses) and surface lifts.
inline Isometry random_fm_word(sample::Rng& rng, const MukaiModel& model, json& desc) {
  Isometry g = Isometry::identity(model.lattice());
  const Int len = sample::uniform(rng, 1, 6);
  for (Int i = 0; i < len; ++i) {
    const Int kind = sample::uniform(rng, 0, 5);
    Token tok = Token::of(TokenKind::CongruenceId);
    switch (kind) {
      case 0: tok = Token::tensor({sample::uniform(rng, -3, 3), sample::uniform(rng, -3, 3), 0, 0, 0, 0}); break;
      case 1: tok = Token::of(TokenKind::Poincare); break;
      case 2: tok = Token::of(TokenKind::PoincareDual); break;
      case 3: tok = Token::of(TokenKind::Elliptic); break;
      default: tok = Token::surface_lift(sample::surface_lift(rng)); break;
    }
    if (sample::uniform(rng, 0, 1)) tok = tok.inverted();
    desc.push_back(io::to_json(tok));
    g = token_isometry(tok, model) * g;
  }
  return g;
}

inline CheckResult fm_orientation(const VerifyConfig& c, sample::Rng& rng) {
  Tally t;
  const MukaiModel model(c.t);
  const std::pair<const char*, Isometry> table[] = {
      {"tensor", fm_action(FmKind::Tensor, model, model.omega_h2())},
      {"poincare", fm_action(FmKind::Poincare, model)},
      {"elliptic", fm_action(FmKind::Elliptic, model)},
      {"poincare_dual", fm_action(FmKind::PoincareDual, model)}};
  const int expected[] = {0, 0, 0, 1};
  json row = json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    ++t.cases;
    const int h = hodge_ori(table[i].second, model), e = epsilon_ori(table[i].second, model);
    row[table[i].first] = {h, e};
    if (h != expected[i] || e != expected[i]) t.fail({{"action", table[i].first}, {"hodge", h}, {"epsilon", e}});
  }
  for (int i = 0; i < 200; ++i) {
    ++t.cases;
    json desc = json::array();
    const Isometry g = random_fm_word(rng, model, desc);
    try {
      const int h = hodge_ori(g, model), e = epsilon_ori(g, model);
      if (h != e) t.fail({{"word", desc}, {"hodge", h}, {"epsilon", e}});
    } catch (const DecisionDegenerate& ex) {
      t.fail({{"word", desc}, {"error", ex.what()}});
    }
  }
  return t.result("fm_orientation", {{"table", row}});
}

inline CheckResult elliptic_constraints(const VerifyConfig& c, sample::Rng& rng) {
  Tally t;
  const MukaiModel model(c.t);
  const Isometry el = fm_action(FmKind::Elliptic, model);
  ++t.cases;
  if (!preserves_form(el.matrix(), model.lattice().gram(), model.lattice().gram())) t.fail("gram not preserved");
  for (Int k : {3, 4, 5}) {
    for (Int m : {1, 2, 3}) {
      ++t.cases;
      const IntVector got = el(mukai_coords(m, IntVector(6, 0), -m * k));
      if (got != mukai_coords(0, {m, m * k, 0, 0, 0, 0}, m)) t.fail({{"m", m}, {"k", k}, {"image", got}});
    }
    for (int i = 0; i < 50; ++i) {
      ++t.cases;
      const IntVector b = sample::box_vector(rng, 4, 20);
      const IntVector beta{0, 0, b[0], b[1], b[2], b[3]};
      const IntVector got = el(mukai_coords(1, beta - IntVector{0, 1, 0, 0, 0, 0}, k));
      const IntVector want = mukai_coords(0, IntVector{1, -k, 0, 0, 0, 0} - beta, 0);
      if (got != want) t.fail({{"k", k}, {"beta", beta}, {"image", got}});
    }
  }
  return t.result("elliptic_constraints");
}

inline CheckResult dual_certificate(const VerifyConfig& c, sample::Rng&) {
  Tally t;
  const MukaiModel model(c.t);
  const Isometry rr = involution_rs_rs1(model);
  for (auto [m, k] : {std::pair<Int, Int>{2, 3}, {2, 5}, {3, 4}})
    for (Int p : {1, 2}) {
      ++t.cases;
      const MkTriple tr = MkTriple::standard(m, k, c.t);
      const MonodromyCertificate cert = propdual_certificate(tr, p, model);
      const IntegerLattice vp = v_perp(tr.v(), model.lattice_ptr());
      const bool same = restricted_matrix(rr, vp, vp) == cert.restricted.matrix();
      if (!same || !cert.in_N || cert.ori != 1)
        t.fail({{"m", m}, {"k", k}, {"p", p}, {"matches", same}, {"in_N", cert.in_N}, {"ori", cert.ori}});
    }
  return t.result("dual_certificate");
}

inline CheckResult nikulin_gluing(const VerifyConfig&, sample::Rng& rng) {
  Tally t;
  Int obstruction_cases = 0;
  const LatticePtr l = u3_ambient();
  while (t.cases < 200) {
    const Int r = sample::uniform(rng, 1, 2);
    std::vector<IntVector> gens;
    for (Int i = 0; i < r; ++i) gens.push_back(sample::box_vector(rng, 6, 10));
    std::optional<IntegerLattice> s, k;
    try {
      s.emplace(saturate(gens, l, "S"));
      k.emplace(orth_complement(*s, "K"));
    } catch (const ArgumentError&) {
      continue;  // dependent or degenerate sample
    }
    ++t.cases;
    json w{{"gens", gens}};
    try {
      const GlueData g = glue(*s, *k);
      for (std::size_t i = 0; i < g.disc_s.length(); ++i) {
        const IntVector x = g.disc_s.generator(i);
        if ((g.disc_s.qbar(x) + g.disc_k.qbar(g.gamma(x))).reduce_mod(2) != Rational(0)) t.fail(w);
      }
      const Isometry ext = extend_isometry(Isometry::identity(*s), Isometry::identity(*k), g, g);
      const Isometry neg = extend_isometry(Isometry::negation(*s), Isometry::negation(*k), g, g);
      if (ext.matrix() != IntMatrix::identity(6) || neg.matrix() != -IntMatrix::identity(6)) t.fail(w);
      if (!DiscHom::scalar(g.disc_s.invariants(), -1).is_identity()) {
        ++obstruction_cases;
        try {
          extend_isometry(Isometry::identity(*s), Isometry::negation(*k), g, g);
          t.fail({{"gens", gens}, {"error", "incompatible pair extended"}});
        } catch (const ExtensionObstructed&) {
        }
      }
    } catch (const std::exception& e) {
      w["error"] = e.what();
      t.fail(w);
    }
  }
  return t.result("nikulin_gluing", {{"obstruction_cases", obstruction_cases}});
}

/// g̃ ∘ R_{u1} ∘ R_{u2} ∘ g̃⁻¹ = R_{t1} ∘ R_{t2} with u_i = (1, ξ_i, k), t_i = (1, β_i - f, k).
inline bool conjugation_identity(const LemsimoProblem& p, const LemsimoSolution& s, const MukaiModel& model) {
  const IntegerLattice& ml = model.lattice();
  const Isometry gt = extend_surface(s.g.matrix(), model);
  const IntVector f = u3::f();
  const auto r = [&](const IntVector& xi) { return reflection(mukai_coords(1, xi, p.k), ml); };
  const Isometry lhs = gt * r(p.xi1) * r(p.xi2) * gt.inverse();
  const Isometry rhs = r(s.beta1 - f) * r(s.beta2 - f);
  return lhs == rhs;
}

inline CheckResult pair_normalization(const VerifyConfig& c, sample::Rng& rng) {
  if (c.bound <= 0) return {"pair_normalization", CheckStatus::Skipped, {{"reason", "search bound 0"}}, c.bound};
  Tally t;
  const MukaiModel model(c.t);
  json counts = json::object();
  for (Int k : {3, 4, 5}) {
    const auto pool = sample::primitive_of_square(2 * k - 2, 6);
    for (int i = 0; i < 20; ++i) {
      ++t.cases;
      const LemsimoProblem p = sample::pair_problem(rng, k, pool, c.bound);
      json w{{"k", k}, {"xi1", p.xi1}, {"xi2", p.xi2}};
      try {
        const LemsimoSolution s = solve(p);
        const IntVector f = u3::f();
        const bool ok = det_char(s.g) == 1 && ori_char(s.g, u3_orientation()) == 0 && s.g(p.xi1) == s.beta1 - f &&
                        s.g(p.xi2) == s.beta2 - f && conjugation_identity(p, s, model);
        if (!ok) t.fail(w);
      } catch (const NotFound& e) {
        w["stage"] = e.stage;
        w["bound"] = e.bound;
        t.fail(w);
      } catch (const LemsimoObstructed& e) {
        w["obstructed"] = e.what();
        w["witness"] = e.witness.str();
        t.fail(w);
      }
    }
  }
  return t.result("pair_normalization", {{"bound", c.bound}});
}

inline CheckResult similitude(const VerifyConfig& c, sample::Rng& rng) {
  Tally t;
  const MukaiModel model(c.t);
  for (Int m : {2, 3, 5}) {
    const Int k = 3;
    const MkTriple tr = MkTriple::standard(m, k, c.t);
    const IntegerLattice vp = v_perp(tr.v(), model.lattice_ptr());
    const IntegerLattice wp = v_perp(tr.w.coords(), model.lattice_ptr());
    ++t.cases;
    if (!same_sublattice(vp, wp)) t.fail({{"m", m}, {"error", "v-perp differs from w-perp"}});
    for (int i = 0; i < 100; ++i) {
      ++t.cases;
      const IntVector x = sample::box_vector(rng, 7, 20), y = sample::box_vector(rng, 7, 20);
      if (wp.inner(istar(x, m), istar(y, m)) != m * m * vp.inner(x, y)) t.fail({{"m", m}, {"x", x}, {"y", y}});
    }
    const OrientationDatum eps = canonical_orientation_u3(vp);
    for (int i = 0; i < 10; ++i) {
      ++t.cases;
      const Isometry g = rho(sample::root(rng, k, sample::uniform(rng, 0, 1) ? 2 : -2, 5), vp);
      const Isometry h = isharp(g, wp);
      if (det_char(g) != det_char(h) || ori_char(g, eps) != ori_char(h, canonical_orientation_u3(wp)) ||
          disc_sign(g) != disc_sign(h))
        t.fail({{"m", m}, {"g", to_json(g.matrix())}});
    }
  }
  return t.result("similitude");
}

inline CheckResult v_perp_structure(const VerifyConfig& c, sample::Rng&) {
  Tally t;
  const MukaiModel model(c.t);
  for (Int k = 3; k <= 20; ++k)
    for (Int m : {1, 2, 3}) {
      ++t.cases;
      const IntegerLattice vp = v_perp(mukai_coords(m, IntVector(6, 0), -m * k), model.lattice_ptr());
      const DiscriminantData a = disc_group(vp);
      RatVector lift(7, Rational(0));
      lift[6] = Rational(1, 2 * k);
      const IntVector gen = a.coords_of(lift);
      const bool order_ok = a.invariants() == std::vector<Int>{2 * k} && gcd(gen.at(0), 2 * k) == 1;
      const bool q_ok = a.qbar(gen) == Rational(-1, 2 * k).reduce_mod(2);
      const bool sig_ok = vp.signature() == Signature{3, 4};
      if (!order_ok || !q_ok || !sig_ok) t.fail({{"k", k}, {"m", m}, {"invariants", a.invariants()}});
    }
  return t.result("v_perp_structure");
}

}  // namespace checks

inline const std::vector<Check>& registry() {
  static const std::vector<Check> r{
      {"index_formula", "number of q-preserving units mod 2k equals 2^rho(k)", checks::index_formula},
      {"reflection_characters", "ori, det and disc of signed reflections", checks::reflection_characters},
      {"involution_identity", "R_s R_s1 = -D and R_s1 R_s(v) = -v", checks::involution_identity},
      {"fm_orientation", "orientation of FM actions under both criteria", checks::fm_orientation},
      {"elliptic_constraints", "values of the elliptic FM action", checks::elliptic_constraints},
      {"dual_certificate", "duality word restricts to R_s R_s1 and lies in N", checks::dual_certificate},
      {"nikulin_gluing", "anti-isometry of glue maps and extension criterion", checks::nikulin_gluing},
      {"pair_normalization", "g in SO+ with g(xi_i) = beta_i - f", checks::pair_normalization},
      {"similitude", "i* scales the form by m^2, i# keeps characters", checks::similitude},
      {"v_perp_structure", "v-perp has A = Z/2k, q = -1/2k and signature (3,4)", checks::v_perp_structure},
  };
  return r;
}

/// Runs the selected checks in registry order; exceptions become failures.
inline std::vector<CheckResult> run_checks(const VerifyConfig& c) {
  std::vector<CheckResult> out;
  const auto& reg = registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const Check& chk = reg[i];
    if (!c.only.empty() && std::find(c.only.begin(), c.only.end(), chk.name) == c.only.end()) continue;
    sample::Rng rng = sample::stream(c.seed, i);
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = chk.run(c, rng);
    } catch (const std::exception& e) {
      r = {chk.name, CheckStatus::Fail, {{"error", e.what()}}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

inline io::json report_json(const VerifyConfig& c, const std::vector<CheckResult>& results) {
  io::json checks = io::json::array();
  for (const auto& r : results) {
    io::json j{{"name", r.name}, {"status", to_string(r.status)}, {"witness", r.witness}};
    if (r.status == CheckStatus::Skipped) j["bound"] = r.bound;
    checks.push_back(j);
  }
  return {{"checks", checks},
          {"seed", c.seed},
          {"config",
           {{"index_k_min", c.index_k_min}, {"index_k_max", c.index_k_max}, {"bound", c.bound}, {"t", c.t}}}};
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

}  // namespace mlat
