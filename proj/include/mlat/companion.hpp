#pragma once

// Companion isometries ψ: K1 → K2 with a prescribed discriminant action, the
// missing ingredient of Nikulin's extension criterion.

#include <deque>
#include <map>
#include <optional>

#include "mlat/discriminant.hpp"
#include "mlat/split.hpp"

namespace mlat {

/// Disc action of an integral reflection, computed on the generator lifts only.
inline std::optional<DiscHom> reflection_disc_action(const IntVector& v, const IntegerLattice& k,
                                                     const DiscriminantData& a) {
  const Int vv = k.square(v);
  if (vv == 0) return std::nullopt;
  const IntVector gv = k.gram() * v;
  for (Int x : gv)
    if (checked::mul(2, x) % vv != 0) return std::nullopt;
  IntMatrix m(a.length(), a.length());
  const RatVector rv = to_rational(v);
  for (std::size_t j = 0; j < a.length(); ++j) {
    const RatVector& l = a.generator_lifts()[j];
    Rational c = Rational(2) * dot(l, to_rational(gv)) / Rational(vv);
    m.set_col(j, a.coords_of(l - scale(c, rv)));
  }
  return DiscHom(a.invariants(), a.invariants(), m);
}

/// Reflections of K read off its split U ⊕ M: for m ∈ M (coordinates bounded by
/// `bound`) and d dividing m·M, the vector v = m + d·e + c·d·f pairs into dZ with K, and
/// c is chosen so that v² ∈ {±d, ±2d}. R_v is then integral and acts on A_K as the
/// reflection in the class of m/d. The reflections are isometries of the model U ⊕ M.
inline std::vector<Isometry> split_reflections(const HyperbolicSplit& sp, Int bound) {
  const IntMatrix& g = sp.model.gram();
  const std::size_t r = g.rows() - 2;
  IntMatrix gm(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gm(i, j) = g(i + 2, j + 2);
  std::vector<Isometry> out;
  for_each_in_box(r, bound, [&](const IntVector& m) {
    const Int div = content(gm * m);
    const Int mm = dot(m, gm * m);
    for (Int d = 1; d <= div; ++d) {
      if (div % d != 0) continue;
      for (Int n : {d, -d, 2 * d, -2 * d}) {
        const Int num = checked::sub(n, mm), den = checked::mul(2, checked::mul(d, d));
        if (num % den != 0) continue;
        IntVector v(g.rows(), 0);
        v[0] = d;
        v[1] = checked::mul(num / den, d);
        for (std::size_t i = 0; i < r; ++i) v[i + 2] = m[i];
        if (auto refl = integral_reflection(v, sp.model)) out.push_back(*refl);
      }
    }
    return false;
  });
  return out;
}

namespace detail {

/// Breadth-first search over the subgroup of O(A_K) generated by the disc actions of
/// the generators added so far; the shortest word over the earliest generators wins.
class DiscWordSearch {
 public:
  DiscWordSearch(const IntegerLattice& k, DiscHom target)
      : k_(k), target_(std::move(target)), reached_{{DiscHom::identity(target_.source_invariants()), {}}} {}

  /// Adds g unless its action is trivial or already known; returns true if it was added.
  bool add(const Isometry& g) { return add(g, disc_map(g)); }

  bool add(const Isometry& g, DiscHom act) {
    if (act.is_identity()) return false;
    for (const auto& known : actions_)
      if (known == act) return false;
    gens_.push_back(g);
    actions_.push_back(std::move(act));
    return true;
  }

  bool knows(const DiscHom& act) const {
    for (const auto& known : actions_)
      if (known == act) return true;
    return false;
  }

  /// The isometry realizing the target, once it lies in the generated subgroup.
  std::optional<Isometry> close() {
    auto word = find_word();
    if (!word) return std::nullopt;
    Isometry c = Isometry::identity(k_);
    for (std::size_t i : *word) c = gens_[i] * c;
    return c;
  }

 private:
  std::optional<std::vector<std::size_t>> find_word() {
    if (auto it = reached_.find(target_); it != reached_.end()) return it->second;
    std::deque<DiscHom> queue;
    for (const auto& [h, w] : reached_) queue.push_back(h);
    while (!queue.empty()) {
      DiscHom h = queue.front();
      queue.pop_front();
      const auto word = reached_.at(h);
      for (std::size_t i = 0; i < actions_.size(); ++i) {
        DiscHom next = actions_[i] * h;
        if (reached_.count(next)) continue;
        auto w = word;
        w.push_back(i);
        reached_.emplace(next, w);
        if (next == target_) return w;
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  const IntegerLattice& k_;
  DiscHom target_;
  std::vector<Isometry> gens_;
  std::vector<DiscHom> actions_;
  std::map<DiscHom, std::vector<std::size_t>> reached_;
};

inline void add_reflection_shells(DiscWordSearch& search, const IntegerLattice& k, const DiscriminantData& a, Int bound,
                                  std::optional<Isometry>& found) {
  if ((found = search.close())) return;
  for (Int r = 1; r <= bound && !found; ++r) {
    for_each_in_box(k.rank(), r, [&](const IntVector& v) {
      Int m = 0;
      for (Int x : v) m = std::max(m, x < 0 ? -x : x);
      if (m != r) return false;
      auto act = reflection_disc_action(v, k, a);
      if (!act || act->is_identity() || search.knows(*act)) return false;
      search.add(*integral_reflection(v, k), std::move(*act));
      return false;
    });
    found = search.close();
  }
}

}  // namespace detail

/// An isometry c of K with disc(c) == target, composed from −id, the given generators
/// and integral reflections in vectors of K with coordinates bounded by `bound`. Box
/// shells are added one at a time and the reachable part of O(A_K) is explored
/// breadth-first, so the shortest word over the earliest generators wins.
inline Isometry realize_disc_action(const IntegerLattice& k, const DiscHom& target, Int bound,
                                    const std::vector<Isometry>& extra = {}, const std::string& stage = "companion") {
  if (target.is_identity()) return Isometry::identity(k);
  const DiscriminantData a = disc_group(k);
  detail::DiscWordSearch search(k, target);
  search.add(Isometry::negation(k));
  for (const auto& g : extra) search.add(g);
  std::optional<Isometry> found;
  detail::add_reflection_shells(search, k, a, bound, found);
  if (!found) throw NotFound(stage, bound);
  return *found;
}

/// ψ: K1 → K2 with disc(ψ) = γ2 ∘ disc(phi) ∘ γ1⁻¹. Both complements are split as
/// U ⊕ S(-1) and ψ = t2⁻¹ ∘ c ∘ t1, where t_i: K_i → U ⊕ S(-1) are the splits and c
/// is an isometry of the model with the corrected discriminant action. c is built from
/// −id and reflections of the model, then from comparisons with further splits.
inline Isometry find_companion(const Isometry& phi, const GlueData& g1, const GlueData& g2, Int bound,
                               const HyperbolicSplit* split1 = nullptr, const HyperbolicSplit* split2 = nullptr) {
  const DiscHom target = g2.gamma * disc_map(phi) * g1.gamma_inv;
  if (g1.k == g2.k && target.is_identity()) return Isometry::identity(g1.k);
  if (bound <= 0) throw NotFound("companion", 0);

  const IntMatrix& s_gram = phi.source().gram();
  std::optional<HyperbolicSplit> own1, own2;
  if (!split1) split1 = &own1.emplace(canonical_split(g1.k, s_gram, bound, "split K1"));
  if (!split2) split2 = &own2.emplace(canonical_split(g2.k, s_gram, bound, "split K2"));
  const IntegerLattice& model = split2->model;
  const Isometry t1 = split1->to_model, t2_inv = split2->to_model.inverse();

  const DiscHom needed = disc_map(split2->to_model) * target * disc_map(t1.inverse());
  std::optional<Isometry> found;
  if (needed.is_identity()) {
    found = Isometry::identity(model);
  } else {
    detail::DiscWordSearch search(model, needed);
    search.add(Isometry::negation(model));
    for (const auto& g : split_reflections(*split2, bound)) search.add(g);
    detail::add_reflection_shells(search, model, disc_group(model), bound, found);
    if (!found) {
      // every isometry of the model carries its standard split to another one, so
      // further splits reach actions that reflections miss
      for_each_split(model, s_gram, bound, [&](const HyperbolicSplit& sp) {
        if (search.add(sp.to_model)) found = search.close();
        return found.has_value();
      });
    }
  }
  if (!found) throw NotFound("companion", bound);
  const Isometry psi = t2_inv * *found * t1;
  if (disc_map(psi) != target) throw InternalError("companion has the wrong discriminant action");
  return psi;
}

}  // namespace mlat
