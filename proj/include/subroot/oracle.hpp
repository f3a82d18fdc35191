#pragma once

// Brute-force verification on bounded grade windows.  The oracle never
// trusts a classification: it expands models to explicit root sets, closes
// them under addition and reflection, and compares against the ambient
// window.  Radii come in three sizes: candidates are drawn from the inner
// window, closures run inside the work window, and conclusions are read off
// on the check window.  The work radius must exceed the check radius by at
// least twice the largest period in play, so truncation at the rim cannot
// fake a proper subsystem.

#include <algorithm>
#include <future>
#include <optional>
#include <set>
#include <vector>

#include "affine.hpp"
#include "model.hpp"

namespace subroot {

struct OracleConfig {
  int inner_radius2 = 8;
  int work_radius2 = 16;
  int check_radius2 = 8;
  int threads = 1;
};

// Radii proportional to the largest period of the system under test.
inline OracleConfig default_oracle_config(const SubrootSystem& sub, int threads = 1) {
  int p = 2;
  for (const auto& [v, c] : sub.cosets) p = std::max(p, c.n2);
  return {2 * p, 4 * p, 2 * p, threads};
}

// Closure of a seed set under root addition and reflection, truncated to
// |t2| <= work_radius2.  If stop_when_covers is nonempty the computation
// may return early once the closure contains all of it.
inline Window closure(const SimpleLabel& ambient, const Window& seed, int work_radius2,
                      const Window* stop_when_covers = nullptr) {
  const Ambient& amb = ambient_context(ambient);
  Window seen;
  std::vector<AffineRoot> work;
  std::size_t missing = stop_when_covers ? stop_when_covers->size() : 0;
  auto push = [&](const AffineRoot& x) {
    if (std::abs(x.t2) > work_radius2) return;
    if (!seen.insert(x).second) return;
    work.push_back(x);
    if (stop_when_covers && stop_when_covers->count(x)) --missing;
  };
  for (const auto& x : seed) push(x);
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (stop_when_covers && missing == 0) break;
    const AffineRoot x = work[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const AffineRoot y = work[j];
      AffineRoot s = x + y;
      if (!is_zero(s.v) && std::abs(s.t2) <= work_radius2 && amb.is_real(s)) push(s);
      push(reflect(x, y));
      push(reflect(y, x));
    }
  }
  return seen;
}

// Closure variant for a base already known to be closed within the window:
// only pairs involving at least one newly added root are processed.
inline Window closure_extend(const SimpleLabel& ambient, const Window& closed_base,
                             const std::vector<AffineRoot>& extra, int work_radius2,
                             const Window* stop_when_covers = nullptr) {
  const Ambient& amb = ambient_context(ambient);
  Window seen = closed_base;
  std::vector<AffineRoot> all(closed_base.begin(), closed_base.end());
  std::vector<std::size_t> fresh;
  std::size_t missing = 0;
  if (stop_when_covers)
    for (const auto& x : *stop_when_covers)
      if (!seen.count(x)) ++missing;
  auto push = [&](const AffineRoot& x) {
    if (std::abs(x.t2) > work_radius2) return;
    if (!seen.insert(x).second) return;
    all.push_back(x);
    fresh.push_back(all.size() - 1);
    if (stop_when_covers && missing > 0 && stop_when_covers->count(x)) --missing;
  };
  for (const auto& x : extra) push(x);
  for (std::size_t fi = 0; fi < fresh.size(); ++fi) {
    if (stop_when_covers && missing == 0) break;
    const std::size_t idx = fresh[fi];
    const AffineRoot x = all[idx];
    for (std::size_t j = 0; j <= idx; ++j) {
      const AffineRoot y = all[j];
      AffineRoot s = x + y;
      if (!is_zero(s.v) && std::abs(s.t2) <= work_radius2 && amb.is_real(s)) push(s);
      push(reflect(x, y));
      push(reflect(y, x));
    }
  }
  return seen;
}

struct MaximalityResult {
  bool maximal = true;
  std::optional<AffineRoot> witness;  // a root whose adjunction stays proper
};

// A closed subsystem is maximal when adjoining any outside root generates
// the whole ambient window.  Tries every real root of the inner window not
// in the subsystem; a witness is the first (in root order) whose closure
// fails to cover the check window.
inline MaximalityResult verify_maximal(const SubrootSystem& sub, const OracleConfig& cfg) {
  const Ambient& amb = ambient_context(sub.ambient);
  Window base = expand(sub, cfg.work_radius2);
  std::vector<AffineRoot> candidates;
  for (const auto& x : window_roots(sub.ambient, cfg.inner_radius2))
    if (!base.count(x)) candidates.push_back(x);
  Window target_set;
  for (const auto& x : window_roots(sub.ambient, cfg.check_radius2)) target_set.insert(x);

  auto blows_up = [&](const AffineRoot& gamma) {
    Window cl = closure_extend(amb.label, base, {gamma, -gamma}, cfg.work_radius2, &target_set);
    for (const auto& x : target_set)
      if (!cl.count(x)) return false;
    return true;
  };

  int threads = std::max(1, cfg.threads);
  if (threads == 1 || candidates.size() < 8) {
    for (const auto& gamma : candidates)
      if (!blows_up(gamma)) return {false, gamma};
    return {true, std::nullopt};
  }

  std::size_t chunk = (candidates.size() + threads - 1) / threads;
  std::vector<std::future<std::size_t>> futs;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(candidates.size(), lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
      for (std::size_t i = lo; i < hi; ++i)
        if (!blows_up(candidates[i])) return i;
      return candidates.size();
    }));
  }
  std::size_t first = candidates.size();
  for (auto& f : futs) first = std::min(first, f.get());
  if (first < candidates.size()) return {false, candidates[first]};
  return {true, std::nullopt};
}

// Maximality of sub relative to an enclosing closed system rather than the
// full ambient: candidates come from the parent window and adjunction must
// regenerate the parent, not the ambient.  Requires sub within parent.
inline MaximalityResult verify_maximal_within(const SubrootSystem& parent,
                                              const SubrootSystem& sub,
                                              const OracleConfig& cfg) {
  Window base = expand(sub, cfg.work_radius2);
  Window target_set = expand(parent, cfg.check_radius2);
  std::vector<AffineRoot> candidates;
  for (const auto& x : expand(parent, cfg.inner_radius2))
    if (!base.count(x)) candidates.push_back(x);
  for (const auto& gamma : candidates) {
    Window cl = closure_extend(sub.ambient, base, {gamma, -gamma}, cfg.work_radius2, &target_set);
    for (const auto& x : target_set)
      if (!cl.count(x)) return {false, gamma};
  }
  return {true, std::nullopt};
}

// Model/window agreement on a bounded window.
inline bool model_equals_window(const SubrootSystem& sub, const Window& w, int radius2) {
  return expand(sub, radius2) == w;
}

// Finds closed systems strictly between inner and outer: adjoin one outer
// root to inner, close, and keep every result that stays below the outer
// check window.  Models are fitted from the closures and deduplicated.
inline std::vector<SubrootSystem> intermediate_scan(const SubrootSystem& inner,
                                                    const SubrootSystem& outer,
                                                    const OracleConfig& cfg) {
  Window inner_work = expand(inner, cfg.work_radius2);
  Window outer_check = expand(outer, cfg.check_radius2);
  std::vector<SubrootSystem> out;
  std::set<std::string> seen;
  for (const auto& gamma : expand(outer, cfg.inner_radius2)) {
    if (inner_work.count(gamma)) continue;
    Window cl = closure_extend(inner.ambient, inner_work, {gamma, -gamma}, cfg.work_radius2);
    bool covers = true;
    for (const auto& x : outer_check)
      if (!cl.count(x)) {
        covers = false;
        break;
      }
    if (covers) continue;
    Window restricted;
    for (const auto& x : cl)
      if (std::abs(x.t2) <= cfg.check_radius2) restricted.insert(x);
    SubrootSystem fitted = fit_coset_model(inner.ambient, restricted);
    if (seen.insert(canonical_key(fitted)).second) out.push_back(std::move(fitted));
  }
  return out;
}

}  // namespace subroot
