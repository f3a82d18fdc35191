#pragma once

// Finite descriptions of affine subroot systems.  A subsystem assigns to
// each finite part alpha the set of grades at which it appears; for closed
// subsystems this is a single coset p + nZ (doubled here: p2 + n2 Z), so a
// possibly-infinite subsystem is stored as a map from gradient roots to
// (p2, n2) pairs.  n2 == 0 means the root appears at exactly one grade.
// A window (explicit root set, bounded grade) can be fitted back to such a
// model; with only two observed grades the progression is marked
// undetermined and consumers must widen the window.

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine.hpp"
#include "finite.hpp"
#include "json.hpp"
#include "labels.hpp"

namespace subroot {

using Window = std::set<AffineRoot>;

struct Coset {
  int p2 = 0;
  int n2 = 0;
  bool undetermined = false;

  auto operator<=>(const Coset&) const = default;
};

inline int normalize_p2(int p2, int n2) {
  if (n2 == 0) return p2;
  return ((p2 % n2) + n2) % n2;
}

struct SubrootSystem {
  SimpleLabel ambient;
  std::map<FiniteRoot, Coset> cosets;

  bool has(const FiniteRoot& v) const { return cosets.count(v) != 0; }

  auto operator<=>(const SubrootSystem&) const = default;
};

inline std::vector<FiniteRoot> gradient_of(const SubrootSystem& sub) {
  std::vector<FiniteRoot> out;
  for (const auto& [v, c] : sub.cosets) out.push_back(v);
  return out;
}

inline std::vector<FiniteRoot> gradient_of(const Window& w) {
  std::set<FiniteRoot> seen;
  for (const auto& x : w) seen.insert(x.v);
  return {seen.begin(), seen.end()};
}

// Insert a coset together with its negation mirror.
inline void put_coset(SubrootSystem& sub, const FiniteRoot& v, int p2, int n2,
                      bool undetermined = false) {
  sub.cosets[v] = {normalize_p2(p2, n2), n2, undetermined};
  sub.cosets[-v] = {normalize_p2(-p2, n2), n2, undetermined};
}

// Membership of an affine root in the modeled subsystem.
inline bool model_contains(const SubrootSystem& sub, const AffineRoot& x) {
  auto it = sub.cosets.find(x.v);
  if (it == sub.cosets.end()) return false;
  const Coset& c = it->second;
  if (c.undetermined) throw std::runtime_error("coset model is undetermined; widen the window");
  if (c.n2 == 0) return x.t2 == c.p2;
  return normalize_p2(x.t2, c.n2) == c.p2;
}

// Explicit roots of the model with |t2| <= radius2.
inline Window expand(const SubrootSystem& sub, int radius2) {
  Window out;
  for (const auto& [v, c] : sub.cosets) {
    if (c.undetermined) throw std::runtime_error("coset model is undetermined; widen the window");
    if (c.n2 == 0) {
      if (std::abs(c.p2) <= radius2) out.insert({v, c.p2});
      continue;
    }
    for (int t2 = c.p2; t2 <= radius2; t2 += c.n2) out.insert({v, t2});
    for (int t2 = c.p2 - c.n2; t2 >= -radius2; t2 -= c.n2) out.insert({v, t2});
  }
  return out;
}

// The full ambient system as a model: every gradient root with the complete
// admissible progression.
inline SubrootSystem full_model(const SimpleLabel& ambient) {
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : amb.gradient.roots)
    sub.cosets[v] = {amb.full_offset2(v), amb.full_period2(v), false};
  return sub;
}

// Lift of a finite subsystem: each chosen gradient root with its complete
// admissible progression of grades.
inline SubrootSystem lift(const SimpleLabel& ambient, const std::vector<FiniteRoot>& finite_part) {
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : finite_part) {
    if (!amb.gradient.contains(v)) throw std::invalid_argument("lift root outside gradient");
    sub.cosets[v] = {amb.full_offset2(v), amb.full_period2(v), false};
    sub.cosets[-v] = {amb.full_offset2(v), amb.full_period2(v), false};
  }
  return sub;
}

// Every element a real root within the radius, and the set symmetric.
inline void require_window(const SimpleLabel& ambient, const Window& w, int radius2) {
  const Ambient& amb = ambient_context(ambient);
  for (const auto& x : w) {
    if (std::abs(x.t2) > radius2) throw std::invalid_argument("window element beyond radius");
    if (!amb.is_real(x)) throw std::invalid_argument("window element is not a real root");
    if (!w.count(-x)) throw std::invalid_argument("window not closed under negation");
  }
}

// Closure under reflections, restricted to the window.
inline bool is_subroot_system(const SimpleLabel& ambient, const Window& w, int radius2) {
  std::vector<AffineRoot> v(w.begin(), w.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      AffineRoot r = reflect(v[i], v[j]);
      if (std::abs(r.t2) <= radius2 && !w.count(r)) return false;
    }
  return true;
}

// Closure under root addition, restricted to the window.
inline bool is_closed(const SimpleLabel& ambient, const Window& w, int radius2) {
  const Ambient& amb = ambient_context(ambient);
  std::vector<AffineRoot> v(w.begin(), w.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      AffineRoot s = v[i] + v[j];
      if (is_zero(s.v)) continue;
      if (std::abs(s.t2) <= radius2 && amb.is_real(s) && !w.count(s)) return false;
    }
  return true;
}

// Fits one arithmetic progression per finite part.  Throws if some root's
// observed grades do not form a progression (the window then does not come
// from a closed subsystem).  Exactly two observed grades give a coset
// marked undetermined.
inline SubrootSystem fit_coset_model(const SimpleLabel& ambient, const Window& w) {
  const Ambient& amb = ambient_context(ambient);
  std::map<FiniteRoot, std::vector<int>> grades;
  for (const auto& x : w) {
    if (!amb.is_real(x)) throw std::invalid_argument("window element is not a real root");
    grades[x.v].push_back(x.t2);
  }
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (auto& [v, g] : grades) {
    std::sort(g.begin(), g.end());
    if (g.size() == 1) {
      sub.cosets[v] = {g[0], 0, false};
      continue;
    }
    int d = g[1] - g[0];
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
      if (g[i + 1] - g[i] != d)
        throw std::runtime_error("observed grades are not an arithmetic progression");
    sub.cosets[v] = {normalize_p2(g[0], d), d, g.size() == 2};
  }
  for (const auto& [v, c] : sub.cosets)
    if (!sub.cosets.count(-v)) throw std::invalid_argument("window not closed under negation");
  return sub;
}

enum class GradientClass { FULL, PROPER_CLOSED, PROPER_SEMI_CLOSED };

inline const char* to_string(GradientClass c) {
  switch (c) {
    case GradientClass::FULL: return "FULL";
    case GradientClass::PROPER_CLOSED: return "PROPER_CLOSED";
    case GradientClass::PROPER_SEMI_CLOSED: return "PROPER_SEMI_CLOSED";
  }
  return "?";
}

// Full / proper closed / proper semi-closed trichotomy of the gradient.
// Semi-closed means every additive violation sums into the longest length
// class from strictly shorter summands: short + short = long in two-length
// gradients, plus intermediate + intermediate = long in the non-reduced
// ones.  Throws if a violation of any other shape occurs.
inline GradientClass classify_gradient(const SubrootSystem& sub) {
  const Ambient& amb = ambient_context(sub.ambient);
  std::vector<FiniteRoot> g = gradient_of(sub);
  if (g.size() == amb.gradient.roots.size()) return GradientClass::FULL;
  int longest = 1;
  for (const auto& r : amb.gradient.roots) longest = std::max(longest, amb.ratio(r));
  std::set<FiniteRoot> in(g.begin(), g.end());
  bool semi = false;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      FiniteRoot s = g[i] + g[j];
      if (is_zero(s) || !amb.gradient.contains(s) || in.count(s)) continue;
      if (amb.ratio(s) == longest && amb.ratio(g[i]) < longest && amb.ratio(g[j]) < longest)
        semi = true;
      else
        throw std::runtime_error("gradient violation is not of short+short=long shape");
    }
  return semi ? GradientClass::PROPER_SEMI_CLOSED : GradientClass::PROPER_CLOSED;
}

// ---------------------------------------------------------------------------
// Structure laws satisfied by coset models of closed subsystems.

struct LawReport {
  bool pass = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    pass = false;
    failures.push_back(std::move(msg));
  }
};

namespace detail {

inline std::string show(const FiniteRoot& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.c2.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.c2[i]);
  }
  return s + ")/2";
}

}  // namespace detail

// Checks the arithmetic laws a closed subsystem's periods must satisfy:
//  - <b,a^> n_a Z lies inside n_b Z for every pair,
//  - n is constant on reflection orbits within the subsystem,
//  - n = 0 spreads over whole components,
//  - untwisted ambient: n constant on components,
//  - twisted two-length components: n_long = n_short or m * n_short per
//    divisibility of the short period by m,
//  - BC components with all three lengths: n_short = n_intermediate,
//    n_long = 2 n_short, and n_short odd (in delta units).
inline LawReport check_modulus_laws(const SubrootSystem& sub) {
  const Ambient& amb = ambient_context(sub.ambient);
  LawReport rep;
  std::vector<FiniteRoot> g = gradient_of(sub);
  auto n2_of = [&](const FiniteRoot& v) { return sub.cosets.at(v).n2; };

  for (const auto& a : g)
    for (const auto& b : g) {
      if (a == b) continue;
      int k = pairing(b, a);
      if (k == 0) continue;
      int na = n2_of(a), nb = n2_of(b);
      bool ok = nb == 0 ? k * na == 0 : (static_cast<long long>(k) * na) % nb == 0;
      if (!ok)
        rep.fail("pairing transport fails: <" + detail::show(b) + "," + detail::show(a) +
                 "^> n=" + std::to_string(na) + " outside " + std::to_string(nb) + "Z");
    }

  // Reflection orbits inside the subsystem's own gradient.
  {
    std::set<FiniteRoot> seen;
    std::set<FiniteRoot> in(g.begin(), g.end());
    for (const auto& start : g) {
      if (seen.count(start)) continue;
      std::vector<FiniteRoot> orbit{start};
      seen.insert(start);
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& a : g) {
          FiniteRoot img = reflect(a, orbit[i]);
          if (in.count(img) && !seen.count(img)) {
            seen.insert(img);
            orbit.push_back(img);
          }
        }
      for (const auto& v : orbit)
        if (n2_of(v) != n2_of(start)) {
          rep.fail("period not constant on reflection orbit of " + detail::show(start));
          break;
        }
    }
  }

  for (const auto& comp : components(g)) {
    std::map<int, std::set<int>> by_ratio;
    for (const auto& v : comp) by_ratio[amb.ratio(v)].insert(n2_of(v));
    bool any_zero = false, any_nonzero = false;
    for (const auto& [r, ns] : by_ratio)
      for (int n : ns) (n == 0 ? any_zero : any_nonzero) = true;
    if (any_zero && any_nonzero) {
      rep.fail("zero period does not spread over its component");
      continue;
    }
    for (const auto& [r, ns] : by_ratio)
      if (ns.size() != 1)
        rep.fail("period not constant on a length class within a component");
    if (amb.m == 1) {
      std::set<int> all;
      for (const auto& [r, ns] : by_ratio) all.insert(ns.begin(), ns.end());
      if (all.size() != 1) rep.fail("untwisted component with unequal periods");
      continue;
    }
    if (any_zero) continue;
    if (!amb.bc) {
      if (by_ratio.size() == 2 && by_ratio.count(1) && by_ratio.count(amb.m)) {
        int ns2 = *by_ratio[1].begin();
        int nl2 = *by_ratio[amb.m].begin();
        int expected = (ns2 / 2) % amb.m == 0 ? ns2 : amb.m * ns2;
        if (nl2 != expected)
          rep.fail("two-length component: long period " + std::to_string(nl2) +
                   " instead of " + std::to_string(expected));
      }
      continue;
    }
    if (by_ratio.count(1) && by_ratio.count(2) && by_ratio.count(4)) {
      int ns2 = *by_ratio[1].begin();
      int ni2 = *by_ratio[2].begin();
      int nl2 = *by_ratio[4].begin();
      if (ni2 != ns2)
        rep.fail("BC component: intermediate period differs from short period");
      if (nl2 != 2 * ns2)
        rep.fail("BC component: long period is not twice the short period");
      if ((ns2 / 2) % 2 != 1)
        rep.fail("BC component: short period is even in delta units");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Integer-linear grade functions on a finite root system.

struct GradeFunction {
  FiniteRootSystem base;      // linearity is relative to base.simple
  std::vector<int> values2;   // doubled values on the simple roots

  int operator()(const FiniteRoot& r) const {
    auto c = express_in_simple(base, r);
    long long s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += static_cast<long long>(c[i]) * values2[i];
    return static_cast<int>(s);
  }
};

inline int extend_p(const GradeFunction& p, const FiniteRoot& r) { return p(r); }

// ---------------------------------------------------------------------------
// Serialization.  Roots are stored as doubled coordinate arrays; a model
// lists each positive representative once (the negation mirror is implied).

inline nlohmann::json to_json(const AffineRoot& x) {
  return nlohmann::json{{"v", x.v.c2}, {"t2", x.t2}};
}

inline AffineRoot affine_root_from_json(const nlohmann::json& j) {
  AffineRoot x;
  x.v.c2 = j.at("v").get<std::vector<int>>();
  x.t2 = j.at("t2").get<int>();
  return x;
}

inline nlohmann::json to_json(const SubrootSystem& sub) {
  nlohmann::json cosets = nlohmann::json::array();
  for (const auto& [v, c] : sub.cosets) {
    if (!lex_positive(v)) continue;
    nlohmann::json entry{{"root", v.c2}, {"p2", c.p2}, {"n2", c.n2}};
    if (c.undetermined) entry["undetermined"] = true;
    cosets.push_back(std::move(entry));
  }
  return nlohmann::json{{"ambient", to_string(sub.ambient)}, {"cosets", std::move(cosets)}};
}

inline SubrootSystem subroot_system_from_json(const nlohmann::json& j) {
  SubrootSystem sub;
  sub.ambient = parse_affine_ambient(j.at("ambient").get<std::string>());
  const Ambient& amb = ambient_context(sub.ambient);
  for (const auto& entry : j.at("cosets")) {
    FiniteRoot v;
    v.c2 = entry.at("root").get<std::vector<int>>();
    if (!amb.gradient.contains(v)) throw std::invalid_argument("coset root outside gradient");
    int p2 = entry.at("p2").get<int>();
    int n2 = entry.at("n2").get<int>();
    bool und = entry.value("undetermined", false);
    if (n2 < 0) throw std::invalid_argument("negative period");
    sub.cosets[v] = {n2 ? normalize_p2(p2, n2) : p2, n2, und};
    sub.cosets[-v] = {n2 ? normalize_p2(-p2, n2) : -p2, n2, und};
  }
  return sub;
}

inline std::string canonical_key(const SubrootSystem& sub) { return to_json(sub).dump(); }

}  // namespace subroot
