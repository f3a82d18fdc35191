#pragma once

// Finite crystallographic root systems in doubled coordinates.  All vector
// entries store twice the usual Euclidean coordinate, so the half-integer
// roots of F4/E6/E7/E8 stay integral.  Squared norms and inner products are
// consequently scaled by 4 (norm4, dot4); Cartan pairings are exact integers.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "labels.hpp"

namespace subroot {

struct FiniteRoot {
  std::vector<int> c2;  // doubled coordinates

  auto operator<=>(const FiniteRoot&) const = default;
};

inline FiniteRoot operator+(const FiniteRoot& a, const FiniteRoot& b) {
  assert(a.c2.size() == b.c2.size());
  FiniteRoot r = a;
  for (std::size_t i = 0; i < r.c2.size(); ++i) r.c2[i] += b.c2[i];
  return r;
}

inline FiniteRoot operator-(const FiniteRoot& a, const FiniteRoot& b) {
  assert(a.c2.size() == b.c2.size());
  FiniteRoot r = a;
  for (std::size_t i = 0; i < r.c2.size(); ++i) r.c2[i] -= b.c2[i];
  return r;
}

inline FiniteRoot operator-(const FiniteRoot& a) {
  FiniteRoot r = a;
  for (auto& x : r.c2) x = -x;
  return r;
}

inline FiniteRoot operator*(int k, const FiniteRoot& a) {
  FiniteRoot r = a;
  for (auto& x : r.c2) x *= k;
  return r;
}

inline bool is_zero(const FiniteRoot& a) {
  return std::all_of(a.c2.begin(), a.c2.end(), [](int x) { return x == 0; });
}

// 4 * (a, b) in the underlying Euclidean metric.
inline long long dot4(const FiniteRoot& a, const FiniteRoot& b) {
  assert(a.c2.size() == b.c2.size());
  long long s = 0;
  for (std::size_t i = 0; i < a.c2.size(); ++i) s += static_cast<long long>(a.c2[i]) * b.c2[i];
  return s;
}

inline long long norm4(const FiniteRoot& a) { return dot4(a, a); }

// Cartan pairing <b, a^> = 2 (b, a) / (a, a); exact for roots.
inline int pairing(const FiniteRoot& b, const FiniteRoot& a) {
  long long num = 2 * dot4(b, a);
  long long den = norm4(a);
  assert(den != 0);
  assert(num % den == 0);
  return static_cast<int>(num / den);
}

inline FiniteRoot reflect(const FiniteRoot& a, const FiniteRoot& b) {
  // s_a(b) = b - <b, a^> a
  return b - pairing(b, a) * a;
}

// Lexicographic positivity; used only for canonical +/- representatives.
inline bool lex_positive(const FiniteRoot& a) {
  for (int x : a.c2)
    if (x != 0) return x > 0;
  return false;
}

struct FiniteRootSystem {
  LabelSum label;                  // canonical; empty for anonymous subsystems
  int dim = 0;                     // ambient coordinate count
  std::vector<FiniteRoot> roots;   // sorted, closed under negation
  std::vector<FiniteRoot> simple;  // fixed simple system (ordering matters)

  bool contains(const FiniteRoot& r) const {
    return std::binary_search(roots.begin(), roots.end(), r);
  }
};

namespace detail {

inline FiniteRoot unit2(int dim, int i) {
  FiniteRoot r;
  r.c2.assign(dim, 0);
  r.c2[i] = 2;  // epsilon_i
  return r;
}

inline void finish(FiniteRootSystem& s) {
  std::sort(s.roots.begin(), s.roots.end());
  s.roots.erase(std::unique(s.roots.begin(), s.roots.end()), s.roots.end());
}

// Closes a generating set of roots under reflections in one another.
// Sufficient to recover a full root system from its simple roots.
inline std::vector<FiniteRoot> reflection_closure(std::vector<FiniteRoot> gen) {
  std::set<FiniteRoot> seen(gen.begin(), gen.end());
  std::vector<FiniteRoot> work(seen.begin(), seen.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < work.size(); ++j) {
      FiniteRoot r = reflect(work[j], work[i]);
      if (seen.insert(r).second) work.push_back(r);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// Builds the fixed realization of an irreducible finite type:
//   A_n   in n+1 coordinates, roots e_i - e_j
//   B_n   +-e_i, +-e_i+-e_j             simple ..., e_n
//   C_n   +-2e_i, +-e_i+-e_j            simple ..., 2e_n
//   D_n   +-e_i+-e_j                    simple ..., e_{n-1}+e_n
//   BC_n  +-e_i, +-2e_i, +-e_i+-e_j     simple as B_n
//   G_2   in 3 coordinates; F_4 in 4; E_6/E_7/E_8 in 8 (E6/E7 as subsystems)
inline FiniteRootSystem build_finite(const SimpleLabel& raw) {
  LabelSum canon = canonicalize(raw);
  if (canon.size() != 1 || canon[0].twist != 0)
    throw std::invalid_argument("build_finite needs an irreducible finite label");
  SimpleLabel l = canon[0];
  FiniteRootSystem s;
  s.label = canon;
  const int n = l.rank;
  auto e = [&](int i) { return detail::unit2(s.dim, i); };

  switch (l.fam) {
    case Family::A: {
      s.dim = n + 1;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          if (i != j) s.roots.push_back(e(i) - e(j));
      for (int i = 0; i < n; ++i) s.simple.push_back(e(i) - e(i + 1));
      break;
    }
    case Family::B:
    case Family::C:
    case Family::BC: {
      s.dim = n;
      for (int i = 0; i < n; ++i) {
        if (l.fam != Family::C) {
          s.roots.push_back(e(i));
          s.roots.push_back(-e(i));
        }
        if (l.fam != Family::B) {
          s.roots.push_back(2 * e(i));
          s.roots.push_back(-2 * e(i));
        }
        for (int j = i + 1; j < n; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) s.roots.push_back(si * e(i) + sj * e(j));
      }
      for (int i = 0; i + 1 < n; ++i) s.simple.push_back(e(i) - e(i + 1));
      s.simple.push_back(l.fam == Family::C ? 2 * e(n - 1) : e(n - 1));
      break;
    }
    case Family::D: {
      if (n < 2) throw std::invalid_argument("D rank too small");
      s.dim = n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) s.roots.push_back(si * e(i) + sj * e(j));
      for (int i = 0; i + 1 < n; ++i) s.simple.push_back(e(i) - e(i + 1));
      s.simple.push_back(e(n - 2) + e(n - 1));
      break;
    }
    case Family::G: {
      s.dim = 3;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) s.roots.push_back(e(i) - e(j));
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          int k = 3 - i - j;
          s.roots.push_back(e(i) + e(j) - 2 * e(k));
          s.roots.push_back(2 * e(k) - e(i) - e(j));
        }
      s.simple.push_back(e(0) - e(1));                  // short
      s.simple.push_back(-2 * e(0) + e(1) + e(2));      // long
      break;
    }
    case Family::F: {
      s.dim = 4;
      for (int i = 0; i < 4; ++i) {
        s.roots.push_back(e(i));
        s.roots.push_back(-e(i));
        for (int j = i + 1; j < 4; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) s.roots.push_back(si * e(i) + sj * e(j));
      }
      for (int m = 0; m < 16; ++m) {
        FiniteRoot r;
        r.c2.assign(4, 0);
        for (int i = 0; i < 4; ++i) r.c2[i] = (m >> i) & 1 ? -1 : 1;
        s.roots.push_back(r);
      }
      s.simple.push_back(e(1) - e(2));
      s.simple.push_back(e(2) - e(3));
      s.simple.push_back(e(3));
      s.simple.push_back(FiniteRoot{{1, -1, -1, -1}});  // (e1-e2-e3-e4)/2
      break;
    }
    case Family::E: {
      s.dim = 8;
      // Simple roots of E8; E7 and E6 take the first 7 resp. 6 of them.
      std::vector<FiniteRoot> e8simple;
      e8simple.push_back(FiniteRoot{{1, -1, -1, -1, -1, -1, -1, 1}});
      FiniteRoot a2;
      a2.c2.assign(8, 0);
      a2.c2[0] = 2;
      a2.c2[1] = 2;
      e8simple.push_back(a2);
      for (int i = 0; i < 6; ++i) e8simple.push_back(e(i + 1) - e(i));
      s.simple.assign(e8simple.begin(), e8simple.begin() + n);
      s.roots = detail::reflection_closure(s.simple);
      break;
    }
  }
  detail::finish(s);
  return s;
}

inline FiniteRootSystem build_finite(const std::string& label) {
  LabelSum sum = parse_label_sum(label);
  if (sum.size() != 1) throw std::invalid_argument("build_finite needs an irreducible label");
  return build_finite(sum[0]);
}

// Expresses a root as an integer combination of the system's simple roots.
// Repeatedly subtracts a simple root with positive pairing; works for
// non-reduced systems as well.  Throws if the vector is not in the root
// lattice span reachable this way.
inline std::vector<int> express_in_simple(const FiniteRootSystem& sys, const FiniteRoot& r) {
  if (sys.simple.empty()) throw std::invalid_argument("system has no simple roots");
  auto attempt = [&](FiniteRoot g, std::vector<int>& c) -> bool {
    c.assign(sys.simple.size(), 0);
    int guard = 0;
    while (!is_zero(g)) {
      if (++guard > 4096) return false;
      bool moved = false;
      for (std::size_t i = 0; i < sys.simple.size(); ++i) {
        if (pairing(g, sys.simple[i]) <= 0) continue;
        FiniteRoot next = g - sys.simple[i];
        if (is_zero(next) || sys.contains(next)) {
          g = next;
          ++c[i];
          moved = true;
          break;
        }
      }
      if (!moved) return false;
    }
    return true;
  };
  std::vector<int> c;
  if (attempt(r, c)) return c;
  if (attempt(-r, c)) {
    for (auto& x : c) x = -x;
    return c;
  }
  throw std::invalid_argument("root is not expressible in the simple system");
}

inline int height(const FiniteRootSystem& sys, const FiniteRoot& r) {
  auto c = express_in_simple(sys, r);
  return std::accumulate(c.begin(), c.end(), 0);
}

inline bool base_positive(const FiniteRootSystem& sys, const FiniteRoot& r) {
  auto c = express_in_simple(sys, r);
  for (int x : c)
    if (x != 0) return x > 0;
  throw std::invalid_argument("zero vector has no sign");
}

inline FiniteRoot highest_root(const FiniteRootSystem& sys) {
  const FiniteRoot* best = nullptr;
  int best_h = 0;
  for (const auto& r : sys.roots) {
    int h = height(sys, r);
    if (!best || h > best_h || (h == best_h && r > *best)) {
      best = &r;
      best_h = h;
    }
  }
  if (!best) throw std::invalid_argument("empty system");
  return *best;
}

// Orbit of a root under the Weyl group generated by reflections in every
// root of the system.
inline std::vector<FiniteRoot> weyl_orbit(const FiniteRootSystem& sys, const FiniteRoot& r) {
  std::set<FiniteRoot> seen{r};
  std::vector<FiniteRoot> work{r};
  for (std::size_t i = 0; i < work.size(); ++i)
    for (const auto& a : sys.roots) {
      FiniteRoot img = reflect(a, work[i]);
      if (seen.insert(img).second) work.push_back(img);
    }
  return {seen.begin(), seen.end()};
}

// Closure of a subset of an ambient finite system under root addition.
// (Reflections follow from addition chains inside a finite system, but we
// apply both for speed.)
inline std::set<FiniteRoot> finite_closure(const FiniteRootSystem& ambient,
                                           const std::set<FiniteRoot>& seed) {
  std::set<FiniteRoot> out = seed;
  std::vector<FiniteRoot> work(out.begin(), out.end());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      FiniteRoot sum = work[i] + work[j];
      if (!is_zero(sum) && ambient.contains(sum) && out.insert(sum).second) work.push_back(sum);
      FiniteRoot r1 = reflect(work[j], work[i]);
      if (out.insert(r1).second) work.push_back(r1);
      FiniteRoot r2 = reflect(work[i], work[j]);
      if (out.insert(r2).second) work.push_back(r2);
    }
  }
  return out;
}

inline bool is_closed_in(const FiniteRootSystem& ambient, const std::set<FiniteRoot>& sub) {
  for (const auto& a : sub)
    for (const auto& b : sub) {
      FiniteRoot sum = a + b;
      if (!is_zero(sum) && ambient.contains(sum) && !sub.count(sum)) return false;
    }
  return true;
}

// Connected components under non-orthogonality.
inline std::vector<std::vector<FiniteRoot>> components(const std::vector<FiniteRoot>& roots) {
  std::vector<std::vector<FiniteRoot>> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> stack{i};
    used[i] = true;
    std::vector<FiniteRoot> comp;
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      comp.push_back(roots[k]);
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (!used[j] && dot4(roots[k], roots[j]) != 0) {
          used[j] = true;
          stack.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline int rank_of(const std::vector<FiniteRoot>& roots) {
  // Gaussian elimination over rationals via scaled integers.
  std::vector<std::vector<double>> m;
  for (const auto& r : roots) m.push_back(std::vector<double>(r.c2.begin(), r.c2.end()));
  int rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && std::abs(m[piv][col]) < 1e-9) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) == rank || std::abs(m[r][col]) < 1e-9) continue;
      double f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Recognizes one connected component (closed under negation) by rank,
// cardinality and length statistics.
inline SimpleLabel recognize_component(const std::vector<FiniteRoot>& comp) {
  if (comp.empty()) throw std::invalid_argument("empty component");
  // Non-reduced: some root has its double present.
  std::set<FiniteRoot> in(comp.begin(), comp.end());
  bool nonreduced = false;
  for (const auto& r : comp)
    if (in.count(2 * r)) {
      nonreduced = true;
      break;
    }
  int rank = rank_of(comp);
  std::map<long long, int> by_norm;
  for (const auto& r : comp) ++by_norm[norm4(r)];
  int count = static_cast<int>(comp.size());

  if (nonreduced) {
    // BC_r: 2r short + 2r long + 2r(r-1) intermediate = 2r^2 + 2r.
    if (count != 2 * rank * rank + 2 * rank) throw std::invalid_argument("unrecognized non-reduced component");
    return {Family::BC, rank, 0};
  }
  int nlengths = static_cast<int>(by_norm.size());
  if (rank == 1) return {Family::A, 1, 0};
  if (nlengths == 1) {
    if (count == rank * (rank + 1)) return {Family::A, rank, 0};
    if (rank >= 3 && count == 2 * rank * (rank - 1)) return rank == 3 ? SimpleLabel{Family::A, 3, 0} : SimpleLabel{Family::D, rank, 0};
    if (rank == 6 && count == 72) return {Family::E, 6, 0};
    if (rank == 7 && count == 126) return {Family::E, 7, 0};
    if (rank == 8 && count == 240) return {Family::E, 8, 0};
    throw std::invalid_argument("unrecognized simply-laced component");
  }
  if (nlengths == 2) {
    long long shortn = by_norm.begin()->first;
    long long longn = by_norm.rbegin()->first;
    int nshort = by_norm.begin()->second;
    if (longn == 3 * shortn) {
      if (rank == 2 && count == 12) return {Family::G, 2, 0};
      throw std::invalid_argument("unrecognized triple-laced component");
    }
    if (longn != 2 * shortn) throw std::invalid_argument("unrecognized length ratio");
    if (rank == 2 && count == 8) return {Family::B, 2, 0};
    if (rank == 4 && count == 48) return {Family::F, 4, 0};
    if (count == 2 * rank * rank) {
      if (nshort == 2 * rank) return {Family::B, rank, 0};
      if (nshort == 2 * rank * (rank - 1)) return {Family::C, rank, 0};
    }
    throw std::invalid_argument("unrecognized double-laced component");
  }
  throw std::invalid_argument("unrecognized component");
}

}  // namespace detail

// Recognizes the type of a finite subset that forms a closed subsystem
// (closed under negation).  Returns the canonical label sum.
inline LabelSum recognize_finite_type(const std::vector<FiniteRoot>& roots) {
  if (roots.empty()) return {};
  LabelSum out;
  for (const auto& comp : components(roots)) {
    LabelSum part = canonicalize(detail::recognize_component(comp));
    out.insert(out.end(), part.begin(), part.end());
  }
  return canonicalize(out);
}

inline LabelSum recognize_finite_type(const std::set<FiniteRoot>& roots) {
  return recognize_finite_type(std::vector<FiniteRoot>(roots.begin(), roots.end()));
}

// ---------------------------------------------------------------------------
// Maximal closed subsystems of the irreducible finite types (types plus
// explicit realizations inside the fixed coordinates above).

struct FiniteMaximalEntry {
  LabelSum type;                 // canonical
  std::vector<FiniteRoot> roots; // realization inside build_finite(ambient)
};

namespace detail {

inline std::vector<FiniteRoot> closed_from_gens(const FiniteRootSystem& sys,
                                                std::vector<FiniteRoot> gens) {
  std::set<FiniteRoot> seed;
  for (auto& g : gens) {
    seed.insert(g);
    seed.insert(-g);
  }
  auto cl = finite_closure(sys, seed);
  return {cl.begin(), cl.end()};
}

}  // namespace detail

// The maximal closed subsystems of one irreducible finite system, with
// realizations.  Every entry is closed; maximality is checked by tests
// against an exhaustive oracle in low rank.
inline std::vector<FiniteMaximalEntry> finite_maximal_closed(const SimpleLabel& raw) {
  LabelSum canon = canonicalize(raw);
  if (canon.size() != 1 || canon[0].twist != 0)
    throw std::invalid_argument("finite_maximal_closed needs an irreducible finite label");
  SimpleLabel l = canon[0];
  FiniteRootSystem sys = build_finite(l);
  const int n = l.rank;
  std::vector<FiniteMaximalEntry> out;
  auto e = [&](int i) { return detail::unit2(sys.dim, i); };

  auto add = [&](LabelSum type, std::vector<FiniteRoot> roots) {
    std::sort(roots.begin(), roots.end());
    out.push_back({canonicalize(type), std::move(roots)});
  };
  // Roots supported on an index block, optionally restricted by predicate.
  auto block = [&](int lo, int hi, auto&& pred) {
    std::vector<FiniteRoot> r;
    for (const auto& root : sys.roots) {
      bool ok = true;
      for (int i = 0; i < sys.dim; ++i)
        if (root.c2[i] != 0 && (i < lo || i >= hi)) ok = false;
      if (ok && pred(root)) r.push_back(root);
    }
    return r;
  };
  auto any = [](const FiniteRoot&) { return true; };

  switch (l.fam) {
    case Family::A: {
      for (int r = 0; r + 1 <= n - 1; ++r) {
        // A_r + A_{n-r-1}: split coordinates after r+1.
        LabelSum t;
        if (r >= 1) t.push_back({Family::A, r, 0});
        if (n - r - 1 >= 1) t.push_back({Family::A, n - r - 1, 0});
        auto part = block(0, r + 1, any);
        auto rest = block(r + 1, n + 1, any);
        part.insert(part.end(), rest.begin(), rest.end());
        add(t, part);
      }
      break;
    }
    case Family::B: {
      for (int r = 1; r <= n - 2; ++r) {
        // B_r on the last r coordinates, D_{n-r} on the first n-r.
        auto part = block(n - r, n, any);
        auto rest = block(0, n - r, [](const FiniteRoot& x) { return norm4(x) == 8; });
        part.insert(part.end(), rest.begin(), rest.end());
        add({{Family::B, r, 0}, {Family::D, n - r, 0}}, part);
      }
      add({{Family::B, n - 1, 0}}, block(1, n, any));
      add({{Family::D, n, 0}}, block(0, n, [](const FiniteRoot& x) { return norm4(x) == 8; }));
      break;
    }
    case Family::C: {
      for (int r = 1; r <= n - 1 && 2 * r <= n; ++r) {
        auto part = block(0, r, any);
        auto rest = block(r, n, any);
        part.insert(part.end(), rest.begin(), rest.end());
        add({{Family::C, r, 0}, {Family::C, n - r, 0}}, part);
      }
      {
        // A_{n-1}: difference roots e_i - e_j only.
        std::vector<FiniteRoot> r;
        for (const auto& root : sys.roots) {
          int pos = 0, neg = 0;
          for (int i = 0; i < sys.dim; ++i) {
            if (root.c2[i] > 0) ++pos;
            if (root.c2[i] < 0) ++neg;
          }
          if (pos == 1 && neg == 1 && norm4(root) == 8) r.push_back(root);
        }
        add({{Family::A, n - 1, 0}}, r);
      }
      break;
    }
    case Family::D: {
      for (int r = 2; r <= n - 2 && 2 * r <= n; ++r) {
        auto part = block(0, r, any);
        auto rest = block(r, n, any);
        part.insert(part.end(), rest.begin(), rest.end());
        add({{Family::D, r, 0}, {Family::D, n - r, 0}}, part);
      }
      {
        // A_{n-1}: roots e_i - e_j only.
        std::vector<FiniteRoot> r;
        for (const auto& root : sys.roots) {
          int pos = 0, neg = 0;
          for (int i = 0; i < sys.dim; ++i) {
            if (root.c2[i] > 0) ++pos;
            if (root.c2[i] < 0) ++neg;
          }
          if (pos == 1 && neg == 1) r.push_back(root);
        }
        add({{Family::A, n - 1, 0}}, r);
      }
      add({{Family::D, n - 1, 0}}, block(1, n, any));
      break;
    }
    case Family::G: {
      add({{Family::A, 1, 0}, {Family::A, 1, 0}},
          detail::closed_from_gens(sys, {e(0) - e(1), FiniteRoot{{-2, -2, 4}}}));
      add({{Family::A, 2, 0}},
          detail::closed_from_gens(sys, {FiniteRoot{{2, 2, -4}}, FiniteRoot{{2, -4, 2}}}));
      break;
    }
    case Family::F: {
      add({{Family::A, 2, 0}, {Family::A, 2, 0}},
          detail::closed_from_gens(
              sys, {e(0) + e(1), e(1) - e(2), e(3), FiniteRoot{{1, -1, -1, -1}}}));
      add({{Family::A, 1, 0}, {Family::C, 3, 0}},
          detail::closed_from_gens(
              sys, {-(e(0) + e(1)), e(2) - e(3), e(3), FiniteRoot{{1, -1, -1, -1}}}));
      add({{Family::B, 4, 0}},
          detail::closed_from_gens(sys, {e(0) - e(1), e(1) - e(2), e(2) - e(3), e(3)}));
      break;
    }
    case Family::E: {
      FiniteRoot theta = highest_root(sys);
      auto extended_minus = [&](int skip) {
        std::vector<FiniteRoot> g{-theta};
        for (int i = 0; i < n; ++i)
          if (i != skip) g.push_back(sys.simple[i]);
        return detail::closed_from_gens(sys, g);
      };
      auto parabolic = [&](int keep) {
        std::vector<FiniteRoot> g(sys.simple.begin(), sys.simple.begin() + keep);
        return detail::closed_from_gens(sys, g);
      };
      // Bourbaki node numbering: simple[i] is alpha_{i+1}.
      if (n == 6) {
        add({{Family::A, 1, 0}, {Family::A, 5, 0}}, extended_minus(1));
        add({{Family::A, 2, 0}, {Family::A, 2, 0}, {Family::A, 2, 0}}, extended_minus(3));
        add({{Family::D, 5, 0}}, parabolic(5));
      } else if (n == 7) {
        add({{Family::A, 2, 0}, {Family::A, 5, 0}}, extended_minus(2));
        add({{Family::A, 1, 0}, {Family::D, 6, 0}}, extended_minus(5));
        add({{Family::E, 6, 0}}, parabolic(6));
        add({{Family::A, 7, 0}}, extended_minus(1));
      } else {
        add({{Family::A, 1, 0}, {Family::E, 7, 0}}, extended_minus(7));
        add({{Family::A, 2, 0}, {Family::E, 6, 0}}, extended_minus(6));
        add({{Family::A, 4, 0}, {Family::A, 4, 0}}, extended_minus(4));
        add({{Family::D, 8, 0}}, extended_minus(0));
        add({{Family::A, 8, 0}}, extended_minus(1));
      }
      break;
    }
    case Family::BC:
      throw std::invalid_argument("finite_maximal_closed covers reduced types only");
  }

  // Drop duplicate types, keep first realization of each.
  std::vector<FiniteMaximalEntry> dedup;
  for (auto& entry : out) {
    bool seen = false;
    for (const auto& d : dedup)
      if (d.type == entry.type) seen = true;
    if (!seen) dedup.push_back(std::move(entry));
  }
  std::sort(dedup.begin(), dedup.end(), [](const FiniteMaximalEntry& a, const FiniteMaximalEntry& b) {
    return to_string(a.type) < to_string(b.type);
  });
  return dedup;
}

inline std::vector<LabelSum> finite_maximal_types(const SimpleLabel& l) {
  std::vector<LabelSum> out;
  for (const auto& entry : finite_maximal_closed(l)) out.push_back(entry.type);
  return out;
}

}  // namespace subroot
