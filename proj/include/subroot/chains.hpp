#pragma once

// Chains of maximal closed subsystems and pi-systems.
//
// Every closed subsystem of affine type sits at the bottom of a finite chain
// in which each step is maximal closed inside the previous one.  The descent
// invariant driving termination: along a refinement with equal gradient, the
// sum of coset moduli over length classes strictly grows.  enumerate_closed
// walks these chains breadth-first, re-rooting each intermediate system in
// the standard coordinates of its own type so the per-type constructors can
// be reused one level down.
//
// A pi-system is a set of roots whose pairwise differences are not roots,
// where a zero finite part with nonzero grade counts as a root.  Closed
// systems are regenerated from their pi-systems by closure, which is the
// correspondence with regular subalgebras.

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "families.hpp"
#include "oracle.hpp"

namespace subroot {

// Restriction of a model to the irreducible components of its gradient.
inline std::vector<SubrootSystem> split_components(const SubrootSystem& sub) {
  std::vector<SubrootSystem> out;
  for (const auto& comp : components(gradient_of(sub))) {
    SubrootSystem part;
    part.ambient = sub.ambient;
    for (const auto& v : comp) part.cosets[v] = sub.cosets.at(v);
    out.push_back(std::move(part));
  }
  return out;
}

// Sum of the coset moduli, one per length class per component.  Within a
// component all roots of one length share a modulus; finite classes (modulus
// zero) contribute nothing.  This is the quantity that strictly increases
// when a system is refined without shrinking its gradient.
inline int ht2(const SubrootSystem& sub) {
  int total = 0;
  for (const auto& part : split_components(sub)) {
    std::map<long long, int> class_n2;
    for (const auto& [v, c] : part.cosets) {
      auto [it, fresh] = class_n2.emplace(norm4(v), c.n2);
      if (!fresh && it->second != c.n2)
        throw std::invalid_argument("length class moduli are not uniform");
    }
    for (const auto& [nrm, n2] : class_n2) total += n2;
  }
  return total;
}

// The two legal shapes of a refinement step: the gradient strictly shrinks,
// or it stays equal and the height strictly grows.
inline bool chain_descent(const SubrootSystem& parent, const SubrootSystem& child) {
  std::set<FiniteRoot> gp, gc;
  for (const auto& [v, c] : parent.cosets) gp.insert(v);
  for (const auto& [v, c] : child.cosets) gc.insert(v);
  if (!std::includes(gp.begin(), gp.end(), gc.begin(), gc.end())) return false;
  if (gc.size() < gp.size()) return true;
  return ht2(parent) < ht2(child);
}

struct UntwistedComponent {
  SubrootSystem system;
  int n2 = 0;  // common modulus of the component; zero marks a finite piece
};

// In an untwisted ambient every component of a closed system runs on a single
// modulus with a linear grade function; this splits a model accordingly.
inline std::vector<UntwistedComponent> decompose_untwisted(const SubrootSystem& sub) {
  if (ambient_context(sub.ambient).m != 1)
    throw std::invalid_argument("decompose_untwisted needs an untwisted ambient");
  std::vector<UntwistedComponent> out;
  for (auto& part : split_components(sub)) {
    int n2 = part.cosets.begin()->second.n2;
    for (const auto& [v, c] : part.cosets)
      if (c.n2 != n2) throw std::invalid_argument("component moduli are not uniform");
    out.push_back({std::move(part), n2});
  }
  return out;
}

struct PiSystem {
  std::vector<AffineRoot> roots;
};

inline void to_json(nlohmann::json& j, const PiSystem& s) {
  j = nlohmann::json::array();
  for (const auto& x : s.roots) j.push_back(to_json(x));
}

// Pairwise differences must be neither real roots nor imaginary ones (zero
// finite part, nonzero grade).  Repeated entries fail.
inline bool verify_pi_system(const PiSystem& sigma, const SimpleLabel& ambient) {
  const Ambient& amb = ambient_context(ambient);
  for (std::size_t i = 0; i < sigma.roots.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.roots.size(); ++j) {
      AffineRoot d = sigma.roots[i] - sigma.roots[j];
      if (is_zero(d.v)) return false;  // equal entries or an imaginary difference
      if (amb.is_real(d)) return false;
    }
  return true;
}

namespace detail {

// Coordinates of x in a linearly independent integral basis of affine roots,
// when they exist and are integral.  Exact Gauss-Jordan elimination over the
// integers with per-row gcd reduction.
inline std::optional<std::vector<long long>> integer_coords(const std::vector<AffineRoot>& basis,
                                                            const AffineRoot& x) {
  if (basis.empty()) return std::nullopt;
  const std::size_t dim = basis[0].v.c2.size() + 1, k = basis.size();
  std::vector<std::vector<long long>> m(dim, std::vector<long long>(k + 1, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i + 1 < dim; ++i) m[i][j] = basis[j].v.c2[i];
    m[dim - 1][j] = basis[j].t2;
  }
  for (std::size_t i = 0; i + 1 < dim; ++i) m[i][k] = x.v.c2[i];
  m[dim - 1][k] = x.t2;

  auto reduce = [&](std::vector<long long>& row) {
    long long g = 0;
    for (long long v : row) g = std::gcd(g, std::abs(v));
    if (g > 1)
      for (long long& v : row) v /= g;
  };

  std::vector<int> pivot_row(k, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < dim; ++col) {
    std::size_t pr = row;
    while (pr < dim && m[pr][col] == 0) ++pr;
    if (pr == dim) return std::nullopt;  // dependent column
    std::swap(m[row], m[pr]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == row || m[r][col] == 0) continue;
      long long a = m[row][col], b = m[r][col];
      long long g = std::gcd(std::abs(a), std::abs(b));
      long long ca = b / g, cb = a / g;
      for (std::size_t c = 0; c <= k; ++c) m[r][c] = m[r][c] * cb - m[row][c] * ca;
      reduce(m[r]);
    }
    pivot_row[col] = static_cast<int>(row);
    ++row;
  }
  for (std::size_t r = row; r < dim; ++r)
    if (m[r][k] != 0) return std::nullopt;
  std::vector<long long> c(k, 0);
  for (std::size_t col = 0; col < k; ++col) {
    long long a = m[pivot_row[col]][col], b = m[pivot_row[col]][k];
    if (b % a != 0) return std::nullopt;
    c[col] = b / a;
  }
  return c;
}

inline bool nonneg_combination(const std::vector<AffineRoot>& basis, const AffineRoot& x) {
  auto c = integer_coords(basis, x);
  if (!c) return false;
  for (long long v : *c)
    if (v < 0) return false;
  return true;
}

inline bool affine_positive(const AffineRoot& x) {
  if (x.t2 != 0) return x.t2 > 0;
  return lex_positive(x.v);
}

}  // namespace detail

// Simple system of one irreducible component: window positives in grade-then-
// lex order, keeping each root that is not a nonnegative integer combination
// of the ones already kept.  For an affine component this lands on the affine
// base; for a finite one, on the classical simple system.
inline std::vector<AffineRoot> component_base(const SubrootSystem& comp) {
  int radius2 = 8;
  for (const auto& [v, c] : comp.cosets)
    radius2 = std::max({radius2, 2 * c.n2, std::abs(c.p2)});
  std::vector<AffineRoot> positives;
  for (const auto& x : expand(comp, radius2))
    if (detail::affine_positive(x)) positives.push_back(x);
  std::sort(positives.begin(), positives.end(), [](const AffineRoot& a, const AffineRoot& b) {
    return std::pair(a.t2, a.v) < std::pair(b.t2, b.v);
  });
  std::vector<AffineRoot> base;
  for (const auto& x : positives)
    if (!detail::nonneg_combination(base, x)) base.push_back(x);
  return base;
}

// Union of the per-component simple systems.  The union need not be linearly
// independent; it does have to pass the pairwise-difference test.
inline PiSystem extract_pi_system(const SubrootSystem& sub) {
  PiSystem sigma;
  for (const auto& comp : split_components(sub)) {
    auto base = component_base(comp);
    sigma.roots.insert(sigma.roots.end(), base.begin(), base.end());
  }
  if (!verify_pi_system(sigma, sub.ambient))
    throw std::runtime_error("extracted set is not a pi-system; input not closed or window too small");
  return sigma;
}

struct RegularSubalgebra {
  SubrootSystem closed_system;
  PiSystem pi_system;
};

// The correspondence object: a closed system together with the pi-system
// whose closure regenerates it.
inline RegularSubalgebra regular_subalgebra_of(const SubrootSystem& sub) {
  return {sub, extract_pi_system(sub)};
}

// Affine base of the full ambient system, memoized per label.
inline const std::vector<AffineRoot>& standard_base(const SimpleLabel& ambient) {
  static std::mutex mu;
  static std::map<SimpleLabel, std::vector<AffineRoot>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ambient);
  if (it == cache.end())
    it = cache.emplace(ambient, component_base(full_model(ambient))).first;
  return it->second;
}

// Linear isomorphism between two copies of one affine root system, given by
// matched bases.  Solves base coordinates on the source side and recombines
// on the target side.
struct Transport {
  std::vector<AffineRoot> from_base;
  std::vector<AffineRoot> to_base;

  AffineRoot apply(const AffineRoot& x) const {
    auto c = detail::integer_coords(from_base, x);
    if (!c) throw std::logic_error("transport: root outside the base lattice");
    FiniteRoot v = 0 * to_base[0].v;
    int t2 = 0;
    for (std::size_t i = 0; i < to_base.size(); ++i) {
      v = v + static_cast<int>((*c)[i]) * to_base[i].v;
      t2 += static_cast<int>((*c)[i]) * to_base[i].t2;
    }
    return {v, t2};
  }
};

// Pairing-preserving bijection between two bases, found by backtracking in
// index order; the first match makes the choice deterministic.
inline Transport find_transport(const std::vector<AffineRoot>& from,
                                const std::vector<AffineRoot>& to) {
  if (from.size() != to.size())
    throw std::logic_error("transport: base sizes differ");
  const std::size_t k = from.size();
  std::vector<int> assign(k, -1);
  std::vector<bool> used(k, false);
  auto ok = [&](std::size_t i, std::size_t j) {
    for (std::size_t a = 0; a < i; ++a) {
      if (affine_pairing(from[i], from[a]) != affine_pairing(to[j], to[assign[a]])) return false;
      if (affine_pairing(from[a], from[i]) != affine_pairing(to[assign[a]], to[j])) return false;
    }
    return affine_pairing(from[i], from[i]) == affine_pairing(to[j], to[j]);
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || !ok(i, j)) continue;
      used[j] = true;
      assign[i] = static_cast<int>(j);
      if (rec(i + 1)) return true;
      used[j] = false;
      assign[i] = -1;
    }
    return false;
  };
  if (!rec(0)) throw std::logic_error("transport: bases are not isomorphic");
  Transport tr;
  tr.from_base = from;
  for (std::size_t i = 0; i < k; ++i) tr.to_base.push_back(to[assign[i]]);
  return tr;
}

// Image of a standard-coordinates model under a transport, as a model over
// the host ambient.  Cosets map to cosets because imaginary periods map to
// imaginary periods with a positive grade.
inline SubrootSystem transport_model(const Transport& tr, const SubrootSystem& std_sys,
                                     const SimpleLabel& host_ambient) {
  SubrootSystem out;
  out.ambient = host_ambient;
  for (const auto& [v, c] : std_sys.cosets) {
    if (c.undetermined) throw std::logic_error("transport: undetermined coset");
    AffineRoot y1 = tr.apply({v, c.p2});
    if (c.n2 == 0) {
      out.cosets[y1.v] = {y1.t2, 0, false};
      continue;
    }
    AffineRoot y2 = tr.apply({v, c.p2 + c.n2});
    if (!(y1.v == y2.v) || y2.t2 <= y1.t2)
      throw std::logic_error("transport: period image is not a forward period");
    int n2 = y2.t2 - y1.t2;
    out.cosets[y1.v] = {normalize_p2(y1.t2, n2), n2, false};
  }
  return out;
}

struct ChainNode {
  SubrootSystem system;
  int parent = -1;
  int depth = 0;
  LabelSum type;
  std::string kind;  // family kind that produced the node; "root" at depth 0
  nlohmann::json params;
};

inline void to_json(nlohmann::json& j, const ChainNode& node) {
  j = nlohmann::json{{"depth", node.depth},
                     {"type", to_string(node.type)},
                     {"kind", node.kind},
                     {"params", node.params},
                     {"parent_index", node.parent}};
}

namespace detail {

// All one-step refinements of a system: each irreducible component is
// re-rooted in the standard coordinates of its own type and every family of
// that type is instantiated over the parameter bound.
inline std::vector<ChainNode> refine_once(const SubrootSystem& sys, int prime_bound) {
  std::vector<ChainNode> out;
  auto comps = split_components(sys);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    LabelSum comp_type = type_of(comps[ci]);
    if (comp_type.size() != 1) throw std::logic_error("component type is not irreducible");
    SimpleLabel label = parse_affine_ambient(to_string(comp_type));
    Transport tr = find_transport(standard_base(label), component_base(comps[ci]));
    for (const auto& fam : enumerate_families(label)) {
      for (const auto& params : enumerate_params(fam, prime_bound)) {
        SubrootSystem child_comp =
            transport_model(tr, instantiate(fam, params), sys.ambient);
        SubrootSystem child = sys;
        for (const auto& v : gradient_of(comps[ci])) child.cosets.erase(v);
        for (const auto& [v, c] : child_comp.cosets) child.cosets[v] = c;
        nlohmann::json p = params;
        if (comps.size() > 1) p["component"] = ci;
        out.push_back({std::move(child), -1, 0, {}, kind_name(fam.kind), std::move(p)});
      }
    }
  }
  return out;
}

}  // namespace detail

// Breadth-first enumeration of chains of maximal closed subsystems, starting
// from the full system, up to the depth and prime bounds.  Nodes are
// deduplicated by their coset model, so each distinct system appears once at
// its shallowest depth.
inline std::vector<ChainNode> enumerate_closed(const SimpleLabel& ambient, int max_depth,
                                               int prime_bound) {
  std::vector<ChainNode> nodes;
  std::map<std::string, std::size_t> seen;
  SubrootSystem full = full_model(ambient);
  LabelSum full_type = type_of(full);
  seen[canonical_key(full)] = 0;
  nodes.push_back({std::move(full), -1, 0, std::move(full_type), "root", nlohmann::json::object()});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth >= max_depth) continue;
    for (auto& child : detail::refine_once(nodes[i].system, prime_bound)) {
      std::string key = canonical_key(child.system);
      if (seen.count(key)) continue;
      seen[key] = nodes.size();
      child.parent = static_cast<int>(i);
      child.depth = nodes[i].depth + 1;
      child.type = type_of(child.system);
      nodes.push_back(std::move(child));
    }
  }
  return nodes;
}

}  // namespace subroot
