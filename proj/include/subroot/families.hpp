#pragma once

// Constructors for every family of maximal closed subroot systems of the
// affine ambients, family descriptors with symbolic parameter domains, and
// affine type recognition for fitted coset models.
//
// The families, by ambient:
//   X_n^(1):      prime-period systems over a Z-linear grade function;
//                 lifts of maximal closed finite subsystems.
//   twisted, not A_{2n}^(2):
//                 prime-period systems (short period q, long period mq when
//                 q != m; all periods q when q = m); lifts of finite maximal
//                 closed subsystems containing a short root; one semi-closed
//                 gradient family per type (psi_I_D2, psi_p_A2odd, psi_D4_3,
//                 psi_p_E6).
//   A_{2n}^(2):   lifts of the sets A_J; the two-block systems Psi_I; the
//                 odd-prime family over half-integer grade values; and the
//                 rank-one specializations of all three for A_2^(2).

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine.hpp"
#include "finite.hpp"
#include "json.hpp"
#include "labels.hpp"
#include "model.hpp"

namespace subroot {

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline GradeFunction make_grade(FiniteRootSystem base, std::vector<int> values2) {
  if (values2.size() != base.simple.size())
    throw std::invalid_argument("grade function needs one value per simple root");
  return {std::move(base), std::move(values2)};
}

inline GradeFunction zero_grade(const FiniteRootSystem& base) {
  return {base, std::vector<int>(base.simple.size(), 0)};
}

namespace detail {

// Z-valued grade functions carry doubled values, so every entry must be even.
inline void require_integer_grades(const GradeFunction& p) {
  for (int v : p.values2)
    if (v % 2 != 0)
      throw std::invalid_argument("grade function must be integer-valued (doubled: even)");
}

inline void require_base(const GradeFunction& p, const FiniteRootSystem& base, const char* what) {
  if (p.base.simple != base.simple)
    throw std::invalid_argument(std::string("grade function must live on ") + what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Untwisted constructors.

inline SubrootSystem untwisted_prime(const SimpleLabel& ambient, const GradeFunction& p, int q) {
  const Ambient& amb = ambient_context(ambient);
  if (amb.m != 1) throw std::invalid_argument("untwisted_prime needs an untwisted ambient");
  if (!is_prime(q)) throw std::invalid_argument("period must be prime");
  detail::require_base(p, amb.gradient, "the gradient simple system");
  detail::require_integer_grades(p);
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : amb.gradient.roots) sub.cosets[v] = {normalize_p2(p(v), 2 * q), 2 * q, false};
  return sub;
}

namespace detail {

inline void require_finite_maximal(const SimpleLabel& base_label,
                                   const std::vector<FiniteRoot>& finite_max) {
  FiniteRootSystem base = build_finite(base_label);
  std::set<FiniteRoot> sub(finite_max.begin(), finite_max.end());
  if (sub.empty()) throw std::invalid_argument("empty finite subsystem");
  for (const auto& r : sub) {
    if (!base.contains(r)) throw std::invalid_argument("subsystem root outside the base system");
    if (!sub.count(-r)) throw std::invalid_argument("subsystem not closed under negation");
  }
  if (!is_closed_in(base, sub)) throw std::invalid_argument("finite subsystem is not closed");
  LabelSum type = recognize_finite_type(finite_max);
  for (const auto& entry : finite_maximal_closed(base_label))
    if (entry.type == type) return;
  throw std::invalid_argument("finite subsystem is not maximal closed: type " + to_string(type));
}

}  // namespace detail

inline SubrootSystem untwisted_finite_lift(const SimpleLabel& ambient,
                                           const std::vector<FiniteRoot>& finite_max) {
  const Ambient& amb = ambient_context(ambient);
  if (amb.m != 1) throw std::invalid_argument("untwisted_finite_lift needs an untwisted ambient");
  detail::require_finite_maximal(SimpleLabel{amb.label.fam, amb.label.rank, 0}, finite_max);
  return lift(amb.label, finite_max);
}

// ---------------------------------------------------------------------------
// Twisted constructors (two-length ambients, gradient not BC).

inline SubrootSystem twisted_prime(const SimpleLabel& ambient, const GradeFunction& p, int q) {
  const Ambient& amb = ambient_context(ambient);
  if (amb.m == 1 || amb.bc) throw std::invalid_argument("twisted_prime needs a two-length twisted ambient");
  if (!is_prime(q)) throw std::invalid_argument("period must be prime");
  detail::require_base(p, amb.gradient, "the gradient simple system");
  detail::require_integer_grades(p);
  const int m = amb.m;
  for (const auto& v : amb.gradient.roots)
    if (amb.ratio(v) != 1 && normalize_p2(p(v), 2 * m) != 0)
      throw std::invalid_argument("grade function must take values in mZ on long roots");
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : amb.gradient.roots) {
    int n2 = (q != m && amb.ratio(v) != 1) ? 2 * m * q : 2 * q;
    sub.cosets[v] = {normalize_p2(p(v), n2), n2, false};
  }
  return sub;
}

inline SubrootSystem twisted_finite_lift(const SimpleLabel& ambient,
                                         const std::vector<FiniteRoot>& finite_max) {
  const Ambient& amb = ambient_context(ambient);
  if (amb.m == 1 || amb.bc) throw std::invalid_argument("twisted_finite_lift needs a two-length twisted ambient");
  detail::require_finite_maximal(amb.gradient.label.at(0), finite_max);
  bool has_short = false;
  for (const auto& r : finite_max)
    if (amb.ratio(r) == 1) has_short = true;
  if (!has_short)
    throw std::invalid_argument("lift of a long-roots-only subsystem is never maximal");
  return lift(amb.label, finite_max);
}

// Two-block family in D_{n+1}^(2): short roots of I at even grades, of the
// complement at odd grades, intermediate roots only within a block.
inline SubrootSystem psi_I_D2(int n, const std::set<int>& I) {
  if (n < 2) throw std::invalid_argument("psi_I_D2 needs n >= 2");
  for (int s : I)
    if (s < 1 || s > n) throw std::invalid_argument("index outside 1..n");
  if (static_cast<int>(I.size()) == n)
    throw std::invalid_argument("I must be a proper subset of 1..n");
  SimpleLabel ambient{Family::D, n + 1, 2};
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  auto e = [&](int i) { return detail::unit2(n, i - 1); };
  for (int s = 1; s <= n; ++s) put_coset(sub, e(s), I.count(s) ? 0 : 2, 4);
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      if (I.count(s) != I.count(t)) continue;
      put_coset(sub, e(s) + e(t), 0, 4);
      put_coset(sub, e(s) - e(t), 0, 4);
    }
  return sub;
}

// Long-root-free family in A_{2n-1}^(2): all roots of the D_n inside C_n,
// graded by a Z-linear function whose two last simple values differ in
// parity, with period one delta.
// D_n on n coordinates, all +-e_i+-e_j.  The standard model for n >= 4; the
// n = 3 case keeps the 3-coordinate realization sitting inside C_3.
inline FiniteRootSystem d_on_coords(int n) {
  if (n >= 4) return build_finite(SimpleLabel{Family::D, n, 0});
  if (n != 3) throw std::invalid_argument("d_on_coords needs n >= 3");
  FiniteRootSystem s;
  s.label = canonicalize(SimpleLabel{Family::D, 3, 0});
  s.dim = 3;
  auto e = [&](int i) { return detail::unit2(3, i); };
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) s.roots.push_back(si * e(i) + sj * e(j));
  s.simple = {e(0) - e(1), e(1) - e(2), e(1) + e(2)};
  detail::finish(s);
  return s;
}

inline SubrootSystem psi_p_A2odd(int n, const GradeFunction& p) {
  if (n < 3) throw std::invalid_argument("psi_p_A2odd needs n >= 3");
  SimpleLabel ambient{Family::A, 2 * n - 1, 2};
  const Ambient& amb = ambient_context(ambient);
  FiniteRootSystem dn = d_on_coords(n);
  detail::require_base(p, dn, "the D_n simple system");
  detail::require_integer_grades(p);
  int a = p.values2[n - 2] / 2, b = p.values2[n - 1] / 2;
  if (((a % 2) + 2) % 2 == ((b % 2) + 2) % 2)
    throw std::invalid_argument("the last two simple values must differ in parity");
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : dn.roots) sub.cosets[v] = {normalize_p2(p(v), 4), 4, false};
  return sub;
}

// Semi-closed-gradient family of D_4^(3): three short-root progressions on
// a cyclically ordered triple, offset by ell delta.
inline SubrootSystem psi_D4_3(const std::array<int, 3>& perm, int ell) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{1, 2, 3}) throw std::invalid_argument("perm must order {1,2,3}");
  if (ell % 3 == 0) throw std::invalid_argument("offset must be nonzero mod 3");
  SimpleLabel ambient{Family::D, 4, 3};
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  auto e = [&](int i) { return detail::unit2(3, i - 1); };
  int i = perm[0], j = perm[1], k = perm[2];
  int off2 = normalize_p2(2 * ell, 6);
  put_coset(sub, e(i) - e(j), 0, 6);
  put_coset(sub, e(j) - e(k), off2, 6);
  put_coset(sub, e(i) - e(k), off2, 6);
  return sub;
}

// The D_4 of short roots inside F_4, with simple system (gamma, e2, e3, e4)
// where gamma = (e1-e2-e3-e4)/2; e1 = 2*gamma + e2 + e3 + e4.
inline FiniteRootSystem d4_in_f4() {
  FiniteRootSystem f4 = build_finite(SimpleLabel{Family::F, 4, 0});
  FiniteRootSystem d4;
  d4.label = canonicalize(SimpleLabel{Family::D, 4, 0});
  d4.dim = 4;
  for (const auto& r : f4.roots)
    if (norm4(r) == 4) d4.roots.push_back(r);
  std::sort(d4.roots.begin(), d4.roots.end());
  d4.simple.push_back(FiniteRoot{{1, -1, -1, -1}});
  d4.simple.push_back(detail::unit2(4, 1));
  d4.simple.push_back(detail::unit2(4, 2));
  d4.simple.push_back(detail::unit2(4, 3));
  return d4;
}

// Semi-closed-gradient family of E_6^(2): all short roots (the D_4) graded
// by p with period one delta, plus the long roots whose epsilon-parities
// match; requires exactly two of the p(eps_i) even.
inline SubrootSystem psi_p_E6(const GradeFunction& p) {
  SimpleLabel ambient{Family::E, 6, 2};
  const Ambient& amb = ambient_context(ambient);
  FiniteRootSystem d4 = d4_in_f4();
  detail::require_base(p, d4, "the D_4 of short roots");
  detail::require_integer_grades(p);
  std::array<int, 4> peps2{};
  for (int i = 0; i < 4; ++i) peps2[i] = p(detail::unit2(4, i));
  int even = 0;
  for (int i = 0; i < 4; ++i)
    if (normalize_p2(peps2[i], 4) == 0) ++even;  // doubled values: p even <=> p2 = 0 mod 4
  if (even != 2) throw std::invalid_argument("exactly two of the p(eps_i) must be even");
  SubrootSystem sub;
  sub.ambient = amb.label;
  for (const auto& v : d4.roots) sub.cosets[v] = {normalize_p2(p(v), 4), 4, false};
  auto e = [&](int i) { return detail::unit2(4, i); };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (normalize_p2(peps2[i] + peps2[j], 4) != 0) continue;  // p_i + p_j odd
      put_coset(sub, e(i) + e(j), 0, 4);
      put_coset(sub, e(i) - e(j), 0, 4);
    }
  return sub;
}

// ---------------------------------------------------------------------------
// A_{2n}^(2) constructors (gradient BC_n).  Internally n = 1 is allowed so
// the A_2^(2) specializations can delegate; the public ops require n >= 2.

namespace detail {

inline SubrootSystem a2n_aj_impl(int n, const std::set<int>& J) {
  SimpleLabel ambient{Family::A, 2 * n, 2};
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  auto e = [&](int i) { return unit2(n, i - 1); };
  for (int i = 1; i <= n; ++i) put_coset(sub, 2 * e(i), 0, 4);
  for (int j : J) put_coset(sub, e(j), 1, 2);
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      if (J.count(s) != J.count(t)) continue;
      put_coset(sub, e(s) + e(t), 0, 2);
      put_coset(sub, e(s) - e(t), 0, 2);
    }
  return sub;
}

inline SubrootSystem a2n_psi_I_impl(int n, const std::set<int>& I) {
  SimpleLabel ambient{Family::A, 2 * n, 2};
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  auto e = [&](int i) { return unit2(n, i - 1); };
  for (int i = 1; i <= n; ++i) put_coset(sub, e(i), I.count(i) ? 1 : 3, 4);
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      bool cross = I.count(s) != I.count(t);
      put_coset(sub, e(s) + e(t), cross ? 0 : 2, 4);
      put_coset(sub, e(s) - e(t), cross ? 2 : 0, 4);
    }
  return sub;
}

inline SubrootSystem a2n_prime_impl(int n, const std::vector<int>& peps2, int q) {
  if (!is_prime(q) || q % 2 == 0) throw std::invalid_argument("period must be an odd prime");
  if (static_cast<int>(peps2.size()) != n)
    throw std::invalid_argument("need one grade value per epsilon");
  for (int v : peps2)
    if (((v % 2) + 2) % 2 != 1)
      throw std::invalid_argument("short grade values must be half-odd-integers (doubled: odd)");
  SimpleLabel ambient{Family::A, 2 * n, 2};
  const Ambient& amb = ambient_context(ambient);
  SubrootSystem sub;
  sub.ambient = amb.label;
  auto e = [&](int i) { return unit2(n, i - 1); };
  for (int i = 1; i <= n; ++i) {
    put_coset(sub, e(i), peps2[i - 1], 2 * q);
    put_coset(sub, 2 * e(i), 2 * peps2[i - 1] + 2 * q, 4 * q);
  }
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      put_coset(sub, e(s) + e(t), peps2[s - 1] + peps2[t - 1], 2 * q);
      put_coset(sub, e(s) - e(t), peps2[s - 1] - peps2[t - 1], 2 * q);
    }
  return sub;
}

}  // namespace detail

inline SubrootSystem a2n_aj(int n, const std::set<int>& J) {
  if (n < 2) throw std::invalid_argument("a2n_aj needs n >= 2");
  for (int j : J)
    if (j < 1 || j > n) throw std::invalid_argument("index outside 1..n");
  if (static_cast<int>(J.size()) == n)
    throw std::invalid_argument("J must be a proper subset of 1..n");
  return detail::a2n_aj_impl(n, J);
}

inline SubrootSystem a2n_psi_I(int n, const std::set<int>& I) {
  if (n < 2) throw std::invalid_argument("a2n_psi_I needs n >= 2");
  for (int i : I)
    if (i < 1 || i > n) throw std::invalid_argument("index outside 1..n");
  return detail::a2n_psi_I_impl(n, I);
}

inline SubrootSystem a2n_prime(int n, const GradeFunction& p, int q) {
  if (n < 2) throw std::invalid_argument("a2n_prime needs n >= 2");
  FiniteRootSystem bcn = build_finite(SimpleLabel{Family::BC, n, 0});
  detail::require_base(p, bcn, "the BC_n simple system");
  std::vector<int> peps2(n);
  for (int i = 0; i < n; ++i) peps2[i] = p(detail::unit2(n, i));
  return detail::a2n_prime_impl(n, peps2, q);
}

// A_2^(2) families: the odd-prime systems Psi(k,q) and the three sporadic
// period-2 systems (short roots at even or odd half-grades, or longs only).
enum class A2Kind { PRIME, SHORT_EVEN, SHORT_ODD, LONG };

inline SubrootSystem a2_family(A2Kind kind, int k = 0, int q = 3) {
  switch (kind) {
    case A2Kind::PRIME:
      if (k < 0) throw std::invalid_argument("k must be nonnegative");
      return detail::a2n_prime_impl(1, {2 * k + 1}, q);
    case A2Kind::SHORT_EVEN:
      return detail::a2n_psi_I_impl(1, {1});
    case A2Kind::SHORT_ODD:
      return detail::a2n_psi_I_impl(1, {});
    case A2Kind::LONG:
      return detail::a2n_aj_impl(1, {});
  }
  throw std::invalid_argument("unknown A2 family kind");
}

// ---------------------------------------------------------------------------
// Affine type recognition.

namespace detail {

inline SimpleLabel twisted_map(const SimpleLabel& finite) {
  switch (finite.fam) {
    case Family::B: return {Family::D, finite.rank + 1, 2};
    case Family::C: return {Family::A, 2 * finite.rank - 1, 2};
    case Family::F: return {Family::E, 6, 2};
    case Family::G: return {Family::D, 4, 3};
    default:
      throw std::invalid_argument("no twisted affinization for " + to_string(finite));
  }
}

}  // namespace detail

// Affine type of a fitted closed subroot system, component by component:
// all periods zero -> the finite label; equal periods -> X^(1); long period
// a ratio multiple of the short period -> the twisted type with that
// gradient; BC components with all three lengths -> A_{2r}^(2).
inline LabelSum type_of(const SubrootSystem& sub) {
  const Ambient& amb = ambient_context(sub.ambient);
  LabelSum out;
  for (const auto& comp : components(gradient_of(sub))) {
    SimpleLabel finite = detail::recognize_component(comp);
    std::set<int> periods;
    std::map<int, std::set<int>> by_ratio;
    long long mn = 0;
    for (const auto& v : comp) {
      long long nm = norm4(v);
      if (mn == 0 || nm < mn) mn = nm;
    }
    for (const auto& v : comp) {
      int n2 = sub.cosets.at(v).n2;
      if (sub.cosets.at(v).undetermined)
        throw std::invalid_argument("type_of needs determined cosets");
      periods.insert(n2);
      by_ratio[static_cast<int>(norm4(v) / mn)].insert(n2);
    }
    if (periods.count(0)) {
      if (periods.size() != 1) throw std::invalid_argument("mixed zero and nonzero periods");
      LabelSum part = canonicalize(finite);
      out.insert(out.end(), part.begin(), part.end());
      continue;
    }
    for (const auto& [r, ns] : by_ratio)
      if (ns.size() != 1) throw std::invalid_argument("period not constant on a length class");
    LabelSum part;
    if (finite.fam == Family::BC) {
      int ns2 = *by_ratio.begin()->second.begin();
      int nl2 = *by_ratio.rbegin()->second.begin();
      if (nl2 != 2 * ns2 || (by_ratio.count(2) && *by_ratio[2].begin() != ns2))
        throw std::invalid_argument("period pattern matches no classified type");
      part = canonicalize(SimpleLabel{Family::A, 2 * finite.rank, 2});
    } else if (by_ratio.size() == 1) {
      part = canonicalize(SimpleLabel{finite.fam, finite.rank, 1});
    } else {
      int ratio = by_ratio.rbegin()->first;
      int ns2 = *by_ratio.begin()->second.begin();
      int nl2 = *by_ratio.rbegin()->second.begin();
      if (nl2 == ns2)
        part = canonicalize(SimpleLabel{finite.fam, finite.rank, 1});
      else if (nl2 == ratio * ns2)
        part = canonicalize(detail::twisted_map(finite));
      else
        throw std::invalid_argument("period pattern matches no classified type");
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return canonicalize(out);
}

// ---------------------------------------------------------------------------
// Family descriptors and enumeration.

enum class FamilyKind {
  UNTWISTED_PRIME,
  UNTWISTED_FINITE_LIFT,
  TWISTED_PRIME,
  TWISTED_FINITE_LIFT,
  PSI_I_D2,
  PSI_P_A2ODD,
  PSI_D4_3,
  PSI_P_E6,
  A2N_AJ,
  A2N_PSI_I,
  A2N_PRIME,
  A2_PRIME,
  A2_SHORT_EVEN,
  A2_SHORT_ODD,
  A2_LONG,
};

inline const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::UNTWISTED_PRIME: return "UNTWISTED_PRIME";
    case FamilyKind::UNTWISTED_FINITE_LIFT: return "UNTWISTED_FINITE_LIFT";
    case FamilyKind::TWISTED_PRIME: return "TWISTED_PRIME";
    case FamilyKind::TWISTED_FINITE_LIFT: return "TWISTED_FINITE_LIFT";
    case FamilyKind::PSI_I_D2: return "PSI_I_D2";
    case FamilyKind::PSI_P_A2ODD: return "PSI_P_A2ODD";
    case FamilyKind::PSI_D4_3: return "PSI_D4_3";
    case FamilyKind::PSI_P_E6: return "PSI_P_E6";
    case FamilyKind::A2N_AJ: return "A2N_AJ";
    case FamilyKind::A2N_PSI_I: return "A2N_PSI_I";
    case FamilyKind::A2N_PRIME: return "A2N_PRIME";
    case FamilyKind::A2_PRIME: return "A2_PRIME";
    case FamilyKind::A2_SHORT_EVEN: return "A2_SHORT_EVEN";
    case FamilyKind::A2_SHORT_ODD: return "A2_SHORT_ODD";
    case FamilyKind::A2_LONG: return "A2_LONG";
  }
  return "?";
}

struct MaximalFamily {
  SimpleLabel ambient;
  FamilyKind kind;
  std::string parameter_domain;  // symbolic: primes, subsets, grade functions
  LabelSum result_type;
  // Extra discriminator: finite-lift table index; |I| or |J| for the subset
  // families; 1 for the q = m branch of a prime family, else 0.
  int param = 0;
};

namespace detail {

inline LabelSum lift_type(const SimpleLabel& ambient, const std::vector<FiniteRoot>& roots) {
  return type_of(lift(ambient, roots));
}

}  // namespace detail

// Complete descriptor list for one ambient: instantiating every descriptor
// over its parameter domain reproduces the ambient's table row exactly.
inline std::vector<MaximalFamily> enumerate_families(const SimpleLabel& raw) {
  SimpleLabel ambient = parse_affine_ambient(to_string(raw));
  const Ambient& amb = ambient_context(ambient);
  std::vector<MaximalFamily> out;
  std::string X = to_string(ambient);

  if (amb.m == 1) {
    out.push_back({ambient, FamilyKind::UNTWISTED_PRIME,
                   "prime q; Z-linear p on the gradient, values mod q",
                   canonicalize(ambient), 0});
    auto entries = finite_maximal_closed(SimpleLabel{ambient.fam, ambient.rank, 0});
    for (std::size_t i = 0; i < entries.size(); ++i)
      out.push_back({ambient, FamilyKind::UNTWISTED_FINITE_LIFT,
                     "lift of a finite maximal closed subsystem of type " + to_string(entries[i].type),
                     detail::lift_type(ambient, entries[i].roots), static_cast<int>(i)});
    return out;
  }

  if (amb.bc) {
    int n = ambient.rank / 2;
    if (n == 1) {
      out.push_back({ambient, FamilyKind::A2_PRIME, "odd prime q; k >= 0 mod q",
                     canonicalize(SimpleLabel{Family::A, 2, 2}), 0});
      out.push_back({ambient, FamilyKind::A2_SHORT_EVEN, "none",
                     canonicalize(SimpleLabel{Family::A, 1, 1}), 0});
      out.push_back({ambient, FamilyKind::A2_SHORT_ODD, "none",
                     canonicalize(SimpleLabel{Family::A, 1, 1}), 0});
      out.push_back({ambient, FamilyKind::A2_LONG, "none",
                     canonicalize(SimpleLabel{Family::A, 1, 1}), 0});
      return out;
    }
    for (int r = 0; r <= n - 1; ++r) {
      LabelSum t;
      if (r >= 1) t.push_back({Family::A, 2 * r, 2});
      t.push_back({Family::A, 2 * (n - r) - 1, 2});
      out.push_back({ambient, FamilyKind::A2N_AJ, "subsets J of 1..n with |J| = " + std::to_string(r),
                     canonicalize(t), r});
    }
    out.push_back({ambient, FamilyKind::A2N_PSI_I, "all subsets I of 1..n",
                   canonicalize(SimpleLabel{Family::B, n, 1}), 0});
    out.push_back({ambient, FamilyKind::A2N_PRIME,
                   "odd prime q; half-odd p(eps_i) mod q",
                   canonicalize(SimpleLabel{Family::A, 2 * n, 2}), 0});
    return out;
  }

  // Two-length twisted ambients.
  out.push_back({ambient, FamilyKind::TWISTED_PRIME,
                 "prime q != " + std::to_string(amb.m) + "; Z-linear p, long values in mZ",
                 canonicalize(ambient), 0});
  SimpleLabel grad_label = amb.gradient.label.at(0);
  out.push_back({ambient, FamilyKind::TWISTED_PRIME, "q = m = " + std::to_string(amb.m),
                 canonicalize(SimpleLabel{grad_label.fam, grad_label.rank, 1}), 1});
  auto entries = finite_maximal_closed(grad_label);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool has_short = false;
    for (const auto& r : entries[i].roots)
      if (amb.ratio(r) == 1) has_short = true;
    if (!has_short) continue;
    out.push_back({ambient, FamilyKind::TWISTED_FINITE_LIFT,
                   "lift of a finite maximal closed subsystem of type " + to_string(entries[i].type),
                   detail::lift_type(ambient, entries[i].roots), static_cast<int>(i)});
  }
  if (ambient.fam == Family::D && ambient.twist == 2) {
    int n = ambient.rank - 1;
    for (int r = 0; r <= n - 1; ++r) {
      LabelSum t;
      if (r >= 1) t.push_back({Family::B, r, 1});
      t.push_back({Family::B, n - r, 1});
      out.push_back({ambient, FamilyKind::PSI_I_D2,
                     "subsets I of 1..n with |I| = " + std::to_string(r), canonicalize(t), r});
    }
  } else if (ambient.fam == Family::A && ambient.twist == 2) {
    int n = (ambient.rank + 1) / 2;
    out.push_back({ambient, FamilyKind::PSI_P_A2ODD,
                   "Z-linear p on D_n, last two simple values of different parity",
                   canonicalize(SimpleLabel{Family::D, n, 1}), 0});
  } else if (ambient.fam == Family::D && ambient.twist == 3) {
    out.push_back({ambient, FamilyKind::PSI_D4_3, "orderings (i,j,k) of {1,2,3}; ell != 0 mod 3",
                   canonicalize(SimpleLabel{Family::A, 2, 1}), 0});
  } else if (ambient.fam == Family::E) {
    out.push_back({ambient, FamilyKind::PSI_P_E6,
                   "Z-linear p on the D_4 of short roots, exactly two p(eps_i) even",
                   canonicalize(SimpleLabel{Family::C, 4, 1}), 0});
  }
  return out;
}

inline void to_json(nlohmann::json& j, const MaximalFamily& f) {
  j = nlohmann::json{{"ambient", to_string(f.ambient)},
                     {"kind", kind_name(f.kind)},
                     {"params", f.parameter_domain},
                     {"type", to_string(f.result_type)}};
}

// Build a concrete system from a descriptor plus a JSON parameter object.
//
// Parameter keys, by kind:
//   UNTWISTED_PRIME / TWISTED_PRIME:  "q" (prime), "p2" (doubled grade values
//       on the gradient's simple roots, default zero).  The q = m branch of a
//       twisted prime family takes no "q".
//   *_FINITE_LIFT, A2_SHORT_*, A2_LONG:  none.
//   PSI_I_D2 / A2N_PSI_I:  "I" (1-based indices).
//   A2N_AJ:  "J" (1-based indices, size fixed by the descriptor).
//   PSI_P_A2ODD / PSI_P_E6:  "p2" on D_n / on the short-root D_4.
//   PSI_D4_3:  "perm" (ordering of {1,2,3}), "ell".
//   A2N_PRIME:  "q" (odd prime), "p2" on the BC_n simple roots.
//   A2_PRIME:  "q" (odd prime), "k" (>= 0).
inline SubrootSystem instantiate(const MaximalFamily& fam, const nlohmann::json& params) {
  const Ambient& amb = ambient_context(fam.ambient);
  auto set_of = [&](const char* key) {
    std::set<int> s;
    if (params.contains(key))
      for (const auto& v : params.at(key)) s.insert(v.get<int>());
    return s;
  };
  auto grade_on = [&](const FiniteRootSystem& base) {
    std::vector<int> values2(base.simple.size(), 0);
    if (params.contains("p2")) values2 = params.at("p2").get<std::vector<int>>();
    return make_grade(base, std::move(values2));
  };
  switch (fam.kind) {
    case FamilyKind::UNTWISTED_PRIME:
      return untwisted_prime(fam.ambient, grade_on(amb.gradient), params.at("q").get<int>());
    case FamilyKind::UNTWISTED_FINITE_LIFT: {
      auto entries = finite_maximal_closed(SimpleLabel{fam.ambient.fam, fam.ambient.rank, 0});
      return untwisted_finite_lift(fam.ambient, entries.at(fam.param).roots);
    }
    case FamilyKind::TWISTED_PRIME: {
      int q = fam.param == 1 ? amb.m : params.at("q").get<int>();
      if (fam.param == 0 && q == amb.m)
        throw std::invalid_argument("q = m is the other branch of this family");
      return twisted_prime(fam.ambient, grade_on(amb.gradient), q);
    }
    case FamilyKind::TWISTED_FINITE_LIFT: {
      auto entries = finite_maximal_closed(amb.gradient.label.at(0));
      return twisted_finite_lift(fam.ambient, entries.at(fam.param).roots);
    }
    case FamilyKind::PSI_I_D2: {
      auto I = set_of("I");
      if (static_cast<int>(I.size()) != fam.param)
        throw std::invalid_argument("descriptor wants |I| = " + std::to_string(fam.param));
      return psi_I_D2(fam.ambient.rank - 1, I);
    }
    case FamilyKind::PSI_P_A2ODD: {
      int n = (fam.ambient.rank + 1) / 2;
      return psi_p_A2odd(n, grade_on(d_on_coords(n)));
    }
    case FamilyKind::PSI_D4_3: {
      auto p = params.at("perm").get<std::vector<int>>();
      if (p.size() != 3) throw std::invalid_argument("perm must order {1,2,3}");
      return psi_D4_3({p[0], p[1], p[2]}, params.at("ell").get<int>());
    }
    case FamilyKind::PSI_P_E6:
      return psi_p_E6(grade_on(d4_in_f4()));
    case FamilyKind::A2N_AJ: {
      auto J = set_of("J");
      if (static_cast<int>(J.size()) != fam.param)
        throw std::invalid_argument("descriptor wants |J| = " + std::to_string(fam.param));
      return a2n_aj(fam.ambient.rank / 2, J);
    }
    case FamilyKind::A2N_PSI_I:
      return a2n_psi_I(fam.ambient.rank / 2, set_of("I"));
    case FamilyKind::A2N_PRIME: {
      int n = fam.ambient.rank / 2;
      return a2n_prime(n, grade_on(build_finite(SimpleLabel{Family::BC, n, 0})),
                       params.at("q").get<int>());
    }
    case FamilyKind::A2_PRIME:
      return a2_family(A2Kind::PRIME, params.value("k", 0), params.at("q").get<int>());
    case FamilyKind::A2_SHORT_EVEN: return a2_family(A2Kind::SHORT_EVEN);
    case FamilyKind::A2_SHORT_ODD: return a2_family(A2Kind::SHORT_ODD);
    case FamilyKind::A2_LONG: return a2_family(A2Kind::LONG);
  }
  throw std::invalid_argument("unknown family kind");
}

// Deterministic parameter samples covering each descriptor's domain up to the
// prime bound; every returned object is valid input for instantiate.
inline std::vector<nlohmann::json> sample_params(const MaximalFamily& fam, int prime_bound) {
  const Ambient& amb = ambient_context(fam.ambient);
  std::vector<int> primes;
  for (int q = 2; q <= prime_bound; ++q)
    if (is_prime(q)) primes.push_back(q);
  std::vector<nlohmann::json> out;
  auto subset = [](int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
  };
  switch (fam.kind) {
    case FamilyKind::UNTWISTED_PRIME: {
      std::vector<int> shifted(amb.gradient.simple.size(), 0);
      if (!shifted.empty()) shifted[0] = 2;
      for (int q : primes) {
        out.push_back({{"q", q}});
        out.push_back({{"q", q}, {"p2", shifted}});
      }
      break;
    }
    case FamilyKind::TWISTED_PRIME: {
      std::vector<int> shifted(amb.gradient.simple.size(), 2 * amb.m);
      if (fam.param == 1) {
        out.push_back(nlohmann::json::object());
        out.push_back({{"p2", shifted}});
      } else {
        for (int q : primes) {
          if (q == amb.m) continue;
          out.push_back({{"q", q}});
          out.push_back({{"q", q}, {"p2", shifted}});
        }
      }
      break;
    }
    case FamilyKind::PSI_I_D2:
    case FamilyKind::A2N_AJ: {
      int n = fam.kind == FamilyKind::PSI_I_D2 ? fam.ambient.rank - 1 : fam.ambient.rank / 2;
      const char* key = fam.kind == FamilyKind::PSI_I_D2 ? "I" : "J";
      int r = fam.param;
      out.push_back({{key, subset(1, r)}});
      if (r >= 1 && r < n) out.push_back({{key, subset(n - r + 1, n)}});
      break;
    }
    case FamilyKind::A2N_PSI_I: {
      int n = fam.ambient.rank / 2;
      out.push_back({{"I", subset(1, 0)}});
      out.push_back({{"I", subset(1, 1)}});
      out.push_back({{"I", subset(1, n)}});
      break;
    }
    case FamilyKind::PSI_P_A2ODD: {
      int n = (fam.ambient.rank + 1) / 2;
      std::vector<int> a(n, 0), b(n, 0);
      a[n - 1] = 2;
      b[n - 2] = 2;
      out.push_back({{"p2", a}});
      out.push_back({{"p2", b}});
      break;
    }
    case FamilyKind::PSI_D4_3:
      out.push_back({{"perm", std::vector<int>{1, 2, 3}}, {"ell", 1}});
      out.push_back({{"perm", std::vector<int>{1, 2, 3}}, {"ell", 2}});
      out.push_back({{"perm", std::vector<int>{2, 3, 1}}, {"ell", 1}});
      break;
    case FamilyKind::PSI_P_E6:
      out.push_back({{"p2", std::vector<int>{0, 2, 2, 0}}});
      out.push_back({{"p2", std::vector<int>{0, 0, 2, 2}}});
      break;
    case FamilyKind::A2N_PRIME: {
      int n = fam.ambient.rank / 2;
      std::vector<int> flat(n, 0), tilted(n, 0);
      flat[n - 1] = 1;
      tilted[n - 1] = 1;
      tilted[0] = 2;
      for (int q : primes) {
        if (q == 2) continue;
        out.push_back({{"q", q}, {"p2", flat}});
        out.push_back({{"q", q}, {"p2", n >= 2 ? tilted : flat}});
      }
      break;
    }
    case FamilyKind::A2_PRIME:
      for (int q : primes) {
        if (q == 2) continue;
        out.push_back({{"q", q}, {"k", 0}});
        out.push_back({{"q", q}, {"k", 1}});
      }
      break;
    default:
      out.push_back(nlohmann::json::object());
      break;
  }
  return out;
}

// Exhaustive parameter enumeration: every prime up to the bound, every grade
// value modulo its period, every admissible index set.  Candidates are run
// through instantiate and invalid combinations dropped, so the result is
// exactly the set of valid parameter objects.  Order is deterministic.
inline std::vector<nlohmann::json> enumerate_params(const MaximalFamily& fam, int prime_bound) {
  const Ambient& amb = ambient_context(fam.ambient);
  std::vector<int> primes;
  for (int q = 2; q <= prime_bound; ++q)
    if (is_prime(q)) primes.push_back(q);

  auto product = [](const std::vector<std::vector<int>>& menus) {
    std::vector<std::vector<int>> out{{}};
    for (const auto& menu : menus) {
      std::vector<std::vector<int>> next;
      for (const auto& partial : out)
        for (int v : menu) {
          next.push_back(partial);
          next.back().push_back(v);
        }
      out = std::move(next);
    }
    return out;
  };
  auto range2 = [](int count, int step, int start = 0) {
    std::vector<int> v;
    for (int i = 0; i < count; ++i) v.push_back(start + i * step);
    return v;
  };
  auto subsets_of_size = [](int n, int r) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i + 1);
      if (static_cast<int>(s.size()) == r || r < 0) out.push_back(std::move(s));
    }
    return out;
  };

  std::vector<nlohmann::json> raw;
  switch (fam.kind) {
    case FamilyKind::UNTWISTED_PRIME:
      for (int q : primes) {
        std::vector<std::vector<int>> menus(amb.gradient.simple.size(), range2(q, 2));
        for (const auto& p2 : product(menus)) raw.push_back({{"q", q}, {"p2", p2}});
      }
      break;
    case FamilyKind::TWISTED_PRIME: {
      std::vector<int> qs;
      if (fam.param == 1)
        qs.push_back(amb.m);
      else
        for (int q : primes)
          if (q != amb.m) qs.push_back(q);
      for (int q : qs) {
        std::vector<std::vector<int>> menus;
        for (const auto& s : amb.gradient.simple)
          menus.push_back(amb.ratio(s) == 1 ? range2(q, 2) : range2(q, 2 * amb.m));
        for (const auto& p2 : product(menus)) {
          nlohmann::json obj{{"p2", p2}};
          if (fam.param != 1) obj["q"] = q;
          raw.push_back(std::move(obj));
        }
      }
      break;
    }
    case FamilyKind::PSI_I_D2:
      for (auto& s : subsets_of_size(fam.ambient.rank - 1, fam.param)) raw.push_back({{"I", s}});
      break;
    case FamilyKind::PSI_P_A2ODD: {
      int n = (fam.ambient.rank + 1) / 2;
      for (const auto& p2 : product(std::vector<std::vector<int>>(n, {0, 2})))
        raw.push_back({{"p2", p2}});
      break;
    }
    case FamilyKind::PSI_D4_3: {
      std::vector<int> perm{1, 2, 3};
      do {
        raw.push_back({{"perm", perm}, {"ell", 1}});
        raw.push_back({{"perm", perm}, {"ell", 2}});
      } while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case FamilyKind::PSI_P_E6:
      for (const auto& p2 : product(std::vector<std::vector<int>>(4, {0, 2})))
        raw.push_back({{"p2", p2}});
      break;
    case FamilyKind::A2N_AJ:
      for (auto& s : subsets_of_size(fam.ambient.rank / 2, fam.param)) raw.push_back({{"J", s}});
      break;
    case FamilyKind::A2N_PSI_I:
      for (auto& s : subsets_of_size(fam.ambient.rank / 2, -1)) raw.push_back({{"I", s}});
      break;
    case FamilyKind::A2N_PRIME: {
      int n = fam.ambient.rank / 2;
      for (int q : primes) {
        if (q == 2) continue;
        std::vector<std::vector<int>> menus(n - 1, range2(q, 2));
        menus.push_back(range2(q, 2, 1));
        for (const auto& p2 : product(menus)) raw.push_back({{"q", q}, {"p2", p2}});
      }
      break;
    }
    case FamilyKind::A2_PRIME:
      for (int q : primes) {
        if (q == 2) continue;
        for (int k = 0; k < q; ++k) raw.push_back({{"q", q}, {"k", k}});
      }
      break;
    default:
      raw.push_back(nlohmann::json::object());
      break;
  }

  std::vector<nlohmann::json> out;
  for (auto& p : raw) {
    try {
      instantiate(fam, p);
      out.push_back(std::move(p));
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

}  // namespace subroot
