#pragma once

// Real roots of affine root systems, stored as (finite part, doubled grade).
// A real root alpha + r delta is the pair (alpha, t2) with t2 = 2r, so the
// half-integer grades appearing in the even twisted-A case stay integral.
// Membership depends on the ambient type through congruences on t2:
//   twist 1:            every root has t2 even
//   twist 2, 3:         short roots t2 even, long roots t2 = 0 mod 2m
//   A_{2n}^(2):         short t2 odd, intermediate t2 even, long t2 = 0 mod 4
// The gradient (projection to the finite part) is B_n for D_{n+1}^(2),
// C_n for A_{2n-1}^(2), F_4 for E_6^(2), G_2 for D_4^(3), BC_n for A_{2n}^(2),
// and X_n itself for X_n^(1).

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "finite.hpp"
#include "labels.hpp"

namespace subroot {

struct AffineRoot {
  FiniteRoot v;
  int t2 = 0;  // doubled delta-coefficient

  auto operator<=>(const AffineRoot&) const = default;
};

inline AffineRoot operator+(const AffineRoot& a, const AffineRoot& b) {
  return {a.v + b.v, a.t2 + b.t2};
}

inline AffineRoot operator-(const AffineRoot& a) { return {-a.v, -a.t2}; }

inline AffineRoot operator-(const AffineRoot& a, const AffineRoot& b) {
  return {a.v - b.v, a.t2 - b.t2};
}

// Twist order m: 1 for untwisted types, 2 or 3 for twisted ones.
inline int m_of(const SimpleLabel& ambient) {
  if (ambient.twist < 1) throw std::invalid_argument("ambient must be affine");
  return ambient.twist;
}

// True when the ambient is an even twisted-A type (gradient BC_n).
inline bool is_bc_ambient(const SimpleLabel& ambient) {
  return ambient.fam == Family::A && ambient.twist == 2 && ambient.rank % 2 == 0;
}

inline FiniteRootSystem gradient_system(const SimpleLabel& raw) {
  SimpleLabel ambient = parse_affine_ambient(to_string(raw));
  if (ambient.twist == 1) return build_finite(SimpleLabel{ambient.fam, ambient.rank, 0});
  if (ambient.twist == 3) return build_finite(SimpleLabel{Family::G, 2, 0});
  switch (ambient.fam) {
    case Family::A:
      if (ambient.rank % 2 == 0) return build_finite(SimpleLabel{Family::BC, ambient.rank / 2, 0});
      return build_finite(SimpleLabel{Family::C, (ambient.rank + 1) / 2, 0});
    case Family::D:
      return build_finite(SimpleLabel{Family::B, ambient.rank - 1, 0});
    case Family::E:
      return build_finite(SimpleLabel{Family::F, 4, 0});
    default:
      throw std::invalid_argument("no twisted form: " + to_string(ambient));
  }
}

// Cached per-ambient context for the hot membership paths.
struct Ambient {
  SimpleLabel label;
  FiniteRootSystem gradient;
  long long min_norm4 = 0;
  int m = 1;
  bool bc = false;

  // Squared-length ratio to the shortest gradient root: 1 for short, m for
  // long in the two-length types, 1/2/4 inside BC_n.
  int ratio(const FiniteRoot& v) const {
    long long n = norm4(v);
    if (n % min_norm4 != 0) throw std::invalid_argument("length not commensurable");
    return static_cast<int>(n / min_norm4);
  }

  bool grade_admissible(const FiniteRoot& v, int t2) const {
    if (m == 1) return t2 % 2 == 0;
    int r = ratio(v);
    if (bc) {
      if (r == 1) return ((t2 % 2) + 2) % 2 == 1;
      if (r == 2) return t2 % 2 == 0;
      return ((t2 % 4) + 4) % 4 == 0;
    }
    if (r == 1) return t2 % 2 == 0;
    return t2 % (2 * m) == 0;
  }

  bool is_real(const AffineRoot& x) const {
    return gradient.contains(x.v) && grade_admissible(x.v, x.t2);
  }

  // Smallest admissible period (in t2 units) for a gradient root: the full
  // lattice of grades for v is an arithmetic progression with this step.
  int full_period2(const FiniteRoot& v) const {
    if (m == 1) return 2;
    int r = ratio(v);
    if (bc) return r == 4 ? 4 : 2;
    return r == 1 ? 2 : 2 * m;
  }

  // Least admissible grade >= 0 for v (offset of the full progression).
  int full_offset2(const FiniteRoot& v) const {
    if (bc && ratio(v) == 1) return 1;
    return 0;
  }
};

inline const Ambient& ambient_context(const SimpleLabel& raw) {
  static std::mutex mu;
  static std::unordered_map<std::string, Ambient> cache;
  std::string key = to_string(raw);
  std::scoped_lock lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Ambient a;
    a.label = parse_affine_ambient(key);
    a.gradient = gradient_system(a.label);
    a.m = m_of(a.label);
    a.bc = is_bc_ambient(a.label);
    for (const auto& g : a.gradient.roots) {
      long long n = norm4(g);
      if (a.min_norm4 == 0 || n < a.min_norm4) a.min_norm4 = n;
    }
    it = cache.emplace(key, std::move(a)).first;
  }
  return it->second;
}

inline bool is_real_root(const SimpleLabel& ambient, const AffineRoot& x) {
  return ambient_context(ambient).is_real(x);
}

// Imaginary direction: zero finite part, nonzero grade.  (Integer multiples
// of delta are the genuine imaginary roots; the odd-grade points with zero
// finite part are treated the same way by every consumer here.)
inline bool is_imaginary(const AffineRoot& x) { return is_zero(x.v) && x.t2 != 0; }

// All real roots with |t2| <= radius2, sorted.
inline std::vector<AffineRoot> window_roots(const SimpleLabel& ambient, int radius2) {
  const Ambient& amb = ambient_context(ambient);
  std::vector<AffineRoot> out;
  for (const auto& v : amb.gradient.roots)
    for (int t2 = -radius2; t2 <= radius2; ++t2)
      if (amb.grade_admissible(v, t2)) out.push_back({v, t2});
  std::sort(out.begin(), out.end());
  return out;
}

// s_{(a,s2)}(b,t2) = (s_a(b), t2 - <b,a^> s2).
inline AffineRoot reflect(const AffineRoot& by, const AffineRoot& x) {
  int p = pairing(x.v, by.v);
  return {x.v - p * by.v, x.t2 - p * by.t2};
}

inline int affine_pairing(const AffineRoot& b, const AffineRoot& a) { return pairing(b.v, a.v); }

}  // namespace subroot
