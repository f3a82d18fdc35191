#pragma once

// Type labels for finite and affine root systems: parsing, canonical
// spellings, and direct sums.  The label grammar is
//   <Family><rank>            finite, e.g. "F4", "BC3"
//   <Family><rank>^<twist>    affine, e.g. "B3^1", "A5^2", "D4^3"
// with direct sums joined by '+'.  Parsing is case-insensitive; output is
// canonical uppercase.  Aliases among low-rank types (B2 = C2, D3 = A3,
// A3^2 = D3^2, ...) are normalized by canonicalize().

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subroot {

enum class Family : std::uint8_t { A, B, C, D, E, F, G, BC };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::BC: return "BC";
  }
  return "?";
}

// One irreducible label.  twist == 0 means finite; 1, 2, 3 are affine.
struct SimpleLabel {
  Family fam = Family::A;
  int rank = 1;
  int twist = 0;

  auto operator<=>(const SimpleLabel&) const = default;
};

using LabelSum = std::vector<SimpleLabel>;  // kept sorted by canonicalize()

inline SimpleLabel finite_label(Family f, int rank) { return {f, rank, 0}; }
inline SimpleLabel affine_label(Family f, int rank, int twist) { return {f, rank, twist}; }

// Structural validity of a single label (before alias normalization).
inline bool is_valid_label(const SimpleLabel& l) {
  if (l.rank < 1) return false;
  if (l.twist < 0 || l.twist > 3) return false;
  switch (l.fam) {
    case Family::E:
      if (l.rank < 6 || l.rank > 8) return false;
      if (l.twist == 2 && l.rank != 6) return false;
      if (l.twist == 3) return false;
      return true;
    case Family::F:
      return l.rank == 4 && l.twist <= 1;
    case Family::G:
      return l.rank == 2 && l.twist <= 1;
    case Family::BC:
      return l.twist == 0;
    case Family::A:
      return l.twist <= 2;
    case Family::B:
    case Family::C:
      return l.twist <= 1;
    case Family::D:
      if (l.twist == 3) return l.rank == 4;
      if (l.twist == 2) return l.rank >= 2;
      return true;
  }
  return false;
}

// Alias normalization.  A single label may expand to a sum (D2 = A1+A1).
// Canonical spellings:
//   finite: B1/C1/D1 -> A1, C2 -> B2, D2 -> A1+A1, D3 -> A3
//   twist 1: same ranks with ^1 everywhere
//   twist 2: A1^2 -> A1^1, A3^2 -> D3^2, D2^2 -> A1^1
inline LabelSum canonicalize(const SimpleLabel& in) {
  SimpleLabel l = in;
  if (!is_valid_label(l)) throw std::invalid_argument("invalid type label");
  if (l.twist == 0 || l.twist == 1) {
    int t = l.twist;
    if ((l.fam == Family::B || l.fam == Family::C || l.fam == Family::D) && l.rank == 1)
      return {{Family::A, 1, t}};
    if (l.fam == Family::C && l.rank == 2) return {{Family::B, 2, t}};
    if (l.fam == Family::D && l.rank == 2) return {{Family::A, 1, t}, {Family::A, 1, t}};
    if (l.fam == Family::D && l.rank == 3) return {{Family::A, 3, t}};
    return {l};
  }
  if (l.twist == 2) {
    if (l.fam == Family::A && l.rank == 1) return {{Family::A, 1, 1}};
    if (l.fam == Family::A && l.rank == 3) return {{Family::D, 3, 2}};
    if (l.fam == Family::D && l.rank == 2) return {{Family::A, 1, 1}};
    return {l};
  }
  return {l};  // twist 3: D4^3 only
}

inline LabelSum canonicalize(const LabelSum& sum) {
  LabelSum out;
  for (const auto& l : sum) {
    LabelSum part = canonicalize(l);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const SimpleLabel& a, const SimpleLabel& b) {
    if (a.fam != b.fam) return a.fam < b.fam;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.twist < b.twist;
  });
  return out;
}

inline std::string to_string(const SimpleLabel& l) {
  std::string s = family_name(l.fam);
  s += std::to_string(l.rank);
  if (l.twist > 0) {
    s += '^';
    s += std::to_string(l.twist);
  }
  return s;
}

inline std::string to_string(const LabelSum& sum) {
  std::string s;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (i) s += '+';
    s += to_string(sum[i]);
  }
  return s;
}

namespace detail {

inline SimpleLabel parse_one(const std::string& tok) {
  std::size_t i = 0;
  auto upper = [](char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); };
  if (tok.empty()) throw std::invalid_argument("empty type label");
  Family fam;
  char c0 = upper(tok[0]);
  if (c0 == 'B' && tok.size() > 1 && upper(tok[1]) == 'C') {
    fam = Family::BC;
    i = 2;
  } else {
    switch (c0) {
      case 'A': fam = Family::A; break;
      case 'B': fam = Family::B; break;
      case 'C': fam = Family::C; break;
      case 'D': fam = Family::D; break;
      case 'E': fam = Family::E; break;
      case 'F': fam = Family::F; break;
      case 'G': fam = Family::G; break;
      default: throw std::invalid_argument("unknown family letter in '" + tok + "'");
    }
    i = 1;
  }
  std::size_t j = i;
  while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
  if (j == i) throw std::invalid_argument("missing rank in '" + tok + "'");
  int rank = std::stoi(tok.substr(i, j - i));
  int twist = 0;
  if (j < tok.size()) {
    if (tok[j] != '^') throw std::invalid_argument("bad character in '" + tok + "'");
    ++j;
    std::size_t k = j;
    while (k < tok.size() && std::isdigit(static_cast<unsigned char>(tok[k]))) ++k;
    if (k == j || k != tok.size()) throw std::invalid_argument("bad twist in '" + tok + "'");
    twist = std::stoi(tok.substr(j, k - j));
  }
  SimpleLabel l{fam, rank, twist};
  if (!is_valid_label(l)) throw std::invalid_argument("invalid type label '" + tok + "'");
  return l;
}

}  // namespace detail

// Parses a possibly-summed label string.  Does not canonicalize.
inline LabelSum parse_label_sum(const std::string& text) {
  LabelSum out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    std::string raw = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
    std::string tok;
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) tok.push_back(c);
    if (tok.empty()) throw std::invalid_argument("empty component in label sum '" + text + "'");
    out.push_back(detail::parse_one(tok));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

// Parse + canonicalize in one step; the form used for golden comparisons.
inline LabelSum canonical_label(const std::string& text) { return canonicalize(parse_label_sum(text)); }

inline std::string canonical_spelling(const std::string& text) { return to_string(canonical_label(text)); }

// A single irreducible affine label (ambient types).  Throws if the text
// names a sum or a finite type.
inline SimpleLabel parse_affine_ambient(const std::string& text) {
  LabelSum sum = parse_label_sum(text);
  if (sum.size() != 1) throw std::invalid_argument("ambient must be irreducible: '" + text + "'");
  SimpleLabel l = sum[0];
  if (l.twist == 0) throw std::invalid_argument("ambient must be affine: '" + text + "'");
  LabelSum canon = canonicalize(l);
  if (canon.size() != 1) throw std::invalid_argument("ambient alias is reducible: '" + text + "'");
  return canon[0];
}

}  // namespace subroot
