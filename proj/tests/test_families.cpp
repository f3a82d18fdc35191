#include "subroot/families.hpp"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>
#include <string>

using namespace subroot;

namespace {

FiniteRoot e(int dim, int i) { return detail::unit2(dim, i - 1); }

std::set<std::string> type_union(const std::string& ambient) {
  std::set<std::string> out;
  for (const auto& f : enumerate_families(parse_affine_ambient(ambient)))
    out.insert(to_string(f.result_type));
  return out;
}

std::set<std::string> names(std::initializer_list<const char*> xs) {
  std::set<std::string> out;
  for (auto x : xs) out.insert(canonical_spelling(x));
  return out;
}

std::string type_str(const SubrootSystem& sub) { return to_string(type_of(sub)); }

}  // namespace

TEST(Families, UntwistedPrimeTypesAndCosets) {
  SimpleLabel a11 = parse_affine_ambient("A1^1");
  FiniteRootSystem a1 = gradient_system(a11);
  // p(alpha) = 1, q = 3: grades 1 mod 3 on alpha.
  SubrootSystem sub = untwisted_prime(a11, make_grade(a1, {2}), 3);
  FiniteRoot a = a1.simple[0];
  EXPECT_TRUE(model_contains(sub, {a, 2}));
  EXPECT_TRUE(model_contains(sub, {a, 8}));
  EXPECT_FALSE(model_contains(sub, {a, 0}));
  EXPECT_TRUE(model_contains(sub, {-a, -2}));
  EXPECT_EQ(type_str(sub), "A1^1");

  SimpleLabel b31 = parse_affine_ambient("B3^1");
  EXPECT_EQ(type_str(untwisted_prime(b31, zero_grade(gradient_system(b31)), 5)), "B3^1");
  EXPECT_THROW(untwisted_prime(b31, zero_grade(gradient_system(b31)), 4), std::invalid_argument);
  EXPECT_THROW(untwisted_prime(b31, make_grade(gradient_system(b31), {1, 0, 0}), 3),
               std::invalid_argument);
}

TEST(Families, UntwistedLiftTypes) {
  SimpleLabel f41 = parse_affine_ambient("F4^1");
  std::set<std::string> got;
  for (const auto& entry : finite_maximal_closed(SimpleLabel{Family::F, 4, 0}))
    got.insert(type_str(untwisted_finite_lift(f41, entry.roots)));
  EXPECT_EQ(got, names({"A2^1+A2^1", "A1^1+C3^1", "B4^1"}));

  SimpleLabel g21 = parse_affine_ambient("G2^1");
  std::set<std::string> got_g;
  for (const auto& entry : finite_maximal_closed(SimpleLabel{Family::G, 2, 0}))
    got_g.insert(type_str(untwisted_finite_lift(g21, entry.roots)));
  EXPECT_EQ(got_g, names({"A1^1+A1^1", "A2^1"}));
}

TEST(Families, TwistedPrimeBranches) {
  SimpleLabel d32 = parse_affine_ambient("D3^2");
  FiniteRootSystem b2 = gradient_system(d32);
  SubrootSystem q3 = twisted_prime(d32, zero_grade(b2), 3);
  FiniteRoot s = e(2, 1);
  FiniteRoot l = e(2, 1) + e(2, 2);
  EXPECT_TRUE(model_contains(q3, {s, 0}));
  EXPECT_TRUE(model_contains(q3, {s, 6}));
  EXPECT_FALSE(model_contains(q3, {s, 2}));
  EXPECT_TRUE(model_contains(q3, {l, 12}));
  EXPECT_FALSE(model_contains(q3, {l, 4}));
  EXPECT_EQ(type_str(q3), "D3^2");

  SubrootSystem q2 = twisted_prime(d32, zero_grade(b2), 2);
  EXPECT_TRUE(model_contains(q2, {s, 4}));
  EXPECT_TRUE(model_contains(q2, {l, 4}));
  EXPECT_FALSE(model_contains(q2, {l, 2}));
  EXPECT_EQ(type_str(q2), "B2^1");

  // Long-root grade values must be divisible by m.
  EXPECT_THROW(twisted_prime(d32, make_grade(b2, {2, 0}), 3), std::invalid_argument);
  EXPECT_EQ(type_str(twisted_prime(d32, make_grade(b2, {4, 2}), 3)), "D3^2");
}

TEST(Families, TwistedLiftRequiresShortRoot) {
  SimpleLabel d43 = parse_affine_ambient("D4^3");
  FiniteRootSystem g2 = gradient_system(d43);
  std::vector<FiniteRoot> longs;
  for (const auto& r : g2.roots)
    if (norm4(r) == 24) longs.push_back(r);
  EXPECT_THROW(twisted_finite_lift(d43, longs), std::invalid_argument);

  std::set<std::string> got;
  for (const auto& entry : finite_maximal_closed(SimpleLabel{Family::G, 2, 0})) {
    bool has_short = false;
    for (const auto& r : entry.roots) has_short |= norm4(r) == 8;
    if (has_short) got.insert(type_str(twisted_finite_lift(d43, entry.roots)));
  }
  EXPECT_EQ(got, names({"A1^1+A1^1"}));
}

TEST(Families, TwistedLiftTypesE6) {
  SimpleLabel e62 = parse_affine_ambient("E6^2");
  const Ambient& amb = ambient_context(e62);
  std::set<std::string> got;
  for (const auto& entry : finite_maximal_closed(SimpleLabel{Family::F, 4, 0})) {
    bool has_short = false;
    for (const auto& r : entry.roots) has_short |= amb.ratio(r) == 1;
    if (has_short) got.insert(type_str(twisted_finite_lift(e62, entry.roots)));
  }
  EXPECT_EQ(got, names({"A2^1+A2^1", "A1^1+A5^2", "D5^2"}));
}

TEST(Families, TwoBlockShortSystems) {
  // I = {1} in rank 3: eps_1 on even grades, eps_2, eps_3 on odd, cross pairs absent.
  SubrootSystem sub = psi_I_D2(3, {1});
  EXPECT_TRUE(model_contains(sub, {e(3, 1), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 1), 4}));
  EXPECT_FALSE(model_contains(sub, {e(3, 1), 2}));
  EXPECT_TRUE(model_contains(sub, {e(3, 2), 2}));
  EXPECT_FALSE(model_contains(sub, {e(3, 2), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 2) + e(3, 3), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 2) - e(3, 3), 4}));
  EXPECT_FALSE(sub.has(e(3, 1) + e(3, 2)));
  EXPECT_FALSE(sub.has(e(3, 1) - e(3, 3)));
  EXPECT_EQ(type_str(sub), "A1^1+B2^1");
  EXPECT_EQ(type_str(psi_I_D2(4, {1, 3})), "B2^1+B2^1");
  EXPECT_EQ(type_str(psi_I_D2(2, {})), "B2^1");
  EXPECT_THROW(psi_I_D2(3, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(psi_I_D2(3, {4}), std::invalid_argument);
}

TEST(Families, OddEvenSplitOnDn) {
  FiniteRootSystem d3 = d_on_coords(3);
  SubrootSystem sub = psi_p_A2odd(3, make_grade(d3, {0, 0, 2}));
  // p(eps1 + eps3) = 1, p(eps1 - eps3) = 0.
  EXPECT_TRUE(model_contains(sub, {e(3, 1) + e(3, 3), 2}));
  EXPECT_FALSE(model_contains(sub, {e(3, 1) + e(3, 3), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 1) - e(3, 3), 0}));
  EXPECT_FALSE(model_contains(sub, {e(3, 1) - e(3, 3), 2}));
  EXPECT_FALSE(sub.has(2 * e(3, 1)));
  EXPECT_EQ(type_str(sub), "A3^1");
  EXPECT_THROW(psi_p_A2odd(3, make_grade(d3, {0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(psi_p_A2odd(3, make_grade(d3, {0, 2, 2})), std::invalid_argument);
}

TEST(Families, ShortTriangleInG2Ambient) {
  SubrootSystem sub = psi_D4_3({1, 2, 3}, 1);
  EXPECT_TRUE(model_contains(sub, {e(3, 1) - e(3, 2), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 1) - e(3, 2), 6}));
  EXPECT_TRUE(model_contains(sub, {e(3, 1) - e(3, 3), 2}));
  EXPECT_FALSE(model_contains(sub, {e(3, 1) - e(3, 3), 0}));
  EXPECT_TRUE(model_contains(sub, {e(3, 2) - e(3, 3), 2}));
  EXPECT_FALSE(sub.has(e(3, 1) + e(3, 2) - 2 * e(3, 3)));
  EXPECT_EQ(type_str(sub), "A2^1");
  EXPECT_EQ(type_str(psi_D4_3({2, 3, 1}, 2)), "A2^1");
  EXPECT_THROW(psi_D4_3({1, 2, 3}, 3), std::invalid_argument);
  EXPECT_THROW(psi_D4_3({1, 1, 2}, 1), std::invalid_argument);
}

TEST(Families, ParityCensusOnShortD4) {
  FiniteRootSystem d4 = d4_in_f4();
  // Census (even, even, odd, odd) over (eps1, eps2, eps3, eps4).
  SubrootSystem sub = psi_p_E6(make_grade(d4, {0, 0, 2, 2}));
  FiniteRoot e1 = e(4, 1), e2 = e(4, 2), e3 = e(4, 3);
  EXPECT_TRUE(model_contains(sub, {e1 + e2, 0}));
  EXPECT_TRUE(model_contains(sub, {e1 + e2, 4}));
  EXPECT_FALSE(sub.has(e1 + e3));
  EXPECT_FALSE(sub.has(e1 - e3));
  EXPECT_TRUE(model_contains(sub, {e3 + e(4, 4), 0}));
  EXPECT_EQ(type_str(sub), "C4^1");
  EXPECT_THROW(psi_p_E6(make_grade(d4, {0, 0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(psi_p_E6(make_grade(d4, {0, 2, 2, 2})), std::invalid_argument);
}

TEST(Families, NonReducedBlockFamilies) {
  EXPECT_EQ(type_str(a2n_aj(2, {})), "D3^2");
  EXPECT_EQ(type_str(a2n_aj(2, {2})), "A1^1+A2^2");
  EXPECT_EQ(type_str(a2n_aj(3, {1, 3})), "A1^1+A4^2");
  EXPECT_THROW(a2n_aj(2, {1, 2}), std::invalid_argument);

  SubrootSystem psi = a2n_psi_I(2, {1});
  EXPECT_EQ(type_str(psi), "B2^1");
  // Cross pair 1 in I, 2 outside: difference lives on odd grades.
  EXPECT_TRUE(model_contains(psi, {e(2, 1) - e(2, 2), 2}));
  EXPECT_FALSE(model_contains(psi, {e(2, 1) - e(2, 2), 0}));
  EXPECT_TRUE(model_contains(psi, {e(2, 1) + e(2, 2), 0}));
  EXPECT_EQ(type_str(a2n_psi_I(2, {})), "B2^1");
  EXPECT_EQ(type_str(a2n_psi_I(2, {1, 2})), "B2^1");

  FiniteRootSystem bc2 = build_finite("BC2");
  SubrootSystem pr = a2n_prime(2, make_grade(bc2, {0, 1}), 3);
  EXPECT_EQ(type_str(pr), "A4^2");
  EXPECT_TRUE(model_contains(pr, {2 * e(2, 1), 8}));
  EXPECT_FALSE(model_contains(pr, {2 * e(2, 1), 4}));
  EXPECT_THROW(a2n_prime(2, make_grade(bc2, {0, 1}), 2), std::invalid_argument);
  EXPECT_THROW(a2n_prime(2, make_grade(bc2, {0, 1}), 9), std::invalid_argument);
  EXPECT_THROW(a2n_prime(2, make_grade(bc2, {0, 2}), 3), std::invalid_argument);
}

TEST(Families, RankOneSpecializations) {
  SubrootSystem pr = a2_family(A2Kind::PRIME, 0, 3);
  EXPECT_TRUE(model_contains(pr, {e(1, 1), 1}));
  EXPECT_FALSE(model_contains(pr, {2 * e(1, 1), 4}));
  EXPECT_TRUE(model_contains(pr, {2 * e(1, 1), 8}));
  EXPECT_EQ(type_str(pr), "A2^2");
  EXPECT_EQ(type_str(a2_family(A2Kind::SHORT_EVEN)), "A1^1");
  EXPECT_EQ(type_str(a2_family(A2Kind::SHORT_ODD)), "A1^1");
  EXPECT_EQ(type_str(a2_family(A2Kind::LONG)), "A1^1");

  // Short systems keep shorts only; the long system keeps longs only.
  EXPECT_TRUE(model_contains(a2_family(A2Kind::SHORT_EVEN), {e(1, 1), 1}));
  EXPECT_FALSE(a2_family(A2Kind::SHORT_EVEN).has(2 * e(1, 1)));
  EXPECT_TRUE(model_contains(a2_family(A2Kind::SHORT_ODD), {e(1, 1), 3}));
  EXPECT_FALSE(model_contains(a2_family(A2Kind::SHORT_ODD), {e(1, 1), 1}));
  EXPECT_FALSE(a2_family(A2Kind::LONG).has(e(1, 1)));
  EXPECT_TRUE(model_contains(a2_family(A2Kind::LONG), {2 * e(1, 1), 4}));
}

TEST(Families, EnumerateTypeUnions) {
  EXPECT_EQ(type_union("B3^1"), names({"A1^1+A1^1+A1^1", "B2^1", "A3^1", "B3^1"}));
  EXPECT_EQ(type_union("G2^1"), names({"A1^1+A1^1", "A2^1", "G2^1"}));
  EXPECT_EQ(type_union("D3^2"), names({"B2^1", "D3^2", "A1^1", "A1^1+A1^1"}));
  EXPECT_EQ(type_union("D4^2"),
            names({"A1^1+A1^1+A1^1", "B3^1", "D4^2", "D3^2", "A1^1+B2^1"}));
  EXPECT_EQ(type_union("A5^2"), names({"A1^1+D3^2", "A5^2", "C3^1", "A2^1", "A3^1"}));
  EXPECT_EQ(type_union("E6^2"),
            names({"A1^1+A5^2", "A2^1+A2^1", "E6^2", "F4^1", "D5^2", "C4^1"}));
  EXPECT_EQ(type_union("D4^3"), names({"A1^1+A1^1", "D4^3", "G2^1", "A2^1"}));
  EXPECT_EQ(type_union("A2^2"), names({"A2^2", "A1^1"}));
  EXPECT_EQ(type_union("A4^2"), names({"A2^2+A1^1", "A4^2", "D3^2", "B2^1"}));
}

TEST(Families, InstantiateMatchesDeclaredTypes) {
  for (const char* l : {"A1^1", "A2^1", "B2^1", "B3^1", "C3^1", "G2^1", "F4^1", "A2^2", "A4^2",
                        "A6^2", "D3^2", "D4^2", "D5^2", "A5^2", "A7^2", "E6^2", "D4^3"}) {
    for (const auto& fam : enumerate_families(parse_affine_ambient(l))) {
      auto samples = sample_params(fam, 5);
      ASSERT_FALSE(samples.empty()) << l << " " << kind_name(fam.kind);
      for (const auto& params : samples) {
        SubrootSystem sub = instantiate(fam, params);
        EXPECT_EQ(to_string(type_of(sub)), to_string(fam.result_type))
            << l << " " << kind_name(fam.kind) << " " << params.dump();
        LawReport rep = check_modulus_laws(sub);
        EXPECT_TRUE(rep.pass) << l << " " << kind_name(fam.kind) << " " << params.dump()
                              << (rep.failures.empty() ? "" : (": " + rep.failures[0]));
      }
    }
  }
}

TEST(Families, DescriptorJson) {
  auto fams = enumerate_families(parse_affine_ambient("D3^2"));
  nlohmann::json j = fams;
  ASSERT_TRUE(j.is_array());
  for (const auto& d : j) {
    EXPECT_EQ(d.at("ambient"), "D3^2");
    EXPECT_TRUE(d.contains("kind"));
    EXPECT_TRUE(d.contains("params"));
    EXPECT_TRUE(d.contains("type"));
  }
}
