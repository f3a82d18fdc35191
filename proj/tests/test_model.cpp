#include "subroot/model.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "subroot/families.hpp"

using namespace subroot;

namespace {

FiniteRoot e(int dim, int i) { return detail::unit2(dim, i - 1); }

}  // namespace

TEST(Model, FullModelExpandsToWindow) {
  for (const char* l : {"A2^1", "B2^1", "D3^2", "A2^2", "A4^2", "D4^3"}) {
    SimpleLabel amb = parse_affine_ambient(l);
    auto w = window_roots(amb, 8);
    Window expanded = expand(full_model(amb), 8);
    EXPECT_EQ(expanded, Window(w.begin(), w.end())) << l;
  }
}

TEST(Model, PutCosetAddsMirror) {
  SimpleLabel amb = parse_affine_ambient("A1^1");
  SubrootSystem sub;
  sub.ambient = amb;
  put_coset(sub, e(2, 1) - e(2, 2), 2, 6);
  EXPECT_TRUE(model_contains(sub, {e(2, 1) - e(2, 2), 2}));
  EXPECT_TRUE(model_contains(sub, {e(2, 2) - e(2, 1), -2}));
  EXPECT_TRUE(model_contains(sub, {e(2, 2) - e(2, 1), 4}));
  EXPECT_FALSE(model_contains(sub, {e(2, 1) - e(2, 2), 0}));
}

TEST(Model, LiftKeepsFinitePart) {
  SimpleLabel amb = parse_affine_ambient("B3^1");
  FiniteRootSystem b3 = gradient_system(amb);
  std::vector<FiniteRoot> block;
  for (const auto& r : b3.roots)
    if (r.c2[0] == 0) block.push_back(r);
  SubrootSystem sub = lift(amb, block);
  EXPECT_EQ(to_string(recognize_finite_type(gradient_of(sub))), "B2");
  for (const auto& r : block) {
    EXPECT_TRUE(model_contains(sub, {r, 0}));
    EXPECT_TRUE(model_contains(sub, {r, 2}));
  }
  EXPECT_FALSE(model_contains(sub, {e(3, 1), 0}));
}

TEST(Model, FitRecoversConstructedCosets) {
  for (const char* l : {"A2^1", "D3^2", "A4^2"}) {
    SimpleLabel amb = parse_affine_ambient(l);
    SubrootSystem full = full_model(amb);
    Window w = expand(full, 12);
    SubrootSystem fitted = fit_coset_model(amb, w);
    EXPECT_EQ(canonical_key(fitted), canonical_key(full)) << l;
  }
}

TEST(Model, FitRejectsNonArithmeticGrades) {
  SimpleLabel amb = parse_affine_ambient("A1^1");
  FiniteRoot a = e(2, 1) - e(2, 2);
  Window w{{a, 0}, {a, 2}, {a, 6}, {-a, 0}, {-a, -2}, {-a, -6}};
  EXPECT_THROW(fit_coset_model(amb, w), std::runtime_error);
}

TEST(Model, FitFlagsTwoPointWindows) {
  SimpleLabel amb = parse_affine_ambient("A1^1");
  FiniteRoot a = e(2, 1) - e(2, 2);
  Window w{{a, 0}, {a, 4}, {-a, 0}, {-a, -4}};
  SubrootSystem s = fit_coset_model(amb, w);
  EXPECT_TRUE(s.cosets.at(a).undetermined);
  EXPECT_THROW(model_contains(s, {a, 8}), std::runtime_error);
}

TEST(Model, ClassifyGradient) {
  SimpleLabel b31 = parse_affine_ambient("B3^1");
  EXPECT_EQ(classify_gradient(full_model(b31)), GradientClass::FULL);

  FiniteRootSystem b3 = gradient_system(b31);
  std::vector<FiniteRoot> longs;
  for (const auto& r : b3.roots)
    if (norm4(r) == 8) longs.push_back(r);
  EXPECT_EQ(classify_gradient(lift(b31, longs)), GradientClass::PROPER_CLOSED);

  EXPECT_EQ(classify_gradient(psi_I_D2(3, {1})), GradientClass::PROPER_SEMI_CLOSED);
  EXPECT_EQ(classify_gradient(a2_family(A2Kind::SHORT_EVEN)), GradientClass::PROPER_SEMI_CLOSED);
}

TEST(Model, ModulusLawsHoldForFamilies) {
  EXPECT_TRUE(check_modulus_laws(full_model(parse_affine_ambient("D3^2"))).pass);
  EXPECT_TRUE(check_modulus_laws(psi_I_D2(3, {1, 3})).pass);
  EXPECT_TRUE(check_modulus_laws(a2n_aj(2, {2})).pass);
  EXPECT_TRUE(check_modulus_laws(a2n_psi_I(2, {1})).pass);

  FiniteRootSystem a2 = build_finite("A2");
  SubrootSystem sub = untwisted_prime(parse_affine_ambient("A2^1"), zero_grade(a2), 3);
  EXPECT_TRUE(check_modulus_laws(sub).pass);
}

TEST(Model, ModulusLawsRejectMixedPeriods) {
  SimpleLabel amb = parse_affine_ambient("A2^1");
  FiniteRoot a = e(3, 1) - e(3, 2);
  FiniteRoot b = e(3, 2) - e(3, 3);
  SubrootSystem sub;
  sub.ambient = amb;
  put_coset(sub, a, 0, 4);
  put_coset(sub, b, 0, 6);
  put_coset(sub, a + b, 0, 4);
  LawReport rep = check_modulus_laws(sub);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.failures.empty());
}

TEST(Model, JsonRoundTrip) {
  SubrootSystem sub = psi_p_A2odd(3, make_grade(d_on_coords(3), {0, 0, 2}));
  nlohmann::json j = to_json(sub);
  SubrootSystem back = subroot_system_from_json(j);
  EXPECT_EQ(canonical_key(back), canonical_key(sub));
  EXPECT_EQ(j.at("ambient").get<std::string>(), "A5^2");

  SubrootSystem full = full_model(parse_affine_ambient("D4^3"));
  EXPECT_EQ(canonical_key(subroot_system_from_json(to_json(full))), canonical_key(full));
}

TEST(Model, WindowChecks) {
  SimpleLabel amb = parse_affine_ambient("B2^1");
  auto all = window_roots(amb, 8);
  Window w(all.begin(), all.end());
  EXPECT_TRUE(is_subroot_system(amb, w, 8));
  EXPECT_TRUE(is_closed(amb, w, 8));

  Window shorts_only;
  for (const auto& x : w)
    if (norm4(x.v) == 4) shorts_only.insert(x);
  EXPECT_TRUE(is_subroot_system(amb, shorts_only, 8));
  EXPECT_FALSE(is_closed(amb, shorts_only, 8));

  Window broken = w;
  broken.erase({e(2, 1) - e(2, 2), 2});
  EXPECT_FALSE(is_subroot_system(amb, broken, 8));
}
