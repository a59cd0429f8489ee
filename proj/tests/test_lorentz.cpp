#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bkm/lorentz.hpp"

using namespace bkm;
using namespace bkm::lorentz;

namespace {

LatticeVector space_vector(std::initializer_list<std::pair<int, int>> entries, std::int64_t time = 0) {
  std::array<std::int64_t, 25> s{};
  for (const auto& [i, v] : entries) s[static_cast<std::size_t>(i)] = v;
  return LatticeVector::from_integers(s, time);
}

const LatticeVector kE1 = space_vector({{0, 1}});
const LatticeVector kRoot = space_vector({{0, -1}, {1, -1}});

}  // namespace

TEST(InnerProduct, Examples) {
  const LatticeVector rho = weyl_vector();
  EXPECT_EQ(norm(rho), 0);
  EXPECT_EQ(norm(kE1), 1);
  EXPECT_EQ(norm(half_vector()), 6);
  EXPECT_EQ(rho.coord(0), 70);
  EXPECT_EQ(rho.coord(25), 24);
  EXPECT_EQ(half_vector().coord(3), Rational(1, 2));
}

TEST(InnerProduct, RhoNormFromSumOfSquares) {
  long s = 0;
  for (long k = 0; k <= 24; ++k) s += k * k;
  EXPECT_EQ(s, 70 * 70);
}

TEST(Membership, Examples) {
  EXPECT_TRUE(is_member(weyl_vector()));
  EXPECT_FALSE(is_member(kE1));
  EXPECT_TRUE(is_member(kRoot));
  EXPECT_TRUE(is_member(half_vector() + half_vector()) == is_member(2 * half_vector()));
  LatticeVector::Doubled mixed{};
  mixed[0] = 1;
  EXPECT_FALSE(is_member(LatticeVector(mixed)));
}

TEST(Membership, ClosedUnderAdditionAndNegation) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const LatticeVector x = sample_member(rng);
    const LatticeVector y = sample_member(rng);
    ASSERT_TRUE(is_member(x));
    EXPECT_TRUE(is_member(x + y));
    EXPECT_TRUE(is_member(-x));
    EXPECT_TRUE(is_integral(norm(x)));
    EXPECT_EQ(norm(x).get_num() % 2, 0);
  }
}

TEST(LeechRepresentative, Examples) {
  const LatticeVector rho = weyl_vector();
  ASSERT_EQ(inner_product(kRoot, rho), -1);
  const LeechClass c = leech_representative(kRoot);
  EXPECT_EQ(c.rep(), kRoot);
  EXPECT_EQ(leech_representative(kRoot + 5 * rho), c);
  EXPECT_EQ(leech_representative(kRoot - 3 * rho), c);
  EXPECT_EQ(norm(c.rep()), 2);
}

TEST(LeechRepresentative, Preconditions) {
  EXPECT_THROW(leech_representative(kE1), LatticeDomainError);
  EXPECT_THROW(leech_representative(weyl_vector()), LatticeDomainError);
}

TEST(LeechRepresentative, ConstantOnRhoCosets) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> shift(-20, 20);
  const LatticeVector rho = weyl_vector();
  for (int t = 0; t < 30; ++t) {
    const LeechClass c = sample_leech_class(rng);
    EXPECT_EQ(norm(c.rep()), 2);
    EXPECT_EQ(inner_product(c.rep(), rho), -1);
    EXPECT_EQ(leech_representative(c.rep() + shift(rng) * rho), c);
  }
}

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect(kRoot, kRoot), -kRoot);
  const LatticeVector orth = space_vector({{5, 1}, {6, 1}});
  ASSERT_EQ(inner_product(kRoot, orth), 0);
  EXPECT_EQ(reflect(kRoot, orth), orth);
  EXPECT_THROW(reflect(weyl_vector(), kRoot), LatticeDomainError);
  EXPECT_THROW(reflect(kRoot, kE1), LatticeDomainError);
}

TEST(Reflect, RandomisedIsometryAndInvolution) {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 100; ++t) {
    const LatticeVector r = sample_root(rng);
    ASSERT_EQ(norm(r), 2);
    const LatticeVector x = sample_member(rng);
    const LatticeVector y = sample_member(rng);
    EXPECT_EQ(reflect(r, reflect(r, x)), x);
    EXPECT_EQ(inner_product(reflect(r, x), reflect(r, y)), inner_product(x, y));
    EXPECT_TRUE(is_member(reflect(r, x)));
  }
}

TEST(ClassDistance, Examples) {
  std::mt19937_64 rng(77);
  const LeechClass a = sample_leech_class(rng);
  EXPECT_EQ(class_difference_norm(a, a), 0);
  const LeechClass b = leech_representative(kRoot);
  const LeechClass c = sample_leech_class(rng);
  const Integer ab = class_difference_norm(a, b);
  EXPECT_EQ(ab, 4 - 2 * to_integer(inner_product(a.rep(), b.rep())));
  const double dab = std::sqrt(ab.get_d());
  const double dbc = std::sqrt(class_difference_norm(b, c).get_d());
  EXPECT_LE(class_difference_norm(a, c).get_d(), (dab + dbc) * (dab + dbc) + 1e-9);
}

TEST(ClassDistance, SampledClassesHaveNoRoots) {
  std::mt19937_64 rng(2024);
  std::vector<LeechClass> seen;
  while (seen.size() < 60) {
    LeechClass k = sample_leech_class(rng);
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) seen.push_back(k);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      const Integer d = class_difference_norm(seen[i], seen[j]);
      EXPECT_GE(d, 4);
      EXPECT_EQ(d % 2, 0);
    }
  }
}

TEST(FakeMonsterRoots, SimpleRootTemplate) {
  const GradedRoot r0 = fm_simple_root(0);
  EXPECT_EQ(r0.m, 1);
  EXPECT_EQ(r0.n, -1);
  EXPECT_EQ(r0.norm(), 2);
  const GradedRoot r4 = fm_simple_root(4);
  EXPECT_EQ(r4.n, 1);
  EXPECT_EQ(r4.norm(), 2);
  EXPECT_EQ(hyperbolic_pairing(r4, fake_monster_rho()), -1);
  EXPECT_THROW(fm_simple_root(3), LatticeDomainError);
  EXPECT_THROW(fm_simple_root(-2), LatticeDomainError);
}

TEST(FakeMonsterRoots, LightLike) {
  const GradedRoot l = fm_lightlike_root(3);
  EXPECT_EQ(l.norm(), 0);
  EXPECT_EQ(hyperbolic_pairing(l, fake_monster_rho()), 0);
  EXPECT_EQ(fake_monster_rho().norm(), 0);
  EXPECT_THROW(fm_lightlike_root(0), LatticeDomainError);
}

TEST(SelfCheck, PassesAndIsDeterministic) {
  const LatticeCheck a = lattice_self_check(5);
  EXPECT_TRUE(a.pass());
  EXPECT_TRUE(a.rho_null);
  EXPECT_EQ(a.membership_checks, 100);
  EXPECT_EQ(a.reflection_checks, 100);
  EXPECT_EQ(a.leech_classes, 50);
  EXPECT_GE(a.min_class_distance, 4);
  EXPECT_EQ(lattice_self_check(5).min_class_distance, a.min_class_distance);
}
