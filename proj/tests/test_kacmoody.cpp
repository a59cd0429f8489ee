#include <gtest/gtest.h>

#include "bkm/kacmoody.hpp"
#include "oracles.hpp"

using namespace bkm;
using namespace bkm::km;

namespace {

const Gcm kA1 = Gcm::from_ints({{2}});
const Gcm kA2 = Gcm::from_ints({{2, -1}, {-1, 2}});
const Gcm kB2 = Gcm::from_ints({{4, -2}, {-2, 2}});
const Gcm kAffA1 = Gcm::from_ints({{2, -2}, {-2, 2}});

Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

oracle::IMat cartan_integers(const Gcm& g) {
  oracle::IMat c(g.rank(), oracle::IVec(g.rank()));
  for (std::size_t i = 0; i < g.rank(); ++i) {
    for (std::size_t j = 0; j < g.rank(); ++j) c[i][j] = to_long(to_integer(2 * g(i, j) / g(i, i)));
  }
  return c;
}

std::set<oracle::IVec> as_int_set(const std::vector<Vec>& roots) {
  std::set<oracle::IVec> out;
  for (const auto& r : roots) {
    oracle::IVec v;
    for (const auto& x : r) v.push_back(to_long(to_integer(x)));
    out.insert(v);
  }
  return out;
}

std::vector<std::vector<long>> labels_up_to(std::size_t rank, long total) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(rank, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(kA1).valid_classic);
  EXPECT_TRUE(validate(kA2).valid_classic);
  const Gcm neg = Gcm::from_ints({{-2}}, GcmKind::generalized);
  const ValidationReport r = validate(neg);
  EXPECT_FALSE(r.valid_classic);
  EXPECT_TRUE(r.valid_generalized);
  EXPECT_TRUE(r.failures.empty());
  const ValidationReport rc = validate(Gcm::from_ints({{-2}}));
  EXPECT_FALSE(rc.valid(GcmKind::classic));
  ASSERT_FALSE(rc.failures.empty());
  EXPECT_NE(rc.failures[0].find("km1"), std::string::npos);
}

TEST(Validate, OffDiagonalConditions) {
  EXPECT_FALSE(validate(Gcm::from_ints({{2, 1}, {1, 2}})).valid_classic);
  EXPECT_FALSE(validate(Gcm::from_ints({{4, -1}, {-1, 2}})).valid_classic);
  const ValidationReport r = validate(Gcm::from_ints({{0, 0, -1}, {0, -2, 0}, {-1, 0, 2}}, GcmKind::generalized));
  EXPECT_TRUE(r.valid_generalized);
  ASSERT_EQ(r.commuting_pairs.size(), 2u);
  EXPECT_EQ(r.commuting_pairs[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Validate, NonSymmetricRejectedWithEntry) {
  try {
    Gcm::from_ints({{2, -1}, {-2, 2}});
    FAIL() << "expected GcmError";
  } catch (const GcmError& e) {
    EXPECT_NE(std::string(e.what()).find("a[0][1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Gcm::from_ints({{2, -1}}), GcmError);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(kA2), TypeClass::finite);
  EXPECT_EQ(classify(kB2), TypeClass::finite);
  EXPECT_EQ(classify(kAffA1), TypeClass::affine);
  EXPECT_EQ(classify(Gcm::from_ints({{2, -3}, {-3, 2}})), TypeClass::indefinite);
  EXPECT_EQ(classify(Gcm::from_ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}})), TypeClass::affine);
}

TEST(PositiveRoots, Examples) {
  EXPECT_EQ(finite_positive_roots(kA1), std::vector<Vec>{V({1})});
  EXPECT_EQ(finite_positive_roots(kA2).size(), 3u);
  EXPECT_EQ(finite_positive_roots(kB2).size(), 4u);
  EXPECT_THROW(finite_positive_roots(kAffA1), KmDomainError);
}

TEST(PositiveRoots, MatchReflectionClosureOracle) {
  const Gcm g2 = Gcm::from_ints({{6, -3}, {-3, 2}});
  const Gcm a3 = Gcm::from_ints({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  for (const Gcm* g : {&kA1, &kA2, &kB2, &g2, &a3}) {
    EXPECT_EQ(as_int_set(finite_positive_roots(*g)), oracle::positive_roots_by_words(cartan_integers(*g), 8));
  }
}

TEST(WeylGroup, FiniteOrders) {
  EXPECT_EQ(weyl_enumerate(kA1, 5).size(), 2u);
  EXPECT_EQ(weyl_enumerate(kA2, 6).size(), 6u);
  EXPECT_EQ(weyl_enumerate(kB2, 10).size(), 8u);
  EXPECT_EQ(weyl_enumerate(Gcm::from_ints({{6, -3}, {-3, 2}}), 20).size(), 12u);
}

TEST(WeylGroup, LengthDistributionMatchesWordOracle) {
  for (const Gcm* g : {&kA2, &kB2, &kAffA1}) {
    const int L = 7;
    std::map<int, int> got;
    for (const auto& w : weyl_enumerate(*g, L)) ++got[static_cast<int>(w.word.size())];
    EXPECT_EQ(got, oracle::weyl_elements_by_length(cartan_integers(*g), L));
  }
}

TEST(WeylGroup, AffineGrowthIsTwoPerLength) {
  // Words s0 s1 s0 ... and s1 s0 s1 ... of each length are distinct reduced words.
  for (int L : {0, 1, 4, 9}) {
    EXPECT_EQ(weyl_enumerate(kAffA1, L).size(), static_cast<std::size_t>(2 * L + 1)) << L;
    int oracle_total = 0;
    for (const auto& [len, n] : oracle::weyl_elements_by_length(cartan_integers(kAffA1), L)) oracle_total += n;
    EXPECT_EQ(oracle_total, 2 * L + 1);
  }
}

TEST(WeylGroup, ElementsPreserveFormAndHaveSignedDeterminant) {
  for (const Gcm* g : {&kA2, &kB2, &kAffA1}) {
    const WeylSetup s = make_weyl_setup(*g);
    for (const auto& w : weyl_enumerate(s, 6)) {
      EXPECT_EQ(w.det, w.word.size() % 2 == 0 ? 1 : -1);
      EXPECT_EQ(determinant(w.action), w.det);
      for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
          const Vec x = unit_vector(s.dim(), i), y = unit_vector(s.dim(), j);
          EXPECT_EQ(bilinear(s.gram, w.apply(x), w.apply(y)), s.gram[i][j]);
        }
      }
    }
  }
}

TEST(WeylVector, Examples) {
  EXPECT_EQ(kA1.form(weyl_vector(kA1), V({1})), -1);
  EXPECT_EQ(weyl_vector(kA2), V({-1, -1}));
  const Vec rb = weyl_vector(kB2);
  EXPECT_EQ(kB2.form(rb, V({1, 0})), -2);
  EXPECT_EQ(kB2.form(rb, V({0, 1})), -1);
}

TEST(WeylVector, AffineUsesExtension) {
  const WeylSetup s = make_weyl_setup(kAffA1);
  ASSERT_EQ(s.dim(), 3u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(bilinear(s.gram, s.rho, s.simple_root(i)), -1);
  EXPECT_THROW(make_weyl_setup(Gcm::from_ints({{2, -2, 0, 0}, {-2, 2, 0, 0}, {0, 0, 2, -2}, {0, 0, -2, 2}})), WeylVectorError);
}

TEST(Denominator, FiniteTypes) {
  const DenominatorReport a1 = denominator_check(kA1, 10);
  EXPECT_TRUE(a1.equal);
  EXPECT_EQ(a1.lhs, GroupRingElement::one(1) - GroupRingElement::monomial(V({1})));
  EXPECT_EQ(a1.weyl_terms, 2u);
  const DenominatorReport a2 = denominator_check(kA2, 10);
  EXPECT_TRUE(a2.equal);
  EXPECT_EQ(a2.weyl_terms, 6u);
  EXPECT_EQ(a2.factors, 3u);
  const DenominatorReport b2 = denominator_check(kB2, 10);
  EXPECT_TRUE(b2.equal);
  EXPECT_EQ(b2.weyl_terms, 8u);
  EXPECT_EQ(b2.factors, 4u);
  EXPECT_FALSE(b2.first_discrepancy.has_value());
}

TEST(Denominator, FiniteSidesMatchBruteForceExpansion) {
  // (1-x)(1-y)(1-xy) expanded by hand.
  GroupRingElement want;
  for (const auto& [v, c] : std::vector<std::pair<Vec, long>>{
           {V({0, 0}), 1}, {V({1, 0}), -1}, {V({0, 1}), -1}, {V({2, 1}), 1}, {V({1, 2}), 1}, {V({2, 2}), -1}}) {
    want.add(v, Rational(c));
  }
  EXPECT_EQ(denominator_check(kA2, 10).lhs, want);
}

TEST(Denominator, AffineA1) {
  const DenominatorReport r = denominator_check(kAffA1, 12);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.type, "affine");
  EXPECT_GT(r.weyl_terms, 2u);
  EXPECT_THROW(denominator_check(Gcm::from_ints({{2, -3}, {-3, 2}}), 6), NotImplementedError);
  EXPECT_THROW(denominator_check(Gcm::from_ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), 6), NotImplementedError);
}

TEST(Denominator, AffineSpecialisationsMatchQSeriesOracles) {
  const int T = 12;
  const DenominatorReport r = denominator_check(kAffA1, T);
  // Both simple roots to q: Gauss's sum of (-1)^k q^{k^2}.
  QSeries gauss(0, T);
  for (int k = -4; k <= 4; ++k) {
    if (k * k <= T) gauss.add_to(k * k, Rational(k % 2 == 0 ? 1 : -1));
  }
  EXPECT_EQ(specialize(r.lhs, {1, 1}, T), gauss);
  EXPECT_EQ(specialize(r.rhs, {1, 1}, T), gauss);
  // alpha_0 -> q, alpha_1 -> q^2: Euler's pentagonal theorem.
  QSeries euler(0, T);
  for (int k = -4; k <= 4; ++k) {
    const int d = k * (3 * k - 1) / 2;
    if (d <= T) euler.add_to(d, Rational(k % 2 == 0 ? 1 : -1));
  }
  ExponentMap ones;
  for (int n = 1; n <= T; ++n) ones.emplace(n, 1);
  EXPECT_EQ(euler, power_product(ones, T));
  EXPECT_EQ(specialize(r.lhs, {1, 2}, T), euler);
}

TEST(Character, TrivialAndSmallModules) {
  for (const Gcm* g : {&kA1, &kA2, &kB2}) {
    const GroupRingElement chi = character(*g, std::vector<long>(g->rank(), 0), Rational(100));
    EXPECT_EQ(chi, GroupRingElement::one(g->rank()));
  }
  const GroupRingElement spin = character(kA1, {1}, Rational(100));
  EXPECT_EQ(spin.size(), 2u);
  EXPECT_EQ(spin.coefficient_sum(), 2);
  EXPECT_EQ(character(kA2, {1, 1}, Rational(100)).coefficient_sum(), 8);
  EXPECT_EQ(character(kA2, {1, 0}, Rational(100)).coefficient_sum(), 3);
  const GroupRingElement adj = character(kA2, {1, 1}, Rational(100));
  EXPECT_EQ(adj.coefficient(V({0, 0})), 2);
}

TEST(Character, LowestWeightConvention) {
  // Lowest weight -omega for A1: weights -alpha/2 and +alpha/2.
  const GroupRingElement spin = character(kA1, {1}, Rational(100));
  EXPECT_EQ(spin.coefficient(Vec{Rational(-1, 2)}), 1);
  EXPECT_EQ(spin.coefficient(Vec{Rational(1, 2)}), 1);
}

TEST(Character, DimensionsAgreeWithFreudenthalAndWeylFormula) {
  for (const Gcm* g : {&kA1, &kA2, &kB2}) {
    const auto roots = as_int_set(finite_positive_roots(*g));
    for (const auto& labels : labels_up_to(g->rank(), 4)) {
      const Integer dim = to_integer(character(*g, labels, Rational(1000)).coefficient_sum());
      EXPECT_EQ(dim, freudenthal_dimension(*g, labels));
      EXPECT_EQ(Rational(dim), oracle::weyl_dimension(g->matrix(), labels, roots));
    }
  }
}

TEST(Freudenthal, Examples) {
  EXPECT_EQ(freudenthal_dimension(kA1, {1}), 2);
  EXPECT_EQ(freudenthal_dimension(kA2, {1, 1}), 8);
  EXPECT_EQ(freudenthal_dimension(kA2, {1, 0}), 3);
  EXPECT_EQ(freudenthal_dimension(kB2, {0, 1}), 4);
  EXPECT_EQ(freudenthal_dimension(kB2, {1, 0}), 5);
  EXPECT_THROW(freudenthal_dimension(kAffA1, {1, 0}), KmDomainError);
}

TEST(Epsilon, Examples) {
  const Gcm one = Gcm::from_ints({{0}}, GcmKind::generalized);
  const Gcm two = Gcm::from_ints({{0, 0}, {0, 0}}, GcmKind::generalized);
  EXPECT_EQ(epsilon_series(one, {}, V({0}), Rational(10)), GroupRingElement::one(1));
  EXPECT_EQ(epsilon_series(one, {{V({1}), 0}}, V({0}), Rational(10)), GroupRingElement::one(1));
  EXPECT_EQ(epsilon_series(one, {{V({1}), 1}}, V({0}), Rational(10)),
            GroupRingElement::one(1) - GroupRingElement::monomial(V({1})));
  const GroupRingElement both = epsilon_series(two, {{V({1, 0}), 1}, {V({0, 1}), 1}}, V({0, 0}), Rational(10));
  const GroupRingElement want = GroupRingElement::one(2) - GroupRingElement::monomial(V({1, 0})) -
                                GroupRingElement::monomial(V({0, 1})) + GroupRingElement::monomial(V({1, 1}));
  EXPECT_EQ(both, want);
}

TEST(Epsilon, OrthogonalityToLambdaAndPositiveNormRejected) {
  const Gcm g = Gcm::from_ints({{0, -1}, {-1, 2}}, GcmKind::generalized);
  // lambda = alpha_2 pairs -1 with the imaginary root, so only mu = 0 survives.
  EXPECT_EQ(epsilon_series(g, {{V({1, 0}), 1}}, V({0, 1}), Rational(10)), GroupRingElement::one(2));
  EXPECT_THROW(epsilon_series(g, {{V({0, 1}), 1}}, V({0, 0}), Rational(10)), KmDomainError);
  const Gcm neg = Gcm::from_ints({{-2}}, GcmKind::generalized);
  // A negative-norm root is not orthogonal to itself: used at most once.
  EXPECT_EQ(epsilon_series(neg, {{V({1}), 3}}, V({0}), Rational(10)),
            GroupRingElement::one(1) - GroupRingElement::monomial(V({1}), 3));
}

TEST(Epsilon, SlotReadingVersusDistinctRootReading) {
  const Gcm one = Gcm::from_ints({{0}}, GcmKind::generalized);
  const GroupRingElement slots = epsilon_series(one, {{V({1}), 2}}, V({0}), Rational(10));
  const GroupRingElement square = positive_root_product({{V({1}), 2}}, 1, Rational(10));
  EXPECT_EQ(slots, square);
  // Counting the root once regardless of multiplicity gives 1 - e^beta instead.
  const GroupRingElement distinct = GroupRingElement::one(1) - GroupRingElement::monomial(V({1}));
  EXPECT_NE(distinct, square);
}

TEST(ToyGkm, ImaginarySimpleRoot) {
  const Gcm one = Gcm::from_ints({{0}}, GcmKind::generalized);
  EXPECT_TRUE(gkm_denominator_check_toy({one, {1}, {{V({1}), 1}}}, 6).equal);
  const DenominatorReport two = gkm_denominator_check_toy({one, {2}, {{V({1}), 2}}}, 6);
  EXPECT_TRUE(two.equal);
  EXPECT_EQ(two.lhs.coefficient(V({1})), -2);
  EXPECT_EQ(two.lhs.coefficient(V({2})), 1);
}

TEST(ToyGkm, WrongMultiplicityIsDetected) {
  const Gcm one = Gcm::from_ints({{0}}, GcmKind::generalized);
  const DenominatorReport r = gkm_denominator_check_toy({one, {2}, {{V({1}), 1}}}, 6);
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.first_discrepancy.has_value());
  EXPECT_EQ(r.first_discrepancy->exponent, V({1}));
  EXPECT_EQ(r.first_discrepancy->lhs, -2);
  EXPECT_EQ(r.first_discrepancy->rhs, -1);
}

TEST(ToyGkm, ClassicA1ReproducesDenominatorCheck) {
  const DenominatorReport toy = gkm_denominator_check_toy({kA1, {1}, {{V({1}), 1}}}, 8);
  const DenominatorReport direct = denominator_check(kA1, 8);
  EXPECT_TRUE(toy.equal);
  EXPECT_EQ(toy.lhs, direct.lhs);
  EXPECT_EQ(toy.rhs, direct.rhs);
}

TEST(GroupRing, ArithmeticAndTruncation) {
  const GroupRingElement x = GroupRingElement::monomial(V({1, 0}));
  const GroupRingElement y = GroupRingElement::monomial(V({0, 1}), 2);
  const GroupRingElement p = (GroupRingElement::one(2) + x) * (GroupRingElement::one(2) - y);
  EXPECT_EQ(p.coefficient(V({1, 1})), -2);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.truncated(Rational(1)).size(), 3u);
  EXPECT_TRUE((x - x).empty());
  EXPECT_EQ(one_minus_power(V({1, 0}), -1, Rational(3)).size(), 4u);
  EXPECT_THROW(one_minus_power(V({0, 0}), 1, Rational(3)), KmDomainError);
}
