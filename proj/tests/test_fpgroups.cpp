#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rimcert/fpgroups.hpp"
#include "rimcert/lcurve.hpp"

using rimcert::Integer;
using rimcert::Presentation;
using rimcert::Verdict;
using rimcert::Word;

namespace {

Word a(std::int64_t k) { return Word::power(0, k); }
Word b(std::int64_t k) { return Word::power(1, k); }

Presentation quartic() { return rimcert::parse_presentation("a,b | a^4 b^4, a^4, b^4, a^2 b^2, b^2 a^2"); }

Word random_word(std::mt19937_64& rng, std::size_t gens, int len) {
  std::uniform_int_distribution<std::uint32_t> g(0, static_cast<std::uint32_t>(gens - 1));
  std::uniform_int_distribution<int> e(-3, 3);
  Word w;
  for (int i = 0; i < len; ++i) w = w * Word::power(g(rng), e(rng));
  return w;
}

std::vector<std::vector<std::int64_t>> exponent_matrix(const Presentation& p) {
  std::vector<std::vector<std::int64_t>> m;
  for (const auto& r : p.relators) m.push_back(r.exponent_sums(p.n_generators));
  return m;
}

}  // namespace

TEST(FpGroups, WordsAreFreelyReduced) {
  EXPECT_TRUE((a(3) * a(-3)).empty());
  EXPECT_EQ(to_string(a(2) * b(1) * b(-1) * a(3)), "a^5");
  EXPECT_EQ(to_string(a(1) * b(-2)), "a b^-2");
  EXPECT_EQ(to_string(Word{}), "1");
  EXPECT_EQ((a(2) * b(3)).inverse(), b(-3) * a(-2));
  EXPECT_EQ((a(2) * b(-3) * a(1)).exponent_sums(2), (std::vector<std::int64_t>{3, -3}));
}

TEST(FpGroups, ParsePresentation) {
  const auto p = rimcert::parse_presentation("a^5 b^5, a^3 b^2, b^3 a^2");
  EXPECT_EQ(p.n_generators, 2u);
  EXPECT_EQ(p.relators.size(), 3u);
  EXPECT_EQ(to_string(p), "<a,b | a^5 b^5, a^3 b^2, b^3 a^2>");
  EXPECT_EQ(rimcert::parse_presentation("a,b | a b -a -b").relators.front(), a(1) * b(1) * a(-1) * b(-1));
  EXPECT_EQ(rimcert::parse_presentation("a,b |").relators.size(), 0u);
  EXPECT_EQ(rimcert::parse_presentation("a,b |").n_generators, 2u);
  EXPECT_THROW(rimcert::parse_presentation("a | b^2"), rimcert::ParseError);
  EXPECT_THROW(rimcert::parse_presentation("a^"), rimcert::ParseError);
  EXPECT_THROW(rimcert::parse_presentation("a^2,,b"), rimcert::ParseError);
  EXPECT_THROW(rimcert::parse_presentation("A^2"), rimcert::ParseError);
}

TEST(FpGroups, PresentationJsonRoundTrip) {
  const auto p = quartic();
  const auto back = rimcert::presentation_from_json(nlohmann::json::parse(to_json(p).dump()));
  EXPECT_EQ(back.n_generators, p.n_generators);
  EXPECT_EQ(back.relators, p.relators);
}

TEST(FpGroups, AbelianizationExamples) {
  EXPECT_EQ(rimcert::abelianization(Presentation(2, {a(5) * b(5)})), (std::vector<Integer>{5, 0}));
  EXPECT_EQ(rimcert::abelianization(Presentation(1, {})), (std::vector<Integer>{0}));
  EXPECT_EQ(rimcert::abelianization(Presentation(2, {a(1) * b(1) * a(-1) * b(-1)})), (std::vector<Integer>{0, 0}));
  EXPECT_EQ(rimcert::abelianization(quartic()), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(rimcert::abelianization(Presentation(1, {a(1)})), (std::vector<Integer>{}));
}

TEST(FpGroups, AbelianizationMatchesMinorsOracle) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> rels;
    for (int k = 0; k < 3; ++k) rels.push_back(random_word(rng, 3, 4));
    const Presentation p(3, rels);
    std::vector<Integer> expected;
    std::size_t nonzero = 0;
    for (auto d : oracle::smith_by_minors(exponent_matrix(p))) {
      if (d == 0) continue;
      ++nonzero;
      if (d != 1) expected.emplace_back(d);
    }
    expected.insert(expected.end(), 3 - nonzero, Integer(0));
    EXPECT_EQ(rimcert::abelianization(p), expected);
  }
}

TEST(FpGroups, AbelianizationInvariantUnderRelatorMoves) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> rels;
    for (int k = 0; k < 2; ++k) rels.push_back(random_word(rng, 2, 5));
    const auto base = rimcert::abelianization(Presentation(2, rels));
    auto moved = rels;
    moved[0] = moved[0].inverse();
    const auto g = random_word(rng, 2, 3);
    moved[1] = g * moved[1] * g.inverse();
    EXPECT_EQ(rimcert::abelianization(Presentation(2, moved)), base);
  }
}

TEST(FpGroups, CosetEnumerationExamples) {
  const auto cyclic5 = rimcert::coset_enumeration(Presentation(1, {a(5)}));
  ASSERT_TRUE(cyclic5.finite());
  EXPECT_EQ(cyclic5.order, 5u);

  const auto nest5 = rimcert::coset_enumeration(rimcert::nest_presentation(rimcert::NestConfig::maximal(5)));
  ASSERT_TRUE(nest5.finite());
  EXPECT_EQ(nest5.order, 5u);

  const auto free2 = rimcert::coset_enumeration(Presentation(2, {}), 1000);
  EXPECT_FALSE(free2.finite());
  EXPECT_LE(free2.cosets_defined, 1000u);

  EXPECT_THROW(rimcert::coset_enumeration(Presentation(1, {a(5)}), 0), rimcert::PreconditionViolation);
}

TEST(FpGroups, CosetEnumerationKnownOrders) {
  // Q8, S3, D4, Z/2 x Z/3, trivial
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"a,b | a^4, a^2 -b^2, -b a b a", 8},
      {"a,b | a^3, b^2, a b a b", 6},
      {"a,b | a^4, b^2, a b a b", 8},
      {"a,b | a^2, b^3, a b -a -b", 6},
      {"a,b | a, b", 1},
      {"a,b | a^2, b^2, a b a b a b", 6},
      {"a,b | a^3, b^3, a b a b", 12},   // A4
      {"a,b | a^2, b^3, a b a b a b a b", 24},  // S4
      {"a,b | a^2, b^3, a b a b a b a b a b", 60},  // A5
  };
  for (const auto& [text, order] : cases) {
    const auto p = rimcert::parse_presentation(text);
    const auto r = rimcert::coset_enumeration(p);
    ASSERT_TRUE(r.finite()) << text;
    EXPECT_EQ(r.order, order) << text;
    // |H1| divides |G|
    Integer torsion = 1;
    for (const auto& x : rimcert::abelianization(p)) {
      ASSERT_NE(x, 0);
      torsion *= x;
    }
    EXPECT_EQ(Integer(order) % torsion, 0) << text;
  }
}

TEST(FpGroups, CosetEnumerationIsDeterministic) {
  const auto p = rimcert::nest_presentation(rimcert::NestConfig::maximal(8));
  const auto r1 = rimcert::coset_enumeration(p);
  const auto r2 = rimcert::coset_enumeration(p);
  EXPECT_EQ(r1.order, r2.order);
  EXPECT_EQ(r1.table, r2.table);
  EXPECT_EQ(r1.cosets_defined, r2.cosets_defined);
}

TEST(FpGroups, CosetLimitIsRespected) {
  // Z/50 needs 50 cosets
  const Presentation p(1, {a(50)});
  EXPECT_FALSE(rimcert::coset_enumeration(p, 10).finite());
  EXPECT_TRUE(rimcert::coset_enumeration(p, 50).finite());
}

TEST(FpGroups, IsCyclicOfOrder) {
  using rimcert::NestConfig;
  EXPECT_EQ(rimcert::is_cyclic_of_order(rimcert::nest_presentation(NestConfig{5, 1, {0, 2}}), 5).verdict,
            Verdict::Pass);
  EXPECT_EQ(rimcert::is_cyclic_of_order(rimcert::nest_presentation(NestConfig{6, 1, {0, 2, 3}}), 6).verdict,
            Verdict::Pass);
  EXPECT_EQ(rimcert::is_cyclic_of_order(quartic(), 4).verdict, Verdict::Fail);
  EXPECT_EQ(rimcert::is_cyclic_of_order(Presentation(1, {a(5)}), 4).verdict, Verdict::Fail);
  EXPECT_EQ(rimcert::is_cyclic_of_order(Presentation(1, {a(1)}), 1).verdict, Verdict::Pass);
  // Q8 has order 8 but abelianization [2, 2]
  EXPECT_EQ(rimcert::is_cyclic_of_order(rimcert::parse_presentation("a,b | a^4, a^2 -b^2, -b a b a"), 8).verdict,
            Verdict::Fail);
  // trefoil group: H1 = Z, refuted without finishing the enumeration
  EXPECT_EQ(rimcert::is_cyclic_of_order(Presentation(2, {a(2) * b(-3)}), 1, 1000).verdict, Verdict::Fail);
}

TEST(FpGroups, InconclusiveWhenAbelianizationMatchesButEnumerationStops) {
  const auto cert = rimcert::is_cyclic_of_order(Presentation(1, {a(5)}), 5, 2);
  EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
}

TEST(FpGroups, FiniteGroupTables) {
  const auto q8 = rimcert::quaternion_group();
  EXPECT_EQ(q8.order(), 8u);
  EXPECT_FALSE(q8.is_abelian());
  const auto i = q8.element("i"), j = q8.element("j"), k = q8.element("k");
  EXPECT_EQ(q8.multiply(i, j), k);
  EXPECT_EQ(q8.multiply(j, i), q8.element("-k"));
  EXPECT_EQ(q8.multiply(i, i), q8.element("-1"));
  EXPECT_EQ(q8.subgroup_order({i}), 4u);
  EXPECT_EQ(q8.subgroup_order({i, j}), 8u);
  for (std::uint32_t n = 3; n <= 6; ++n) {
    const auto dn = rimcert::dihedral_group(n);
    EXPECT_EQ(dn.order(), 2 * n);
    EXPECT_FALSE(dn.is_abelian());
    EXPECT_EQ(dn.subgroup_order(dn.generators()), 2 * n);
  }
  const auto s3 = rimcert::symmetric_group_3();
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_FALSE(s3.is_abelian());
  // associativity of every built-in table
  for (const auto& g : rimcert::builtin_nonabelian_targets())
    for (std::uint32_t x = 0; x < g.order(); ++x)
      for (std::uint32_t y = 0; y < g.order(); ++y)
        for (std::uint32_t z = 0; z < g.order(); ++z)
          ASSERT_EQ(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z))) << g.name();
}

TEST(FpGroups, QuarticMapsOntoQ8) {
  const auto q8 = rimcert::quaternion_group();
  const auto h = rimcert::find_finite_quotient(quartic(), q8);
  ASSERT_TRUE(h);
  EXPECT_TRUE(h->surjective);
  EXPECT_EQ(h->image_names, (std::vector<std::string>{"i", "j"}));
  // independent check of every relator in the target
  for (const auto& r : quartic().relators) EXPECT_EQ(q8.evaluate(r, h->images), q8.identity());
}

TEST(FpGroups, NoQuotientWhenNoneExists) {
  EXPECT_FALSE(rimcert::find_finite_quotient(Presentation(1, {a(5)}), rimcert::quaternion_group()));
  for (std::int64_t d = 5; d <= 8; ++d) {
    const auto p = rimcert::nest_presentation(rimcert::NestConfig::maximal(d));
    for (const auto& t : rimcert::builtin_nonabelian_targets()) EXPECT_FALSE(rimcert::find_finite_quotient(p, t));
  }
}

TEST(FpGroups, TrivialTargetGetsTrivialMap) {
  const auto trivial = rimcert::FiniteGroupTable("1", {{0}}, {"1"}, {});
  const auto h = rimcert::find_finite_quotient(quartic(), trivial);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->images, (std::vector<std::uint32_t>{0, 0}));
  // the trivial map is not a surjection onto Q8
  EXPECT_LT(rimcert::quaternion_group().subgroup_order({0, 0}), 8u);
}
