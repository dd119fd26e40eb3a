#include "slitlogic/formula.hpp"

#include <gtest/gtest.h>

#include <random>

#include "slitlogic/constructs.hpp"
#include "slitlogic/error.hpp"
#include "test_support.hpp"

namespace slitlogic {
namespace {

Formula v(const char* name) { return Formula::variable(name); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(std::vector<Formula> c) { return Formula::conjunction(std::move(c)); }
Formula disj(std::vector<Formula> c) { return Formula::disjunction(std::move(c)); }
Formula exor(std::vector<Formula> c) { return Formula::exclusive_or(std::move(c)); }

constexpr const char* kExactlyOneOfTwo = "(A | B) & (!A | !B)";

TEST(ParseTest, Examples) {
  EXPECT_EQ(parse(kExactlyOneOfTwo),
            conj({disj({v("A"), v("B")}), disj({neg(v("A")), neg(v("B"))})}));
  const Formula chain = parse("A ^ B ^ C");
  EXPECT_EQ(chain, exor({v("A"), v("B"), v("C")}));
  EXPECT_EQ(chain.children().size(), 3u);
  EXPECT_EQ(parse("1"), Formula::constant(true));
  EXPECT_EQ(parse("0"), Formula::constant(false));
}

TEST(ParseTest, PrecedenceAndGrouping) {
  EXPECT_EQ(parse("A | B ^ C & !D"), disj({v("A"), exor({v("B"), conj({v("C"), neg(v("D"))})})}));
  EXPECT_EQ(parse("(A ^ B) ^ C"), exor({exor({v("A"), v("B")}), v("C")}));
  EXPECT_EQ(parse("A ^ (B ^ C)"), exor({v("A"), exor({v("B"), v("C")})}));
  EXPECT_EQ(parse("!!A"), neg(neg(v("A"))));
  EXPECT_EQ(parse("!(A & B)"), neg(conj({v("A"), v("B")})));
  EXPECT_EQ(parse("  x_1 &\n\tY2  "), conj({v("x_1"), v("Y2")}));
  EXPECT_EQ(parse("((A))"), v("A"));
}

TEST(ParseTest, UnicodeAliases) {
  EXPECT_EQ(parse("(A ∨ B) ∧ (¬A ∨ ¬B)"), parse(kExactlyOneOfTwo));
  EXPECT_EQ(parse("a ⊕ b ⊕ c"), parse("a ^ b ^ c"));
}

TEST(ParseTest, ErrorsCarryPositions) {
  auto position = [](const char* text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  EXPECT_EQ(position(""), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(position("   "), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(position("A & )"), (std::pair<std::size_t, std::size_t>{1, 5}));
  EXPECT_EQ(position("A &\n  )"), (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_EQ(position("(A | B"), (std::pair<std::size_t, std::size_t>{1, 7}));
  EXPECT_EQ(position("A B"), (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_EQ(position("¬¬ 2"), (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(position("A $ B"), (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_EQ(position("10"), (std::pair<std::size_t, std::size_t>{1, 2}));
}

TEST(ParseTest, ErrorMessagesNameTheExpectedToken) {
  try {
    parse("A & )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "1:5: expected a variable, constant, '!' or '(', found ')'");
  }
  try {
    parse("(A");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "1:3: expected ')', found end of input");
  }
}

TEST(ParseTest, DeepNestingIsRejectedNotOverflowed) {
  std::string deep(5000, '(');
  deep += "A" + std::string(5000, ')');
  EXPECT_THROW(parse(deep), ParseError);
  std::string ok(500, '!');
  EXPECT_NO_THROW(parse(ok + "A"));
}

TEST(FormulaTest, ConstructorsEnforceInvariants) {
  EXPECT_THROW(Formula::variable("1a"), ArgumentError);
  EXPECT_THROW(Formula::variable(""), ArgumentError);
  EXPECT_THROW(Formula::variable("a-b"), ArgumentError);
  EXPECT_THROW(Formula::conjunction({v("A")}), ArgumentError);
  EXPECT_THROW(Formula::exclusive_or({}), ArgumentError);
}

TEST(LoweringTest, Examples) {
  const std::vector<std::string> ab = {"A", "B"};
  EXPECT_EQ(to_string(ast_to_poly(parse(kExactlyOneOfTwo), ab)), "x1 + x2 - 2*x1x2");
  EXPECT_EQ(to_string(ast_to_poly(parse("!A"))), "1 - x1");
  const std::vector<std::string> abc = {"A", "B", "C"};
  EXPECT_EQ(ast_to_poly(parse("A ^ B ^ C"), abc), xor_chain(3));
  EXPECT_EQ(to_string(ast_to_poly(parse("A | B"))), "x1 + x2 - x1x2");
  EXPECT_EQ(to_string(ast_to_poly(parse("A & 0"))), "0");
}

TEST(LoweringTest, VariableOrder) {
  EXPECT_EQ(variables(parse("C & (A | C) ^ B")), (std::vector<std::string>{"C", "A", "B"}));
  const std::vector<std::string> ab = {"A", "B"};
  EXPECT_EQ(to_string(ast_to_poly(parse("B & !A"), ab)), "x2 - x1x2");
  EXPECT_EQ(to_string(ast_to_poly(parse("B & !A"))), "x1 - x1x2");
  const std::vector<std::string> extra = {"A", "B", "Z"};
  EXPECT_EQ(ast_to_poly(parse("A")), MultilinearPoly::variable(1, 1));
  EXPECT_EQ(ast_to_poly(parse("A"), extra).nvars(), 3u);
}

TEST(LoweringTest, Errors) {
  const std::vector<std::string> a = {"A"};
  EXPECT_THROW(ast_to_poly(parse("A & B"), a), ArgumentError);
  const std::vector<std::string> dup = {"A", "B", "A"};
  EXPECT_THROW(ast_to_poly(parse("A & B"), dup), ArgumentError);
}

TEST(EquivalenceTest, Examples) {
  const auto r1 = equivalence(parse(kExactlyOneOfTwo), parse("A ^ B"));
  EXPECT_TRUE(r1.equivalent);
  EXPECT_FALSE(r1.witness.has_value());
  EXPECT_EQ(r1.order, (std::vector<std::string>{"A", "B"}));

  const auto r2 = equivalence(parse("A | B"), parse("A ^ B"));
  EXPECT_FALSE(r2.equivalent);
  ASSERT_TRUE(r2.witness.has_value());
  EXPECT_EQ(*r2.witness, (std::vector<int>{1, 1}));

  EXPECT_TRUE(equivalence(parse("A ^ B ^ C"), parse("(A ^ B) ^ C")).equivalent);
  EXPECT_TRUE(equivalence(parse("A ^ B ^ C"), parse("C ^ (B ^ A)")).equivalent);
}

TEST(EquivalenceTest, WitnessActuallyDistinguishes) {
  std::mt19937_64 rng(testing::kSeed + 10);
  const auto pool = testing::variable_pool(5);
  int inequivalent = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = testing::random_formula(rng, pool, 3);
    const Formula g = testing::random_formula(rng, pool, 3);
    const auto r = equivalence(f, g);
    if (r.equivalent) continue;
    ++inequivalent;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < r.witness->size(); ++i) mask |= static_cast<std::uint32_t>((*r.witness)[i]) << i;
    ASSERT_NE(evaluate(f, r.order, mask), evaluate(g, r.order, mask));
  }
  EXPECT_GT(inequivalent, 100);
}

TEST(FormulaPropertyTest, LoweringIsSound) {
  std::mt19937_64 rng(testing::kSeed + 11);
  for (std::size_t nvars = 1; nvars <= 10; ++nvars) {
    const auto pool = testing::variable_pool(nvars);
    for (int trial = 0; trial < 30; ++trial) {
      const Formula f = testing::random_formula(rng, pool, 4);
      const auto p = ast_to_poly(f, pool);
      const TruthTable t = to_truth_table(p);
      ASSERT_TRUE(t.is_indicator()) << render(f);
      for (std::uint32_t m = 0; m < t.size(); ++m) {
        ASSERT_EQ(t[m], evaluate(f, pool, m) ? 1 : 0) << render(f);
      }
    }
  }
}

TEST(FormulaPropertyTest, LoweringIsSoundAboveTenVariables) {
  std::mt19937_64 rng(testing::kSeed + 12);
  const auto pool = testing::variable_pool(16);
  std::uniform_int_distribution<std::uint32_t> assignment(0, (1u << 16) - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Formula f = testing::random_formula(rng, pool, 5);
    const auto p = ast_to_poly(f, pool);
    for (int k = 0; k < 200; ++k) {
      const std::uint32_t m = assignment(rng);
      ASSERT_EQ(evaluate_at(p, m), evaluate(f, pool, m) ? 1 : 0);
    }
  }
}

TEST(FormulaPropertyTest, RenderRoundTrip) {
  std::mt19937_64 rng(testing::kSeed + 13);
  const auto pool = testing::variable_pool(6);
  for (int trial = 0; trial < 2000; ++trial) {
    const Formula f = testing::random_formula(rng, pool, 5);
    const std::string text = render(f);
    ASSERT_EQ(parse(text), f) << text;
  }
  EXPECT_EQ(render(parse("(A ^ B) ^ C")), "(A ^ B) ^ C");
  EXPECT_EQ(render(parse("A | B ^ C & !D")), "A | B ^ C & !D");
  EXPECT_EQ(render(parse("!(A | B) & 1")), "!(A | B) & 1");
}

}  // namespace
}  // namespace slitlogic
