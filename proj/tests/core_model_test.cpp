#include "support/instances.hpp"

#include <compat/conditional.hpp>
#include <compat/problem.hpp>
#include <compat/rational.hpp>

#include <gtest/gtest.h>

using namespace compat;
using compat::testing::Rng;

namespace {

Errc error_of(const ProblemSpec & spec)
{
    try {
        validate_problem(spec);
    }
    catch (const Error & e) {
        return e.code();
    }
    ADD_FAILURE() << "expected validation to fail";
    return Errc::Internal;
}

std::vector<Rational> q(std::initializer_list<const char *> items)
{
    std::vector<Rational> out;
    for (auto s : items)
        out.push_back(parse_rational(s));
    return out;
}

ConditionalArray arr(std::initializer_list<const char *> items) { return {q(items)}; }

} // namespace

TEST(Rational, ParsesFractionsAndIntegers)
{
    EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(parse_rational("+7"), Rational(7));
    EXPECT_EQ(parse_rational("0/5"), Rational(0));
    EXPECT_EQ(parse_rational("123456789012345678901234567890/2"), Rational(Integer("61728394506172839450617283945")));
}

TEST(Rational, RejectsInexactOrMalformedText)
{
    for (const char * bad : {"0.5", "1e3", "", "/", "1/", "/2", "1/0", "1/-2", "abc", "1 /2", "--1"}) {
        try {
            parse_rational(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        }
        catch (const Error & e) {
            EXPECT_EQ(e.code(), Errc::ParseError) << bad;
        }
    }
}

TEST(Rational, FormatParseRoundTrip)
{
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        Rational x(compat::testing::uniform(rng, -100000, 100000), compat::testing::uniform(rng, 1, 100000));
        x *= x * x;
        EXPECT_EQ(parse_rational(format_rational(x)), x);
    }
    EXPECT_EQ(format_rational(Rational(4, 8)), "1/2");
    EXPECT_EQ(format_rational(Rational(-3)), "-3");
}

TEST(ValidateProblem, Example3Sizes)
{
    auto p = validate_problem({{2, 2, 2}, {{3}, {2}, {1}}});
    EXPECT_EQ(p.cell_count(), 8u);
    EXPECT_EQ(p.slice_counts(), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_EQ(p.free_set(0), (std::vector<int>{1, 2}));
}

TEST(ValidateProblem, Example4Sizes)
{
    auto p = validate_problem({{2, 2, 2}, {{1, 2}, {1, 3}, {2, 3}}});
    EXPECT_EQ(p.cell_count(), 8u);
    EXPECT_EQ(p.slice_counts(), (std::vector<std::size_t>{4, 4, 4}));
}

TEST(ValidateProblem, Errors)
{
    EXPECT_EQ(error_of({{2, 2}, {{1}, {1, 2}}}), Errc::ContainmentViolation);
    EXPECT_EQ(error_of({{2, 2}, {{1}, {1}}}), Errc::DuplicateConditioningSet);
    EXPECT_EQ(error_of({{2, 2}, {{1, 2}}}), Errc::EmptyLeftSide);
    EXPECT_EQ(error_of({{2, 2}, {{}, {1}}}), Errc::ContainmentViolation);
    EXPECT_EQ(error_of({{2, 2}, {{2, 1}}}), Errc::InvalidSpec);
    EXPECT_EQ(error_of({{2, 2}, {{3}}}), Errc::InvalidSpec);
    EXPECT_EQ(error_of({{2, 0}, {{1}}}), Errc::InvalidSpec);
    EXPECT_EQ(error_of({{}, {{}}}), Errc::InvalidSpec);
    EXPECT_EQ(error_of({{2, 2}, {}}), Errc::InvalidSpec);

    ProblemSpec big{{10, 10, 10}, {{1}, {2}, {3}}};
    big.limits.max_columns = 2999;
    EXPECT_EQ(error_of(big), Errc::SizeCapExceeded);
    big.limits.max_columns = 3000;
    EXPECT_NO_THROW(validate_problem(big));
}

TEST(ValidateProblem, ContainmentDiagnosticNamesBothSets)
{
    try {
        validate_problem({{2, 2}, {{1}, {1, 2}}});
        FAIL();
    }
    catch (const Error & e) {
        std::string what = e.what();
        EXPECT_NE(what.find("{1}"), std::string::npos);
        EXPECT_NE(what.find("{1,2}"), std::string::npos);
    }
}

TEST(ValidateProblem, ConstantVariablesAndEmptyConditioningSet)
{
    auto p = validate_problem({{1, 3}, {{1}}});
    EXPECT_EQ(p.cell_count(), 3u);
    EXPECT_EQ(p.slice_count(0), 1u);

    auto joint_only = validate_problem({{2, 2}, {{}}});
    EXPECT_EQ(joint_only.slice_count(0), 1u);
    EXPECT_EQ(joint_only.slice_of(0, 3), 0u);
}

TEST(ValidateProblem, CellIndexingIsLexicographic)
{
    auto p = validate_problem({{2, 3, 2}, {{1}, {3}}});
    for (std::size_t c = 0; c < p.cell_count(); ++c)
        EXPECT_EQ(p.cell_index(p.cell(c)), c);
    EXPECT_EQ(p.cell(0), (Cell{1, 1, 1}));
    EXPECT_EQ(p.cell(1), (Cell{1, 1, 2}));
    EXPECT_EQ(p.cell(2), (Cell{1, 2, 1}));
    EXPECT_EQ(p.cell(11), (Cell{2, 3, 2}));
    EXPECT_EQ(p.slice_of(1, p.cell_index({2, 3, 2})), 1u);
    EXPECT_EQ(p.slice_tuple(1, 1), (std::vector<int>{2}));
}

TEST(Conditions, Example2Passes)
{
    auto p = validate_problem({{3, 3}, {{2}, {1}}});
    std::vector<ConditionalArray> arrays{
        arr({"1/2", "1/2", "0", "0", "1/2", "1/2", "1/2", "0", "1/2"}),
        arr({"1/3", "2/3", "0", "0", "1/3", "2/3", "1/3", "0", "2/3"}),
    };
    auto report = check_conditions_123(arrays, p);
    EXPECT_TRUE(report.nonnegative);
    EXPECT_TRUE(report.same_support);
    EXPECT_TRUE(report.margins_one);
    EXPECT_FALSE(report.first_violation);
}

TEST(Conditions, NegativeEntry)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    std::vector<ConditionalArray> arrays{arr({"-1/2", "1/2", "3/2", "1/2"}), arr({"1/2", "1/2", "1/2", "1/2"})};
    auto report = check_conditions_123(arrays, p);
    EXPECT_FALSE(report.nonnegative);
    ASSERT_TRUE(report.first_violation);
    EXPECT_EQ(report.first_violation->condition, 1);
    EXPECT_EQ(report.first_violation->conditional, 0u);
    EXPECT_EQ(p.cell(*report.first_violation->cell), (Cell{1, 1}));
}

TEST(Conditions, ZeroPatternAndMarginFailures)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    std::vector<ConditionalArray> arrays{arr({"1", "0", "0", "1"}), arr({"1", "1/2", "0", "1/2"})};
    auto report = check_conditions_123(arrays, p);
    EXPECT_TRUE(report.nonnegative);
    EXPECT_FALSE(report.same_support);
    EXPECT_FALSE(report.margins_one);
    ASSERT_TRUE(report.first_violation);
    EXPECT_EQ(report.first_violation->condition, 2);
    EXPECT_EQ(p.cell(*report.first_violation->cell), (Cell{1, 2}));
}

TEST(Conditions, MarginViolationReportsTuple)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    std::vector<ConditionalArray> arrays{arr({"1/2", "1/2", "1/2", "1/2"}), arr({"1/2", "1/2", "1/2", "1/3"})};
    auto report = check_conditions_123(arrays, p);
    ASSERT_TRUE(report.first_violation);
    EXPECT_EQ(report.first_violation->condition, 3);
    EXPECT_EQ(report.first_violation->conditional, 1u);
    EXPECT_EQ(p.slice_tuple(1, *report.first_violation->slice), (std::vector<int>{2}));
    EXPECT_EQ(report.first_violation->value, Rational(5, 6));
}

TEST(Conditions, ShapeMismatch)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    std::vector<ConditionalArray> one{arr({"1", "0", "0", "1"})};
    EXPECT_THROW(check_conditions_123(one, p), Error);
    std::vector<ConditionalArray> short_array{arr({"1", "0", "0"}), arr({"1", "0", "0", "1"})};
    EXPECT_THROW(check_conditions_123(short_array, p), Error);
}

TEST(ConditionalsFromJoint, UniformTrivariate)
{
    auto p = validate_problem({{2, 2, 2}, {{3}, {2}, {1}}});
    JointDistribution uniform(std::vector<Rational>(8, Rational(1, 8)));
    auto out = conditionals_from_joint(uniform, p);
    EXPECT_FALSE(out.degenerate);
    for (const auto & a : out.arrays)
        for (const auto & x : a.entries)
            EXPECT_EQ(x, Rational(1, 4));
}

TEST(ConditionalsFromJoint, BivariateByHand)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    JointDistribution joint(q({"1/8", "1/8", "1/8", "5/8"}));
    auto out = conditionals_from_joint(joint, p);
    // C conditions on X2 (columns), D on X1 (rows)
    EXPECT_EQ(out.arrays[0].entries, q({"1/2", "1/6", "1/2", "5/6"}));
    EXPECT_EQ(out.arrays[1].entries, q({"1/2", "1/2", "1/6", "5/6"}));

    // re-multiply by the margins the arrays were divided by
    std::vector<Rational> col{Rational(1, 4), Rational(3, 4)}, row{Rational(1, 4), Rational(3, 4)};
    for (std::size_t c = 0; c < 4; ++c) {
        EXPECT_EQ(out.arrays[0].entries[c] * col[c % 2], joint[c]);
        EXPECT_EQ(out.arrays[1].entries[c] * row[c / 2], joint[c]);
    }
}

TEST(ConditionalsFromJoint, ZeroSliceIsDegenerate)
{
    auto p = validate_problem({{2, 2}, {{2}}});
    JointDistribution joint(q({"1/2", "0", "1/2", "0"}));
    auto out = conditionals_from_joint(joint, p);
    EXPECT_TRUE(out.degenerate);
    EXPECT_EQ(out.arrays[0].entries, q({"1/2", "0", "1/2", "0"}));
    EXPECT_FALSE(check_conditions_123(out.arrays, p).margins_one);
}

TEST(JointDistribution, RejectsInvalidEntries)
{
    EXPECT_THROW(JointDistribution(q({"1/2", "1/3"})), Error);
    EXPECT_THROW(JointDistribution(q({"3/2", "-1/2"})), Error);
}

TEST(CoreModelProperty, PositiveJointsSatisfyConditions)
{
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        auto p = compat::testing::random_problem(rng);
        auto joint = compat::testing::random_joint(p, rng);
        auto out = conditionals_from_joint(joint, p);
        EXPECT_FALSE(out.degenerate);
        EXPECT_TRUE(check_conditions_123(out.arrays, p).passed());
    }
}

TEST(CoreModelProperty, ConditionalsAreScaleFreePerSlice)
{
    Rng rng(12);
    for (int k = 0; k < 100; ++k) {
        auto p = compat::testing::random_problem(rng);
        auto joint = compat::testing::random_joint(p, rng);
        auto base = conditionals_from_joint(joint, p);

        std::size_t i = static_cast<std::size_t>(compat::testing::uniform(rng, 0, int(p.conditional_count()) - 1));
        std::size_t slice = static_cast<std::size_t>(compat::testing::uniform(rng, 0, int(p.slice_count(i)) - 1));
        Rational lambda(compat::testing::uniform(rng, 1, 9), compat::testing::uniform(rng, 1, 9));
        std::vector<Rational> scaled = joint.entries();
        Rational total = 0;
        for (std::size_t c = 0; c < scaled.size(); ++c) {
            if (p.slice_of(i, c) == slice)
                scaled[c] *= lambda;
            total += scaled[c];
        }
        for (auto & x : scaled)
            x /= total;
        auto after = conditionals_from_joint(JointDistribution(scaled), p);
        EXPECT_EQ(after.arrays[i], base.arrays[i]);
    }
}
