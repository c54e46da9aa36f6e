#include "support/instances.hpp"

#include <compat/symmetry.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <set>

using namespace compat;

namespace {

// Counts distinct column permutations over every (sigma, pi_1..pi_n) that
// preserves d and the conditioning family; independent of the generating set.
std::size_t brute_force_group_order(const ValidatedProblem & p)
{
    const auto & d = p.dims();
    std::vector<int> sigma(d.size());
    std::iota(sigma.begin(), sigma.end(), 1);
    std::set<std::vector<std::size_t>> seen;
    do {
        SymmetryElement g = SymmetryElement::identity(p);
        g.variable_permutation = sigma;
        try {
            map_conditionals(g, p);
        }
        catch (const Error &) {
            continue;
        }
        std::function<void(std::size_t)> levels = [&](std::size_t k) {
            if (k == d.size()) {
                seen.insert(column_permutation(g, p));
                return;
            }
            std::iota(g.level_permutations[k].begin(), g.level_permutations[k].end(), 1);
            do
                levels(k + 1);
            while (std::next_permutation(g.level_permutations[k].begin(), g.level_permutations[k].end()));
        };
        levels(0);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return seen.size();
}

} // namespace

TEST(SymmetryGroup, Orders)
{
    auto e4 = validate_problem({{2, 2, 2}, {{1, 2}, {1, 3}, {2, 3}}});
    auto e3 = validate_problem({{2, 2, 2}, {{3}, {2}, {1}}});
    auto b23 = validate_problem({{2, 3}, {{2}, {1}}});
    EXPECT_EQ(brute_force_group_order(e4), 48u);
    EXPECT_EQ(brute_force_group_order(e3), 48u);
    EXPECT_EQ(brute_force_group_order(b23), 12u);
    EXPECT_EQ(group_order(symmetry_group(e4), e4), 48u);
    EXPECT_EQ(group_order(symmetry_group(e3), e3), 48u);
    EXPECT_EQ(group_order(symmetry_group(b23), b23), 12u);
}

TEST(SymmetryGroup, VariableSwapRequiresMatchingDimensionsAndFamily)
{
    auto b23 = validate_problem({{2, 3}, {{2}, {1}}});
    for (const auto & g : symmetry_group(b23))
        EXPECT_EQ(g.variable_permutation, (std::vector<int>{1, 2}));

    auto lopsided = validate_problem({{2, 2, 2}, {{1}, {2, 3}}});
    auto gens = symmetry_group(lopsided);
    std::size_t swaps = 0;
    for (const auto & g : gens)
        if (g.variable_permutation != std::vector<int>{1, 2, 3}) {
            ++swaps;
            EXPECT_EQ(g.variable_permutation, (std::vector<int>{1, 3, 2}));
        }
    EXPECT_EQ(swaps, 1u);
}

TEST(SymmetryGroup, GeneratedOrderMatchesBruteForce)
{
    compat::testing::Rng rng(41);
    for (int k = 0; k < 40; ++k) {
        auto p = compat::testing::random_problem(rng, 3, 3, 3);
        EXPECT_EQ(group_order(symmetry_group(p), p), brute_force_group_order(p)) << compat::testing::problem_key(p);
    }
}

TEST(SymmetryOrbits, Example4HasFourClasses)
{
    auto p = validate_problem({{2, 2, 2}, {{2, 3}, {1, 3}, {1, 2}}});
    auto set = generators(p);
    auto orbits = symmetry_orbits(set, p);
    ASSERT_EQ(orbits.orbits.size(), 4u);
    std::multiset<std::pair<std::size_t, std::size_t>> shape;
    for (const auto & o : orbits.orbits)
        shape.insert({set.binomials[o.representative()].degree(), o.size()});
    // faces, the two hexagon types, octagons
    EXPECT_EQ(shape, (std::multiset<std::pair<std::size_t, std::size_t>>{{4, 6}, {6, 4}, {6, 12}, {8, 6}}));
}

TEST(SymmetryOrbits, SingleGeneratorSingleOrbit)
{
    auto p = validate_problem({{2, 2}, {{2}, {1}}});
    auto orbits = symmetry_orbits(generators(p), p);
    ASSERT_EQ(orbits.orbits.size(), 1u);
    EXPECT_EQ(orbits.orbits[0].size(), 1u);
}

TEST(SymmetryOrbits, Example3OrbitsAreDegreePure)
{
    auto p = validate_problem({{2, 2, 2}, {{3}, {2}, {1}}});
    auto set = generators(p);
    auto orbits = symmetry_orbits(set, p);
    std::size_t total = 0;
    for (const auto & o : orbits.orbits) {
        total += o.size();
        for (auto m : o.members)
            EXPECT_EQ(set.binomials[m].degree(), set.binomials[o.representative()].degree());
        EXPECT_TRUE(std::is_sorted(o.members.begin(), o.members.end()));
    }
    EXPECT_EQ(total, 80u);
}

TEST(SymmetryProperty, ActionPermutesTheGeneratorSet)
{
    compat::testing::Rng rng(43);
    compat::testing::GeneratorCache cache;
    for (int k = 0; k < 60; ++k) {
        auto p = compat::testing::random_problem(rng, 3, 3, 3);
        if (p.column_count() > 60)
            continue;
        const auto & set = cache.get(p);
        for (const auto & g : symmetry_group(p)) {
            auto perm = column_permutation(g, p);
            std::vector<Binomial> image;
            for (const auto & f : set.binomials)
                image.push_back(apply_permutation(f, perm));
            std::sort(image.begin(), image.end());
            ASSERT_EQ(image, set.binomials);
        }
    }
}

TEST(TransformArrays, MovesEntriesWithTheirLabels)
{
    auto p = validate_problem({{2, 2}, {{1}, {2}}});
    std::vector<ConditionalArray> arrays(2, ConditionalArray{std::vector<Rational>(4)});
    for (std::size_t c = 0; c < 4; ++c) {
        arrays[0].entries[c] = Rational(static_cast<int>(c));
        arrays[1].entries[c] = Rational(static_cast<int>(10 + c));
    }
    auto swap = SymmetryElement::identity(p);
    swap.variable_permutation = {2, 1};
    auto out = transform_arrays(arrays, swap, p);
    // C (B={1}) becomes D (B={2}); cell (1,2) becomes (2,1)
    EXPECT_EQ(out[1].entries[p.cell_index({2, 1})], Rational(1));
    EXPECT_EQ(out[0].entries[p.cell_index({1, 2})], Rational(12));
}
