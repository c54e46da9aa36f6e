#pragma once

#include <compat/conditional.hpp>
#include <compat/ideal.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

namespace compat {

/*
 * Relabeling of variables and levels: a cell x maps to y with
 * y[sigma(k)] = pi_k(x[k]). Conditional i maps to the conditional whose
 * conditioning set is sigma(B_i). All values are 1-based.
 */
struct SymmetryElement {
    std::vector<int> variable_permutation;
    std::vector<std::vector<int>> level_permutations;

    static SymmetryElement identity(const ValidatedProblem & problem)
    {
        SymmetryElement g;
        const auto & d = problem.dims();
        g.variable_permutation.resize(d.size());
        std::iota(g.variable_permutation.begin(), g.variable_permutation.end(), 1);
        for (int dk : d) {
            std::vector<int> levels(dk);
            std::iota(levels.begin(), levels.end(), 1);
            g.level_permutations.push_back(std::move(levels));
        }
        return g;
    }

    friend bool operator==(const SymmetryElement &, const SymmetryElement &) = default;
};

inline std::size_t map_cell(const SymmetryElement & g, const ValidatedProblem & problem, std::size_t cell)
{
    Cell x = problem.cell(cell);
    Cell y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        y[g.variable_permutation[k] - 1] = g.level_permutations[k][x[k] - 1];
    return problem.cell_index(y);
}

/// Image of each conditional index under the variable permutation.
inline std::vector<std::size_t> map_conditionals(const SymmetryElement & g, const ValidatedProblem & problem)
{
    const auto & d = problem.dims();
    if (g.variable_permutation.size() != d.size() || g.level_permutations.size() != d.size())
        throw Error(Errc::ShapeMismatch, "symmetry element has wrong arity");
    for (std::size_t k = 0; k < d.size(); ++k) {
        int target = g.variable_permutation[k];
        if (target < 1 || static_cast<std::size_t>(target) > d.size() || d[target - 1] != d[k])
            throw Error(Errc::ShapeMismatch, "variable permutation does not preserve dimensions");
        if (g.level_permutations[k].size() != static_cast<std::size_t>(d[k]))
            throw Error(Errc::ShapeMismatch, "level permutation has wrong size");
    }

    std::vector<std::size_t> out;
    for (const auto & b : problem.conditioning_sets()) {
        std::vector<int> image;
        for (int k : b)
            image.push_back(g.variable_permutation[k - 1]);
        std::sort(image.begin(), image.end());
        std::size_t matches = 0;
        std::size_t target = 0;
        for (std::size_t j = 0; j < problem.conditional_count(); ++j)
            if (problem.conditioning_set(j) == image) {
                ++matches;
                target = j;
            }
        if (matches != 1)
            throw Error(Errc::AmbiguousAction,
                "conditioning set " + format_index_set(image) + " matches " + std::to_string(matches) + " conditionals");
        out.push_back(target);
    }
    return out;
}

/// Permutation of indeterminates (matrix columns) induced by g.
inline std::vector<std::size_t> column_permutation(const SymmetryElement & g, const ValidatedProblem & problem)
{
    auto conditionals = map_conditionals(g, problem);
    std::vector<std::size_t> cells(problem.cell_count());
    for (std::size_t c = 0; c < cells.size(); ++c)
        cells[c] = map_cell(g, problem, c);

    std::vector<std::size_t> out(problem.column_count());
    for (std::size_t i = 0; i < problem.conditional_count(); ++i)
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            out[column_of(problem, i, c)] = column_of(problem, conditionals[i], cells[c]);
    return out;
}

/// Family-preserving variable transpositions plus adjacent level transpositions.
inline std::vector<SymmetryElement> symmetry_group(const ValidatedProblem & problem)
{
    std::vector<SymmetryElement> gens;
    const auto & d = problem.dims();
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t l = k + 1; l < d.size(); ++l) {
            if (d[k] != d[l])
                continue;
            auto g = SymmetryElement::identity(problem);
            std::swap(g.variable_permutation[k], g.variable_permutation[l]);
            try {
                map_conditionals(g, problem);
            }
            catch (const Error &) {
                continue;
            }
            gens.push_back(std::move(g));
        }
    for (std::size_t k = 0; k < d.size(); ++k)
        for (int j = 1; j < d[k]; ++j) {
            auto g = SymmetryElement::identity(problem);
            std::swap(g.level_permutations[k][j - 1], g.level_permutations[k][j]);
            gens.push_back(std::move(g));
        }
    return gens;
}

/// Order of the permutation group the generators induce on the indeterminates.
inline std::size_t group_order(std::span<const SymmetryElement> gens, const ValidatedProblem & problem)
{
    std::vector<std::vector<std::size_t>> perms;
    for (const auto & g : gens)
        perms.push_back(column_permutation(g, problem));

    std::vector<std::size_t> id(problem.column_count());
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<std::size_t>> seen{id};
    std::vector<std::vector<std::size_t>> frontier{id};
    while (! frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto & x : frontier)
            for (const auto & p : perms) {
                std::vector<std::size_t> y(x.size());
                for (std::size_t c = 0; c < x.size(); ++c)
                    y[c] = p[x[c]];
                if (seen.insert(y).second)
                    next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return seen.size();
}

inline Binomial apply_permutation(const Binomial & f, const std::vector<std::size_t> & columns)
{
    std::vector<std::size_t> a, b;
    for (auto c : f.plus)
        a.push_back(columns.at(c));
    for (auto c : f.minus)
        b.push_back(columns.at(c));
    return make_binomial(std::move(a), std::move(b));
}

/// The arrays as seen after relabeling: out[g(i)][g(x)] = arrays[i][x].
inline std::vector<ConditionalArray> transform_arrays(
    std::span<const ConditionalArray> arrays, const SymmetryElement & g, const ValidatedProblem & problem)
{
    check_shape(arrays, problem);
    auto columns = column_permutation(g, problem);
    std::vector<ConditionalArray> out(arrays.size(), ConditionalArray{std::vector<Rational>(problem.cell_count())});
    for (std::size_t col = 0; col < columns.size(); ++col) {
        auto to = columns[col];
        out[to / problem.cell_count()].entries[to % problem.cell_count()]
            = arrays[col / problem.cell_count()].entries[col % problem.cell_count()];
    }
    return out;
}

struct Orbit {
    /// Indices into GeneratorSet::binomials, ascending; the first is the least representative.
    std::vector<std::size_t> members;

    std::size_t representative() const { return members.front(); }
    std::size_t size() const { return members.size(); }
};

struct OrbitPartition {
    std::vector<Orbit> orbits;
};

inline OrbitPartition symmetry_orbits(const GeneratorSet & set, const ValidatedProblem & problem)
{
    std::vector<std::vector<std::size_t>> perms;
    for (const auto & g : symmetry_group(problem))
        perms.push_back(column_permutation(g, problem));

    const std::size_t n = set.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };

    for (std::size_t k = 0; k < n; ++k)
        for (const auto & p : perms) {
            auto image = apply_permutation(set.binomials[k], p);
            auto it = std::lower_bound(set.binomials.begin(), set.binomials.end(), image);
            if (it == set.binomials.end() || *it != image)
                throw Error(Errc::Internal, "symmetry maps a generator outside the generator set");
            auto a = find(k), b = find(static_cast<std::size_t>(it - set.binomials.begin()));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

    std::map<std::size_t, Orbit> by_root;
    for (std::size_t k = 0; k < n; ++k)
        by_root[find(k)].members.push_back(k);
    OrbitPartition out;
    for (auto & [root, orbit] : by_root)
        out.orbits.push_back(std::move(orbit));
    std::sort(out.orbits.begin(), out.orbits.end(),
        [](const Orbit & a, const Orbit & b) { return a.representative() < b.representative(); });
    return out;
}

} // namespace compat
