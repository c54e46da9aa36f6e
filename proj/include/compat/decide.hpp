#pragma once

#include <compat/conditional.hpp>
#include <compat/graph.hpp>
#include <compat/ideal.hpp>
#include <compat/incidence.hpp>

#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace compat {

struct BinomialViolation {
    Binomial binomial;
    Rational value;
};

/// Closed walk in the support graph whose ratio constraints multiply to
/// something other than 1. Step k joins cells[k] and cells[k + 1] (cyclically)
/// inside one slice of conditional conditionals[k].
struct InconsistentCycle {
    std::vector<std::size_t> cells;
    std::vector<std::size_t> conditionals;
    Rational ratio_product;
};

using Witness = std::variant<ConditionViolation, BinomialViolation, InconsistentCycle>;

struct Verdict {
    bool compatible = false;
    std::optional<Witness> witness;
    /// Further binomial violations, collected only on request.
    std::vector<Witness> more_witnesses;
    std::optional<JointDistribution> reconstruction;
    std::size_t components = 0;
    std::size_t degrees_of_freedom = 0;
};

struct Reconstruction {
    JointDistribution joint;
    std::size_t components = 0;
    std::size_t degrees_of_freedom = 0;
};

namespace detail {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    struct Propagation {
        /// Unnormalized joint values, zero outside the support.
        std::vector<Rational> value;
        std::vector<std::size_t> component;
        std::size_t components = 0;
        std::optional<InconsistentCycle> conflict;
    };

    /*
     * The support graph links cells sharing a B_i-tuple, with the constraint
     * P_a / P_b = C^i_a / C^i_b. Each slice contributes a star from its first
     * support cell, which implies every pairwise constraint in the slice.
     * Values are fixed to 1 at the least cell of each component and pushed
     * along a BFS tree; every non-tree edge is then an exact check.
     */
    inline Propagation propagate(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
    {
        struct SupportEdge {
            std::size_t a, b, conditional;
        };
        const std::size_t cells = problem.cell_count();
        std::vector<SupportEdge> edges;
        std::vector<std::vector<std::size_t>> incident(cells);
        for (std::size_t i = 0; i < problem.conditional_count(); ++i)
            for (const auto & members : problem.slice_members(i)) {
                std::size_t root = none;
                for (auto c : members) {
                    if (arrays[i].entries[c] == 0)
                        continue;
                    if (root == none) {
                        root = c;
                        continue;
                    }
                    incident[root].push_back(edges.size());
                    incident[c].push_back(edges.size());
                    edges.push_back({root, c, i});
                }
            }

        auto ratio = [&](const SupportEdge & e, std::size_t from) {
            std::size_t to = e.a == from ? e.b : e.a;
            return arrays[e.conditional].entries[to] / arrays[e.conditional].entries[from];
        };

        Propagation out;
        out.value.assign(cells, Rational(0));
        out.component.assign(cells, none);
        std::vector<std::size_t> parent_edge(cells, none);
        std::vector<char> checked(edges.size(), 0);

        for (std::size_t seed = 0; seed < cells; ++seed) {
            if (arrays[0].entries[seed] == 0 || out.component[seed] != none)
                continue;
            const std::size_t comp = out.components++;
            out.component[seed] = comp;
            out.value[seed] = 1;
            std::deque<std::size_t> queue{seed};
            while (! queue.empty()) {
                auto x = queue.front();
                queue.pop_front();
                for (auto id : incident[x]) {
                    if (checked[id])
                        continue;
                    checked[id] = 1;
                    const auto & e = edges[id];
                    std::size_t y = e.a == x ? e.b : e.a;
                    Rational expected = out.value[x] * ratio(e, x);
                    if (out.component[y] == none) {
                        out.component[y] = comp;
                        out.value[y] = expected;
                        parent_edge[y] = id;
                        queue.push_back(y);
                        continue;
                    }
                    if (out.value[y] == expected || out.conflict)
                        continue;

                    // tree paths to the common ancestor, closed by edge id
                    auto climb = [&](std::size_t v) {
                        std::vector<std::size_t> path{v};
                        while (parent_edge[v] != none) {
                            const auto & pe = edges[parent_edge[v]];
                            v = pe.a == v ? pe.b : pe.a;
                            path.push_back(v);
                        }
                        return path;
                    };
                    auto up_x = climb(x), up_y = climb(y);
                    while (up_x.size() >= 2 && up_y.size() >= 2 && up_x[up_x.size() - 2] == up_y[up_y.size() - 2]) {
                        up_x.pop_back();
                        up_y.pop_back();
                    }
                    InconsistentCycle cycle;
                    for (std::size_t k = up_x.size(); k-- > 0;)
                        cycle.cells.push_back(up_x[k]);
                    for (std::size_t k = 0; k + 1 < up_y.size(); ++k)
                        cycle.cells.push_back(up_y[k]);
                    for (std::size_t k = up_x.size() - 1; k-- > 0;)
                        cycle.conditionals.push_back(edges[parent_edge[up_x[k]]].conditional);
                    cycle.conditionals.push_back(e.conditional);
                    for (std::size_t k = 0; k + 1 < up_y.size(); ++k)
                        cycle.conditionals.push_back(edges[parent_edge[up_y[k]]].conditional);

                    cycle.ratio_product = 1;
                    for (std::size_t k = 0; k < cycle.cells.size(); ++k) {
                        auto from = cycle.cells[k], to = cycle.cells[(k + 1) % cycle.cells.size()];
                        const auto & array = arrays[cycle.conditionals[k]].entries;
                        cycle.ratio_product *= array[to] / array[from];
                    }
                    out.conflict = std::move(cycle);
                }
            }
        }
        return out;
    }

    /// The circuit binomial of an inconsistent cycle, when its lift to G_{Delta,d} is a chordless simple cycle.
    inline std::optional<BinomialViolation> lift_cycle(const InconsistentCycle & cycle,
        std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
    {
        std::vector<std::size_t> walk;
        for (std::size_t k = 0; k < cycle.cells.size(); ++k) {
            auto i = cycle.conditionals[k];
            walk.push_back(cycle.cells[k]);
            walk.push_back(block_row(problem, i, problem.slice_of(i, cycle.cells[k])));
        }
        auto graph = build_graph(problem);
        Circuit circuit;
        try {
            circuit = canonicalize_circuit(graph, walk);
        }
        catch (const Error &) {
            return std::nullopt;
        }
        if (! is_chordless(graph, circuit))
            return std::nullopt;
        auto f = binomial_from_circuit(graph, circuit);
        auto value = evaluate_binomial(f, arrays, problem);
        if (value == 0)
            return std::nullopt;
        return BinomialViolation{std::move(f), std::move(value)};
    }

    inline Reconstruction assemble(const Propagation & prop, std::span<const ConditionalArray> arrays,
        const ValidatedProblem & problem, const std::optional<std::vector<Rational>> & weights)
    {
        std::vector<Rational> w(prop.components, Rational(1));
        if (weights) {
            if (weights->size() != prop.components)
                throw Error(Errc::WeightCountMismatch,
                    "got " + std::to_string(weights->size()) + " component weights for "
                        + std::to_string(prop.components) + " components");
            for (const auto & x : *weights)
                if (x <= 0)
                    throw Error(Errc::InvalidDistribution, "component weights must be positive");
            w = *weights;
        }
        Rational total_weight = 0;
        for (const auto & x : w)
            total_weight += x;

        std::vector<Rational> mass(prop.components, Rational(0));
        for (std::size_t c = 0; c < prop.value.size(); ++c)
            if (prop.component[c] != none)
                mass[prop.component[c]] += prop.value[c];

        std::vector<Rational> joint(problem.cell_count(), Rational(0));
        for (std::size_t c = 0; c < joint.size(); ++c)
            if (auto k = prop.component[c]; k != none)
                joint[c] = prop.value[c] * w[k] / (total_weight * mass[k]);

        Reconstruction out{JointDistribution(std::move(joint)), prop.components,
            prop.components == 0 ? 0 : prop.components - 1};
        auto back = conditionals_from_joint(out.joint, problem);
        for (std::size_t i = 0; i < arrays.size(); ++i)
            if (back.arrays[i] != arrays[i])
                throw Error(Errc::Internal, "reconstructed joint does not reproduce conditional " + std::to_string(i + 1));
        return out;
    }
}

/*
 * Rebuilds a joint with the given conditionals. Each connected component of
 * the support graph receives mass weight_k / sum(weights) (equal by default);
 * the component count minus one is the number of free parameters.
 */
inline Reconstruction reconstruct_joint(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem,
    const std::optional<std::vector<Rational>> & weights = std::nullopt)
{
    auto report = check_conditions_123(arrays, problem);
    if (! report.passed())
        throw Error(Errc::IncompatibleInput, "condition " + std::to_string(report.first_violation->condition) + " fails");
    auto prop = detail::propagate(arrays, problem);
    if (prop.conflict)
        throw Error(Errc::IncompatibleInput, "ratio propagation found an inconsistent cycle");
    return detail::assemble(prop, arrays, problem, weights);
}

/// Conditions (1)-(3), then every circuit binomial of `gens` must vanish.
inline Verdict check_compatibility_theorem(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem,
    const GeneratorSet & gens, bool all_witnesses = false)
{
    Verdict verdict;
    auto report = check_conditions_123(arrays, problem);
    if (! report.passed()) {
        verdict.witness = *report.first_violation;
        return verdict;
    }

    for (const auto & f : gens.binomials) {
        auto value = evaluate_binomial(f, arrays, problem);
        if (value == 0)
            continue;
        if (! verdict.witness)
            verdict.witness = BinomialViolation{f, value};
        else
            verdict.more_witnesses.push_back(BinomialViolation{f, value});
        if (! all_witnesses)
            break;
    }
    if (verdict.witness)
        return verdict;

    verdict.compatible = true;
    Reconstruction r;
    try {
        r = reconstruct_joint(arrays, problem);
    }
    catch (const Error & e) {
        if (e.code() == Errc::IncompatibleInput)
            throw Error(Errc::Internal, "every circuit binomial vanishes but ratio propagation fails");
        throw;
    }
    verdict.reconstruction = std::move(r.joint);
    verdict.components = r.components;
    verdict.degrees_of_freedom = r.degrees_of_freedom;
    return verdict;
}

inline Verdict check_compatibility_theorem(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem,
    const EnumerationCaps & caps = {}, bool all_witnesses = false)
{
    check_shape(arrays, problem);
    return check_compatibility_theorem(arrays, problem, generators(problem, caps), all_witnesses);
}

/// Independent decider: conditions (1)-(3) plus exact ratio propagation.
inline Verdict check_compatibility_oracle(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
{
    Verdict verdict;
    auto report = check_conditions_123(arrays, problem);
    if (! report.passed()) {
        verdict.witness = *report.first_violation;
        return verdict;
    }

    auto prop = detail::propagate(arrays, problem);
    verdict.components = prop.components;
    if (prop.conflict) {
        if (auto lifted = detail::lift_cycle(*prop.conflict, arrays, problem))
            verdict.witness = std::move(*lifted);
        else
            verdict.witness = std::move(*prop.conflict);
        return verdict;
    }

    auto r = detail::assemble(prop, arrays, problem, std::nullopt);
    verdict.compatible = true;
    verdict.reconstruction = std::move(r.joint);
    verdict.degrees_of_freedom = r.degrees_of_freedom;
    return verdict;
}

} // namespace compat
