#pragma once

#include <compat/problem.hpp>
#include <compat/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace compat {

/// One full conditional, dense over cells in lexicographic order.
struct ConditionalArray {
    std::vector<Rational> entries;

    friend bool operator==(const ConditionalArray &, const ConditionalArray &) = default;
};

class JointDistribution {
public:
    JointDistribution() = default;

    /// Throws InvalidDistribution unless entries are nonnegative and sum to 1.
    explicit JointDistribution(std::vector<Rational> entries) : entries_(std::move(entries))
    {
        Rational total = 0;
        for (const auto & e : entries_) {
            if (e < 0)
                throw Error(Errc::InvalidDistribution, "negative probability " + format_rational(e));
            total += e;
        }
        if (total != 1)
            throw Error(Errc::InvalidDistribution, "probabilities sum to " + format_rational(total));
    }

    const std::vector<Rational> & entries() const { return entries_; }
    const Rational & operator[](std::size_t cell) const { return entries_[cell]; }
    std::size_t size() const { return entries_.size(); }

    friend bool operator==(const JointDistribution &, const JointDistribution &) = default;

private:
    std::vector<Rational> entries_;
};

/// First failure of conditions (1)-(3). Exactly one of cell/slice is set.
struct ConditionViolation {
    int condition = 0;
    std::size_t conditional = 0;
    std::optional<std::size_t> cell;
    std::optional<std::size_t> slice;
    Rational value = 0;

    friend bool operator==(const ConditionViolation &, const ConditionViolation &) = default;
};

struct ConditionReport {
    bool nonnegative = true;
    bool same_support = true;
    bool margins_one = true;
    std::optional<ConditionViolation> first_violation;

    bool passed() const { return nonnegative && same_support && margins_one; }
};

inline void check_shape(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
{
    if (arrays.size() != problem.conditional_count())
        throw Error(Errc::ShapeMismatch,
            "expected " + std::to_string(problem.conditional_count()) + " conditional arrays, got "
                + std::to_string(arrays.size()));
    for (std::size_t i = 0; i < arrays.size(); ++i)
        if (arrays[i].entries.size() != problem.cell_count())
            throw Error(Errc::ShapeMismatch,
                "conditional " + std::to_string(i + 1) + " has " + std::to_string(arrays[i].entries.size())
                    + " entries, expected " + std::to_string(problem.cell_count()));
}

/// Every entry >= 0, a common zero pattern, and unit B_i-margins.
inline ConditionReport check_conditions_123(std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
{
    check_shape(arrays, problem);
    ConditionReport report;
    auto note = [&](ConditionViolation v) {
        if (! report.first_violation)
            report.first_violation = std::move(v);
    };

    for (std::size_t i = 0; i < arrays.size() && report.nonnegative; ++i)
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            if (arrays[i].entries[c] < 0) {
                report.nonnegative = false;
                note({1, i, c, std::nullopt, arrays[i].entries[c]});
                break;
            }

    for (std::size_t c = 0; c < problem.cell_count() && report.same_support; ++c) {
        bool zero = arrays[0].entries[c] == 0;
        for (std::size_t i = 1; i < arrays.size(); ++i)
            if ((arrays[i].entries[c] == 0) != zero) {
                report.same_support = false;
                note({2, i, c, std::nullopt, arrays[i].entries[c]});
                break;
            }
    }

    for (std::size_t i = 0; i < arrays.size() && report.margins_one; ++i) {
        std::vector<Rational> margin(problem.slice_count(i), Rational(0));
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            margin[problem.slice_of(i, c)] += arrays[i].entries[c];
        for (std::size_t s = 0; s < margin.size(); ++s)
            if (margin[s] != 1) {
                report.margins_one = false;
                note({3, i, std::nullopt, s, margin[s]});
                break;
            }
    }
    return report;
}

struct DerivedConditionals {
    std::vector<ConditionalArray> arrays;
    /// Some B_i-slice of the joint carried no mass; its conditional entries are zero.
    bool degenerate = false;
};

/// Bayes' rule: C^i(x) = P(x) / P_{B_i}(x_{B_i}).
inline DerivedConditionals conditionals_from_joint(const JointDistribution & joint, const ValidatedProblem & problem)
{
    if (joint.size() != problem.cell_count())
        throw Error(Errc::ShapeMismatch, "joint has wrong number of cells");

    DerivedConditionals out;
    for (std::size_t i = 0; i < problem.conditional_count(); ++i) {
        std::vector<Rational> margin(problem.slice_count(i), Rational(0));
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            margin[problem.slice_of(i, c)] += joint[c];

        ConditionalArray array;
        array.entries.reserve(problem.cell_count());
        for (std::size_t c = 0; c < problem.cell_count(); ++c) {
            const auto & m = margin[problem.slice_of(i, c)];
            if (m == 0) {
                out.degenerate = true;
                array.entries.emplace_back(0);
            }
            else
                array.entries.push_back(joint[c] / m);
        }
        out.arrays.push_back(std::move(array));
    }
    return out;
}

} // namespace compat
