#pragma once

#include <compat/error.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace compat {

/// A multi-index (j_1, ..., j_n) with 1 <= j_k <= d_k.
using Cell = std::vector<int>;

struct SizeLimits {
    /// Upper bound on m * d_1 * ... * d_n, i.e. the number of indeterminates.
    std::uint64_t max_columns = 1u << 20;
};

/// Dimensions plus the conditioning family. Variables are numbered from 1.
struct ProblemSpec {
    std::vector<int> d;
    std::vector<std::vector<int>> conditioning;
    SizeLimits limits{};
};

inline std::string format_index_set(const std::vector<int> & set)
{
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (k)
            out += ",";
        out += std::to_string(set[k]);
    }
    return out + "}";
}

/*
 * Checked problem instance.
 *
 * Cells are addressed by their position in lexicographic order (last variable
 * fastest), slices of conditional i by the position of their B_i-tuple in
 * lexicographic order. Conditional indices are 0-based in the API; levels
 * and variable numbers stay 1-based.
 */
class ValidatedProblem {
public:
    std::size_t variable_count() const { return d_.size(); }
    std::size_t conditional_count() const { return conditioning_.size(); }
    const std::vector<int> & dims() const { return d_; }
    const std::vector<int> & conditioning_set(std::size_t i) const { return conditioning_.at(i); }
    const std::vector<std::vector<int>> & conditioning_sets() const { return conditioning_; }
    const std::vector<int> & free_set(std::size_t i) const { return free_.at(i); }

    std::size_t cell_count() const { return cell_count_; }
    std::size_t slice_count(std::size_t i) const { return slice_counts_.at(i); }
    const std::vector<std::size_t> & slice_counts() const { return slice_counts_; }
    std::size_t column_count() const { return cell_count_ * conditioning_.size(); }
    const SizeLimits & limits() const { return limits_; }

    Cell cell(std::size_t index) const
    {
        Cell out(d_.size());
        for (std::size_t k = d_.size(); k-- > 0;) {
            out[k] = static_cast<int>(index % d_[k]) + 1;
            index /= d_[k];
        }
        return out;
    }

    std::size_t cell_index(const Cell & c) const
    {
        if (c.size() != d_.size())
            throw Error(Errc::ShapeMismatch, "cell has wrong arity");
        std::size_t index = 0;
        for (std::size_t k = 0; k < d_.size(); ++k) {
            if (c[k] < 1 || c[k] > d_[k])
                throw Error(Errc::ShapeMismatch, "cell level out of range");
            index = index * d_[k] + static_cast<std::size_t>(c[k] - 1);
        }
        return index;
    }

    /// Position of the B_i-tuple of the given cell.
    std::size_t slice_of(std::size_t i, std::size_t cell) const { return slice_of_[i * cell_count_ + cell]; }

    std::vector<int> slice_tuple(std::size_t i, std::size_t slice) const
    {
        const auto & b = conditioning_.at(i);
        std::vector<int> out(b.size());
        for (std::size_t k = b.size(); k-- > 0;) {
            int dk = d_[b[k] - 1];
            out[k] = static_cast<int>(slice % dk) + 1;
            slice /= dk;
        }
        return out;
    }

    /// Cell indices belonging to each slice of conditional i, in lexicographic order.
    std::vector<std::vector<std::size_t>> slice_members(std::size_t i) const
    {
        std::vector<std::vector<std::size_t>> out(slice_counts_.at(i));
        for (std::size_t c = 0; c < cell_count_; ++c)
            out[slice_of(i, c)].push_back(c);
        return out;
    }

    friend ValidatedProblem validate_problem(const ProblemSpec & spec);

private:
    std::vector<int> d_;
    std::vector<std::vector<int>> conditioning_;
    std::vector<std::vector<int>> free_;
    std::size_t cell_count_ = 0;
    std::vector<std::size_t> slice_counts_;
    std::vector<std::size_t> slice_of_;
    SizeLimits limits_;
};

inline ValidatedProblem validate_problem(const ProblemSpec & spec)
{
    const std::size_t n = spec.d.size();
    if (n == 0)
        throw Error(Errc::InvalidSpec, "at least one variable is required");
    for (int dk : spec.d)
        if (dk < 1)
            throw Error(Errc::InvalidSpec, "every dimension must be at least 1");
    if (spec.conditioning.empty())
        throw Error(Errc::InvalidSpec, "at least one conditional is required");

    for (const auto & b : spec.conditioning) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (b[k] < 1 || static_cast<std::size_t>(b[k]) > n)
                throw Error(Errc::InvalidSpec, "conditioning set " + format_index_set(b) + " names a missing variable");
            if (k > 0 && b[k] <= b[k - 1])
                throw Error(Errc::InvalidSpec, "conditioning set " + format_index_set(b) + " is not strictly increasing");
        }
    }

    const auto & family = spec.conditioning;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (family[i] == family[j])
                throw Error(Errc::DuplicateConditioningSet,
                    "conditionals " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " both condition on "
                        + format_index_set(family[i]));
            bool ij = std::includes(family[j].begin(), family[j].end(), family[i].begin(), family[i].end());
            bool ji = std::includes(family[i].begin(), family[i].end(), family[j].begin(), family[j].end());
            if (ij || ji) {
                const auto & small = ij ? family[i] : family[j];
                const auto & large = ij ? family[j] : family[i];
                throw Error(Errc::ContainmentViolation,
                    format_index_set(small) + " is contained in " + format_index_set(large));
            }
        }

    for (const auto & b : family)
        if (b.size() == n)
            throw Error(Errc::EmptyLeftSide, "conditioning on " + format_index_set(b) + " leaves no free variable");

    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t cells = 1;
    for (int dk : spec.d) {
        if (cells > max / static_cast<std::uint64_t>(dk))
            throw Error(Errc::SizeCapExceeded, "cell count overflows");
        cells *= static_cast<std::uint64_t>(dk);
    }
    if (cells > max / family.size() || cells * family.size() > spec.limits.max_columns)
        throw Error(Errc::SizeCapExceeded,
            "m * cellCount exceeds the configured cap of " + std::to_string(spec.limits.max_columns));

    ValidatedProblem p;
    p.d_ = spec.d;
    p.conditioning_ = family;
    p.limits_ = spec.limits;
    p.cell_count_ = static_cast<std::size_t>(cells);
    for (const auto & b : family) {
        std::vector<int> a;
        for (int k = 1; k <= static_cast<int>(n); ++k)
            if (! std::binary_search(b.begin(), b.end(), k))
                a.push_back(k);
        p.free_.push_back(std::move(a));

        std::size_t count = 1;
        for (int k : b)
            count *= static_cast<std::size_t>(spec.d[k - 1]);
        p.slice_counts_.push_back(count);
    }

    p.slice_of_.resize(p.column_count());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t c = 0; c < p.cell_count_; ++c) {
            Cell cell = p.cell(c);
            std::size_t s = 0;
            for (int k : family[i])
                s = s * spec.d[k - 1] + static_cast<std::size_t>(cell[k - 1] - 1);
            p.slice_of_[i * p.cell_count_ + c] = s;
        }
    return p;
}

inline std::string format_cell(const Cell & c, char open = '[', char close = ']')
{
    std::string out(1, open);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k)
            out += ",";
        out += std::to_string(c[k]);
    }
    out += close;
    return out;
}

} // namespace compat
