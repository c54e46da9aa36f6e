#pragma once

#include <compat/problem.hpp>
#include <compat/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace compat {

/// Block 0 rows are cells (the joint's parameters); block i >= 1 rows are
/// B_i-tuples of conditional i - 1 (its missing marginal).
struct RowLabel {
    std::size_t block = 0;
    std::vector<int> tuple;

    friend bool operator==(const RowLabel &, const RowLabel &) = default;
};

/// One column per indeterminate C^i_{cell}; conditional is 0-based.
struct ColLabel {
    std::size_t conditional = 0;
    Cell cell;

    friend bool operator==(const ColLabel &, const ColLabel &) = default;
};

/// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> values;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
    {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        for (const auto & row : init)
            values.insert(values.end(), row.begin(), row.end());
    }

    long long & at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    long long at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

class IncidenceMatrix {
public:
    IncidenceMatrix() = default;
    IncidenceMatrix(std::vector<RowLabel> rows, std::vector<ColLabel> cols)
        : rows_(std::move(rows)), cols_(std::move(cols)), values_(rows_.size(), cols_.size())
    {
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    const std::vector<RowLabel> & rows() const { return rows_; }
    const std::vector<ColLabel> & cols() const { return cols_; }
    long long at(std::size_t r, std::size_t c) const { return values_.at(r, c); }
    void set(std::size_t r, std::size_t c, long long v) { values_.at(r, c) = v; }
    const IntMatrix & values() const { return values_; }

private:
    std::vector<RowLabel> rows_;
    std::vector<ColLabel> cols_;
    IntMatrix values_;
};

/// Row index of the uVertex / block row for (conditional i, slice).
inline std::size_t block_row(const ValidatedProblem & problem, std::size_t i, std::size_t slice)
{
    std::size_t row = problem.cell_count();
    for (std::size_t k = 0; k < i; ++k)
        row += problem.slice_count(k);
    return row + slice;
}

inline std::size_t incidence_row_count(const ValidatedProblem & problem)
{
    return block_row(problem, problem.conditional_count(), 0);
}

/// Column index of C^i_{cell}.
inline std::size_t column_of(const ValidatedProblem & problem, std::size_t i, std::size_t cell)
{
    return i * problem.cell_count() + cell;
}

inline IncidenceMatrix build_matrix(const ValidatedProblem & problem)
{
    std::vector<RowLabel> rows;
    rows.reserve(incidence_row_count(problem));
    for (std::size_t c = 0; c < problem.cell_count(); ++c)
        rows.push_back({0, problem.cell(c)});
    for (std::size_t i = 0; i < problem.conditional_count(); ++i)
        for (std::size_t s = 0; s < problem.slice_count(i); ++s)
            rows.push_back({i + 1, problem.slice_tuple(i, s)});

    std::vector<ColLabel> cols;
    cols.reserve(problem.column_count());
    for (std::size_t i = 0; i < problem.conditional_count(); ++i)
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            cols.push_back({i, problem.cell(c)});

    IncidenceMatrix m(std::move(rows), std::move(cols));
    for (std::size_t i = 0; i < problem.conditional_count(); ++i)
        for (std::size_t c = 0; c < problem.cell_count(); ++c) {
            std::size_t col = column_of(problem, i, c);
            m.set(c, col, 1);
            m.set(block_row(problem, i, problem.slice_of(i, c)), col, 1);
        }
    return m;
}

struct StructureReport {
    bool passed = true;
    std::optional<std::size_t> column;
    std::optional<std::size_t> row;
    std::string reason;
};

/// Two 1s per column, one in block 0 and one outside it.
inline StructureReport verify_graphical_unimodular(const IncidenceMatrix & matrix)
{
    StructureReport report;
    for (std::size_t c = 0; c < matrix.col_count(); ++c) {
        std::size_t ones = 0;
        std::size_t in_block_zero = 0;
        for (std::size_t r = 0; r < matrix.row_count(); ++r) {
            auto v = matrix.at(r, c);
            if (v != 0 && v != 1) {
                report = {false, c, r, "entry is not 0/1"};
                return report;
            }
            if (v == 1) {
                ++ones;
                if (matrix.rows()[r].block == 0)
                    ++in_block_zero;
            }
        }
        if (ones != 2)
            return {false, c, std::nullopt, "column has " + std::to_string(ones) + " nonzero entries"};
        if (in_block_zero != 1)
            return {false, c, std::nullopt, "column does not straddle the row bipartition"};
    }
    return report;
}

namespace detail {
    /// Fraction-free Gaussian elimination (Bareiss); returns the determinant of
    /// a square matrix, or the rank when `rank_only` is set.
    inline Integer bareiss(std::vector<std::vector<Integer>> a, std::size_t rows, std::size_t cols, bool rank_only)
    {
        Integer prev = 1;
        int sign = 1;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols && rank < rows; ++col) {
            std::size_t pivot = rank;
            while (pivot < rows && a[pivot][col] == 0)
                ++pivot;
            if (pivot == rows) {
                if (! rank_only)
                    return 0;
                continue;
            }
            if (pivot != rank) {
                std::swap(a[pivot], a[rank]);
                sign = -sign;
            }
            for (std::size_t r = rank + 1; r < rows; ++r) {
                for (std::size_t k = col + 1; k < cols; ++k)
                    a[r][k] = (a[r][k] * a[rank][col] - a[r][col] * a[rank][k]) / prev;
                a[r][col] = 0;
            }
            prev = a[rank][col];
            ++rank;
        }
        if (rank_only)
            return Integer(rank);
        return sign * a[rows - 1][cols - 1];
    }

    inline std::vector<std::vector<Integer>> to_integer_rows(const IntMatrix & m)
    {
        std::vector<std::vector<Integer>> out(m.rows, std::vector<Integer>(m.cols));
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c)
                out[r][c] = m.at(r, c);
        return out;
    }
}

inline std::size_t matrix_rank(const IntMatrix & m)
{
    if (m.rows == 0 || m.cols == 0)
        return 0;
    return detail::bareiss(detail::to_integer_rows(m), m.rows, m.cols, true).convert_to<std::size_t>();
}

inline Integer determinant(const IntMatrix & m)
{
    if (m.rows != m.cols)
        throw Error(Errc::ShapeMismatch, "determinant of a non-square matrix");
    if (m.rows == 0)
        return 1;
    return detail::bareiss(detail::to_integer_rows(m), m.rows, m.rows, false);
}

struct ProbeReport {
    std::size_t rank = 0;
    std::size_t samples = 0;
    std::map<Integer, std::size_t> abs_determinants;
    bool passed = true;
};

/*
 * Samples square submatrices of size rank(A) and records the absolute values
 * of their determinants. A unimodular 0/1 incidence matrix only produces 0
 * and 1. Exhaustive minor checks are exponential, so this is a sanity probe.
 */
inline ProbeReport minor_unimodularity_probe(
    const IntMatrix & matrix, std::size_t sample_count, std::uint64_t seed, std::size_t column_cap = 32)
{
    if (matrix.cols > column_cap)
        throw Error(Errc::ProbeCapExceeded,
            "matrix has " + std::to_string(matrix.cols) + " columns, probe cap is " + std::to_string(column_cap));

    ProbeReport report;
    report.rank = matrix_rank(matrix);
    if (report.rank == 0)
        return report;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all_rows(matrix.rows), all_cols(matrix.cols);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::iota(all_cols.begin(), all_cols.end(), 0);

    for (std::size_t s = 0; s < sample_count; ++s) {
        std::vector<std::size_t> rows, cols;
        std::sample(all_rows.begin(), all_rows.end(), std::back_inserter(rows), report.rank, rng);
        std::sample(all_cols.begin(), all_cols.end(), std::back_inserter(cols), report.rank, rng);
        IntMatrix sub(report.rank, report.rank);
        for (std::size_t r = 0; r < report.rank; ++r)
            for (std::size_t c = 0; c < report.rank; ++c)
                sub.at(r, c) = matrix.at(rows[r], cols[c]);
        Integer det = abs(determinant(sub));
        if (det > 1)
            report.passed = false;
        ++report.abs_determinants[det];
        ++report.samples;
    }
    return report;
}

inline ProbeReport minor_unimodularity_probe(
    const IncidenceMatrix & matrix, std::size_t sample_count, std::uint64_t seed, std::size_t column_cap = 32)
{
    return minor_unimodularity_probe(matrix.values(), sample_count, seed, column_cap);
}

} // namespace compat
