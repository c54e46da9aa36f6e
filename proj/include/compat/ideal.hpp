#pragma once

#include <compat/conditional.hpp>
#include <compat/graph.hpp>
#include <compat/incidence.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace compat {

/*
 * x^plus - x^minus over the indeterminates C^i_{cell}, each monomial a sorted
 * list of column ids. Oriented so that `plus` is the lexicographically smaller
 * monomial.
 */
struct Binomial {
    std::vector<std::size_t> plus;
    std::vector<std::size_t> minus;

    std::size_t degree() const { return plus.size(); }

    friend bool operator==(const Binomial &, const Binomial &) = default;
    friend auto operator<=>(const Binomial & a, const Binomial & b)
    {
        if (a.degree() != b.degree())
            return a.degree() <=> b.degree();
        if (auto c = a.plus <=> b.plus; c != 0)
            return c;
        return a.minus <=> b.minus;
    }
};

/// Sorts both monomials and applies the canonical orientation.
inline Binomial make_binomial(std::vector<std::size_t> a, std::vector<std::size_t> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (b < a)
        std::swap(a, b);
    return {std::move(a), std::move(b)};
}

inline bool is_squarefree(const Binomial & f)
{
    auto sq = [](const std::vector<std::size_t> & m) { return std::adjacent_find(m.begin(), m.end()) == m.end(); };
    return sq(f.plus) && sq(f.minus);
}

inline bool has_disjoint_monomials(const Binomial & f)
{
    std::vector<std::size_t> common;
    std::set_intersection(f.plus.begin(), f.plus.end(), f.minus.begin(), f.minus.end(), std::back_inserter(common));
    return common.empty();
}

/// Edges at even positions (0, 2, ...) against edges at odd positions.
inline Binomial binomial_from_circuit(const CompatGraph & graph, const Circuit & circuit)
{
    const std::size_t len = circuit.edges.size();
    if (len == 0 || len % 2 != 0 || circuit.vertices.size() != len)
        throw Error(Errc::NotAlternating, "circuit has odd or inconsistent length");
    for (std::size_t k = 0; k < len; ++k)
        if (graph.is_p_vertex(circuit.vertices[k]) == graph.is_p_vertex(circuit.vertices[(k + 1) % len]))
            throw Error(Errc::NotAlternating, "consecutive circuit vertices lie in the same class");

    std::vector<std::size_t> a, b;
    for (std::size_t k = 0; k < len; ++k)
        (k % 2 == 0 ? a : b).push_back(circuit.edges[k]);
    return make_binomial(std::move(a), std::move(b));
}

struct GeneratorSet {
    std::vector<Binomial> binomials;
    /// sources[k] is the induced circuit binomials[k] came from.
    std::vector<Circuit> sources;
    std::map<std::size_t, std::size_t> degree_histogram;

    std::size_t size() const { return binomials.size(); }
};

inline GeneratorSet generators_from_circuits(const CompatGraph & graph, const CircuitSet & circuits)
{
    std::vector<std::pair<Binomial, Circuit>> items;
    items.reserve(circuits.size());
    for (const auto & c : circuits.circuits)
        items.emplace_back(binomial_from_circuit(graph, c), c);
    std::sort(items.begin(), items.end(), [](const auto & x, const auto & y) { return x.first < y.first; });
    items.erase(std::unique(items.begin(), items.end(),
                    [](const auto & x, const auto & y) { return x.first == y.first; }),
        items.end());

    GeneratorSet out;
    for (auto & [f, c] : items) {
        ++out.degree_histogram[f.degree()];
        out.binomials.push_back(std::move(f));
        out.sources.push_back(std::move(c));
    }
    return out;
}

/// Circuit binomials of every induced circuit of G_{Delta,d}.
inline GeneratorSet generators(const ValidatedProblem & problem, const EnumerationCaps & caps = {})
{
    auto graph = build_graph(problem);
    return generators_from_circuits(graph, enumerate_induced_circuits(graph, caps));
}

inline Rational evaluate_binomial(
    const Binomial & f, std::span<const ConditionalArray> arrays, const ValidatedProblem & problem)
{
    check_shape(arrays, problem);
    auto product = [&](const std::vector<std::size_t> & monomial) {
        Rational p = 1;
        for (auto col : monomial) {
            if (col >= problem.column_count())
                throw Error(Errc::ShapeMismatch, "indeterminate outside the problem");
            p *= arrays[col / problem.cell_count()].entries[col % problem.cell_count()];
            if (p == 0)
                break;
        }
        return p;
    };
    return product(f.plus) - product(f.minus);
}

/// A * plus == A * minus, as exponent vectors.
inline bool verify_kernel_membership(const Binomial & f, const IncidenceMatrix & matrix)
{
    auto image = [&](const std::vector<std::size_t> & monomial) {
        std::vector<long long> out(matrix.row_count(), 0);
        for (auto col : monomial) {
            if (col >= matrix.col_count())
                throw Error(Errc::ShapeMismatch, "indeterminate outside the matrix");
            for (std::size_t r = 0; r < matrix.row_count(); ++r)
                out[r] += matrix.at(r, col);
        }
        return out;
    };
    return image(f.plus) == image(f.minus);
}

/// "C", "D", ... for the first 24 conditionals, then "C{i}" (1-based).
inline std::string conditional_name(std::size_t i)
{
    if (i < 24)
        return std::string(1, static_cast<char>('C' + i));
    return "C{" + std::to_string(i + 1) + "}";
}

inline std::string indeterminate_name(const ValidatedProblem & problem, std::size_t column)
{
    return conditional_name(column / problem.cell_count()) + format_cell(problem.cell(column % problem.cell_count()));
}

inline std::string render_binomial(const Binomial & f, const ValidatedProblem & problem)
{
    auto monomial = [&](const std::vector<std::size_t> & m) {
        if (m.empty())
            return std::string("1");
        std::string out;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k)
                out += "*";
            out += indeterminate_name(problem, m[k]);
        }
        return out;
    };
    return monomial(f.plus) + " - " + monomial(f.minus);
}

} // namespace compat
