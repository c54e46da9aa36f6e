#pragma once

#include <compat/conditional.hpp>
#include <compat/decide.hpp>
#include <compat/graph.hpp>
#include <compat/ideal.hpp>
#include <compat/incidence.hpp>
#include <compat/symmetry.hpp>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace compat {

using json = nlohmann::ordered_json;

/// A problem plus (optionally) its conditional arrays and enumeration caps.
struct ProblemDocument {
    ProblemSpec spec;
    std::optional<std::vector<ConditionalArray>> arrays;
    EnumerationCaps caps;
};

namespace detail {
    inline Rational rational_from_json(const json & j)
    {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long long>());
        throw Error(Errc::ParseError, "expected a rational string or an integer, got " + j.dump());
    }

    // Nested lists, outermost index = variable 1, flattened in lexicographic cell order.
    inline void flatten(const json & j, const std::vector<int> & d, std::size_t depth, std::vector<Rational> & out)
    {
        if (depth == d.size()) {
            out.push_back(rational_from_json(j));
            return;
        }
        if (! j.is_array() || j.size() != static_cast<std::size_t>(d[depth]))
            throw Error(Errc::ParseError,
                "array shape mismatch at depth " + std::to_string(depth + 1) + ": expected " + std::to_string(d[depth])
                    + " entries");
        for (const auto & x : j)
            flatten(x, d, depth + 1, out);
    }

    inline json nest(const std::vector<std::string> & flat, const std::vector<int> & d, std::size_t depth,
        std::size_t & pos)
    {
        if (depth == d.size())
            return flat[pos++];
        json arr = json::array();
        for (int k = 0; k < d[depth]; ++k)
            arr.push_back(nest(flat, d, depth + 1, pos));
        return arr;
    }

    inline std::vector<int> int_list(const json & j, const char * what)
    {
        if (! j.is_array())
            throw Error(Errc::ParseError, std::string(what) + " must be a list of integers");
        std::vector<int> out;
        for (const auto & x : j) {
            if (! x.is_number_integer())
                throw Error(Errc::ParseError, std::string(what) + " must be a list of integers");
            out.push_back(x.get<int>());
        }
        return out;
    }
}

inline ProblemDocument parse_problem_document(const json & doc)
{
    if (! doc.is_object())
        throw Error(Errc::ParseError, "problem document must be a JSON object");
    if (! doc.contains("d") || ! doc.contains("conditionals"))
        throw Error(Errc::ParseError, "problem document needs \"d\" and \"conditionals\"");

    ProblemDocument out;
    out.spec.d = detail::int_list(doc.at("d"), "d");
    const auto & conds = doc.at("conditionals");
    if (! conds.is_array())
        throw Error(Errc::ParseError, "\"conditionals\" must be a list");

    std::size_t with_arrays = 0;
    for (const auto & c : conds)
        if (c.is_object() && c.contains("array"))
            ++with_arrays;
    if (with_arrays != 0 && with_arrays != conds.size())
        throw Error(Errc::ParseError, "either every conditional carries an array or none does");

    std::vector<ConditionalArray> arrays;
    for (const auto & c : conds) {
        if (! c.is_object() || ! c.contains("B"))
            throw Error(Errc::ParseError, "each conditional needs a \"B\" list");
        out.spec.conditioning.push_back(detail::int_list(c.at("B"), "B"));
        if (with_arrays) {
            for (int dk : out.spec.d)
                if (dk < 1)
                    throw Error(Errc::InvalidSpec, "every dimension must be at least 1");
            ConditionalArray a;
            detail::flatten(c.at("array"), out.spec.d, 0, a.entries);
            arrays.push_back(std::move(a));
        }
    }
    if (with_arrays)
        out.arrays = std::move(arrays);

    if (doc.contains("caps")) {
        const auto & caps = doc.at("caps");
        if (caps.contains("maxCircuits"))
            out.caps.max_circuits = caps.at("maxCircuits").get<std::size_t>();
        if (caps.contains("maxLength") && ! caps.at("maxLength").is_null())
            out.caps.max_length = caps.at("maxLength").get<std::size_t>();
    }
    return out;
}

inline ProblemDocument parse_problem_document(const std::string & text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::exception & e) {
        throw Error(Errc::ParseError, e.what());
    }
    try {
        return parse_problem_document(doc);
    }
    catch (const json::exception & e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline json array_to_json(const std::vector<Rational> & entries, const ValidatedProblem & problem)
{
    std::vector<std::string> flat;
    for (const auto & q : entries)
        flat.push_back(format_rational(q));
    std::size_t pos = 0;
    return detail::nest(flat, problem.dims(), 0, pos);
}

inline json problem_to_json(const ValidatedProblem & problem, const std::vector<ConditionalArray> * arrays = nullptr)
{
    json doc;
    doc["d"] = problem.dims();
    doc["conditionals"] = json::array();
    for (std::size_t i = 0; i < problem.conditional_count(); ++i) {
        json c;
        c["B"] = problem.conditioning_set(i);
        if (arrays)
            c["array"] = array_to_json((*arrays)[i].entries, problem);
        doc["conditionals"].push_back(c);
    }
    return doc;
}

inline std::string row_label_text(const RowLabel & r)
{
    return std::to_string(r.block) + ":" + format_cell(r.tuple);
}

inline std::string col_label_text(const ColLabel & c)
{
    return conditional_name(c.conditional) + format_cell(c.cell);
}

/// Dense CSV: a header of column labels, then one labeled 0/1 row per matrix row.
inline std::string matrix_to_csv(const IncidenceMatrix & m)
{
    std::ostringstream out;
    out << "\"row\"";
    for (const auto & c : m.cols())
        out << ",\"" << col_label_text(c) << '"';
    out << '\n';
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        out << '"' << row_label_text(m.rows()[r]) << '"';
        for (std::size_t c = 0; c < m.col_count(); ++c)
            out << ',' << m.at(r, c);
        out << '\n';
    }
    return out.str();
}

/// Labels plus, per column, the 1-based rows holding its nonzero entries.
inline json matrix_to_json(const IncidenceMatrix & m)
{
    json out;
    out["rowCount"] = m.row_count();
    out["colCount"] = m.col_count();
    out["rows"] = json::array();
    for (const auto & r : m.rows())
        out["rows"].push_back({{"block", r.block}, {"tuple", r.tuple}});
    out["cols"] = json::array();
    for (std::size_t c = 0; c < m.col_count(); ++c) {
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < m.row_count(); ++r)
            if (m.at(r, c) != 0)
                rows.push_back(r + 1);
        const auto & label = m.cols()[c];
        out["cols"].push_back({{"conditional", label.conditional + 1}, {"cell", label.cell}, {"rows", rows}});
    }
    return out;
}

inline std::string vertex_text(const CompatGraph & g, std::size_t v)
{
    const auto & label = g.vertex_label(v);
    if (label.block == 0)
        return format_cell(label.tuple, '(', ')');
    return "(" + std::to_string(label.block) + "; " + format_cell(label.tuple, '(', ')') + ")";
}

inline std::string graph_to_dot(const CompatGraph & g)
{
    std::ostringstream out;
    out << "graph compat {\n";
    std::size_t cyclomatic = g.edge_count() + g.component_count() - g.vertex_count();
    out << "  // " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, cyclomatic number "
        << cyclomatic << (cyclomatic == 0 ? " (forest, no cycles)" : "") << "\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << "  v" << v << " [shape=" << (g.is_p_vertex(v) ? "box" : "ellipse") << ", label=\"" << vertex_text(g, v)
            << "\"];\n";
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out << "  v" << g.edge(e).p << " -- v" << g.edge(e).u << " [label=\"" << col_label_text(g.edge_label(e))
            << "\"];\n";
    out << "}\n";
    return out.str();
}

inline json graph_to_json(const CompatGraph & g)
{
    json out;
    out["vertices"] = json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto & label = g.vertex_label(v);
        out["vertices"].push_back({{"id", v + 1}, {"kind", g.is_p_vertex(v) ? "cell" : "slice"}, {"block", label.block},
            {"tuple", label.tuple}});
    }
    out["edges"] = json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out["edges"].push_back({{"id", e + 1}, {"from", g.edge(e).p + 1}, {"to", g.edge(e).u + 1},
            {"label", col_label_text(g.edge_label(e))}});
    return out;
}

inline json histogram_to_json(const std::map<std::size_t, std::size_t> & h)
{
    json out = json::object();
    for (auto [k, v] : h)
        out[std::to_string(k)] = v;
    return out;
}

inline json circuits_to_json(const CompatGraph & g, const CircuitSet & set)
{
    json out;
    out["count"] = set.size();
    out["histogram"] = histogram_to_json(set.histogram);
    out["circuits"] = json::array();
    for (const auto & c : set.circuits) {
        json vertices = json::array(), edges = json::array();
        for (auto v : c.vertices)
            vertices.push_back(vertex_text(g, v));
        for (auto e : c.edges)
            edges.push_back(col_label_text(g.edge_label(e)));
        out["circuits"].push_back({{"length", c.length()}, {"vertices", vertices}, {"edges", edges}});
    }
    return out;
}

inline json binomial_to_json(const Binomial & f, const ValidatedProblem & problem)
{
    json plus = json::array(), minus = json::array();
    for (auto c : f.plus)
        plus.push_back(indeterminate_name(problem, c));
    for (auto c : f.minus)
        minus.push_back(indeterminate_name(problem, c));
    return {{"degree", f.degree()}, {"text", render_binomial(f, problem)}, {"plus", plus}, {"minus", minus}};
}

inline json generators_to_json(
    const GeneratorSet & set, const ValidatedProblem & problem, const OrbitPartition * orbits = nullptr)
{
    json out;
    out["count"] = set.size();
    out["degreeHistogram"] = histogram_to_json(set.degree_histogram);
    out["generators"] = json::array();
    for (const auto & f : set.binomials)
        out["generators"].push_back(binomial_to_json(f, problem));
    if (orbits) {
        json list = json::array();
        for (const auto & o : orbits->orbits) {
            std::vector<std::size_t> members;
            for (auto m : o.members)
                members.push_back(m + 1);
            list.push_back({{"size", o.size()}, {"degree", set.binomials[o.representative()].degree()},
                {"representative", render_binomial(set.binomials[o.representative()], problem)},
                {"members", members}});
        }
        out["orbits"] = list;
    }
    return out;
}

inline json witness_to_json(const Witness & w, const ValidatedProblem & problem)
{
    if (auto * c = std::get_if<ConditionViolation>(&w)) {
        json out{{"kind", "condition"}, {"condition", c->condition}, {"conditional", c->conditional + 1}};
        if (c->cell)
            out["cell"] = problem.cell(*c->cell);
        if (c->slice)
            out["tuple"] = problem.slice_tuple(c->conditional, *c->slice);
        out["value"] = format_rational(c->value);
        return out;
    }
    if (auto * b = std::get_if<BinomialViolation>(&w)) {
        json out{{"kind", "binomial"}};
        out["binomial"] = binomial_to_json(b->binomial, problem);
        out["value"] = format_rational(b->value);
        out["absValue"] = format_rational(abs(b->value));
        return out;
    }
    const auto & cyc = std::get<InconsistentCycle>(w);
    json cells = json::array(), conds = json::array();
    for (auto c : cyc.cells)
        cells.push_back(problem.cell(c));
    for (auto i : cyc.conditionals)
        conds.push_back(i + 1);
    return {{"kind", "cycle"}, {"cells", cells}, {"conditionals", conds},
        {"ratioProduct", format_rational(cyc.ratio_product)}};
}

inline json verdict_to_json(const Verdict & v, const ValidatedProblem & problem)
{
    json out;
    out["compatible"] = v.compatible;
    out["witness"] = v.witness ? witness_to_json(*v.witness, problem) : json(nullptr);
    if (! v.more_witnesses.empty()) {
        json more = json::array();
        for (const auto & w : v.more_witnesses)
            more.push_back(witness_to_json(w, problem));
        out["moreWitnesses"] = more;
    }
    out["joint"] = v.reconstruction ? array_to_json(v.reconstruction->entries(), problem) : json(nullptr);
    out["dof"] = v.degrees_of_freedom;
    return out;
}

} // namespace compat
