#pragma once

#include <compat/compat.hpp>
#include <compat/io.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace compat::cli {

enum Exit : int {
    Ok = 0,
    Incompatible = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    Disagreement = 4,
};

struct Options {
    std::string format;
    std::string mode = "both";
    bool orbits = false;
    bool all_witnesses = false;
    std::optional<std::size_t> max_circuits;
    std::optional<std::string> weights;
    std::optional<std::size_t> probe_samples;
    std::uint64_t seed = 1;
};

inline const char * caps_env_var = "COMPAT_MAX_CIRCUITS";

/// Flag beats document, document beats environment.
inline EnumerationCaps effective_caps(const std::string & doc_text, const ProblemDocument & doc, const Options & opts)
{
    EnumerationCaps caps = doc.caps;
    bool doc_sets_max = doc_text.find("maxCircuits") != std::string::npos;
    if (! doc_sets_max)
        if (const char * env = std::getenv(caps_env_var)) {
            try {
                caps.max_circuits = std::stoull(env);
            }
            catch (const std::exception &) {
                throw Error(Errc::ParseError, std::string(caps_env_var) + " is not an integer");
            }
        }
    if (opts.max_circuits)
        caps.max_circuits = *opts.max_circuits;
    return caps;
}

inline std::vector<Rational> parse_weights(const std::string & text)
{
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(parse_rational(item));
    return out;
}

inline const std::vector<ConditionalArray> & require_arrays(const ProblemDocument & doc)
{
    if (! doc.arrays)
        throw Error(Errc::ParseError, "this command needs conditional arrays in the document");
    return *doc.arrays;
}

inline std::string histogram_text(const std::map<std::size_t, std::size_t> & h, const char * what)
{
    std::string out;
    for (auto [k, v] : h) {
        if (! out.empty())
            out += ", ";
        out += std::string(what) + " " + std::to_string(k) + ": " + std::to_string(v);
    }
    return out;
}

inline int cmd_matrix(const ValidatedProblem & problem, const Options & opts, std::ostream & out)
{
    auto m = build_matrix(problem);
    if (opts.probe_samples) {
        auto report = minor_unimodularity_probe(m, *opts.probe_samples, opts.seed);
        json j{{"rank", report.rank}, {"samples", report.samples}, {"passed", report.passed}};
        json dets = json::object();
        for (const auto & [det, count] : report.abs_determinants)
            dets[det.str()] = count;
        j["absDeterminants"] = dets;
        out << j.dump(2) << '\n';
        return report.passed ? Ok : Incompatible;
    }
    if (opts.format.empty() || opts.format == "csv")
        out << matrix_to_csv(m);
    else if (opts.format == "json")
        out << matrix_to_json(m).dump(2) << '\n';
    else
        throw Error(Errc::ParseError, "matrix format must be csv or json");
    return Ok;
}

inline int cmd_graph(const ValidatedProblem & problem, const Options & opts, std::ostream & out)
{
    auto g = build_graph(problem);
    if (opts.format.empty() || opts.format == "dot")
        out << graph_to_dot(g);
    else if (opts.format == "json")
        out << graph_to_json(g).dump(2) << '\n';
    else
        throw Error(Errc::ParseError, "graph format must be dot or json");
    return Ok;
}

inline int cmd_circuits(const ValidatedProblem & problem, const EnumerationCaps & caps, const Options & opts,
    std::ostream & out)
{
    auto g = build_graph(problem);
    auto set = enumerate_induced_circuits(g, caps);
    if (opts.format == "json") {
        out << circuits_to_json(g, set).dump(2) << '\n';
        return Ok;
    }
    if (! opts.format.empty() && opts.format != "text")
        throw Error(Errc::ParseError, "circuits format must be text or json");
    out << set.size() << " induced circuits\n";
    if (set.size())
        out << histogram_text(set.histogram, "length") << '\n';
    for (const auto & c : set.circuits) {
        out << "length " << c.length() << ":";
        for (auto v : c.vertices)
            out << ' ' << vertex_text(g, v);
        out << '\n';
    }
    return Ok;
}

inline int cmd_generators(const ValidatedProblem & problem, const EnumerationCaps & caps, const Options & opts,
    bool with_orbits, std::ostream & out)
{
    auto set = generators(problem, caps);
    std::optional<OrbitPartition> orbits;
    if (with_orbits)
        orbits = symmetry_orbits(set, problem);

    if (opts.format == "json") {
        out << generators_to_json(set, problem, orbits ? &*orbits : nullptr).dump(2) << '\n';
        return Ok;
    }
    if (! opts.format.empty() && opts.format != "text")
        throw Error(Errc::ParseError, "generators format must be text or json");

    out << set.size() << " generators";
    if (orbits)
        out << " in " << orbits->orbits.size() << " orbits";
    out << '\n';
    if (set.size())
        out << histogram_text(set.degree_histogram, "degree") << '\n';
    if (orbits) {
        for (std::size_t k = 0; k < orbits->orbits.size(); ++k) {
            const auto & o = orbits->orbits[k];
            out << "orbit " << k + 1 << " (size " << o.size() << "): "
                << render_binomial(set.binomials[o.representative()], problem) << '\n';
        }
        return Ok;
    }
    for (const auto & f : set.binomials)
        out << render_binomial(f, problem) << '\n';
    return Ok;
}

inline int cmd_check(const ValidatedProblem & problem, const std::vector<ConditionalArray> & arrays,
    const EnumerationCaps & caps, const Options & opts, std::ostream & out)
{
    if (opts.mode == "theorem") {
        auto v = check_compatibility_theorem(arrays, problem, caps, opts.all_witnesses);
        out << verdict_to_json(v, problem).dump(2) << '\n';
        return v.compatible ? Ok : Incompatible;
    }
    if (opts.mode == "oracle") {
        auto v = check_compatibility_oracle(arrays, problem);
        out << verdict_to_json(v, problem).dump(2) << '\n';
        return v.compatible ? Ok : Incompatible;
    }
    if (opts.mode != "both")
        throw Error(Errc::ParseError, "mode must be theorem, oracle or both");

    auto theorem = check_compatibility_theorem(arrays, problem, caps, opts.all_witnesses);
    auto oracle = check_compatibility_oracle(arrays, problem);
    bool agree = theorem.compatible == oracle.compatible;
    if (agree && theorem.compatible && theorem.reconstruction != oracle.reconstruction)
        agree = false;

    json j = verdict_to_json(theorem, problem);
    j["mode"] = "both";
    j["agree"] = agree;
    j["oracle"] = verdict_to_json(oracle, problem);
    out << j.dump(2) << '\n';
    if (! agree)
        return Disagreement;
    return theorem.compatible ? Ok : Incompatible;
}

inline int cmd_reconstruct(const ValidatedProblem & problem, const std::vector<ConditionalArray> & arrays,
    const Options & opts, std::ostream & out)
{
    std::optional<std::vector<Rational>> weights;
    if (opts.weights)
        weights = parse_weights(*opts.weights);
    auto r = reconstruct_joint(arrays, problem, weights);
    json j;
    j["joint"] = array_to_json(r.joint.entries(), problem);
    j["components"] = r.components;
    j["dof"] = r.degrees_of_freedom;
    out << j.dump(2) << '\n';
    return Ok;
}

/*
 * Runs one subcommand against a document. Output goes to `out` only when the
 * command completes; diagnostics go to `err`. Returns the process exit code.
 */
inline int run(const std::string & command, const std::string & doc_text, const Options & opts, std::ostream & out,
    std::ostream & err)
{
    std::ostringstream buffer;
    int code = Ok;
    try {
        auto doc = parse_problem_document(doc_text);
        auto problem = validate_problem(doc.spec);
        if (doc.arrays)
            check_shape(*doc.arrays, problem);
        auto caps = effective_caps(doc_text, doc, opts);

        if (command == "matrix")
            code = cmd_matrix(problem, opts, buffer);
        else if (command == "graph")
            code = cmd_graph(problem, opts, buffer);
        else if (command == "circuits")
            code = cmd_circuits(problem, caps, opts, buffer);
        else if (command == "generators")
            code = cmd_generators(problem, caps, opts, opts.orbits, buffer);
        else if (command == "orbits")
            code = cmd_generators(problem, caps, opts, true, buffer);
        else if (command == "check")
            code = cmd_check(problem, require_arrays(doc), caps, opts, buffer);
        else if (command == "reconstruct")
            code = cmd_reconstruct(problem, require_arrays(doc), opts, buffer);
        else
            throw Error(Errc::ParseError, "unknown command '" + command + "'");
    }
    catch (const Error & e) {
        err << "error: " << e.what() << '\n';
        if (e.is_cap())
            return CapExceeded;
        if (e.code() == Errc::Internal)
            return Disagreement;
        if (e.code() == Errc::IncompatibleInput)
            return Incompatible;
        return InvalidInput;
    }
    out << buffer.str();
    out.flush();
    return code;
}

} // namespace compat::cli
