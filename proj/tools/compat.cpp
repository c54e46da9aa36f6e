#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

namespace {

std::string read_input(const std::string & path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main(int argc, char ** argv)
{
    using compat::cli::Options;

    CLI::App app{"Exact compatibility checks for full conditional distributions"};
    app.require_subcommand(1);

    Options opts;
    std::string input = "-";
    std::size_t max_circuits = 0;
    std::size_t probe = 0;

    auto add_common = [&](CLI::App * sub) {
        sub->add_option("input", input, "problem document (JSON); '-' reads stdin")->capture_default_str();
        sub->add_option("--max-circuits", max_circuits, "abort when more induced circuits exist");
    };

    auto * matrix = app.add_subcommand("matrix", "incidence matrix A of the problem");
    add_common(matrix);
    matrix->add_option("--format", opts.format, "csv or json");
    matrix->add_option("--probe", probe, "sample this many maximal minors instead of printing the matrix");
    matrix->add_option("--seed", opts.seed, "seed for --probe");

    auto * graph = app.add_subcommand("graph", "bipartite compatibility graph");
    add_common(graph);
    graph->add_option("--format", opts.format, "dot or json");

    auto * circuits = app.add_subcommand("circuits", "induced circuits of the graph");
    add_common(circuits);
    circuits->add_option("--format", opts.format, "text or json");

    auto * gens = app.add_subcommand("generators", "circuit binomials generating the compatibility ideal");
    add_common(gens);
    gens->add_option("--format", opts.format, "text or json");
    gens->add_flag("--orbits", opts.orbits, "group generators into symmetry orbits");

    auto * orbits = app.add_subcommand("orbits", "symmetry orbits of the generators");
    add_common(orbits);
    orbits->add_option("--format", opts.format, "text or json");

    auto * check = app.add_subcommand("check", "decide compatibility of the document's arrays");
    add_common(check);
    check->add_option("--mode", opts.mode, "theorem, oracle or both")->capture_default_str();
    check->add_flag("--all-witnesses", opts.all_witnesses, "report every violated binomial");

    auto * reconstruct = app.add_subcommand("reconstruct", "rebuild a joint distribution");
    add_common(reconstruct);
    reconstruct->add_option("--weights", opts.weights, "comma-separated positive component weights, e.g. 1,3");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : compat::cli::InvalidInput;
    }

    if (max_circuits)
        opts.max_circuits = max_circuits;
    if (probe)
        opts.probe_samples = probe;

    std::string text;
    try {
        text = read_input(input);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return compat::cli::InvalidInput;
    }
    return compat::cli::run(app.get_subcommands().front()->get_name(), text, opts, std::cout, std::cerr);
}
