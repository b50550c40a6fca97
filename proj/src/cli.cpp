#include "schmidt/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "schmidt/herm_decomp.hpp"
#include "schmidt/io.hpp"
#include "schmidt/multipartite.hpp"
#include "schmidt/separability.hpp"
#include "schmidt/states.hpp"
#include "schmidt/sym_decomp.hpp"

namespace schmidt::cli {

namespace {

// Carries an exit code out of a subcommand.
class cli_failure : public std::runtime_error {
public:
    cli_failure(int code, const std::string& what)
        : std::runtime_error(what)
        , code_(code)
    {
    }

    int code() const { return code_; }

private:
    int code_;
};

struct GenArgs {
    std::string family;
    std::vector<std::string> params;
    std::string dims;
    std::optional<std::uint64_t> seed;
    std::string output = "-";
};

struct DecomposeArgs {
    std::string input = "-";
    std::string mode = "hermitian";
    double rank_tol = default_rank_tol;
    std::optional<std::size_t> max_terms;
    std::string output = "-";
};

struct AnalyzeArgs {
    std::string input = "-";
    std::string decomposition;
    std::size_t restarts = SearchConfig{}.restarts;
    std::size_t iters = SearchConfig{}.iters;
    std::uint64_t seed = 0;
    double step = SearchConfig{}.step;
    std::optional<double> tol;
    double rank_tol = default_rank_tol;
    std::string output = "-";
};

struct MultiArgs {
    std::string input = "-";
    std::string dims;
    std::string order;
    double rank_tol = default_rank_tol;
    std::string output = "-";
};

std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& flag,
                                          bool allow_zero)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size() || (!allow_zero && v == 0) || item.front() == '-')
            throw cli_failure(input_error, flag + ": expected a comma-separated list of "
                                               + (allow_zero ? "indices" : "positive integers")
                                               + ", got '" + text + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty())
        throw cli_failure(input_error, flag + ": empty list");
    return out;
}

std::string read_text(const std::string& path, std::istream& in, const std::string& flag)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path);
    if (!file)
        throw cli_failure(input_error, flag + ": cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text))
        throw cli_failure(input_error, "--output: cannot write '" + path + "'");
}

io::MatrixFile load_matrix(const std::string& path, std::istream& in)
{
    try {
        return io::matrix_file_from_json(io::parse(read_text(path, in, "--input")));
    } catch (const io::format_error& e) {
        throw cli_failure(input_error, std::string("--input: ") + e.what());
    }
}

BipartiteDims bipartite(const io::MatrixFile& f)
{
    if (f.dims.size() != 2)
        throw cli_failure(input_error, "--input: expected two subsystem dims, got "
                                           + std::to_string(f.dims.size()));
    return {f.dims[0], f.dims[1]};
}

int cmd_gen(const GenArgs& args, std::ostream& out)
{
    const auto family = parse_family(args.family);
    if (!family)
        throw cli_failure(input_error, "--family: unknown family '" + args.family + "'");

    StateSpec spec;
    spec.family = *family;
    spec.seed = args.seed;
    if (!args.dims.empty())
        spec.dims = parse_index_list(args.dims, "--dims", false);
    for (const auto& kv : args.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw cli_failure(input_error, "--param: expected NAME=VALUE, got '" + kv + "'");
        const std::string name = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(value, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != value.size() || !std::isfinite(x))
            throw cli_failure(input_error, "--param " + name + ": '" + value
                                               + "' is not a finite number");
        spec.params[name] = x;
    }

    GeneratedState state;
    try {
        state = generate(spec);
    } catch (const state_param_error& e) {
        const std::string flag = e.param() == "dims" ? "--dims" : "--param " + e.param();
        throw cli_failure(input_error, flag + ": " + e.what());
    }

    io::MatrixFile file{state.dims, state.matrix, io::Json::object()};
    file.metadata["family"] = to_string(spec.family);
    io::Json params = io::Json::object();
    for (const auto& [name, value] : spec.params)
        params[name] = value;
    file.metadata["params"] = std::move(params);
    if (spec.seed)
        file.metadata["seed"] = *spec.seed;
    write_text(args.output, io::dump(io::to_json(file)), out);
    return ok;
}

int cmd_decompose(const DecomposeArgs& args, std::istream& in, std::ostream& out)
{
    const io::MatrixFile file = load_matrix(args.input, in);
    const BipartiteDims dims = bipartite(file);
    const DecomposeOptions options{args.rank_tol, args.max_terms};

    io::Json doc;
    if (args.mode == "symmetric") {
        if (!file.matrix.is_real())
            throw cli_failure(mode_mismatch,
                              "--mode symmetric: matrix has a nonzero imaginary part");
        doc = io::to_json(decompose_sym(file.matrix.re(), dims, options));
    } else if (args.mode == "hermitian") {
        doc = io::to_json(decompose_herm(file.matrix, dims, options));
    } else {
        throw cli_failure(input_error, "--mode: expected symmetric or hermitian");
    }
    write_text(args.output, io::dump(doc), out);
    return ok;
}

int cmd_analyze(const AnalyzeArgs& args, std::istream& in, std::ostream& out)
{
    const io::MatrixFile file = load_matrix(args.input, in);
    const BipartiteDims dims = bipartite(file);

    std::optional<std::vector<HermTerm>> terms;
    if (!args.decomposition.empty()) {
        io::HermTermsFile dec;
        try {
            dec = io::decomposition_terms_from_json(
                io::parse(read_text(args.decomposition, in, "--decomposition")));
        } catch (const io::format_error& e) {
            throw cli_failure(input_error, std::string("--decomposition: ") + e.what());
        }
        if (dec.mode != "hermitian" && dec.mode != "symmetric")
            throw cli_failure(mode_mismatch, "--decomposition: mode '" + dec.mode
                                                 + "' is not a bipartite decomposition");
        if (dec.dims[0] != dims.m || dec.dims[1] != dims.n)
            throw cli_failure(input_error, "--decomposition: dims differ from --input");
        terms = std::move(dec.terms);
    }

    AnalyzeOptions options;
    options.search.restarts = args.restarts;
    options.search.iters = args.iters;
    options.search.seed = args.seed;
    options.search.step = args.step;
    options.tol = args.tol;
    options.rank_tol = args.rank_tol;

    SeparabilityReport report;
    try {
        report = analyze(file.matrix, dims, terms, options);
    } catch (const not_a_state_error& e) {
        throw cli_failure(not_a_state, e.what());
    } catch (const std::invalid_argument& e) {
        throw cli_failure(input_error, std::string("--decomposition: ") + e.what());
    }

    io::Json doc = io::to_json(report);
    doc["search"] = {{"restarts", args.restarts}, {"iters", args.iters}, {"seed", args.seed},
                     {"step", args.step}};
    write_text(args.output, io::dump(doc), out);
    return ok;
}

int cmd_multi(const MultiArgs& args, std::istream& in, std::ostream& out)
{
    const io::MatrixFile file = load_matrix(args.input, in);
    const std::vector<std::size_t> dims =
        args.dims.empty() ? file.dims : parse_index_list(args.dims, "--dims", false);
    if (dims.size() < 3)
        throw cli_failure(input_error, "--dims: need at least three subsystems");
    const std::size_t side =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (side != file.matrix.rows())
        throw cli_failure(input_error, "--dims: product " + std::to_string(side)
                                           + " does not match matrix side "
                                           + std::to_string(file.matrix.rows()));

    MultiOptions options;
    options.rank_tol = args.rank_tol;
    if (!args.order.empty())
        options.order = parse_index_list(args.order, "--order", true);

    MultiDecomposition dec;
    try {
        dec = decompose_multi(file.matrix, dims, options);
    } catch (const numeric_error& e) {
        throw cli_failure(input_error, std::string("--input: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw cli_failure(input_error, std::string("--order: ") + e.what());
    }
    dec.q_multi = q_value_multi(dec.terms, dims);
    write_text(args.output, io::dump(io::to_json(dec)), out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err)
{
    CLI::App app{"Hermitian tensor-product decompositions and separability analysis",
                 "schmidt-herm"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark or random state");
    gen_cmd->add_option("--family", gen.family,
                        "werner | horodecki2x4 | random_density | random_separable")
        ->required();
    gen_cmd->add_option("--param", gen.params, "family parameter NAME=VALUE (repeatable)");
    gen_cmd->add_option("--dims", gen.dims, "subsystem dims, e.g. 2,3");
    gen_cmd->add_option("--seed", gen.seed, "seed for the random families");
    gen_cmd->add_option("--output,-o", gen.output, "output path, - for stdout");

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "tensor-product decomposition of a matrix");
    dec_cmd->add_option("--input,-i", dec.input, "matrix file, - for stdin");
    dec_cmd->add_option("--mode", dec.mode, "symmetric | hermitian");
    dec_cmd->add_option("--rank-tol", dec.rank_tol, "relative singular value cutoff")
        ->check(CLI::NonNegativeNumber);
    dec_cmd->add_option("--max-terms", dec.max_terms, "keep at most this many terms");
    dec_cmd->add_option("--output,-o", dec.output, "output path, - for stdout");

    AnalyzeArgs ana;
    auto* ana_cmd = app.add_subcommand("analyze", "separability analysis of a state");
    ana_cmd->add_option("--input,-i", ana.input, "matrix file, - for stdin");
    ana_cmd->add_option("--decomposition", ana.decomposition,
                        "decomposition file to use instead of recomputing");
    ana_cmd->add_option("--restarts", ana.restarts, "gauge search restarts");
    ana_cmd->add_option("--iters", ana.iters, "iterations per restart");
    ana_cmd->add_option("--seed", ana.seed, "search seed");
    ana_cmd->add_option("--step", ana.step, "initial gauge step")->check(CLI::PositiveNumber);
    ana_cmd->add_option("--tol", ana.tol, "verdict tolerance (default 1e-9 * ||A||_F)")
        ->check(CLI::NonNegativeNumber);
    ana_cmd->add_option("--rank-tol", ana.rank_tol, "relative singular value cutoff")
        ->check(CLI::NonNegativeNumber);
    ana_cmd->add_option("--output,-o", ana.output, "output path, - for stdout");

    MultiArgs mul;
    auto* mul_cmd = app.add_subcommand("multi", "multipartite Hermitian decomposition");
    mul_cmd->add_option("--input,-i", mul.input, "matrix file, - for stdin");
    mul_cmd->add_option("--dims", mul.dims, "subsystem dims, e.g. 2,2,3 (default: file dims)");
    mul_cmd->add_option("--order", mul.order, "recursion order, e.g. 2,0,1 (non-canonical)");
    mul_cmd->add_option("--rank-tol", mul.rank_tol, "relative singular value cutoff")
        ->check(CLI::NonNegativeNumber);
    mul_cmd->add_option("--output,-o", mul.output, "output path, - for stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    try {
        if (*gen_cmd)
            return cmd_gen(gen, out);
        if (*dec_cmd)
            return cmd_decompose(dec, in, out);
        if (*ana_cmd)
            return cmd_analyze(ana, in, out);
        return cmd_multi(mul, in, out);
    } catch (const cli_failure& e) {
        err << "error: " << e.what() << "\n";
        return e.code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

}  // namespace schmidt::cli
