// ============================================================================
// elp/cli.hpp -- command line front end
// ============================================================================
//
//   elp [options] <file|->          solve a program (stdin with "-")
//   elp corpus <dir>                run a golden corpus directory
//   elp gen-elig <n> <seed>         print a generated eligibility program
//
// Exit codes: 0 at least one world view, 1 none, 2 parse/validation/usage
// error, 3 resource cap exceeded.
// ============================================================================

#ifndef ELP_CLI_HPP
#define ELP_CLI_HPP

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elp/bench.hpp"
#include "elp/search.hpp"

namespace elp::cli {

enum class Format { Text, Json };

struct Options {
    std::string input;
    Semantics semantics = Semantics::ES2016;
    SolveOptions solve;
    Format format = Format::Text;
    bool oracle = false;
    std::string emit_framework;  // path to write the framework to, empty = off
};

// ── output formatting ───────────────────────────────────────────────────────

// One block per world view, one line per belief set with the literals sorted
// lexicographically.
inline std::string format_text(const SolveReport& report) {
    if (report.world_views.empty()) return "no world views\n";
    std::string out;
    for (std::size_t i = 0; i < report.world_views.size(); ++i) {
        out += "World view " + std::to_string(i + 1) + ":\n";
        for (const BeliefSet& b : report.world_views[i].belief_sets)
            out += to_string(b, report.atoms) + "\n";
    }
    return out;
}

inline std::string format_json(const SolveReport& report) {
    nlohmann::ordered_json out = world_views_json(report);
    nlohmann::ordered_json stats;
    stats["enumerated"] = report.stats.enumerated;
    stats["filtered"] = report.stats.filtered;
    stats["pruned"] = report.stats.pruned;
    stats["skipped"] = report.stats.skipped;
    stats["solved"] = report.stats.solved;
    stats["reduct_solves"] = report.stats.reduct_solves;
    out["stats"] = std::move(stats);
    return out.dump(2) + "\n";
}

// ── subcommands ─────────────────────────────────────────────────────────────

namespace detail {

inline int run_solve(const Options& opts, std::istream& in_stream, std::ostream& out,
                     std::ostream& err) {
    std::string text;
    if (opts.input == "-") {
        std::ostringstream os;
        os << in_stream.rdbuf();
        text = os.str();
    } else {
        std::ifstream file(opts.input, std::ios::binary);
        if (!file) {
            err << "error: cannot read " << opts.input << "\n";
            return 2;
        }
        std::ostringstream os;
        os << file.rdbuf();
        text = os.str();
    }

    GroundProgram ground;
    try {
        Program program = parse_program(text);
        std::vector<Diagnostic> diagnostics = validate(program);
        if (!diagnostics.empty()) {
            for (const Diagnostic& d : diagnostics) err << "error: " << to_string(d) << "\n";
            return 2;
        }
        ground = ground_program(normalize(program));
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GroundingError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& w : ground.warnings) err << "warning: " << w << "\n";

    if (!opts.emit_framework.empty()) {
        try {
            std::string framework = emit_reduct_framework(ground, opts.semantics);
            if (opts.emit_framework == "-") {
                out << framework;
            } else {
                std::ofstream file(opts.emit_framework, std::ios::binary);
                if (!file) {
                    err << "error: cannot write " << opts.emit_framework << "\n";
                    return 2;
                }
                file << framework;
            }
        } catch (const FreshNameError& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        return 0;
    }

    SolveReport report;
    try {
        report = solve(ground, opts.semantics, opts.solve);
        if (opts.oracle) {
            SolveOptions naive;
            naive.strategy = Strategy::Exhaustive;
            naive.guess_filter = false;
            naive.consequence_pruning = false;
            naive.workers = 1;
            naive.candidate_cap = opts.solve.candidate_cap;
            SolveReport check = solve(ground, opts.semantics, naive);
            bool match = report.world_views.size() == check.world_views.size();
            for (std::size_t i = 0; match && i < report.world_views.size(); ++i) {
                match = report.world_views[i].guess == check.world_views[i].guess &&
                        report.world_views[i].belief_sets == check.world_views[i].belief_sets;
            }
            if (!match) {
                err << "error: oracle mismatch: optimized and naive pipelines disagree\n";
                return 2;
            }
        }
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const FreshNameError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    out << (opts.format == Format::Json ? format_json(report) : format_text(report));
    return report.world_views.empty() ? 1 : 0;
}

inline int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
    CorpusReport report = run_golden_corpus(dir);
    for (const CaseResult& c : report.cases) {
        if (c.passed) {
            std::ostringstream line;
            line << "PASS " << c.name << " (" << static_cast<int>(c.seconds * 1000.0) << " ms)";
            out << line.str() << "\n";
        } else {
            out << "FAIL " << c.name << ": " << c.message << "\n";
        }
    }
    std::size_t passed = 0;
    for (const CaseResult& c : report.cases)
        if (c.passed) ++passed;
    out << passed << "/" << report.cases.size() << " cases passed\n";
    if (report.cases.empty()) err << "warning: no .elp cases found\n";
    return report.all_passed() ? 0 : 1;
}

}  // namespace detail

// ── argument parsing ────────────────────────────────────────────────────────

inline int run(const std::vector<std::string>& args, std::istream& in = std::cin,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    if (!args.empty() && args.front() == "corpus") {
        if (args.size() != 2) {
            err << "usage: elp corpus <dir>\n";
            return 2;
        }
        return detail::run_corpus(args[1], out, err);
    }
    if (!args.empty() && args.front() == "gen-elig") {
        if (args.size() != 3) {
            err << "usage: elp gen-elig <n> <seed>\n";
            return 2;
        }
        try {
            int n = std::stoi(args[1]);
            std::uint32_t seed = static_cast<std::uint32_t>(std::stoul(args[2]));
            out << gen_elig(n, seed);
            return 0;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"world view solver for epistemic logic programs"};
    Options opts;
    std::string semantics = "es2016";
    std::string strategy = "maximal-first";
    std::string format = "text";
    bool no_guess_filter = false;
    bool no_consequence_pruning = false;

    app.add_option("input", opts.input, "program file, or - for stdin")->required();
    app.add_option("--semantics", semantics, "es1994, es2014 or es2016")
        ->check(CLI::IsMember({"es1994", "es2014", "es2016"}));
    app.add_option("--strategy", strategy, "maximal-first, exhaustive or framework")
        ->check(CLI::IsMember({"maximal-first", "exhaustive", "framework"}));
    app.add_option("--max-wv", opts.solve.max_world_views, "stop after this many world views")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--workers", opts.solve.workers, "parallel verification workers")
        ->check(CLI::PositiveNumber);
    app.add_option("--group-size", opts.solve.group_size, "guesses per worker group")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--no-guess-filter", no_guess_filter, "solve provably invalid guesses too");
    app.add_flag("--no-consequence-pruning", no_consequence_pruning,
                 "skip the framework consequence analysis");
    app.add_flag("--oracle", opts.oracle, "cross-check against the naive pipeline");
    app.add_option("--emit-framework", opts.emit_framework,
                   "write the reduct framework program and exit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    opts.semantics = *semantics_from_string(semantics);
    opts.solve.strategy = *strategy_from_string(strategy);
    opts.format = format == "json" ? Format::Json : Format::Text;
    opts.solve.guess_filter = !no_guess_filter;
    opts.solve.consequence_pruning = !no_consequence_pruning;
    return detail::run_solve(opts, in, out, err);
}

inline int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace elp::cli

#endif  // ELP_CLI_HPP
