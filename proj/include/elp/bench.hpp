// ============================================================================
// elp/bench.hpp -- scalable benchmark generator and golden corpus runner
// ============================================================================
//
// gen_elig(n, seed) emits the eligibility program over applicants a1..an:
// the four shared rule schemata plus one seeded fact pattern per applicant.
// The output is deterministic in (n, seed) across platforms.
//
// The corpus runner walks a directory of <case>.elp / <case>.expected.json
// pairs, solves each under the recorded semantics with default options and
// compares the result against the expectation (the JSON output schema minus
// stats).  Expectations are written by hand, never by the solver.
// ============================================================================

#ifndef ELP_BENCH_HPP
#define ELP_BENCH_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "elp/search.hpp"

namespace elp {

// ── report serialization shared with the cli ────────────────────────────────

// Stable-order JSON of the solved world views: semantics, count and one
// object per world view holding the guessed negations and the belief sets as
// sorted literal arrays.
inline nlohmann::ordered_json world_views_json(const SolveReport& report) {
    nlohmann::ordered_json out;
    out["semantics"] = to_string(report.semantics);
    out["count"] = report.world_views.size();
    nlohmann::ordered_json views = nlohmann::ordered_json::array();
    for (const WorldView& wv : report.world_views) {
        nlohmann::ordered_json view;
        view["guess"] = guess_strings(wv.guess, report.negations);
        nlohmann::ordered_json sets = nlohmann::ordered_json::array();
        for (const BeliefSet& b : wv.belief_sets) sets.push_back(literal_strings(b, report.atoms));
        view["belief_sets"] = std::move(sets);
        views.push_back(std::move(view));
    }
    out["world_views"] = std::move(views);
    return out;
}

// ── eligibility benchmark ───────────────────────────────────────────────────

// Applicant fact patterns; the disjunctive one reproduces the classic
// incomplete-information case.
inline std::string gen_elig(int n, std::uint32_t seed) {
    if (n < 1) throw std::invalid_argument("gen_elig: applicant count must be positive");
    std::string out;
    out += "eligible(S) :- highGPA(S).\n";
    out += "eligible(S) :- fairGPA(S), minority(S).\n";
    out += "-eligible(S) :- -highGPA(S), -fairGPA(S).\n";
    out += "interview(S) :- not K eligible(S), not K -eligible(S).\n";
    std::mt19937 rng(seed);
    for (int i = 1; i <= n; ++i) {
        std::string a = "a" + std::to_string(i);
        switch (rng() % 5) {
            case 0: out += "highGPA(" + a + ").\n"; break;
            case 1: out += "-highGPA(" + a + "). -fairGPA(" + a + ").\n"; break;
            case 2: out += "fairGPA(" + a + "). minority(" + a + ").\n"; break;
            case 3: out += "fairGPA(" + a + ") | highGPA(" + a + ").\n"; break;
            default: out += "fairGPA(" + a + ").\n"; break;
        }
    }
    return out;
}

// ── golden corpus ───────────────────────────────────────────────────────────

struct GoldenCase {
    std::string name;
    std::string program_text;
    Semantics semantics = Semantics::ES2016;
    std::string provenance;  // "paper" or "derived"
    nlohmann::ordered_json expected;  // semantics, count, world_views
};

struct CaseResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string message;
};

struct CorpusReport {
    std::vector<CaseResult> cases;

    bool all_passed() const {
        for (const CaseResult& c : cases)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace detail

inline GoldenCase load_golden_case(const std::filesystem::path& elp_path) {
    GoldenCase c;
    c.name = elp_path.stem().string();
    c.program_text = detail::read_file(elp_path);
    std::filesystem::path expected_path = elp_path;
    expected_path.replace_extension(".expected.json");
    nlohmann::ordered_json raw = nlohmann::ordered_json::parse(detail::read_file(expected_path));
    auto sem = semantics_from_string(raw.at("semantics").get<std::string>());
    if (!sem) throw std::runtime_error(c.name + ": unknown semantics in expectation");
    c.semantics = *sem;
    c.provenance = raw.value("provenance", "");
    c.expected["semantics"] = raw.at("semantics");
    c.expected["count"] = raw.at("count");
    c.expected["world_views"] = raw.at("world_views");
    return c;
}

inline CaseResult run_golden_case(const GoldenCase& c, const SolveOptions& opts = {}) {
    CaseResult result;
    result.name = c.name;
    auto start = std::chrono::steady_clock::now();
    try {
        Program p = parse_program(c.program_text);
        std::vector<Diagnostic> diags = validate(p);
        if (!diags.empty()) throw std::runtime_error("validation: " + to_string(diags.front()));
        GroundProgram g = ground_program(normalize(p));
        SolveReport report = solve(g, c.semantics, opts);
        nlohmann::ordered_json actual = world_views_json(report);
        if (actual == c.expected) {
            result.passed = true;
        } else {
            result.message = "expected " + c.expected.dump() + "\n  actual   " + actual.dump();
        }
    } catch (const std::exception& e) {
        result.message = e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

// Runs every .elp case in the directory in name order.  Unreadable or
// malformed cases fail individually; an empty directory yields an empty
// report.
inline CorpusReport run_golden_corpus(const std::filesystem::path& dir,
                                      const SolveOptions& opts = {}) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".elp")
                files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    CorpusReport report;
    for (const auto& path : files) {
        try {
            report.cases.push_back(run_golden_case(load_golden_case(path), opts));
        } catch (const std::exception& e) {
            CaseResult r;
            r.name = path.stem().string();
            r.message = e.what();
            report.cases.push_back(std::move(r));
        }
    }
    return report;
}

}  // namespace elp

#endif  // ELP_BENCH_HPP
