#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <elp/cli.hpp>

using namespace elp;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::run(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

// Temp file that cleans up after itself.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& content = "") {
        path = fs::temp_directory_path() / name;
        if (!content.empty()) {
            std::ofstream f(path, std::ios::binary);
            f << content;
        }
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

const char* kE1 = "p | q.\nr :- M q.\n";
const char* kE2C = "p | q.\nr :- M p.\ns | t :- K p.\n:- M p, M q.\n";
const char* kE5C = "p :- M q, not q.\nq :- M p, not p.\nr :- M p, M q.\n:- K r.\n";

}  // namespace

TEST_CASE("text output lists world views in canonical order") {
    CHECK(run_cli({"-"}, "p | q.\nr :- M q.\n:- q.\n").out == "World view 1:\n{ p }\n");
    CHECK(run_cli({"-"}, kE1).code == 0);

    RunResult e2c = run_cli({"-"}, kE2C);
    CHECK(e2c.code == 0);
    CHECK(e2c.out ==
          "World view 1:\n{ p r s }\n{ p r t }\nWorld view 2:\n{ q }\n");

    RunResult e5c = run_cli({"-", "--semantics", "es2016"}, kE5C);
    CHECK(e5c.out == "World view 1:\n{ }\n");
}

TEST_CASE("exit code 1 signals an inconsistent program") {
    RunResult r = run_cli({"-", "--semantics", "es1994"}, "p | q.\n:- not K p.\n");
    CHECK(r.code == 1);
    CHECK(r.out == "no world views\n");

    CHECK(run_cli({"-", "--semantics", "es2016"}, "p | q.\n:- not K p.\n").code == 0);
}

TEST_CASE("programs load from files as well as stdin") {
    TempFile file("elp_cli_e1.elp", kE1);
    RunResult r = run_cli({file.path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("World view 1:") == 0);

    RunResult missing = run_cli({"/nonexistent/elp_no_such_file.elp"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("cannot read") != std::string::npos);
}

TEST_CASE("parse and usage failures exit with 2") {
    RunResult bad = run_cli({"-"}, "p | q\n");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") == 0);

    CHECK(run_cli({"-"}, "!- p.\n").code == 2);
    CHECK(run_cli({"-", "--frobnicate"}, kE1).code == 2);
    CHECK(run_cli({"-", "--semantics", "es2011"}, kE1).code == 2);
    CHECK(run_cli({"-", "--workers", "0"}, kE1).code == 2);
    CHECK(run_cli({}).code == 2);  // input is required
}

TEST_CASE("unsafe variables surface as grounding errors") {
    RunResult r = run_cli({"-"}, "q(X) :- not p(X).\np(a).\n");
    CHECK(r.code == 2);
    CHECK(r.err.find("X") != std::string::npos);
}

TEST_CASE("json output carries the full report shape") {
    RunResult r = run_cli({"-", "--format", "json"}, kE1);
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["semantics"] == "es2016");
    CHECK(j["count"] == 1);
    REQUIRE(j["world_views"].size() == 1);
    CHECK(j["world_views"][0]["guess"] == nlohmann::json::array({"NOT not q"}));
    CHECK(j["world_views"][0]["belief_sets"] ==
          nlohmann::json::parse(R"([["p","r"],["q","r"]])"));
    REQUIRE(j.contains("stats"));
    for (const char* key :
         {"enumerated", "filtered", "pruned", "skipped", "solved", "reduct_solves"})
        CHECK(j["stats"].contains(key));
    CHECK(j["stats"].size() == 6);
}

TEST_CASE("solver flags keep the result unchanged") {
    std::string reference = run_cli({"-"}, kE2C).out;
    CHECK(run_cli({"-", "--strategy", "exhaustive"}, kE2C).out == reference);
    CHECK(run_cli({"-", "--strategy", "framework"}, kE2C).out == reference);
    CHECK(run_cli({"-", "--no-guess-filter"}, kE2C).out == reference);
    CHECK(run_cli({"-", "--no-consequence-pruning"}, kE2C).out == reference);
    CHECK(run_cli({"-", "--workers", "4", "--group-size", "2"}, kE2C).out == reference);
}

TEST_CASE("--max-wv truncates the listing") {
    RunResult r = run_cli({"-", "--max-wv", "1"}, kE2C);
    CHECK(r.code == 0);
    CHECK(count_occurrences(r.out, "World view") == 1);
}

TEST_CASE("--oracle cross-checks the optimized pipeline") {
    CHECK(run_cli({"-", "--oracle"}, kE2C).code == 0);
    CHECK(run_cli({"-", "--oracle", "--semantics", "es2014"}, kE5C).code == 0);
}

TEST_CASE("--emit-framework writes the guarded program instead of solving") {
    RunResult r = run_cli({"-", "--emit-framework", "-"}, kE1);
    CHECK(r.code == 0);
    CHECK(r.out.find("__g1") != std::string::npos);
    CHECK(r.out.find("% __g1 assumes NOT not q") != std::string::npos);
    CHECK(r.out.find("World view") == std::string::npos);

    TempFile target("elp_cli_framework.lp");
    RunResult to_file = run_cli({"-", "--emit-framework", target.path.string()}, kE1);
    CHECK(to_file.code == 0);
    std::ifstream f(target.path);
    std::stringstream buf;
    buf << f.rdbuf();
    Program parsed = parse_program(buf.str());
    CHECK(parsed.rules.size() == 5);
}

TEST_CASE("resource caps exit with 3") {
    std::string wide;
    for (int i = 0; i < 23; ++i) wide += (i ? " | a" : "a") + std::to_string(i);
    wide += ".\nr :- M a0.\n";
    RunResult r = run_cli({"-"}, wide);
    CHECK(r.code == 3);
    CHECK(r.err.find("error:") == 0);
}

TEST_CASE("gen-elig prints a deterministic benchmark program") {
    RunResult a = run_cli({"gen-elig", "4", "7"});
    RunResult b = run_cli({"gen-elig", "4", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("eligible(S) :- highGPA(S).") != std::string::npos);
    CHECK(a.out.find("a4") != std::string::npos);

    CHECK(run_cli({"gen-elig", "0", "7"}).code == 2);
    CHECK(run_cli({"gen-elig", "four", "7"}).code == 2);
    CHECK(run_cli({"gen-elig", "4"}).code == 2);
}

TEST_CASE("corpus subcommand reports per-case results") {
    RunResult r = run_cli({"corpus", ELP_CORPUS_DIR});
    CHECK(r.code == 0);
    CHECK(r.out.find("19/19 cases passed") != std::string::npos);
    CHECK(count_occurrences(r.out, "PASS ") == 19);
    CHECK(r.out.find("FAIL") == std::string::npos);

    fs::path empty_dir = fs::temp_directory_path() / "elp_cli_empty_corpus";
    fs::create_directories(empty_dir);
    RunResult none = run_cli({"corpus", empty_dir.string()});
    CHECK(none.code == 0);
    CHECK(none.err.find("no .elp cases") != std::string::npos);
    fs::remove_all(empty_dir);

    CHECK(run_cli({"corpus"}).code == 2);
}

TEST_CASE("--help prints usage and succeeds") {
    RunResult r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--semantics") != std::string::npos);
    CHECK(r.out.find("--strategy") != std::string::npos);
}
