#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include <elp/bench.hpp>
#include <elp/ground.hpp>
#include <elp/syntax.hpp>

using namespace elp;
namespace fs = std::filesystem;

namespace {

// Scratch corpus directory populated by the test, removed on destruction.
struct TempCorpus {
    fs::path dir;
    explicit TempCorpus(const std::string& name) {
        dir = fs::temp_directory_path() / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempCorpus() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    void add(const std::string& stem, const std::string& program, const std::string& expected) {
        std::ofstream elp(dir / (stem + ".elp"));
        elp << program;
        if (!expected.empty()) {
            std::ofstream json(dir / (stem + ".expected.json"));
            json << expected;
        }
    }
};

}  // namespace

TEST_CASE("gen_elig is deterministic in count and seed") {
    CHECK(gen_elig(5, 42) == gen_elig(5, 42));
    CHECK(gen_elig(5, 42) != gen_elig(5, 43));
    CHECK_THROWS_AS(gen_elig(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_elig(-3, 1), std::invalid_argument);
}

TEST_CASE("gen_elig output is a well-formed program over a1..an") {
    std::string text = gen_elig(6, 99);
    Program p = parse_program(text);
    CHECK(validate(p).empty());
    GroundProgram g = ground_program(normalize(p));
    std::vector<std::string> constants = herbrand_constants(normalize(p));
    CHECK(constants == std::vector<std::string>{"a1", "a2", "a3", "a4", "a5", "a6"});
    CHECK(g.warnings.empty());
}

TEST_CASE("every applicant pattern is reachable by some seed") {
    std::vector<std::string> patterns = {
        "highGPA(a1).",
        "-highGPA(a1). -fairGPA(a1).",
        "fairGPA(a1). minority(a1).",
        "fairGPA(a1) | highGPA(a1).",
    };
    for (const std::string& pattern : patterns) {
        bool found = false;
        for (std::uint32_t seed = 0; seed < 200 && !found; ++seed)
            found = gen_elig(1, seed).find(pattern) != std::string::npos;
        INFO(pattern);
        CHECK(found);
    }
}

TEST_CASE("the four schemata ground to one instance per applicant") {
    GroundProgram g = ground_program(normalize(parse_program(gen_elig(2, 7))));
    std::size_t bodied = 0;
    for (const Rule& r : g.rules)
        if (!r.body.empty()) ++bodied;
    CHECK(bodied == 8);
}

TEST_CASE("world_views_json matches the documented schema") {
    SolveReport report =
        solve(ground_program(normalize(parse_program("p | q.\np :- q.\n"))), Semantics::ES2016);
    nlohmann::ordered_json expected = nlohmann::ordered_json::parse(R"({
        "semantics": "es2016",
        "count": 1,
        "world_views": [{"guess": [], "belief_sets": [["p"]]}]
    })");
    CHECK(world_views_json(report) == expected);
}

TEST_CASE("load_golden_case reads the program and its expectation") {
    GoldenCase c = load_golden_case(fs::path(ELP_CORPUS_DIR) / "e1.elp");
    CHECK(c.name == "e1");
    CHECK(c.semantics == Semantics::ES2016);
    CHECK(c.provenance == "paper");
    CHECK(c.expected.at("count") == 1);
    CHECK_NOTHROW(parse_program(c.program_text));

    CaseResult r = run_golden_case(c);
    CHECK(r.passed);
    CHECK(r.message.empty());
    CHECK(r.seconds >= 0.0);
}

TEST_CASE("a wrong expectation fails with both sides in the message") {
    TempCorpus corpus("elp_bench_wrong");
    // es2016 keeps only the maximal guess; expecting the es2014 pair must fail
    corpus.add("e5_wrong",
               "p :- M q, not q.\nq :- M p, not p.\nr :- M p, M q.\n",
               R"({"semantics": "es2016", "provenance": "derived", "count": 2,
                   "world_views": [
                     {"guess": ["NOT not p", "NOT not q"],
                      "belief_sets": [["p","r"],["q","r"]]},
                     {"guess": [], "belief_sets": [[]]}
                   ]})");
    CorpusReport report = run_golden_corpus(corpus.dir);
    REQUIRE(report.cases.size() == 1);
    CHECK_FALSE(report.cases[0].passed);
    CHECK(report.cases[0].message.find("expected") != std::string::npos);
    CHECK(report.cases[0].message.find("actual") != std::string::npos);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("malformed cases fail individually instead of aborting the run") {
    TempCorpus corpus("elp_bench_malformed");
    corpus.add("broken", "p | q\n",
               R"({"semantics": "es2016", "count": 1,
                   "world_views": [{"guess": [], "belief_sets": [["p"]]}]})");
    corpus.add("orphan", "p.\n", "");  // no expectation file
    corpus.add("ok", "p.\n",
               R"({"semantics": "es2016", "count": 1,
                   "world_views": [{"guess": [], "belief_sets": [["p"]]}]})");
    CorpusReport report = run_golden_corpus(corpus.dir);
    REQUIRE(report.cases.size() == 3);
    CHECK(report.cases[0].name == "broken");
    CHECK_FALSE(report.cases[0].passed);
    CHECK_FALSE(report.cases[0].message.empty());
    CHECK(report.cases[1].name == "ok");
    CHECK(report.cases[1].passed);
    CHECK(report.cases[2].name == "orphan");
    CHECK_FALSE(report.cases[2].passed);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("the shipped corpus passes end to end") {
    CorpusReport report = run_golden_corpus(ELP_CORPUS_DIR);
    CHECK(report.cases.size() == 19);
    CHECK(report.all_passed());
    for (std::size_t i = 1; i < report.cases.size(); ++i)
        CHECK(report.cases[i - 1].name < report.cases[i].name);
}

TEST_CASE("every shipped expectation declares its provenance") {
    for (const auto& entry : fs::directory_iterator(ELP_CORPUS_DIR)) {
        if (entry.path().extension() != ".elp") continue;
        GoldenCase c = load_golden_case(entry.path());
        INFO(c.name);
        CHECK((c.provenance == "paper" || c.provenance == "derived"));
    }
}

TEST_CASE("an empty directory yields an empty passing report") {
    TempCorpus corpus("elp_bench_empty");
    CorpusReport report = run_golden_corpus(corpus.dir);
    CHECK(report.cases.empty());
    CHECK(report.all_passed());
}
