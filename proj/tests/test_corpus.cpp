#include "corpus.hpp"
#include "doctest.h"
#include "parser.hpp"
#include "timedep.hpp"

using namespace evsym;

namespace {

const std::vector<CorpusEntry>& examples() {
    static const std::vector<CorpusEntry> entries = load_corpus(EVSYM_CORPUS_FILE);
    return entries;
}

const Json& find_entry(const Json& report, const std::string& name) {
    for (const auto& e : report["details"]["entries"])
        if (e["entry"] == name) return e;
    FAIL("missing entry " << name);
    static const Json none;
    return none;
}

}  // namespace

TEST_CASE("example corpus passes") {
    Json report = run_corpus(examples());
    CHECK(report["verdict"] == "PASS");
    CHECK(report["details"]["total"] == examples().size());
    std::string prev;
    for (const auto& e : report["details"]["entries"]) {
        CHECK(e["entry"].get<std::string>() > prev);
        prev = e["entry"];
    }
}

TEST_CASE("runner verdicts equal direct library calls") {
    for (const auto& entry : examples()) {
        Json rep = run_entry(entry);
        const EvolutionEquation eq = classify(parse(entry.equation.value, entry.constants));
        CHECK(rep["flags"]["constant_separant"] == eq.constant_separant);
        CHECK(rep["flags"]["kdv_like"] == eq.kdv_like);
        std::size_t s = 0, ns = 0;
        for (const auto& c : rep["details"]["checks"]) {
            if (c["check"] == "symmetry") {
                REQUIRE(s < entry.symmetries.size());
                const DiffExpr g = parse(entry.symmetries[s++].value.first, entry.constants);
                CHECK((c["detail"]["report"]["verdict"] == "SYMMETRY") == is_symmetry(eq, g).is_symmetry());
                if (entry.symmetries[s - 1].value.second)
                    CHECK(classify_time(g).str() == *entry.symmetries[s - 1].value.second);
            } else if (c["check"] == "nonsymmetry") {
                REQUIRE(ns < entry.nonsymmetries.size());
                const DiffExpr g = parse(entry.nonsymmetries[ns++].value, entry.constants);
                CHECK(c["passed"] == !is_symmetry(eq, g).is_symmetry());
            }
        }
        CHECK(s == entry.symmetries.size());
        CHECK(ns == entry.nonsymmetries.size());
    }
}

TEST_CASE("mismatched expectations fail without throwing") {
    auto entries = parse_corpus(
        "[entry]\n"
        "name = wrong\n"
        "equation = u3 + 6*u*u1\n"
        "kdv_like = no\n"
        "symmetry = u2\n"
        "symmetry = u1 => polynomial degree 1\n"
        "nonsymmetry = u1\n"
        "scaling = u2 => 1\n");
    Json report = run_corpus(entries);
    CHECK(report["verdict"] == "FAIL");
    const Json& e = find_entry(report, "wrong");
    int failed = 0;
    for (const auto& c : e["details"]["checks"])
        if (!c["passed"].get<bool>()) ++failed;
    CHECK(failed == 5);
}

TEST_CASE("evaluation errors are recorded") {
    auto entries = parse_corpus("[entry]\nname = bad\nequation = u1\n");
    Json rep = run_entry(entries.at(0));
    CHECK(rep["verdict"] == "FAIL");
    CHECK(rep["details"]["checks"][0]["check"] == "evaluation");
}

TEST_CASE("corpus syntax errors carry positions") {
    auto position = [](const std::string& text) -> std::pair<int, int> {
        try {
            for (const auto& e : parse_corpus(text)) run_entry(e);
        } catch (const ParseError& err) {
            return {err.line(), err.column()};
        }
        return {0, 0};
    };
    CHECK(position("name = x\n") == std::pair{1, 1});
    CHECK(position("[entry]\nname = a\nequation = u3\nbogus = 1\n") == std::pair{4, 1});
    CHECK(position("[entry]\nname = a\nequation = u3 + 6*u*\n") == std::pair{3, 21});
    CHECK(position("[entry]\nname = a\nequation = u3\nkdv_like = maybe\n") == std::pair{4, 1});
    CHECK(position("[entry]\nname = a\n") == std::pair{1, 1});
    CHECK(position("[entry]\nname = a\nconstants = x\nequation = u3\n") == std::pair{3, 1});
    CHECK_THROWS_AS(load_corpus("/nonexistent/path.corpus"), std::ios_base::failure);
}
