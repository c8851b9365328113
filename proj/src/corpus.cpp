#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "parser.hpp"

namespace evsym {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::pair<std::string, std::optional<std::string>> split_arrow(const std::string& v) {
    const auto p = v.find("=>");
    if (p == std::string::npos) return {trim(v), std::nullopt};
    return {trim(v.substr(0, p)), trim(v.substr(p + 2))};
}

bool parse_bool(const std::string& v, int line) {
    if (v == "yes" || v == "true") return true;
    if (v == "no" || v == "false") return false;
    throw ParseError("expected yes or no, got '" + v + "'", line, 1);
}

std::string collapse_space(const std::string& s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

// Check record: name, passed, plus free-form fields.
Json check(const std::string& name, bool passed, Json detail = Json::object()) {
    Json j;
    j["check"] = name;
    j["passed"] = passed;
    j["detail"] = std::move(detail);
    return j;
}

class EntryRunner {
public:
    explicit EntryRunner(const CorpusEntry& e) : entry_(e) {}

    Json run() {
        Json out = make_report("corpus");
        out["entry"] = entry_.name;
        Json checks = Json::array();
        try {
            eq_ = classify(expr(entry_.equation));
            out["equation"] = eq_.rhs.str();
            out["order"] = eq_.order;
            out["flags"] = equation_flags(eq_);
            run_flags(checks);
            run_symmetries(checks);
            run_nonsymmetries(checks);
            run_masters(checks);
            run_scalings(checks);
            run_hypothesis(checks);
            run_find(checks);
            out["details"]["observed_time_dependence"] = observed();
        } catch (const ParseError&) {
            throw;
        } catch (const InternalError& e) {
            checks.push_back(check("internal", false, {{"error", std::string("internal error: ") + e.what()}}));
        } catch (const Error& e) {
            checks.push_back(check("evaluation", false, {{"error", e.what()}}));
        }
        bool passed = std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["passed"].get<bool>(); });
        out["verdict"] = passed ? "PASS" : "FAIL";
        out["passed"] = passed;
        out["details"]["checks"] = std::move(checks);
        return out;
    }

private:
    DiffExpr expr(const Located<std::string>& src) {
        try {
            return parse(src.value, entry_.constants);
        } catch (const ParseError& e) {
            throw ParseError(e.detail() + " in '" + src.value + "'", src.line + e.line() - 1,
                             e.line() == 1 ? src.column + e.column() - 1 : e.column());
        }
    }
    DiffExpr expr(const std::string& src, int line) { return expr(Located<std::string>{src, line, 1}); }

    void run_flags(Json& checks) {
        if (entry_.constant_separant)
            checks.push_back(check("constant_separant", eq_.constant_separant == *entry_.constant_separant,
                                   {{"expected", *entry_.constant_separant}, {"actual", eq_.constant_separant}}));
        if (entry_.kdv_like)
            checks.push_back(check("kdv_like", eq_.kdv_like == *entry_.kdv_like,
                                   {{"expected", *entry_.kdv_like}, {"actual", eq_.kdv_like}}));
    }

    void run_symmetries(Json& checks) {
        for (const auto& s : entry_.symmetries) {
            DiffExpr g = expr(s.value.first, s.line);
            Json rep = check_report(eq_, g);
            const bool sym = rep["verdict"] == "SYMMETRY";
            Json detail{{"candidate", g.str()}, {"report", rep}};
            std::vector<std::string> failures;
            if (!sym) failures.push_back("not a symmetry");
            if (sym) {
                verified_.push_back(g);
                structure_failures(rep["details"], failures);
                reduction_failures(g, failures);
                if (eq_.time_independent) {
                    ClosureReport c = dt_closure_check(eq_, g);
                    if (!c.passed()) failures.push_back("d/dt closure failed");
                }
            }
            if (s.value.second) {
                const std::string actual = classify_time(g).str();
                if (collapse_space(actual) != collapse_space(*s.value.second))
                    failures.push_back("time class " + actual + ", expected " + *s.value.second);
            }
            detail["failures"] = failures;
            checks.push_back(check("symmetry", failures.empty(), std::move(detail)));
        }
    }

    static void structure_failures(const Json& d, std::vector<std::string>& failures) {
        const Json& ls = d["leading_structure"];
        if (ls.contains("verdict") && ls["verdict"] == "fail") failures.push_back("leading structure failed");
        const Json& l1 = d["lead1"];
        if (l1.contains("passed") && !l1["passed"].get<bool>()) failures.push_back("lead1 failed");
        const Json& an = d["annihilator"];
        if (an.contains("annihilates") && !an["annihilates"].get<bool>()) failures.push_back("annihilator failed");
    }

    static void reduction_failures(const DiffExpr& g, std::vector<std::string>& failures) {
        DiffExpr reduced = reduction_operator(g).apply(g);
        TimeDependenceClass cls = classify_time(reduced);
        using K = TimeDependenceClass::Kind;
        bool ok = cls.kind == K::TimeIndependent || (cls.kind == K::Polynomial && cls.degree == 1);
        if (cls.kind == K::Quasipolynomial)
            ok = std::all_of(cls.spectrum.begin(), cls.spectrum.end(),
                             [](const SpectrumEntry& s) { return s.max_degree == 0; });
        if (!ok) failures.push_back("reduction gave " + cls.str());
    }

    void run_nonsymmetries(Json& checks) {
        for (const auto& s : entry_.nonsymmetries) {
            DiffExpr g = expr(s);
            Json rep = check_report(eq_, g);
            checks.push_back(check("nonsymmetry", rep["verdict"] == "NOT A SYMMETRY", {{"report", rep}}));
        }
    }

    void run_masters(Json& checks) {
        for (const auto& m : entry_.masters) {
            Json rep = master_report(eq_, expr(m.value.first, m.line));
            DiffExpr expected = expr(m.value.second, m.line);
            DiffExpr g1 = bracket(eq_.rhs, expr(m.value.first, m.line));
            const bool ok = g1 == expected && (expected.is_zero() || rep["details"]["certified"].get<bool>());
            if (ok && !expected.is_zero()) verified_.push_back(expr(rep["details"]["symmetry"].get<std::string>(), m.line));
            checks.push_back(check("master", ok, {{"expected_g1", expected.str()}, {"report", rep}}));
        }
    }

    void run_scalings(Json& checks) {
        for (const auto& s : entry_.scalings) {
            ScalingResult r = scaling_test(eq_, expr(s.value.first, s.line));
            Json rep = scaling_report(eq_, expr(s.value.first, s.line));
            bool ok;
            if (s.value.second == "none")
                ok = !r.lambda;
            else
                ok = r.lambda && *r.lambda == expr(s.value.second, s.line) && r.certified;
            if (r.lambda && r.certified) verified_.push_back(r.symmetry);
            checks.push_back(check("scaling", ok, {{"expected", s.value.second}, {"report", rep}}));
        }
    }

    void run_hypothesis(Json& checks) {
        if (!entry_.hypothesis) return;
        std::vector<DiffExpr> basis;
        std::stringstream in(entry_.hypothesis->value);
        std::string item;
        while (std::getline(in, item, ';'))
            if (!trim(item).empty()) basis.push_back(expr(trim(item), entry_.hypothesis->line));
        const HypothesisMode mode =
            entry_.hypothesis_mode == "n-2" ? HypothesisMode::OrderNMinus2 : HypothesisMode::OrderNMinus1;
        Json rep = hypothesis_json(eq_, basis, mode);
        bool ok = true;
        if (entry_.hypothesis_expect) {
            const std::string& want = *entry_.hypothesis_expect;
            const std::string got = rep["verdict"];
            ok = (want == "polynomial" && got == to_string(Prediction::Polynomial)) ||
                 (want == "quasipolynomial" && got == to_string(Prediction::Quasipolynomial)) ||
                 (want == "none" && got == to_string(Prediction::None));
        }
        checks.push_back(check("hypothesis", ok, {{"expected", entry_.hypothesis_expect.value_or("")}, {"report", rep}}));
    }

    void run_find(Json& checks) {
        if (!entry_.find) return;
        AnsatzConfig cfg = parse_ansatz(entry_.find->value, entry_.constants);
        SearchResult r = find_symmetries(eq_, cfg);
        Json rep = find_report(eq_, cfg, false);
        std::vector<std::string> missing;
        for (const auto& e : entry_.find_expect) {
            DiffExpr g = expr(e);
            if (!span_contains(r.basis, g)) missing.push_back(g.str());
        }
        const bool ok = !r.basis.empty() && missing.empty();
        for (const auto& g : r.basis) verified_.push_back(g);
        checks.push_back(check("find", ok, {{"missing", missing}, {"report", rep}}));
    }

    // Aggregate t-dependence of every verified symmetry of this entry.
    Json observed() const {
        bool exponential = false;
        bool polynomial = false;
        for (const auto& g : verified_) {
            TimeDependenceClass cls = classify_time(g);
            if (cls.kind == TimeDependenceClass::Kind::Quasipolynomial) exponential = true;
            if (cls.kind == TimeDependenceClass::Kind::Polynomial) polynomial = true;
        }
        Json j;
        j["symmetries"] = verified_.size();
        j["summary"] = exponential ? (polynomial ? "mixed polynomial and exponential in t" : "quasipolynomial in t")
                                   : "polynomial in t";
        return j;
    }

    const CorpusEntry& entry_;
    EvolutionEquation eq_;
    std::vector<DiffExpr> verified_;
};

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
    std::vector<CorpusEntry> entries;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s == "[entry]") {
            entries.emplace_back();
            entries.back().line = line;
            continue;
        }
        if (entries.empty()) throw ParseError("expected [entry] before '" + s + "'", line, 1);
        const auto p = s.find('=');
        if (p == std::string::npos) throw ParseError("expected key = value", line, 1);
        const std::string key = trim(s.substr(0, p));
        const std::string value = trim(s.substr(p + 1));
        const int column = std::max(1, static_cast<int>(raw.find(value, raw.find('='))) + 1);
        CorpusEntry& e = entries.back();
        if (key == "name") {
            e.name = value;
        } else if (key == "equation") {
            e.equation = {value, line, column};
        } else if (key == "constants") {
            std::stringstream cs(value);
            std::string c;
            while (std::getline(cs, c, ',')) {
                c = trim(c);
                if (c.empty()) continue;
                try {
                    validate_constant_name(c);
                } catch (const DomainError& err) {
                    throw ParseError(err.what(), line, 1);
                }
                e.constants.insert(c);
            }
        } else if (key == "constant_separant") {
            e.constant_separant = parse_bool(value, line);
        } else if (key == "kdv_like") {
            e.kdv_like = parse_bool(value, line);
        } else if (key == "symmetry") {
            e.symmetries.push_back({split_arrow(value), line});
        } else if (key == "nonsymmetry") {
            e.nonsymmetries.push_back({value, line, column});
        } else if (key == "master" || key == "scaling") {
            auto [lhs, rhs] = split_arrow(value);
            if (!rhs) throw ParseError(key + " needs 'expr => expected'", line, 1);
            (key == "master" ? e.masters : e.scalings).push_back({{lhs, *rhs}, line});
        } else if (key == "hypothesis") {
            e.hypothesis = Located<std::string>{value, line, column};
        } else if (key == "hypothesis_mode") {
            if (value != "n-1" && value != "n-2") throw ParseError("hypothesis_mode must be n-1 or n-2", line, 1);
            e.hypothesis_mode = value;
        } else if (key == "hypothesis_expect") {
            if (value != "polynomial" && value != "quasipolynomial" && value != "none")
                throw ParseError("hypothesis_expect must be polynomial, quasipolynomial or none", line, 1);
            e.hypothesis_expect = value;
        } else if (key == "find") {
            e.find = Located<std::string>{value, line, column};
        } else if (key == "find_expect") {
            e.find_expect.push_back({value, line, column});
        } else {
            throw ParseError("unknown key '" + key + "'", line, 1);
        }
    }
    for (const auto& e : entries) {
        if (e.name.empty()) throw ParseError("entry without a name", e.line, 1);
        if (e.equation.value.empty()) throw ParseError("entry '" + e.name + "' has no equation", e.line, 1);
    }
    return entries;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open corpus file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str());
}

Json run_entry(const CorpusEntry& entry) { return EntryRunner(entry).run(); }

Json run_corpus(const std::vector<CorpusEntry>& entries) {
    std::vector<std::future<Json>> jobs;
    jobs.reserve(entries.size());
    for (const auto& e : entries) jobs.push_back(std::async(std::launch::async, [&e] { return run_entry(e); }));
    std::vector<Json> results;
    for (auto& j : jobs) results.push_back(j.get());
    std::stable_sort(results.begin(), results.end(), [](const Json& a, const Json& b) {
        return a["entry"].get<std::string>() < b["entry"].get<std::string>();
    });
    Json out = make_report("corpus run");
    std::size_t passed = 0;
    for (const auto& r : results)
        if (r["passed"].get<bool>()) ++passed;
    out["verdict"] = passed == results.size() ? "PASS" : "FAIL";
    out["passed"] = passed == results.size();
    out["details"]["total"] = results.size();
    out["details"]["passed"] = passed;
    out["details"]["entries"] = results;
    return out;
}

}  // namespace evsym
