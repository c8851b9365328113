#include "report.hpp"

#include <sstream>

#include "parser.hpp"

namespace evsym {

namespace {

Json expr_or_null(const std::optional<DiffExpr>& e) { return e ? Json(e->str()) : Json(nullptr); }

Json representation_json(const Representation& rep) {
    Json j;
    j["q"] = rep.q;
    j["s"] = rep.s;
    j["bound"] = rep.bound ? Json(*rep.bound) : Json(nullptr);
    j["psi"] = rep.psi.str();
    j["g"] = Json::array();
    for (const auto& g : rep.g) j["g"].push_back(g.str());
    j["psi_free_of"] = rep.psi_free_of;
    return j;
}

// Runs a structure check that may not apply; domain errors become a skip note.
template <typename Fn>
Json optional_section(Fn fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        return Json{{"skipped", e.what()}};
    }
}

Json annihilator_json(const AnnihilatorOp& op) {
    Json j;
    j["operator"] = op.str();
    j["coefficients"] = Json::array();
    for (const auto& a : op.coeffs) j["coefficients"].push_back(a.str());
    return j;
}

}  // namespace

Json make_report(const std::string& command) {
    Json j;
    j["entry"] = nullptr;
    j["command"] = command;
    j["verdict"] = nullptr;
    j["order"] = nullptr;
    j["flags"] = nullptr;
    j["time_class"] = nullptr;
    j["residual"] = nullptr;
    j["details"] = Json::object();
    return j;
}

Json equation_flags(const EvolutionEquation& eq) {
    Json j;
    j["order"] = eq.order;
    j["constant_separant"] = eq.constant_separant;
    j["kdv_like"] = eq.kdv_like;
    j["time_independent"] = eq.time_independent;
    j["separant_constant"] = eq.separant_constant;
    return j;
}

Json time_class_json(const TimeDependenceClass& cls) {
    Json j;
    switch (cls.kind) {
        case TimeDependenceClass::Kind::TimeIndependent: j["kind"] = "time-independent"; break;
        case TimeDependenceClass::Kind::Polynomial: j["kind"] = "polynomial"; break;
        case TimeDependenceClass::Kind::Quasipolynomial: j["kind"] = "quasipolynomial"; break;
        case TimeDependenceClass::Kind::Other: j["kind"] = "other"; break;
    }
    if (cls.kind == TimeDependenceClass::Kind::Polynomial) j["degree"] = cls.degree;
    if (cls.kind == TimeDependenceClass::Kind::Quasipolynomial) {
        j["spectrum"] = Json::array();
        for (const auto& s : cls.spectrum)
            j["spectrum"].push_back({{"lambda", s.lambda.str()}, {"max_degree", s.max_degree}});
    }
    j["text"] = cls.str();
    return j;
}

Json check_report(const EvolutionEquation& eq, const DiffExpr& g) {
    Json j = make_report("check");
    SymmetryReport rep = is_symmetry(eq, g);
    j["candidate"] = g.str();
    j["verdict"] = rep.is_symmetry() ? "SYMMETRY" : "NOT A SYMMETRY";
    j["order"] = rep.order;
    j["flags"] = equation_flags(eq);
    j["time_class"] = time_class_json(classify_time(g));
    if (!rep.is_symmetry()) {
        j["residual"] = rep.residual.str();
        return j;
    }
    Json& d = j["details"];
    d["leading_structure"] = optional_section([&] {
        LeadingStructure ls = leading_structure_check(eq, rep);
        return Json{{"verdict", to_string(ls.verdict)},
                    {"derivative", ls.derivative.str()},
                    {"c_k", expr_or_null(ls.c_k)},
                    {"detail", ls.detail}};
    });
    d["x_descent"] = optional_section([&] {
        Json steps = Json::array();
        for (const auto& s : x_descent(eq, rep))
            steps.push_back({{"expr", s.expr.str()}, {"order", s.order}, {"bound", s.bound}});
        return steps;
    });
    d["representation"] = optional_section([&] {
        RepresentationReport r = representation_decompose(eq, rep);
        Json out;
        out["general"] = representation_json(r.general);
        out["refined"] = r.refined ? representation_json(*r.refined) : Json(nullptr);
        return out;
    });
    d["lead1"] = optional_section([&] {
        Lead1Result l = lead1_check(eq, rep);
        return Json{{"r", l.r},
                    {"q", l.q_expr.str()},
                    {"expected_order", l.expected_order},
                    {"expected", l.expected.str()},
                    {"actual", l.actual.str()},
                    {"passed", l.passed}};
    });
    d["annihilator"] = optional_section([&] {
        AnnihilatorOp op = annihilator(g);
        Json a = annihilator_json(op);
        a["annihilates"] = op.apply(g).is_zero();
        return a;
    });
    return j;
}

Json classify_report(const EvolutionEquation& eq) {
    Json j = make_report("classify");
    j["equation"] = eq.rhs.str();
    j["verdict"] = "CLASSIFIED";
    j["order"] = eq.order;
    j["flags"] = equation_flags(eq);
    j["time_class"] = time_class_json(classify_time(eq.rhs));
    j["details"]["separant"] = eq.separant.str();
    j["details"]["deriv_depth"] = eq.deriv_depth;
    j["details"]["f"] = expr_or_null(eq.f);
    return j;
}

Json determine_report(const EvolutionEquation& eq, const DiffExpr& g) {
    Json j = make_report("determine");
    DeterminingSystem ds = determining_system(eq, g);
    j["candidate"] = g.str();
    j["verdict"] = ds.all_zero() ? "ALL ZERO" : "NONZERO";
    j["order"] = ds.k;
    j["flags"] = equation_flags(eq);
    j["time_class"] = time_class_json(classify_time(g));
    if (!ds.closure.is_zero()) j["residual"] = ds.closure.str();
    Json eqs = Json::array();
    for (std::size_t l = 0; l < ds.equations.size(); ++l)
        eqs.push_back({{"l", l}, {"expr", ds.equations[l].str()}});
    j["details"]["n"] = ds.n;
    j["details"]["equations"] = eqs;
    j["details"]["method"] = ds.method;
    return j;
}

Json timedep_report(const DiffExpr& g, const EvolutionEquation* eq) {
    Json j = make_report("timedep");
    TimeDependenceClass cls = classify_time(g);
    j["candidate"] = g.str();
    j["verdict"] = cls.str();
    j["time_class"] = time_class_json(cls);
    j["details"]["annihilator"] = annihilator_json(annihilator(g));
    j["details"]["reduction"] = optional_section([&] {
        AnnihilatorOp op = reduction_operator(g);
        DiffExpr reduced = op.apply(g);
        Json r = annihilator_json(op);
        r["result"] = reduced.str();
        r["result_class"] = time_class_json(classify_time(reduced));
        return r;
    });
    if (eq) {
        j["flags"] = equation_flags(*eq);
        j["details"]["closure"] = optional_section([&] {
            ClosureReport c = dt_closure_check(*eq, g);
            return Json{{"dt", c.dt.str()},
                        {"dt_is_symmetry", c.dt_is_symmetry},
                        {"dt_order_ok", c.dt_order_ok},
                        {"omega", c.omega.str()},
                        {"omega_g", c.omega_g.str()},
                        {"omega_is_symmetry", c.omega_is_symmetry},
                        {"omega_order_drops", c.omega_order_drops},
                        {"passed", c.passed()}};
        });
    }
    return j;
}

Json scaling_report(const EvolutionEquation& eq, const DiffExpr& q0) {
    Json j = make_report("scaling");
    ScalingResult r = scaling_test(eq, q0);
    j["candidate"] = q0.str();
    j["verdict"] = r.lambda ? "LAMBDA " + r.lambda->str() : "NONE";
    j["flags"] = equation_flags(eq);
    j["details"]["bracket"] = r.bracket_value.str();
    j["details"]["lambda"] = expr_or_null(r.lambda);
    j["details"]["certified"] = r.certified;
    j["details"]["symmetry"] = r.lambda ? Json(r.symmetry.str()) : Json(nullptr);
    return j;
}

Json master_report(const EvolutionEquation& eq, const DiffExpr& g0) {
    Json j = make_report("master");
    MasterResult r = mastersymmetry_test(eq, g0);
    j["candidate"] = g0.str();
    j["verdict"] = r.certified ? "MASTERSYMMETRY" : (r.g1_nonzero ? "NO: {F, G1} != 0" : "NO: G1 = 0");
    j["flags"] = equation_flags(eq);
    j["details"]["g1"] = r.g1.str();
    j["details"]["g1_nonzero"] = r.g1_nonzero;
    j["details"]["g1_commutes"] = r.g1_commutes;
    j["details"]["mu"] = expr_or_null(r.mu);
    j["details"]["certified"] = r.certified;
    j["details"]["symmetry"] = r.certified ? Json(r.symmetry.str()) : Json(nullptr);
    return j;
}

Json find_report(const EvolutionEquation& eq, const AnsatzConfig& cfg, bool linear_t) {
    Json j = make_report("find");
    j["flags"] = equation_flags(eq);
    Json& d = j["details"];
    d["config"] = {{"order", cfg.order},
                   {"t_degree", cfg.t_degree},
                   {"x_degree", cfg.x_degree},
                   {"base_weight", cfg.base_weight},
                   {"min_weight", cfg.min_weight},
                   {"max_weight", cfg.max_weight.value_or(cfg.order + cfg.base_weight)},
                   {"exp_lambda", expr_or_null(cfg.exp_lambda)},
                   {"max_pool", cfg.max_pool}};
    if (linear_t) {
        auto pairs = find_linear_t_symmetries(eq, cfg);
        j["verdict"] = "FOUND " + std::to_string(pairs.size());
        d["pairs"] = Json::array();
        for (const auto& p : pairs) d["pairs"].push_back({{"g0", p.g0.str()}, {"g1", p.g1.str()}});
        return j;
    }
    SearchResult r = find_symmetries(eq, cfg);
    j["verdict"] = "FOUND " + std::to_string(r.basis.size());
    d["pool_size"] = r.pool_size;
    d["rank"] = r.rank;
    d["basis"] = Json::array();
    for (const auto& g : r.basis) {
        d["basis"].push_back({{"expr", g.str()},
                              {"order", is_symmetry(eq, g).order},
                              {"time_class", classify_time(g).str()}});
    }
    d["generic_assumptions"] = Json::array();
    for (const auto& a : r.generic_assumptions) d["generic_assumptions"].push_back(a.str() + " != 0");
    return j;
}

Json hypothesis_json(const EvolutionEquation& eq, const std::vector<DiffExpr>& basis, HypothesisMode mode) {
    Json j = make_report("hypothesis");
    HypothesisReport r = hypothesis_report(eq, basis, mode);
    j["verdict"] = to_string(r.prediction);
    j["flags"] = equation_flags(eq);
    j["details"]["mode"] = mode == HypothesisMode::OrderNMinus1 ? "n-1" : "n-2";
    j["details"]["max_order"] = r.max_order;
    j["details"]["completeness_assumed"] = r.completeness_assumed;
    j["details"]["statement"] = r.statement;
    j["details"]["basis"] = Json::array();
    for (std::size_t i = 0; i < basis.size(); ++i)
        j["details"]["basis"].push_back({{"expr", basis[i].str()}, {"time_class", r.classes[i].str()}});
    return j;
}

Json dim_bound_report(int k, int n, int dim_phi) {
    Json j = make_report("dim-bound");
    long long b = dim_bound(k, n, dim_phi);
    j["verdict"] = "dim S^(" + std::to_string(k) + ") <= " + std::to_string(b);
    j["order"] = k;
    j["details"] = {{"k", k}, {"n", n}, {"dim_phi", dim_phi}, {"bound", b}};
    return j;
}

AnsatzConfig parse_ansatz(const std::string& options, const std::set<std::string>& constants) {
    AnsatzConfig cfg;
    std::string text = options;
    for (char& c : text)
        if (c == ',') c = ' ';
    std::istringstream in(text);
    std::string item;
    auto as_int = [](const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            int value = std::stoi(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return value;
        } catch (const std::logic_error&) {
            throw DomainError("ansatz option " + key + " needs an integer, got '" + v + "'");
        }
    };
    while (in >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("ansatz option must be key=value: " + item);
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "order") cfg.order = as_int(key, value);
        else if (key == "t_degree") cfg.t_degree = as_int(key, value);
        else if (key == "x_degree") cfg.x_degree = as_int(key, value);
        else if (key == "base_weight") cfg.base_weight = as_int(key, value);
        else if (key == "min_weight") cfg.min_weight = as_int(key, value);
        else if (key == "max_weight") cfg.max_weight = as_int(key, value);
        else if (key == "max_pool") cfg.max_pool = static_cast<std::size_t>(as_int(key, value));
        else if (key == "lambda") cfg.exp_lambda = parse(value, constants);
        else throw DomainError("unknown ansatz option: " + key);
    }
    return cfg;
}

}  // namespace evsym
