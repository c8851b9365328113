// Command-line front end over the evsym C API.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evsym/evsym.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kInternal = 3 };

struct Failure {
    evsym_status status;
    std::string message;
};

struct Ctx {
    evsym_context* ptr = nullptr;
    Ctx() {
        if (evsym_context_new(&ptr) != EVSYM_OK) throw Failure{EVSYM_ERR_RESOURCE, "cannot allocate context"};
    }
    ~Ctx() { evsym_context_free(ptr); }
    Ctx(const Ctx&) = delete;
    Ctx& operator=(const Ctx&) = delete;

    void check(evsym_status s) const {
        if (s != EVSYM_OK) throw Failure{s, evsym_last_error(ptr)};
    }
};

using ExprPtr = std::unique_ptr<evsym_expr, decltype(&evsym_expr_free)>;
using EqPtr = std::unique_ptr<evsym_equation, decltype(&evsym_equation_free)>;

ExprPtr parse(const Ctx& ctx, const std::string& src) {
    evsym_expr* e = nullptr;
    ctx.check(evsym_parse(ctx.ptr, src.c_str(), &e));
    return {e, evsym_expr_free};
}

EqPtr equation(const Ctx& ctx, const std::string& src) {
    ExprPtr rhs = parse(ctx, src);
    evsym_equation* eq = nullptr;
    ctx.check(evsym_equation_new(ctx.ptr, rhs.get(), &eq));
    return {eq, evsym_equation_free};
}

Json take_json(const Ctx& ctx, evsym_status s, char*& out) {
    ctx.check(s);
    Json j = Json::parse(out);
    evsym_string_free(out);
    return j;
}

std::string yes_no(const Json& b) { return b.get<bool>() ? "yes" : "no"; }

std::string str_or(const Json& j, const std::string& fallback) {
    return j.is_string() ? j.get<std::string>() : fallback;
}

void print_flags(const Json& f) {
    std::cout << "constant separant: " << yes_no(f["constant_separant"]) << "; KdV-like: " << yes_no(f["kdv_like"])
              << "\n";
}

void print_skip_or(const std::string& label, const Json& section, const std::function<void(const Json&)>& fn) {
    if (section.is_object() && section.contains("skipped")) {
        std::cout << label << ": n/a (" << section["skipped"].get<std::string>() << ")\n";
        return;
    }
    fn(section);
}

void print_representation(const std::string& label, const Json& r) {
    std::cout << label << ": s = " << r["s"] << ", bound r(k,n," << r["q"] << ") = "
              << (r["bound"].is_null() ? std::string("degenerate") : r["bound"].dump()) << ", psi = "
              << r["psi"].get<std::string>();
    for (std::size_t j = 0; j < r["g"].size(); ++j) std::cout << ", g" << j << " = " << r["g"][j].get<std::string>();
    std::cout << "\n";
}

std::string failure_summary(const Json& d) {
    if (d.contains("error")) return d["error"].get<std::string>();
    std::string out;
    if (d.contains("candidate")) out = d["candidate"].get<std::string>() + ": ";
    if (d.contains("failures")) {
        for (std::size_t i = 0; i < d["failures"].size(); ++i)
            out += (i ? "; " : "") + d["failures"][i].get<std::string>();
        return out;
    }
    if (d.contains("missing") && !d["missing"].empty()) return "missing " + d["missing"].dump();
    if (d.contains("report")) {
        const Json& r = d["report"];
        out += r["verdict"].is_string() ? r["verdict"].get<std::string>() : r["verdict"].dump();
        if (r.contains("candidate")) out += " for " + r["candidate"].get<std::string>();
    }
    for (const char* key : {"expected", "expected_g1"})
        if (d.contains(key)) out += ", expected " + (d[key].is_string() ? d[key].get<std::string>() : d[key].dump());
    if (d.contains("actual")) out += ", actual " + d["actual"].dump();
    if (out.rfind(", ", 0) == 0) out.erase(0, 2);
    return out;
}

void render_text(const Json& j) {
    const std::string cmd = j["command"];
    if (cmd == "check") {
        if (j["verdict"] == "NOT A SYMMETRY") {
            std::cout << "NOT A SYMMETRY\nresidual: " << j["residual"].get<std::string>() << "\n";
            return;
        }
        std::cout << "SYMMETRY, order " << j["order"] << ", time dependence: " << j["time_class"]["text"].get<std::string>()
                  << "\n";
        const Json& d = j["details"];
        print_skip_or("leading structure", d["leading_structure"], [](const Json& s) {
            std::cout << "leading structure: " << s["verdict"].get<std::string>() << " ("
                      << s["detail"].get<std::string>() << ")\n";
        });
        print_skip_or("x-descent", d["x_descent"], [](const Json& steps) {
            std::cout << "x-descent:";
            for (const auto& s : steps)
                std::cout << " [" << s["expr"].get<std::string>() << ", order " << s["order"] << " <= " << s["bound"]
                          << "]";
            std::cout << "\n";
        });
        print_skip_or("representation", d["representation"], [](const Json& r) {
            print_representation("representation", r["general"]);
            if (!r["refined"].is_null()) print_representation("refined representation", r["refined"]);
        });
        print_skip_or("lead1", d["lead1"], [](const Json& l) {
            std::cout << "lead1: r = " << l["r"] << ", Q = " << l["q"].get<std::string>() << ", coefficient "
                      << l["actual"].get<std::string>() << " vs " << l["expected"].get<std::string>() << ": "
                      << (l["passed"].get<bool>() ? "pass" : "fail") << "\n";
        });
        print_skip_or("annihilator", d["annihilator"], [](const Json& a) {
            std::cout << "annihilator: " << a["operator"].get<std::string>() << "\n";
        });
    } else if (cmd == "classify") {
        print_flags(j["flags"]);
        std::cout << "order: " << j["order"] << "; time-independent: " << yes_no(j["flags"]["time_independent"])
                  << "; separant: " << j["details"]["separant"].get<std::string>() << "\n";
    } else if (cmd == "determine") {
        std::cout << j["verdict"].get<std::string>() << " (n = " << j["details"]["n"] << ", k = " << j["order"]
                  << ")\n";
        for (const auto& e : j["details"]["equations"])
            std::cout << "E_" << e["l"] << " = " << e["expr"].get<std::string>() << "\n";
        if (!j["residual"].is_null()) std::cout << "residual: " << j["residual"].get<std::string>() << "\n";
    } else if (cmd == "timedep") {
        std::cout << "time dependence: " << j["verdict"].get<std::string>() << "\n";
        std::cout << "annihilator: " << j["details"]["annihilator"]["operator"].get<std::string>() << "\n";
        print_skip_or("reduction", j["details"]["reduction"], [](const Json& r) {
            std::cout << "reduction: " << r["operator"].get<std::string>() << " -> " << r["result"].get<std::string>()
                      << " (" << r["result_class"]["text"].get<std::string>() << ")\n";
        });
        if (j["details"].contains("closure"))
            print_skip_or("d/dt closure", j["details"]["closure"], [](const Json& c) {
                std::cout << "d/dt closure: " << (c["passed"].get<bool>() ? "pass" : "fail") << " (dG/dt = "
                          << c["dt"].get<std::string>() << ")\n";
            });
    } else if (cmd == "scaling") {
        const Json& d = j["details"];
        std::cout << "{F, Q0} = " << d["bracket"].get<std::string>() << "\n";
        if (d["lambda"].is_null())
            std::cout << "lambda: none\n";
        else
            std::cout << "lambda = " << d["lambda"].get<std::string>() << "; certified symmetry: "
                      << d["symmetry"].get<std::string>() << "\n";
    } else if (cmd == "master") {
        const Json& d = j["details"];
        std::cout << "G1 = " << d["g1"].get<std::string>() << "\n";
        std::cout << "{F, G1} = 0: " << yes_no(d["g1_commutes"]) << "; G1 = mu F: " << str_or(d["mu"], "no") << "\n";
        if (d["certified"].get<bool>())
            std::cout << "certified symmetry: " << d["symmetry"].get<std::string>() << "\n";
        else
            std::cout << "no time-dependent symmetry generated\n";
    } else if (cmd == "find") {
        const Json& d = j["details"];
        if (d.contains("pairs")) {
            std::cout << j["verdict"].get<std::string>() << " pair(s)\n";
            for (const auto& p : d["pairs"])
                std::cout << "G0 = " << p["g0"].get<std::string>() << "; G1 = " << p["g1"].get<std::string>() << "\n";
            return;
        }
        std::cout << j["verdict"].get<std::string>() << " (pool " << d["pool_size"] << ", rank " << d["rank"] << ")\n";
        for (const auto& g : d["basis"])
            std::cout << "order " << g["order"] << ": " << g["expr"].get<std::string>() << "\n";
        for (const auto& a : d["generic_assumptions"]) std::cout << "assuming " << a.get<std::string>() << "\n";
    } else if (cmd == "hypothesis") {
        std::cout << j["verdict"].get<std::string>() << "\n";
        for (const auto& b : j["details"]["basis"])
            std::cout << "  " << b["expr"].get<std::string>() << ": " << b["time_class"].get<std::string>() << "\n";
        std::cout << "note: the basis is assumed to span all symmetries of order <= " << j["details"]["max_order"]
                  << "\n";
    } else if (cmd == "dim-bound") {
        std::cout << j["verdict"].get<std::string>() << "\n";
    } else if (cmd == "corpus run") {
        for (const auto& e : j["details"]["entries"]) {
            std::cout << (e["passed"].get<bool>() ? "PASS " : "FAIL ") << e["entry"].get<std::string>() << "\n";
            for (const auto& c : e["details"]["checks"]) {
                if (c["passed"].get<bool>()) continue;
                std::cout << "  failed " << c["check"].get<std::string>() << ": " << failure_summary(c["detail"]) << "\n";
            }
        }
        std::cout << j["details"]["passed"] << "/" << j["details"]["total"] << " entries passed\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

int exit_for(const Json& j) {
    const std::string cmd = j["command"];
    if (cmd == "check") return j["verdict"] == "SYMMETRY" ? kOk : kMismatch;
    if (cmd == "determine") return j["verdict"] == "ALL ZERO" ? kOk : kMismatch;
    if (cmd == "scaling") return j["details"]["lambda"].is_null() ? kMismatch : kOk;
    if (cmd == "master") return j["details"]["certified"].get<bool>() ? kOk : kMismatch;
    if (cmd == "corpus run") return j["passed"].get<bool>() ? kOk : kMismatch;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized symmetries of evolution equations u_t = F(t, u, u1, ..., un)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(evsym_version()));

    std::string format = "text";
    std::string consts;
    std::string eq_src;
    std::string cand_src;
    auto common = [&](CLI::App* sub, bool needs_eq, bool needs_cand, const std::string& cand_help) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--const", consts, "Comma-separated constant names");
        auto* e = sub->add_option("--equation,-e", eq_src, "Right-hand side F");
        if (needs_eq) e->required();
        if (!cand_help.empty()) {
            auto* c = sub->add_option("--candidate,-g", cand_src, cand_help);
            if (needs_cand) c->required();
        }
    };

    auto* check = app.add_subcommand("check", "Symmetry test with structure checks");
    common(check, true, true, "Candidate symmetry G");
    auto* classify = app.add_subcommand("classify", "Equation flags");
    common(classify, true, false, "");
    auto* determine = app.add_subcommand("determine", "Determining equations E_l for a candidate");
    common(determine, true, true, "Candidate G");
    auto* timedep = app.add_subcommand("timedep", "Time-dependence class and annihilator");
    common(timedep, false, true, "Expression G");
    auto* scaling = app.add_subcommand("scaling", "Test {F, Q0} = lambda Q0");
    common(scaling, true, true, "Time-independent Q0");
    auto* master = app.add_subcommand("master", "Test G0 as a mastersymmetry");
    common(master, true, true, "Time-independent G0");

    auto* find = app.add_subcommand("find", "Finite-ansatz symmetry search");
    common(find, true, false, "");
    int order = 1, t_degree = 0, x_degree = 0, base_weight = 2, min_weight = 0, max_pool = 2000;
    std::optional<int> max_weight;
    std::string lambda;
    bool linear_t = false;
    find->add_option("--order,-k", order, "Target order k")->check(CLI::NonNegativeNumber);
    find->add_option("--t-degree,-J", t_degree, "Polynomial degree in t")->check(CLI::NonNegativeNumber);
    find->add_option("--x-degree", x_degree, "Polynomial degree in x")->check(CLI::NonNegativeNumber);
    find->add_option("--base-weight", base_weight, "Weight of u (u_i weighs i + w0)");
    find->add_option("--min-weight", min_weight, "Lowest monomial weight");
    find->add_option("--max-weight", max_weight, "Highest monomial weight (default k + w0)");
    find->add_option("--lambda", lambda, "Fixed exp(lambda t) factor");
    find->add_option("--max-pool", max_pool, "Pool size cap")->check(CLI::PositiveNumber);
    find->add_flag("--linear-t", linear_t, "Search pairs G0, G1 with G0 + t G1 a symmetry");

    auto* hyp = app.add_subcommand("hypothesis", "Predict t-dependence from a low-order basis");
    common(hyp, true, false, "");
    std::vector<std::string> basis;
    std::string mode = "n-1";
    hyp->add_option("--basis", basis, "Symmetries, ';'-separated or repeated")->required();
    hyp->add_option("--mode", mode, "Order limit n-1 or n-2 (KdV-like)")->check(CLI::IsMember({"n-1", "n-2"}));

    auto* dimb = app.add_subcommand("dim-bound", "Upper bound on dim S^(k)");
    int k = 0, n = 3, dim_phi = 0;
    dimb->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    dimb->add_option("-k", k, "Order k")->required();
    dimb->add_option("-n", n, "Equation order n")->required();
    dimb->add_option("--dim-phi", dim_phi, "dim of symmetries depending on x, t only")->required();

    auto* corpus = app.add_subcommand("corpus", "Corpus files");
    corpus->require_subcommand(1);
    auto* corpus_run = corpus->add_subcommand("run", "Evaluate every entry of a corpus file");
    std::string corpus_path;
    corpus_run->add_option("file", corpus_path, "Corpus file")->required();
    corpus_run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        Ctx ctx;
        if (!consts.empty()) ctx.check(evsym_declare_constants(ctx.ptr, consts.c_str()));
        char* out = nullptr;
        Json report;
        if (check->parsed()) {
            auto eq = equation(ctx, eq_src);
            auto g = parse(ctx, cand_src);
            report = take_json(ctx, evsym_check_json(ctx.ptr, eq.get(), g.get(), &out), out);
        } else if (classify->parsed()) {
            auto eq = equation(ctx, eq_src);
            report = take_json(ctx, evsym_classify_json(ctx.ptr, eq.get(), &out), out);
        } else if (determine->parsed()) {
            auto eq = equation(ctx, eq_src);
            auto g = parse(ctx, cand_src);
            report = take_json(ctx, evsym_determine_json(ctx.ptr, eq.get(), g.get(), &out), out);
        } else if (timedep->parsed()) {
            auto g = parse(ctx, cand_src);
            EqPtr eq{nullptr, evsym_equation_free};
            if (!eq_src.empty()) eq = equation(ctx, eq_src);
            report = take_json(ctx, evsym_timedep_json(ctx.ptr, eq.get(), g.get(), &out), out);
        } else if (scaling->parsed()) {
            auto eq = equation(ctx, eq_src);
            auto g = parse(ctx, cand_src);
            report = take_json(ctx, evsym_scaling_json(ctx.ptr, eq.get(), g.get(), &out), out);
        } else if (master->parsed()) {
            auto eq = equation(ctx, eq_src);
            auto g = parse(ctx, cand_src);
            report = take_json(ctx, evsym_master_json(ctx.ptr, eq.get(), g.get(), &out), out);
        } else if (find->parsed()) {
            auto eq = equation(ctx, eq_src);
            std::string opts = "order=" + std::to_string(order) + " t_degree=" + std::to_string(t_degree) +
                               " x_degree=" + std::to_string(x_degree) + " base_weight=" + std::to_string(base_weight) +
                               " min_weight=" + std::to_string(min_weight) + " max_pool=" + std::to_string(max_pool);
            if (max_weight) opts += " max_weight=" + std::to_string(*max_weight);
            if (!lambda.empty()) {
                std::string compact;
                for (char c : lambda)
                    if (c != ' ') compact += c;
                opts += " lambda=" + compact;
            }
            report = take_json(ctx, evsym_find_json(ctx.ptr, eq.get(), opts.c_str(), linear_t ? 1 : 0, &out), out);
        } else if (hyp->parsed()) {
            auto eq = equation(ctx, eq_src);
            auto m = mode == "n-2" ? EVSYM_MODE_ORDER_N_MINUS_2 : EVSYM_MODE_ORDER_N_MINUS_1;
            std::string joined;
            for (const auto& b : basis) joined += b + ";";
            report = take_json(ctx, evsym_hypothesis_json(ctx.ptr, eq.get(), joined.c_str(), m, &out), out);
        } else if (dimb->parsed()) {
            report = take_json(ctx, evsym_dim_bound_json(ctx.ptr, k, n, dim_phi, &out), out);
        } else if (corpus_run->parsed()) {
            report = take_json(ctx, evsym_corpus_run_json(ctx.ptr, corpus_path.c_str(), &out), out);
        }
        if (format == "json")
            std::cout << report.dump(2) << "\n";
        else
            render_text(report);
        return exit_for(report);
    } catch (const Failure& f) {
        std::cerr << "error: " << evsym_status_string(f.status) << ": " << f.message << "\n";
        return f.status == EVSYM_ERR_INTERNAL ? kInternal : kUsage;
    }
}
