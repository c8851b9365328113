#include <cstdlib>
#include <cstring>
#include <functional>
#include <ios>
#include <new>
#include <sstream>

#include "corpus.hpp"
#include "evsym/evsym.h"
#include "parser.hpp"
#include "report.hpp"

struct evsym_context {
    std::set<std::string> constants;
    std::string last_error;
};

struct evsym_expr {
    evsym::DiffExpr value;
};

struct evsym_equation {
    evsym::EvolutionEquation value;
};

namespace {

using evsym::DiffExpr;

evsym_status fail(evsym_context* ctx, evsym_status s, const std::string& msg) {
    if (ctx) ctx->last_error = msg;
    return s;
}

struct NullArgument : evsym::Error {
    using Error::Error;
};

// Maps exceptions from the core onto status codes.
template <typename Fn>
evsym_status guarded(evsym_context* ctx, Fn fn) {
    if (!ctx) return EVSYM_ERR_INVALID_ARGUMENT;
    try {
        fn();
        ctx->last_error.clear();
        return EVSYM_OK;
    } catch (const NullArgument& e) {
        return fail(ctx, EVSYM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const evsym::ParseError& e) {
        return fail(ctx, EVSYM_ERR_PARSE, e.what());
    } catch (const evsym::DomainError& e) {
        return fail(ctx, EVSYM_ERR_DOMAIN, e.what());
    } catch (const evsym::ResourceError& e) {
        return fail(ctx, EVSYM_ERR_RESOURCE, e.what());
    } catch (const evsym::InternalError& e) {
        return fail(ctx, EVSYM_ERR_INTERNAL, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(ctx, EVSYM_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ctx, EVSYM_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(ctx, EVSYM_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename... Ptrs>
void require(const Ptrs*... ptrs) {
    if (((ptrs == nullptr) || ...)) throw NullArgument("null argument");
}

evsym_status json_out(evsym_context* ctx, char** out, const std::function<evsym::Json()>& fn) {
    return guarded(ctx, [&] {
        require(out);
        *out = dup_string(fn().dump(2));
    });
}

evsym::Var parse_var(const evsym_context* ctx, const std::string& name) {
    if (name == "x") return evsym::Var::x();
    if (name == "t") return evsym::Var::t();
    DiffExpr v = evsym::parse(name, ctx->constants);
    if (v.size() != 1 || v.terms().begin()->first.mono.size() != 1)
        throw evsym::DomainError("not a variable: " + name);
    const evsym::Var& var = v.terms().begin()->first.mono.front().var;
    if (var.is_constant()) throw evsym::DomainError("cannot differentiate with respect to a constant: " + name);
    return var;
}

}  // namespace

extern "C" {

const char* evsym_version(void) { return "0.1.0"; }

const char* evsym_status_string(evsym_status status) {
    switch (status) {
        case EVSYM_OK: return "ok";
        case EVSYM_ERR_PARSE: return "parse error";
        case EVSYM_ERR_INVALID_ARGUMENT: return "invalid argument";
        case EVSYM_ERR_DOMAIN: return "domain error";
        case EVSYM_ERR_RESOURCE: return "resource limit";
        case EVSYM_ERR_INTERNAL: return "internal error";
        case EVSYM_ERR_IO: return "i/o error";
    }
    return "unknown status";
}

evsym_status evsym_context_new(evsym_context** out) {
    if (!out) return EVSYM_ERR_INVALID_ARGUMENT;
    *out = new (std::nothrow) evsym_context();
    return *out ? EVSYM_OK : EVSYM_ERR_RESOURCE;
}

void evsym_context_free(evsym_context* ctx) { delete ctx; }

const char* evsym_last_error(const evsym_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

evsym_status evsym_declare_constants(evsym_context* ctx, const char* names) {
    return guarded(ctx, [&] {
        require(names);
        std::stringstream in(names);
        std::string name;
        std::set<std::string> add;
        while (std::getline(in, name, ',')) {
            name.erase(0, name.find_first_not_of(" \t"));
            name.erase(name.find_last_not_of(" \t") + 1);
            if (name.empty()) continue;
            evsym::validate_constant_name(name);
            add.insert(name);
        }
        ctx->constants.insert(add.begin(), add.end());
    });
}

evsym_status evsym_parse(evsym_context* ctx, const char* source, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(source, out);
        *out = new evsym_expr{evsym::parse(source, ctx->constants)};
    });
}

void evsym_expr_free(evsym_expr* e) { delete e; }

evsym_status evsym_expr_to_string(evsym_context* ctx, const evsym_expr* e, char** out) {
    return guarded(ctx, [&] {
        require(e, out);
        *out = dup_string(e->value.str());
    });
}

void evsym_string_free(char* s) { std::free(s); }

evsym_status evsym_expr_equal(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, int* out) {
    return guarded(ctx, [&] {
        require(a, b, out);
        *out = a->value == b->value ? 1 : 0;
    });
}

evsym_status evsym_expr_is_zero(evsym_context* ctx, const evsym_expr* e, int* out) {
    return guarded(ctx, [&] {
        require(e, out);
        *out = e->value.is_zero() ? 1 : 0;
    });
}

evsym_status evsym_add(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(a, b, out);
        *out = new evsym_expr{a->value + b->value};
    });
}

evsym_status evsym_mul(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(a, b, out);
        *out = new evsym_expr{a->value * b->value};
    });
}

evsym_status evsym_total_d(evsym_context* ctx, const evsym_expr* e, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(e, out);
        *out = new evsym_expr{evsym::total_d(e->value)};
    });
}

evsym_status evsym_partial(evsym_context* ctx, const evsym_expr* e, const char* var, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(e, var, out);
        *out = new evsym_expr{evsym::partial(e->value, parse_var(ctx, var))};
    });
}

evsym_status evsym_bracket(evsym_context* ctx, const evsym_expr* h, const evsym_expr* r, evsym_expr** out) {
    return guarded(ctx, [&] {
        require(h, r, out);
        *out = new evsym_expr{evsym::bracket(h->value, r->value)};
    });
}

evsym_status evsym_equation_new(evsym_context* ctx, const evsym_expr* rhs, evsym_equation** out) {
    return guarded(ctx, [&] {
        require(rhs, out);
        *out = new evsym_equation{evsym::classify(rhs->value)};
    });
}

void evsym_equation_free(evsym_equation* eq) { delete eq; }

evsym_status evsym_is_symmetry(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g, int* is_symmetry,
                               evsym_expr** residual) {
    return guarded(ctx, [&] {
        require(eq, g, is_symmetry);
        evsym::SymmetryReport rep = evsym::is_symmetry(eq->value, g->value);
        *is_symmetry = rep.is_symmetry() ? 1 : 0;
        if (residual) *residual = new evsym_expr{rep.residual};
    });
}

evsym_status evsym_check_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g, char** out) {
    return json_out(ctx, out, [&] {
        require(eq, g);
        return evsym::check_report(eq->value, g->value);
    });
}

evsym_status evsym_classify_json(evsym_context* ctx, const evsym_equation* eq, char** out) {
    return json_out(ctx, out, [&] {
        require(eq);
        return evsym::classify_report(eq->value);
    });
}

evsym_status evsym_determine_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g, char** out) {
    return json_out(ctx, out, [&] {
        require(eq, g);
        return evsym::determine_report(eq->value, g->value);
    });
}

evsym_status evsym_timedep_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g, char** out) {
    return json_out(ctx, out, [&] {
        require(g);
        return evsym::timedep_report(g->value, eq ? &eq->value : nullptr);
    });
}

evsym_status evsym_scaling_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* q0, char** out) {
    return json_out(ctx, out, [&] {
        require(eq, q0);
        return evsym::scaling_report(eq->value, q0->value);
    });
}

evsym_status evsym_master_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g0, char** out) {
    return json_out(ctx, out, [&] {
        require(eq, g0);
        return evsym::master_report(eq->value, g0->value);
    });
}

evsym_status evsym_find_json(evsym_context* ctx, const evsym_equation* eq, const char* options, int linear_t,
                             char** out) {
    return json_out(ctx, out, [&] {
        require(eq);
        evsym::AnsatzConfig cfg = evsym::parse_ansatz(options ? options : "", ctx->constants);
        return evsym::find_report(eq->value, cfg, linear_t != 0);
    });
}

evsym_status evsym_hypothesis_json(evsym_context* ctx, const evsym_equation* eq, const char* basis,
                                   evsym_hypothesis_mode mode, char** out) {
    return json_out(ctx, out, [&] {
        require(eq, basis);
        if (mode != EVSYM_MODE_ORDER_N_MINUS_1 && mode != EVSYM_MODE_ORDER_N_MINUS_2)
            throw NullArgument("unknown hypothesis mode");
        std::vector<DiffExpr> elems;
        std::stringstream in(basis);
        std::string item;
        while (std::getline(in, item, ';'))
            if (item.find_first_not_of(" \t") != std::string::npos)
                elems.push_back(evsym::parse(item, ctx->constants));
        return evsym::hypothesis_json(eq->value, elems,
                                      mode == EVSYM_MODE_ORDER_N_MINUS_2 ? evsym::HypothesisMode::OrderNMinus2
                                                                         : evsym::HypothesisMode::OrderNMinus1);
    });
}

evsym_status evsym_dim_bound_json(evsym_context* ctx, int k, int n, int dim_phi, char** out) {
    return json_out(ctx, out, [&] { return evsym::dim_bound_report(k, n, dim_phi); });
}

evsym_status evsym_corpus_run_json(evsym_context* ctx, const char* path, char** out) {
    return json_out(ctx, out, [&] {
        require(path);
        return evsym::run_corpus(evsym::load_corpus(path));
    });
}

}  // extern "C"
