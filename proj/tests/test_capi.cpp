#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <evsym/evsym.h>

#include <memory>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Ctx {
    evsym_context* raw = nullptr;
    Ctx() { REQUIRE(evsym_context_new(&raw) == EVSYM_OK); }
    ~Ctx() { evsym_context_free(raw); }
    operator evsym_context*() const { return raw; }
};

using ExprPtr = std::unique_ptr<evsym_expr, decltype(&evsym_expr_free)>;
using EqPtr = std::unique_ptr<evsym_equation, decltype(&evsym_equation_free)>;

ExprPtr parse(Ctx& ctx, const char* src) {
    evsym_expr* e = nullptr;
    REQUIRE(evsym_parse(ctx, src, &e) == EVSYM_OK);
    return ExprPtr(e, evsym_expr_free);
}

EqPtr equation(Ctx& ctx, const char* src) {
    auto rhs = parse(ctx, src);
    evsym_equation* eq = nullptr;
    REQUIRE(evsym_equation_new(ctx, rhs.get(), &eq) == EVSYM_OK);
    return EqPtr(eq, evsym_equation_free);
}

std::string text(Ctx& ctx, const evsym_expr* e) {
    char* s = nullptr;
    REQUIRE(evsym_expr_to_string(ctx, e, &s) == EVSYM_OK);
    std::string out(s);
    evsym_string_free(s);
    return out;
}

nlohmann::json take(char* s) {
    REQUIRE(s != nullptr);
    auto j = nlohmann::json::parse(s);
    evsym_string_free(s);
    return j;
}

}  // namespace

TEST_CASE("status strings and version") {
    CHECK(std::string(evsym_version()).size() > 0);
    CHECK(std::string(evsym_status_string(EVSYM_OK)) == "ok");
    CHECK(std::string(evsym_status_string(EVSYM_ERR_PARSE)).size() > 0);
}

TEST_CASE("expression round trip") {
    Ctx ctx;
    auto f = parse(ctx, "6*u*u1 + u3");
    CHECK(text(ctx, f.get()) == "u3 + 6*u*u1");

    evsym_expr* d = nullptr;
    REQUIRE(evsym_total_d(ctx, f.get(), &d) == EVSYM_OK);
    ExprPtr dp(d, evsym_expr_free);
    CHECK(text(ctx, d) == "u4 + 6*u*u2 + 6*u1^2");

    evsym_expr* p = nullptr;
    REQUIRE(evsym_partial(ctx, f.get(), "u1", &p) == EVSYM_OK);
    ExprPtr pp(p, evsym_expr_free);
    CHECK(text(ctx, p) == "6*u");

    auto g = parse(ctx, "1 + 6*t*u1");
    evsym_expr* b = nullptr;
    REQUIRE(evsym_bracket(ctx, f.get(), g.get(), &b) == EVSYM_OK);
    ExprPtr bp(b, evsym_expr_free);
    CHECK(text(ctx, b) == "6*u1");

    evsym_expr *s = nullptr, *m = nullptr;
    REQUIRE(evsym_add(ctx, f.get(), g.get(), &s) == EVSYM_OK);
    REQUIRE(evsym_mul(ctx, f.get(), g.get(), &m) == EVSYM_OK);
    ExprPtr sp(s, evsym_expr_free), mp(m, evsym_expr_free);
    int eq = 0, zero = 1;
    CHECK(evsym_expr_equal(ctx, f.get(), f.get(), &eq) == EVSYM_OK);
    CHECK(eq == 1);
    CHECK(evsym_expr_is_zero(ctx, s, &zero) == EVSYM_OK);
    CHECK(zero == 0);
}

TEST_CASE("status codes") {
    Ctx ctx;
    evsym_expr* e = nullptr;
    CHECK(evsym_parse(ctx, "6uu1", &e) == EVSYM_ERR_PARSE);
    CHECK(e == nullptr);
    CHECK(std::string(evsym_last_error(ctx)).find("column 2") != std::string::npos);
    CHECK(evsym_parse(ctx, nullptr, &e) == EVSYM_ERR_INVALID_ARGUMENT);
    CHECK(evsym_parse(ctx, "u", nullptr) == EVSYM_ERR_INVALID_ARGUMENT);
    CHECK(evsym_declare_constants(ctx, "t") == EVSYM_ERR_DOMAIN);
    CHECK(evsym_context_new(nullptr) == EVSYM_ERR_INVALID_ARGUMENT);

    auto u1 = parse(ctx, "u1");
    evsym_equation* eq = nullptr;
    CHECK(evsym_equation_new(ctx, u1.get(), &eq) == EVSYM_ERR_DOMAIN);
    CHECK(eq == nullptr);

    evsym_expr* p = nullptr;
    CHECK(evsym_partial(ctx, u1.get(), "q", &p) == EVSYM_ERR_PARSE);
    CHECK(evsym_hypothesis_json(ctx, nullptr, "u1", EVSYM_MODE_ORDER_N_MINUS_1, nullptr) == EVSYM_ERR_INVALID_ARGUMENT);

    auto kdv = equation(ctx, "u3 + 6*u*u1");
    char* out = nullptr;
    CHECK(evsym_find_json(ctx, kdv.get(), "order=5 max_pool=3", 0, &out) == EVSYM_ERR_RESOURCE);
    CHECK(out == nullptr);
    CHECK(evsym_find_json(ctx, kdv.get(), "order=five", 0, &out) == EVSYM_ERR_DOMAIN);
    CHECK(evsym_corpus_run_json(ctx, "/nonexistent/file.corpus", &out) == EVSYM_ERR_IO);
    CHECK(evsym_dim_bound_json(ctx, 1, 3, 9, &out) == EVSYM_ERR_DOMAIN);
}

TEST_CASE("constants") {
    Ctx ctx;
    evsym_expr* e = nullptr;
    CHECK(evsym_parse(ctx, "c*u1", &e) == EVSYM_ERR_PARSE);
    REQUIRE(evsym_declare_constants(ctx, "c, d") == EVSYM_OK);
    auto eq = equation(ctx, "u3 + u1^3 + c*u1 + d");
    char* out = nullptr;
    REQUIRE(evsym_classify_json(ctx, eq.get(), &out) == EVSYM_OK);
    auto j = take(out);
    CHECK(j["flags"]["constant_separant"] == true);
    CHECK(j["flags"]["kdv_like"] == true);
}

TEST_CASE("reports") {
    Ctx ctx;
    auto kdv = equation(ctx, "u3 + 6*u*u1");
    auto gal = parse(ctx, "1 + 6*t*u1");
    auto u2 = parse(ctx, "u2");

    int sym = 0;
    evsym_expr* res = nullptr;
    REQUIRE(evsym_is_symmetry(ctx, kdv.get(), gal.get(), &sym, &res) == EVSYM_OK);
    CHECK(sym == 1);
    evsym_expr_free(res);
    REQUIRE(evsym_is_symmetry(ctx, kdv.get(), u2.get(), &sym, &res) == EVSYM_OK);
    CHECK(sym == 0);
    CHECK(text(ctx, res) == "12*u1*u2");
    evsym_expr_free(res);

    char* out = nullptr;
    REQUIRE(evsym_check_json(ctx, kdv.get(), gal.get(), &out) == EVSYM_OK);
    auto c = take(out);
    for (const char* key : {"entry", "command", "verdict", "order", "flags", "time_class", "residual", "details"})
        CHECK_MESSAGE(c.contains(key), key);
    CHECK(c["verdict"] == "SYMMETRY");
    CHECK(c["order"] == 1);

    REQUIRE(evsym_check_json(ctx, kdv.get(), u2.get(), &out) == EVSYM_OK);
    auto n = take(out);
    CHECK(n["verdict"] == "NOT A SYMMETRY");
    CHECK(n["residual"] == "12*u1*u2");

    REQUIRE(evsym_determine_json(ctx, kdv.get(), u2.get(), &out) == EVSYM_OK);
    CHECK(take(out)["verdict"] == "NONZERO");

    REQUIRE(evsym_timedep_json(ctx, nullptr, gal.get(), &out) == EVSYM_OK);
    CHECK(take(out)["details"]["annihilator"]["operator"] == "d^2/dt^2");

    auto g0 = parse(ctx, "x*u1 + 2*u");
    REQUIRE(evsym_master_json(ctx, kdv.get(), g0.get(), &out) == EVSYM_OK);
    CHECK(take(out)["verdict"] == "MASTERSYMMETRY");

    REQUIRE(evsym_find_json(ctx, kdv.get(), "order=5", 0, &out) == EVSYM_OK);
    CHECK(take(out)["verdict"] == "FOUND 3");

    REQUIRE(evsym_hypothesis_json(ctx, kdv.get(), "u1; 1 + 6*t*u1", EVSYM_MODE_ORDER_N_MINUS_2, &out) == EVSYM_OK);
    auto h = take(out);
    CHECK(h.dump().find("all symmetries polynomial in t") != std::string::npos);

    REQUIRE(evsym_dim_bound_json(ctx, 5, 3, 0, &out) == EVSYM_OK);
    CHECK(take(out).dump().find("19") != std::string::npos);

    auto heat = equation(ctx, "u2");
    auto ex = parse(ctx, "exp(x)");
    REQUIRE(evsym_scaling_json(ctx, heat.get(), ex.get(), &out) == EVSYM_OK);
    CHECK(take(out)["verdict"] == "LAMBDA 1");
}
