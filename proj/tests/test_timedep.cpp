#include "doctest.h"
#include "parser.hpp"
#include "random_expr.hpp"
#include "timedep.hpp"

using namespace evsym;
using Kind = TimeDependenceClass::Kind;

namespace {
DiffExpr P(const char* s) { return parse(s, {"a", "b", "c", "d"}); }
const EvolutionEquation& kdv() {
    static const EvolutionEquation eq = classify(P("u3 + 6*u*u1"));
    return eq;
}

bool linear_or_exponential(const TimeDependenceClass& c) {
    if (c.kind == Kind::TimeIndependent) return true;
    if (c.kind == Kind::Polynomial) return c.degree == 1;
    if (c.kind == Kind::Quasipolynomial)
        return std::all_of(c.spectrum.begin(), c.spectrum.end(), [](const SpectrumEntry& e) { return e.max_degree == 0; });
    return false;
}
}  // namespace

TEST_CASE("classify_time") {
    CHECK(classify_time(P("u2")).kind == Kind::TimeIndependent);
    auto gal = classify_time(P("1 + 6*t*u1"));
    CHECK(gal.kind == Kind::Polynomial);
    CHECK(gal.degree == 1);
    CHECK(gal.str() == "polynomial degree 1");
    auto e = classify_time(P("exp(3*t)*u1"));
    CHECK(e.kind == Kind::Quasipolynomial);
    REQUIRE(e.spectrum.size() == 1);
    CHECK(e.spectrum[0].lambda == DiffExpr(3));
    CHECK(e.spectrum[0].max_degree == 0);
    CHECK(e.str() == "quasipolynomial {(3, 0)}");
    auto mixed = classify_time(P("t^2*u + t*exp(-t)"));
    CHECK(mixed.kind == Kind::Quasipolynomial);
    CHECK(mixed.spectrum.size() == 2);
    auto sym = classify_time(P("exp(a*t)*u1"));
    CHECK(sym.kind == Kind::Quasipolynomial);
    CHECK(sym.spectrum[0].lambda == P("a"));
    auto tu = classify_time(P("exp(t + u)"));
    CHECK(tu.kind == Kind::Quasipolynomial);
    CHECK(tu.str() == "quasipolynomial {(1, 0)}");
}

TEST_CASE("annihilator examples") {
    auto g = annihilator(P("1 + 6*t*u1"));
    CHECK(g.str() == "d^2/dt^2");
    CHECK(g.order() == 2);
    CHECK(annihilator(P("exp(2*t)*u")).str() == "(d/dt - 2)");
    auto j = annihilator(P("t*exp(2*t)*u1"));
    CHECK(j.str() == "(d/dt - 2)^2");
    CHECK(j.coeffs == std::vector<DiffExpr>{DiffExpr(4), DiffExpr(-4), DiffExpr(1)});
    CHECK(annihilator(P("u1")).str() == "d/dt");
    CHECK(annihilator(P("x*u1 + 2*u + 3*t*(u3 + 6*u*u1)")).apply(P("x*u1 + 2*u + 3*t*(u3 + 6*u*u1)")).is_zero());
}

TEST_CASE("property: annihilator kills its target") {
    std::mt19937 rng(41);
    for (int i = 0; i < 1000; ++i) {
        DiffExpr g = gen::quasipolynomial(rng);
        auto op = annihilator(g);
        CHECK(op.apply(g).is_zero());
        auto cls = classify_time(g);
        int expected = 0;
        if (cls.kind == Kind::Polynomial) expected = cls.degree + 1;
        else if (cls.kind == Kind::TimeIndependent) expected = 1;
        for (const auto& e : cls.spectrum) expected += e.max_degree + 1;
        if (g.is_zero()) continue;
        CHECK(op.order() == expected);
        CHECK(op.coeffs.back() == DiffExpr(1));
    }
}

TEST_CASE("property: reduction yields linear or exponential t-dependence") {
    std::mt19937 rng(42);
    gen::Shape s;
    s.t = false;
    for (int i = 0; i < 500; ++i) {
        const int lambda = gen::uniform(rng, -2, 2);
        const int m = gen::uniform(rng, 0, 3);
        DiffExpr g;
        for (int j = 0; j <= m; ++j)
            g += DiffExpr::exp(DiffExpr(lambda) * DiffExpr::t()) * DiffExpr::t().pow(j) * gen::expression(rng, s);
        auto red = reduction_operator(g);
        auto cls = classify_time(red.apply(g));
        CHECK(linear_or_exponential(cls));
    }
    CHECK(reduction_operator(P("u1")).str() == "1");
    CHECK(reduction_operator(P("t^3*u1")).str() == "d^2/dt^2");
    CHECK(reduction_operator(P("t^2*exp(2*t)*u1")).str() == "(d/dt - 2)^2");
    CHECK_THROWS_AS(reduction_operator(P("exp(t)*u + exp(2*t)")), DomainError);
}

TEST_CASE("property: d/dt lowers polynomial degree by one") {
    std::mt19937 rng(43);
    gen::Shape s;
    s.t = false;
    for (int i = 0; i < 300; ++i) {
        const int p = gen::uniform(rng, 1, 4);
        DiffExpr top;
        while (top.is_zero()) top = gen::expression(rng, s);
        DiffExpr g = DiffExpr::t().pow(p) * top;
        for (int j = 0; j < p; ++j) g += DiffExpr::t().pow(j) * gen::expression(rng, s);
        auto before = classify_time(g);
        REQUIRE(before.kind == Kind::Polynomial);
        auto after = classify_time(partial(g, Var::t()));
        const int drop = after.kind == Kind::TimeIndependent ? 0 : after.degree;
        CHECK(drop == before.degree - 1);
    }
}

TEST_CASE("d/dt closure") {
    auto gal = dt_closure_check(kdv(), P("1 + 6*t*u1"));
    CHECK(gal.dt == P("6*u1"));
    CHECK(gal.passed());
    auto triv = dt_closure_check(kdv(), P("u1"));
    CHECK(triv.dt.is_zero());
    CHECK(triv.passed());
    auto sc = dt_closure_check(kdv(), P("x*u1 + 2*u + 3*t*(u3 + 6*u*u1)"));
    CHECK(sc.dt == P("3*u3 + 18*u*u1"));
    CHECK(sc.passed());
    CHECK_THROWS_AS(dt_closure_check(kdv(), P("u2")), DomainError);
    CHECK_THROWS_AS(dt_closure_check(classify(P("t*u2")), P("u1")), DomainError);
}

TEST_CASE("scaling test") {
    auto heat = classify(P("u2"));
    auto r = scaling_test(heat, P("exp(x)"));
    REQUIRE(r.lambda.has_value());
    CHECK(*r.lambda == DiffExpr(1));
    CHECK(r.certified);
    CHECK(r.symmetry == P("exp(x + t)"));
    auto z = scaling_test(kdv(), P("u1"));
    REQUIRE(z.lambda.has_value());
    CHECK(z.lambda->is_zero());
    CHECK_FALSE(scaling_test(kdv(), P("u2")).lambda.has_value());
    CHECK_THROWS_AS(scaling_test(kdv(), DiffExpr()), DomainError);
    CHECK_THROWS_AS(scaling_test(kdv(), P("t*u1")), DomainError);
}

TEST_CASE("mastersymmetry test") {
    auto m = mastersymmetry_test(kdv(), P("x*u1 + 2*u"));
    CHECK(m.g1 == P("3*u3 + 18*u*u1"));
    CHECK(m.g1_nonzero);
    CHECK(m.g1_commutes);
    REQUIRE(m.mu.has_value());
    CHECK(*m.mu == DiffExpr(3));
    CHECK(m.certified);
    CHECK(m.symmetry == P("x*u1 + 2*u + 3*t*(u3 + 6*u*u1)"));

    auto d = mastersymmetry_test(kdv(), P("u1"));
    CHECK_FALSE(d.g1_nonzero);
    CHECK_FALSE(d.certified);
    CHECK(mastersymmetry_test(kdv(), kdv().rhs).g1.is_zero());

    auto gal = mastersymmetry_test(kdv(), DiffExpr(1));
    CHECK(gal.g1 == P("6*u1"));
    CHECK(gal.certified);
    CHECK_FALSE(gal.mu.has_value());
}

TEST_CASE("constant ratio") {
    CHECK(constant_ratio(P("3*a*u1"), P("u1")) == P("3*a"));
    CHECK_FALSE(constant_ratio(P("u1 + u"), P("u1")).has_value());
    CHECK(constant_ratio(DiffExpr(), P("u1")) == DiffExpr());
}

TEST_CASE("hypothesis report") {
    auto e1 = classify(P("u3 + u*u1"));
    auto r = hypothesis_report(e1, {P("u1"), P("1 + t*u1")}, HypothesisMode::OrderNMinus2);
    CHECK(r.prediction == Prediction::Polynomial);
    CHECK(std::string(to_string(r.prediction)) == "all symmetries polynomial in t");
    CHECK(r.completeness_assumed);
    CHECK(hypothesis_report(kdv(), {P("u1")}, HypothesisMode::OrderNMinus2).prediction == Prediction::Polynomial);

    auto growth = classify(P("u2 + u"));
    auto q = hypothesis_report(growth, {P("exp(t)"), P("u1")}, HypothesisMode::OrderNMinus1);
    CHECK(q.prediction == Prediction::Quasipolynomial);

    CHECK_THROWS_AS(hypothesis_report(kdv(), {P("u2")}, HypothesisMode::OrderNMinus1), DomainError);
    CHECK_THROWS_AS(hypothesis_report(kdv(), {P("u3 + 6*u*u1")}, HypothesisMode::OrderNMinus1), DomainError);
    CHECK_THROWS_AS(hypothesis_report(classify(P("u*u3")), {}, HypothesisMode::OrderNMinus1), DomainError);
    CHECK_THROWS_AS(hypothesis_report(classify(P("u2 + u1^2")), {}, HypothesisMode::OrderNMinus2), DomainError);
}
