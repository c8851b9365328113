#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "expr.hpp"

namespace gen {

using evsym::DiffExpr;

struct Shape {
    int max_u = 2;       // highest u index used
    int terms = 3;
    int max_degree = 2;  // per factor
    bool x = true;
    bool t = true;
    bool constants = false;    // named constants a, b
    bool exponentials = false; // exp(c u), exp(c t), exp(x)
    int coef_range = 5;
};

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline evsym::Rational coefficient(std::mt19937& rng, int range) {
    int num = 0;
    while (num == 0) num = uniform(rng, -range, range);
    int den = uniform(rng, 1, 3);
    return evsym::Rational(num, den);
}

inline DiffExpr exponential(std::mt19937& rng) {
    switch (uniform(rng, 0, 2)) {
        case 0: return DiffExpr::exp(DiffExpr(uniform(rng, 1, 2)) * DiffExpr::u(0));
        case 1: return DiffExpr::exp(DiffExpr(uniform(rng, -2, 2)) * DiffExpr::t());
        default: return DiffExpr::exp(DiffExpr::x());
    }
}

inline DiffExpr monomial(std::mt19937& rng, const Shape& s) {
    DiffExpr m(coefficient(rng, s.coef_range));
    const int factors = uniform(rng, 0, 3);
    for (int f = 0; f < factors; ++f) {
        const int which = uniform(rng, 0, 3);
        const int e = uniform(rng, 1, s.max_degree);
        if (which == 0 && s.t)
            m *= DiffExpr::t().pow(e);
        else if (which == 1 && s.x)
            m *= DiffExpr::x().pow(e);
        else
            m *= DiffExpr::u(uniform(rng, 0, s.max_u)).pow(e);
    }
    if (s.constants && uniform(rng, 0, 3) == 0) m *= DiffExpr::constant(uniform(rng, 0, 1) ? "a" : "b");
    if (s.exponentials && uniform(rng, 0, 4) == 0) m *= exponential(rng);
    return m;
}

inline DiffExpr expression(std::mt19937& rng, const Shape& s) {
    DiffExpr e;
    const int n = uniform(rng, 1, s.terms);
    for (int i = 0; i < n; ++i) e += monomial(rng, s);
    return e;
}

/// Right-hand side of exact order n, free of x.
inline DiffExpr rhs(std::mt19937& rng, int n, Shape s) {
    s.x = false;
    s.max_u = n - 1;
    DiffExpr lead(coefficient(rng, 3));
    if (uniform(rng, 0, 2) == 0) lead += expression(rng, s);
    if (lead.is_zero()) lead = DiffExpr(1);
    DiffExpr f = lead * DiffExpr::u(n) + expression(rng, s);
    if (evsym::u_order(f).value_or(0) != n) f = DiffExpr::u(n) + expression(rng, s);
    return f;
}

/// sum_i exp(lambda_i t) t^j p_ij with distinct small integer lambdas.
inline DiffExpr quasipolynomial(std::mt19937& rng) {
    Shape s;
    s.t = false;
    s.max_u = 2;
    DiffExpr g;
    const int blocks = uniform(rng, 1, 3);
    std::vector<int> used;
    for (int b = 0; b < blocks; ++b) {
        int lambda = uniform(rng, -2, 2);
        if (std::find(used.begin(), used.end(), lambda) != used.end()) continue;
        used.push_back(lambda);
        const int m = uniform(rng, 0, 2);
        for (int j = 0; j <= m; ++j)
            g += DiffExpr::exp(DiffExpr(lambda) * DiffExpr::t()) * DiffExpr::t().pow(j) * expression(rng, s);
    }
    return g;
}

}  // namespace gen
