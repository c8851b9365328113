#include "symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace evsym {

EvolutionEquation classify(const DiffExpr& rhs) {
    auto ord = u_order(rhs);
    if (!ord || *ord < 2 || max_u_index(rhs) < 2)
        throw DomainError("evolution equation must have order n >= 2: " + rhs.str());
    if (depends_on(rhs, VarKind::X)) throw DomainError("right-hand side must not depend on x: " + rhs.str());

    EvolutionEquation eq;
    eq.rhs = rhs;
    eq.order = *ord;
    eq.separant = partial(rhs, Var::u(eq.order));
    eq.time_independent = !depends_on(rhs, VarKind::T);
    eq.constant_separant = eq.time_independent && eq.separant == DiffExpr(1);
    eq.separant_constant = is_constant(eq.separant) && !eq.constant_separant && eq.time_independent;
    if (eq.constant_separant) {
        eq.f = rhs - DiffExpr::u(eq.order);
        eq.kdv_like = is_constant(partial(*eq.f, Var::u(eq.order - 1)));
    }
    for (int i = 0; i <= eq.order; ++i) {
        if (!is_t_only(partial(rhs, Var::u(eq.order - i)))) break;
        eq.deriv_depth = i;
    }
    return eq;
}

DiffExpr bracket(const DiffExpr& h, const DiffExpr& r) {
    DiffExpr frechet_form = op_apply(frechet(h), r) - op_apply(frechet(r), h);
    DiffExpr field_form = ev_apply(r, h) - ev_apply(h, r);
    if (frechet_form != field_form)
        throw InternalError("bracket forms disagree for h = " + h.str() + ", r = " + r.str());
    return frechet_form;
}

SymmetryReport is_symmetry(const EvolutionEquation& eq, const DiffExpr& g) {
    SymmetryReport rep;
    rep.candidate = g;
    rep.order = u_order(g).value_or(0);
    rep.residual = partial(g, Var::t()) - bracket(eq.rhs, g);
    if (max_u_index(g) >= 0) rep.leading = partial(g, Var::u(rep.order));
    return rep;
}

DOperator cr3_residual_operator(const EvolutionEquation& eq, const DiffExpr& g) {
    DOperator fs = frechet(eq.rhs);
    DOperator gs = frechet(g);
    return nabla_on_op(g, fs) - nabla_on_op(eq.rhs, gs) + op_commutator(fs, gs) - frechet(partial(g, Var::t()));
}

bool DeterminingSystem::all_zero() const {
    return closure.is_zero() &&
           std::all_of(equations.begin(), equations.end(), [](const DiffExpr& e) { return e.is_zero(); });
}

namespace {

/// Memoized D^s of a fixed expression.
class DerivativeTower {
public:
    explicit DerivativeTower(DiffExpr base) : levels_{std::move(base)} {}
    const DiffExpr& operator[](int s) {
        while (static_cast<int>(levels_.size()) <= s) levels_.push_back(total_d(levels_.back()));
        return levels_[static_cast<std::size_t>(s)];
    }

private:
    std::vector<DiffExpr> levels_;
};

/// Highest D-power in the linearized residual: n + k - 1, or n when k = 0.
int top_level(int n, int k) { return k == 0 ? n : n + k - 1; }

}  // namespace

DeterminingSystem determining_system_literal(const EvolutionEquation& eq, const DiffExpr& g) {
    const int n = eq.order;
    const int k = u_order(g).value_or(0);
    const DiffExpr& f = eq.rhs;

    std::vector<DiffExpr> fi;
    std::vector<DiffExpr> gj;
    std::vector<DerivativeTower> dfi;
    std::vector<DerivativeTower> dgj;
    for (int i = 0; i <= n; ++i) {
        fi.push_back(partial(f, Var::u(i)));
        dfi.emplace_back(fi.back());
    }
    for (int j = 0; j <= k; ++j) {
        gj.push_back(partial(g, Var::u(j)));
        dgj.emplace_back(gj.back());
    }
    DerivativeTower dg(g);
    DerivativeTower df(f);

    DeterminingSystem sys;
    sys.n = n;
    sys.k = k;
    sys.method = "literal";
    for (int l = 0; l <= top_level(n, k); ++l) {
        DiffExpr e;
        for (int m = 0; m <= n; ++m) {
            DiffExpr f_ml = partial(fi[static_cast<std::size_t>(m)], Var::u(l));
            if (!f_ml.is_zero()) e += dg[m] * f_ml;
        }
        for (int r = 0; r <= k; ++r) {
            DiffExpr g_rl = partial(gj[static_cast<std::size_t>(r)], Var::u(l));
            if (!g_rl.is_zero()) e -= df[r] * g_rl;
        }
        for (int j = std::max(0, l + 1 - n); j <= k; ++j) {
            for (int i = std::max(l + 1 - j, 0); i <= n; ++i) {
                const int s = i + j - l;
                const auto ui = static_cast<std::size_t>(i);
                const auto uj = static_cast<std::size_t>(j);
                if (long c = binomial(i, s); c != 0 && !fi[ui].is_zero())
                    e += DiffExpr(c) * fi[ui] * dgj[uj][s];
                if (long c = binomial(j, s); c != 0 && !gj[uj].is_zero())
                    e -= DiffExpr(c) * gj[uj] * dfi[ui][s];
            }
        }
        e -= partial(partial(g, Var::u(l)), Var::t());
        sys.equations.push_back(std::move(e));
    }
    sys.closure = partial(g, Var::t()) - bracket(f, g);
    return sys;
}

DeterminingSystem determining_system_from_operator(const EvolutionEquation& eq, const DiffExpr& g) {
    const int n = eq.order;
    const int k = u_order(g).value_or(0);
    DOperator op = cr3_residual_operator(eq, g);
    if (op.degree() > top_level(n, k))
        throw InternalError("linearized residual has degree " + std::to_string(op.degree()) + " > " +
                            std::to_string(top_level(n, k)));
    DeterminingSystem sys;
    sys.n = n;
    sys.k = k;
    sys.method = "operator";
    for (int l = 0; l <= top_level(n, k); ++l) sys.equations.push_back(op.coefficient(l));
    sys.closure = partial(g, Var::t()) - bracket(eq.rhs, g);
    return sys;
}

DeterminingSystem determining_system(const EvolutionEquation& eq, const DiffExpr& g) {
    DeterminingSystem a = determining_system_literal(eq, g);
    DeterminingSystem b = determining_system_from_operator(eq, g);
    for (std::size_t l = 0; l < a.equations.size(); ++l) {
        if (a.equations[l] != b.equations[l])
            throw InternalError("determining equation E_" + std::to_string(l) +
                                " differs between constructions for G = " + g.str());
    }
    a.method = "cross-checked";
    return a;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

/// Exact p/q-th power of a single-term expression, if it exists in the class.
std::optional<DiffExpr> fractional_power(const DiffExpr& e, int p, int q) {
    int g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (q == 1) return e.pow(p);
    if (e.size() != 1) return std::nullopt;
    const auto& [key, coef] = *e.terms().begin();
    TermKey root;
    for (const auto& f : key.mono) {
        if (f.exp % q != 0) return std::nullopt;
        root.mono.push_back({f.var, f.exp / q});
    }
    for (const auto& part : key.arg) root.arg.push_back({part.gen, part.consts, part.coef / q});
    if (coef < 0 && q % 2 == 0) return std::nullopt;
    mpz_class num;
    mpz_class den;
    if (mpz_root(num.get_mpz_t(), coef.get_num_mpz_t(), static_cast<unsigned long>(q)) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), coef.get_den_mpz_t(), static_cast<unsigned long>(q)) == 0) return std::nullopt;
    return DiffExpr::term(Rational(num, den), root).pow(p);
}

}  // namespace

LeadingStructure leading_structure_check(const EvolutionEquation& eq, const SymmetryReport& report) {
    if (!report.is_symmetry()) throw DomainError("leading structure check needs a verified symmetry");
    if (report.order < 2 || !report.leading)
        throw DomainError("leading structure check needs order k >= 2, got k = " + std::to_string(report.order));
    const int k = report.order;
    const int n = eq.order;

    LeadingStructure out;
    out.derivative = *report.leading;
    if (is_t_only(eq.separant)) {
        // separant^{k/n} depends on t only, so dG/du_k must as well
        if (is_t_only(out.derivative)) {
            out.verdict = Verdict::Pass;
            if (eq.separant == DiffExpr(1)) out.c_k = out.derivative;
            out.detail = "dG/du_k depends on t only";
        } else {
            out.verdict = Verdict::Fail;
            out.detail = "dG/du_k depends on x or u";
        }
        return out;
    }

    auto power = fractional_power(eq.separant, k, n);
    if (!power) {
        out.detail = "separant^(" + std::to_string(k) + "/" + std::to_string(n) + ") is not expressible";
        return out;
    }
    Grouped p_groups = group_terms(*power, {VarKind::T});
    Grouped g_groups = group_terms(out.derivative, {VarKind::T});
    for (const auto& [key, coef] : p_groups) {
        if (!coef.is_unit()) continue;
        auto it = g_groups.find(key);
        DiffExpr c = it == g_groups.end() ? DiffExpr() : it->second.divided_by(coef);
        if (c * *power == out.derivative && !c.is_zero()) {
            out.verdict = Verdict::Pass;
            out.c_k = c;
            out.detail = "dG/du_k = c_k(t) * separant^(k/n)";
        } else {
            out.verdict = Verdict::Fail;
            out.detail = "dG/du_k is not a t-only multiple of separant^(k/n)";
        }
        return out;
    }
    out.detail = "no invertible coefficient to extract c_k(t)";
    return out;
}

int r_bound(int k, int n, int q) {
    if (k < 0) throw DomainError("r_bound needs k >= 0");
    if (n < 2) throw DomainError("r_bound needs n >= 2");
    if (q < -1 || q > 1) throw DomainError("r_bound needs q in {-1, 0, 1}");
    const int quot = k / (n - 1);
    if (q == -1) return quot;
    if (n == 2) throw DomainError("r_bound: degenerate case n = 2 with q = " + std::to_string(q));
    if (k % (n - 1) <= q) return std::max(0, quot - 1);
    return quot;
}

std::vector<DescentStep> x_descent(const EvolutionEquation& eq, const SymmetryReport& report) {
    if (!report.is_symmetry()) throw DomainError("x-descent needs a verified symmetry");
    constexpr int max_steps = 64;
    const int n = eq.order;
    std::vector<DescentStep> trace;
    DiffExpr current = report.candidate;
    int order = report.order;
    for (int step = 0; step < max_steps; ++step) {
        DescentStep s;
        s.expr = partial(current, Var::x());
        s.bound = std::max(1, order - n + 1);
        s.order = s.expr.is_zero() ? -1 : u_order(s.expr).value_or(0);
        if (s.order > s.bound)
            throw InternalError("order of dG/dx is " + std::to_string(s.order) + " > " + std::to_string(s.bound) +
                                " for G = " + current.str());
        if (!is_symmetry(eq, s.expr).is_symmetry())
            throw InternalError("dG/dx is not a symmetry for G = " + current.str());
        trace.push_back(s);
        if (s.expr.is_zero() || s.order <= n) return trace;
        current = s.expr;
        order = s.order;
    }
    throw DomainError("x-descent did not terminate (x inside an exponential?)");
}

namespace {

Representation split_representation(const DiffExpr& g, int k, int n, int q, int psi_max_index) {
    Representation rep;
    rep.q = q;
    std::vector<DiffExpr> parts;
    for (const auto& [key, coef] : g.terms()) {
        DiffExpr term = DiffExpr::term(coef, key);
        if (max_u_index(term) <= psi_max_index) {
            rep.psi += term;
            continue;
        }
        for (const auto& p : key.arg)
            if (p.gen.kind == VarKind::X)
                throw DomainError("x inside an exponential of a higher-order term: " + term.str());
        int j = degree(term, Var::x());
        TermKey stripped = key;
        std::erase_if(stripped.mono, [](const Factor& f) { return f.var.kind == VarKind::X; });
        if (static_cast<int>(parts.size()) <= j) parts.resize(static_cast<std::size_t>(j) + 1);
        parts[static_cast<std::size_t>(j)].add_term(stripped, coef);
    }
    rep.g = parts.empty() ? std::vector<DiffExpr>{DiffExpr()} : parts;
    rep.s = static_cast<int>(rep.g.size()) - 1;
    try {
        rep.bound = r_bound(k, n, q);
    } catch (const DomainError&) {
        rep.bound.reset();
    }
    for (int j = 0; j <= rep.s; ++j) {
        const DiffExpr& gj = rep.g[static_cast<std::size_t>(j)];
        if (gj.is_zero()) continue;
        int limit = k - j * (n - 1);
        if (max_u_index(gj) > limit)
            throw InternalError("g_" + std::to_string(j) + " has order " + std::to_string(max_u_index(gj)) + " > " +
                                std::to_string(limit));
    }
    if (rep.bound && rep.s > *rep.bound)
        throw InternalError("x-degree s = " + std::to_string(rep.s) + " exceeds r_{k,n,q} = " +
                            std::to_string(*rep.bound));
    return rep;
}

}  // namespace

RepresentationReport representation_decompose(const EvolutionEquation& eq, const SymmetryReport& report) {
    if (!report.is_symmetry()) throw DomainError("representation needs a verified symmetry");
    const int n = eq.order;
    const int k = report.order;
    RepresentationReport out;
    out.k = k;
    out.general = split_representation(report.candidate, k, n, 1, 1);
    if (eq.deriv_depth >= 0) {
        const int j = eq.deriv_depth;
        const int first = std::max(1 - j, 0);
        Representation refined = split_representation(report.candidate, k, n, -std::min(1, j), first - 1);
        for (int r = first; r <= 1; ++r) {
            if (!partial(refined.psi, Var::u(r)).is_zero())
                throw InternalError("psi depends on u_" + std::to_string(r));
            refined.psi_free_of.push_back(r);
        }
        out.refined = std::move(refined);
    }
    return out;
}

Lead1Result lead1_check(const EvolutionEquation& eq, const SymmetryReport& report) {
    if (!eq.constant_separant) throw DomainError("leading-coefficient descent needs a constant separant");
    if (!eq.time_independent) throw DomainError("leading-coefficient descent needs a time-independent equation");
    if (!report.is_symmetry()) throw DomainError("leading-coefficient descent needs a verified symmetry");
    const int n = eq.order;
    const int k = report.order;
    if (k <= n - 1 || !report.leading)
        throw DomainError("leading-coefficient descent needs order k > n - 1, got k = " + std::to_string(k));

    Lead1Result res;
    res.r = r_bound(k, n, 0);
    res.q_expr = partial(report.candidate, Var::x(), res.r);
    res.expected_order = k - res.r * (n - 1);
    mpz_class scale = 1;
    for (int i = 0; i < res.r; ++i) scale *= n;
    res.expected = partial(*report.leading, Var::t(), res.r) * DiffExpr(Rational(1, scale));
    res.actual = partial(res.q_expr, Var::u(res.expected_order));
    res.descended_to_zero = res.q_expr.is_zero();
    res.order_ok = res.descended_to_zero || max_u_index(res.q_expr) <= n - 1;
    res.passed = res.order_ok && res.actual == res.expected;
    return res;
}

long long dim_bound(int k, int n, int dim_phi) {
    if (n < 2) throw DomainError("dim_bound needs n >= 2");
    if (k < 0) throw DomainError("dim_bound needs k >= 0");
    if (dim_phi < 0 || dim_phi > n)
        throw DomainError("dim Phi must lie in [0, n] for a non-linearizable equation");
    auto low = [&](int j) { return static_cast<long long>(dim_phi) + j + 2; };
    if (k <= n - 2) return low(k);
    long long total = low(n - 2);
    for (int j = n - 1; j <= k; ++j) total += low(j % (n - 1)) + j / (n - 1);
    return total;
}

}  // namespace evsym
