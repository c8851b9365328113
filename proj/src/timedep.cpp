#include "timedep.hpp"

#include <algorithm>

#include "linalg.hpp"

namespace evsym {

namespace {

DiffExpr lambda_of(const TermKey& key) {
    DiffExpr lambda;
    for (const auto& p : key.arg)
        if (p.gen.kind == VarKind::T) lambda.add_term(TermKey{p.consts, {}}, p.coef);
    return lambda;
}

std::string lambda_factor(const DiffExpr& lambda) {
    if (lambda.is_zero()) return "d/dt";
    DiffExpr neg = -lambda;
    std::string s = neg.str();
    if (s.front() == '-') return "(d/dt - " + s.substr(1) + ")";
    return "(d/dt + " + s + ")";
}

}  // namespace

std::string TimeDependenceClass::str() const {
    switch (kind) {
        case Kind::TimeIndependent: return "time-independent";
        case Kind::Polynomial: return "polynomial degree " + std::to_string(degree);
        case Kind::Quasipolynomial: {
            std::string s = "quasipolynomial {";
            for (std::size_t i = 0; i < spectrum.size(); ++i) {
                if (i) s += ", ";
                s += "(" + spectrum[i].lambda.str() + ", " + std::to_string(spectrum[i].max_degree) + ")";
            }
            return s + "}";
        }
        case Kind::Other: return "other";
    }
    return "?";
}

TimeDependenceClass classify_time(const DiffExpr& g) {
    TimeDependenceClass out;
    std::vector<SpectrumEntry> spectrum;
    for (const auto& [key, coef] : g.terms()) {
        DiffExpr lambda = lambda_of(key);
        int m = 0;
        for (const auto& f : key.mono)
            if (f.var.kind == VarKind::T) m = f.exp;
        auto it = std::find_if(spectrum.begin(), spectrum.end(),
                               [&](const SpectrumEntry& s) { return s.lambda == lambda; });
        if (it == spectrum.end())
            spectrum.push_back({lambda, m});
        else
            it->max_degree = std::max(it->max_degree, m);
    }
    std::sort(spectrum.begin(), spectrum.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.lambda.str() < b.lambda.str();
    });
    const bool only_zero = std::all_of(spectrum.begin(), spectrum.end(),
                                       [](const SpectrumEntry& s) { return s.lambda.is_zero(); });
    if (only_zero) {
        int m = spectrum.empty() ? 0 : spectrum.front().max_degree;
        out.kind = m == 0 ? TimeDependenceClass::Kind::TimeIndependent : TimeDependenceClass::Kind::Polynomial;
        out.degree = m;
        return out;
    }
    out.kind = TimeDependenceClass::Kind::Quasipolynomial;
    out.spectrum = std::move(spectrum);
    return out;
}

DiffExpr AnnihilatorOp::apply(const DiffExpr& e) const {
    DiffExpr out;
    DiffExpr d = e;
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        if (l > 0) d = partial(d, Var::t());
        if (!coeffs[l].is_zero()) out += coeffs[l] * d;
    }
    return out;
}

std::string AnnihilatorOp::str() const {
    std::string s;
    for (const auto& f : factors) {
        if (f.max_degree == 0) continue;
        if (!s.empty()) s += " * ";
        if (f.lambda.is_zero() && f.max_degree > 1)
            s += "d^" + std::to_string(f.max_degree) + "/dt^" + std::to_string(f.max_degree);
        else
            s += lambda_factor(f.lambda) + (f.max_degree > 1 ? "^" + std::to_string(f.max_degree) : "");
    }
    return s.empty() ? "1" : s;
}

namespace {

AnnihilatorOp from_factors(std::vector<SpectrumEntry> factors) {
    AnnihilatorOp op;
    op.coeffs = {DiffExpr(1)};
    for (const auto& f : factors) {
        for (int rep = 0; rep < f.max_degree; ++rep) {
            // multiply by (d/dt - lambda)
            std::vector<DiffExpr> next(op.coeffs.size() + 1);
            for (std::size_t l = 0; l < op.coeffs.size(); ++l) {
                next[l + 1] += op.coeffs[l];
                next[l] -= f.lambda * op.coeffs[l];
            }
            op.coeffs = std::move(next);
        }
    }
    op.factors = std::move(factors);
    return op;
}

}  // namespace

AnnihilatorOp annihilator(const DiffExpr& g) {
    if (g.is_zero()) return from_factors({});
    TimeDependenceClass cls = classify_time(g);
    using K = TimeDependenceClass::Kind;
    switch (cls.kind) {
        case K::TimeIndependent: return from_factors({{DiffExpr(), 1}});
        case K::Polynomial: return from_factors({{DiffExpr(), cls.degree + 1}});
        case K::Quasipolynomial: {
            std::vector<SpectrumEntry> factors;
            for (const auto& s : cls.spectrum) factors.push_back({s.lambda, s.max_degree + 1});
            return from_factors(std::move(factors));
        }
        case K::Other: break;
    }
    throw DomainError("t-dependence is not quasipolynomial");
}

AnnihilatorOp reduction_operator(const DiffExpr& g) {
    TimeDependenceClass cls = classify_time(g);
    using K = TimeDependenceClass::Kind;
    switch (cls.kind) {
        case K::TimeIndependent: return from_factors({});
        case K::Polynomial: return from_factors({{DiffExpr(), cls.degree - 1}});
        case K::Quasipolynomial:
            if (cls.spectrum.size() != 1)
                throw DomainError("reduction needs a single exponential factor exp(lambda t)");
            return from_factors({{cls.spectrum.front().lambda, cls.spectrum.front().max_degree}});
        case K::Other: break;
    }
    throw DomainError("t-dependence is not quasipolynomial");
}

ClosureReport dt_closure_check(const EvolutionEquation& eq, const DiffExpr& g) {
    if (!eq.time_independent) throw DomainError("d/dt closure needs a time-independent equation");
    SymmetryReport rep = is_symmetry(eq, g);
    if (!rep.is_symmetry()) throw DomainError("d/dt closure needs a verified symmetry: " + g.str());
    const int k = rep.order;
    ClosureReport out;
    out.dt = partial(g, Var::t());
    out.dt_is_symmetry = is_symmetry(eq, out.dt).is_symmetry();
    out.dt_order_ok = out.dt.is_zero() || u_order(out.dt).value_or(0) <= k;
    out.omega = annihilator(rep.leading ? *rep.leading : g);
    out.omega_g = out.omega.apply(g);
    out.omega_is_symmetry = is_symmetry(eq, out.omega_g).is_symmetry();
    out.omega_order_drops = max_u_index(out.omega_g) <= k - 1;
    return out;
}

std::optional<DiffExpr> constant_ratio(const DiffExpr& a, const DiffExpr& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return DiffExpr();
    Grouped ga = group_terms(a, {});
    Grouped gb = group_terms(b, {});
    const auto& [key, bcoef] = *gb.begin();
    auto it = ga.find(key);
    if (it == ga.end()) return std::nullopt;
    std::optional<DiffExpr> ratio;
    if (bcoef.is_unit()) {
        ratio = it->second.divided_by(bcoef);
    } else {
        try {
            ratio = exact_divide(it->second, bcoef);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }
    if (*ratio * b != a) return std::nullopt;
    return ratio;
}

ScalingResult scaling_test(const EvolutionEquation& eq, const DiffExpr& q0) {
    if (q0.is_zero()) throw DomainError("scaling test needs Q0 != 0");
    if (depends_on(q0, VarKind::T)) throw DomainError("scaling test needs a time-independent Q0");
    ScalingResult out;
    out.bracket_value = bracket(eq.rhs, q0);
    out.lambda = constant_ratio(out.bracket_value, q0);
    if (out.lambda) {
        out.symmetry = DiffExpr::exp(*out.lambda * DiffExpr::t()) * q0;
        out.certified = is_symmetry(eq, out.symmetry).is_symmetry();
        if (!out.certified) throw InternalError("exp(lambda t) Q0 failed verification for Q0 = " + q0.str());
    }
    return out;
}

MasterResult mastersymmetry_test(const EvolutionEquation& eq, const DiffExpr& g0) {
    if (depends_on(g0, VarKind::T)) throw DomainError("mastersymmetry test needs a time-independent G0");
    MasterResult out;
    out.g1 = bracket(eq.rhs, g0);
    out.g1_nonzero = !out.g1.is_zero();
    out.g1_commutes = bracket(eq.rhs, out.g1).is_zero();
    if (out.g1_nonzero) out.mu = constant_ratio(out.g1, eq.rhs);
    if (out.g1_nonzero && out.g1_commutes) {
        out.symmetry = g0 + DiffExpr::t() * out.g1;
        out.certified = is_symmetry(eq, out.symmetry).is_symmetry();
        if (!out.certified) throw InternalError("G0 + t G1 failed verification for G0 = " + g0.str());
    }
    return out;
}

const char* to_string(Prediction p) {
    switch (p) {
        case Prediction::Polynomial: return "all symmetries polynomial in t";
        case Prediction::Quasipolynomial: return "all symmetries quasipolynomial in t";
        case Prediction::None: return "no prediction";
    }
    return "?";
}

HypothesisReport hypothesis_report(const EvolutionEquation& eq, const std::vector<DiffExpr>& basis,
                                   HypothesisMode mode) {
    if (!eq.constant_separant) throw DomainError("time-dependence prediction needs a constant separant");
    if (mode == HypothesisMode::OrderNMinus2 && !eq.kdv_like)
        throw DomainError("the order n-2 criterion needs a KdV-like equation");
    HypothesisReport out;
    out.mode = mode;
    out.max_order = mode == HypothesisMode::OrderNMinus1 ? eq.order - 1 : eq.order - 2;
    bool all_polynomial = true;
    bool any_other = false;
    for (const auto& g : basis) {
        SymmetryReport rep = is_symmetry(eq, g);
        if (!rep.is_symmetry()) throw DomainError("basis element is not a symmetry: " + g.str());
        if (rep.order > out.max_order)
            throw DomainError("basis element has order " + std::to_string(rep.order) + " > " +
                              std::to_string(out.max_order) + ": " + g.str());
        out.classes.push_back(classify_time(g));
        const auto kind = out.classes.back().kind;
        if (kind == TimeDependenceClass::Kind::Quasipolynomial) all_polynomial = false;
        if (kind == TimeDependenceClass::Kind::Other) any_other = true;
    }
    // polynomials are quasipolynomials with lambda = 0
    if (any_other)
        out.prediction = Prediction::None;
    else
        out.prediction = all_polynomial ? Prediction::Polynomial : Prediction::Quasipolynomial;
    const std::string scope = mode == HypothesisMode::OrderNMinus1 ? "S^(n-1)" : "S^(n-2)";
    out.statement = std::string(to_string(out.prediction)) + ", provided the basis spans " + scope;
    return out;
}

}  // namespace evsym
