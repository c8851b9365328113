#include "calculus.hpp"

#include <sstream>
#include <vector>

namespace evsym {

DiffExpr total_d(const DiffExpr& e) {
    DiffExpr out;
    for (const auto& [key, coef] : e.terms()) {
        for (std::size_t i = 0; i < key.mono.size(); ++i) {
            const Factor& f = key.mono[i];
            if (f.var.kind != VarKind::X && f.var.kind != VarKind::U) continue;
            TermKey k = key;
            if (f.exp == 1)
                k.mono.erase(k.mono.begin() + static_cast<std::ptrdiff_t>(i));
            else
                k.mono[i].exp = f.exp - 1;
            if (f.var.kind == VarKind::U) k.mono = multiply(k.mono, {Factor{Var::u(f.var.index + 1), 1}});
            out.add_term(k, coef * f.exp);
        }
        for (const auto& p : key.arg) {
            if (p.gen.kind == VarKind::T) continue;
            Monomial m = multiply(key.mono, p.consts);
            if (p.gen.kind == VarKind::U) m = multiply(m, {Factor{Var::u(1), 1}});
            out.add_term(TermKey{std::move(m), key.arg}, coef * p.coef);
        }
    }
    return out;
}

DiffExpr total_d_power(const DiffExpr& e, int j) {
    DiffExpr out = e;
    for (int i = 0; i < j && !out.is_zero(); ++i) out = total_d(out);
    return out;
}

long binomial(int q, int p) {
    if (p < 0 || p > q) return 0;
    long r = 1;
    for (int i = 1; i <= p; ++i) r = r * (q - p + i) / i;
    return r;
}

DOperator DOperator::identity() { return monomial(0, 1); }

DOperator DOperator::d() { return monomial(1, 1); }

DOperator DOperator::monomial(int degree, const DiffExpr& coef) {
    DOperator op;
    op.add(degree, coef);
    return op;
}

DiffExpr DOperator::coefficient(int i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? DiffExpr() : it->second;
}

void DOperator::add(int degree, const DiffExpr& coef) {
    if (degree < 0) throw DomainError("negative powers of D are not supported");
    if (coef.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(degree, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

DOperator& DOperator::operator+=(const DOperator& o) {
    for (const auto& [i, c] : o.coeffs_) add(i, c);
    return *this;
}

DOperator& DOperator::operator-=(const DOperator& o) {
    for (const auto& [i, c] : o.coeffs_) add(i, -c);
    return *this;
}

std::string DOperator::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        std::string d = it->first == 0 ? "" : it->first == 1 ? "D" : "D^" + std::to_string(it->first);
        if (d.empty())
            os << '(' << it->second.str() << ')';
        else if (it->second == DiffExpr(1))
            os << d;
        else
            os << '(' << it->second.str() << ")*" << d;
    }
    return os.str();
}

DOperator frechet(const DiffExpr& h) {
    DOperator op;
    int m = max_u_index(h);
    for (int i = 0; i <= m; ++i) op.add(i, partial(h, Var::u(i)));
    return op;
}

DiffExpr ev_apply(const DiffExpr& h, const DiffExpr& r) {
    DiffExpr out;
    int m = max_u_index(r);
    DiffExpr dh = h;
    for (int j = 0; j <= m; ++j) {
        DiffExpr dr = partial(r, Var::u(j));
        if (!dr.is_zero()) out += dh * dr;
        if (j < m) dh = total_d(dh);
    }
    return out;
}

DiffExpr op_apply(const DOperator& a, const DiffExpr& e) {
    DiffExpr out;
    DiffExpr de = e;
    int prev = 0;
    for (const auto& [i, c] : a.coefficients()) {
        de = total_d_power(de, i - prev);
        prev = i;
        out += c * de;
    }
    return out;
}

DOperator op_compose(const DOperator& a, const DOperator& b) {
    // a_i D^i o b_j D^j = a_i sum_s C(i,s) D^s(b_j) D^{i-s+j}
    DOperator out;
    int top = a.degree();
    if (top < 0 || b.is_zero()) return out;
    for (const auto& [j, bj] : b.coefficients()) {
        std::vector<DiffExpr> derivs{bj};
        for (int s = 1; s <= top; ++s) derivs.push_back(total_d(derivs.back()));
        for (const auto& [i, ai] : a.coefficients())
            for (int s = 0; s <= i; ++s)
                if (!derivs[s].is_zero()) out.add(i - s + j, ai * derivs[s] * DiffExpr(binomial(i, s)));
    }
    return out;
}

DOperator op_commutator(const DOperator& a, const DOperator& b) { return op_compose(a, b) - op_compose(b, a); }

DOperator nabla_on_op(const DiffExpr& h, const DOperator& a) {
    DOperator out;
    for (const auto& [i, c] : a.coefficients()) out.add(i, ev_apply(h, c));
    return out;
}

}  // namespace evsym
