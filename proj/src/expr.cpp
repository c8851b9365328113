#include "expr.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace evsym {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

int cmp_rational(const Rational& a, const Rational& b) { return sign(cmp(a, b)); }

bool is_exp_gen(const Var& v) {
    return v.kind == VarKind::T || v.kind == VarKind::X || (v.kind == VarKind::U && v.index == 0);
}

Monomial constant_part(const Monomial& m) {
    Monomial out;
    for (const auto& f : m)
        if (f.var.is_constant()) out.push_back(f);
    return out;
}

std::string monomial_str(const Monomial& m) {
    std::string out;
    for (const auto& f : m) {
        if (!out.empty()) out += '*';
        out += f.var.str();
        if (f.exp != 1) out += '^' + std::to_string(f.exp);
    }
    return out;
}

}  // namespace

std::string to_string(const Rational& r) { return r.get_str(); }

std::string Var::str() const {
    switch (kind) {
        case VarKind::Const: return name;
        case VarKind::T: return "t";
        case VarKind::X: return "x";
        case VarKind::U: return index == 0 ? "u" : "u" + std::to_string(index);
    }
    return {};
}

int compare(const Var& a, const Var& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.kind == VarKind::Const) return sign(a.name.compare(b.name));
    if (a.kind == VarKind::U) return sign(a.index - b.index);
    return 0;
}

int compare(const Monomial& a, const Monomial& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    while (ia != a.rend() || ib != b.rend()) {
        if (ib == b.rend() || (ia != a.rend() && compare(ib->var, ia->var) < 0))
            return ia->exp > 0 ? 1 : -1;
        if (ia == a.rend() || compare(ia->var, ib->var) < 0) return ib->exp > 0 ? -1 : 1;
        if (ia->exp != ib->exp) return ia->exp > ib->exp ? 1 : -1;
        ++ia;
        ++ib;
    }
    return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && compare(ia->var, ib->var) < 0)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || compare(ib->var, ia->var) < 0) {
            out.push_back(*ib++);
        } else {
            int e = ia->exp + ib->exp;
            if (e != 0) out.push_back({ia->var, e});
            ++ia;
            ++ib;
        }
    }
    return out;
}

namespace {

int compare_part_key(const ExpPart& a, const ExpPart& b) {
    if (int c = compare(a.gen, b.gen)) return c;
    return compare(a.consts, b.consts);
}

}  // namespace

int compare(const ExpArg& a, const ExpArg& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare_part_key(a[i], b[i])) return c;
        if (int c = cmp_rational(a[i].coef, b[i].coef)) return c;
    }
    return sign(static_cast<int>(a.size()) - static_cast<int>(b.size()));
}

ExpArg add(const ExpArg& a, const ExpArg& b) {
    ExpArg out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        int c = ia == a.end() ? 1 : ib == b.end() ? -1 : compare_part_key(*ia, *ib);
        if (c < 0) {
            out.push_back(*ia++);
        } else if (c > 0) {
            out.push_back(*ib++);
        } else {
            Rational s = ia->coef + ib->coef;
            if (s != 0) out.push_back({ia->gen, ia->consts, s});
            ++ia;
            ++ib;
        }
    }
    return out;
}

ExpArg negate(const ExpArg& a) {
    ExpArg out = a;
    for (auto& p : out) p.coef = -p.coef;
    return out;
}

int compare(const TermKey& a, const TermKey& b) {
    if (int c = compare(a.mono, b.mono)) return c;
    return compare(a.arg, b.arg);
}

// ---------------------------------------------------------------------------

DiffExpr::DiffExpr(const Rational& c) {
    if (c == 0) return;
    Rational v = c;
    v.canonicalize();
    terms_.emplace(TermKey{}, std::move(v));
}

DiffExpr DiffExpr::var(const Var& v) {
    DiffExpr e;
    e.terms_.emplace(TermKey{{Factor{v, 1}}, {}}, Rational(1));
    return e;
}

DiffExpr DiffExpr::term(const Rational& coef, TermKey key) {
    DiffExpr e;
    if (coef != 0) e.terms_.emplace(std::move(key), coef);
    return e;
}

DiffExpr DiffExpr::exp(const DiffExpr& arg) { return term(1, TermKey{{}, to_exp_arg(arg)}); }

void DiffExpr::add_term(const TermKey& key, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffExpr& DiffExpr::operator+=(const DiffExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

DiffExpr& DiffExpr::operator-=(const DiffExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

DiffExpr DiffExpr::operator-() const {
    DiffExpr out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

DiffExpr operator*(const DiffExpr& a, const DiffExpr& b) {
    DiffExpr out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.add_term(TermKey{multiply(ka.mono, kb.mono), add(ka.arg, kb.arg)}, ca * cb);
    return out;
}

DiffExpr& DiffExpr::operator*=(const DiffExpr& o) { return *this = *this * o; }

bool operator==(const DiffExpr& a, const DiffExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
        if (compare(ia->first, ib->first) != 0 || ia->second != ib->second) return false;
    }
    return true;
}

bool DiffExpr::is_unit() const {
    if (terms_.size() != 1) return false;
    const auto& mono = terms_.begin()->first.mono;
    return std::all_of(mono.begin(), mono.end(), [](const Factor& f) { return f.var.is_constant(); });
}

DiffExpr DiffExpr::pow(int n) const {
    if (n < 0) {
        if (!is_unit())
            throw DomainError("negative power of a non-scalar expression: (" + str() + ")^" +
                              std::to_string(n));
        const auto& [key, coef] = *terms_.begin();
        TermKey inv;
        for (const auto& f : key.mono) inv.mono.push_back({f.var, -f.exp});
        inv.arg = negate(key.arg);
        return term(1 / coef, std::move(inv)).pow(-n);
    }
    DiffExpr result(1);
    DiffExpr base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

DiffExpr DiffExpr::divided_by(const DiffExpr& unit) const {
    if (unit.is_zero()) throw DomainError("division by zero");
    if (!unit.is_unit()) throw DomainError("division by a non-scalar expression: " + unit.str());
    return *this * unit.pow(-1);
}

std::string DiffExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coef] : terms_) {
        std::string factors = monomial_str(key.mono);
        if (!key.arg.empty()) {
            if (!factors.empty()) factors += '*';
            factors += "exp(" + from_exp_arg(key.arg).str() + ")";
        }
        Rational mag = abs(coef);
        bool negative = coef < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (factors.empty()) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << factors;
        } else {
            os << to_string(mag) << '*' << factors;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

ExpArg to_exp_arg(const DiffExpr& e) {
    ExpArg out;
    for (const auto& [key, coef] : e.terms()) {
        const Factor* gen = nullptr;
        bool ok = key.arg.empty();
        for (const auto& f : key.mono) {
            if (f.var.is_constant()) continue;
            if (gen || f.exp != 1 || !is_exp_gen(f.var)) ok = false;
            gen = &f;
        }
        if (!ok || !gen)
            throw DomainError("exponential argument must be linear in x, t, u with constant coefficients: " +
                              e.str());
        out = add(out, ExpArg{ExpPart{gen->var, constant_part(key.mono), coef}});
    }
    return out;
}

DiffExpr from_exp_arg(const ExpArg& arg) {
    DiffExpr out;
    for (const auto& p : arg) out.add_term(TermKey{multiply(p.consts, {Factor{p.gen, 1}}), {}}, p.coef);
    return out;
}

DiffExpr partial(const DiffExpr& e, const Var& v) {
    if (v.is_constant()) throw DomainError("partial derivatives are taken with respect to x, t or u_i only");
    DiffExpr out;
    for (const auto& [key, coef] : e.terms()) {
        for (std::size_t i = 0; i < key.mono.size(); ++i) {
            if (key.mono[i].var != v) continue;
            TermKey k = key;
            int ex = k.mono[i].exp;
            if (ex == 1)
                k.mono.erase(k.mono.begin() + static_cast<std::ptrdiff_t>(i));
            else
                k.mono[i].exp = ex - 1;
            out.add_term(k, coef * ex);
        }
        for (const auto& p : key.arg) {
            if (p.gen != v) continue;
            out.add_term(TermKey{multiply(key.mono, p.consts), key.arg}, coef * p.coef);
        }
    }
    return out;
}

DiffExpr partial(const DiffExpr& e, const Var& v, int times) {
    DiffExpr out = e;
    for (int i = 0; i < times && !out.is_zero(); ++i) out = partial(out, v);
    return out;
}

DiffExpr substitute(const DiffExpr& e, const std::map<Var, DiffExpr>& bindings) {
    for (const auto& [v, _] : bindings)
        if (v.is_constant()) throw DomainError("substitution binds generators only, not constant " + v.name);
    auto image = [&](const Var& v) {
        auto it = bindings.find(v);
        return it == bindings.end() ? DiffExpr::var(v) : it->second;
    };
    DiffExpr out;
    for (const auto& [key, coef] : e.terms()) {
        DiffExpr term(coef);
        for (const auto& f : key.mono) term *= image(f.var).pow(f.exp);
        if (!key.arg.empty()) {
            DiffExpr arg;
            for (const auto& p : key.arg)
                arg += DiffExpr::term(p.coef, TermKey{p.consts, {}}) * image(p.gen);
            term *= DiffExpr::exp(arg);
        }
        out += term;
    }
    return out;
}

int max_u_index(const DiffExpr& e) {
    int m = -1;
    for (const auto& [key, _] : e.terms()) {
        for (const auto& f : key.mono)
            if (f.var.kind == VarKind::U) m = std::max(m, f.var.index);
        for (const auto& p : key.arg)
            if (p.gen.kind == VarKind::U) m = std::max(m, 0);
    }
    return m;
}

std::optional<int> u_order(const DiffExpr& e) {
    if (e.is_zero()) return std::nullopt;
    return std::max(0, max_u_index(e));
}

bool depends_on(const DiffExpr& e, VarKind kind) {
    for (const auto& [key, _] : e.terms()) {
        for (const auto& f : key.mono)
            if (f.var.kind == kind) return true;
        for (const auto& p : key.arg)
            if (p.gen.kind == kind) return true;
    }
    return false;
}

bool depends_on(const DiffExpr& e, const Var& v) {
    for (const auto& [key, _] : e.terms()) {
        for (const auto& f : key.mono)
            if (f.var == v) return true;
        for (const auto& p : key.arg)
            if (p.gen == v) return true;
    }
    return false;
}

int degree(const DiffExpr& e, const Var& v) {
    int d = 0;
    for (const auto& [key, _] : e.terms())
        for (const auto& f : key.mono)
            if (f.var == v) d = std::max(d, f.exp);
    return d;
}

bool is_constant(const DiffExpr& e) {
    for (const auto& [key, _] : e.terms()) {
        if (!key.arg.empty()) return false;
        for (const auto& f : key.mono)
            if (!f.var.is_constant()) return false;
    }
    return true;
}

bool is_t_only(const DiffExpr& e) { return !depends_on(e, VarKind::X) && !depends_on(e, VarKind::U); }

std::optional<Rational> as_rational(const DiffExpr& e) {
    if (e.is_zero()) return Rational(0);
    if (e.size() != 1) return std::nullopt;
    const auto& [key, coef] = *e.terms().begin();
    if (!key.mono.empty() || !key.arg.empty()) return std::nullopt;
    return coef;
}

Grouped group_terms(const DiffExpr& e, std::initializer_list<VarKind> absorbed) {
    auto absorbs = [&](VarKind k) {
        return k == VarKind::Const || std::find(absorbed.begin(), absorbed.end(), k) != absorbed.end();
    };
    Grouped out;
    for (const auto& [key, coef] : e.terms()) {
        TermKey inner;
        TermKey outer;
        for (const auto& f : key.mono) (absorbs(f.var.kind) ? inner : outer).mono.push_back(f);
        for (const auto& p : key.arg) (absorbs(p.gen.kind) ? inner : outer).arg.push_back(p);
        out[outer].add_term(inner, coef);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

DiffExpr key_expr(const TermKey& key) { return DiffExpr::term(1, key); }

// ---------------------------------------------------------------------------

RawNode RawNode::num(const Rational& r) {
    RawNode n;
    n.kind = Kind::Number;
    n.number = r;
    return n;
}

RawNode RawNode::sym(const Var& v) {
    RawNode n;
    n.kind = Kind::Symbol;
    n.symbol = v;
    return n;
}

RawNode RawNode::unary(Kind k, RawNode a) {
    RawNode n;
    n.kind = k;
    n.children.push_back(std::move(a));
    return n;
}

RawNode RawNode::binary(Kind k, RawNode a, RawNode b) {
    RawNode n;
    n.kind = k;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
}

DiffExpr normalize(const RawNode& tree) {
    using K = RawNode::Kind;
    switch (tree.kind) {
        case K::Number: return DiffExpr(tree.number);
        case K::Symbol: return DiffExpr::var(tree.symbol);
        case K::Neg: return -normalize(tree.children.at(0));
        case K::Add: return normalize(tree.children.at(0)) + normalize(tree.children.at(1));
        case K::Sub: return normalize(tree.children.at(0)) - normalize(tree.children.at(1));
        case K::Mul: return normalize(tree.children.at(0)) * normalize(tree.children.at(1));
        case K::Div: return normalize(tree.children.at(0)).divided_by(normalize(tree.children.at(1)));
        case K::Exp: return DiffExpr::exp(normalize(tree.children.at(0)));
        case K::Pow: {
            DiffExpr base = normalize(tree.children.at(0));
            auto ex = as_rational(normalize(tree.children.at(1)));
            if (!ex || ex->get_den() != 1 || !ex->get_num().fits_sint_p())
                throw DomainError("exponent must be an integer");
            return base.pow(static_cast<int>(ex->get_num().get_si()));
        }
    }
    throw InternalError("unknown raw node kind");
}

RawNode to_raw(const DiffExpr& e) {
    using K = RawNode::Kind;
    RawNode sum = RawNode::num(0);
    for (const auto& [key, coef] : e.terms()) {
        RawNode term = RawNode::num(coef);
        for (const auto& f : key.mono) {
            RawNode factor = RawNode::sym(f.var);
            if (f.exp != 1) factor = RawNode::binary(K::Pow, factor, RawNode::num(f.exp));
            term = RawNode::binary(K::Mul, term, factor);
        }
        if (!key.arg.empty()) {
            RawNode arg = RawNode::num(0);
            for (const auto& p : key.arg) {
                RawNode part = RawNode::num(p.coef);
                for (const auto& f : p.consts)
                    part = RawNode::binary(K::Mul, part,
                                           RawNode::binary(K::Pow, RawNode::sym(f.var), RawNode::num(f.exp)));
                arg = RawNode::binary(K::Add, arg, RawNode::binary(K::Mul, part, RawNode::sym(p.gen)));
            }
            term = RawNode::binary(K::Mul, term, RawNode::unary(K::Exp, arg));
        }
        sum = RawNode::binary(K::Add, sum, term);
    }
    return sum;
}

}  // namespace evsym
