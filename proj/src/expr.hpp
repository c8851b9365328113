#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace evsym {

using Rational = mpq_class;

enum class VarKind : std::uint8_t { Const = 0, T = 1, X = 2, U = 3 };

/// A generator of the expression ring: a named constant, t, x or u_i.
/// Ordered constants < t < x < u_0 < u_1 < ...
struct Var {
    VarKind kind = VarKind::U;
    int index = 0;
    std::string name;

    static Var constant(std::string name) { return {VarKind::Const, 0, std::move(name)}; }
    static Var t() { return {VarKind::T, 0, {}}; }
    static Var x() { return {VarKind::X, 0, {}}; }
    static Var u(int i) { return {VarKind::U, i, {}}; }

    bool is_constant() const { return kind == VarKind::Const; }
    std::string str() const;
};

int compare(const Var& a, const Var& b);
inline bool operator==(const Var& a, const Var& b) { return compare(a, b) == 0; }
inline bool operator!=(const Var& a, const Var& b) { return compare(a, b) != 0; }
inline bool operator<(const Var& a, const Var& b) { return compare(a, b) < 0; }

struct Factor {
    Var var;
    int exp = 0;
};

/// Sorted ascending by variable, no zero exponents. Negative exponents only on constants.
using Monomial = std::vector<Factor>;

/// Lexicographic comparison starting from the highest variable, with absent
/// variables read as exponent zero. Compatible with multiplication.
int compare(const Monomial& a, const Monomial& b);
Monomial multiply(const Monomial& a, const Monomial& b);

/// One summand `coef * consts * gen` of an exponential argument.
struct ExpPart {
    Var gen;  // t, x or u_0
    Monomial consts;
    Rational coef;
};

/// Linear form in t, x, u_0 with constant coefficients; sorted, no zero parts.
/// The empty form stands for exp(0) = 1.
using ExpArg = std::vector<ExpPart>;

int compare(const ExpArg& a, const ExpArg& b);
ExpArg add(const ExpArg& a, const ExpArg& b);
ExpArg negate(const ExpArg& a);

struct TermKey {
    Monomial mono;
    ExpArg arg;
};

int compare(const TermKey& a, const TermKey& b);

/// Print order: larger keys first.
struct TermOrder {
    bool operator()(const TermKey& a, const TermKey& b) const { return compare(a, b) > 0; }
};

/// Canonical differential expression: a finite sum of
/// rational * monomial(constants, t, x, u_i) * exp(linear form).
/// Structural equality is semantic equality.
class DiffExpr {
public:
    using Terms = std::map<TermKey, Rational, TermOrder>;

    DiffExpr() = default;
    DiffExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
    DiffExpr(long c) : DiffExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    DiffExpr(int c) : DiffExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static DiffExpr var(const Var& v);
    static DiffExpr x() { return var(Var::x()); }
    static DiffExpr t() { return var(Var::t()); }
    static DiffExpr u(int i) { return var(Var::u(i)); }
    static DiffExpr constant(const std::string& name) { return var(Var::constant(name)); }
    static DiffExpr term(const Rational& coef, TermKey key);
    /// exp(arg); arg must be linear in t, x, u_0 with constant coefficients.
    static DiffExpr exp(const DiffExpr& arg);

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    DiffExpr& operator+=(const DiffExpr& o);
    DiffExpr& operator-=(const DiffExpr& o);
    DiffExpr& operator*=(const DiffExpr& o);
    DiffExpr operator-() const;
    friend DiffExpr operator+(DiffExpr a, const DiffExpr& b) { return a += b; }
    friend DiffExpr operator-(DiffExpr a, const DiffExpr& b) { return a -= b; }
    friend DiffExpr operator*(const DiffExpr& a, const DiffExpr& b);
    friend bool operator==(const DiffExpr& a, const DiffExpr& b);
    friend bool operator!=(const DiffExpr& a, const DiffExpr& b) { return !(a == b); }

    /// Integer power; negative exponents only for single-term units
    /// (rational * constants * exp).
    DiffExpr pow(int n) const;
    /// Division by a single-term unit.
    DiffExpr divided_by(const DiffExpr& unit) const;
    bool is_unit() const;

    void add_term(const TermKey& key, const Rational& coef);

    std::string str() const;

private:
    Terms terms_;
};

/// Linear form of an expression, or DomainError if it is not of the form
/// sum(const * gen), gen in {t, x, u_0}.
ExpArg to_exp_arg(const DiffExpr& e);
DiffExpr from_exp_arg(const ExpArg& arg);

DiffExpr partial(const DiffExpr& e, const Var& v);
DiffExpr partial(const DiffExpr& e, const Var& v, int times);
DiffExpr substitute(const DiffExpr& e, const std::map<Var, DiffExpr>& bindings);

/// Largest k with partial(e, u_k) != 0; 0 for u-free expressions; nullopt for 0.
std::optional<int> u_order(const DiffExpr& e);
/// Largest u index present, -1 if u-free.
int max_u_index(const DiffExpr& e);
bool depends_on(const DiffExpr& e, VarKind kind);
bool depends_on(const DiffExpr& e, const Var& v);
/// Largest exponent of v among monomials (exp atoms not counted).
int degree(const DiffExpr& e, const Var& v);
/// True if e involves only rationals and named constants.
bool is_constant(const DiffExpr& e);
/// True if e involves no x and no u_i.
bool is_t_only(const DiffExpr& e);
/// Rational value if e is a plain rational number.
std::optional<Rational> as_rational(const DiffExpr& e);

using Grouped = std::map<TermKey, DiffExpr, TermOrder>;

/// Groups e as sum_K coef_K * K, where coef_K collects the rational, every
/// factor whose kind is in `absorbed`, and exponential parts whose generator
/// kind is in `absorbed`. Constants always go to the coefficient.
Grouped group_terms(const DiffExpr& e, std::initializer_list<VarKind> absorbed);
DiffExpr key_expr(const TermKey& key);

/// Un-normalized expression tree, as produced by the parser.
struct RawNode {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Exp };
    Kind kind = Kind::Number;
    Rational number;
    Var symbol;
    std::vector<RawNode> children;

    static RawNode num(const Rational& r);
    static RawNode sym(const Var& v);
    static RawNode unary(Kind k, RawNode a);
    static RawNode binary(Kind k, RawNode a, RawNode b);
};

DiffExpr normalize(const RawNode& tree);
/// Tree whose normalization is e.
RawNode to_raw(const DiffExpr& e);

std::string to_string(const Rational& r);

}  // namespace evsym
