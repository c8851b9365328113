#pragma once

#include <optional>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "expr.hpp"

namespace evsym {

/// Validated right-hand side of u_t = F(t, u, u_1, ..., u_n), n >= 2, F free of x.
struct EvolutionEquation {
    DiffExpr rhs;
    int order = 0;
    DiffExpr separant;
    /// F - u_n, present when the separant is exactly 1 and F is time independent.
    std::optional<DiffExpr> f;
    /// Largest j such that dF/du_{n-i} depends on t only for i = 0..j; -1 if none.
    int deriv_depth = -1;
    bool constant_separant = false;
    bool kdv_like = false;
    bool time_independent = false;
    /// Separant free of x, t, u but different from 1 (reducible by rescaling t).
    bool separant_constant = false;
};

EvolutionEquation classify(const DiffExpr& rhs);

/// {h, r} = h_*(r) - r_*(h). Also evaluated as nabla_r(h) - nabla_h(r); a
/// mismatch between the two throws InternalError.
DiffExpr bracket(const DiffExpr& h, const DiffExpr& r);

struct SymmetryReport {
    DiffExpr candidate;
    int order = 0;
    DiffExpr residual;
    /// dG/du_k for k = order; empty for u-free or zero candidates.
    std::optional<DiffExpr> leading;

    bool is_symmetry() const { return residual.is_zero(); }
};

SymmetryReport is_symmetry(const EvolutionEquation& eq, const DiffExpr& g);

/// nabla_G(F_*) - nabla_F(G_*) + [F_*, G_*] - (dG/dt)_*.
DOperator cr3_residual_operator(const EvolutionEquation& eq, const DiffExpr& g);

struct DeterminingSystem {
    int n = 0;
    int k = 0;
    /// Coefficient equations E_l, l = 0..n+k-1 (l = 0..n when k = 0).
    std::vector<DiffExpr> equations;
    /// dG/dt - {F, G}.
    DiffExpr closure;
    std::string method;

    bool all_zero() const;
};

/// Termwise transcription of the coefficient of D^l.
DeterminingSystem determining_system_literal(const EvolutionEquation& eq, const DiffExpr& g);
/// Coefficient extraction from cr3_residual_operator.
DeterminingSystem determining_system_from_operator(const EvolutionEquation& eq, const DiffExpr& g);
/// Both constructions; throws InternalError if they differ in any equation.
DeterminingSystem determining_system(const EvolutionEquation& eq, const DiffExpr& g);

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct LeadingStructure {
    Verdict verdict = Verdict::Inconclusive;
    DiffExpr derivative;             // dG/du_k
    std::optional<DiffExpr> c_k;     // the t-only factor, when found
    std::string detail;
};

/// dG/du_k = c_k(t) * separant^{k/n}. Requires a verified symmetry with k >= 2.
LeadingStructure leading_structure_check(const EvolutionEquation& eq, const SymmetryReport& report);

/// r_{k,n,q}. q = -1 gives [k/(n-1)]; q in {0, 1} rejects n = 2.
int r_bound(int k, int n, int q);

struct DescentStep {
    DiffExpr expr;
    int order = -1;  // -1 when expr is zero
    int bound = 0;   // max(1, previous order - n + 1)
};

/// Successive x-derivatives of a verified symmetry until the order drops to n
/// or below. Each step is re-verified as a symmetry and checked against the
/// order bound; violations throw InternalError.
std::vector<DescentStep> x_descent(const EvolutionEquation& eq, const SymmetryReport& report);

struct Representation {
    int q = 1;  // which r_{k,n,q} bound applies
    int s = 0;
    std::vector<DiffExpr> g;  // g_0..g_s
    DiffExpr psi;
    std::optional<int> bound;  // empty when r_{k,n,q} is degenerate (n = 2)
    /// Indices r with dpsi/du_r required to vanish (refined form only).
    std::vector<int> psi_free_of;
};

struct RepresentationReport {
    int k = 0;
    Representation general;
    /// Present when dF/du_n depends on t only; uses the tighter psi.
    std::optional<Representation> refined;
};

/// G = psi + sum_j x^j g_j with s bounded by r_{k,n,q}. Violations throw
/// InternalError; x inside an exponential of a non-psi term throws DomainError.
RepresentationReport representation_decompose(const EvolutionEquation& eq, const SymmetryReport& report);

struct Lead1Result {
    int r = 0;
    DiffExpr q_expr;
    int expected_order = 0;
    DiffExpr expected;  // (1/n^r) d^r c_k / dt^r
    DiffExpr actual;    // dQ/du_{expected_order}
    bool order_ok = false;
    bool descended_to_zero = false;
    bool passed = false;
};

/// Leading coefficient of Q = d^r G/dx^r, r = r_{k,n,0}, for constant separant.
Lead1Result lead1_check(const EvolutionEquation& eq, const SymmetryReport& report);

/// Upper bound on dim S^{(k)} for a non-linearizable KdV-like equation with
/// dim Phi = dim_phi (user asserted, 0 <= dim_phi <= n).
long long dim_bound(int k, int n, int dim_phi);

}  // namespace evsym
