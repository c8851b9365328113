#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symmetry.hpp"

namespace evsym {

struct SpectrumEntry {
    DiffExpr lambda;  // constant-only
    int max_degree = 0;
};

/// How an expression depends on t.
struct TimeDependenceClass {
    enum class Kind { TimeIndependent, Polynomial, Quasipolynomial, Other };
    Kind kind = Kind::TimeIndependent;
    int degree = 0;                       // Polynomial only, >= 1
    std::vector<SpectrumEntry> spectrum;  // Quasipolynomial only, one entry per lambda

    std::string str() const;
};

TimeDependenceClass classify_time(const DiffExpr& g);

/// Constant-coefficient operator sum_l a_l (d/dt)^l.
struct AnnihilatorOp {
    std::vector<DiffExpr> coeffs;  // a_0..a_m, a_m != 0
    /// Factored form: (d/dt - lambda)^multiplicity.
    std::vector<SpectrumEntry> factors;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    DiffExpr apply(const DiffExpr& e) const;
    std::string str() const;
};

/// Minimal operator prod (d/dt - lambda)^(m_lambda + 1) killing g's t-dependence.
AnnihilatorOp annihilator(const DiffExpr& g);

/// (d/dt - lambda)^m for lambda != 0, (d/dt)^(m-1) for lambda = 0, applied to
/// exp(lambda t) * (polynomial of degree m in t). Identity for degree 0.
AnnihilatorOp reduction_operator(const DiffExpr& g);

struct ClosureReport {
    DiffExpr dt;                 // dG/dt
    bool dt_is_symmetry = false;
    bool dt_order_ok = false;    // ord dG/dt <= k
    AnnihilatorOp omega;         // annihilator of c_k
    DiffExpr omega_g;            // Omega(G)
    bool omega_is_symmetry = false;
    bool omega_order_drops = false;  // max u index of Omega(G) <= k - 1
    bool passed() const { return dt_is_symmetry && dt_order_ok && omega_is_symmetry && omega_order_drops; }
};

/// S^(k) is closed under d/dt; needs a time-independent equation and a verified symmetry.
ClosureReport dt_closure_check(const EvolutionEquation& eq, const DiffExpr& g);

struct ScalingResult {
    DiffExpr bracket_value;          // {F, Q0}
    std::optional<DiffExpr> lambda;  // {F, Q0} = lambda Q0
    bool certified = false;          // exp(lambda t) Q0 has zero residual
    DiffExpr symmetry;               // exp(lambda t) Q0 when lambda is found
};

ScalingResult scaling_test(const EvolutionEquation& eq, const DiffExpr& q0);

struct MasterResult {
    DiffExpr g1;  // {F, G0}
    bool g1_nonzero = false;
    bool g1_commutes = false;    // {F, G1} = 0
    std::optional<DiffExpr> mu;  // G1 = mu F
    bool certified = false;      // G0 + t G1 has zero residual
    DiffExpr symmetry;           // G0 + t G1
};

MasterResult mastersymmetry_test(const EvolutionEquation& eq, const DiffExpr& g0);

/// Constant ratio c with a = c * b, if one exists.
std::optional<DiffExpr> constant_ratio(const DiffExpr& a, const DiffExpr& b);

enum class HypothesisMode {
    OrderNMinus1,  // constant separant: basis of S^(n-1)
    OrderNMinus2,  // KdV-like: basis of S^(n-2)
};

enum class Prediction { Polynomial, Quasipolynomial, None };
const char* to_string(Prediction p);

struct HypothesisReport {
    Prediction prediction = Prediction::None;
    HypothesisMode mode = HypothesisMode::OrderNMinus1;
    int max_order = 0;
    std::vector<TimeDependenceClass> classes;
    /// The basis is taken to span the low-order symmetry space; this is not verified.
    bool completeness_assumed = true;
    std::string statement;
};

HypothesisReport hypothesis_report(const EvolutionEquation& eq, const std::vector<DiffExpr>& basis,
                                   HypothesisMode mode);

}  // namespace evsym
