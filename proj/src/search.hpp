#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symmetry.hpp"

namespace evsym {

/// Scaling-graded ansatz: weight(u_i) = i + base_weight, weight(x) = -1, weight(t) = -n.
struct AnsatzConfig {
    int order = 1;         // k
    int t_degree = 0;      // J
    int x_degree = 0;
    int base_weight = 2;   // w0 >= 1
    int min_weight = 0;
    std::optional<int> max_weight;  // default k + base_weight
    std::optional<DiffExpr> exp_lambda;  // fixed exp(lambda t) factor
    std::size_t max_pool = 2000;
};

/// Pool monomials in ascending term order. Throws ResourceError past max_pool.
std::vector<DiffExpr> ansatz_pool(const EvolutionEquation& eq, const AnsatzConfig& cfg);

struct SearchResult {
    std::size_t pool_size = 0;
    int rank = 0;
    /// Each element verified by is_symmetry; leading terms pairwise distinct.
    std::vector<DiffExpr> basis;
    /// Constant expressions assumed nonzero (generic parameter values).
    std::vector<DiffExpr> generic_assumptions;
};

/// Symmetries in the linear span of `pool`.
SearchResult solve_ansatz(const EvolutionEquation& eq, const std::vector<DiffExpr>& pool);
SearchResult find_symmetries(const EvolutionEquation& eq, const AnsatzConfig& cfg);

/// Rescaled to integer coefficients with gcd 1 and positive leading coefficient;
/// a common monomial in named constants is divided out.
DiffExpr primitive(const DiffExpr& e);

/// Whether g lies in the span of `basis` (constant coefficients).
bool span_contains(const std::vector<DiffExpr>& basis, const DiffExpr& g);

struct LinearTPair {
    DiffExpr g0;
    DiffExpr g1;  // {F, G0}
};

/// Time-independent G0 in the pool with {F, {F, G0}} = 0 and {F, G0} != 0,
/// with linearly independent images. Each G0 + t G1 is certified.
std::vector<LinearTPair> find_linear_t_symmetries(const EvolutionEquation& eq, const AnsatzConfig& cfg);

}  // namespace evsym
