#pragma once

#include <string>
#include <vector>

#include "expr.hpp"

namespace evsym {

/// Exact quotient of two Laurent polynomials in named constants. Throws
/// DomainError if b is zero or does not divide a.
DiffExpr exact_divide(const DiffExpr& a, const DiffExpr& b);

using Matrix = std::vector<std::vector<DiffExpr>>;

struct NullspaceResult {
    int rank = 0;
    std::vector<int> pivot_columns;
    /// One vector per free column, entries constant-only.
    std::vector<std::vector<DiffExpr>> basis;
    /// Non-rational pivots; the result holds where none of them vanish.
    std::vector<DiffExpr> nonzero_pivots;
};

/// Fraction-free Gauss-Jordan elimination. Entries must be constant-only.
NullspaceResult nullspace(Matrix m, int columns);

int rank(const Matrix& m, int columns);

}  // namespace evsym
