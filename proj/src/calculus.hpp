#pragma once

#include <map>
#include <string>

#include "expr.hpp"

namespace evsym {

/// Total x-derivative D = d/dx + sum_i u_{i+1} d/du_i.
DiffExpr total_d(const DiffExpr& e);
DiffExpr total_d_power(const DiffExpr& e, int j);

/// Finite-order linear operator sum_i a_i D^i with expression coefficients.
/// Acts on expressions from the left.
class DOperator {
public:
    DOperator() = default;

    static DOperator identity();
    /// The total derivative D itself.
    static DOperator d();
    static DOperator monomial(int degree, const DiffExpr& coef);

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero operator.
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
    /// Coefficient at D^i, zero when absent.
    DiffExpr coefficient(int i) const;
    const std::map<int, DiffExpr>& coefficients() const { return coeffs_; }

    void add(int degree, const DiffExpr& coef);

    DOperator& operator+=(const DOperator& o);
    DOperator& operator-=(const DOperator& o);
    friend DOperator operator+(DOperator a, const DOperator& b) { return a += b; }
    friend DOperator operator-(DOperator a, const DOperator& b) { return a -= b; }
    friend bool operator==(const DOperator& a, const DOperator& b) { return a.coeffs_ == b.coeffs_; }

    std::string str() const;

private:
    std::map<int, DiffExpr> coeffs_;
};

/// h_* = sum_i dh/du_i D^i.
DOperator frechet(const DiffExpr& h);
/// nabla_h(r) = sum_j D^j(h) dr/du_j.
DiffExpr ev_apply(const DiffExpr& h, const DiffExpr& r);
DiffExpr op_apply(const DOperator& a, const DiffExpr& e);
DOperator op_compose(const DOperator& a, const DOperator& b);
DOperator op_commutator(const DOperator& a, const DOperator& b);
/// nabla_h applied coefficient-wise.
DOperator nabla_on_op(const DiffExpr& h, const DOperator& a);

/// Binomial coefficient q!/(p!(q-p)!), zero outside 0 <= p <= q.
long binomial(int q, int p);

}  // namespace evsym
