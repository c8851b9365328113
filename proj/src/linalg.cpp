#include "linalg.hpp"

#include <algorithm>

namespace evsym {

namespace {

std::pair<TermKey, Rational> leading(const DiffExpr& e) { return *e.terms().begin(); }
std::pair<TermKey, Rational> trailing(const DiffExpr& e) { return *e.terms().rbegin(); }

TermKey key_quotient(const TermKey& a, const TermKey& b) {
    DiffExpr qa = DiffExpr::term(1, a);
    DiffExpr qb = DiffExpr::term(1, b);
    return leading(qa.divided_by(qb)).first;
}

bool all_rational(const Matrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero() && !as_rational(e)) return false;
    return true;
}

NullspaceResult rational_nullspace(const Matrix& src, int columns) {
    std::vector<std::vector<Rational>> m;
    m.reserve(src.size());
    for (const auto& row : src) {
        std::vector<Rational> r(columns);
        for (int j = 0; j < columns; ++j)
            if (!row[j].is_zero()) r[j] = *as_rational(row[j]);
        m.push_back(std::move(r));
    }
    NullspaceResult out;
    std::size_t row = 0;
    for (int c = 0; c < columns && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (int j = c; j < columns; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = c; j < columns; ++j) m[i][j] -= f * m[row][j];
        }
        out.pivot_columns.push_back(c);
        ++row;
    }
    out.rank = static_cast<int>(row);
    std::vector<bool> is_pivot(columns, false);
    for (int c : out.pivot_columns) is_pivot[c] = true;
    for (int f = 0; f < columns; ++f) {
        if (is_pivot[f]) continue;
        std::vector<DiffExpr> v(columns);
        v[f] = DiffExpr(1);
        for (std::size_t i = 0; i < out.pivot_columns.size(); ++i) v[out.pivot_columns[i]] = DiffExpr(-m[i][f]);
        out.basis.push_back(std::move(v));
    }
    return out;
}

// Prefer rational pivots, then the fewest terms.
std::size_t choose_pivot(const Matrix& m, std::size_t from, int c) {
    std::size_t best = m.size();
    std::size_t best_cost = 0;
    for (std::size_t i = from; i < m.size(); ++i) {
        const DiffExpr& e = m[i][c];
        if (e.is_zero()) continue;
        std::size_t cost = as_rational(e) ? 0 : e.size();
        if (best == m.size() || cost < best_cost) {
            best = i;
            best_cost = cost;
        }
    }
    return best;
}

}  // namespace

DiffExpr exact_divide(const DiffExpr& a, const DiffExpr& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (!is_constant(a) || !is_constant(b)) throw DomainError("exact division needs constant-only operands");
    if (a.is_zero()) return DiffExpr();
    if (b.is_unit()) return a.divided_by(b);
    const auto [lb_key, lb_coef] = leading(b);
    // the quotient's lowest term is trailing(a) / trailing(b)
    const auto [ta_key, ta_coef] = trailing(a);
    const auto [tb_key, tb_coef] = trailing(b);
    const TermKey q_floor = key_quotient(ta_key, tb_key);
    DiffExpr q;
    DiffExpr r = a;
    while (!r.is_zero()) {
        const auto [lr_key, lr_coef] = leading(r);
        TermKey qk = key_quotient(lr_key, lb_key);
        if (compare(qk, q_floor) < 0) throw DomainError("inexact division");
        DiffExpr t = DiffExpr::term(lr_coef / lb_coef, qk);
        q += t;
        r -= t * b;
    }
    return q;
}

NullspaceResult nullspace(Matrix m, int columns) {
    for (auto& row : m) row.resize(columns);
    if (all_rational(m)) return rational_nullspace(m, columns);

    NullspaceResult out;
    DiffExpr prev(1);
    std::size_t row = 0;
    for (int c = 0; c < columns && row < m.size(); ++c) {
        std::size_t p = choose_pivot(m, row, c);
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const DiffExpr piv = m[row][c];
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row) continue;
            const DiffExpr f = m[i][c];
            for (int j = 0; j < columns; ++j) {
                DiffExpr v = piv * m[i][j];
                if (!f.is_zero() && !m[row][j].is_zero()) v -= f * m[row][j];
                if (v.is_zero()) {
                    m[i][j] = DiffExpr();
                    continue;
                }
                try {
                    m[i][j] = exact_divide(v, prev);
                } catch (const DomainError&) {
                    throw InternalError("fraction-free elimination produced an inexact quotient");
                }
            }
        }
        if (!as_rational(piv)) out.nonzero_pivots.push_back(piv);
        out.pivot_columns.push_back(c);
        prev = piv;
        ++row;
    }
    out.rank = static_cast<int>(row);
    std::vector<bool> is_pivot(columns, false);
    for (int c : out.pivot_columns) is_pivot[c] = true;
    for (int f = 0; f < columns; ++f) {
        if (is_pivot[f]) continue;
        std::vector<DiffExpr> v(columns);
        v[f] = prev;
        for (std::size_t i = 0; i < out.pivot_columns.size(); ++i) v[out.pivot_columns[i]] = -m[i][f];
        out.basis.push_back(std::move(v));
    }
    return out;
}

int rank(const Matrix& m, int columns) { return nullspace(m, columns).rank; }

}  // namespace evsym
