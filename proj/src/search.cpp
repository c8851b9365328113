#include "search.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>

#include "linalg.hpp"

namespace evsym {

namespace {

struct PoolBuilder {
    const AnsatzConfig& cfg;
    int n;
    int max_weight;
    std::vector<DiffExpr> out;

    void add_u_monomial(const std::vector<int>& exps, int u_weight) {
        DiffExpr mono(1);
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) mono *= DiffExpr::u(static_cast<int>(i)).pow(exps[i]);
        for (int a = 0; a <= cfg.x_degree; ++a) {
            for (int j = 0; j <= cfg.t_degree; ++j) {
                const int w = u_weight - a - n * j;
                if (w < cfg.min_weight || w > max_weight) continue;
                DiffExpr p = mono * DiffExpr::x().pow(a) * DiffExpr::t().pow(j);
                if (cfg.exp_lambda) p *= DiffExpr::exp(*cfg.exp_lambda * DiffExpr::t());
                out.push_back(std::move(p));
                if (out.size() > cfg.max_pool)
                    throw ResourceError("ansatz pool exceeds " + std::to_string(cfg.max_pool) + " monomials");
            }
        }
    }

    // exps[i] for u_i, i >= index; the remaining weight budget is `budget`
    void enumerate(std::vector<int>& exps, int index, int used, int budget) {
        if (index > cfg.order) {
            add_u_monomial(exps, used);
            return;
        }
        const int w = index + cfg.base_weight;
        for (int e = 0; used + e * w <= budget; ++e) {
            exps[index] = e;
            enumerate(exps, index + 1, used + e * w, budget);
        }
        exps[index] = 0;
    }
};

DiffExpr residual_of(const EvolutionEquation& eq, const DiffExpr& p) {
    return partial(p, Var::t()) - bracket(eq.rhs, p);
}

template <typename Fn>
std::vector<DiffExpr> parallel_map(const std::vector<DiffExpr>& items, Fn fn) {
    std::vector<DiffExpr> out(items.size());
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    const std::size_t chunk = (items.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < items.size(); begin += chunk) {
        const std::size_t end = std::min(items.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) out[i] = fn(items[i]);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

/// Column j holds the grouped coefficients of images[j].
Matrix coefficient_matrix(const std::vector<DiffExpr>& images) {
    std::map<TermKey, std::size_t, TermOrder> rows;
    Matrix m;
    for (std::size_t j = 0; j < images.size(); ++j) {
        for (auto& [key, coef] : group_terms(images[j], {})) {
            auto [it, inserted] = rows.try_emplace(key, m.size());
            if (inserted) m.emplace_back(images.size());
            m[it->second][j] = coef;
        }
    }
    return m;
}

DiffExpr combine(const std::vector<DiffExpr>& pool, const std::vector<DiffExpr>& v) {
    DiffExpr g;
    for (std::size_t j = 0; j < pool.size(); ++j)
        if (!v[j].is_zero()) g += v[j] * pool[j];
    return g;
}

}  // namespace

std::vector<DiffExpr> ansatz_pool(const EvolutionEquation& eq, const AnsatzConfig& cfg) {
    if (cfg.order < 0) throw DomainError("ansatz order must be >= 0");
    if (cfg.t_degree < 0) throw DomainError("ansatz t-degree must be >= 0");
    if (cfg.x_degree < 0) throw DomainError("ansatz x-degree must be >= 0");
    if (cfg.base_weight < 1) throw DomainError("ansatz base weight must be >= 1");
    if (cfg.exp_lambda && !is_constant(*cfg.exp_lambda)) throw DomainError("exp(lambda t) needs a constant lambda");
    PoolBuilder b{cfg, eq.order, cfg.max_weight.value_or(cfg.order + cfg.base_weight), {}};
    if (b.max_weight < cfg.min_weight) throw DomainError("empty weight window");
    std::vector<int> exps(cfg.order + 1, 0);
    b.enumerate(exps, 0, 0, b.max_weight + cfg.x_degree + eq.order * cfg.t_degree);
    if (b.out.empty()) throw DomainError("ansatz pool is empty");
    std::sort(b.out.begin(), b.out.end(), [](const DiffExpr& p, const DiffExpr& q) {
        return compare(p.terms().begin()->first, q.terms().begin()->first) < 0;
    });
    return b.out;
}

DiffExpr primitive(const DiffExpr& e) {
    if (e.is_zero()) return e;
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    std::map<std::string, int> min_exp;
    bool first = true;
    for (const auto& [key, coef] : e.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), coef.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), coef.get_den_mpz_t());
        std::map<std::string, int> here;
        for (const auto& f : key.mono)
            if (f.var.is_constant()) here[f.var.name] = f.exp;
        if (first) {
            min_exp = here;
            first = false;
            continue;
        }
        for (auto& [name, ex] : min_exp) {
            auto it = here.find(name);
            ex = std::min(ex, it == here.end() ? 0 : it->second);
        }
        for (const auto& [name, ex] : here)
            if (!min_exp.count(name)) min_exp[name] = std::min(0, ex);
    }
    Rational scale(den_lcm, num_gcd);
    if (e.terms().begin()->second < 0) scale = -scale;
    DiffExpr out = e * DiffExpr(scale);
    DiffExpr common(1);
    for (const auto& [name, ex] : min_exp)
        if (ex != 0) common *= DiffExpr::constant(name).pow(ex);
    if (common != DiffExpr(1)) out = out.divided_by(common);
    return out;
}

SearchResult solve_ansatz(const EvolutionEquation& eq, const std::vector<DiffExpr>& pool) {
    if (pool.empty()) throw DomainError("ansatz pool is empty");
    std::vector<DiffExpr> residuals = parallel_map(pool, [&](const DiffExpr& p) { return residual_of(eq, p); });
    Matrix m = coefficient_matrix(residuals);
    NullspaceResult ns = nullspace(std::move(m), static_cast<int>(pool.size()));
    SearchResult out;
    out.pool_size = pool.size();
    out.rank = ns.rank;
    for (const auto& p : ns.nonzero_pivots) {
        DiffExpr q = primitive(p);
        if (std::find(out.generic_assumptions.begin(), out.generic_assumptions.end(), q) == out.generic_assumptions.end())
            out.generic_assumptions.push_back(std::move(q));
    }
    for (const auto& v : ns.basis) {
        DiffExpr g = primitive(combine(pool, v));
        if (!is_symmetry(eq, g).is_symmetry())
            throw InternalError("ansatz solution failed verification: " + g.str());
        out.basis.push_back(std::move(g));
    }
    return out;
}

SearchResult find_symmetries(const EvolutionEquation& eq, const AnsatzConfig& cfg) {
    return solve_ansatz(eq, ansatz_pool(eq, cfg));
}

bool span_contains(const std::vector<DiffExpr>& basis, const DiffExpr& g) {
    if (g.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<DiffExpr> with = basis;
    with.push_back(g);
    const int cols = static_cast<int>(basis.size());
    return rank(coefficient_matrix(basis), cols) == rank(coefficient_matrix(with), cols + 1);
}

std::vector<LinearTPair> find_linear_t_symmetries(const EvolutionEquation& eq, const AnsatzConfig& cfg) {
    if (!eq.time_independent) throw DomainError("linear-in-t search needs a time-independent equation");
    AnsatzConfig flat = cfg;
    flat.t_degree = 0;
    flat.exp_lambda.reset();
    const std::vector<DiffExpr> pool = ansatz_pool(eq, flat);
    std::vector<DiffExpr> second = parallel_map(pool, [&](const DiffExpr& p) {
        return bracket(eq.rhs, bracket(eq.rhs, p));
    });
    NullspaceResult ns = nullspace(coefficient_matrix(second), static_cast<int>(pool.size()));
    std::vector<LinearTPair> out;
    std::vector<DiffExpr> images;
    for (const auto& v : ns.basis) {
        DiffExpr g0 = primitive(combine(pool, v));
        DiffExpr g1 = bracket(eq.rhs, g0);
        if (g1.is_zero() || span_contains(images, g1)) continue;
        images.push_back(g1);
        if (!bracket(eq.rhs, g1).is_zero() || !is_symmetry(eq, g0 + DiffExpr::t() * g1).is_symmetry())
            throw InternalError("linear-in-t solution failed verification: " + g0.str());
        out.push_back({std::move(g0), std::move(g1)});
    }
    return out;
}

}  // namespace evsym
