#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "search.hpp"
#include "timedep.hpp"

namespace evsym {

using Json = nlohmann::ordered_json;

/// Report skeleton: entry, command, verdict, order, flags, time_class, residual, details.
Json make_report(const std::string& command);

Json equation_flags(const EvolutionEquation& eq);
Json time_class_json(const TimeDependenceClass& cls);

Json check_report(const EvolutionEquation& eq, const DiffExpr& g);
Json classify_report(const EvolutionEquation& eq);
Json determine_report(const EvolutionEquation& eq, const DiffExpr& g);
Json timedep_report(const DiffExpr& g, const EvolutionEquation* eq);
Json scaling_report(const EvolutionEquation& eq, const DiffExpr& q0);
Json master_report(const EvolutionEquation& eq, const DiffExpr& g0);
Json find_report(const EvolutionEquation& eq, const AnsatzConfig& cfg, bool linear_t);
Json hypothesis_json(const EvolutionEquation& eq, const std::vector<DiffExpr>& basis, HypothesisMode mode);
Json dim_bound_report(int k, int n, int dim_phi);

/// Parses "order=5 t_degree=0 x_degree=1 ..." (spaces or commas between pairs).
AnsatzConfig parse_ansatz(const std::string& options, const std::set<std::string>& constants);

}  // namespace evsym
