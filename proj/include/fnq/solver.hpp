#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnq/eqdsl.hpp"
#include "fnq/maps.hpp"
#include "fnq/ring.hpp"
#include "json.hpp"

namespace fnq {

// One equation or a system of equations sharing unknowns, solved over
// ring->domain() -> ring.
struct SolveTask {
  std::vector<EquationAst> equations;
  RingPtr ring;
  std::map<std::string, FunctionClass> classes;
  std::map<std::string, Elem> params;
  std::uint64_t budget = kDefaultBudget;  // max candidate bindings
  bool use_pivot = true;
  int workers = 1;

  std::vector<std::string> functions() const;  // union of free functions, sorted
  std::vector<std::string> param_names() const;
};

struct SolutionSet {
  std::vector<std::string> functions;
  std::vector<Binding> solutions;  // canonical order, no duplicates
  std::uint64_t enumerated_count = 0;
  bool pruned_by_pivot = false;
  std::optional<std::string> pivot_fn;
};

// Size of the candidate space solve() would search, and whether a pivot
// applies. Throws what solve() would throw for malformed tasks, but never
// BudgetExceeded.
struct SolvePlan {
  long double candidates = 0;
  std::optional<std::string> pivot_fn;
  std::vector<std::string> enumerated_functions;
};
SolvePlan plan(const SolveTask& task);

// Exhaustive backtracking search, OpenMP-parallel over the leading values
// of the first enumerated unknown. Output does not depend on task.workers.
SolutionSet solve(const SolveTask& task);

// Serial reference: plain odometer over every candidate binding with a full
// tree-walking check of each; no pivot and no partial pruning.
SolutionSet solve_reference(const SolveTask& task);

// Every pair (x, y) of the domain at which the equation fails, in order.
std::vector<std::pair<Elem, Elem>> residual(const EquationAst& ast, const Binding& binding,
                                            const Ring& ring);
bool satisfies(const std::vector<EquationAst>& equations, const Binding& binding,
               const Ring& ring);

bool binding_less(const Binding& a, const Binding& b);

nlohmann::json task_echo(const SolveTask& task);
nlohmann::json to_json(const SolutionSet& set, const SolveTask& task);
std::string to_csv(const SolutionSet& set, const SolveTask& task);

}  // namespace fnq
