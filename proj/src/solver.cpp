#include "fnq/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fnq/error.hpp"

namespace fnq {

std::vector<std::string> SolveTask::functions() const {
  std::set<std::string> names;
  for (const auto& eq : equations) names.insert(eq.functions.begin(), eq.functions.end());
  return {names.begin(), names.end()};
}

std::vector<std::string> SolveTask::param_names() const {
  std::set<std::string> names;
  for (const auto& eq : equations) names.insert(eq.params.begin(), eq.params.end());
  return {names.begin(), names.end()};
}

std::vector<std::pair<Elem, Elem>> residual(const EquationAst& ast, const Binding& binding,
                                            const Ring& ring) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x : ring.domain())
    for (Elem y : ring.domain())
      if (eval_side(ast.lhs, binding, x, y, ring) != eval_side(ast.rhs, binding, x, y, ring))
        out.push_back({x, y});
  return out;
}

bool satisfies(const std::vector<EquationAst>& equations, const Binding& binding,
               const Ring& ring) {
  for (const auto& ast : equations)
    for (Elem x : ring.domain())
      for (Elem y : ring.domain())
        if (eval_side(ast.lhs, binding, x, y, ring) != eval_side(ast.rhs, binding, x, y, ring))
          return false;
  return true;
}

bool binding_less(const Binding& a, const Binding& b) {
  auto ia = a.functions.begin();
  auto ib = b.functions.begin();
  for (; ia != a.functions.end() && ib != b.functions.end(); ++ia, ++ib) {
    if (ia->second.values != ib->second.values) return ia->second.values < ib->second.values;
  }
  return a.functions.size() < b.functions.size();
}

namespace {

enum class OpCode : std::uint8_t { X, Y, Const, Add, Sub, Mul, Neg, Apply };

struct Op {
  OpCode code;
  Elem value = 0;
  int slot = -1;
};

struct Program {
  std::vector<Op> ops;
  std::size_t depth = 0;
};

void emit(const ExprPtr& e, const std::map<std::string, int>& slots,
          const std::map<std::string, Elem>& params, const Ring& ring, Program& prog,
          std::size_t& cur) {
  auto push = [&](Op op) {
    prog.ops.push_back(op);
    prog.depth = std::max(prog.depth, ++cur);
  };
  switch (e->kind) {
    case ExprKind::VarX: push({OpCode::X}); return;
    case ExprKind::VarY: push({OpCode::Y}); return;
    case ExprKind::IntLit: {
      Elem v = ring.zero();
      if (e->value != 0) {
        const unsigned c = ring.characteristic();
        v = ring.from_int(c ? static_cast<long long>(e->value % c) : 1);
      }
      push({OpCode::Const, v});
      return;
    }
    case ExprKind::Param: {
      auto it = params.find(e->name);
      if (it == params.end())
        throw Error(ErrorCode::UnboundName, "parameter \"" + e->name + "\" is not bound");
      push({OpCode::Const, it->second});
      return;
    }
    case ExprKind::FnApp: {
      emit(e->lhs, slots, params, ring, prog, cur);
      prog.ops.push_back({OpCode::Apply, 0, slots.at(e->name)});
      return;
    }
    case ExprKind::Neg:
      emit(e->lhs, slots, params, ring, prog, cur);
      prog.ops.push_back({OpCode::Neg});
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: {
      emit(e->lhs, slots, params, ring, prog, cur);
      emit(e->rhs, slots, params, ring, prog, cur);
      const OpCode code = e->kind == ExprKind::Add   ? OpCode::Add
                          : e->kind == ExprKind::Sub ? OpCode::Sub
                                                     : OpCode::Mul;
      prog.ops.push_back({code});
      --cur;
      return;
    }
  }
}

Program compile(const ExprPtr& e, const std::map<std::string, int>& slots,
                const std::map<std::string, Elem>& params, const Ring& ring) {
  Program prog;
  std::size_t cur = 0;
  emit(e, slots, params, ring, prog, cur);
  return prog;
}

using Dep = std::pair<int, int>;  // (slot, domain position)

// Evaluation context shared by all workers; per-worker state is passed in.
struct Machine {
  const Ring* ring = nullptr;
  int pivot_slot = -1;
  const Program* pivot_def = nullptr;
  Elem one = 0;

  template <bool Trace>
  Elem run(const Program& prog, Elem x, Elem y, const std::vector<std::vector<Elem>>& values,
           Elem* stack, std::vector<Dep>* deps) const {
    Elem* sp = stack;
    const Ring& r = *ring;
    for (const Op& op : prog.ops) {
      switch (op.code) {
        case OpCode::X: *sp++ = x; break;
        case OpCode::Y: *sp++ = y; break;
        case OpCode::Const: *sp++ = op.value; break;
        case OpCode::Add: --sp; sp[-1] = r.add(sp[-1], sp[0]); break;
        case OpCode::Sub: --sp; sp[-1] = r.sub(sp[-1], sp[0]); break;
        case OpCode::Mul: --sp; sp[-1] = r.mul(sp[-1], sp[0]); break;
        case OpCode::Neg: sp[-1] = r.neg(sp[-1]); break;
        case OpCode::Apply: {
          const Elem arg = *--sp;
          const int pos = r.domain_pos(arg);
          if (pos < 0)
            throw Error(ErrorCode::ArgumentOutsideDomain,
                        "function applied to " + r.element_name(arg) + ", outside its domain");
          Elem v;
          if (op.slot == pivot_slot) {
            v = run<Trace>(*pivot_def, arg, one, values, sp, deps);
          } else {
            if constexpr (Trace) deps->push_back({op.slot, pos});
            v = Trace ? r.zero() : values[static_cast<std::size_t>(op.slot)][static_cast<std::size_t>(pos)];
          }
          *sp++ = v;
          break;
        }
      }
    }
    return sp[-1];
  }
};

struct Check {
  int eq;
  Elem x, y;
};

struct Level {
  int slot;
  int pos;                      // -1: the level assigns a whole table
  std::vector<FnTable> tables;  // choices when pos == -1
  std::size_t count;
};

constexpr std::size_t kStackSize = 512;

class Search {
 public:
  Search(const SolveTask& task, bool allow_pivot) : task_(task), ring_(*task.ring) {
    if (!task.ring) throw Error(ErrorCode::InvalidSpec, "task has no ring");
    if (task.equations.empty()) throw Error(ErrorCode::InvalidSpec, "task has no equations");
    names_ = task.functions();
    for (std::size_t i = 0; i < names_.size(); ++i) slots_[names_[i]] = static_cast<int>(i);
    for (const auto& p : task.param_names())
      if (!task.params.count(p))
        throw Error(ErrorCode::UnboundName, "parameter \"" + p + "\" is not bound");

    for (const auto& eq : task.equations) {
      lhs_.push_back(compile(eq.lhs, slots_, task.params, ring_));
      rhs_.push_back(compile(eq.rhs, slots_, task.params, ring_));
    }

    machine_.ring = &ring_;
    if (allow_pivot) try_pivot();

    const std::size_t n = ring_.domain().size();
    level_of_.assign(names_.size(), std::vector<int>(n, -1));
    for (std::size_t s = 0; s < names_.size(); ++s) {
      if (static_cast<int>(s) == machine_.pivot_slot) continue;
      const FunctionClass cls = class_of(names_[s]);
      if (cls.tag == ClassTag::Arbitrary) {
        for (std::size_t pos = 0; pos < n; ++pos) {
          level_of_[s][pos] = static_cast<int>(levels_.size());
          levels_.push_back({static_cast<int>(s), static_cast<int>(pos), {}, ring_.size()});
        }
      } else {
        enumerated_fns_.push_back(names_[s]);
        Level lv{static_cast<int>(s), -1, {}, 0};
        table_levels_.push_back({levels_.size(), cls});
        for (std::size_t pos = 0; pos < n; ++pos)
          level_of_[s][pos] = static_cast<int>(levels_.size());
        levels_.push_back(std::move(lv));
      }
      if (cls.tag == ClassTag::Arbitrary) enumerated_fns_.push_back(names_[s]);
    }
  }

  long double candidates() const {
    long double total = 1;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const auto tl = std::find_if(table_levels_.begin(), table_levels_.end(),
                                   [i](const auto& t) { return t.first == i; });
      total *= tl == table_levels_.end() ? static_cast<long double>(levels_[i].count)
                                         : enumeration_cost(ring_, tl->second);
    }
    return total;
  }

  std::optional<std::string> pivot_name() const {
    if (machine_.pivot_slot < 0) return std::nullopt;
    return names_[static_cast<std::size_t>(machine_.pivot_slot)];
  }
  const std::vector<std::string>& enumerated_functions() const { return enumerated_fns_; }

  // Materializes class tables, checks the budget and buckets pair checks.
  void prepare() {
    for (const auto& [idx, cls] : table_levels_) {
      levels_[idx].tables = enumerate_maps(task_.ring, cls, task_.budget);
      levels_[idx].count = levels_[idx].tables.size();
    }
    long double total = 1;
    for (const auto& lv : levels_) total *= static_cast<long double>(lv.count);
    space_ = total;
    if (total > static_cast<long double>(task_.budget)) {
      std::ostringstream msg;
      msg << "candidate space of " << static_cast<double>(total) << " exceeds budget "
          << task_.budget;
      throw Error(ErrorCode::BudgetExceeded, msg.str());
    }

    at_level_.assign(levels_.size(), {});
    const auto& dom = ring_.domain();
    std::vector<std::vector<Elem>> dummy(names_.size(), std::vector<Elem>(dom.size(), 0));
    std::vector<Elem> stack(kStackSize);
    for (std::size_t e = 0; e < task_.equations.size(); ++e) {
      const bool dynamic = task_.equations[e].has_nested_applications() || pivot_nested_;
      for (Elem x : dom)
        for (Elem y : dom) {
          const Check c{static_cast<int>(e), x, y};
          if (dynamic) {
            leaf_checks_.push_back(c);
            continue;
          }
          std::vector<Dep> deps;
          machine_.run<true>(lhs_[e], x, y, dummy, stack.data(), &deps);
          machine_.run<true>(rhs_[e], x, y, dummy, stack.data(), &deps);
          int level = -1;
          for (const auto& [slot, pos] : deps)
            level = std::max(level, level_of_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(pos)]);
          if (level < 0)
            root_checks_.push_back(c);
          else
            at_level_[static_cast<std::size_t>(level)].push_back(c);
        }
    }
  }

  std::uint64_t space() const { return static_cast<std::uint64_t>(space_); }

  std::vector<Binding> run(int workers) {
    const auto& dom = ring_.domain();
    {
      std::vector<std::vector<Elem>> values(names_.size(), std::vector<Elem>(dom.size(), 0));
      std::vector<Elem> stack(kStackSize);
      for (const auto& c : root_checks_)
        if (!holds(c, values, stack.data())) return {};
    }

    // Prefix partition over leading levels; fixed independent of `workers`.
    std::size_t depth = 0;
    std::uint64_t tasks = 1;
    while (depth < levels_.size() && tasks < 256) tasks *= levels_[depth++].count;

    std::vector<std::vector<Binding>> found(tasks);
    std::vector<std::exception_ptr> errors(tasks);
    const auto ntasks = static_cast<std::int64_t>(tasks);
#pragma omp parallel for num_threads(std::max(1, workers)) schedule(dynamic, 1)
    for (std::int64_t t = 0; t < ntasks; ++t) {
      try {
        run_task(static_cast<std::uint64_t>(t), depth, found[static_cast<std::size_t>(t)]);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    std::vector<Binding> out;
    for (auto& part : found)
      for (auto& b : part) out.push_back(std::move(b));
    std::sort(out.begin(), out.end(), binding_less);
    return out;
  }

 private:
  FunctionClass class_of(const std::string& name) const {
    auto it = task_.classes.find(name);
    return it == task_.classes.end() ? FunctionClass{} : it->second;
  }

  void try_pivot() {
    if (task_.equations.size() != 1) return;
    const auto& eq = task_.equations.front();
    const ExprPtr& l = eq.lhs;
    if (l->kind != ExprKind::FnApp) return;
    if (!ring_.one() || ring_.domain_pos(*ring_.one()) < 0) return;
    PivotResult res;
    try {
      res = pivot_reduce(eq, l->name);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotReducible) return;
      throw;
    }
    const auto* def = std::get_if<PivotDefinition>(&res);
    if (!def) return;
    pivot_def_ = compile(def->expr, slots_, task_.params, ring_);
    pivot_nested_ = EquationAst{def->expr, def->expr, {}, {}}.has_nested_applications();
    machine_.pivot_slot = slots_.at(l->name);
    machine_.pivot_def = &pivot_def_;
    machine_.one = *ring_.one();
  }

  bool holds(const Check& c, const std::vector<std::vector<Elem>>& values, Elem* stack) const {
    const auto e = static_cast<std::size_t>(c.eq);
    return machine_.run<false>(lhs_[e], c.x, c.y, values, stack, nullptr) ==
           machine_.run<false>(rhs_[e], c.x, c.y, values, stack, nullptr);
  }

  void assign(std::size_t level, std::size_t choice, std::vector<std::vector<Elem>>& values) const {
    const Level& lv = levels_[level];
    auto& slot = values[static_cast<std::size_t>(lv.slot)];
    if (lv.pos >= 0)
      slot[static_cast<std::size_t>(lv.pos)] = static_cast<Elem>(choice);
    else
      slot = lv.tables[choice].values;
  }

  bool level_ok(std::size_t level, const std::vector<std::vector<Elem>>& values, Elem* stack) const {
    for (const auto& c : at_level_[level])
      if (!holds(c, values, stack)) return false;
    return true;
  }

  void run_task(std::uint64_t t, std::size_t depth, std::vector<Binding>& out) const {
    const auto& dom = ring_.domain();
    std::vector<std::vector<Elem>> values(names_.size(), std::vector<Elem>(dom.size(), 0));
    std::vector<Elem> stack(kStackSize);
    // decode the prefix: the first level is the most significant digit
    std::vector<std::size_t> prefix(depth);
    for (std::size_t i = depth; i-- > 0;) {
      prefix[i] = static_cast<std::size_t>(t % levels_[i].count);
      t /= levels_[i].count;
    }
    for (std::size_t i = 0; i < depth; ++i) {
      assign(i, prefix[i], values);
      if (!level_ok(i, values, stack.data())) return;
    }
    const std::size_t n = levels_.size();
    if (depth == n) {
      leaf(values, stack.data(), out);
      return;
    }
    std::vector<std::size_t> pick(n, 0);
    std::size_t level = depth;
    while (true) {
      if (pick[level] == levels_[level].count) {
        pick[level] = 0;
        if (level == depth) return;
        --level;
        ++pick[level];
        continue;
      }
      assign(level, pick[level], values);
      if (!level_ok(level, values, stack)) {
        ++pick[level];
        continue;
      }
      if (level + 1 == n) {
        leaf(values, stack.data(), out);
        ++pick[level];
      } else {
        ++level;
      }
    }
  }

  bool level_ok(std::size_t level, const std::vector<std::vector<Elem>>& values,
                std::vector<Elem>& stack) const {
    return level_ok(level, values, stack.data());
  }

  void leaf(std::vector<std::vector<Elem>>& values, Elem* stack, std::vector<Binding>& out) const {
    const auto& dom = ring_.domain();
    if (machine_.pivot_slot >= 0) {
      auto& table = values[static_cast<std::size_t>(machine_.pivot_slot)];
      for (std::size_t pos = 0; pos < dom.size(); ++pos)
        table[pos] = machine_.run<false>(pivot_def_, dom[pos], machine_.one, values, stack, nullptr);
    }
    for (const auto& c : leaf_checks_)
      if (!holds(c, values, stack)) return;
    Binding b;
    b.params = task_.params;
    for (std::size_t s = 0; s < names_.size(); ++s)
      b.functions.emplace(names_[s], FnTable{task_.ring, values[s]});
    if (machine_.pivot_slot >= 0) {
      const auto& name = names_[static_cast<std::size_t>(machine_.pivot_slot)];
      const FunctionClass cls = class_of(name);
      if (cls.tag != ClassTag::Arbitrary && !is_member(b.functions.at(name), cls)) return;
    }
    if (!satisfies(task_.equations, b, ring_))
      throw std::logic_error("search accepted a binding that fails re-verification");
    out.push_back(std::move(b));
  }

  const SolveTask& task_;
  const Ring& ring_;
  std::vector<std::string> names_;
  std::map<std::string, int> slots_;
  std::vector<Program> lhs_, rhs_;
  Program pivot_def_;
  bool pivot_nested_ = false;
  Machine machine_;
  std::vector<Level> levels_;
  std::vector<std::pair<std::size_t, FunctionClass>> table_levels_;
  std::vector<std::vector<int>> level_of_;
  std::vector<std::vector<Check>> at_level_;
  std::vector<Check> root_checks_, leaf_checks_;
  std::vector<std::string> enumerated_fns_;
  long double space_ = 0;
};

}  // namespace

SolvePlan plan(const SolveTask& task) {
  Search search(task, task.use_pivot);
  return {search.candidates(), search.pivot_name(), search.enumerated_functions()};
}

SolutionSet solve(const SolveTask& task) {
  Search search(task, task.use_pivot);
  search.prepare();
  SolutionSet out;
  out.functions = task.functions();
  out.pivot_fn = search.pivot_name();
  out.pruned_by_pivot = out.pivot_fn.has_value();
  out.enumerated_count = search.space();
  out.solutions = search.run(task.workers);
  return out;
}

SolutionSet solve_reference(const SolveTask& task) {
  if (!task.ring) throw Error(ErrorCode::InvalidSpec, "task has no ring");
  const Ring& ring = *task.ring;
  const auto names = task.functions();
  for (const auto& p : task.param_names())
    if (!task.params.count(p))
      throw Error(ErrorCode::UnboundName, "parameter \"" + p + "\" is not bound");

  // Per unknown: the full list of candidate tables.
  std::vector<std::vector<FnTable>> choices;
  long double total = 1;
  for (const auto& name : names) {
    auto it = task.classes.find(name);
    const FunctionClass cls = it == task.classes.end() ? FunctionClass{} : it->second;
    total *= enumeration_cost(ring, cls);
    if (total > static_cast<long double>(task.budget))
      throw Error(ErrorCode::BudgetExceeded, "reference candidate space exceeds budget");
    choices.push_back(enumerate_maps(task.ring, cls, task.budget));
  }
  SolutionSet out;
  out.functions = names;
  total = 1;
  for (const auto& c : choices) total *= static_cast<long double>(c.size());
  if (total > static_cast<long double>(task.budget))
    throw Error(ErrorCode::BudgetExceeded, "reference candidate space exceeds budget");
  out.enumerated_count = static_cast<std::uint64_t>(total);

  Binding b;
  b.params = task.params;
  std::vector<std::size_t> pick(names.size(), 0);
  for (const auto& c : choices)
    if (c.empty()) return out;
  for (std::size_t i = 0; i < names.size(); ++i) b.functions.emplace(names[i], choices[i][0]);
  for (;;) {
    if (satisfies(task.equations, b, ring)) out.solutions.push_back(b);
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) {
        b.functions.at(names[i]) = choices[i][pick[i]];
        break;
      }
      pick[i] = 0;
      b.functions.at(names[i]) = choices[i][0];
      if (i == 0) {
        std::sort(out.solutions.begin(), out.solutions.end(), binding_less);
        return out;
      }
    }
    if (names.empty()) return out;
  }
}

nlohmann::json task_echo(const SolveTask& task) {
  nlohmann::json j;
  std::vector<std::string> eqs;
  for (const auto& e : task.equations) eqs.push_back(to_string(e));
  j["equations"] = eqs;
  j["ring"] = task.ring->spec() ? to_json(*task.ring->spec()) : nlohmann::json(task.ring->name());
  std::ostringstream hash;
  hash << std::hex << task.ring->content_hash();
  j["ring_hash"] = hash.str();
  j["ring_size"] = task.ring->size();
  j["domain"] = task.ring->domain();
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& name : task.functions()) {
    auto it = task.classes.find(name);
    classes[name] = (it == task.classes.end() ? FunctionClass{} : it->second).describe();
  }
  j["classes"] = classes;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : task.params) params[k] = v;
  j["params"] = params;
  j["budget"] = task.budget;
  j["use_pivot"] = task.use_pivot;
  return j;
}

nlohmann::json to_json(const SolutionSet& set, const SolveTask& task) {
  nlohmann::json j;
  j["task"] = task_echo(task);
  j["functions"] = set.functions;
  j["enumerated_count"] = set.enumerated_count;
  j["pruned_by_pivot"] = set.pruned_by_pivot;
  j["pivot_fn"] = set.pivot_fn ? nlohmann::json(*set.pivot_fn) : nlohmann::json(nullptr);
  j["solution_count"] = set.solutions.size();
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& b : set.solutions) {
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& [name, table] : b.functions) {
      nlohmann::json t = to_json(table);
      t["function"] = name;
      tables.push_back(std::move(t));
    }
    sols.push_back(std::move(tables));
  }
  j["solutions"] = std::move(sols);
  return j;
}

std::string to_csv(const SolutionSet& set, const SolveTask& task) {
  std::string out;
  std::string header;
  for (const auto& name : set.functions) {
    if (!header.empty()) header += ",";
    header += csv_header(FnTable{task.ring, std::vector<Elem>(task.ring->domain().size())}, name);
  }
  out += header + "\n";
  for (const auto& b : set.solutions) {
    std::string row;
    for (const auto& [name, table] : b.functions) {
      if (!row.empty()) row += ",";
      row += csv_row(table);
    }
    out += row + "\n";
  }
  return out;
}

}  // namespace fnq
