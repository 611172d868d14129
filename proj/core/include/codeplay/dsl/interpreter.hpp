#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/dsl/errors.hpp"
#include "codeplay/dsl/value.hpp"

namespace codeplay::dsl {

inline constexpr int kDefaultStepBudget = 20000;

/// Receives every call of a trainable function. Node ids are opaque to the
/// interpreter; it only threads them through data flow.
class CallObserver {
 public:
  virtual ~CallObserver() = default;

  /// Id of the node holding the current code of `function`.
  virtual int parameter_node(const FunctionDef& function) = 0;

  /// Records a finished call. `inputs` is sorted and holds the parameter node,
  /// the provenance of every argument, and the provenance of the result.
  virtual int record_call(const FunctionDef& function, const std::vector<int>& inputs,
                          const Value& output) = 0;
};

struct EvalOptions {
  int step_budget = kDefaultStepBudget;
  std::uint64_t rng_seed = 0;
  CallObserver* observer = nullptr;
  /// Provenance of each argument; only read when an observer is attached.
  std::vector<std::vector<int>> arg_deps;
};

struct EvalResult {
  Value value;
  /// Interpreter steps consumed: statements, loop iterations, calls, and
  /// per-element work in list building.
  int steps = 0;
  /// Node ids the result depends on (empty without an observer).
  std::vector<int> deps;
};

/// Runs `function` with `args`. Throws EvalError on runtime faults and
/// BudgetExceededError when the step budget runs out; both name the function
/// and statement location. Never modifies its arguments.
EvalResult evaluate(const PolicyProgram& program, const std::string& function,
                    const std::vector<Value>& args, const EvalOptions& options = {});

/// Convenience: calls the program's entry function on one observation.
EvalResult evaluate_entry(const PolicyProgram& program, const env::Observation& obs,
                          const EvalOptions& options = {});

}  // namespace codeplay::dsl
