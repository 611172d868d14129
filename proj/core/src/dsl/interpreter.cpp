#include "codeplay/dsl/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "codeplay/dsl/formatter.hpp"

namespace codeplay::dsl {

namespace {

using Deps = std::vector<int>;

void merge_into(Deps& into, const Deps& from) {
  if (from.empty()) return;
  Deps out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

enum class Flow { normal, broke, continued, returned };

struct Frame {
  const FunctionDef* function = nullptr;
  std::vector<Value> slots;
  std::vector<char> assigned;
  std::vector<Deps> slot_deps;
  Value result;
  Deps result_deps;
  SourceLoc loc;  // statement being executed
};

std::vector<std::string> sorted_labels(const env::Observation& obs) {
  std::vector<std::string> labels;
  labels.reserve(obs.objects.size() + obs.groups.size());
  for (const auto& [label, _] : obs.objects) labels.push_back(label);
  for (const auto& [label, _] : obs.groups) labels.push_back(label);
  std::sort(labels.begin(), labels.end());
  return labels;
}

Value group_value(const std::vector<env::ObjectState>& items) {
  ValueList out;
  out.reserve(items.size());
  for (const auto& o : items) out.emplace_back(o);
  return Value(std::move(out));
}

class Interpreter {
 public:
  Interpreter(const PolicyProgram& program, const EvalOptions& options)
      : prog_(program), opts_(options), rng_(options.rng_seed), tracking_(options.observer) {}

  EvalResult run(const std::string& name, const std::vector<Value>& args) {
    const int idx = prog_.index_of(name);
    if (idx < 0) throw EvalError(name, {}, "no function named '" + name + "'");
    const auto& f = prog_.functions[static_cast<std::size_t>(idx)];
    if (args.size() != f.params.size())
      throw EvalError(name, f.loc,
                      "expected " + std::to_string(f.params.size()) + " argument(s), got " +
                          std::to_string(args.size()));
    std::vector<Deps> deps(args.size());
    if (tracking_)
      for (std::size_t i = 0; i < args.size() && i < opts_.arg_deps.size(); ++i) {
        deps[i] = opts_.arg_deps[i];
        std::sort(deps[i].begin(), deps[i].end());
        deps[i].erase(std::unique(deps[i].begin(), deps[i].end()), deps[i].end());
      }
    EvalResult out;
    out.value = call(f, args, deps, tracking_ ? &out.deps : nullptr);
    out.steps = steps_;
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    const Frame& fr = *frame_;
    throw EvalError(fr.function->name, fr.loc, msg);
  }

  void charge(int n = 1) {
    steps_ += n;
    if (steps_ > opts_.step_budget) {
      const Frame& fr = *frame_;
      throw BudgetExceededError(fr.function->name, fr.loc, opts_.step_budget);
    }
  }

  Value call(const FunctionDef& f, std::vector<Value> args, const std::vector<Deps>& arg_deps,
             Deps* out_deps) {
    if (++depth_ > 64) error("call depth limit exceeded");
    Frame fr;
    fr.function = &f;
    fr.loc = f.loc;
    fr.slots.resize(f.slot_names.size());
    fr.assigned.assign(f.slot_names.size(), 0);
    if (tracking_) fr.slot_deps.resize(f.slot_names.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
      fr.slots[i] = std::move(args[i]);
      fr.assigned[i] = 1;
      if (tracking_) fr.slot_deps[i] = arg_deps[i];
    }
    Frame* saved = frame_;
    frame_ = &fr;
    charge();
    block(f.body);
    frame_ = saved;
    --depth_;

    if (tracking_ && f.trainable) {
      Deps inputs{opts_.observer->parameter_node(f)};
      for (const auto& d : arg_deps) merge_into(inputs, d);
      merge_into(inputs, fr.result_deps);
      std::sort(inputs.begin(), inputs.end());
      inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
      const int node = opts_.observer->record_call(f, inputs, fr.result);
      if (out_deps) *out_deps = {node};
    } else if (out_deps) {
      *out_deps = std::move(fr.result_deps);
    }
    return std::move(fr.result);
  }

  Flow block(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
      const Flow flow = statement(s);
      if (flow != Flow::normal) return flow;
    }
    return Flow::normal;
  }

  void assign(int slot, Value v, Deps* d) {
    Frame& fr = *frame_;
    fr.slots[static_cast<std::size_t>(slot)] = std::move(v);
    fr.assigned[static_cast<std::size_t>(slot)] = 1;
    if (tracking_) fr.slot_deps[static_cast<std::size_t>(slot)] = d ? std::move(*d) : Deps{};
  }

  Flow statement(const Stmt& s) {
    frame_->loc = s.loc;
    charge();
    Deps d;
    Deps* dp = tracking_ ? &d : nullptr;
    switch (s.kind) {
      case Stmt::Kind::assign: {
        Value v = eval(s.exprs[0], dp);
        assign(s.target_slots[0], std::move(v), dp);
        return Flow::normal;
      }
      case Stmt::Kind::aug_assign: {
        const int slot = s.target_slots[0];
        Value cur = read_slot(slot, s.targets[0]);
        if (tracking_) d = frame_->slot_deps[static_cast<std::size_t>(slot)];
        Deps rd;
        Value rhs = eval(s.exprs[0], tracking_ ? &rd : nullptr);
        frame_->loc = s.loc;
        if (tracking_) merge_into(d, rd);
        assign(slot, arith(s.aug_op, cur, rhs), dp);
        return Flow::normal;
      }
      case Stmt::Kind::expr: eval(s.exprs[0], nullptr); return Flow::normal;
      case Stmt::Kind::if_chain:
        for (std::size_t i = 0; i < s.exprs.size(); ++i) {
          frame_->loc = s.exprs[i].loc;
          if (truthy(eval(s.exprs[i], nullptr))) return block(s.blocks[i]);
        }
        if (s.has_else) return block(s.blocks.back());
        return Flow::normal;
      case Stmt::Kind::while_loop:
        while (true) {
          frame_->loc = s.loc;
          charge();
          if (!truthy(eval(s.exprs[0], nullptr))) return Flow::normal;
          const Flow flow = block(s.blocks[0]);
          if (flow == Flow::broke) return Flow::normal;
          if (flow == Flow::returned) return flow;
        }
      case Stmt::Kind::for_loop: return for_loop(s);
      case Stmt::Kind::return_value: {
        frame_->result = eval(s.exprs[0], dp);
        if (tracking_) frame_->result_deps = std::move(d);
        return Flow::returned;
      }
      case Stmt::Kind::break_loop: return Flow::broke;
      case Stmt::Kind::continue_loop: return Flow::continued;
      case Stmt::Kind::pass: return Flow::normal;
    }
    return Flow::normal;
  }

  Flow for_loop(const Stmt& s) {
    Deps d;
    const Value iterable = eval(s.exprs[0], tracking_ ? &d : nullptr);
    const bool pair = s.targets.size() == 2;
    auto iterate = [&](const Value& first, const Value* second) -> std::optional<Flow> {
      frame_->loc = s.loc;
      charge();
      Deps copy = d;
      assign(s.target_slots[0], first, tracking_ ? &copy : nullptr);
      if (second) {
        Deps copy2 = d;
        assign(s.target_slots[1], *second, tracking_ ? &copy2 : nullptr);
      }
      const Flow flow = block(s.blocks[0]);
      if (flow == Flow::broke) return Flow::normal;
      if (flow == Flow::returned) return flow;
      return std::nullopt;
    };
    if (iterable.is_observation()) {
      const auto& obs = iterable.as_observation();
      for (const auto& label : sorted_labels(obs)) {
        std::optional<Flow> stop;
        if (pair) {
          auto it = obs.objects.find(label);
          const Value v = it != obs.objects.end() ? Value(it->second) : group_value(obs.groups.at(label));
          stop = iterate(Value(label), &v);
        } else {
          stop = iterate(Value(label), nullptr);
        }
        if (stop) return *stop;
      }
      return Flow::normal;
    }
    if (iterable.is_list()) {
      if (pair) error("'for a, b in ...' needs an observation; lists yield single items");
      for (const auto& item : iterable.as_list())
        if (auto stop = iterate(item, nullptr)) return *stop;
      return Flow::normal;
    }
    error("cannot iterate over a " + std::string(type_name(iterable)));
  }

  const Value& read_slot(int slot, const std::string& name) {
    if (!frame_->assigned[static_cast<std::size_t>(slot)])
      error("variable '" + name + "' used before assignment");
    return frame_->slots[static_cast<std::size_t>(slot)];
  }

  double number(const Value& v, const char* what) {
    if (v.is_number()) return v.as_number();
    if (v.is_bool()) return v.as_bool() ? 1.0 : 0.0;
    error(std::string(what) + " expects a number, got " + std::string(type_name(v)) + " " +
          render(v));
  }

  Value arith(BinaryOp op, const Value& a, const Value& b) {
    if (op == BinaryOp::add) {
      if (a.is_text() && b.is_text()) return Value(a.as_text() + b.as_text());
      if (a.is_list() && b.is_list()) {
        const auto& x = a.as_list();
        const auto& y = b.as_list();
        charge(static_cast<int>(x.size() + y.size()) / 8);
        ValueList out;
        out.reserve(x.size() + y.size());
        out.insert(out.end(), x.begin(), x.end());
        out.insert(out.end(), y.begin(), y.end());
        return Value(std::move(out));
      }
    }
    const char* sym = to_string(op).data();
    if (!(a.is_number() || a.is_bool()) || !(b.is_number() || b.is_bool()))
      error("unsupported operand types for " + std::string(sym) + ": " +
            std::string(type_name(a)) + " and " + std::string(type_name(b)));
    const double x = number(a, sym);
    const double y = number(b, sym);
    switch (op) {
      case BinaryOp::add: return Value(x + y);
      case BinaryOp::sub: return Value(x - y);
      case BinaryOp::mul: return Value(x * y);
      case BinaryOp::div:
        if (y == 0.0) error("division by zero");
        return Value(x / y);
      case BinaryOp::mod:
        if (y == 0.0) error("modulo by zero");
        return Value(x - y * std::floor(x / y));
      default: break;
    }
    error("bad arithmetic operator");
  }

  bool contains(const Value& container, const Value& item) {
    if (container.is_observation()) {
      if (!item.is_text()) return false;
      return container.as_observation().contains(item.as_text());
    }
    if (container.is_list()) {
      for (const auto& v : container.as_list())
        if (equals(v, item)) return true;
      return false;
    }
    if (container.is_text()) {
      if (!item.is_text()) error("'in <string>' requires a string on the left");
      return container.as_text().find(item.as_text()) != std::string::npos;
    }
    if (container.is_object()) {
      if (!item.is_text()) return false;
      static const char* kFields[] = {"x", "y", "w", "h", "dx", "dy"};
      return std::any_of(std::begin(kFields), std::end(kFields),
                         [&](const char* f) { return item.as_text() == f; });
    }
    error("'in' needs an observation, object, list or string, got " +
          std::string(type_name(container)));
  }

  Value compare(BinaryOp op, const Value& a, const Value& b) {
    switch (op) {
      case BinaryOp::eq: return Value(equals(a, b));
      case BinaryOp::ne: return Value(!equals(a, b));
      case BinaryOp::in: return Value(contains(b, a));
      case BinaryOp::not_in: return Value(!contains(b, a));
      default: break;
    }
    int c = 0;
    if (a.is_text() && b.is_text()) {
      c = a.as_text().compare(b.as_text());
    } else {
      if (!(a.is_number() || a.is_bool()) || !(b.is_number() || b.is_bool()))
        error("cannot compare " + std::string(type_name(a)) + " " + render(a) + " with " +
              std::string(type_name(b)) + " " + render(b) + " using " +
              std::string(to_string(op)));
      const double x = number(a, "comparison");
      const double y = number(b, "comparison");
      c = x < y ? -1 : (x > y ? 1 : 0);
    }
    switch (op) {
      case BinaryOp::lt: return Value(c < 0);
      case BinaryOp::le: return Value(c <= 0);
      case BinaryOp::gt: return Value(c > 0);
      case BinaryOp::ge: return Value(c >= 0);
      default: break;
    }
    error("bad comparison operator");
  }

  std::optional<Value> object_field(const env::ObjectState& o, const std::string& name) {
    if (name == "x") return Value(o.x);
    if (name == "y") return Value(o.y);
    if (name == "w") return Value(o.w);
    if (name == "h") return Value(o.h);
    if (name == "dx") return Value(o.dx);
    if (name == "dy") return Value(o.dy);
    return std::nullopt;
  }

  // Lookup shared by [], '.' and get(); nullopt when the key is absent.
  std::optional<Value> lookup(const Value& container, const Value& key, const char* how) {
    if (container.is_observation()) {
      if (!key.is_text()) error(std::string(how) + " on an observation needs a string label");
      const auto& obs = container.as_observation();
      if (auto it = obs.objects.find(key.as_text()); it != obs.objects.end()) return Value(it->second);
      if (auto it = obs.groups.find(key.as_text()); it != obs.groups.end())
        return group_value(it->second);
      return std::nullopt;
    }
    if (container.is_object()) {
      if (!key.is_text()) error(std::string(how) + " on an object needs a field name");
      return object_field(container.as_object(), key.as_text());
    }
    if (container.is_list()) {
      if (!key.is_number() || key.as_number() != std::floor(key.as_number()))
        error(std::string(how) + " on a list needs an integer index");
      const auto& items = container.as_list();
      auto i = static_cast<long long>(key.as_number());
      const auto n = static_cast<long long>(items.size());
      if (i < 0) i += n;
      if (i < 0 || i >= n) return std::nullopt;
      return items[static_cast<std::size_t>(i)];
    }
    error(std::string(how) + " is not supported on " + std::string(type_name(container)));
  }

  Value index(const Value& container, const Value& key) {
    if (auto v = lookup(container, key, "indexing")) return *v;
    if (container.is_observation())
      error("no object labelled " + render(key) + " in the observation");
    if (container.is_object()) error("objects have no field " + render(key));
    error("list index " + render(key) + " out of range");
  }

  Value field(const Value& container, const std::string& name) {
    if (container.is_object()) {
      if (auto v = object_field(container.as_object(), name)) return *v;
      error("objects have no field '" + name + "' (fields: x, y, w, h, dx, dy)");
    }
    if (container.is_observation()) {
      if (name == "lives") return Value(container.as_observation().lives);
      if (name == "score") return Value(container.as_observation().score);
      error("observations have no field '" + name + "'; use obs[\"Label\"] for objects");
    }
    error("cannot read field '" + name + "' of a " + std::string(type_name(container)));
  }

  Value eval(const Expr& e, Deps* d) {
    switch (e.kind) {
      case Expr::Kind::number: return Value(e.number);
      case Expr::Kind::text: return Value(e.text);
      case Expr::Kind::boolean: return Value(e.boolean);
      case Expr::Kind::none: return Value::none();
      case Expr::Kind::name: {
        const Value& v = read_slot(e.slot, e.text);
        if (d) merge_into(*d, frame_->slot_deps[static_cast<std::size_t>(e.slot)]);
        return v;
      }
      case Expr::Kind::list: {
        ValueList items;
        items.reserve(e.children.size());
        for (const auto& c : e.children) items.push_back(eval(c, d));
        return Value(std::move(items));
      }
      case Expr::Kind::unary: {
        Value v = eval(e.children[0], d);
        if (e.unary_op == UnaryOp::logical_not) return Value(!truthy(v));
        return Value(-number(v, "unary '-'"));
      }
      case Expr::Kind::binary: {
        if (e.binary_op == BinaryOp::logical_and || e.binary_op == BinaryOp::logical_or) {
          Value lhs = eval(e.children[0], d);
          const bool t = truthy(lhs);
          if ((e.binary_op == BinaryOp::logical_and) != t) return lhs;
          return eval(e.children[1], d);
        }
        Value lhs = eval(e.children[0], d);
        Value rhs = eval(e.children[1], d);
        switch (e.binary_op) {
          case BinaryOp::add:
          case BinaryOp::sub:
          case BinaryOp::mul:
          case BinaryOp::div:
          case BinaryOp::mod: return arith(e.binary_op, lhs, rhs);
          default: return compare(e.binary_op, lhs, rhs);
        }
      }
      case Expr::Kind::index: {
        Value obj = eval(e.children[0], d);
        Value key = eval(e.children[1], d);
        return index(obj, key);
      }
      case Expr::Kind::field: return field(eval(e.children[0], d), e.text);
      case Expr::Kind::call: return call_expr(e, d);
    }
    error("unknown expression");
  }

  Value call_expr(const Expr& e, Deps* d) {
    if (e.callee >= 0) {
      const auto& f = prog_.functions[static_cast<std::size_t>(e.callee)];
      std::vector<Value> args;
      std::vector<Deps> arg_deps(e.children.size());
      args.reserve(e.children.size());
      for (std::size_t i = 0; i < e.children.size(); ++i)
        args.push_back(eval(e.children[i], tracking_ ? &arg_deps[i] : nullptr));
      Deps result;
      Value v = call(f, std::move(args), arg_deps, tracking_ ? &result : nullptr);
      if (d) merge_into(*d, result);
      return v;
    }
    std::vector<Value> args;
    args.reserve(e.children.size());
    for (const auto& c : e.children) args.push_back(eval(c, d));
    return builtin(*e.builtin, e.text, args);
  }

  std::uint64_t draw() { return rng_(); }

  double uniform01() { return static_cast<double>(draw() >> 11) * 0x1.0p-53; }

  Value builtin(Builtin b, const std::string& name, const std::vector<Value>& args) {
    switch (b) {
      case Builtin::abs: return Value(std::fabs(number(args[0], "abs")));
      case Builtin::floor: return Value(std::floor(number(args[0], "floor")));
      case Builtin::min:
      case Builtin::max: {
        const ValueList* items = &args;
        if (args.size() == 1) {
          if (!args[0].is_list()) error(name + "() of a single argument needs a list");
          items = &args[0].as_list();
          charge(static_cast<int>(items->size()) / 8);
        }
        if (items->empty()) error(name + "() of an empty list");
        double best = number((*items)[0], name.c_str());
        for (const auto& v : *items) {
          const double x = number(v, name.c_str());
          best = b == Builtin::min ? std::min(best, x) : std::max(best, x);
        }
        return Value(best);
      }
      case Builtin::len: {
        const Value& v = args[0];
        if (v.is_list()) return Value(static_cast<double>(v.as_list().size()));
        if (v.is_text()) return Value(static_cast<double>(v.as_text().size()));
        if (v.is_observation()) {
          const auto& obs = v.as_observation();
          return Value(static_cast<double>(obs.objects.size() + obs.groups.size()));
        }
        error("len() is not defined for " + std::string(type_name(v)));
      }
      case Builtin::starts_with: {
        if (!args[0].is_text() || !args[1].is_text()) error("starts_with() needs two strings");
        return Value(args[0].as_text().starts_with(args[1].as_text()));
      }
      case Builtin::random_choice: {
        if (!args[0].is_list()) error("random_choice() needs a list");
        const auto& items = args[0].as_list();
        if (items.empty()) error("random_choice() of an empty list");
        return items[static_cast<std::size_t>(draw() % items.size())];
      }
      case Builtin::random_uniform: {
        const double u = uniform01();
        if (args.empty()) return Value(u);
        const double lo = number(args[0], "random_uniform");
        const double hi = number(args[1], "random_uniform");
        return Value(lo + (hi - lo) * u);
      }
      case Builtin::get: {
        if (auto v = lookup(args[0], args[1], "get()")) return *v;
        return args.size() == 3 ? args[2] : Value::none();
      }
      case Builtin::range: {
        double lo = 0.0;
        double hi = number(args[0], "range");
        if (args.size() == 2) {
          lo = hi;
          hi = number(args[1], "range");
        }
        if (lo != std::floor(lo) || hi != std::floor(hi)) error("range() needs integers");
        const double n = std::max(0.0, hi - lo);
        if (n > static_cast<double>(opts_.step_budget - steps_))
          charge(opts_.step_budget + 1);  // cannot possibly finish
        charge(static_cast<int>(n) / 8);
        ValueList items;
        items.reserve(static_cast<std::size_t>(n));
        for (double i = lo; i < hi; i += 1.0) items.emplace_back(i);
        return Value(std::move(items));
      }
    }
    error("unknown builtin");
  }

  const PolicyProgram& prog_;
  const EvalOptions& opts_;
  std::mt19937_64 rng_;
  bool tracking_;
  Frame* frame_ = nullptr;
  int steps_ = 0;
  int depth_ = 0;
};

}  // namespace

EvalResult evaluate(const PolicyProgram& program, const std::string& function,
                    const std::vector<Value>& args, const EvalOptions& options) {
  return Interpreter(program, options).run(function, args);
}

EvalResult evaluate_entry(const PolicyProgram& program, const env::Observation& obs,
                          const EvalOptions& options) {
  return evaluate(program, program.entry, {Value::observation(obs)}, options);
}

}  // namespace codeplay::dsl
