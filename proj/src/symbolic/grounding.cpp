#include "utamp/symbolic/grounding.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace utamp {

std::string GroundAction::str() const {
  std::string out = "(" + schema;
  for (const auto& a : args) out += " " + a;
  return out + ")";
}

namespace {

bool is_variable(const std::string& s) { return !s.empty() && s.front() == '?'; }

Atom substitute(const Literal& l, const std::unordered_map<std::string, std::string>& binding) {
  Atom a;
  a.predicate = l.predicate;
  a.args.reserve(l.args.size());
  for (const auto& x : l.args) {
    if (is_variable(x)) {
      auto it = binding.find(x);
      if (it == binding.end()) throw UnknownSymbol("unbound variable " + x + " in " + l.str());
      a.args.push_back(it->second);
    } else {
      a.args.push_back(x);
    }
  }
  return a;
}

// Literal in integer form: arg >= 0 is a parameter slot, arg < 0 encodes
// constant symbol -(arg + 1).
struct CLit {
  int pred;
  std::vector<int> args;
  bool is_static;
};

struct CSchema {
  const ActionSchema* schema;
  std::vector<std::vector<int>> domains;  // allowed symbols per parameter
  std::vector<CLit> pos;
  std::vector<CLit> neg;
  std::vector<CLit> add;
  std::vector<CLit> del;
};

// Atom key: predicate id followed by argument ids, one 16-bit unit each.
// Short keys stay in the small-string buffer.
using AtomKey = std::u16string;

class Grounder {
 public:
  Grounder(const Domain& d, const Problem& p) : d_(d) {
    check_consistency(d, p);
    for (const auto& c : d.constants) add_symbol(c);
    for (const auto& o : p.objects) add_symbol(o);
    if (symbols_.size() > 0xffff || d.predicates.size() > 0xffff)
      throw std::length_error("too many symbols or predicates to ground");
    for (const auto& pr : d.predicates) {
      pred_ids_.emplace(pr.name, static_cast<int>(pred_ids_.size()));
      pred_names_.push_back(pr.name);
    }
    facts_.resize(pred_ids_.size());
    const auto statics = d.static_predicates();
    for (const auto& pr : d.predicates) is_static_.push_back(statics.count(pr.name) > 0);
    for (const auto& a : p.init) add_fact(key_of(a));
    for (const auto& s : d.actions) schemas_.push_back(compile(s));
  }

  /// Relaxed fixpoint over facts. The bindings of the last round, which adds
  /// nothing, are the reachable ones.
  std::vector<std::vector<std::vector<int>>> run() {
    std::vector<std::vector<std::vector<int>>> out(schemas_.size());
    bool changed = true;
    std::vector<AtomKey> pending;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < schemas_.size(); ++i) {
        const CSchema& cs = schemas_[i];
        pending.clear();
        out[i].clear();
        for_each_binding(cs, [&](const std::vector<int>& b) {
          out[i].push_back(b);
          for (const auto& l : cs.add) {
            AtomKey k = bind(l, b);
            if (!fact_set_.count(k)) pending.push_back(std::move(k));
          }
        });
        for (auto& k : pending) changed |= add_fact(k);
      }
    }
    return out;
  }

  const std::string& symbol(int id) const { return symbols_[static_cast<std::size_t>(id)]; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const CSchema& schema(std::size_t i) const { return schemas_[i]; }
  std::size_t schema_count() const { return schemas_.size(); }

  AtomKey bind(const CLit& l, const std::vector<int>& b) const {
    AtomKey k;
    k.push_back(static_cast<char16_t>(l.pred));
    for (int a : l.args)
      k.push_back(static_cast<char16_t>(a >= 0 ? b[static_cast<std::size_t>(a)] : -a - 1));
    return k;
  }

  Atom atom(const AtomKey& k) const {
    Atom a;
    a.predicate = pred_names_[k[0]];
    for (std::size_t i = 1; i < k.size(); ++i) a.args.push_back(symbols_[k[i]]);
    return a;
  }

  AtomKey key_of(const Atom& a) const {
    AtomKey k;
    k.push_back(static_cast<char16_t>(pred_ids_.at(a.predicate)));
    for (const auto& x : a.args) k.push_back(static_cast<char16_t>(symbol_id(x)));
    return k;
  }

 private:
  void add_symbol(const TypedName& t) {
    if (sym_ids_.count(t.name)) return;
    sym_ids_.emplace(t.name, static_cast<int>(symbols_.size()));
    symbols_.push_back(t.name);
    sym_types_.push_back(t.type);
  }

  int symbol_id(const std::string& s) const {
    auto it = sym_ids_.find(s);
    if (it == sym_ids_.end()) throw UnknownSymbol("unknown symbol: " + s);
    return it->second;
  }

  static std::uint64_t index_key(int pred, std::size_t pos, int val) {
    return (static_cast<std::uint64_t>(pred) << 40) ^ (static_cast<std::uint64_t>(pos) << 32) ^
           static_cast<std::uint32_t>(val);
  }

  static std::uint64_t pair_key(int pred, std::size_t i, int vi, std::size_t j, int vj) {
    return (static_cast<std::uint64_t>(pred) << 48) ^ (static_cast<std::uint64_t>(i) << 40) ^
           (static_cast<std::uint64_t>(j) << 32) ^ (static_cast<std::uint64_t>(vi) << 16) ^
           static_cast<std::uint64_t>(vj);
  }

  bool add_fact(const AtomKey& k) {
    if (!fact_set_.insert(k).second) return false;
    const int pred = k[0];
    auto& list = facts_[static_cast<std::size_t>(pred)];
    const int idx = static_cast<int>(list.size());
    list.emplace_back(k.begin() + 1, k.end());
    for (std::size_t i = 1; i < k.size(); ++i) {
      index_[index_key(pred, i - 1, k[i])].push_back(idx);
      for (std::size_t j = i + 1; j < k.size(); ++j)
        pair_index_[pair_key(pred, i - 1, k[i], j - 1, k[j])].push_back(idx);
    }
    return true;
  }

  CLit compile_literal(const Literal& l, const std::map<std::string, int>& slots) const {
    CLit c;
    c.pred = pred_ids_.at(l.predicate);
    c.is_static = is_static_[static_cast<std::size_t>(c.pred)];
    for (const auto& x : l.args) c.args.push_back(is_variable(x) ? slots.at(x) : -(symbol_id(x) + 1));
    return c;
  }

  CSchema compile(const ActionSchema& s) const {
    CSchema cs;
    cs.schema = &s;
    std::map<std::string, int> slots;
    for (const auto& p : s.parameters) {
      slots.emplace(p.name, static_cast<int>(cs.domains.size()));
      std::vector<int> dom;
      for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (d_.is_subtype(sym_types_[i], p.type)) dom.push_back(static_cast<int>(i));
      cs.domains.push_back(std::move(dom));
    }
    for (const auto& l : s.precondition)
      (l.negated ? cs.neg : cs.pos).push_back(compile_literal(l, slots));
    for (const auto& l : s.add_effects) cs.add.push_back(compile_literal(l, slots));
    for (const auto& l : s.del_effects) cs.del.push_back(compile_literal(l, slots));
    return cs;
  }

  static bool fully_bound(const CLit& l, const std::vector<int>& b) {
    for (int a : l.args)
      if (a >= 0 && b[static_cast<std::size_t>(a)] < 0) return false;
    return true;
  }

  // Static negative preconditions are decided now; fluent ones at apply time.
  bool negatives_ok(const CSchema& cs, const std::vector<int>& b) const {
    for (const auto& l : cs.neg)
      if (l.is_static && fully_bound(l, b) && fact_set_.count(bind(l, b))) return false;
    return true;
  }

  bool in_domain(const CSchema& cs, std::size_t slot, int sym) const {
    const auto& dom = cs.domains[slot];
    return std::binary_search(dom.begin(), dom.end(), sym);
  }

  // Each binding is produced once: the chosen literal's facts are distinct.
  template <class F>
  void for_each_binding(const CSchema& cs, F&& fn) const {
    std::vector<int> b(cs.domains.size(), -1);
    std::vector<char> used(cs.pos.size(), 0);
    enumerate(cs, b, used, fn);
  }

  template <class F>
  void enumerate(const CSchema& cs, std::vector<int>& b, std::vector<char>& used, F& fn) const {
    // Pick the unused positive literal with the smallest candidate list.
    int best = -1;
    std::size_t best_size = 0;
    const std::vector<int>* best_list = nullptr;
    for (std::size_t i = 0; i < cs.pos.size(); ++i) {
      if (used[i]) continue;
      const CLit& l = cs.pos[i];
      const std::vector<int>* list = nullptr;
      std::size_t size = facts_[static_cast<std::size_t>(l.pred)].size();
      auto value = [&](std::size_t k) {
        const int a = l.args[k];
        return a >= 0 ? b[static_cast<std::size_t>(a)] : -a - 1;
      };
      auto consider = [&](const auto& index, std::uint64_t key) {
        auto it = index.find(key);
        const std::size_t n = it == index.end() ? 0 : it->second.size();
        if (n < size || !list) {
          size = n;
          list = it == index.end() ? &empty_ : &it->second;
        }
      };
      for (std::size_t k = 0; k < l.args.size(); ++k) {
        const int v = value(k);
        if (v < 0) continue;
        consider(index_, index_key(l.pred, k, v));
        for (std::size_t j = k + 1; j < l.args.size(); ++j)
          if (const int w = value(j); w >= 0) consider(pair_index_, pair_key(l.pred, k, v, j, w));
      }
      if (best < 0 || size < best_size) {
        best = static_cast<int>(i);
        best_size = size;
        best_list = list;
      }
    }

    if (best < 0) {
      enumerate_free(cs, b, 0, fn);
      return;
    }
    const CLit& l = cs.pos[static_cast<std::size_t>(best)];
    const auto& facts = facts_[static_cast<std::size_t>(l.pred)];
    used[static_cast<std::size_t>(best)] = 1;
    std::size_t newly[16];
    auto try_fact = [&](const std::vector<int>& f) {
      std::size_t n_new = 0;
      bool ok = true;
      for (std::size_t k = 0; k < l.args.size() && ok; ++k) {
        const int a = l.args[k];
        if (a < 0) {
          ok = (-a - 1) == f[k];
        } else {
          int& slot = b[static_cast<std::size_t>(a)];
          if (slot < 0) {
            if (!in_domain(cs, static_cast<std::size_t>(a), f[k])) {
              ok = false;
            } else {
              slot = f[k];
              newly[n_new++] = static_cast<std::size_t>(a);
            }
          } else {
            ok = slot == f[k];
          }
        }
      }
      if (ok && negatives_ok(cs, b)) enumerate(cs, b, used, fn);
      for (std::size_t i = 0; i < n_new; ++i) b[newly[i]] = -1;
    };
    if (best_list) {
      for (int idx : *best_list) try_fact(facts[static_cast<std::size_t>(idx)]);
    } else {
      for (const auto& f : facts) try_fact(f);
    }
    used[static_cast<std::size_t>(best)] = 0;
  }

  // Parameters not constrained by any positive literal range over their type.
  template <class F>
  void enumerate_free(const CSchema& cs, std::vector<int>& b, std::size_t from, F& fn) const {
    for (std::size_t i = from; i < b.size(); ++i) {
      if (b[i] >= 0) continue;
      for (int sym : cs.domains[i]) {
        b[i] = sym;
        if (negatives_ok(cs, b)) enumerate_free(cs, b, i + 1, fn);
      }
      b[i] = -1;
      return;
    }
    fn(static_cast<const std::vector<int>&>(b));
  }

  const Domain& d_;
  std::vector<std::string> symbols_;
  std::vector<std::string> sym_types_;
  std::unordered_map<std::string, int> sym_ids_;
  std::unordered_map<std::string, int> pred_ids_;
  std::vector<std::string> pred_names_;
  std::vector<bool> is_static_;
  std::vector<CSchema> schemas_;
  std::vector<std::vector<std::vector<int>>> facts_;
  std::unordered_set<AtomKey> fact_set_;
  std::unordered_map<std::uint64_t, std::vector<int>> index_;
  std::unordered_map<std::uint64_t, std::vector<int>> pair_index_;
  const std::vector<int> empty_;
};

// Ground operator over interned atom ids.
struct IntOp {
  int schema;
  std::vector<int> args;
  std::vector<int> pre, pre_neg, add, del;
};

struct IntGrounding {
  std::vector<std::string> symbols;
  std::vector<const ActionSchema*> schemas;
  std::vector<AtomKey> atoms;
  std::vector<Atom> atom_values;
  std::vector<IntOp> ops;
};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

// Reachable operators sorted by (schema name, argument names). Operators with
// identical atom sets are kept once, the first in that order.
IntGrounding ground_ints(const Domain& d, const Problem& p) {
  Grounder g(d, p);
  auto bindings = g.run();

  IntGrounding out;
  out.symbols = g.symbols();
  std::vector<int> rank(out.symbols.size());
  {
    std::vector<int> order(out.symbols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return out.symbols[static_cast<std::size_t>(a)] < out.symbols[static_cast<std::size_t>(b)];
    });
    for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  }
  std::vector<std::size_t> schema_order(g.schema_count());
  for (std::size_t i = 0; i < schema_order.size(); ++i) schema_order[i] = i;
  std::stable_sort(schema_order.begin(), schema_order.end(), [&](std::size_t a, std::size_t b) {
    return g.schema(a).schema->name < g.schema(b).schema->name;
  });

  std::unordered_map<AtomKey, int> atom_ids;
  auto intern = [&](AtomKey k) {
    auto [it, inserted] = atom_ids.try_emplace(k, static_cast<int>(out.atoms.size()));
    if (inserted) {
      out.atom_values.push_back(g.atom(k));
      out.atoms.push_back(std::move(k));
    }
    return it->second;
  };

  for (std::size_t si : schema_order) {
    const CSchema& cs = g.schema(si);
    out.schemas.push_back(cs.schema);
    const int schema_idx = static_cast<int>(out.schemas.size() - 1);
    auto& bs = bindings[si];
    std::sort(bs.begin(), bs.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(), [&](int x, int y) {
            return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)];
          });
    });
    std::unordered_set<std::vector<int>, VecHash> seen;
    std::vector<int> key;
    for (auto& b : bs) {
      IntOp op;
      op.schema = schema_idx;
      auto fill = [&](const std::vector<CLit>& lits, std::vector<int>& dst) {
        for (const auto& l : lits) dst.push_back(intern(g.bind(l, b)));
        std::sort(dst.begin(), dst.end());
        dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
      };
      fill(cs.pos, op.pre);
      fill(cs.neg, op.pre_neg);
      fill(cs.add, op.add);
      fill(cs.del, op.del);
      key.clear();
      for (const auto* v : {&op.pre, &op.pre_neg, &op.add, &op.del}) {
        key.insert(key.end(), v->begin(), v->end());
        key.push_back(-1);
      }
      if (!seen.insert(key).second) continue;
      op.args = std::move(b);
      out.ops.push_back(std::move(op));
    }
    bs.clear();
    bs.shrink_to_fit();
  }
  return out;
}

std::vector<std::string> arg_names(const IntGrounding& g, const std::vector<int>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (int s : args) out.push_back(g.symbols[static_cast<std::size_t>(s)]);
  return out;
}

}  // namespace

GroundAction instantiate(const Domain& d, const ActionSchema& schema,
                         const std::vector<std::string>& args) {
  (void)d;
  if (args.size() != schema.parameters.size())
    throw ArityMismatch(schema.name + " expects " + std::to_string(schema.parameters.size()) +
                        " arguments, got " + std::to_string(args.size()));
  std::unordered_map<std::string, std::string> binding;
  for (std::size_t i = 0; i < args.size(); ++i) binding[schema.parameters[i].name] = args[i];
  GroundAction g;
  g.schema = schema.name;
  g.args = args;
  for (const auto& l : schema.precondition)
    (l.negated ? g.pre_neg : g.pre).push_back(substitute(l, binding));
  for (const auto& l : schema.add_effects) g.add.push_back(substitute(l, binding));
  for (const auto& l : schema.del_effects) g.del.push_back(substitute(l, binding));
  return g;
}

GroundAction instantiate(const Domain& d, const std::string& schema_name,
                         const std::vector<std::string>& args) {
  const ActionSchema* s = d.action(schema_name);
  if (!s) throw UnknownSymbol("unknown action: " + schema_name);
  return instantiate(d, *s, args);
}

void check_consistency(const Domain& d, const Problem& p) {
  std::set<std::string> types{"object"};
  for (const auto& t : d.types) types.insert(t.name);
  auto check_type = [&](const std::string& t, const std::string& where) {
    if (!types.count(t)) throw UnknownSymbol("unknown type '" + t + "' in " + where);
  };
  for (const auto& t : d.types) check_type(t.type, "type " + t.name);

  std::set<std::string> symbols;
  for (const auto& c : d.constants) {
    check_type(c.type, "constant " + c.name);
    symbols.insert(c.name);
  }
  for (const auto& o : p.objects) {
    check_type(o.type, "object " + o.name);
    symbols.insert(o.name);
  }
  for (const auto& pr : d.predicates)
    for (const auto& a : pr.parameters) check_type(a.type, "predicate " + pr.name);

  auto check_arity = [&](const std::string& pred, std::size_t n, const std::string& where) {
    const PredicateDecl* decl = d.predicate(pred);
    if (!decl) throw UnknownSymbol("unknown predicate '" + pred + "' in " + where);
    if (decl->parameters.size() != n)
      throw ArityMismatch("predicate " + pred + " takes " +
                          std::to_string(decl->parameters.size()) + " arguments, got " +
                          std::to_string(n) + " in " + where);
  };

  for (const auto& s : d.actions) {
    std::set<std::string> params;
    for (const auto& a : s.parameters) {
      check_type(a.type, "action " + s.name);
      params.insert(a.name);
    }
    for (const auto* group : {&s.precondition, &s.add_effects, &s.del_effects})
      for (const auto& l : *group) {
        check_arity(l.predicate, l.args.size(), "action " + s.name);
        for (const auto& x : l.args) {
          if (is_variable(x) ? !params.count(x) : !symbols.count(x))
            throw UnknownSymbol("unknown symbol '" + x + "' in action " + s.name);
        }
      }
  }
  for (const auto* group : {&p.init, &p.goal})
    for (const auto& a : *group) {
      check_arity(a.predicate, a.args.size(), "problem " + p.name);
      for (const auto& x : a.args)
        if (!symbols.count(x)) throw UnknownSymbol("unknown symbol '" + x + "' in " + a.str());
    }
}

std::vector<GroundAction> ground(const Domain& d, const Problem& p) {
  const IntGrounding g = ground_ints(d, p);
  std::vector<GroundAction> out;
  out.reserve(g.ops.size());
  for (const auto& op : g.ops)
    out.push_back(instantiate(d, *g.schemas[static_cast<std::size_t>(op.schema)], arg_names(g, op.args)));
  return out;
}

namespace {

std::optional<std::pair<Atom, bool>> first_failure(const SymbolicState& s, const GroundAction& a) {
  for (const auto& p : a.pre)
    if (!s.count(p)) return std::make_pair(p, false);
  for (const auto& p : a.pre_neg)
    if (s.count(p)) return std::make_pair(p, true);
  return std::nullopt;
}

}  // namespace

bool applicable(const SymbolicState& s, const GroundAction& a) {
  return !first_failure(s, a).has_value();
}

SymbolicState apply(const SymbolicState& s, const GroundAction& a) {
  if (auto f = first_failure(s, a)) throw NotApplicable(f->first, f->second);
  SymbolicState out = s;
  for (const auto& x : a.del) out.erase(x);
  for (const auto& x : a.add) out.insert(x);
  return out;
}

ValidationResult validate(const std::vector<GroundAction>& plan, const SymbolicState& s0,
                          const std::vector<Atom>& goal) {
  SymbolicState s = s0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (auto f = first_failure(s, plan[i])) {
      ValidationResult r;
      r.ok = false;
      r.step = i;
      r.atom = f->first;
      r.message = "step " + std::to_string(i) + " " + plan[i].str() + ": precondition " +
                  (f->second ? "(not " + f->first.str() + ")" : f->first.str()) + " fails";
      return r;
    }
    s = utamp::apply(s, plan[i]);
  }
  for (const auto& g : goal) {
    if (!s.count(g)) {
      ValidationResult r;
      r.ok = false;
      r.step = plan.size();
      r.atom = g;
      r.message = "goal atom " + g.str() + " not reached";
      return r;
    }
  }
  ValidationResult ok;
  ok.step = plan.size();
  return ok;
}

GroundAction GroundedTask::action(std::size_t op) const {
  const OpRef& r = op_refs.at(op);
  const ActionSchema& s = schemas.at(static_cast<std::size_t>(r.schema));
  GroundAction g;
  g.schema = s.name;
  for (int a : r.args) g.args.push_back(symbols[static_cast<std::size_t>(a)]);
  std::unordered_map<std::string, std::string> binding;
  for (std::size_t i = 0; i < g.args.size(); ++i) binding[s.parameters[i].name] = g.args[i];
  for (const auto& l : s.precondition)
    (l.negated ? g.pre_neg : g.pre).push_back(substitute(l, binding));
  for (const auto& l : s.add_effects) g.add.push_back(substitute(l, binding));
  for (const auto& l : s.del_effects) g.del.push_back(substitute(l, binding));
  return g;
}

GroundedTask build_task(const Domain& d, const Problem& p) {
  IntGrounding g = ground_ints(d, p);
  GroundedTask t;
  t.initial_state = SymbolicState(p.init.begin(), p.init.end());
  t.goal_atoms = p.goal;
  t.symbols = g.symbols;
  for (const auto* s : g.schemas) t.schemas.push_back(*s);

  // Atoms some operator adds or deletes become fluents; the rest are rigid.
  std::vector<int> fluent_of(g.atoms.size(), -1);
  for (const auto& op : g.ops)
    for (const auto* v : {&op.add, &op.del})
      for (int a : *v)
        if (fluent_of[static_cast<std::size_t>(a)] < 0)
          fluent_of[static_cast<std::size_t>(a)] = t.fluents.intern(g.atom_values[static_cast<std::size_t>(a)]);
  const std::size_t changing = t.fluents.size();
  std::vector<char> rigid_true(g.atoms.size(), 0);
  for (std::size_t a = 0; a < g.atoms.size(); ++a)
    rigid_true[a] = fluent_of[a] < 0 && t.initial_state.count(g.atom_values[a]) > 0;

  for (const auto& goal : p.goal) {
    const int id = t.fluents.find(goal);
    if (id >= 0 && static_cast<std::size_t>(id) < changing) {
      t.goal.push_back(id);
    } else if (!t.initial_state.count(goal)) {
      t.trivially_unsolvable = true;
      t.goal.push_back(t.fluents.intern(goal));
    }
  }
  for (const auto& a : t.initial_state) {
    const int id = t.fluents.find(a);
    if (id >= 0 && static_cast<std::size_t>(id) < changing) t.init.push_back(id);
  }
  std::sort(t.init.begin(), t.init.end());

  for (auto& op : g.ops) {
    CompactAction c;
    bool possible = true;
    for (int a : op.pre) {
      const int f = fluent_of[static_cast<std::size_t>(a)];
      if (f >= 0)
        c.pre.push_back(f);
      else if (!rigid_true[static_cast<std::size_t>(a)])
        possible = false;
    }
    for (int a : op.pre_neg) {
      const int f = fluent_of[static_cast<std::size_t>(a)];
      if (f >= 0)
        c.pre_neg.push_back(f);
      else if (rigid_true[static_cast<std::size_t>(a)])
        possible = false;
    }
    if (!possible) continue;
    for (int a : op.add) c.add.push_back(fluent_of[static_cast<std::size_t>(a)]);
    for (int a : op.del) c.del.push_back(fluent_of[static_cast<std::size_t>(a)]);
    for (auto* v : {&c.pre, &c.pre_neg, &c.add, &c.del}) std::sort(v->begin(), v->end());
    t.ops.push_back(std::move(c));
    t.op_refs.push_back({op.schema, std::move(op.args)});
  }
  return t;
}

}  // namespace utamp
