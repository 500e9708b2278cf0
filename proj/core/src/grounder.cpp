#include <aspcomp/grounder.hpp>

#include <aspcomp/errors.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace aspcomp::asp {
namespace {

// ---- variable and term walks -------------------------------------------

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::variable) {
        out.insert(t.symbol);
    }
    for (const Term& a : t.args) {
        collect_vars(a, out);
    }
}

void collect_vars(const Atom& a, std::set<std::string>& out) {
    for (const Term& t : a.args) {
        collect_vars(t, out);
    }
}

void collect_vars(const Literal& l, std::set<std::string>& out) {
    if (const auto* c = std::get_if<ClassicalLiteral>(&l)) {
        collect_vars(c->atom, out);
    } else {
        const auto& b = std::get<BuiltinLiteral>(l);
        collect_vars(b.lhs, out);
        collect_vars(b.rhs, out);
    }
}

std::set<std::string> positive_vars(const std::vector<Literal>& lits) {
    std::set<std::string> vars;
    for (const Literal& l : lits) {
        if (const auto* c = std::get_if<ClassicalLiteral>(&l); c && !c->negated) {
            collect_vars(c->atom, vars);
        }
    }
    return vars;
}

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

using Universe = std::set<Term, TermLess>;

void collect_ground_terms(const Term& t, Universe& out) {
    if (t.is_ground()) {
        out.insert(t);
    }
    for (const Term& a : t.args) {
        collect_ground_terms(a, out);
    }
}

void collect_ground_terms(const Atom& a, Universe& out) {
    for (const Term& t : a.args) {
        collect_ground_terms(t, out);
    }
}

void collect_ground_terms(const Literal& l, Universe& out) {
    if (const auto* c = std::get_if<ClassicalLiteral>(&l)) {
        collect_ground_terms(c->atom, out);
    } else {
        const auto& b = std::get<BuiltinLiteral>(l);
        collect_ground_terms(b.lhs, out);
        collect_ground_terms(b.rhs, out);
    }
}

Universe collect_universe(const Program& p) {
    Universe u;
    auto walk_elements = [&](const auto& elements) {
        for (const auto& e : elements) {
            for (const Literal& l : e.condition) {
                collect_ground_terms(l, u);
            }
        }
    };
    for (const Rule& r : p.rules) {
        if (const auto* n = std::get_if<NormalHead>(&r.head)) {
            collect_ground_terms(n->atom, u);
        } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
            for (const Atom& a : d->atoms) {
                collect_ground_terms(a, u);
            }
        } else if (const auto* c = std::get_if<ChoiceHead>(&r.head)) {
            for (const ChoiceElement& e : c->elements) {
                collect_ground_terms(e.atom, u);
            }
            walk_elements(c->elements);
        }
        for (const BodyLiteral& l : r.body) {
            if (const auto* lit = std::get_if<Literal>(&l)) {
                collect_ground_terms(*lit, u);
            } else {
                const auto& agg = std::get<AggregateLiteral>(l);
                if (agg.left) {
                    collect_ground_terms(agg.left->bound, u);
                }
                if (agg.right) {
                    collect_ground_terms(agg.right->bound, u);
                }
                for (const AggregateElement& e : agg.elements) {
                    for (const Term& t : e.terms) {
                        collect_ground_terms(t, u);
                    }
                }
                walk_elements(agg.elements);
            }
        }
    }
    for (const WeakConstraint& w : p.weak_constraints) {
        for (const Literal& l : w.body) {
            collect_ground_terms(l, u);
        }
        collect_ground_terms(w.weight, u);
        collect_ground_terms(w.level, u);
        for (const Term& t : w.tuple) {
            collect_ground_terms(t, u);
        }
    }
    if (p.query) {
        collect_ground_terms(*p.query, u);
    }
    return u;
}

// ---- substitution -------------------------------------------------------

using Subst = std::map<std::string, Term>;

Term substitute(const Term& t, const Subst& s) {
    if (t.kind == Term::Kind::variable) {
        auto it = s.find(t.symbol);
        return it != s.end() ? it->second : t;
    }
    if (t.kind == Term::Kind::function) {
        Term out = t;
        for (Term& a : out.args) {
            a = substitute(a, s);
        }
        return out;
    }
    return t;
}

Atom substitute(const Atom& a, const Subst& s) {
    Atom out = a;
    for (Term& t : out.args) {
        t = substitute(t, s);
    }
    return out;
}

Literal substitute(const Literal& l, const Subst& s) {
    if (const auto* c = std::get_if<ClassicalLiteral>(&l)) {
        return ClassicalLiteral{substitute(c->atom, s), c->negated};
    }
    const auto& b = std::get<BuiltinLiteral>(l);
    return BuiltinLiteral{substitute(b.lhs, s), b.op, substitute(b.rhs, s)};
}

bool eval_builtin(const BuiltinLiteral& b) {
    const int c = compare_terms(b.lhs, b.rhs);
    switch (b.op) {
        case BuiltinOp::eq : return c == 0;
        case BuiltinOp::neq: return c != 0;
        case BuiltinOp::lt : return c < 0;
        case BuiltinOp::leq: return c <= 0;
        case BuiltinOp::gt : return c > 0;
        case BuiltinOp::geq: return c >= 0;
    }
    return false;
}

// Substitutes a literal list, dropping builtins that evaluate to true.
// Returns false (instance dead) when a ground builtin evaluates to false.
bool substitute_condition(const std::vector<Literal>& in, const Subst& s, std::vector<Literal>& out) {
    for (const Literal& l : in) {
        Literal g = substitute(l, s);
        if (const auto* b = std::get_if<BuiltinLiteral>(&g)) {
            if (!eval_builtin(*b)) {
                return false;
            }
            continue;
        }
        out.push_back(std::move(g));
    }
    return true;
}

// Enumerates all assignments of `vars` over the universe.
void for_each_subst(const std::vector<std::string>& vars, const Universe& universe, Subst& s,
                    std::size_t i, const std::function<void()>& fn) {
    if (i == vars.size()) {
        fn();
        return;
    }
    for (const Term& t : universe) {
        s[vars[i]] = t;
        for_each_subst(vars, universe, s, i + 1, fn);
    }
    s.erase(vars[i]);
}

std::vector<std::string> global_vars(const Rule& r) {
    std::set<std::string> vars;
    if (const auto* n = std::get_if<NormalHead>(&r.head)) {
        collect_vars(n->atom, vars);
    } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
        for (const Atom& a : d->atoms) {
            collect_vars(a, vars);
        }
    }
    // Choice-element variables are local unless they also occur elsewhere.
    for (const BodyLiteral& l : r.body) {
        if (const auto* lit = std::get_if<Literal>(&l)) {
            collect_vars(*lit, vars);
        } else {
            const auto& agg = std::get<AggregateLiteral>(l);
            if (agg.left) {
                collect_vars(agg.left->bound, vars);
            }
            if (agg.right) {
                collect_vars(agg.right->bound, vars);
            }
        }
    }
    return {vars.begin(), vars.end()};
}

template <typename ElementT>
std::vector<std::string> local_vars(const ElementT& element, const std::set<std::string>& globals) {
    std::set<std::string> vars;
    if constexpr (requires { element.atom; }) {
        collect_vars(element.atom, vars);
    } else {
        for (const Term& t : element.terms) {
            collect_vars(t, vars);
        }
    }
    for (const Literal& l : element.condition) {
        collect_vars(l, vars);
    }
    std::vector<std::string> out;
    for (const std::string& v : vars) {
        if (!globals.contains(v)) {
            out.push_back(v);
        }
    }
    return out;
}

unsigned long long pow_saturating(unsigned long long base, std::size_t exp) {
    unsigned long long r = 1;
    for (std::size_t i = 0; i != exp; ++i) {
        if (base != 0 && r > std::numeric_limits<unsigned long long>::max() / base) {
            return std::numeric_limits<unsigned long long>::max();
        }
        r *= base;
    }
    return r;
}

std::set<std::string> all_rule_vars(const Rule& r) {
    std::set<std::string> vars;
    auto walk_body_literal = [&](const BodyLiteral& l) {
        if (const auto* lit = std::get_if<Literal>(&l)) {
            collect_vars(*lit, vars);
        } else {
            const auto& agg = std::get<AggregateLiteral>(l);
            if (agg.left) {
                collect_vars(agg.left->bound, vars);
            }
            if (agg.right) {
                collect_vars(agg.right->bound, vars);
            }
            for (const AggregateElement& e : agg.elements) {
                for (const Term& t : e.terms) {
                    collect_vars(t, vars);
                }
                for (const Literal& c : e.condition) {
                    collect_vars(c, vars);
                }
            }
        }
    };
    if (const auto* n = std::get_if<NormalHead>(&r.head)) {
        collect_vars(n->atom, vars);
    } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
        for (const Atom& a : d->atoms) {
            collect_vars(a, vars);
        }
    } else if (const auto* c = std::get_if<ChoiceHead>(&r.head)) {
        for (const ChoiceElement& e : c->elements) {
            collect_vars(e.atom, vars);
            for (const Literal& l : e.condition) {
                collect_vars(l, vars);
            }
        }
    }
    for (const BodyLiteral& l : r.body) {
        walk_body_literal(l);
    }
    return vars;
}

// ---- instantiation ------------------------------------------------------

struct AtomLess {
    bool operator()(const Atom& a, const Atom& b) const {
        if (int d = a.predicate.compare(b.predicate); d != 0) {
            return d < 0;
        }
        if (a.args.size() != b.args.size()) {
            return a.args.size() < b.args.size();
        }
        for (std::size_t i = 0; i != a.args.size(); ++i) {
            if (int d = compare_terms(a.args[i], b.args[i]); d != 0) {
                return d < 0;
            }
        }
        return false;
    }
};

Head normalize_head(Head h) {
    if (auto* d = std::get_if<DisjunctiveHead>(&h)) {
        std::sort(d->atoms.begin(), d->atoms.end(), AtomLess{});
        d->atoms.erase(std::unique(d->atoms.begin(), d->atoms.end()), d->atoms.end());
        if (d->atoms.size() == 1) {
            return NormalHead{std::move(d->atoms.front())};
        }
    }
    return h;
}

std::string to_string_element(const ChoiceElement& e);
std::string to_string_element(const AggregateElement& e);

template <typename ElementT>
std::vector<ElementT> expand_elements(const std::vector<ElementT>& elements, const Subst& global,
                                      const std::set<std::string>& global_names,
                                      const Universe& universe) {
    std::vector<ElementT> out;
    std::set<std::string> seen;
    for (const ElementT& e : elements) {
        const std::vector<std::string> locals = local_vars(e, global_names);
        Subst s = global;
        for_each_subst(locals, universe, s, 0, [&] {
            ElementT g;
            if constexpr (requires { e.atom; }) {
                g.atom = substitute(e.atom, s);
            } else {
                for (const Term& t : e.terms) {
                    g.terms.push_back(substitute(t, s));
                }
            }
            if (!substitute_condition(e.condition, s, g.condition)) {
                return;
            }
            std::string key = to_string_element(g);
            if (seen.insert(std::move(key)).second) {
                out.push_back(std::move(g));
            }
        });
    }
    return out;
}

std::string to_string_element(const ChoiceElement& e) {
    std::string s = to_string(e.atom);
    for (const Literal& l : e.condition) {
        s += ";" + to_string(l);
    }
    return s;
}

std::string to_string_element(const AggregateElement& e) {
    std::string s;
    for (const Term& t : e.terms) {
        s += to_string(t) + ",";
    }
    for (const Literal& l : e.condition) {
        s += ";" + to_string(l);
    }
    return s;
}

// ---- simplification -----------------------------------------------------

struct PredKey {
    static std::string of(const Atom& a) {
        return a.predicate + "/" + std::to_string(a.args.size());
    }
};

bool is_fact(const Rule& r) {
    return std::holds_alternative<NormalHead>(r.head) && r.body.empty();
}

struct Analysis {
    std::set<std::string> facts;      // printed ground atoms
    std::set<std::string> edb;        // predicate keys defined by facts only
    std::set<std::string> possible;   // printed atoms derivable in principle
};

Analysis analyze(const std::vector<Rule>& rules) {
    Analysis a;
    std::set<std::string> nonfact_head_preds;
    std::set<std::string> all_preds;
    auto note_pred = [&](const Atom& atom) { all_preds.insert(PredKey::of(atom)); };
    for (const Rule& r : rules) {
        if (is_fact(r)) {
            const Atom& atom = std::get<NormalHead>(r.head).atom;
            a.facts.insert(to_string(atom));
            note_pred(atom);
            continue;
        }
        if (const auto* n = std::get_if<NormalHead>(&r.head)) {
            nonfact_head_preds.insert(PredKey::of(n->atom));
            note_pred(n->atom);
        } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
            for (const Atom& atom : d->atoms) {
                nonfact_head_preds.insert(PredKey::of(atom));
                note_pred(atom);
            }
        } else if (const auto* c = std::get_if<ChoiceHead>(&r.head)) {
            for (const ChoiceElement& e : c->elements) {
                nonfact_head_preds.insert(PredKey::of(e.atom));
                note_pred(e.atom);
            }
        }
    }
    // A predicate with no non-fact head occurrence has exactly the extension
    // spelled out by facts; that includes predicates never in any head.
    a.edb = std::move(all_preds);
    for (const std::string& p : nonfact_head_preds) {
        a.edb.erase(p);
    }
    // "possible" closure: treat every head atom of a rule as derivable once
    // all positive classical body literals are; negation and aggregates are
    // assumed satisfiable.
    a.possible = a.facts;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Rule& r : rules) {
            if (is_fact(r)) {
                continue;
            }
            bool gate = true;
            for (const BodyLiteral& l : r.body) {
                const auto* lit = std::get_if<Literal>(&l);
                if (!lit) {
                    continue;
                }
                const auto* c = std::get_if<ClassicalLiteral>(lit);
                if (c && !c->negated && !a.possible.contains(to_string(c->atom))) {
                    gate = false;
                    break;
                }
            }
            if (!gate) {
                continue;
            }
            auto add = [&](const Atom& atom) { grew |= a.possible.insert(to_string(atom)).second; };
            if (const auto* n = std::get_if<NormalHead>(&r.head)) {
                add(n->atom);
            } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
                for (const Atom& atom : d->atoms) {
                    add(atom);
                }
            } else if (const auto* c = std::get_if<ChoiceHead>(&r.head)) {
                for (const ChoiceElement& e : c->elements) {
                    add(e.atom);
                }
            }
        }
    }
    return a;
}

enum class LitFate { keep, strip, dead };

LitFate judge(const ClassicalLiteral& c, const Analysis& a) {
    const std::string atom = to_string(c.atom);
    const bool edb = a.edb.contains(PredKey::of(c.atom));
    const bool possible = a.possible.contains(atom);
    if (!c.negated) {
        if (!possible) {
            return LitFate::dead;
        }
        if (edb) {
            return LitFate::strip; // possible + EDB means it is a fact
        }
        return LitFate::keep;
    }
    if (!possible) {
        return LitFate::strip;
    }
    if (edb) {
        return LitFate::dead; // negation of an established fact
    }
    return LitFate::keep;
}

// Applies judge() to a literal list. Returns false when the list is dead.
bool simplify_condition(std::vector<Literal>& lits, const Analysis& a, bool& changed) {
    std::vector<Literal> out;
    for (Literal& l : lits) {
        const auto* c = std::get_if<ClassicalLiteral>(&l);
        if (!c) {
            out.push_back(std::move(l)); // ground builtins were already evaluated
            continue;
        }
        switch (judge(*c, a)) {
            case LitFate::dead : changed = true; return false;
            case LitFate::strip: changed = true; break;
            case LitFate::keep : out.push_back(std::move(l)); break;
        }
    }
    lits = std::move(out);
    return true;
}

template <typename ElementT>
void simplify_elements(std::vector<ElementT>& elements, const Analysis& a, bool& changed) {
    std::vector<ElementT> out;
    for (ElementT& e : elements) {
        if (simplify_condition(e.condition, a, changed)) {
            out.push_back(std::move(e));
        }
    }
    elements = std::move(out);
}

bool simplify_pass(std::vector<Rule>& rules, std::vector<WeakConstraint>& weaks) {
    const Analysis a = analyze(rules);
    bool changed = false;
    std::vector<Rule> kept;
    for (Rule& r : rules) {
        if (auto* c = std::get_if<ChoiceHead>(&r.head)) {
            simplify_elements(c->elements, a, changed);
        }
        std::vector<BodyLiteral> body;
        bool dead = false;
        for (BodyLiteral& l : r.body) {
            if (auto* lit = std::get_if<Literal>(&l)) {
                const auto* cl = std::get_if<ClassicalLiteral>(lit);
                if (!cl) {
                    body.push_back(std::move(l));
                    continue;
                }
                switch (judge(*cl, a)) {
                    case LitFate::dead : dead = true; break;
                    case LitFate::strip: changed = true; break;
                    case LitFate::keep : body.push_back(std::move(l)); break;
                }
                if (dead) {
                    break;
                }
            } else {
                auto& agg = std::get<AggregateLiteral>(l);
                simplify_elements(agg.elements, a, changed);
                body.push_back(std::move(l));
            }
        }
        if (dead) {
            changed = true;
            continue;
        }
        r.body = std::move(body);
        kept.push_back(std::move(r));
    }
    rules = std::move(kept);

    std::vector<WeakConstraint> keptw;
    for (WeakConstraint& w : weaks) {
        if (simplify_condition(w.body, a, changed)) {
            keptw.push_back(std::move(w));
        } else {
            changed = true;
        }
    }
    weaks = std::move(keptw);
    return changed;
}

} // namespace

std::vector<Term> herbrand_universe(const Program& program) {
    Universe u = collect_universe(program);
    return {u.begin(), u.end()};
}

void check_safety(const Program& program) {
    if (collect_universe(program).empty()) {
        return;
    }
    for (const Rule& rule : program.rules) {
        std::set<std::string> bound;
        for (const BodyLiteral& l : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&l)) {
                if (const auto* c = std::get_if<ClassicalLiteral>(lit); c && !c->negated) {
                    collect_vars(c->atom, bound);
                }
            }
        }
        auto require = [&](const std::set<std::string>& used, const std::set<std::string>& extra) {
            for (const std::string& v : used) {
                if (!bound.contains(v) && !extra.contains(v)) {
                    throw UnsafeRule(to_string(rule), v);
                }
            }
        };

        std::set<std::string> global;
        if (const auto* n = std::get_if<NormalHead>(&rule.head)) {
            collect_vars(n->atom, global);
        } else if (const auto* d = std::get_if<DisjunctiveHead>(&rule.head)) {
            for (const Atom& a : d->atoms) {
                collect_vars(a, global);
            }
        } else if (const auto* c = std::get_if<ChoiceHead>(&rule.head)) {
            for (const ChoiceElement& e : c->elements) {
                std::set<std::string> used;
                collect_vars(e.atom, used);
                for (const Literal& l : e.condition) {
                    collect_vars(l, used);
                }
                require(used, positive_vars(e.condition));
            }
        }
        for (const BodyLiteral& l : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&l)) {
                if (const auto* c = std::get_if<ClassicalLiteral>(lit)) {
                    if (c->negated) {
                        collect_vars(c->atom, global);
                    }
                } else {
                    collect_vars(*lit, global);
                }
            } else {
                const auto& agg = std::get<AggregateLiteral>(l);
                if (agg.left) {
                    collect_vars(agg.left->bound, global);
                }
                if (agg.right) {
                    collect_vars(agg.right->bound, global);
                }
                for (const AggregateElement& e : agg.elements) {
                    std::set<std::string> used;
                    for (const Term& t : e.terms) {
                        collect_vars(t, used);
                    }
                    for (const Literal& c : e.condition) {
                        collect_vars(c, used);
                    }
                    require(used, positive_vars(e.condition));
                }
            }
        }
        require(global, {});
    }
    for (const WeakConstraint& w : program.weak_constraints) {
        const std::set<std::string> bound = positive_vars(w.body);
        std::set<std::string> used;
        for (const Literal& l : w.body) {
            collect_vars(l, used);
        }
        collect_vars(w.weight, used);
        collect_vars(w.level, used);
        for (const Term& t : w.tuple) {
            collect_vars(t, used);
        }
        for (const std::string& v : used) {
            if (!bound.contains(v)) {
                throw UnsafeRule(to_string(w), v);
            }
        }
    }
}

Program ground_program(const Program& program, const GroundOptions& options) {
    check_safety(program);
    const Universe universe = collect_universe(program);

    // Substitution budget: |U|^vars summed over statements.
    unsigned long long budget = 0;
    auto charge = [&](std::size_t nvars) {
        const unsigned long long est =
            pow_saturating(universe.empty() ? 0 : universe.size(), nvars);
        budget = budget > std::numeric_limits<unsigned long long>::max() - est
                     ? std::numeric_limits<unsigned long long>::max()
                     : budget + est;
        if (budget > options.substitution_cap) {
            throw GroundingBlowup(budget);
        }
    };
    for (const Rule& r : program.rules) {
        charge(all_rule_vars(r).size());
    }
    for (const WeakConstraint& w : program.weak_constraints) {
        std::set<std::string> vars;
        for (const Literal& l : w.body) {
            collect_vars(l, vars);
        }
        collect_vars(w.weight, vars);
        collect_vars(w.level, vars);
        for (const Term& t : w.tuple) {
            collect_vars(t, vars);
        }
        charge(vars.size());
    }

    std::vector<Rule> rules;
    for (const Rule& r : program.rules) {
        const std::vector<std::string> globals = global_vars(r);
        const std::set<std::string> global_names(globals.begin(), globals.end());
        Subst s;
        for_each_subst(globals, universe, s, 0, [&] {
            Rule g;
            bool dead = false;
            for (const BodyLiteral& l : r.body) {
                if (const auto* lit = std::get_if<Literal>(&l)) {
                    Literal gl = substitute(*lit, s);
                    if (const auto* b = std::get_if<BuiltinLiteral>(&gl)) {
                        if (!eval_builtin(*b)) {
                            dead = true;
                            break;
                        }
                        continue;
                    }
                    g.body.push_back(std::move(gl));
                } else {
                    const auto& agg = std::get<AggregateLiteral>(l);
                    AggregateLiteral ga;
                    ga.function = agg.function;
                    ga.negated = agg.negated;
                    if (agg.left) {
                        ga.left = AggregateGuard{agg.left->op, substitute(agg.left->bound, s)};
                    }
                    if (agg.right) {
                        ga.right = AggregateGuard{agg.right->op, substitute(agg.right->bound, s)};
                    }
                    ga.elements = expand_elements(agg.elements, s, global_names, universe);
                    g.body.push_back(std::move(ga));
                }
            }
            if (dead) {
                return;
            }
            if (const auto* n = std::get_if<NormalHead>(&r.head)) {
                g.head = NormalHead{substitute(n->atom, s)};
            } else if (const auto* d = std::get_if<DisjunctiveHead>(&r.head)) {
                DisjunctiveHead gh;
                for (const Atom& a : d->atoms) {
                    gh.atoms.push_back(substitute(a, s));
                }
                g.head = normalize_head(std::move(gh));
            } else if (const auto* c = std::get_if<ChoiceHead>(&r.head)) {
                ChoiceHead gh;
                gh.bound = c->bound;
                gh.elements = expand_elements(c->elements, s, global_names, universe);
                g.head = std::move(gh);
            } else {
                g.head = ConstraintHead{};
            }
            rules.push_back(std::move(g));
        });
    }

    std::vector<WeakConstraint> weaks;
    for (const WeakConstraint& w : program.weak_constraints) {
        std::set<std::string> vars;
        for (const Literal& l : w.body) {
            collect_vars(l, vars);
        }
        collect_vars(w.weight, vars);
        collect_vars(w.level, vars);
        for (const Term& t : w.tuple) {
            collect_vars(t, vars);
        }
        const std::vector<std::string> names(vars.begin(), vars.end());
        Subst s;
        for_each_subst(names, universe, s, 0, [&] {
            WeakConstraint g;
            if (!substitute_condition(w.body, s, g.body)) {
                return;
            }
            g.weight = substitute(w.weight, s);
            g.level = substitute(w.level, s);
            for (const Term& t : w.tuple) {
                g.tuple.push_back(substitute(t, s));
            }
            weaks.push_back(std::move(g));
        });
    }

    while (simplify_pass(rules, weaks)) {
    }

    Program out;
    out.query = program.query;
    std::set<std::string> seen;
    for (Rule& r : rules) {
        if (seen.insert(to_string(r)).second) {
            out.rules.push_back(std::move(r));
        }
    }
    for (WeakConstraint& w : weaks) {
        if (seen.insert(to_string(w)).second) {
            out.weak_constraints.push_back(std::move(w));
        }
    }
    return out;
}

Program ground_program(const Program& encoding, const std::vector<Atom>& facts,
                       const GroundOptions& options) {
    Program combined = encoding;
    for (const Atom& a : facts) {
        Rule fact;
        fact.head = NormalHead{a};
        combined.rules.push_back(fact);
    }
    return ground_program(combined, options);
}

} // namespace aspcomp::asp
