#include <aspcomp/ast.hpp>

#include <algorithm>
#include <sstream>

namespace aspcomp::asp {

Term Term::constant(std::string name) {
    Term t;
    t.kind = Kind::constant;
    t.symbol = std::move(name);
    return t;
}

Term Term::integer(std::int64_t v) {
    Term t;
    t.kind = Kind::integer;
    t.value = v;
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind = Kind::variable;
    t.symbol = std::move(name);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    Term t;
    t.kind = Kind::function;
    t.symbol = std::move(name);
    t.args = std::move(args);
    return t;
}

bool Term::is_ground() const {
    if (kind == Kind::variable) {
        return false;
    }
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

namespace {

int kind_rank(Term::Kind k) {
    switch (k) {
        case Term::Kind::integer : return 0;
        case Term::Kind::constant: return 1;
        case Term::Kind::variable: return 2;
        case Term::Kind::function: return 3;
    }
    return 4;
}

} // namespace

int compare_terms(const Term& a, const Term& b) {
    if (int d = kind_rank(a.kind) - kind_rank(b.kind); d != 0) {
        return d < 0 ? -1 : 1;
    }
    switch (a.kind) {
        case Term::Kind::integer:
            return a.value < b.value ? -1 : a.value > b.value ? 1 : 0;
        case Term::Kind::constant:
        case Term::Kind::variable:
            return a.symbol.compare(b.symbol) < 0 ? -1 : a.symbol == b.symbol ? 0 : 1;
        case Term::Kind::function: {
            if (int d = a.symbol.compare(b.symbol); d != 0) {
                return d < 0 ? -1 : 1;
            }
            if (a.args.size() != b.args.size()) {
                return a.args.size() < b.args.size() ? -1 : 1;
            }
            for (std::size_t i = 0; i != a.args.size(); ++i) {
                if (int d = compare_terms(a.args[i], b.args[i]); d != 0) {
                    return d;
                }
            }
            return 0;
        }
    }
    return 0;
}

const char* to_string(BuiltinOp op) {
    switch (op) {
        case BuiltinOp::eq : return "=";
        case BuiltinOp::neq: return "!=";
        case BuiltinOp::lt : return "<";
        case BuiltinOp::leq: return "<=";
        case BuiltinOp::gt : return ">";
        case BuiltinOp::geq: return ">=";
    }
    return "?";
}

const char* to_string(AggregateFunction f) {
    switch (f) {
        case AggregateFunction::count: return "#count";
        case AggregateFunction::sum  : return "#sum";
        case AggregateFunction::min  : return "#min";
        case AggregateFunction::max  : return "#max";
    }
    return "?";
}

namespace {

template <typename T, typename F>
void join(std::ostream& os, const std::vector<T>& xs, const char* sep, F&& print) {
    for (std::size_t i = 0; i != xs.size(); ++i) {
        if (i != 0) {
            os << sep;
        }
        print(os, xs[i]);
    }
}

void print_term(std::ostream& os, const Term& t) {
    switch (t.kind) {
        case Term::Kind::constant:
        case Term::Kind::variable:
            os << t.symbol;
            break;
        case Term::Kind::integer:
            os << t.value;
            break;
        case Term::Kind::function:
            os << t.symbol << "(";
            join(os, t.args, ",", print_term);
            os << ")";
            break;
    }
}

void print_atom(std::ostream& os, const Atom& a) {
    os << a.predicate;
    if (!a.args.empty()) {
        os << "(";
        join(os, a.args, ",", print_term);
        os << ")";
    }
}

void print_literal(std::ostream& os, const Literal& l) {
    if (const auto* c = std::get_if<ClassicalLiteral>(&l)) {
        if (c->negated) {
            os << "not ";
        }
        print_atom(os, c->atom);
    } else {
        const auto& b = std::get<BuiltinLiteral>(l);
        print_term(os, b.lhs);
        os << " " << to_string(b.op) << " ";
        print_term(os, b.rhs);
    }
}

void print_aggregate(std::ostream& os, const AggregateLiteral& a) {
    if (a.negated) {
        os << "not ";
    }
    if (a.left) {
        print_term(os, a.left->bound);
        os << " " << to_string(a.left->op) << " ";
    }
    os << to_string(a.function) << "{";
    join(os, a.elements, "; ", [](std::ostream& o, const AggregateElement& e) {
        join(o, e.terms, ",", print_term);
        if (!e.condition.empty()) {
            o << " : ";
            join(o, e.condition, ", ", print_literal);
        }
    });
    os << "}";
    if (a.right) {
        os << " " << to_string(a.right->op) << " ";
        print_term(os, a.right->bound);
    }
}

void print_body_literal(std::ostream& os, const BodyLiteral& l) {
    if (const auto* lit = std::get_if<Literal>(&l)) {
        print_literal(os, *lit);
    } else {
        print_aggregate(os, std::get<AggregateLiteral>(l));
    }
}

void print_head(std::ostream& os, const Head& h) {
    if (const auto* n = std::get_if<NormalHead>(&h)) {
        print_atom(os, n->atom);
    } else if (const auto* d = std::get_if<DisjunctiveHead>(&h)) {
        join(os, d->atoms, " | ", print_atom);
    } else if (const auto* c = std::get_if<ChoiceHead>(&h)) {
        os << "{";
        join(os, c->elements, "; ", [](std::ostream& o, const ChoiceElement& e) {
            print_atom(o, e.atom);
            if (!e.condition.empty()) {
                o << " : ";
                join(o, e.condition, ", ", print_literal);
            }
        });
        os << "}";
        if (c->bound) {
            os << " " << to_string(c->bound->op) << " " << c->bound->bound;
        }
    }
}

void print_rule(std::ostream& os, const Rule& r) {
    const bool constraint = std::holds_alternative<ConstraintHead>(r.head);
    if (!constraint) {
        print_head(os, r.head);
    }
    if (!r.body.empty() || constraint) {
        os << (constraint ? ":- " : " :- ");
        join(os, r.body, ", ", print_body_literal);
    }
    os << ".";
}

void print_weak(std::ostream& os, const WeakConstraint& w) {
    os << ":~ ";
    join(os, w.body, ", ", print_literal);
    os << ". [";
    print_term(os, w.weight);
    os << "@";
    print_term(os, w.level);
    for (const Term& t : w.tuple) {
        os << ",";
        print_term(os, t);
    }
    os << "]";
}

} // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print_term(os, t);
    return os.str();
}

std::string to_string(const Atom& a) {
    std::ostringstream os;
    print_atom(os, a);
    return os.str();
}

std::string to_string(const Literal& l) {
    std::ostringstream os;
    print_literal(os, l);
    return os.str();
}

std::string to_string(const AggregateLiteral& l) {
    std::ostringstream os;
    print_aggregate(os, l);
    return os.str();
}

std::string to_string(const BodyLiteral& l) {
    std::ostringstream os;
    print_body_literal(os, l);
    return os.str();
}

std::string to_string(const Head& h) {
    std::ostringstream os;
    print_head(os, h);
    return os.str();
}

std::string to_string(const Rule& r) {
    std::ostringstream os;
    print_rule(os, r);
    return os.str();
}

std::string to_string(const WeakConstraint& w) {
    std::ostringstream os;
    print_weak(os, w);
    return os.str();
}

std::string to_string(const Program& p) {
    std::ostringstream os;
    for (const Rule& r : p.rules) {
        print_rule(os, r);
        os << "\n";
    }
    for (const WeakConstraint& w : p.weak_constraints) {
        print_weak(os, w);
        os << "\n";
    }
    if (p.query) {
        print_atom(os, *p.query);
        os << "?\n";
    }
    return os.str();
}

} // namespace aspcomp::asp
