#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aspcomp::asp {

// AST for the ASP-Core-2 fragment used in the competition: normal, disjunctive,
// choice and constraint rules, the four standard aggregates, weak constraints,
// and a single optional query directive. No arithmetic terms.

struct Term {
    enum class Kind { constant, integer, variable, function };

    Kind kind = Kind::constant;
    std::string symbol;             // constant/variable/function name
    std::int64_t value = 0;         // integer payload
    std::vector<Term> args;         // function arguments

    static Term constant(std::string name);
    static Term integer(std::int64_t v);
    static Term variable(std::string name);
    static Term function(std::string name, std::vector<Term> args);

    bool is_ground() const;
    bool operator==(const Term&) const = default;
};

/// Total order on ground terms: integers < constants < functions, then by value,
/// name, and argument list. Used for builtin comparison and canonical printing.
int compare_terms(const Term& a, const Term& b);

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;
    bool operator==(const Atom&) const = default;
};

enum class BuiltinOp { eq, neq, lt, leq, gt, geq };

const char* to_string(BuiltinOp op);

struct ClassicalLiteral {
    Atom atom;
    bool negated = false; // default negation ("not")
    bool operator==(const ClassicalLiteral&) const = default;
};

struct BuiltinLiteral {
    Term lhs;
    BuiltinOp op = BuiltinOp::eq;
    Term rhs;
    bool operator==(const BuiltinLiteral&) const = default;
};

using Literal = std::variant<ClassicalLiteral, BuiltinLiteral>;

enum class AggregateFunction { count, sum, min, max };

const char* to_string(AggregateFunction f);

struct AggregateElement {
    std::vector<Term> terms;
    std::vector<Literal> condition;
    bool operator==(const AggregateElement&) const = default;
};

struct AggregateGuard {
    BuiltinOp op = BuiltinOp::leq;
    Term bound;
    bool operator==(const AggregateGuard&) const = default;
};

struct AggregateLiteral {
    AggregateFunction function = AggregateFunction::count;
    std::vector<AggregateElement> elements;
    std::optional<AggregateGuard> left;   // bound op #func{...}
    std::optional<AggregateGuard> right;  // #func{...} op bound
    bool negated = false;

    bool operator==(const AggregateLiteral&) const = default;
};

using BodyLiteral = std::variant<Literal, AggregateLiteral>;

struct ChoiceElement {
    Atom atom;
    std::vector<Literal> condition;
    bool operator==(const ChoiceElement&) const = default;
};

struct ChoiceBound {
    BuiltinOp op = BuiltinOp::eq; // one of =, <=, >=
    std::int64_t bound = 0;
    bool operator==(const ChoiceBound&) const = default;
};

struct NormalHead {
    Atom atom;
    bool operator==(const NormalHead&) const = default;
};

struct DisjunctiveHead {
    std::vector<Atom> atoms; // length >= 2
    bool operator==(const DisjunctiveHead&) const = default;
};

struct ChoiceHead {
    std::vector<ChoiceElement> elements;
    std::optional<ChoiceBound> bound;
    bool operator==(const ChoiceHead&) const = default;
};

struct ConstraintHead {
    bool operator==(const ConstraintHead&) const = default;
};

using Head = std::variant<NormalHead, DisjunctiveHead, ChoiceHead, ConstraintHead>;

struct Rule {
    Head head = ConstraintHead{};
    std::vector<BodyLiteral> body;
    bool operator==(const Rule&) const = default;
};

struct WeakConstraint {
    std::vector<Literal> body;
    Term weight;
    Term level = Term::integer(0);
    std::vector<Term> tuple;
    bool operator==(const WeakConstraint&) const = default;
};

struct Program {
    std::vector<Rule> rules;
    std::vector<WeakConstraint> weak_constraints;
    std::optional<Atom> query;
    bool operator==(const Program&) const = default;
};

// Canonical text form; parse(to_string(p)) is structurally equal to p.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const AggregateLiteral& l);
std::string to_string(const BodyLiteral& l);
std::string to_string(const Head& h);
std::string to_string(const Rule& r);
std::string to_string(const WeakConstraint& w);
std::string to_string(const Program& p);

} // namespace aspcomp::asp
