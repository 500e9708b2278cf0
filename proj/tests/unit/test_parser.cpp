#include <aspcomp/errors.hpp>
#include <aspcomp/parser.hpp>

#include <doctest.h>

#include "fixtures.hpp"

#include <string>
#include <variant>

using namespace aspcomp;
using namespace aspcomp::asp;

TEST_CASE("parser reads a normal rule with builtins and negation") {
    Program p = fixtures::parse(fixtures::kTourNormal);
    REQUIRE(p.rules.size() == 4);

    const Rule& r = p.rules[0];
    const auto* head = std::get_if<NormalHead>(&r.head);
    REQUIRE(head != nullptr);
    CHECK(head->atom.predicate == "cycle");
    CHECK(head->atom.arity() == 2);
    REQUIRE(r.body.size() == 4);

    const auto* first = std::get_if<Literal>(&r.body[0]);
    REQUIRE(first != nullptr);
    const auto* edge = std::get_if<ClassicalLiteral>(first);
    REQUIRE(edge != nullptr);
    CHECK(edge->atom.predicate == "edge");
    CHECK_FALSE(edge->negated);

    const auto* third = std::get_if<Literal>(&r.body[2]);
    REQUIRE(third != nullptr);
    const auto* neq = std::get_if<BuiltinLiteral>(third);
    REQUIRE(neq != nullptr);
    CHECK(neq->op == BuiltinOp::neq);

    const auto* fourth = std::get_if<Literal>(&r.body[3]);
    REQUIRE(fourth != nullptr);
    const auto* naf = std::get_if<ClassicalLiteral>(fourth);
    REQUIRE(naf != nullptr);
    CHECK(naf->negated);
    CHECK(naf->atom.predicate == "cycle");

    const auto* constraint = std::get_if<ConstraintHead>(&p.rules[3].head);
    CHECK(constraint != nullptr);
}

TEST_CASE("parser reads choice rules with bounds and conditions") {
    Program p = fixtures::parse(fixtures::kTourChoice);
    REQUIRE(p.rules.size() == 4);

    const auto* head = std::get_if<ChoiceHead>(&p.rules[0].head);
    REQUIRE(head != nullptr);
    REQUIRE(head->elements.size() == 1);
    CHECK(head->elements[0].atom.predicate == "cycle");
    REQUIRE(head->elements[0].condition.size() == 1);
    REQUIRE(head->bound.has_value());
    CHECK(head->bound->op == BuiltinOp::eq);
    CHECK(head->bound->bound == 1);
}

TEST_CASE("parser reads disjunctive heads") {
    Program p = fixtures::parse(fixtures::kTourDisjunctive);
    const auto* head = std::get_if<DisjunctiveHead>(&p.rules[0].head);
    REQUIRE(head != nullptr);
    REQUIRE(head->atoms.size() == 2);
    CHECK(head->atoms[0].predicate == "cycle");
    CHECK(head->atoms[1].predicate == "cycle");
}

TEST_CASE("parser reads weak constraints with default and explicit levels") {
    Program p = fixtures::parse(std::string(fixtures::kTourNormal) + fixtures::kTourWeak);
    REQUIRE(p.weak_constraints.size() == 1);
    const WeakConstraint& w = p.weak_constraints[0];
    REQUIRE(w.body.size() == 2);
    CHECK(w.weight == Term::variable("C"));
    CHECK(w.level == Term::integer(0));
    REQUIRE(w.tuple.size() == 2); // [C,X,Y] carries the tuple (X,Y)
    CHECK(w.tuple[0] == Term::variable("X"));
    CHECK(w.tuple[1] == Term::variable("Y"));

    Program q = fixtures::parse("a. :~ a. [1@2,t]\n");
    REQUIRE(q.weak_constraints.size() == 1);
    CHECK(q.weak_constraints[0].weight == Term::integer(1));
    CHECK(q.weak_constraints[0].level == Term::integer(2));
    REQUIRE(q.weak_constraints[0].tuple.size() == 1);
}

TEST_CASE("parser reads one query directive and rejects a second") {
    Program p = fixtures::parse("cycle(1,2). cycle(1,2)?\n");
    REQUIRE(p.query.has_value());
    CHECK(p.query->predicate == "cycle");
    CHECK(p.query->args.size() == 2);

    CHECK_THROWS_AS(fixtures::parse("a. a? b?\n"), SyntaxError);
}

TEST_CASE("parser reads aggregates with guards on either side") {
    Program p = fixtures::parse(
        "p(1). p(2).\n"
        ":- #count{X : p(X)} > 2.\n"
        "q :- 1 <= #sum{X : p(X)} <= 5.\n"
        "r :- #min{X : p(X)} = 1, #max{X : p(X)} = 2.\n");
    REQUIRE(p.rules.size() == 5);

    const auto* agg = std::get_if<AggregateLiteral>(&p.rules[2].body[0]);
    REQUIRE(agg != nullptr);
    CHECK(agg->function == AggregateFunction::count);
    CHECK_FALSE(agg->left.has_value());
    REQUIRE(agg->right.has_value());
    CHECK(agg->right->op == BuiltinOp::gt);
    CHECK(agg->right->bound == Term::integer(2));

    const auto* sum = std::get_if<AggregateLiteral>(&p.rules[3].body[0]);
    REQUIRE(sum != nullptr);
    CHECK(sum->function == AggregateFunction::sum);
    REQUIRE(sum->left.has_value());
    REQUIRE(sum->right.has_value());
    CHECK(sum->left->op == BuiltinOp::leq);
    CHECK(sum->right->op == BuiltinOp::leq);
}

TEST_CASE("parser skips comments and blank lines") {
    Program p = fixtures::parse("% tour fixture\n\na. % trailing note\n% last line\n");
    REQUIRE(p.rules.size() == 1);
}

TEST_CASE("parser round-trips its own canonical text") {
    for (const char* text : {fixtures::kTourNormal, fixtures::kTourChoice,
                             fixtures::kTourDisjunctive, fixtures::kTourFacts}) {
        Program once = fixtures::parse(text);
        Program twice = fixtures::parse(to_string(once));
        CHECK(once == twice);
    }
    Program weak = fixtures::parse(std::string(fixtures::kTourNormal) + fixtures::kTourWeak);
    CHECK(fixtures::parse(to_string(weak)) == weak);

    Program agg = fixtures::parse("p(1). q :- 1 <= #sum{X, a : p(X), not r(X)} <= 5. s? \n");
    CHECK(fixtures::parse(to_string(agg)) == agg);
}

TEST_CASE("parser reports line and column for malformed text") {
    try {
        fixtures::parse("a.\nb :- .\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 0);
        CHECK_FALSE(e.expected.empty());
    }
    CHECK_THROWS_AS(fixtures::parse("p(X"), SyntaxError);
    CHECK_THROWS_AS(fixtures::parse("p(a) q(b).\n"), SyntaxError);
}

TEST_CASE("safety rejects unbound variables once the universe is nonempty") {
    CHECK_THROWS_AS(fixtures::parse("q(a). p(X) :- r(Y).\n"), UnsafeRule);
    CHECK_THROWS_AS(fixtures::parse("q(a). p(X) :- not q(X).\n"), UnsafeRule);

    // Negative and builtin occurrences need a positive binding elsewhere.
    Program ok = fixtures::parse("r(a). p(X) :- not q(X), r(X).\n");
    CHECK(ok.rules.size() == 2);

    try {
        fixtures::parse("q(a). p(X) :- r(Y).\n");
        FAIL("expected an unsafe rule");
    } catch (const UnsafeRule& e) {
        CHECK((e.variable == "X" || e.variable == "Y"));
        CHECK_FALSE(e.rule.empty());
    }
}

TEST_CASE("safety is skipped when the Herbrand universe is empty") {
    // No constant anywhere: every rule grounds to nothing, so nothing to reject.
    Program p = fixtures::parse("p(X) :- q(Y).\n");
    CHECK(p.rules.size() == 1);
}

TEST_CASE("element-local variables may bind inside the element condition") {
    Program p = fixtures::parse(
        "e(a). n(b).\n"
        "ok :- #count{X : e(X)} >= 1.\n"
        "{pick(X) : e(X)} :- n(Y).\n");
    CHECK(p.rules.size() == 4);
}

TEST_CASE("parse_atom_list reads answer lines") {
    auto atoms = parse_atom_list(fixtures::kOptimalTour);
    REQUIRE(atoms.size() == 4);
    CHECK(atoms[0].predicate == "cycle");
    CHECK(atoms[0].args[0] == Term::integer(1));
    CHECK(atoms[0].args[1] == Term::integer(4));

    CHECK(parse_atom_list("").empty());
    CHECK(parse_atom_list("alpha beta(x) gamma(f(1),2).").size() == 3);
    CHECK_THROWS_AS(parse_atom_list("cycle(1,"), SyntaxError);
    CHECK_THROWS_AS(parse_atom_list("cycle(X)"), SyntaxError);
}

TEST_CASE("parse_file round-trips through the filesystem") {
    std::string path = "/tmp/aspcomp_test_parse_file.lp";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs(fixtures::kTourNormal, f);
        std::fclose(f);
    }
    Program p = parse_file(path);
    CHECK(p == fixtures::parse(fixtures::kTourNormal));
    CHECK_THROWS_AS(parse_file("/nonexistent/aspcomp/enc.lp"), IoError);
    std::remove(path.c_str());
}
