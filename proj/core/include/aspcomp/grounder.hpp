#pragma once

#include <aspcomp/ast.hpp>

#include <vector>

namespace aspcomp::asp {

struct GroundOptions {
    // Upper bound on the substitutions enumerated across all rules; exceeding
    // it raises GroundingBlowup. Grounding is meant for desk-scale programs.
    unsigned long long substitution_cap = 1'000'000;
};

// All ground terms occurring in the program, subterms included, sorted by
// compare_terms. This is the (finite) universe naive instantiation ranges
// over.
std::vector<Term> herbrand_universe(const Program& program);

// Safety: every variable of a rule must occur in a positive classical body
// literal; variables local to a choice or aggregate element may instead be
// bound inside the element's own condition. Violations raise UnsafeRule --
// unless the Herbrand universe is empty, in which case every rule with
// variables grounds to nothing and there is nothing to reject.
void check_safety(const Program& program);

// Naive full instantiation over the Herbrand universe, then simplification to
// a fixpoint: builtin literals are evaluated and removed, instances whose
// positive body cannot possibly be derived are dropped, literals over
// fact-only predicates are evaluated, disjunctive heads are sorted, and
// structural duplicates are removed. The result is variable-free and grounding
// it again is the identity.
Program ground_program(const Program& program, const GroundOptions& options = {});

// Grounds `encoding` with `facts` appended as facts (the usual
// encoding-plus-instance split).
Program ground_program(const Program& encoding, const std::vector<Atom>& facts,
                       const GroundOptions& options = {});

} // namespace aspcomp::asp
