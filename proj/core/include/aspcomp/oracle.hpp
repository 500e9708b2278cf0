#pragma once

#include <aspcomp/ast.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspcomp {

// Set of ground atoms deemed true, in canonical text form; always a subset
// of the program's Herbrand base.
using Interpretation = std::set<std::string>;

struct OracleOptions {
    // Upper bound on enumerable (non-fact) atoms, auxiliaries included;
    // 2^cap interpretations are visited.
    int atom_cap = 22;
};

// Rewrites choice rules into their guess-and-check encoding: per element a
// negation-as-failure pair over a fresh auxiliary, plus integrity
// constraints that forbid every element subset violating the cardinality
// bound. Auxiliary predicates start with "__" and are projected away from
// reported models.
asp::Program expand_choices(const asp::Program& ground);

// All stable models of a variable-free program by brute force: every
// interpretation over the non-fact atoms is tested for being a minimal
// model of the reduct, minimality by enumerating proper subsets. Throws
// TooLarge past the atom cap, UnsupportedConstruct for aggregates or
// variables.
std::vector<Interpretation> enumerate_stable_models(const asp::Program& ground,
                                                    const OracleOptions& options = {});

// Candidate check without enumeration: reduct plus minimality for this one
// interpretation.
bool is_stable_model(const asp::Program& ground, const Interpretation& candidate);

// Sum of weights over the distinct violated weak-constraint tuples at level
// 0. Non-integer weights or levels other than 0 are UnsupportedConstruct.
std::int64_t weak_cost(const asp::Program& ground, const Interpretation& model);

// True iff the claimed atom set is a stable model and, when a cost is
// claimed, the recomputed weak-constraint cost matches it.
bool check_witness(const asp::Program& ground, const std::vector<asp::Atom>& atoms,
                   std::optional<std::int64_t> claimed_cost = std::nullopt);

struct OptimalResult {
    std::int64_t cost = 0;
    Interpretation witness;

    bool operator==(const OptimalResult&) const = default;
};

// Minimum weak-constraint cost over all stable models with one witness
// achieving it; nullopt when the program has no stable model.
std::optional<OptimalResult> optimal_cost(const asp::Program& ground,
                                          const OracleOptions& options = {});

} // namespace aspcomp
