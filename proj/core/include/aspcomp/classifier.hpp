#pragma once

#include <aspcomp/ast.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aspcomp {

struct FeatureSet {
    bool has_choice = false;
    bool has_disjunction = false;
    bool has_aggregates = false;
    bool has_weak_constraints = false;
    bool has_query = false;
    bool is_hcf = true; // vacuously true without disjunction

    bool operator==(const FeatureSet&) const = default;
};

// Positive dependency graph over ground atoms (or predicates in abstract
// mode): an edge runs from each positive body atom to each head atom.
struct DependencyGraph {
    std::vector<std::string> nodes;               // atom/predicate text, sorted
    std::vector<std::pair<int, int>> positive_edges; // body -> head, node indices
    std::vector<std::vector<int>> sccs;           // partition of node indices
};

// Rule + SCC exhibiting two head atoms in one strong component.
struct HcfWitness {
    std::string rule;
    std::vector<std::string> scc_atoms;
};

struct HcfResult {
    bool hcf = true;
    std::optional<HcfWitness> witness; // set iff !hcf
};

// Each flag true iff the construct occurs at least once in the program.
FeatureSet extract_features(const asp::Program& program);

// Decides head-cycle-freeness of a variable-free program: SCCs of the
// positive dependency graph; non-HCF iff some disjunctive rule has two
// distinct head atoms in one SCC. Choice rules contribute no disjunctive
// pairs. Node order is lexicographic so witnesses are reproducible.
HcfResult head_cycle_free(const asp::Program& ground);

DependencyGraph build_dependency_graph(const asp::Program& ground);

// Predicate-level analogue for non-ground programs; conservative (may report
// non-HCF for programs whose groundings are all HCF).
HcfResult head_cycle_free_abstract(const asp::Program& program);

// First sub-track compatible with the features: #1 basic, #2 advanced
// decision, #3 optimization, #4 unrestricted (non-HCF).
int assign_subtrack(const FeatureSet& features);

// Feature extraction + HCF resolution in one step. When the program has
// disjunction, HCF is decided on ground_program(encoding + facts) if facts
// are given, on the encoding itself if it is already variable-free, via the
// abstract graph if allow_abstract -- otherwise HcfUndecided.
struct Classification {
    FeatureSet features;
    int subtrack = 1;
    std::optional<HcfWitness> hcf_witness;
};

Classification classify_program(const asp::Program& encoding,
                                const std::vector<asp::Atom>* facts = nullptr,
                                bool allow_abstract = false);

} // namespace aspcomp
