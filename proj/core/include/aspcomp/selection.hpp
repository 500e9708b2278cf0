#pragma once

#include <aspcomp/catalog.hpp>
#include <aspcomp/hardness.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace aspcomp {

// Chain of class labels, easiest first. The direct successor relation is
// adjacency in the chain; < and > are its transitive closure and inverse.
struct ClassOrder {
    std::vector<std::string> chain;

    static ClassOrder hardness();        // easy, medium, hard, toohard
    static ClassOrder satisfiability();  // satisfiable, unsatisfiable
    static ClassOrder single(std::string label);
};

// Every per-class quantity of the balancing scheme. The lt/gt suffixes are
// the paper-style < and > superscripts: the easier-side and harder-side
// variants of each symmetric calculation.
struct ClassBalance {
    std::string label;
    int size = 0;
    int gap = 0;
    int available_lt = 0;
    int available_gt = 0;
    int compensate_lt = 0;
    int compensate_gt = 0;
    int distribute_lt = 0;
    int distribute_gt = 0;
    int accumulate_lt = 0;
    int accumulate_gt = 0;
    int increase_lt = 0;
    int increase_gt = 0;
    int select = 0;

    bool operator==(const ClassBalance&) const = default;
};

struct SelectionState {
    int n = 0;
    int m = 0;
    int target = 0;
    std::vector<ClassBalance> classes; // chain order

    const ClassBalance& at(const std::string& label) const;
    int total_select() const;

    bool operator==(const SelectionState&) const = default;
};

// Balanced per-class pick counts: target = floor(n/(nonempty+m)), gaps
// between target and sizes, then compensation of underpopulated classes by
// their nearest neighbors with spare instances, ties favoring the harder
// side. Throws NoNonemptyClass when every class is empty.
SelectionState balance(const std::vector<std::pair<std::string, int>>& classes,
                       const ClassOrder& order, int n, int m);

// Deterministic 64-bit generator (splitmix64) so identical seeds reproduce
// identical picks on any platform.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next();
    // Uniform value in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);

    static SplitMix64 for_domain(std::uint64_t seed, const std::string& domain);
};

// Uniform k-subset via partial Fisher-Yates over the lexicographically
// sorted ids; returned in draw order. Throws KTooLarge when k exceeds the
// list.
std::vector<std::string> seeded_pick(std::vector<std::string> ids, int k, SplitMix64& rng);

enum class FreePickPolicy {
    uniform,  // free picks uniform over the whole remaining pool
    balanced, // free picks repeatedly target the least-picked (class, status) cell
};

struct SelectionPlan {
    std::string domain;
    std::uint64_t seed = 0;
    SelectionState phase1;
    std::map<HardnessClass, SelectionState> phase2; // classes where it ran
    std::map<PoolCell, std::vector<std::string>> mandated;
    std::map<HardnessClass, std::vector<std::string>> topup; // lower-bound fills
    std::vector<std::string> free_picks;

    std::vector<std::string> chosen() const;                  // sorted
    std::map<PoolCell, int> cell_counts(const ClassifiedPool& pool) const;
};

// Two-phase balanced selection for one domain: hardness balancing with
// (n=20, m=1), satisfiability balancing per class with (n=select(class),
// m=0), seeded picks of the mandated counts, fills up to the select(class)
// lower bounds, then free picks until min(20, pool size) in total.
//
// A class whose satisfiability status is entirely unknown skips phase 2 and
// mandates select(class) directly; for Optimization TooHard classes phase 2
// runs over the known-satisfiable instances only, leaving unknowns to the
// free picks. A pool smaller than n_select cannot fill the quota and throws
// PoolTooSmall: the domain is dropped rather than padded short.
SelectionPlan plan_domain(const ClassifiedPool& pool, const CompetitionConfig& config,
                          FreePickPolicy policy = FreePickPolicy::uniform);

} // namespace aspcomp
