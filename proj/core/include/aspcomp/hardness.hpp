#pragma once

#include <aspcomp/catalog.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace aspcomp {

// Empirical hardness from reference outcomes:
//   VeryEasy  all solved, none above 20 s
//   Easy      all solved, some above 20 s, all under 2 min
//   Medium    all solved, some above 2 min, all under 20 min
//   Hard      someone solved under 40 min, someone did not finish in 20 min
//   TooHard   nobody finished within 40 min
// Boundary runtimes (exactly 120 s) and records that leave the 40-minute
// question open (a 20-minute timeout with no longer rerun) come back as
// Excluded with a reason. Solved records are never read as evidence of not
// finishing at a shorter horizon.
Hardness classify_instance(const std::map<std::string, RefOutcome>& ref_runtimes);

struct PoolCell {
    HardnessClass cls = HardnessClass::easy;
    SatStatus status = SatStatus::unknown;

    auto operator<=>(const PoolCell&) const = default;
};

// Curated per-domain instance pool: ids bucketed by hardness class and
// satisfiability status, everything dropped from selection listed under
// excluded with its reason.
struct ClassifiedPool {
    std::string domain;
    Task task = Task::decision;
    std::map<PoolCell, std::vector<std::string>> cells; // ids sorted
    std::vector<std::pair<std::string, std::string>> excluded; // id, reason

    int size() const; // instances across all cells
    int class_size(HardnessClass cls) const;
    std::vector<std::string> class_ids(HardnessClass cls) const; // sorted
};

// Buckets a domain's instances. Instances without a stored hardness are
// classified from their reference runtimes on the fly. Curation drops
// VeryEasy and Excluded instances, drops Unsatisfiable instances of
// Optimization domains, and books TooHard instances of Decision/Query
// domains under Unknown status (no reference run proved anything).
ClassifiedPool curate_pool(const Catalog& catalog, const Domain& domain);

} // namespace aspcomp
