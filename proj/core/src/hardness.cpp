#include <aspcomp/hardness.hpp>

#include <aspcomp/errors.hpp>

#include <algorithm>

namespace aspcomp {

namespace {

constexpr double kVeryEasyMax = 20;
constexpr double kEasyMax = 120;
constexpr double kMediumMax = 1200;
constexpr double kHardMax = 2400;

} // namespace

Hardness classify_instance(const std::map<std::string, RefOutcome>& ref_runtimes) {
    if (ref_runtimes.empty()) throw MissingData("no reference outcomes for instance");

    bool all_solved = true;
    bool all_unsolved_proven_2400 = true; // over unsolved records only
    bool any_solved_below_2400 = false;
    double max_solved = 0;
    for (const auto& [system, outcome] : ref_runtimes) {
        if (outcome.is_solved()) {
            max_solved = std::max(max_solved, outcome.seconds);
            if (outcome.seconds < kHardMax) any_solved_below_2400 = true;
        } else {
            all_solved = false;
            if (outcome.dnf_horizon() < kHardMax) all_unsolved_proven_2400 = false;
        }
    }

    if (all_solved) {
        if (max_solved <= kVeryEasyMax) return {HardnessClass::very_easy};
        if (max_solved < kEasyMax) return {HardnessClass::easy};
        if (max_solved > kEasyMax && max_solved < kMediumMax) return {HardnessClass::medium};
        // Exactly 120 s falls between the Easy and Medium definitions; a
        // maximum of 20 minutes or more, with every system solving, fits no
        // class either.
        return Hardness::excluded("unclassifiable");
    }
    if (any_solved_below_2400) return {HardnessClass::hard};
    // From here every solved record (if any) took 40 minutes or more, itself
    // proof of not finishing within the horizon.
    if (all_unsolved_proven_2400) return {HardnessClass::too_hard};
    // A 20-minute timeout leaves open whether 40 minutes would have sufficed.
    return Hardness::excluded("insufficient horizon");
}

int ClassifiedPool::size() const {
    int total = 0;
    for (const auto& [cell, ids] : cells) total += static_cast<int>(ids.size());
    return total;
}

int ClassifiedPool::class_size(HardnessClass cls) const {
    int total = 0;
    for (const auto& [cell, ids] : cells)
        if (cell.cls == cls) total += static_cast<int>(ids.size());
    return total;
}

std::vector<std::string> ClassifiedPool::class_ids(HardnessClass cls) const {
    std::vector<std::string> out;
    for (const auto& [cell, ids] : cells)
        if (cell.cls == cls) out.insert(out.end(), ids.begin(), ids.end());
    std::sort(out.begin(), out.end());
    return out;
}

ClassifiedPool curate_pool(const Catalog& catalog, const Domain& domain) {
    ClassifiedPool pool;
    pool.domain = domain.name;
    pool.task = domain.task;
    for (const InstanceRecord* rec : catalog.instances_of(domain)) {
        const InstanceRecord& inst = *rec;
        Hardness h = inst.hardness ? *inst.hardness : classify_instance(inst.ref_runtimes);
        if (h.cls == HardnessClass::excluded) {
            pool.excluded.emplace_back(inst.id, h.exclude_reason);
            continue;
        }
        if (h.cls == HardnessClass::very_easy) {
            pool.excluded.emplace_back(inst.id, "uninformative regarding the system ranking");
            continue;
        }
        SatStatus status = inst.sat_status;
        if (domain.task == Task::optimization && status == SatStatus::unsatisfiable) {
            pool.excluded.emplace_back(inst.id, "reported to be unsatisfiable");
            continue;
        }
        // No reference run finished on a TooHard instance, so nothing proved
        // a Decision/Query answer; any stray status is normalized away.
        if (h.cls == HardnessClass::too_hard && domain.task != Task::optimization)
            status = SatStatus::unknown;
        pool.cells[{h.cls, status}].push_back(inst.id);
    }
    for (auto& [cell, ids] : pool.cells) std::sort(ids.begin(), ids.end());
    std::sort(pool.excluded.begin(), pool.excluded.end());
    return pool;
}

} // namespace aspcomp
