#include <aspcomp/selection.hpp>

#include <aspcomp/errors.hpp>

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <set>

namespace aspcomp {

ClassOrder ClassOrder::hardness() {
    return {{std::string(to_string(HardnessClass::easy)), to_string(HardnessClass::medium),
             to_string(HardnessClass::hard), to_string(HardnessClass::too_hard)}};
}

ClassOrder ClassOrder::satisfiability() {
    return {{std::string(to_string(SatStatus::satisfiable)),
             to_string(SatStatus::unsatisfiable)}};
}

ClassOrder ClassOrder::single(std::string label) { return {{std::move(label)}}; }

const ClassBalance& SelectionState::at(const std::string& label) const {
    for (const auto& c : classes)
        if (c.label == label) return c;
    throw DanglingReference(label);
}

int SelectionState::total_select() const {
    int total = 0;
    for (const auto& c : classes) total += c.select;
    return total;
}

namespace {

int pos(int g) { return std::max(g, 0); }  // == (|g|+g)/2
int neg(int g) { return std::max(-g, 0); } // == (|g|-g)/2

} // namespace

SelectionState balance(const std::vector<std::pair<std::string, int>>& classes,
                       const ClassOrder& order, int n, int m) {
    SelectionState st;
    st.n = n;
    st.m = m;
    st.classes.resize(order.chain.size());
    for (size_t i = 0; i < order.chain.size(); ++i) st.classes[i].label = order.chain[i];
    for (const auto& [label, size] : classes) {
        auto it = std::find(order.chain.begin(), order.chain.end(), label);
        if (it == order.chain.end()) throw DanglingReference(label);
        st.classes[it - order.chain.begin()].size = size;
    }

    int nonempty = 0;
    for (const auto& c : st.classes)
        if (c.size > 0) ++nonempty;
    if (nonempty == 0) throw NoNonemptyClass();

    st.target = n / (nonempty + m);
    const int last = static_cast<int>(st.classes.size()) - 1;

    for (auto& c : st.classes) c.gap = c.size > 0 ? st.target - c.size : 0;

    for (int i = 0; i <= last; ++i) {
        auto& c = st.classes[i];
        for (int j = 0; j < i; ++j) c.available_lt += st.classes[j].gap;
        for (int j = i + 1; j <= last; ++j) c.available_gt += st.classes[j].gap;
        c.compensate_lt = std::min(pos(c.gap), neg(c.available_lt));
        c.compensate_gt = std::min(pos(c.gap), neg(c.available_gt));
    }

    for (auto& c : st.classes) {
        int g = std::abs(c.gap);
        c.distribute_gt = std::min(c.compensate_lt, std::max(g - c.compensate_gt, g / 2));
        c.distribute_lt = std::min(c.compensate_gt, g - c.distribute_gt);
    }

    // The lt pass walks the chain upward: demand distributed toward harder
    // classes accumulates left to right and is absorbed where spare
    // instances exist.
    for (int i = 0; i <= last; ++i) {
        auto& c = st.classes[i];
        c.accumulate_lt =
            i == 0 ? 0
                   : st.classes[i - 1].accumulate_lt + st.classes[i - 1].distribute_lt -
                         st.classes[i - 1].increase_lt;
        c.increase_lt = std::min(c.accumulate_lt, neg(c.gap));
    }
    // The gt pass walks downward, capped by what the lt pass already took.
    for (int i = last; i >= 0; --i) {
        auto& c = st.classes[i];
        c.accumulate_gt =
            i == last ? 0
                      : st.classes[i + 1].accumulate_gt + st.classes[i + 1].distribute_gt -
                            st.classes[i + 1].increase_gt;
        c.increase_gt = std::min(c.accumulate_gt, neg(c.gap) - c.increase_lt);
    }

    for (auto& c : st.classes) c.select = c.size - neg(c.gap) + c.increase_lt + c.increase_gt;
    return st;
}

std::uint64_t SplitMix64::next() {
    // Constants from the published splitmix64 reference implementation.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    // Rejection sampling kills modulo bias while staying reproducible.
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

SplitMix64 SplitMix64::for_domain(std::uint64_t seed, const std::string& domain) {
    // FNV-1a, 64-bit.
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : domain) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return {seed ^ h};
}

std::vector<std::string> seeded_pick(std::vector<std::string> ids, int k, SplitMix64& rng) {
    if (k < 0 || static_cast<size_t>(k) > ids.size())
        throw KTooLarge(k, static_cast<int>(ids.size()));
    std::sort(ids.begin(), ids.end());
    for (int i = 0; i < k; ++i) {
        auto j = i + rng.below(ids.size() - i);
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return ids;
}

std::vector<std::string> SelectionPlan::chosen() const {
    std::vector<std::string> out;
    for (const auto& [cell, ids] : mandated) out.insert(out.end(), ids.begin(), ids.end());
    for (const auto& [cls, ids] : topup) out.insert(out.end(), ids.begin(), ids.end());
    out.insert(out.end(), free_picks.begin(), free_picks.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::map<PoolCell, int> SelectionPlan::cell_counts(const ClassifiedPool& pool) const {
    std::map<std::string, PoolCell> cell_of;
    for (const auto& [cell, ids] : pool.cells)
        for (const auto& id : ids) cell_of[id] = cell;
    std::map<PoolCell, int> counts;
    for (const auto& id : chosen()) ++counts[cell_of.at(id)];
    return counts;
}

namespace {

constexpr HardnessClass kChain[] = {HardnessClass::easy, HardnessClass::medium,
                                    HardnessClass::hard, HardnessClass::too_hard};

std::vector<std::string> cell_ids(const ClassifiedPool& pool, PoolCell cell) {
    auto it = pool.cells.find(cell);
    return it == pool.cells.end() ? std::vector<std::string>{} : it->second;
}

} // namespace

SelectionPlan plan_domain(const ClassifiedPool& pool, const CompetitionConfig& config,
                          FreePickPolicy policy) {
    // A domain that cannot fill the quota is dropped from the competition
    // ("insufficient number of instances"), not padded with a short pick.
    if (pool.size() < config.n_select) throw PoolTooSmall(pool.domain);

    SelectionPlan plan;
    plan.domain = pool.domain;
    plan.seed = config.seed;
    auto rng = SplitMix64::for_domain(config.seed, pool.domain);

    std::vector<std::pair<std::string, int>> sizes;
    for (auto cls : kChain) sizes.emplace_back(to_string(cls), pool.class_size(cls));
    plan.phase1 = balance(sizes, ClassOrder::hardness(), config.n_select, config.m_free);

    std::set<std::string> taken;
    auto pick_into = [&](std::vector<std::string>& out, std::vector<std::string> from,
                         int k) {
        std::erase_if(from, [&](const std::string& id) { return taken.count(id) > 0; });
        for (auto& id : seeded_pick(std::move(from), k, rng)) {
            taken.insert(id);
            out.push_back(id);
        }
    };

    // Phase 2 and the mandated picks, class by class up the chain.
    for (auto cls : kChain) {
        int want = plan.phase1.at(to_string(cls)).select;
        if (want == 0) continue;
        auto sat = cell_ids(pool, {cls, SatStatus::satisfiable});
        auto unsat = cell_ids(pool, {cls, SatStatus::unsatisfiable});
        if (pool.task == Task::optimization && cls == HardnessClass::too_hard) {
            // Unknown-status instances are not considered for balancing;
            // they can still arrive among the free picks.
            if (sat.empty()) {
                pick_into(plan.mandated[{cls, SatStatus::unknown}],
                          pool.class_ids(cls), want);
                continue;
            }
            auto st = balance({{to_string(SatStatus::satisfiable),
                                static_cast<int>(sat.size())}},
                              ClassOrder::single(to_string(SatStatus::satisfiable)), want, 0);
            plan.phase2.emplace(cls, st);
            pick_into(plan.mandated[{cls, SatStatus::satisfiable}], sat,
                      st.at(to_string(SatStatus::satisfiable)).select);
            continue;
        }
        if (sat.empty() && unsat.empty()) {
            // No known status in the class (Decision/Query TooHard): the
            // satisfiability phase would divide by zero, so the whole class
            // mandate is drawn directly.
            pick_into(plan.mandated[{cls, SatStatus::unknown}], pool.class_ids(cls), want);
            continue;
        }
        auto st = balance({{to_string(SatStatus::satisfiable), static_cast<int>(sat.size())},
                           {to_string(SatStatus::unsatisfiable),
                            static_cast<int>(unsat.size())}},
                          ClassOrder::satisfiability(), want, 0);
        plan.phase2.emplace(cls, st);
        if (int k = st.at(to_string(SatStatus::satisfiable)).select; k > 0)
            pick_into(plan.mandated[{cls, SatStatus::satisfiable}], sat, k);
        if (int k = st.at(to_string(SatStatus::unsatisfiable)).select; k > 0)
            pick_into(plan.mandated[{cls, SatStatus::unsatisfiable}], unsat, k);
    }

    const int budget = std::min(config.n_select, pool.size());

    // Rounding in phase 2 can leave a class short of select(class); fill
    // from the class at large so the lower bounds hold, charging the free
    // share.
    for (auto cls : kChain) {
        int want = plan.phase1.at(to_string(cls)).select;
        int have = 0;
        for (const auto& [cell, ids] : plan.mandated)
            if (cell.cls == cls) have += static_cast<int>(ids.size());
        int room = budget - static_cast<int>(taken.size());
        if (have >= want || room <= 0) continue;
        auto remainder = pool.class_ids(cls);
        std::erase_if(remainder, [&](const std::string& id) { return taken.count(id) > 0; });
        int k = std::min({want - have, static_cast<int>(remainder.size()), room});
        if (k > 0) pick_into(plan.topup[cls], std::move(remainder), k);
    }

    // Free picks.
    int room = budget - static_cast<int>(taken.size());
    if (room > 0 && policy == FreePickPolicy::uniform) {
        std::vector<std::string> remainder;
        for (const auto& [cell, ids] : pool.cells)
            for (const auto& id : ids)
                if (!taken.count(id)) remainder.push_back(id);
        pick_into(plan.free_picks, std::move(remainder), room);
    } else if (room > 0) {
        auto counts = plan.cell_counts(pool);
        for (; room > 0; --room) {
            // Least-picked cell with instances left; ties go to the harder
            // class, then satisfiable before unsatisfiable before unknown.
            const PoolCell* best = nullptr;
            std::vector<std::string> best_ids;
            for (const auto& [cell, ids] : pool.cells) {
                std::vector<std::string> open = ids;
                std::erase_if(open, [&](const std::string& id) { return taken.count(id) > 0; });
                if (open.empty()) continue;
                if (!best) {
                    best = &cell;
                    best_ids = std::move(open);
                    continue;
                }
                int cur = counts[cell], sel = counts[*best];
                if (cur < sel ||
                    (cur == sel && (cell.cls > best->cls ||
                                    (cell.cls == best->cls && cell.status < best->status)))) {
                    best = &cell;
                    best_ids = std::move(open);
                }
            }
            if (!best) break;
            PoolCell cell = *best;
            pick_into(plan.free_picks, std::move(best_ids), 1);
            ++counts[cell];
        }
    }
    return plan;
}

} // namespace aspcomp
