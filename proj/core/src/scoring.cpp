#include <aspcomp/scoring.hpp>

#include <aspcomp/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace aspcomp {

namespace {

std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

Rational reduce(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    Rational r;
    r.num = narrow(n / a);
    r.den = narrow(d / a);
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) { *this = reduce(n, d); }

Rational Rational::operator+(const Rational& o) const {
    return reduce(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                  static_cast<__int128>(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return reduce(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                  static_cast<__int128>(den) * o.den);
}

Rational Rational::operator*(const Rational& o) const {
    return reduce(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("rational division by zero");
    return reduce(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
}

bool Rational::operator==(const Rational& o) const {
    return static_cast<__int128>(num) * o.den == static_cast<__int128>(o.num) * den;
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::decimal(int places) const {
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 n = static_cast<__int128>(num) * scale;
    bool negative = n < 0;
    if (negative) n = -n;
    // round half away from zero
    __int128 q = (2 * n + den) / (2 * static_cast<__int128>(den));
    std::string digits = std::to_string(narrow(q));
    if (places == 0) return (negative ? "-" : "") + digits;
    while (digits.size() <= static_cast<size_t>(places)) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - places, ".");
    return (negative ? "-" : "") + digits;
}

bool strictly_better(const OptOutcome& a, const OptOutcome& b) {
    if (a.kind == OptOutcomeKind::no_answer) return false;
    if (b.kind == OptOutcomeKind::no_answer) return true;
    // An unsat report stands for a (claimed) optimum of the infeasible kind:
    // nothing outranks it, and it outranks every cost-bearing solution. Mixed
    // unsat/solution instances are separately flagged for audit.
    if (a.kind == OptOutcomeKind::unsat) return b.kind == OptOutcomeKind::solution;
    if (b.kind == OptOutcomeKind::unsat) return false;
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.confirmed && !b.confirmed;
}

std::map<std::string, int> InstanceComparison::m_s() const {
    std::map<std::string, int> out;
    const int total = m();
    for (const auto& [system, outcome] : outcomes) {
        if (outcome.kind == OptOutcomeKind::no_answer) {
            out[system] = 0;
            continue;
        }
        int beaten_by = 0;
        for (const auto& [other, other_outcome] : outcomes)
            if (other != system && strictly_better(other_outcome, outcome)) ++beaten_by;
        out[system] = total - beaten_by;
    }
    return out;
}

namespace {

double runtime_of(const std::vector<RunRecord>& records, const std::string& system) {
    double total = 0.0;
    for (const auto& r : records)
        if (r.system == system) total += r.wall_s;
    return total;
}

bool refuted(const RunRecord& r) { return r.witness_ok && !*r.witness_ok; }

}  // namespace

DomainScore score_decision(const std::string& system, const std::string& domain,
                           const std::vector<RunRecord>& records, int n) {
    if (n < 1) throw std::invalid_argument("score_decision: N must be at least 1");
    DomainScore score;
    score.system = system;
    score.domain = domain;
    for (const auto& r : records) {
        if (r.system != system) continue;
        score.runtime_sum += r.wall_s;
        if (r.status != RunStatus::solved || r.claim.kind == ClaimKind::none) continue;
        if (refuted(r)) {
            // One wrong witness invalidates the whole domain.
            score.disqualified = true;
            continue;
        }
        ++score.solved_count;
    }
    score.s = score.disqualified ? Rational(0)
                                 : Rational(static_cast<std::int64_t>(score.solved_count) * 100, n);
    return score;
}

OptScores score_optimization(const std::vector<std::string>& systems, const std::string& domain,
                             const std::vector<RunRecord>& records,
                             const std::vector<std::string>& instances) {
    if (instances.empty()) throw std::invalid_argument("score_optimization: no instances");
    if (systems.empty()) throw std::invalid_argument("score_optimization: no systems");
    const int n = static_cast<int>(instances.size());
    const int m = static_cast<int>(systems.size());

    std::map<std::pair<std::string, std::string>, const RunRecord*> by_pair;
    for (const auto& r : records) by_pair[{r.system, r.instance}] = &r;

    OptScores out;
    std::map<std::string, DomainScore> s1, s2;
    for (const auto& system : systems) {
        DomainScore base;
        base.system = system;
        base.domain = domain;
        base.runtime_sum = runtime_of(records, system);
        s1[system] = base;
        s2[system] = base;
        for (const auto& r : records)
            if (r.system == system && refuted(r)) {
                s1[system].disqualified = true;
                s2[system].disqualified = true;
            }
    }

    for (const auto& instance : instances) {
        InstanceComparison cmp;
        cmp.instance = instance;
        bool any_verified_solution = false;
        bool any_unsat = false;
        for (const auto& system : systems) {
            OptOutcome outcome;  // defaults to no_answer
            auto it = by_pair.find({system, instance});
            if (it != by_pair.end()) {
                const RunRecord& r = *it->second;
                // Refuted claims participate as NoAnswer so a bogus cost
                // cannot depress other systems' rankings.
                if (r.status == RunStatus::solved && !refuted(r)) {
                    switch (r.claim.kind) {
                        case ClaimKind::unsat:
                            outcome.kind = OptOutcomeKind::unsat;
                            outcome.confirmed = r.witness_ok.value_or(false);
                            any_unsat = true;
                            break;
                        case ClaimKind::cost_witness:
                            outcome.kind = OptOutcomeKind::solution;
                            outcome.cost = r.claim.cost.value_or(0);
                            any_verified_solution |= r.witness_ok.value_or(false);
                            break;
                        case ClaimKind::optimum_found:
                            outcome.kind = OptOutcomeKind::solution;
                            outcome.cost = r.claim.cost.value_or(0);
                            outcome.confirmed = true;
                            any_verified_solution |= r.witness_ok.value_or(false);
                            break;
                        case ClaimKind::sat_witness:
                            // A bare witness on an Optimization instance ranks
                            // as an unconfirmed solution of unknown cost only
                            // if a cost was attached; otherwise no answer.
                            if (r.claim.cost) {
                                outcome.kind = OptOutcomeKind::solution;
                                outcome.cost = *r.claim.cost;
                            }
                            break;
                        case ClaimKind::none:
                            break;
                    }
                }
            }
            cmp.outcomes[system] = outcome;
        }
        if (any_unsat && any_verified_solution)
            out.audit_flags.push_back(instance);

        auto shares = cmp.m_s();
        for (const auto& system : systems) {
            const OptOutcome& outcome = cmp.outcomes[system];
            s1[system].s += Rational(static_cast<std::int64_t>(shares[system]) * 100,
                                     static_cast<std::int64_t>(m) * n);
            if (outcome.kind != OptOutcomeKind::no_answer) ++s1[system].solved_count;
            const bool counts_for_s2 =
                (outcome.kind == OptOutcomeKind::solution && outcome.confirmed) ||
                (outcome.kind == OptOutcomeKind::unsat);
            if (counts_for_s2) {
                s2[system].s += Rational(100, n);
                ++s2[system].solved_count;
            }
        }
    }

    for (const auto& system : systems) {
        if (s1[system].disqualified) s1[system].s = Rational(0);
        if (s2[system].disqualified) s2[system].s = Rational(0);
        out.s1.push_back(s1[system]);
        out.s2.push_back(s2[system]);
    }
    return out;
}

std::vector<LeaderboardRow> rank(const std::vector<DomainScore>& scores) {
    std::map<std::string, LeaderboardRow> rows;
    for (const auto& score : scores) {
        auto& row = rows[score.system];
        row.system = score.system;
        row.total += score.disqualified ? Rational(0) : score.s;
        row.runtime_sum += score.runtime_sum;
    }
    std::vector<LeaderboardRow> out;
    out.reserve(rows.size());
    for (auto& [_, row] : rows) out.push_back(std::move(row));
    std::sort(out.begin(), out.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        if (!(a.total == b.total)) return b.total < a.total;
        if (a.runtime_sum != b.runtime_sum) return a.runtime_sum < b.runtime_sum;
        return a.system < b.system;
    });
    return out;
}

}  // namespace aspcomp
