#pragma once

#include <aspcomp/runner.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aspcomp {

// Exact rational on 64-bit components, normalized after every operation.
// Scores are small (per-instance increments of 100/(M*N)), so the reduced
// denominators stay tiny; intermediates widen to 128 bits regardless.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n) {}
    Rational(std::int64_t n, std::int64_t d);

    Rational operator+(const Rational&) const;
    Rational operator-(const Rational&) const;
    Rational operator*(const Rational&) const;
    Rational operator/(const Rational&) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational&) const;
    bool operator<(const Rational&) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    // Fixed-point rendering, round half away from zero: decimal(1) of 26559/10
    // is "2655.9", of 2665 is "2665.0".
    std::string decimal(int places = 1) const;
};

struct DomainScore {
    std::string system;
    std::string domain;
    Rational s;                 // in [0,100]; forced to 0 when disqualified
    bool disqualified = false;
    int solved_count = 0;       // N_S under the active scheme
    double runtime_sum = 0.0;   // wall seconds over attempted instances, timeouts at limit
};

// Per-instance relative ranking input for Optimization domains.
enum class OptOutcomeKind { no_answer, unsat, solution };

struct OptOutcome {
    OptOutcomeKind kind = OptOutcomeKind::no_answer;
    std::int64_t cost = 0;     // meaningful for solution only
    bool confirmed = false;    // optimum claimed (solution) / verified (unsat)
};

struct InstanceComparison {
    std::string instance;
    std::map<std::string, OptOutcome> outcomes;  // one entry per participant system

    int m() const { return static_cast<int>(outcomes.size()); }
    // M_S(I): participants that did not produce a strictly better answer than S;
    // 0 exactly for NoAnswer.
    std::map<std::string, int> m_s() const;
};

bool strictly_better(const OptOutcome& a, const OptOutcome& b);

struct OptScores {
    std::vector<DomainScore> s1;
    std::vector<DomainScore> s2;
    std::vector<std::string> audit_flags;  // instances where unsat met a verified solution
};

// Decision/Query: S(D) = N_S * 100 / N over verified solved records.
DomainScore score_decision(const std::string& system, const std::string& domain,
                           const std::vector<RunRecord>& records, int n);

// Optimization: S1 sums per-instance M_S(I)*100/(M*N); S2 counts confirmed
// optima and unrefuted unsat reports. `records` holds every system's runs for
// the domain; systems absent on an instance take NoAnswer.
OptScores score_optimization(const std::vector<std::string>& systems, const std::string& domain,
                             const std::vector<RunRecord>& records,
                             const std::vector<std::string>& instances);

struct LeaderboardRow {
    std::string system;
    Rational total;
    double runtime_sum = 0.0;
};

// Descending by total; ties ascending by runtime, then by name for stability.
std::vector<LeaderboardRow> rank(const std::vector<DomainScore>& scores);

}  // namespace aspcomp
