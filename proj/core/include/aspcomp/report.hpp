#pragma once

#include <aspcomp/catalog.hpp>
#include <aspcomp/runner.hpp>
#include <aspcomp/scoring.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aspcomp {

struct DomainReportRow {
    std::string solver;
    std::string domain;
    Rational score_s1;                         // "ScoreASP2015"
    Rational score_s2;                         // "ScoreSolved"
    double sum_time_s = 0.0;
    std::optional<double> avg_mem_solved_bytes;  // absent when nothing was solved
    int n_sol = 0;
    int n_to = 0;
    int n_mo = 0;
    int n_oe = 0;
    bool disqualified = false;
};

struct CactusSeries {
    std::string solver;
    std::vector<double> times;  // ascending solve times; index+1 = instances solved
};

// One row per solver x domain present in the records; scores joined from the
// two score lists (a Decision/Query domain passes its single score as both).
std::vector<DomainReportRow> build_report(const Catalog& catalog,
                                          const std::vector<RunRecord>& records,
                                          const std::vector<DomainScore>& scores_s1,
                                          const std::vector<DomainScore>& scores_s2);

// Fixed-width text table, byte-stable: rows sorted by (solver, domain), one
// decimal for scores, whole seconds, mebibytes, "*" marking disqualification.
std::string render_report(const std::vector<DomainReportRow>& rows);

std::vector<CactusSeries> cactus_data(const std::vector<RunRecord>& records);

std::string cactus_csv(const std::vector<CactusSeries>& series);

// Per-solver share of total score contributed by each sub-track, in percent;
// shares sum to 100 (or stay all-zero for scoreless solvers).
std::map<std::string, std::map<int, Rational>> subtrack_contribution(
    const Catalog& catalog, const std::vector<DomainScore>& scores);

}  // namespace aspcomp
