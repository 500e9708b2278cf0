#include <aspcomp/report.hpp>

#include <aspcomp/errors.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aspcomp {

namespace {

std::string whole_seconds(double s) { return std::to_string(std::llround(s)); }

std::string mebibytes(double bytes) {
    return std::to_string(std::llround(bytes / (1024.0 * 1024.0)));
}

}  // namespace

std::vector<DomainReportRow> build_report(const Catalog& catalog,
                                          const std::vector<RunRecord>& records,
                                          const std::vector<DomainScore>& scores_s1,
                                          const std::vector<DomainScore>& scores_s2) {
    if (records.empty()) throw EmptyScope("no run records");

    std::map<std::string, std::string> instance_domain;
    for (const auto& inst : catalog.instances) instance_domain[inst.id] = inst.domain;

    std::map<std::pair<std::string, std::string>, DomainReportRow> rows;
    std::map<std::pair<std::string, std::string>, std::pair<double, int>> mem_solved;
    for (const auto& r : records) {
        auto dom = instance_domain.find(r.instance);
        if (dom == instance_domain.end()) throw DanglingReference(r.instance);
        auto key = std::make_pair(r.system, dom->second);
        auto& row = rows[key];
        row.solver = r.system;
        row.domain = dom->second;
        row.sum_time_s += r.wall_s;
        switch (r.status) {
            case RunStatus::solved:
                ++row.n_sol;
                mem_solved[key].first += static_cast<double>(r.peak_mem_bytes);
                mem_solved[key].second += 1;
                break;
            case RunStatus::timeout: ++row.n_to; break;
            case RunStatus::memout: ++row.n_mo; break;
            case RunStatus::other_error: ++row.n_oe; break;
        }
    }
    for (auto& [key, row] : rows) {
        auto mem = mem_solved.find(key);
        if (mem != mem_solved.end() && mem->second.second > 0)
            row.avg_mem_solved_bytes = mem->second.first / mem->second.second;
    }
    for (const auto& score : scores_s1) {
        auto it = rows.find({score.system, score.domain});
        if (it == rows.end()) continue;
        it->second.score_s1 = score.disqualified ? Rational(0) : score.s;
        it->second.disqualified |= score.disqualified;
    }
    for (const auto& score : scores_s2) {
        auto it = rows.find({score.system, score.domain});
        if (it == rows.end()) continue;
        it->second.score_s2 = score.disqualified ? Rational(0) : score.s;
        it->second.disqualified |= score.disqualified;
    }

    std::vector<DomainReportRow> out;
    out.reserve(rows.size());
    for (auto& [_, row] : rows) out.push_back(std::move(row));  // map order = sorted
    return out;
}

std::string render_report(const std::vector<DomainReportRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Solver", "Domain", "ScoreASP2015", "ScoreSolved", "Sum(Time)",
                     "Avg(Mem)", "#Sol", "#TO", "#MO", "#OE"});
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const DomainReportRow& a, const DomainReportRow& b) {
        return std::tie(a.solver, a.domain) < std::tie(b.solver, b.domain);
    });
    for (const auto& row : sorted) {
        const std::string marker = row.disqualified ? "*" : "";
        table.push_back({row.solver, row.domain,
                         row.score_s1.decimal(1) + marker, row.score_s2.decimal(1) + marker,
                         whole_seconds(row.sum_time_s),
                         row.avg_mem_solved_bytes ? mebibytes(*row.avg_mem_solved_bytes) : "-",
                         std::to_string(row.n_sol), std::to_string(row.n_to),
                         std::to_string(row.n_mo), std::to_string(row.n_oe)});
    }
    std::vector<size_t> widths(table.front().size(), 0);
    for (const auto& row : table)
        for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    std::ostringstream out;
    for (const auto& row : table) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << row[i] << std::string(widths[i] - row[i].size(), ' ');
        }
        out << '\n';
    }
    return out.str();
}

std::vector<CactusSeries> cactus_data(const std::vector<RunRecord>& records) {
    std::map<std::string, std::vector<double>> per_solver;
    for (const auto& r : records) {
        per_solver.try_emplace(r.system);  // solvers with no solves keep an empty series
        if (r.status == RunStatus::solved) per_solver[r.system].push_back(r.wall_s);
    }
    std::vector<CactusSeries> out;
    for (auto& [solver, times] : per_solver) {
        std::sort(times.begin(), times.end());
        out.push_back({solver, std::move(times)});
    }
    return out;
}

std::string cactus_csv(const std::vector<CactusSeries>& series) {
    std::ostringstream out;
    out << "solver,solved,time_s\n";
    for (const auto& s : series)
        for (size_t k = 0; k < s.times.size(); ++k)
            out << s.solver << ',' << (k + 1) << ',' << s.times[k] << '\n';
    return out.str();
}

std::map<std::string, std::map<int, Rational>> subtrack_contribution(
    const Catalog& catalog, const std::vector<DomainScore>& scores) {
    std::map<std::string, int> domain_subtrack;
    for (const auto& d : catalog.domains)
        if (d.subtrack) domain_subtrack[d.name] = *d.subtrack;

    std::map<std::string, std::map<int, Rational>> totals;
    std::map<std::string, Rational> grand;
    for (const auto& score : scores) {
        auto it = domain_subtrack.find(score.domain);
        if (it == domain_subtrack.end()) throw DanglingReference(score.domain);
        Rational s = score.disqualified ? Rational(0) : score.s;
        totals[score.system][it->second] += s;
        grand[score.system] += s;
    }
    for (auto& [system, by_subtrack] : totals) {
        const Rational& total = grand[system];
        for (auto& [_, share] : by_subtrack)
            share = total == Rational(0) ? Rational(0) : share * Rational(100) / total;
    }
    return totals;
}

}  // namespace aspcomp
