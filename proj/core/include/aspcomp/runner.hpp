#pragma once

#include <aspcomp/ast.hpp>
#include <aspcomp/catalog.hpp>
#include <aspcomp/selection.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace aspcomp {

enum class RunStatus { solved, timeout, memout, other_error };

enum class ClaimKind { none, sat_witness, unsat, cost_witness, optimum_found };

struct Claim {
    ClaimKind kind = ClaimKind::none;
    std::vector<asp::Atom> atoms;          // witness for sat/cost/optimum claims
    std::optional<std::int64_t> cost;      // for cost/optimum claims
    std::string diagnostic;                // why a malformed answer degraded to none
};

struct RunRecord {
    std::string system;
    std::string instance;
    RunStatus status = RunStatus::other_error;
    double wall_s = 0.0;
    double cpu_s = 0.0;
    std::uint64_t peak_mem_bytes = 0;
    Claim claim;
    std::optional<bool> witness_ok;        // set by oracle verification, else trusted
};

const char* to_string(RunStatus);
const char* to_string(ClaimKind);
RunStatus run_status_from(const std::string&);
ClaimKind claim_kind_from(const std::string&);

struct JobSpec {
    std::string system;
    std::string instance;
    std::string command;                   // handed to /bin/sh -c, placeholders resolved
    double time_limit_s = 1200.0;
    std::uint64_t mem_limit_bytes = 12ull << 30;
    int cores = 1;                         // 1 = SP job, pinned to a single core
    int cpu_slot = -1;                     // worker slot for SP pinning; -1 = no pin
    Task task = Task::decision;
};

// Line-oriented recognizer: `ANSWER` + following atom line, `UNSATISFIABLE`,
// `COST <int>`, `OPTIMUM FOUND`; anything else leaves the claim at none.
// A malformed atom line degrades to none with a diagnostic.
Claim parse_solver_output(const std::string& text, Task task);

// Fork/exec under wall-clock and address-space limits; never throws for child
// failures — a spawn error comes back as an OtherError record.
RunRecord run_job(const JobSpec& spec);

struct CampaignOptions {
    std::filesystem::path log_path;        // CSV, append-then-fsync; parent dir must exist
    int workers = 1;
    bool verify_witnesses = false;         // left to the scorer by default
};

// Expands (system, selected instance) pairs into concrete jobs. The command
// template substitutes {encoding} and {instance} path placeholders.
std::vector<JobSpec> campaign_jobs(const Catalog& catalog,
                                   const std::vector<SelectionPlan>& plans,
                                   const std::vector<SystemEntry>& systems,
                                   std::optional<Category> category = std::nullopt);

// Runs all jobs not already present in the log; results stream to the log as
// they complete. Returns the full set of records (resumed + fresh).
std::vector<RunRecord> run_campaign(const std::vector<JobSpec>& jobs, const CampaignOptions& options);

// Log access shared with the scorer and report stages.
std::vector<RunRecord> load_run_log(const std::filesystem::path& log_path);
void append_run_record(const std::filesystem::path& log_path, const RunRecord& record);

}  // namespace aspcomp
