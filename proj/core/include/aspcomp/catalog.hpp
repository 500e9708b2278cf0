#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspcomp {

enum class Task { decision, optimization, query };
enum class Category { sp, mp };
enum class SatStatus { satisfiable, unsatisfiable, unknown };

const char* to_string(Task t);
const char* to_string(Category c);
const char* to_string(SatStatus s);
Task task_from_string(const std::string& s);
Category category_from_string(const std::string& s);
SatStatus sat_status_from_string(const std::string& s);

enum class HardnessClass { very_easy, easy, medium, hard, too_hard, excluded };

const char* to_string(HardnessClass h);
HardnessClass hardness_class_from_string(const std::string& s);

struct Hardness {
    HardnessClass cls = HardnessClass::excluded;
    std::string exclude_reason; // nonempty only when cls == excluded

    static Hardness excluded(std::string reason) {
        return Hardness{HardnessClass::excluded, std::move(reason)};
    }
    bool operator==(const Hardness&) const = default;
};

// One reference-system measurement: either solved within `seconds`, or a
// did-not-finish marker. Timeout markers carry their horizon (1200 or 2400 s);
// memout/error runs never finish regardless of horizon.
struct RefOutcome {
    enum class Kind { solved, timeout1200, timeout2400, memout, error };

    Kind kind = Kind::error;
    double seconds = 0; // meaningful for solved only

    static RefOutcome solved(double s) { return {Kind::solved, s}; }
    static RefOutcome timeout(int horizon_s);

    bool is_solved() const { return kind == Kind::solved; }
    // Horizon the run provably did not finish within: 1200, 2400, or for
    // memout/error any horizon (represented as 2400, the largest used).
    int dnf_horizon() const;

    bool operator==(const RefOutcome&) const = default;
};

const char* to_string(RefOutcome::Kind k);
RefOutcome::Kind ref_outcome_kind_from_string(const std::string& s);

struct InstanceRecord {
    std::string id;
    std::string domain;
    std::string path;
    std::map<std::string, RefOutcome> ref_runtimes; // reference system -> outcome
    SatStatus sat_status = SatStatus::unknown;
    std::optional<Hardness> hardness; // absent until classification ran

    bool operator==(const InstanceRecord&) const = default;
};

struct Domain {
    std::string name;
    Task task = Task::decision;
    std::optional<int> subtrack; // derived by classify, cached here
    std::string encoding_path;
    std::vector<std::string> instances; // instance ids

    bool operator==(const Domain&) const = default;
};

struct SystemEntry {
    std::string name;
    std::string team;
    Category category = Category::sp;
    // Template executed via the shell; {encoding} and {instance} expand to the
    // respective file paths.
    std::string launch_command;
    std::set<int> supported_subtracks;

    bool operator==(const SystemEntry&) const = default;
};

struct CompetitionConfig {
    std::int64_t time_limit_s = 1200;
    std::int64_t mem_limit_bytes = std::int64_t{12} << 30; // 12 GiB
    int n_select = 20;
    int m_free = 1;
    std::uint64_t seed = 0;

    bool operator==(const CompetitionConfig&) const = default;
};

class Catalog {
public:
    CompetitionConfig config;
    std::vector<Domain> domains;
    std::vector<SystemEntry> systems;
    std::vector<InstanceRecord> instances;

    const Domain* find_domain(const std::string& name) const;
    const InstanceRecord* find_instance(const std::string& id) const;
    InstanceRecord* find_instance(const std::string& id);
    const SystemEntry* find_system(const std::string& name, Category category) const;
    std::vector<const InstanceRecord*> instances_of(const Domain& domain) const;

    // Sorts domains by name, systems by (category, name), instances by id,
    // and each domain's instance list. load_manifest returns normalized
    // catalogs; save preserves order, so load(save(c)) == c for normalized c.
    void normalize();

    // Cross-reference and uniqueness checks; DuplicateId / DanglingReference.
    void validate() const;

    bool operator==(const Catalog&) const = default;
};

Catalog load_manifest(const std::string& path);

// Atomic: writes a temp file in the target directory, then renames.
void save_manifest(const Catalog& catalog, const std::string& path);

// Merges a reference-runtime CSV (header `instance_id,system,outcome,seconds`)
// into the catalog. Setting an outcome that is already present for the same
// (instance, system) pair raises DuplicateId: measurement data must be exact,
// never silently overwritten.
void import_ref_runtimes(Catalog& catalog, const std::string& csv_path);

// One row of the shipped Table-1 regression dataset
// (`domain,subtrack,task,class,sat_status,available,selected`); `selected` is
// -1 for domains excluded from the competition.
struct Table1Row {
    std::string domain;
    int subtrack = 0;
    Task task = Task::decision;
    HardnessClass cls = HardnessClass::easy;
    SatStatus sat_status = SatStatus::unknown;
    int available = 0;
    int selected = 0;
};

std::vector<Table1Row> load_table1(const std::string& csv_path);

} // namespace aspcomp
