#include <aspcomp/catalog.hpp>

#include <aspcomp/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <utility>

namespace aspcomp {

using json = nlohmann::ordered_json;

const char* to_string(Task t) {
    switch (t) {
        case Task::decision    : return "decision";
        case Task::optimization: return "optimization";
        case Task::query       : return "query";
    }
    return "?";
}

const char* to_string(Category c) {
    return c == Category::sp ? "SP" : "MP";
}

const char* to_string(SatStatus s) {
    switch (s) {
        case SatStatus::satisfiable  : return "satisfiable";
        case SatStatus::unsatisfiable: return "unsatisfiable";
        case SatStatus::unknown      : return "unknown";
    }
    return "?";
}

const char* to_string(HardnessClass h) {
    switch (h) {
        case HardnessClass::very_easy: return "very_easy";
        case HardnessClass::easy     : return "easy";
        case HardnessClass::medium   : return "medium";
        case HardnessClass::hard     : return "hard";
        case HardnessClass::too_hard : return "too_hard";
        case HardnessClass::excluded : return "excluded";
    }
    return "?";
}

const char* to_string(RefOutcome::Kind k) {
    switch (k) {
        case RefOutcome::Kind::solved     : return "solved";
        case RefOutcome::Kind::timeout1200: return "timeout1200";
        case RefOutcome::Kind::timeout2400: return "timeout2400";
        case RefOutcome::Kind::memout     : return "memout";
        case RefOutcome::Kind::error      : return "error";
    }
    return "?";
}

namespace {

[[noreturn]] void bad_enum(const std::string& what, const std::string& value) {
    throw ParseError("<value>", 0, 0, "unknown " + what + ": \"" + value + "\"");
}

} // namespace

Task task_from_string(const std::string& s) {
    if (s == "decision") return Task::decision;
    if (s == "optimization") return Task::optimization;
    if (s == "query") return Task::query;
    bad_enum("task", s);
}

Category category_from_string(const std::string& s) {
    if (s == "SP") return Category::sp;
    if (s == "MP") return Category::mp;
    bad_enum("category", s);
}

SatStatus sat_status_from_string(const std::string& s) {
    if (s == "satisfiable") return SatStatus::satisfiable;
    if (s == "unsatisfiable") return SatStatus::unsatisfiable;
    if (s == "unknown") return SatStatus::unknown;
    bad_enum("sat_status", s);
}

HardnessClass hardness_class_from_string(const std::string& s) {
    if (s == "very_easy") return HardnessClass::very_easy;
    if (s == "easy") return HardnessClass::easy;
    if (s == "medium") return HardnessClass::medium;
    if (s == "hard") return HardnessClass::hard;
    if (s == "too_hard") return HardnessClass::too_hard;
    if (s == "excluded") return HardnessClass::excluded;
    bad_enum("hardness class", s);
}

RefOutcome::Kind ref_outcome_kind_from_string(const std::string& s) {
    if (s == "solved") return RefOutcome::Kind::solved;
    if (s == "timeout1200") return RefOutcome::Kind::timeout1200;
    if (s == "timeout2400") return RefOutcome::Kind::timeout2400;
    if (s == "memout") return RefOutcome::Kind::memout;
    if (s == "error") return RefOutcome::Kind::error;
    bad_enum("ref outcome", s);
}

RefOutcome RefOutcome::timeout(int horizon_s) {
    if (horizon_s == 1200) {
        return {Kind::timeout1200, 0};
    }
    if (horizon_s == 2400) {
        return {Kind::timeout2400, 0};
    }
    throw Error("unsupported timeout horizon: " + std::to_string(horizon_s));
}

int RefOutcome::dnf_horizon() const {
    switch (kind) {
        case Kind::solved     : return 0;
        case Kind::timeout1200: return 1200;
        case Kind::timeout2400:
        case Kind::memout:
        case Kind::error:
            return 2400;
    }
    return 0;
}

// ---- Catalog ------------------------------------------------------------

const Domain* Catalog::find_domain(const std::string& name) const {
    for (const Domain& d : domains) {
        if (d.name == name) {
            return &d;
        }
    }
    return nullptr;
}

const InstanceRecord* Catalog::find_instance(const std::string& id) const {
    for (const InstanceRecord& i : instances) {
        if (i.id == id) {
            return &i;
        }
    }
    return nullptr;
}

InstanceRecord* Catalog::find_instance(const std::string& id) {
    for (InstanceRecord& i : instances) {
        if (i.id == id) {
            return &i;
        }
    }
    return nullptr;
}

const SystemEntry* Catalog::find_system(const std::string& name, Category category) const {
    for (const SystemEntry& s : systems) {
        if (s.name == name && s.category == category) {
            return &s;
        }
    }
    return nullptr;
}

std::vector<const InstanceRecord*> Catalog::instances_of(const Domain& domain) const {
    std::vector<const InstanceRecord*> out;
    for (const std::string& id : domain.instances) {
        if (const InstanceRecord* i = find_instance(id)) {
            out.push_back(i);
        } else {
            throw DanglingReference(id);
        }
    }
    return out;
}

void Catalog::normalize() {
    std::sort(domains.begin(), domains.end(),
              [](const Domain& a, const Domain& b) { return a.name < b.name; });
    for (Domain& d : domains) {
        std::sort(d.instances.begin(), d.instances.end());
    }
    std::sort(systems.begin(), systems.end(), [](const SystemEntry& a, const SystemEntry& b) {
        return std::tie(a.category, a.name) < std::tie(b.category, b.name);
    });
    std::sort(instances.begin(), instances.end(),
              [](const InstanceRecord& a, const InstanceRecord& b) { return a.id < b.id; });
}

void Catalog::validate() const {
    if (config.time_limit_s <= 0 || config.mem_limit_bytes <= 0 || config.n_select < 1 ||
        config.m_free < 0) {
        throw Error("invalid competition config: limits must be positive, n_select >= 1");
    }
    std::set<std::string> domain_names;
    for (const Domain& d : domains) {
        if (!domain_names.insert(d.name).second) {
            throw DuplicateId(d.name);
        }
        if (d.subtrack && (*d.subtrack < 1 || *d.subtrack > 4)) {
            throw Error("domain " + d.name + ": subtrack out of range");
        }
    }
    std::set<std::string> instance_ids;
    for (const InstanceRecord& i : instances) {
        if (!instance_ids.insert(i.id).second) {
            throw DuplicateId(i.id);
        }
        if (!domain_names.contains(i.domain)) {
            throw DanglingReference(i.domain);
        }
    }
    for (const Domain& d : domains) {
        std::set<std::string> local;
        for (const std::string& id : d.instances) {
            if (!local.insert(id).second) {
                throw DuplicateId(id);
            }
            if (!instance_ids.contains(id)) {
                throw DanglingReference(id);
            }
        }
    }
    std::set<std::pair<Category, std::string>> system_keys;
    for (const SystemEntry& s : systems) {
        if (!system_keys.insert({s.category, s.name}).second) {
            throw DuplicateId(s.name);
        }
        for (int t : s.supported_subtracks) {
            if (t < 1 || t > 4) {
                throw Error("system " + s.name + ": subtrack out of range");
            }
        }
    }
}

// ---- manifest JSON ------------------------------------------------------

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json config_to_json(const CompetitionConfig& c) {
    return json{{"time_limit_s", c.time_limit_s},
                {"mem_limit_bytes", c.mem_limit_bytes},
                {"n_select", c.n_select},
                {"m_free", c.m_free},
                {"seed", c.seed}};
}

CompetitionConfig config_from_json(const json& j) {
    CompetitionConfig c;
    c.time_limit_s = j.value("time_limit_s", c.time_limit_s);
    c.mem_limit_bytes = j.value("mem_limit_bytes", c.mem_limit_bytes);
    c.n_select = j.value("n_select", c.n_select);
    c.m_free = j.value("m_free", c.m_free);
    c.seed = j.value("seed", c.seed);
    return c;
}

json domain_to_json(const Domain& d) {
    json j{{"name", d.name},
           {"task", to_string(d.task)},
           {"encoding", d.encoding_path},
           {"instances", d.instances}};
    if (d.subtrack) {
        j["subtrack"] = *d.subtrack;
    }
    return j;
}

Domain domain_from_json(const json& j) {
    Domain d;
    d.name = j.at("name").get<std::string>();
    d.task = task_from_string(j.at("task").get<std::string>());
    d.encoding_path = j.value("encoding", "");
    if (j.contains("subtrack")) {
        d.subtrack = j.at("subtrack").get<int>();
    }
    if (j.contains("instances")) {
        d.instances = j.at("instances").get<std::vector<std::string>>();
    }
    return d;
}

json system_to_json(const SystemEntry& s) {
    return json{{"name", s.name},
                {"team", s.team},
                {"category", to_string(s.category)},
                {"command", s.launch_command},
                {"subtracks", s.supported_subtracks}};
}

SystemEntry system_from_json(const json& j) {
    SystemEntry s;
    s.name = j.at("name").get<std::string>();
    s.team = j.value("team", "");
    s.category = category_from_string(j.at("category").get<std::string>());
    s.launch_command = j.value("command", "");
    if (j.contains("subtracks")) {
        for (int t : j.at("subtracks")) {
            s.supported_subtracks.insert(t);
        }
    }
    return s;
}

json instance_to_json(const InstanceRecord& i) {
    json runs = json::object();
    for (const auto& [system, outcome] : i.ref_runtimes) {
        json r{{"outcome", to_string(outcome.kind)}};
        if (outcome.is_solved()) {
            r["seconds"] = outcome.seconds;
        }
        runs[system] = std::move(r);
    }
    json j{{"id", i.id},
           {"domain", i.domain},
           {"path", i.path},
           {"sat_status", to_string(i.sat_status)},
           {"ref_runtimes", std::move(runs)}};
    if (i.hardness) {
        j["hardness"] = to_string(i.hardness->cls);
        if (i.hardness->cls == HardnessClass::excluded) {
            j["exclude_reason"] = i.hardness->exclude_reason;
        }
    }
    return j;
}

InstanceRecord instance_from_json(const json& j) {
    InstanceRecord i;
    i.id = j.at("id").get<std::string>();
    i.domain = j.at("domain").get<std::string>();
    i.path = j.value("path", "");
    i.sat_status = sat_status_from_string(j.value("sat_status", "unknown"));
    if (j.contains("ref_runtimes")) {
        for (const auto& [system, r] : j.at("ref_runtimes").items()) {
            RefOutcome o;
            o.kind = ref_outcome_kind_from_string(r.at("outcome").get<std::string>());
            if (o.kind == RefOutcome::Kind::solved) {
                o.seconds = r.at("seconds").get<double>();
            }
            i.ref_runtimes[system] = o;
        }
    }
    if (j.contains("hardness")) {
        Hardness h;
        h.cls = hardness_class_from_string(j.at("hardness").get<std::string>());
        if (h.cls == HardnessClass::excluded) {
            h.exclude_reason = j.value("exclude_reason", "");
        }
        i.hardness = h;
    }
    return i;
}

} // namespace

Catalog load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open manifest: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(path, line, col, e.what());
    }

    Catalog c;
    try {
        if (j.contains("config")) {
            c.config = config_from_json(j.at("config"));
        }
        for (const json& d : j.value("domains", json::array())) {
            c.domains.push_back(domain_from_json(d));
        }
        for (const json& s : j.value("systems", json::array())) {
            c.systems.push_back(system_from_json(s));
        }
        for (const json& i : j.value("instances", json::array())) {
            c.instances.push_back(instance_from_json(i));
        }
    } catch (const json::exception& e) {
        throw ParseError(path, 0, 0, e.what());
    }
    c.normalize();
    c.validate();
    return c;
}

void save_manifest(const Catalog& catalog, const std::string& path) {
    catalog.validate();
    json j;
    j["config"] = config_to_json(catalog.config);
    j["domains"] = json::array();
    for (const Domain& d : catalog.domains) {
        j["domains"].push_back(domain_to_json(d));
    }
    j["systems"] = json::array();
    for (const SystemEntry& s : catalog.systems) {
        j["systems"].push_back(system_to_json(s));
    }
    j["instances"] = json::array();
    for (const InstanceRecord& i : catalog.instances) {
        j["instances"].push_back(instance_to_json(i));
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write manifest: " + tmp);
        }
        out << j.dump(2) << "\n";
        out.flush();
        if (!out) {
            throw IoError("short write: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

// ---- CSV inputs ---------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

void import_ref_runtimes(Catalog& catalog, const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) {
        throw IoError("cannot open reference-runtime CSV: " + csv_path);
    }
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(csv_path, 1, 1, "empty file");
    }
    ++lineno;
    if (split_csv_line(line) != std::vector<std::string>{"instance_id", "system", "outcome", "seconds"}) {
        throw ParseError(csv_path, 1, 1, "expected header instance_id,system,outcome,seconds");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 4) {
            throw ParseError(csv_path, lineno, 1, "expected 4 fields");
        }
        InstanceRecord* rec = catalog.find_instance(f[0]);
        if (!rec) {
            throw DanglingReference(f[0]);
        }
        RefOutcome o;
        try {
            o.kind = ref_outcome_kind_from_string(f[2]);
        } catch (const ParseError&) {
            throw ParseError(csv_path, lineno, 1, "unknown outcome: " + f[2]);
        }
        if (o.kind == RefOutcome::Kind::solved) {
            try {
                o.seconds = std::stod(f[3]);
            } catch (const std::exception&) {
                throw ParseError(csv_path, lineno, 1, "bad seconds value: " + f[3]);
            }
            if (o.seconds < 0) {
                throw ParseError(csv_path, lineno, 1, "negative seconds");
            }
        }
        if (!rec->ref_runtimes.emplace(f[1], o).second) {
            throw DuplicateId(f[0] + "/" + f[1]);
        }
    }
}

std::vector<Table1Row> load_table1(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) {
        throw IoError("cannot open Table-1 CSV: " + csv_path);
    }
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(csv_path, 1, 1, "empty file");
    }
    ++lineno;
    if (split_csv_line(line) !=
        std::vector<std::string>{"domain", "subtrack", "task", "class", "sat_status", "available",
                                 "selected"}) {
        throw ParseError(csv_path, 1, 1,
                         "expected header domain,subtrack,task,class,sat_status,available,selected");
    }
    std::vector<Table1Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 7) {
            throw ParseError(csv_path, lineno, 1, "expected 7 fields");
        }
        Table1Row r;
        r.domain = f[0];
        try {
            r.subtrack = std::stoi(f[1]);
            r.task = task_from_string(f[2]);
            r.cls = hardness_class_from_string(f[3]);
            r.sat_status = sat_status_from_string(f[4]);
            r.available = std::stoi(f[5]);
            r.selected = std::stoi(f[6]);
        } catch (const std::exception& e) {
            throw ParseError(csv_path, lineno, 1, e.what());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace aspcomp
