#include <aspcomp/runner.hpp>

#include <aspcomp/errors.hpp>
#include <aspcomp/parser.hpp>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <fstream>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

namespace aspcomp {

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::solved: return "solved";
        case RunStatus::timeout: return "timeout";
        case RunStatus::memout: return "memout";
        case RunStatus::other_error: return "other_error";
    }
    return "other_error";
}

const char* to_string(ClaimKind k) {
    switch (k) {
        case ClaimKind::none: return "none";
        case ClaimKind::sat_witness: return "sat_witness";
        case ClaimKind::unsat: return "unsat";
        case ClaimKind::cost_witness: return "cost_witness";
        case ClaimKind::optimum_found: return "optimum_found";
    }
    return "none";
}

RunStatus run_status_from(const std::string& s) {
    if (s == "solved") return RunStatus::solved;
    if (s == "timeout") return RunStatus::timeout;
    if (s == "memout") return RunStatus::memout;
    if (s == "other_error") return RunStatus::other_error;
    throw IoError("unknown run status: " + s);
}

ClaimKind claim_kind_from(const std::string& s) {
    if (s == "none") return ClaimKind::none;
    if (s == "sat_witness") return ClaimKind::sat_witness;
    if (s == "unsat") return ClaimKind::unsat;
    if (s == "cost_witness") return ClaimKind::cost_witness;
    if (s == "optimum_found") return ClaimKind::optimum_found;
    throw IoError("unknown claim kind: " + s);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<std::vector<asp::Atom>> parse_atom_line(const std::string& line, std::string& why) {
    try {
        return asp::parse_atom_list(line);
    } catch (const Error& e) {
        why = e.what();
        return std::nullopt;
    }
}

}  // namespace

Claim parse_solver_output(const std::string& text, Task task) {
    Claim claim;
    std::vector<asp::Atom> atoms;
    bool saw_answer = false, saw_unsat = false, saw_optimum = false, malformed = false;
    std::optional<std::int64_t> cost;

    std::istringstream in(text);
    std::string line;
    bool expect_atoms = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (expect_atoms) {
            expect_atoms = false;
            std::string why;
            auto parsed = parse_atom_line(line, why);
            if (!parsed) {
                malformed = true;
                claim.diagnostic = "malformed witness: " + why;
                continue;
            }
            atoms = *parsed;
            continue;
        }
        if (line == "ANSWER") {
            saw_answer = true;
            expect_atoms = true;
        } else if (line == "UNSATISFIABLE") {
            saw_unsat = true;
        } else if (line == "OPTIMUM FOUND") {
            saw_optimum = true;
        } else if (line.rfind("COST ", 0) == 0) {
            try {
                cost = std::stoll(line.substr(5));
            } catch (const std::exception&) {
                malformed = true;
                claim.diagnostic = "malformed cost line: " + line;
            }
        }
    }

    if (malformed) return claim;  // kind stays none, diagnostic set
    if (saw_unsat) {
        claim.kind = ClaimKind::unsat;
        return claim;
    }
    if (!saw_answer) return claim;
    claim.atoms = std::move(atoms);
    claim.cost = cost;
    if (task == Task::optimization && cost) {
        claim.kind = saw_optimum ? ClaimKind::optimum_found : ClaimKind::cost_witness;
    } else {
        claim.kind = ClaimKind::sat_witness;
    }
    return claim;
}

namespace {

RunRecord error_record(const JobSpec& spec, const std::string& diagnostic) {
    RunRecord r;
    r.system = spec.system;
    r.instance = spec.instance;
    r.status = RunStatus::other_error;
    r.claim.diagnostic = diagnostic;
    return r;
}

// VmPeak from /proc/<pid>/status, in bytes; 0 when unavailable.
std::uint64_t vm_peak_bytes(pid_t pid) {
    std::ifstream in("/proc/" + std::to_string(pid) + "/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmPeak:", 0) == 0) {
            std::istringstream fields(line.substr(7));
            std::uint64_t kib = 0;
            fields >> kib;
            return kib * 1024;
        }
    }
    return 0;
}

}  // namespace

RunRecord run_job(const JobSpec& spec) {
    using clock = std::chrono::steady_clock;

    int out_pipe[2];
    if (pipe(out_pipe) != 0) return error_record(spec, "pipe failed");

    const auto start = clock::now();
    pid_t pid = fork();
    if (pid < 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        return error_record(spec, "fork failed");
    }
    if (pid == 0) {
        // Child: own process group so the whole solver tree dies on one kill.
        setpgid(0, 0);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        // Address-space backstop at twice the limit; the precise check is the
        // parent's VmPeak poll, this guards against allocation sprints.
        if (spec.mem_limit_bytes < UINT64_MAX / 2) {
            rlimit rl{2 * spec.mem_limit_bytes, 2 * spec.mem_limit_bytes};
            setrlimit(RLIMIT_AS, &rl);
        }
        if (spec.cores == 1 && spec.cpu_slot >= 0) {
            long ncpu = sysconf(_SC_NPROCESSORS_ONLN);
            if (ncpu > 0) {
                cpu_set_t set;
                CPU_ZERO(&set);
                CPU_SET(static_cast<int>(spec.cpu_slot % ncpu), &set);
                sched_setaffinity(0, sizeof(set), &set);
            }
        }
        execl("/bin/sh", "sh", "-c", spec.command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(out_pipe[1]);
    const auto deadline = start + std::chrono::duration_cast<clock::duration>(
                              std::chrono::duration<double>(spec.time_limit_s));

    std::string output;
    std::uint64_t peak_vm = 0;
    bool timed_out = false, memed_out = false;
    bool output_open = true;
    int exit_status = 0;
    bool reaped = false;
    rusage usage{};

    auto kill_group = [&] { kill(-pid, SIGKILL); kill(pid, SIGKILL); };

    while (true) {
        const auto now = clock::now();
        if (!timed_out && !memed_out && now >= deadline) {
            timed_out = true;
            kill_group();
        }
        peak_vm = std::max(peak_vm, vm_peak_bytes(pid));
        if (!timed_out && !memed_out && peak_vm > spec.mem_limit_bytes) {
            memed_out = true;
            kill_group();
        }

        // Drain stdout so the child never blocks on a full pipe; cap the wait
        // at the 100 ms sampling period or the time left to the deadline, and
        // keep it short once a kill is in flight so the recorded wall time
        // stays close to the limit.
        int wait_ms = 100;
        if (timed_out || memed_out) {
            wait_ms = 2;
        } else {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
            wait_ms = std::clamp<int>(static_cast<int>(left.count()), 0, 100);
        }
        if (output_open) {
            pollfd pfd{out_pipe[0], POLLIN, 0};
            int ready = poll(&pfd, 1, wait_ms);
            if (ready > 0) {
                char buf[65536];
                ssize_t n = read(out_pipe[0], buf, sizeof(buf));
                if (n > 0) {
                    output.append(buf, static_cast<size_t>(n));
                } else {
                    output_open = false;
                }
            }
        } else {
            int status = 0;
            pid_t done = wait4(pid, &status, WNOHANG, &usage);
            if (done == pid) {
                exit_status = status;
                reaped = true;
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
        }
    }
    close(out_pipe[0]);
    if (!reaped) wait4(pid, &exit_status, 0, &usage);

    RunRecord record;
    record.system = spec.system;
    record.instance = spec.instance;
    record.wall_s = std::chrono::duration<double>(clock::now() - start).count();
    record.cpu_s = static_cast<double>(usage.ru_utime.tv_sec + usage.ru_stime.tv_sec) +
                   static_cast<double>(usage.ru_utime.tv_usec + usage.ru_stime.tv_usec) / 1e6;
    record.peak_mem_bytes = std::max<std::uint64_t>(
        static_cast<std::uint64_t>(usage.ru_maxrss) * 1024, peak_vm > spec.mem_limit_bytes ? peak_vm : 0);
    if (record.peak_mem_bytes == 0)
        record.peak_mem_bytes = static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;

    if (timed_out) {
        record.status = RunStatus::timeout;
        record.wall_s = std::max(record.wall_s, spec.time_limit_s);
        return record;
    }
    // Memout: declared by the poll, or evident post-hoc from resident usage
    // (a sprinting allocator can finish between 100 ms samples).
    if (memed_out || peak_vm > spec.mem_limit_bytes ||
        static_cast<std::uint64_t>(usage.ru_maxrss) * 1024 > spec.mem_limit_bytes) {
        record.status = RunStatus::memout;
        return record;
    }
    if (!WIFEXITED(exit_status)) {
        record.status = RunStatus::other_error;
        record.claim.diagnostic = "terminated by signal " + std::to_string(WTERMSIG(exit_status));
        return record;
    }
    if (WEXITSTATUS(exit_status) == 127) {
        record.status = RunStatus::other_error;
        record.claim.diagnostic = "command not found";
        return record;
    }
    record.claim = parse_solver_output(output, spec.task);
    // Solvers signal their verdict on stdout, not via exit codes (which vary
    // by convention); an exit with no recognizable claim is an error outcome.
    record.status = record.claim.kind == ClaimKind::none ? RunStatus::other_error : RunStatus::solved;
    return record;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\n\"") != std::string::npos)
        throw IoError("run log fields must not contain commas, quotes, or newlines: " + s);
    return s;
}

std::string atoms_text(const std::vector<asp::Atom>& atoms) {
    std::string out;
    for (const auto& a : atoms) {
        if (!out.empty()) out += " ";
        out += asp::to_string(a) + ".";
    }
    return out;
}

// Instance ids routinely contain '/'; flatten anything path-hostile so every
// sidecar lands directly in the witness directory.
std::string file_token(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
    return out;
}

}  // namespace

void append_run_record(const std::filesystem::path& log_path, const RunRecord& record) {
    std::filesystem::path witness_path;
    if (!record.claim.atoms.empty()) {
        auto dir = log_path.parent_path() / "witness";
        std::filesystem::create_directories(dir);
        witness_path = dir / (file_token(record.system) + "__" + file_token(record.instance) + ".lp");
        std::ofstream w(witness_path, std::ios::trunc);
        if (!w) throw IoError("cannot write witness file: " + witness_path.string());
        w << atoms_text(record.claim.atoms) << '\n';
    }

    std::ostringstream row;
    row << csv_field(record.system) << ',' << csv_field(record.instance) << ','
        << to_string(record.status) << ',' << record.wall_s << ',' << record.cpu_s << ','
        << record.peak_mem_bytes << ',' << to_string(record.claim.kind) << ','
        << (record.claim.cost ? std::to_string(*record.claim.cost) : "") << ','
        << csv_field(witness_path.string()) << '\n';

    int fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw IoError("cannot open run log: " + log_path.string());
    const std::string line = row.str();
    ssize_t written = write(fd, line.data(), line.size());
    // Durability before acknowledgment: a record is only "taken" once fsynced.
    if (written != static_cast<ssize_t>(line.size()) || fsync(fd) != 0) {
        close(fd);
        throw IoError("short write to run log: " + log_path.string());
    }
    close(fd);
}

std::vector<RunRecord> load_run_log(const std::filesystem::path& log_path) {
    std::vector<RunRecord> records;
    std::ifstream in(log_path);
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        while (fields.size() < 9) fields.emplace_back();
        RunRecord r;
        r.system = fields[0];
        r.instance = fields[1];
        r.status = run_status_from(fields[2]);
        r.wall_s = std::stod(fields[3]);
        r.cpu_s = std::stod(fields[4]);
        r.peak_mem_bytes = std::stoull(fields[5]);
        r.claim.kind = claim_kind_from(fields[6]);
        if (!fields[7].empty()) r.claim.cost = std::stoll(fields[7]);
        if (!fields[8].empty()) {
            std::ifstream w(fields[8]);
            std::stringstream text;
            text << w.rdbuf();
            std::string why;
            if (auto atoms = parse_atom_line(trim(text.str()), why)) r.claim.atoms = *atoms;
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<JobSpec> campaign_jobs(const Catalog& catalog,
                                   const std::vector<SelectionPlan>& plans,
                                   const std::vector<SystemEntry>& systems,
                                   std::optional<Category> category) {
    std::vector<JobSpec> jobs;
    for (const auto& plan : plans) {
        const Domain* domain = catalog.find_domain(plan.domain);
        if (!domain) throw DanglingReference(plan.domain);
        for (const auto& system : systems) {
            if (category && system.category != *category) continue;
            if (domain->subtrack && !system.supported_subtracks.empty() &&
                !system.supported_subtracks.count(*domain->subtrack))
                continue;
            for (const auto& instance_id : plan.chosen()) {
                const InstanceRecord* inst = catalog.find_instance(instance_id);
                if (!inst) throw DanglingReference(instance_id);
                JobSpec job;
                job.system = system.name;
                job.instance = inst->id;
                job.command = system.launch_command;
                auto substitute = [&](const std::string& key, const std::string& value) {
                    size_t at;
                    while ((at = job.command.find(key)) != std::string::npos)
                        job.command.replace(at, key.size(), value);
                };
                substitute("{encoding}", domain->encoding_path);
                substitute("{instance}", inst->path);
                job.time_limit_s = static_cast<double>(catalog.config.time_limit_s);
                job.mem_limit_bytes = catalog.config.mem_limit_bytes;
                job.cores = system.category == Category::mp ? 0 : 1;  // 0 = all cores
                job.task = domain->task;
                jobs.push_back(std::move(job));
            }
        }
    }
    return jobs;
}

std::vector<RunRecord> run_campaign(const std::vector<JobSpec>& jobs, const CampaignOptions& options) {
    std::vector<RunRecord> records = load_run_log(options.log_path);
    std::set<std::pair<std::string, std::string>> done;
    for (const auto& r : records) done.emplace(r.system, r.instance);

    std::vector<const JobSpec*> pending;
    std::set<std::pair<std::string, std::string>> queued = done;
    for (const auto& job : jobs)
        if (queued.emplace(job.system, job.instance).second) pending.push_back(&job);

    std::mutex mu;
    std::condition_variable cv;
    std::queue<RunRecord> results;
    size_t next_job = 0;
    size_t outstanding = pending.size();

    const int workers = std::max(1, options.workers);
    std::vector<std::thread> pool;
    for (int slot = 0; slot < workers; ++slot) {
        pool.emplace_back([&, slot] {
            while (true) {
                const JobSpec* job = nullptr;
                {
                    std::lock_guard lock(mu);
                    if (next_job >= pending.size()) return;
                    job = pending[next_job++];
                }
                JobSpec pinned = *job;
                if (pinned.cores == 1) pinned.cpu_slot = slot;
                RunRecord record = run_job(pinned);
                {
                    std::lock_guard lock(mu);
                    results.push(std::move(record));
                }
                cv.notify_one();
            }
        });
    }

    // Single writer: every completed record is durable before it is counted.
    while (outstanding > 0) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return !results.empty(); });
        RunRecord record = std::move(results.front());
        results.pop();
        lock.unlock();
        append_run_record(options.log_path, record);
        records.push_back(std::move(record));
        --outstanding;
    }
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace aspcomp
