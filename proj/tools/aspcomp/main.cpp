// Competition pipeline entry point: classify, hardness, select, run, score,
// rank, report. Every subcommand reads and writes plain files; exit code 0 on
// success, 2 on validation errors, 3 on data errors.
#include <aspcomp/classifier.hpp>
#include <aspcomp/errors.hpp>
#include <aspcomp/grounder.hpp>
#include <aspcomp/hardness.hpp>
#include <aspcomp/oracle.hpp>
#include <aspcomp/parser.hpp>
#include <aspcomp/report.hpp>
#include <aspcomp/runner.hpp>
#include <aspcomp/scoring.hpp>
#include <aspcomp/selection.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using aspcomp::Rational;
using json = nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw aspcomp::IoError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw aspcomp::IoError("cannot write " + path);
    out << text;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        spill(out_path, text);
}

json rational_json(const Rational& r) {
    return json{{"num", r.num}, {"den", r.den}, {"display", r.decimal(1)}};
}

json features_json(const aspcomp::FeatureSet& f) {
    return json{{"has_choice", f.has_choice},
                {"has_disjunction", f.has_disjunction},
                {"has_aggregates", f.has_aggregates},
                {"has_weak_constraints", f.has_weak_constraints},
                {"has_query", f.has_query},
                {"is_hcf", f.is_hcf}};
}

int cmd_classify(const std::string& encoding_path, const std::string& facts_path,
                 bool abstract_mode, const std::string& out_path) {
    aspcomp::asp::Program encoding = aspcomp::asp::parse_program(slurp(encoding_path), encoding_path);
    std::vector<aspcomp::asp::Atom> facts;
    bool have_facts = false;
    if (!facts_path.empty()) {
        aspcomp::asp::Program fp = aspcomp::asp::parse_program(slurp(facts_path), facts_path);
        for (const auto& rule : fp.rules) {
            const auto* head = std::get_if<aspcomp::asp::NormalHead>(&rule.head);
            if (!head || !rule.body.empty() || !head->atom.is_ground())
                throw aspcomp::ParseError(facts_path, 0, 0, "facts file must contain ground facts only");
            facts.push_back(head->atom);
        }
        have_facts = true;
    }
    aspcomp::Classification c =
        aspcomp::classify_program(encoding, have_facts ? &facts : nullptr, abstract_mode);
    json out{{"features", features_json(c.features)}, {"subtrack", c.subtrack}};
    if (c.hcf_witness)
        out["hcf_witness"] = json{{"rule", c.hcf_witness->rule},
                                  {"scc_atoms", c.hcf_witness->scc_atoms}};
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_hardness(const std::string& manifest_path, const std::string& runtimes_path,
                 const std::string& out_path) {
    aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
    if (!runtimes_path.empty()) aspcomp::import_ref_runtimes(catalog, runtimes_path);
    std::ostringstream csv;
    csv << "domain,task,class,sat_status,available\n";
    for (const auto& domain : catalog.domains) {
        aspcomp::ClassifiedPool pool = aspcomp::curate_pool(catalog, domain);
        for (const auto& [cell, ids] : pool.cells)
            csv << domain.name << ',' << to_string(domain.task) << ',' << to_string(cell.cls)
                << ',' << to_string(cell.status) << ',' << ids.size() << '\n';
        for (const auto& [id, reason] : pool.excluded)
            csv << domain.name << ',' << to_string(domain.task) << ",excluded," << id << ",\""
                << reason << "\"\n";
    }
    emit(out_path, csv.str());
    return 0;
}

std::string cell_key(const aspcomp::PoolCell& cell) {
    return std::string(to_string(cell.cls)) + "/" + to_string(cell.status);
}

aspcomp::PoolCell cell_from_key(const std::string& key) {
    auto slash = key.find('/');
    if (slash == std::string::npos) throw aspcomp::IoError("bad cell key: " + key);
    return {aspcomp::hardness_class_from_string(key.substr(0, slash)),
            aspcomp::sat_status_from_string(key.substr(slash + 1))};
}

json state_json(const aspcomp::SelectionState& st) {
    json classes = json::array();
    for (const auto& c : st.classes)
        classes.push_back({{"label", c.label},
                           {"size", c.size},
                           {"gap", c.gap},
                           {"select", c.select}});
    return json{{"n", st.n}, {"m", st.m}, {"target", st.target}, {"classes", classes}};
}

json plan_json(const aspcomp::SelectionPlan& plan) {
    json mandated = json::object();
    for (const auto& [cell, ids] : plan.mandated) mandated[cell_key(cell)] = ids;
    json topup = json::object();
    for (const auto& [cls, ids] : plan.topup) topup[to_string(cls)] = ids;
    json phase2 = json::object();
    for (const auto& [cls, st] : plan.phase2) phase2[to_string(cls)] = state_json(st);
    return json{{"domain", plan.domain},
                {"seed", plan.seed},
                {"phase1", state_json(plan.phase1)},
                {"phase2", phase2},
                {"mandated", mandated},
                {"topup", topup},
                {"free_picks", plan.free_picks},
                {"chosen", plan.chosen()}};
}

std::vector<aspcomp::SelectionPlan> plans_from_json(const json& doc) {
    std::vector<aspcomp::SelectionPlan> plans;
    for (const auto& p : doc.at("plans")) {
        aspcomp::SelectionPlan plan;
        plan.domain = p.at("domain").get<std::string>();
        plan.seed = p.at("seed").get<std::uint64_t>();
        for (const auto& [key, ids] : p.at("mandated").items())
            plan.mandated[cell_from_key(key)] = ids.get<std::vector<std::string>>();
        for (const auto& [key, ids] : p.at("topup").items())
            plan.topup[aspcomp::hardness_class_from_string(key)] =
                ids.get<std::vector<std::string>>();
        plan.free_picks = p.at("free_picks").get<std::vector<std::string>>();
        plans.push_back(std::move(plan));
    }
    return plans;
}

int cmd_select(const std::string& manifest_path, std::optional<std::uint64_t> seed,
               const std::string& policy_name, const std::string& only_domain,
               const std::string& out_path) {
    aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
    if (seed) catalog.config.seed = *seed;
    aspcomp::FreePickPolicy policy = policy_name == "balanced"
                                         ? aspcomp::FreePickPolicy::balanced
                                         : aspcomp::FreePickPolicy::uniform;
    json plans = json::array();
    std::ostringstream table;
    for (const auto& domain : catalog.domains) {
        if (!only_domain.empty() && domain.name != only_domain) continue;
        aspcomp::ClassifiedPool pool = aspcomp::curate_pool(catalog, domain);
        aspcomp::SelectionPlan plan = aspcomp::plan_domain(pool, catalog.config, policy);
        plans.push_back(plan_json(plan));
        auto counts = plan.cell_counts(pool);
        table << plan.domain << ":";
        for (const auto& [cell, picked] : counts) {
            auto it = pool.cells.find(cell);
            int avail = it == pool.cells.end() ? 0 : static_cast<int>(it->second.size());
            table << "  " << cell_key(cell) << " " << picked << "(" << avail << ")";
        }
        table << "\n";
    }
    json out{{"seed", catalog.config.seed}, {"plans", plans}};
    emit(out_path, out.dump(2) + "\n");
    if (!out_path.empty()) std::cout << table.str();
    return 0;
}

int cmd_run(const std::string& manifest_path, const std::string& plan_path,
            const std::string& log_path, int workers, const std::string& category_name) {
    aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
    auto plans = plans_from_json(json::parse(slurp(plan_path)));
    std::optional<aspcomp::Category> category;
    if (!category_name.empty()) category = aspcomp::category_from_string(category_name);
    auto jobs = aspcomp::campaign_jobs(catalog, plans, catalog.systems, category);
    aspcomp::CampaignOptions options;
    options.log_path = log_path;
    options.workers = workers;
    auto records = aspcomp::run_campaign(jobs, options);
    std::cout << records.size() << " records in " << log_path << "\n";
    return 0;
}

// Oracle-checks every solved claim whose domain encoding+instance both ground
// within the oracle's reach; claims beyond it stay trusted (witness_ok unset).
void verify_witnesses(const aspcomp::Catalog& catalog, std::vector<aspcomp::RunRecord>& records) {
    std::map<std::string, const aspcomp::Domain*> domain_of;
    for (const auto& inst : catalog.instances)
        domain_of[inst.id] = catalog.find_domain(inst.domain);
    for (auto& r : records) {
        if (r.status != aspcomp::RunStatus::solved) continue;
        const aspcomp::Domain* domain = domain_of[r.instance];
        const aspcomp::InstanceRecord* inst = catalog.find_instance(r.instance);
        if (!domain || !inst) continue;
        try {
            aspcomp::asp::Program encoding =
                aspcomp::asp::parse_program(slurp(domain->encoding_path), domain->encoding_path);
            aspcomp::asp::Program instance =
                aspcomp::asp::parse_program(slurp(inst->path), inst->path);
            for (const auto& rule : instance.rules) encoding.rules.push_back(rule);
            aspcomp::asp::Program ground = aspcomp::asp::ground_program(encoding);
            switch (r.claim.kind) {
                case aspcomp::ClaimKind::sat_witness:
                    r.witness_ok = aspcomp::check_witness(ground, r.claim.atoms);
                    break;
                case aspcomp::ClaimKind::cost_witness:
                case aspcomp::ClaimKind::optimum_found: {
                    bool ok = aspcomp::check_witness(ground, r.claim.atoms, r.claim.cost);
                    if (ok && r.claim.kind == aspcomp::ClaimKind::optimum_found) {
                        auto best = aspcomp::optimal_cost(ground);
                        ok = best && r.claim.cost && best->cost == *r.claim.cost;
                    }
                    r.witness_ok = ok;
                    break;
                }
                case aspcomp::ClaimKind::unsat:
                    r.witness_ok = aspcomp::enumerate_stable_models(ground).empty();
                    break;
                default:
                    break;
            }
        } catch (const aspcomp::Error&) {
            // Out of the oracle's reach (too large, unsupported construct,
            // missing files): leave the claim trusted.
        }
    }
}

json score_json(const aspcomp::DomainScore& s) {
    return json{{"system", s.system},
                {"domain", s.domain},
                {"score", rational_json(s.s)},
                {"disqualified", s.disqualified},
                {"solved_count", s.solved_count},
                {"runtime_sum", s.runtime_sum}};
}

aspcomp::DomainScore score_from_json(const json& j) {
    aspcomp::DomainScore s;
    s.system = j.at("system").get<std::string>();
    s.domain = j.at("domain").get<std::string>();
    s.s = Rational(j.at("score").at("num").get<std::int64_t>(),
                   j.at("score").at("den").get<std::int64_t>());
    s.disqualified = j.at("disqualified").get<bool>();
    s.solved_count = j.at("solved_count").get<int>();
    s.runtime_sum = j.at("runtime_sum").get<double>();
    return s;
}

int cmd_score(const std::string& manifest_path, const std::string& log_path,
              const std::string& scheme, bool verify, const std::string& out_path) {
    aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
    auto records = aspcomp::load_run_log(log_path);
    if (records.empty()) throw aspcomp::EmptyScope("no records in " + log_path);
    if (verify) verify_witnesses(catalog, records);

    std::map<std::string, std::string> instance_domain;
    for (const auto& inst : catalog.instances) instance_domain[inst.id] = inst.domain;
    std::map<std::string, std::vector<aspcomp::RunRecord>> by_domain;
    std::map<std::string, std::set<std::string>> domain_instances, domain_systems;
    for (const auto& r : records) {
        auto it = instance_domain.find(r.instance);
        if (it == instance_domain.end()) throw aspcomp::DanglingReference(r.instance);
        by_domain[it->second].push_back(r);
        domain_instances[it->second].insert(r.instance);
        domain_systems[it->second].insert(r.system);
    }

    json scores = json::array();
    json audits = json::array();
    for (const auto& [domain_name, domain_records] : by_domain) {
        const aspcomp::Domain* domain = catalog.find_domain(domain_name);
        if (!domain) throw aspcomp::DanglingReference(domain_name);
        const int n = static_cast<int>(domain_instances[domain_name].size());
        std::vector<std::string> systems(domain_systems[domain_name].begin(),
                                         domain_systems[domain_name].end());
        if (domain->task == aspcomp::Task::optimization && scheme != "decision") {
            std::vector<std::string> instances(domain_instances[domain_name].begin(),
                                               domain_instances[domain_name].end());
            aspcomp::OptScores opt =
                aspcomp::score_optimization(systems, domain_name, domain_records, instances);
            const auto& list = scheme == "s2" ? opt.s2 : opt.s1;
            for (const auto& s : list) scores.push_back(score_json(s));
            for (const auto& instance : opt.audit_flags)
                audits.push_back({{"domain", domain_name}, {"instance", instance}});
        } else {
            for (const auto& system : systems)
                scores.push_back(score_json(
                    aspcomp::score_decision(system, domain_name, domain_records, n)));
        }
    }
    json out{{"scheme", scheme}, {"scores", scores}, {"audit", audits}};
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

std::vector<aspcomp::DomainScore> scores_from_file(const std::string& path) {
    json doc = json::parse(slurp(path));
    std::vector<aspcomp::DomainScore> scores;
    for (const auto& s : doc.at("scores")) scores.push_back(score_from_json(s));
    return scores;
}

int cmd_rank(const std::string& scores_path, const std::string& manifest_path,
             std::optional<int> subtrack, const std::string& out_path) {
    auto scores = scores_from_file(scores_path);
    if (subtrack) {
        aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
        std::erase_if(scores, [&](const aspcomp::DomainScore& s) {
            const aspcomp::Domain* d = catalog.find_domain(s.domain);
            return !d || !d->subtrack || *d->subtrack != *subtrack;
        });
    }
    auto board = aspcomp::rank(scores);
    json rows = json::array();
    std::ostringstream table;
    int position = 1;
    for (const auto& row : board) {
        rows.push_back({{"rank", position},
                        {"system", row.system},
                        {"total", rational_json(row.total)},
                        {"runtime_sum", row.runtime_sum}});
        table << position << ". " << row.system << "  " << row.total.decimal(1) << "  "
              << std::llround(row.runtime_sum) << "s\n";
        ++position;
    }
    emit(out_path, json{{"leaderboard", rows}}.dump(2) + "\n");
    if (!out_path.empty()) std::cout << table.str();
    return 0;
}

int cmd_report(const std::string& manifest_path, const std::string& log_path,
               const std::string& s1_path, const std::string& s2_path,
               const std::string& out_dir) {
    aspcomp::Catalog catalog = aspcomp::load_manifest(manifest_path);
    auto records = aspcomp::load_run_log(log_path);
    auto s1 = scores_from_file(s1_path);
    auto s2 = s2_path.empty() ? s1 : scores_from_file(s2_path);
    auto rows = aspcomp::build_report(catalog, records, s1, s2);
    std::string table = aspcomp::render_report(rows);
    std::string cactus = aspcomp::cactus_csv(aspcomp::cactus_data(records));
    json shares = json::object();
    for (const auto& [system, by_subtrack] : aspcomp::subtrack_contribution(catalog, s1)) {
        json per = json::object();
        for (const auto& [st, share] : by_subtrack)
            per["subtrack_" + std::to_string(st)] = rational_json(share);
        shares[system] = per;
    }
    if (out_dir.empty()) {
        std::cout << table;
    } else {
        std::filesystem::create_directories(out_dir);
        spill(out_dir + "/report.txt", table);
        spill(out_dir + "/cactus.csv", cactus);
        spill(out_dir + "/subtrack_shares.json", shares.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"competition harness pipeline"};
    app.require_subcommand(1);

    std::string manifest, out, encoding, facts, runtimes, plan_path, log_path;
    std::string scheme = "s1", category, policy = "uniform", only_domain, scores_path, s2_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> subtrack;
    int workers = 1;
    bool abstract_mode = false, verify = false;

    auto* classify = app.add_subcommand("classify", "features and sub-track of an encoding");
    classify->add_option("encoding", encoding)->required();
    classify->add_option("--facts", facts);
    classify->add_flag("--abstract", abstract_mode);
    classify->add_option("--out", out);

    auto* hardness = app.add_subcommand("hardness", "per-domain hardness buckets");
    hardness->add_option("--manifest", manifest)->required();
    hardness->add_option("--runtimes", runtimes);
    hardness->add_option("--out", out);

    auto* select = app.add_subcommand("select", "balanced instance selection");
    select->add_option("--manifest", manifest)->required();
    select->add_option("--seed", seed);
    select->add_option("--free-pick-policy", policy)
        ->check(CLI::IsMember({"uniform", "balanced"}));
    select->add_option("--domain", only_domain);
    select->add_option("--out", out);

    auto* run = app.add_subcommand("run", "execute the campaign");
    run->add_option("--manifest", manifest)->required();
    run->add_option("--plan", plan_path)->required();
    run->add_option("--log", log_path)->required();
    run->add_option("--workers", workers);
    run->add_option("--category", category)->check(CLI::IsMember({"SP", "MP", "sp", "mp"}));

    auto* score = app.add_subcommand("score", "domain scores from the run log");
    score->add_option("--manifest", manifest)->required();
    score->add_option("--log", log_path)->required();
    score->add_option("--scheme", scheme)->check(CLI::IsMember({"s1", "s2", "decision"}));
    score->add_flag("--verify", verify);
    score->add_option("--out", out);

    auto* rank_cmd = app.add_subcommand("rank", "leaderboard from scores");
    rank_cmd->add_option("--scores", scores_path)->required();
    rank_cmd->add_option("--manifest", manifest);
    rank_cmd->add_option("--subtrack", subtrack);
    rank_cmd->add_option("--out", out);

    auto* report = app.add_subcommand("report", "tables and plot data");
    report->add_option("--manifest", manifest)->required();
    report->add_option("--log", log_path)->required();
    report->add_option("--scores", scores_path)->required();
    report->add_option("--scores-s2", s2_path);
    report->add_option("--out", out);

    try {
        app.parse(argc, argv);
        if (classify->parsed()) return cmd_classify(encoding, facts, abstract_mode, out);
        if (hardness->parsed()) return cmd_hardness(manifest, runtimes, out);
        if (select->parsed()) return cmd_select(manifest, seed, policy, only_domain, out);
        if (run->parsed()) return cmd_run(manifest, plan_path, log_path, workers, category);
        if (score->parsed()) return cmd_score(manifest, log_path, scheme, verify, out);
        if (rank_cmd->parsed()) return cmd_rank(scores_path, manifest, subtrack, out);
        if (report->parsed()) return cmd_report(manifest, log_path, scores_path, s2_path, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const aspcomp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aspcomp::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aspcomp::UnsafeRule& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aspcomp::HcfUndecided& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aspcomp::EmptyScope& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const aspcomp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
