#include <aspcomp/classifier.hpp>
#include <aspcomp/errors.hpp>
#include <aspcomp/grounder.hpp>
#include <aspcomp/parser.hpp>

#include <doctest.h>

#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

using namespace aspcomp;
using namespace aspcomp::asp;

TEST_CASE("feature extraction sees each construct") {
    auto f = [](const char* text) { return extract_features(fixtures::parse(text)); };

    FeatureSet plain = f("a. b :- a, not c.\n");
    CHECK(plain == FeatureSet{});

    CHECK(f("{a; b} <= 1.\n").has_choice);
    CHECK(f("a | b.\n").has_disjunction);
    CHECK(f("p(1). q :- #count{X : p(X)} >= 1.\n").has_aggregates);
    CHECK(f("a. :~ a. [1,t]\n").has_weak_constraints);
    CHECK(f("a. a?\n").has_query);

    // Weak constraints are recognized without any rule body scan.
    FeatureSet weak = extract_features(
        fixtures::parse(std::string(fixtures::kTourNormal) + fixtures::kTourWeak));
    CHECK(weak.has_weak_constraints);
    CHECK_FALSE(weak.has_choice);
}

TEST_CASE("subtrack assignment follows the feature lattice") {
    FeatureSet fs;
    CHECK(assign_subtrack(fs) == 1);

    fs.has_aggregates = true;
    CHECK(assign_subtrack(fs) == 2);

    fs = FeatureSet{};
    fs.has_choice = true;
    CHECK(assign_subtrack(fs) == 2);

    fs.has_weak_constraints = true;
    CHECK(assign_subtrack(fs) == 3);

    fs.has_disjunction = true;
    fs.is_hcf = false;
    CHECK(assign_subtrack(fs) == 4);

    fs = FeatureSet{};
    fs.has_disjunction = true; // head-cycle-free disjunction stays advanced
    CHECK(assign_subtrack(fs) == 2);
}

TEST_CASE("tour encodings land in their respective subtracks") {
    auto facts = fixtures::tour_facts();

    Classification normal = classify_program(fixtures::parse(fixtures::kTourNormal), &facts);
    CHECK(normal.subtrack == 1);
    CHECK_FALSE(normal.hcf_witness.has_value());

    Classification choice = classify_program(fixtures::parse(fixtures::kTourChoice), &facts);
    CHECK(choice.subtrack == 2);
    CHECK(choice.features.has_choice);

    Classification disj = classify_program(fixtures::parse(fixtures::kTourDisjunctive), &facts);
    CHECK(disj.subtrack == 4);
    CHECK_FALSE(disj.features.is_hcf);
    REQUIRE(disj.hcf_witness.has_value());
    const auto& scc = disj.hcf_witness->scc_atoms;
    CHECK(std::count(scc.begin(), scc.end(), "cycle(3,2)") == 1);
    CHECK(std::count(scc.begin(), scc.end(), "cycle(3,4)") == 1);

    // Adding the tour-cost preference moves the HCF encodings to subtrack 3
    // and leaves the non-HCF one in subtrack 4.
    auto with_weak = [&](const char* enc) {
        return classify_program(fixtures::parse(std::string(enc) + fixtures::kTourWeak), &facts);
    };
    CHECK(with_weak(fixtures::kTourNormal).subtrack == 3);
    CHECK(with_weak(fixtures::kTourChoice).subtrack == 3);
    CHECK(with_weak(fixtures::kTourDisjunctive).subtrack == 4);
}

TEST_CASE("head-cycle-freeness holds for acyclic disjunction") {
    Program p = fixtures::parse("a | b. c :- a. c :- b.\n");
    HcfResult r = head_cycle_free(p);
    CHECK(r.hcf);
    CHECK_FALSE(r.witness.has_value());
    CHECK(classify_program(p).subtrack == 2);
}

TEST_CASE("head-cycle-freeness fails when two head atoms share a loop") {
    Program p = fixtures::parse("a | b. a :- b. b :- a.\n");
    HcfResult r = head_cycle_free(p);
    REQUIRE_FALSE(r.hcf);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->rule == "a | b.");
    CHECK(r.witness->scc_atoms == std::vector<std::string>{"a", "b"});

    // Choice rules contribute no disjunctive pairs.
    Program choice = fixtures::parse("{a; b}. a :- b. b :- a.\n");
    CHECK(head_cycle_free(choice).hcf);

    // Negative edges do not count toward the positive graph.
    Program neg = fixtures::parse("a | b. a :- not b.\n");
    CHECK(head_cycle_free(neg).hcf);
}

TEST_CASE("dependency graph nodes are sorted and partitioned into sccs") {
    Program p = fixtures::parse("a | b. a :- b. b :- a. c :- a.\n");
    DependencyGraph g = build_dependency_graph(p);
    CHECK(std::is_sorted(g.nodes.begin(), g.nodes.end()));

    std::set<int> seen;
    for (const auto& scc : g.sccs)
        for (int n : scc) CHECK(seen.insert(n).second);
    CHECK(seen.size() == g.nodes.size());
}

TEST_CASE("abstract analysis decides variable programs conservatively") {
    Program disj = fixtures::parse(fixtures::kTourDisjunctive);

    // Without facts the encoding is not variable-free: undecided unless the
    // abstract graph is allowed.
    CHECK_THROWS_AS(classify_program(disj), HcfUndecided);

    Classification abs = classify_program(disj, nullptr, true);
    CHECK(abs.subtrack == 4);
    CHECK_FALSE(abs.features.is_hcf);

    // Predicate-level recursion without a disjunctive pair stays HCF.
    Program tree = fixtures::parse("leaf(a). t(X) | s(X) :- leaf(X).\n");
    Classification abs2 = classify_program(tree, nullptr, true);
    CHECK(abs2.features.is_hcf);
    CHECK(abs2.subtrack == 2);
}

TEST_CASE("ground hcf agrees with a brute-force reachability check") {
    std::mt19937 rng(20170411);
    int checked = 0;
    for (int round = 0; round < 150; ++round) {
        // Random ground program over a handful of atoms: some disjunctive
        // pairs, some normal rules.
        int n_atoms = 3 + static_cast<int>(rng() % 4);
        auto atom = [&](int i) { return std::string(1, static_cast<char>('a' + i)); };
        std::string text;
        int n_rules = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n_rules; ++i) {
            int h1 = static_cast<int>(rng() % n_atoms);
            if (rng() % 2 == 0) {
                int h2 = static_cast<int>(rng() % n_atoms);
                if (h2 == h1) h2 = (h1 + 1) % n_atoms;
                text += atom(h1) + " | " + atom(h2);
            } else {
                text += atom(h1);
            }
            if (rng() % 2 == 0) {
                text += " :- " + atom(static_cast<int>(rng() % n_atoms));
            }
            text += ".\n";
        }
        Program p = fixtures::parse(text);

        // Brute force: transitive closure over the positive edges, two head
        // atoms of one disjunctive rule in a common cycle = not HCF.
        DependencyGraph g = build_dependency_graph(p);
        int n = static_cast<int>(g.nodes.size());
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (auto [from, to] : g.positive_edges) reach[from][to] = true;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
        auto index_of = [&](const std::string& s) {
            return static_cast<int>(std::lower_bound(g.nodes.begin(), g.nodes.end(), s) -
                                    g.nodes.begin());
        };
        bool brute_hcf = true;
        for (const Rule& r : p.rules) {
            const auto* head = std::get_if<DisjunctiveHead>(&r.head);
            if (head == nullptr) continue;
            for (std::size_t i = 0; i < head->atoms.size() && brute_hcf; ++i)
                for (std::size_t j = i + 1; j < head->atoms.size() && brute_hcf; ++j) {
                    int u = index_of(to_string(head->atoms[i]));
                    int v = index_of(to_string(head->atoms[j]));
                    if (u != v && reach[u][v] && reach[v][u]) brute_hcf = false;
                }
        }

        HcfResult r = head_cycle_free(p);
        INFO(text);
        CHECK(r.hcf == brute_hcf);
        ++checked;
    }
    CHECK(checked == 150);
}
