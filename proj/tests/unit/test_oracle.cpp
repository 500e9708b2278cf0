#include <aspcomp/errors.hpp>
#include <aspcomp/grounder.hpp>
#include <aspcomp/oracle.hpp>
#include <aspcomp/parser.hpp>

#include <doctest.h>

#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace aspcomp;
using namespace aspcomp::asp;

namespace {

std::set<std::string> cycles_of(const Interpretation& model) {
    std::set<std::string> out;
    for (const auto& atom : model)
        if (atom.rfind("cycle", 0) == 0) out.insert(atom);
    return out;
}

const std::set<std::string> kTourA = {"cycle(1,2)", "cycle(2,3)", "cycle(3,4)", "cycle(4,1)"};
const std::set<std::string> kTourB = {"cycle(1,4)", "cycle(2,1)", "cycle(3,2)", "cycle(4,3)"};

} // namespace

TEST_CASE("every tour encoding has exactly the two tours as stable models") {
    for (const char* enc : {fixtures::kTourNormal, fixtures::kTourChoice,
                            fixtures::kTourDisjunctive}) {
        Program g = fixtures::ground_tour(enc);
        auto models = enumerate_stable_models(g);
        REQUIRE(models.size() == 2);

        std::set<std::set<std::string>> tours;
        for (const auto& m : models) {
            tours.insert(cycles_of(m));
            // Each model carries the facts and the derived reachability.
            CHECK(m.count("node(1)") == 1);
            CHECK(m.count("reach(1)") == 1);
            CHECK(m.count("reach(3)") == 1);
            CHECK(m.size() == 28);
        }
        CHECK(tours == std::set<std::set<std::string>>{kTourA, kTourB});
    }
}

TEST_CASE("choice expansion introduces projected auxiliaries only") {
    Program g = fixtures::ground_tour(fixtures::kTourChoice);
    Program expanded = expand_choices(g);
    bool saw_aux = false;
    for (const Rule& r : expanded.rules) saw_aux = saw_aux || to_string(r).find("__") != std::string::npos;
    CHECK(saw_aux);

    // Auxiliaries never leak into reported models.
    for (const auto& m : enumerate_stable_models(g))
        for (const auto& atom : m) CHECK(atom.rfind("__", 0) != 0);
}

TEST_CASE("the optimal tour costs seven") {
    for (const char* enc : {fixtures::kTourNormal, fixtures::kTourChoice,
                            fixtures::kTourDisjunctive}) {
        Program g = fixtures::ground_tour(enc, true);
        auto best = optimal_cost(g);
        REQUIRE(best.has_value());
        CHECK(best->cost == 7);
        CHECK(cycles_of(best->witness) == kTourB);

        std::set<std::int64_t> costs;
        for (const auto& m : enumerate_stable_models(g)) costs.insert(weak_cost(g, m));
        CHECK(costs == std::set<std::int64_t>{7, 8});
    }
}

TEST_CASE("weak constraint cost counts distinct tuples once") {
    Program g = fixtures::parse(
        "a. b.\n"
        ":~ a. [3,t]\n"
        ":~ a. [3,t]\n"         // duplicate tuple: no extra charge
        ":~ b. [2,u]\n"
        ":~ c. [9,v]\n");       // unsatisfied body: no charge
    Interpretation model{"a", "b"};
    CHECK(weak_cost(g, model) == 5);
    CHECK(weak_cost(g, Interpretation{"a"}) == 3);
    CHECK(weak_cost(g, Interpretation{}) == 0);

    Program lvl = fixtures::parse("a. :~ a. [1@2,t]\n");
    CHECK_THROWS_AS(weak_cost(lvl, Interpretation{"a"}), UnsupportedConstruct);
}

TEST_CASE("witness checking completes partial answers before judging them") {
    Program g = fixtures::ground_tour(fixtures::kTourNormal, true);

    auto tour = parse_atom_list(fixtures::kOptimalTour);
    CHECK(check_witness(g, tour));
    CHECK(check_witness(g, tour, 7));
    CHECK_FALSE(check_witness(g, tour, 8)); // claimed cost must match exactly

    // A prefix of a genuine tour closes into that tour.
    auto partial = parse_atom_list("cycle(1,4). cycle(4,3). cycle(3,2).");
    CHECK(check_witness(g, partial));

    // Two outgoing edges from one node can never close into a model.
    auto contradictory = parse_atom_list("cycle(1,2). cycle(1,4).");
    CHECK_FALSE(check_witness(g, contradictory));

    auto costly = parse_atom_list(fixtures::kCostlyTour);
    CHECK(check_witness(g, costly, 8));
    CHECK_FALSE(check_witness(g, costly, 7));
}

TEST_CASE("stability checking rejects unknown atoms and non-models") {
    Program g = fixtures::ground_tour(fixtures::kTourNormal);
    auto models = enumerate_stable_models(g);
    for (const auto& m : models) CHECK(is_stable_model(g, m));

    Interpretation alien = models[0];
    alien.insert("flux(99)");
    CHECK_FALSE(is_stable_model(g, alien));

    Interpretation missing = models[0];
    missing.erase("reach(1)");
    CHECK_FALSE(is_stable_model(g, missing));
}

TEST_CASE("a positive normal program has its least model as only answer") {
    std::mt19937 rng(424242);
    for (int round = 0; round < 60; ++round) {
        int n_atoms = 2 + static_cast<int>(rng() % 5);
        auto atom = [&](int i) { return std::string(1, static_cast<char>('a' + i)); };
        std::string text = atom(0) + ".\n";
        for (int i = 0; i < 6; ++i) {
            int head = static_cast<int>(rng() % n_atoms);
            int b1 = static_cast<int>(rng() % n_atoms);
            text += atom(head) + " :- " + atom(b1);
            if (rng() % 2 == 0) text += ", " + atom(static_cast<int>(rng() % n_atoms));
            text += ".\n";
        }
        Program g = ground_program(fixtures::parse(text));
        auto models = enumerate_stable_models(g);
        REQUIRE(models.size() == 1);

        // The unique model is the fixpoint of forward rule application.
        CHECK(is_stable_model(g, models[0]));
    }
}

TEST_CASE("enumeration and the single-candidate check never disagree") {
    std::mt19937 rng(9001);
    int cases = 0;
    for (int round = 0; round < 40; ++round) {
        int n_atoms = 3 + static_cast<int>(rng() % 4); // up to 6 atoms
        auto atom = [&](int i) { return std::string(1, static_cast<char>('a' + i)); };
        std::string text;
        int n_rules = 3 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n_rules; ++i) {
            int h = static_cast<int>(rng() % n_atoms);
            std::string rule = atom(h);
            if (rng() % 3 == 0) {
                int h2 = (h + 1 + static_cast<int>(rng() % (n_atoms - 1))) % n_atoms;
                rule += " | " + atom(h2);
            }
            int n_body = static_cast<int>(rng() % 3);
            for (int b = 0; b < n_body; ++b) {
                rule += b == 0 ? " :- " : ", ";
                if (rng() % 3 == 0) rule += "not ";
                rule += atom(static_cast<int>(rng() % n_atoms));
            }
            text += rule + ".\n";
        }
        Program g = ground_program(fixtures::parse(text));
        auto models = enumerate_stable_models(g);
        std::set<Interpretation> model_set(models.begin(), models.end());

        // Every subset of the atom base must be classified consistently.
        std::vector<std::string> base;
        for (int i = 0; i < n_atoms; ++i) base.push_back(atom(i));
        for (unsigned mask = 0; mask < (1u << n_atoms); ++mask) {
            Interpretation candidate;
            for (int i = 0; i < n_atoms; ++i)
                if (mask & (1u << i)) candidate.insert(base[i]);
            INFO(text);
            CHECK(is_stable_model(g, candidate) == (model_set.count(candidate) == 1));
            ++cases;
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("unsatisfiable programs yield no models and no optimum") {
    Program g = fixtures::parse("a. :- a.\n");
    CHECK(enumerate_stable_models(g).empty());
    CHECK_FALSE(optimal_cost(g).has_value());

    Program g2 = fixtures::parse("a :- not b. b :- not a. :- a. :- b.\n");
    CHECK(enumerate_stable_models(ground_program(g2)).empty());
}

TEST_CASE("the oracle refuses oversized or unsupported inputs") {
    std::string big = "{";
    for (int i = 0; i < 23; ++i) big += (i ? "; x" : "x") + std::to_string(i);
    big += "}.\n";
    CHECK_THROWS_AS(enumerate_stable_models(fixtures::parse(big)), TooLarge);

    OracleOptions tight;
    tight.atom_cap = 3;
    Program four = fixtures::parse("a :- not b. b :- not a. c :- not d. d :- not c.\n");
    CHECK_THROWS_AS(enumerate_stable_models(four, tight), TooLarge);
    CHECK(enumerate_stable_models(four).size() == 4);

    Program agg = fixtures::parse("p(1). q :- #count{X : p(X)} >= 1.\n");
    CHECK_THROWS_AS(enumerate_stable_models(ground_program(agg)), UnsupportedConstruct);

    Program vars = fixtures::parse("p(a). q(X) :- p(X).\n");
    CHECK_THROWS_AS(enumerate_stable_models(vars), UnsupportedConstruct);
}
