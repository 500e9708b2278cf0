#include <aspcomp/errors.hpp>
#include <aspcomp/hardness.hpp>

#include <doctest.h>

#include <map>
#include <string>

using namespace aspcomp;

namespace {

using RefMap = std::map<std::string, RefOutcome>;

Hardness classify(const RefMap& m) { return classify_instance(m); }

Catalog pool_catalog(Task task) {
    Catalog c;
    Domain d;
    d.name = "pool";
    d.task = task;
    d.encoding_path = "/tmp/pool.lp";
    c.domains.push_back(d);
    return c;
}

InstanceRecord& add_instance(Catalog& c, const std::string& id, SatStatus status,
                             const RefMap& runs) {
    InstanceRecord r;
    r.id = id;
    r.domain = "pool";
    r.path = "/tmp/" + id + ".lp";
    r.sat_status = status;
    r.ref_runtimes = runs;
    c.instances.push_back(r);
    c.domains[0].instances.push_back(id);
    return c.instances.back();
}

} // namespace

TEST_CASE("all-solved instances split on their slowest reference run") {
    CHECK(classify({{"a", RefOutcome::solved(10)}, {"b", RefOutcome::solved(20)}}).cls ==
          HardnessClass::very_easy);
    CHECK(classify({{"a", RefOutcome::solved(15)}, {"b", RefOutcome::solved(25)}}).cls ==
          HardnessClass::easy);
    CHECK(classify({{"a", RefOutcome::solved(30)}, {"b", RefOutcome::solved(119.9)}}).cls ==
          HardnessClass::easy);
    CHECK(classify({{"a", RefOutcome::solved(130)}}).cls == HardnessClass::medium);
    CHECK(classify({{"a", RefOutcome::solved(1199.5)}}).cls == HardnessClass::medium);

    // The two-minute boundary itself answers neither "under" nor "over".
    Hardness boundary = classify({{"a", RefOutcome::solved(120)}});
    CHECK(boundary.cls == HardnessClass::excluded);
    CHECK(boundary.exclude_reason.find("unclassifiable") != std::string::npos);

    // Solved at or past 20 minutes: solving proves nothing about not
    // finishing, so the slow-side classes are out of reach too.
    CHECK(classify({{"a", RefOutcome::solved(1200)}}).cls == HardnessClass::excluded);
    CHECK(classify({{"a", RefOutcome::solved(2600)}}).cls == HardnessClass::excluded);
}

TEST_CASE("hard needs a solver under forty minutes and a non-finisher") {
    CHECK(classify({{"a", RefOutcome::timeout(1200)}, {"b", RefOutcome::solved(800)}}).cls ==
          HardnessClass::hard);
    CHECK(classify({{"a", RefOutcome::timeout(1200)}, {"b", RefOutcome::solved(1500)}}).cls ==
          HardnessClass::hard);
    CHECK(classify({{"a", RefOutcome::timeout(2400)}, {"b", RefOutcome::solved(100)}}).cls ==
          HardnessClass::hard);
    CHECK(classify({{"a", RefOutcome{RefOutcome::Kind::memout}}, {"b", RefOutcome::solved(5)}}).cls ==
          HardnessClass::hard);

    // A competitor solving only at 2400 s does not meet the forty-minute bar.
    CHECK(classify({{"a", RefOutcome::timeout(1200)}, {"b", RefOutcome::solved(2400)}}).cls ==
          HardnessClass::excluded);
}

TEST_CASE("too hard requires every reference run to fail at the long horizon") {
    CHECK(classify({{"a", RefOutcome::timeout(2400)}, {"b", RefOutcome::timeout(2400)}}).cls ==
          HardnessClass::too_hard);
    CHECK(classify({{"a", RefOutcome{RefOutcome::Kind::memout}},
                    {"b", RefOutcome{RefOutcome::Kind::error}}}).cls == HardnessClass::too_hard);
    CHECK(classify({{"a", RefOutcome{RefOutcome::Kind::memout}},
                    {"b", RefOutcome::timeout(2400)}}).cls == HardnessClass::too_hard);

    // A 20-minute timeout leaves the 40-minute question open.
    Hardness open = classify({{"a", RefOutcome::timeout(1200)}, {"b", RefOutcome::timeout(2400)}});
    CHECK(open.cls == HardnessClass::excluded);
    CHECK(open.exclude_reason.find("horizon") != std::string::npos);
}

TEST_CASE("classification needs at least one measurement") {
    CHECK_THROWS_AS(classify({}), MissingData);
}

TEST_CASE("classification ignores reference-system names") {
    RefMap a{{"sys1", RefOutcome::solved(30)}, {"sys2", RefOutcome::timeout(1200)}};
    RefMap b{{"zz", RefOutcome::solved(30)}, {"aa", RefOutcome::timeout(1200)}};
    CHECK(classify(a) == classify(b));
}

TEST_CASE("curation buckets instances and drops the uninformative") {
    Catalog c = pool_catalog(Task::decision);
    add_instance(c, "p/easy_sat", SatStatus::satisfiable, {{"r", RefOutcome::solved(60)}});
    add_instance(c, "p/easy_unsat", SatStatus::unsatisfiable, {{"r", RefOutcome::solved(90)}});
    add_instance(c, "p/trivial", SatStatus::satisfiable, {{"r", RefOutcome::solved(2)}});
    add_instance(c, "p/open", SatStatus::satisfiable,
                 {{"r", RefOutcome::timeout(2400)}, {"s", RefOutcome::timeout(2400)}});
    add_instance(c, "p/boundary", SatStatus::satisfiable, {{"r", RefOutcome::solved(120)}});

    ClassifiedPool pool = curate_pool(c, c.domains[0]);
    CHECK(pool.domain == "pool");
    CHECK(pool.task == Task::decision);
    CHECK(pool.size() == 3);

    PoolCell easy_sat{HardnessClass::easy, SatStatus::satisfiable};
    PoolCell easy_unsat{HardnessClass::easy, SatStatus::unsatisfiable};
    REQUIRE(pool.cells.count(easy_sat) == 1);
    CHECK(pool.cells.at(easy_sat) == std::vector<std::string>{"p/easy_sat"});
    CHECK(pool.cells.at(easy_unsat) == std::vector<std::string>{"p/easy_unsat"});

    // A decision instance nobody solved carries no proven status.
    PoolCell open{HardnessClass::too_hard, SatStatus::unknown};
    REQUIRE(pool.cells.count(open) == 1);
    CHECK(pool.cells.at(open) == std::vector<std::string>{"p/open"});

    // Dropped: the sub-20-second instance and the boundary case, each with a
    // reason.
    REQUIRE(pool.excluded.size() == 2);
    std::map<std::string, std::string> reasons(pool.excluded.begin(), pool.excluded.end());
    REQUIRE(reasons.count("p/trivial") == 1);
    CHECK(reasons["p/trivial"].find("uninformative") != std::string::npos);
    REQUIRE(reasons.count("p/boundary") == 1);
    CHECK(reasons["p/boundary"].find("unclassifiable") != std::string::npos);

    CHECK(pool.class_size(HardnessClass::easy) == 2);
    CHECK(pool.class_ids(HardnessClass::easy) ==
          std::vector<std::string>{"p/easy_sat", "p/easy_unsat"});
}

TEST_CASE("curation drops unsatisfiable optimization instances") {
    Catalog c = pool_catalog(Task::optimization);
    add_instance(c, "p/sat", SatStatus::satisfiable, {{"r", RefOutcome::solved(60)}});
    add_instance(c, "p/unsat", SatStatus::unsatisfiable, {{"r", RefOutcome::solved(60)}});

    ClassifiedPool pool = curate_pool(c, c.domains[0]);
    CHECK(pool.size() == 1);
    REQUIRE(pool.excluded.size() == 1);
    CHECK(pool.excluded[0].first == "p/unsat");
    CHECK(pool.excluded[0].second.find("unsatisfiable") != std::string::npos);

    // Optimization instances proven satisfiable keep that status even when
    // nobody finished: an answer with a cost is a proof.
    Catalog c2 = pool_catalog(Task::optimization);
    add_instance(c2, "p/deep", SatStatus::satisfiable, {{"r", RefOutcome::timeout(2400)}});
    ClassifiedPool pool2 = curate_pool(c2, c2.domains[0]);
    PoolCell cell{HardnessClass::too_hard, SatStatus::satisfiable};
    REQUIRE(pool2.cells.count(cell) == 1);
}

TEST_CASE("curation respects stored hardness over reference runtimes") {
    Catalog c = pool_catalog(Task::decision);
    InstanceRecord& r = add_instance(c, "p/pinned", SatStatus::satisfiable,
                                     {{"r", RefOutcome::solved(60)}});
    r.hardness = Hardness{HardnessClass::hard, ""};

    ClassifiedPool pool = curate_pool(c, c.domains[0]);
    PoolCell cell{HardnessClass::hard, SatStatus::satisfiable};
    CHECK(pool.cells.count(cell) == 1);
}

TEST_CASE("curation is deterministic and repeatable") {
    Catalog c = pool_catalog(Task::decision);
    add_instance(c, "p/b", SatStatus::satisfiable, {{"r", RefOutcome::solved(60)}});
    add_instance(c, "p/a", SatStatus::satisfiable, {{"r", RefOutcome::solved(60)}});

    ClassifiedPool first = curate_pool(c, c.domains[0]);
    ClassifiedPool second = curate_pool(c, c.domains[0]);
    CHECK(first.cells == second.cells);
    CHECK(first.excluded == second.excluded);

    // Ids inside a cell are sorted regardless of catalog order.
    PoolCell cell{HardnessClass::easy, SatStatus::satisfiable};
    CHECK(first.cells.at(cell) == std::vector<std::string>{"p/a", "p/b"});
}
