#include <doctest.h>

#include <fstream>
#include <sstream>

#include "acmine/catalog.hpp"
#include "acmine/dataset.hpp"
#include "acmine/errors.hpp"
#include "acmine/expr.hpp"
#include "acmine/rng.hpp"

#include "helpers.hpp"

using namespace acmine;
using testutil::make_dataset;
using testutil::toy_catalog;

TEST_CASE("builtin catalog has 25 items in 10 groups") {
    auto cat = ItemCatalog::builtin();
    CHECK(cat->size() == 25);
    CHECK(cat->groups().size() == 10);
    CHECK(cat->index_of("C01") == 0);
    CHECK(cat->index_of("C25") == 24);
    // Phase layout: C01-C08 early, C09-C10 trigger, C11-C19 preparatory,
    // C20-C25 outcome.
    for (int i = 0; i < 8; ++i) CHECK(cat->item(i).phase == Phase::Early);
    for (int i = 8; i < 10; ++i) CHECK(cat->item(i).phase == Phase::Trigger);
    for (int i = 10; i < 19; ++i) CHECK(cat->item(i).phase == Phase::Preparatory);
    for (int i = 19; i < 25; ++i) CHECK(cat->item(i).phase == Phase::Outcome);
}

TEST_CASE("builtin catalog matches the shipped document") {
    std::ifstream f(std::string(ACMINE_DATA_DIR) + "/catalog_default.txt");
    REQUIRE(f.good());
    auto from_file = ItemCatalog::parse(f, "catalog_default.txt");
    CHECK(from_file == *ItemCatalog::builtin());
}

TEST_CASE("catalog rejects items in two groups") {
    std::istringstream in(
        "item A early a\nitem B early b\n"
        "group g1 optional A B\ngroup g2 optional B\n");
    CHECK_THROWS_AS(ItemCatalog::parse(in, "<t>"), DataError);
}

TEST_CASE("catalog rejects duplicate codes, orphans, unknown phases") {
    std::istringstream dup("item A early a\nitem A early b\ngroup g optional A\n");
    CHECK_THROWS_AS(ItemCatalog::parse(dup, "<t>"), DataError);
    std::istringstream orphan("item A early a\nitem B early b\ngroup g optional A\n");
    CHECK_THROWS_AS(ItemCatalog::parse(orphan, "<t>"), DataError);
    std::istringstream phase("item A sometime a\ngroup g optional A\n");
    CHECK_THROWS_AS(ItemCatalog::parse(phase, "<t>"), DataError);
    std::istringstream single_exact("item A early a\ngroup g exactly_one A\n");
    CHECK_THROWS_AS(ItemCatalog::parse(single_exact, "<t>"), DataError);
}

TEST_CASE("three-item exactly-one toy catalog is valid") {
    std::istringstream in(
        "item A early a\nitem B early b\nitem C early c\n"
        "group g exactly_one A B C\n");
    auto cat = ItemCatalog::parse(in, "<t>");
    CHECK(cat.size() == 3);
    CHECK(!cat.check_bits(0b001));
    CHECK(cat.check_bits(0b011).has_value());  // two set
    CHECK(cat.check_bits(0b000).has_value());  // none set
}

static std::string fixture_header() {
    return "id,attack_date,era,ideology,scene_type,trigger_date,trigger_precision,"
           "leakage_date,leakage_precision,C01,C02,C03,C04,C05,C06,C07,C08,C09,C10,"
           "C11,C12,C13,C14,C15,C16,C17,C18,C19,C20,C21,C22,C23,C24,C25";
}

// A minimal valid row: one bit per exactly-one group, one leakage, one target.
static std::string valid_bits() {
    return "1,0,0,0,1,0,1,0,1,0,1,0,0,1,0,0,0,1,0,1,0,0,1,0,0";
}

TEST_CASE("ingest accepts well-formed rows and preserves order") {
    std::ostringstream doc;
    doc << fixture_header() << "\n";
    for (int i = 1; i <= 5; ++i)
        doc << "R" << i << ",2010-05-0" << i << ",post911,jihadist,unknown,,,,,"
            << valid_bits() << "\n";
    std::istringstream in(doc.str());
    auto res = ingest(in, ItemCatalog::builtin(), IngestMode::Strict, "<t>");
    CHECK(res.dataset.size() == 5);
    CHECK(res.rejected.empty());
    CHECK(res.dataset.transactions()[0].id == "R1");
    CHECK(res.dataset.transactions()[4].id == "R5");
}

TEST_CASE("ingest rejects group-constraint violations") {
    // C01 and C02 both set: two criminal-history bits.
    std::string bits = "1,1,0,0,1,0,1,0,1,0,1,0,0,1,0,0,0,1,0,1,0,0,1,0,0";
    std::ostringstream doc;
    doc << fixture_header() << "\n"
        << "R1,2010-05-01,post911,jihadist,unknown,,,,," << bits << "\n";

    SUBCASE("quarantine lists the row") {
        std::istringstream in(doc.str());
        auto res = ingest(in, ItemCatalog::builtin(), IngestMode::Quarantine, "<t>");
        CHECK(res.dataset.size() == 0);
        REQUIRE(res.rejected.size() == 1);
        CHECK(res.rejected[0].reason.find("ExactlyOne violated") != std::string::npos);
    }
    SUBCASE("strict aborts") {
        std::istringstream in(doc.str());
        CHECK_THROWS_AS(ingest(in, ItemCatalog::builtin(), IngestMode::Strict, "<t>"),
                        DataError);
    }
}

TEST_CASE("ingest rejects era/date mismatch, bad bits, bad dates, duplicate ids") {
    auto run_one = [&](const std::string& row) {
        std::istringstream in(fixture_header() + "\n" + row + "\n");
        return ingest(in, ItemCatalog::builtin(), IngestMode::Quarantine, "<t>");
    };
    auto res = run_one("R1,1998-04-02,post911,jihadist,unknown,,,,," + valid_bits());
    REQUIRE(res.rejected.size() == 1);
    CHECK(res.rejected[0].reason.find("era") != std::string::npos);

    res = run_one("R1,2010-05-01,post911,jihadist,unknown,,,,,2" +
                  std::string(",0,0,0,1,0,1,0,1,0,1,0,0,1,0,0,0,1,0,1,0,0,1,0,0"));
    REQUIRE(res.rejected.size() == 1);
    CHECK(res.rejected[0].reason.find("must be 0 or 1") != std::string::npos);

    res = run_one("R1,2010-13-40,post911,jihadist,unknown,,,,," + valid_bits());
    REQUIRE(res.rejected.size() == 1);

    res = run_one("R1,2010-05-01,post911,jihadist,unknown,2011-01-01,day,,," + valid_bits());
    REQUIRE(res.rejected.size() == 1);
    CHECK(res.rejected[0].reason.find("after attack") != std::string::npos);

    std::string two = "R1,2010-05-01,post911,jihadist,unknown,,,,," + valid_bits() + "\n" +
                      "R1,2010-05-02,post911,jihadist,unknown,,,,," + valid_bits();
    std::istringstream in(fixture_header() + "\n" + two + "\n");
    auto dup = ingest(in, ItemCatalog::builtin(), IngestMode::Quarantine, "<t>");
    CHECK(dup.dataset.size() == 1);
    REQUIRE(dup.rejected.size() == 1);
    CHECK(dup.rejected[0].reason.find("duplicate id") != std::string::npos);
}

TEST_CASE("ingest round-trips through write_csv") {
    std::ostringstream doc;
    doc << fixture_header() << "\n";
    doc << "R1,2010-05-01,post911,rightwing,maxdamager,2010-04-01,day,2010-04-20,week,"
        << valid_bits() << "\n";
    doc << "R2,1998-05-01,pre911,other,unknown,1997-04-01,month,,," << valid_bits() << "\n";
    std::istringstream in(doc.str());
    auto first = ingest(in, ItemCatalog::builtin(), IngestMode::Strict, "<t>");

    std::ostringstream serialized;
    write_csv(first.dataset, serialized);
    std::istringstream in2(serialized.str());
    auto second = ingest(in2, ItemCatalog::builtin(), IngestMode::Strict, "<t>");
    CHECK(first.dataset.transactions() == second.dataset.transactions());

    std::ostringstream serialized2;
    write_csv(second.dataset, serialized2);
    CHECK(serialized.str() == serialized2.str());
}

TEST_CASE("width counts set bits") {
    Transaction t;
    t.bits = 0;
    CHECK(width(t) == 0);
    t.bits = 0b111;
    CHECK(width(t) == 3);

    // Minimal valid vector under the builtin catalog: one bit in each of the
    // seven exactly-one groups plus one leakage and one target bit.
    std::ostringstream doc;
    doc << fixture_header() << "\n"
        << "R1,2010-05-01,post911,jihadist,unknown,,,,," << valid_bits() << "\n";
    std::istringstream in(doc.str());
    auto res = ingest(in, ItemCatalog::builtin(), IngestMode::Strict, "<t>");
    CHECK(width(res.dataset.transactions()[0]) == 9);
}

TEST_CASE("filter_cohort slices by metadata and preserves order") {
    std::ostringstream doc;
    doc << fixture_header() << "\n";
    doc << "R1,1998-05-01,pre911,rightwing,unknown,,,,," << valid_bits() << "\n";
    doc << "R2,2010-05-01,post911,jihadist,unknown,,,,," << valid_bits() << "\n";
    doc << "R3,2012-05-01,post911,jihadist,maxdamager,,,,," << valid_bits() << "\n";
    std::istringstream in(doc.str());
    auto ds = ingest(in, ItemCatalog::builtin(), IngestMode::Strict, "<t>").dataset;

    auto post = filter_cohort(ds, "era=post911");
    CHECK(post.size() == 2);
    CHECK(post.transactions()[0].id == "R2");

    auto both = filter_cohort(ds, "era=post911 AND ideology=jihadist");
    CHECK(both.size() == 2);

    auto everything = filter_cohort(ds, "true");
    CHECK(everything.transactions() == ds.transactions());

    // Idempotence for the same predicate.
    auto twice = filter_cohort(post, "era=post911");
    CHECK(twice.transactions() == post.transactions());

    CHECK_THROWS_AS(filter_cohort(ds, "era=pre911 AND ideology=jihadist"),
                    EmptyResultError);
    CHECK_THROWS_AS(filter_cohort(ds, "age=40"), ConfigError);
    CHECK_THROWS_AS(filter_cohort(ds, "ideology=maoist"), ConfigError);
    CHECK_THROWS_AS(filter_cohort(ds, "cluster=1"), DataError);  // no labels attached
}

TEST_CASE("cohort expressions support parentheses, OR and NOT") {
    auto expr = CohortExpr::parse("not (era=pre911 or ideology=other)");
    Transaction t;
    t.era = Era::Post911;
    t.ideology = Ideology::Jihadist;
    CHECK(expr.matches(t));
    t.ideology = Ideology::Other;
    CHECK(!expr.matches(t));
}

TEST_CASE("week-precision milestones resolve to capped midpoints") {
    ImpreciseDate d{parse_date("2010-03-01"), DatePrecision::Week};
    CHECK(d.resolved(parse_date("2010-04-01")).days == parse_date("2010-03-04").days);
    // Midpoint would pass the attack date: capped.
    CHECK(d.resolved(parse_date("2010-03-02")).days == parse_date("2010-03-02").days);
}
