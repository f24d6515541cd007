#include <doctest.h>

#include <cmath>
#include <map>

#include "acmine/errors.hpp"
#include "acmine/rules.hpp"
#include "acmine/stats.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace acmine;
using testutil::make_dataset;
using testutil::toy_catalog;

namespace {

Dataset tiny() {
    // D = {t1={A}, t2={A,B}, t3={B}}
    return make_dataset(toy_catalog(2), {0b01, 0b11, 0b10});
}

const AssociationRule* find_rule(const std::vector<AssociationRule>& rules, ItemMask a,
                                 ItemMask b) {
    for (const auto& r : rules)
        if (r.antecedent == a && r.consequent == b) return &r;
    return nullptr;
}

}  // namespace

TEST_CASE("confidence normalizes by the consequent by default") {
    Dataset ds = tiny();
    CHECK(confidence(ds, 0b01, 0b10) == Fraction(1, 2));
    CHECK(confidence(ds, 0b01, 0b10, ConfidenceConvention::Antecedent) == Fraction(1, 2));

    // Asymmetric case: A in 3 rows, B in 1 row, joint 1.
    Dataset skew = make_dataset(toy_catalog(2), {0b01, 0b01, 0b11});
    CHECK(confidence(skew, 0b01, 0b10) == Fraction(1, 1));  // count(AB)/count(B)
    CHECK(confidence(skew, 0b01, 0b10, ConfidenceConvention::Antecedent) == Fraction(1, 3));

    Dataset no_b = make_dataset(toy_catalog(2), {0b01, 0b01});
    CHECK_THROWS_AS(confidence(no_b, 0b01, 0b10), DataError);
    CHECK_THROWS_AS(confidence(ds, 0b01, 0b01), ConfigError);  // overlapping sides
}

TEST_CASE("lift matches the fraction form") {
    Dataset ds = tiny();
    CHECK(lift(ds, 0b01, 0b10) == doctest::Approx(0.75).epsilon(1e-12));

    // Exact independence: A on rows 1-50, B on rows 26-75, n=100.
    std::vector<ItemMask> rows(100, 0);
    for (int i = 0; i < 50; ++i) rows[i] |= 0b01;
    for (int i = 25; i < 75; ++i) rows[i] |= 0b10;
    Dataset indep = make_dataset(toy_catalog(2), rows);
    CHECK(lift(indep, 0b01, 0b10) == doctest::Approx(1.0).epsilon(1e-12));

    // Complementary items never co-occur.
    Dataset comp = make_dataset(toy_catalog(2), {0b01, 0b10, 0b01, 0b10});
    CHECK(lift(comp, 0b01, 0b10) == 0.0);

    Dataset no_b = make_dataset(toy_catalog(2), {0b01, 0b01});
    CHECK_THROWS_AS(lift(no_b, 0b01, 0b10), DataError);
}

TEST_CASE("lift is symmetric and confidence obeys the count identity") {
    SplitMix64 rng(8101);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = testutil::random_dataset(rng, 40, 6);
        for (int a = 0; a < 6; ++a) {
            for (int b = a + 1; b < 6; ++b) {
                ItemMask ma = 1ULL << a, mb = 1ULL << b;
                long long ca = oracle::count_rows(ds, ma);
                long long cb = oracle::count_rows(ds, mb);
                long long cab = oracle::count_rows(ds, ma | mb);
                if (ca == 0 || cb == 0) continue;
                CHECK(lift(ds, ma, mb) == doctest::Approx(lift(ds, mb, ma)).epsilon(1e-12));
                // confidence(A->B)*count(B) = confidence(B->A)*count(A) = count(AB)
                auto cf = confidence(ds, ma, mb);
                auto cr = confidence(ds, mb, ma);
                CHECK(cf.num * (cb / cf.den) == cab);
                CHECK(cr.num * (ca / cr.den) == cab);
            }
        }
    }
}

TEST_CASE("generate_rules classifies strength and two-way flags") {
    // 38 rows: 27 with both A,B; 4 A only; 2 B only; 5 empty.
    std::vector<ItemMask> rows;
    for (int i = 0; i < 27; ++i) rows.push_back(0b11);
    for (int i = 0; i < 4; ++i) rows.push_back(0b01);
    for (int i = 0; i < 2; ++i) rows.push_back(0b10);
    for (int i = 0; i < 5; ++i) rows.push_back(0b00);
    Dataset ds = make_dataset(toy_catalog(2), rows);

    auto fs = mine_frequent(ds, Fraction(1, 5));
    auto rules = generate_rules(fs, ds, RuleThresholds{});
    const auto* ab = find_rule(rules, 0b01, 0b10);
    const auto* ba = find_rule(rules, 0b10, 0b01);
    REQUIRE(ab);
    REQUIRE(ba);
    CHECK(ab->strength == Strength::Strong);
    CHECK(ba->strength == Strength::Strong);
    CHECK(ab->two_way);
    CHECK(ba->two_way);
    CHECK(ab->confidence == Fraction(27, 29));
    CHECK(ba->confidence == Fraction(27, 31));
}

TEST_CASE("rules with lift at or below 1 are weak regardless of confidence") {
    // B always present: confidence(A->B) = 1 but lift = 1 exactly.
    std::vector<ItemMask> rows;
    for (int i = 0; i < 8; ++i) rows.push_back(0b11);
    for (int i = 0; i < 2; ++i) rows.push_back(0b10);
    Dataset ds = make_dataset(toy_catalog(2), rows);
    auto fs = mine_frequent(ds, Fraction(1, 5));
    auto rules = generate_rules(fs, ds, RuleThresholds{});
    const auto* ab = find_rule(rules, 0b01, 0b10);
    REQUIRE(ab);
    CHECK(ab->lift == doctest::Approx(1.0));
    CHECK(ab->strength == Strength::Weak);
    CHECK(!ab->two_way);
}

TEST_CASE("no strong rules when confidence cannot reach the threshold") {
    Dataset ds = tiny();
    RuleThresholds th;
    th.min_support = Fraction(3, 10);
    auto fs = mine_frequent(ds, Fraction(3, 10));
    auto rules = generate_rules(fs, ds, th);
    for (const auto& r : rules) CHECK(r.strength == Strength::Weak);
}

TEST_CASE("strong set matches the brute-force pair scan on random data") {
    SplitMix64 rng(8102);
    for (int trial = 0; trial < 15; ++trial) {
        Dataset ds = testutil::random_dataset(rng, 25, 7, 0.5);
        auto fs = mine_frequent(ds, Fraction(1, 5));
        auto rules = generate_rules(fs, ds, RuleThresholds{});
        std::map<std::pair<int, int>, std::pair<bool, bool>> got;
        for (const auto& r : rules) {
            int a = mask_items(r.antecedent)[0];
            int b = mask_items(r.consequent)[0];
            got[{a, b}] = {r.strength == Strength::Strong, r.two_way};
        }
        for (const auto& ref : oracle::brute_strong_rules(ds, 1, 5, 7, 10)) {
            auto it = got.find({ref.a, ref.b});
            if (it == got.end()) {
                REQUIRE(!ref.strong);  // pair absent only when an item is infrequent
                continue;
            }
            REQUIRE(it->second.first == ref.strong);
            REQUIRE(it->second.second == ref.two_way);
        }
    }
}

TEST_CASE("itemset rules cover ordered partitions of frequent sets") {
    std::vector<ItemMask> rows;
    for (int i = 0; i < 9; ++i) rows.push_back(0b111);
    rows.push_back(0b001);
    Dataset ds = make_dataset(toy_catalog(3), rows);
    RuleThresholds th;
    th.itemset_rules = true;
    auto fs = mine_frequent(ds, Fraction(1, 2));
    auto rules = generate_rules(fs, ds, th);
    const auto* r = find_rule(rules, 0b011, 0b100);
    REQUIRE(r);
    CHECK(r->support_joint == Fraction(9, 10));
    const auto* r2 = find_rule(rules, 0b100, 0b011);
    REQUIRE(r2);
}

TEST_CASE("worked significance case: z = 3.464, flips under Bonferroni") {
    // n=100: 40 joint, 10 A-only, 10 B-only -> marginals 0.5/0.5.
    std::vector<ItemMask> rows;
    for (int i = 0; i < 40; ++i) rows.push_back(0b11);
    for (int i = 0; i < 10; ++i) rows.push_back(0b01);
    for (int i = 0; i < 10; ++i) rows.push_back(0b10);
    for (int i = 0; i < 40; ++i) rows.push_back(0b00);
    Dataset ds = make_dataset(toy_catalog(2), rows);
    auto fs = mine_frequent(ds, Fraction(1, 5));
    auto rules = generate_rules(fs, ds, RuleThresholds{});

    SignificanceConfig cfg;
    cfg.family_size = 1;
    apply_significance(rules, cfg);
    const auto* ab = find_rule(rules, 0b01, 0b10);
    REQUIRE(ab);
    CHECK(ab->testable);
    CHECK(ab->z == doctest::Approx(3.4641).epsilon(1e-4));
    CHECK(ab->significant);

    // Exact binomial tail backs the verdict: P(Bin(100, 0.25) >= 40) < 0.002.
    CHECK(oracle::binomial_upper_tail(40, 100, 0.25) < 0.002);

    cfg.family_size = 4;
    auto out = apply_significance(rules, cfg);
    CHECK(out.k_effective == doctest::Approx(4.0));
    CHECK(!find_rule(rules, 0b01, 0b10)->significant);
}

TEST_CASE("z is zero at perfect independence") {
    // A on rows 0..49, B on alternating rows: joint = n*sA*sB exactly.
    std::vector<ItemMask> rows(100, 0);
    for (int i = 0; i < 50; ++i) rows[i] |= 0b01;
    for (int i = 0; i < 100; i += 2) rows[i] |= 0b10;
    Dataset ds = make_dataset(toy_catalog(2), rows);
    auto fs = mine_frequent(ds, Fraction(1, 5));
    auto rules = generate_rules(fs, ds, RuleThresholds{});
    SignificanceConfig cfg;
    apply_significance(rules, cfg);
    const auto* ab = find_rule(rules, 0b01, 0b10);
    REQUIRE(ab);
    CHECK(ab->z == doctest::Approx(0.0));
    CHECK(!ab->significant);
}

TEST_CASE("degenerate marginals are untestable") {
    std::vector<ItemMask> rows(10, 0b01);  // A in every row
    rows[0] |= 0b10;
    Dataset ds = make_dataset(toy_catalog(2), rows);
    auto fs = mine_frequent(ds, Fraction(1, 100));
    auto rules = generate_rules(fs, ds, RuleThresholds{});
    SignificanceConfig cfg;
    apply_significance(rules, cfg);
    const auto* ab = find_rule(rules, 0b01, 0b10);
    REQUIRE(ab);
    CHECK(!ab->testable);
    CHECK(!ab->significant);
}

TEST_CASE("normal approximation tail tracks the exact binomial within 0.02") {
    SplitMix64 rng(8103);
    int checked = 0;
    while (checked < 40) {
        long long n = 50 + static_cast<long long>(rng.bounded(400));
        double sa = 0.2 + 0.6 * rng.unit();
        double sb = 0.2 + 0.6 * rng.unit();
        double p0 = sa * sb;
        if (static_cast<double>(n) * p0 * (1 - p0) < 9.0) continue;
        long long count = static_cast<long long>(rng.bounded(n + 1));
        double approx = stats::binomial_normal_two_sided_p(count, n, p0);
        double exact = oracle::binomial_exact_two_sided(count, n, p0);
        CHECK(std::fabs(approx - exact) <= 0.02);
        ++checked;
    }
}
