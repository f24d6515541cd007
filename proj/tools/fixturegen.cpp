// Generates the bundled synthetic transaction fixture: 190 rows (38 early-era,
// 152 late-era) whose headline marginals and the early-era firearms/fatality
// two-way rule are fixed by construction. Deterministic for a given seed.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "acmine/catalog.hpp"
#include "acmine/dataset.hpp"
#include "acmine/rng.hpp"

using namespace acmine;

namespace {

struct Row {
    std::string id;
    Date attack;
    Era era;
    Ideology ideology = Ideology::Unknown;
    SceneType scene = SceneType::Unknown;
    std::uint64_t bits = 0;
    std::optional<ImpreciseDate> trigger;
    std::optional<ImpreciseDate> leakage;
};

std::vector<int> shuffled(int count, SplitMix64& rng) {
    std::vector<int> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = count - 1; i > 0; --i) {
        int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i + 1)));
        std::swap(idx[i], idx[j]);
    }
    return idx;
}

void set_bit(Row& r, int item) { r.bits |= 1ULL << item; }

// Partitions a fresh shuffle of the block into consecutive chunks and applies
// one item per chunk.
void assign_partition(std::vector<Row>& rows, const std::vector<int>& block,
                      const std::vector<std::pair<int, int>>& item_counts, SplitMix64& rng) {
    auto order = shuffled(static_cast<int>(block.size()), rng);
    std::size_t pos = 0;
    for (auto [item, count] : item_counts) {
        for (int c = 0; c < count; ++c) set_bit(rows[block[order[pos++]]], item);
    }
}

// Marks `count` rows of the block with the item, on a fresh shuffle.
std::vector<int> assign_subset(std::vector<Row>& rows, const std::vector<int>& block,
                               int item, int count, SplitMix64& rng) {
    auto order = shuffled(static_cast<int>(block.size()), rng);
    std::vector<int> chosen;
    for (int c = 0; c < count; ++c) {
        chosen.push_back(block[order[c]]);
        set_bit(rows[block[order[c]]], item);
    }
    return chosen;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string out_path = argc > 1 ? argv[1] : "data/la_synthetic.csv";
    const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 42;
    SplitMix64 rng(seed);

    auto cat = ItemCatalog::builtin();
    auto item = [&](const char* code) { return cat->index_of(code); };

    const int n_pre = 38, n_post = 152, n = n_pre + n_post;
    std::vector<Row> rows(n);
    std::vector<int> pre(n_pre), post(n_post);
    std::iota(pre.begin(), pre.end(), 0);
    std::iota(post.begin(), post.end(), n_pre);

    for (int i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "LA%04d", i + 1);
        rows[i].id = id;
        if (i < n_pre) {
            rows[i].attack = Date{parse_date("1972-01-15").days + 280LL * i};
            rows[i].era = Era::Pre911;
        } else {
            rows[i].attack = Date{parse_date("2001-10-01").days + 38LL * (i - n_pre)};
            rows[i].era = Era::Post911;
        }
    }

    // Cohort labels. The late era carries 40/58/36 jihadist/right-wing/
    // single-issue plus 10 other and 8 unknown; scene types 54/37/27/27/7.
    {
        const Ideology pre_cycle[] = {Ideology::RightWing, Ideology::Jihadist,
                                      Ideology::SingleIssue, Ideology::Other,
                                      Ideology::RightWing};
        for (int i = 0; i < n_pre; ++i) rows[i].ideology = pre_cycle[i % 5];

        auto order = shuffled(n_post, rng);
        std::size_t pos = 0;
        auto take = [&](Ideology v, int count) {
            for (int c = 0; c < count; ++c) rows[post[order[pos++]]].ideology = v;
        };
        take(Ideology::Jihadist, 40);
        take(Ideology::RightWing, 58);
        take(Ideology::SingleIssue, 36);
        take(Ideology::Other, 10);
        take(Ideology::Unknown, 8);
    }
    {
        auto order = shuffled(n_post, rng);
        std::size_t pos = 0;
        auto take = [&](SceneType v, int count) {
            for (int c = 0; c < count; ++c) rows[post[order[pos++]]].scene = v;
        };
        take(SceneType::MaxDamager, 54);
        take(SceneType::Symbolic, 37);
        take(SceneType::Daredevil, 27);
        take(SceneType::AttentionSeeker, 27);
        take(SceneType::Staller, 7);
    }

    // Firearms and fatalities. Early era: 31 firearms, 29 fatal with a joint
    // count of 27, which pins the two-way rule: confidence 27/29 and 27/31,
    // lift 27*38/(31*29) > 1, joint support 27/38.
    {
        auto order = shuffled(n_pre, rng);
        for (int c = 0; c < 31; ++c) set_bit(rows[pre[order[c]]], item("C18"));
        for (int c = 0; c < 27; ++c) set_bit(rows[pre[order[c]]], item("C22"));
        for (int c = 31; c < 33; ++c) set_bit(rows[pre[order[c]]], item("C22"));
        // Early-era rows without a firearms bit use other weapons.
        for (int i : pre)
            if (!((rows[i].bits >> item("C18")) & 1ULL)) set_bit(rows[i], item("C19"));
        // Non-fatal early rows split into no-casualty and injury-only.
        std::vector<int> nonfatal;
        for (int i : pre)
            if (!((rows[i].bits >> item("C22")) & 1ULL)) nonfatal.push_back(i);
        assign_partition(rows, nonfatal, {{item("C20"), 5}, {item("C21"), 4}}, rng);
    }
    {
        auto firearms_post = assign_subset(rows, post, item("C18"), 82, rng);
        (void)firearms_post;
        for (int i : post)
            if (!((rows[i].bits >> item("C18")) & 1ULL)) set_bit(rows[i], item("C19"));
        auto fatal_post = assign_subset(rows, post, item("C22"), 68, rng);
        (void)fatal_post;
        std::vector<int> nonfatal;
        for (int i : post)
            if (!((rows[i].bits >> item("C22")) & 1ULL)) nonfatal.push_back(i);
        assign_partition(rows, nonfatal, {{item("C20"), 50}, {item("C21"), 34}}, rng);
    }

    // Trigger: 26 early + 92 late = 118 overall (62.1%; 68.4% / 60.5% per era).
    auto trig_pre = assign_subset(rows, pre, item("C09"), 26, rng);
    auto trig_post = assign_subset(rows, post, item("C09"), 92, rng);
    for (auto& r : rows)
        if (!((r.bits >> item("C09")) & 1ULL)) set_bit(r, item("C10"));

    // Contacts: 14 + 85 = 99 rows with no prior extremist relations (52.1%).
    assign_subset(rows, pre, item("C05"), 14, rng);
    assign_subset(rows, post, item("C05"), 85, rng);
    for (auto& r : rows)
        if (!((r.bits >> item("C05")) & 1ULL)) set_bit(r, item("C06"));

    // Radicalization means.
    assign_subset(rows, pre, item("C08"), 25, rng);
    assign_subset(rows, post, item("C08"), 60, rng);
    for (auto& r : rows)
        if (!((r.bits >> item("C08")) & 1ULL)) set_bit(r, item("C07"));

    // Criminal history and after-attack behavior.
    assign_partition(rows, pre,
                     {{item("C01"), 18}, {item("C02"), 10}, {item("C03"), 10}}, rng);
    assign_partition(rows, post,
                     {{item("C01"), 76}, {item("C02"), 40}, {item("C03"), 36}}, rng);
    assign_partition(rows, pre,
                     {{item("C23"), 20}, {item("C24"), 12}, {item("C25"), 6}}, rng);
    assign_partition(rows, post,
                     {{item("C23"), 30}, {item("C24"), 80}, {item("C25"), 42}}, rng);

    // Weapons training.
    assign_subset(rows, pre, item("C04"), 18, rng);
    assign_subset(rows, post, item("C04"), 33, rng);

    // Leakage: early era 22 offline-only, 3 offline+online, 2 online-only,
    // 11 none; late era 45 offline (10 also online), 27 online-only, 80 none.
    {
        auto order = shuffled(n_pre, rng);
        for (int c = 0; c < 25; ++c) set_bit(rows[pre[order[c]]], item("C12"));
        for (int c = 0; c < 3; ++c) set_bit(rows[pre[order[c]]], item("C13"));
        for (int c = 25; c < 27; ++c) set_bit(rows[pre[order[c]]], item("C13"));
    }
    {
        auto order = shuffled(n_post, rng);
        for (int c = 0; c < 45; ++c) set_bit(rows[post[order[c]]], item("C12"));
        for (int c = 0; c < 10; ++c) set_bit(rows[post[order[c]]], item("C13"));
        for (int c = 45; c < 72; ++c) set_bit(rows[post[order[c]]], item("C13"));
    }
    for (auto& r : rows)
        if (!((r.bits >> item("C12")) & 1ULL) && !((r.bits >> item("C13")) & 1ULL))
            set_bit(r, item("C11"));

    // Targets: civilians 24 + 94 = 118 (62.1%); the rest split across the
    // other target kinds, plus six late-era civilian rows that also hit law
    // enforcement.
    auto civ_pre = assign_subset(rows, pre, item("C14"), 24, rng);
    auto civ_post = assign_subset(rows, post, item("C14"), 94, rng);
    {
        std::vector<int> rest;
        for (int i : pre)
            if (!((rows[i].bits >> item("C14")) & 1ULL)) rest.push_back(i);
        assign_partition(rows, rest,
                         {{item("C15"), 6}, {item("C16"), 5}, {item("C17"), 3}}, rng);
        rest.clear();
        for (int i : post)
            if (!((rows[i].bits >> item("C14")) & 1ULL)) rest.push_back(i);
        assign_partition(rows, rest,
                         {{item("C15"), 12}, {item("C16"), 38}, {item("C17"), 8}}, rng);
        for (int c = 0; c < 6; ++c) set_bit(rows[civ_post[c]], item("C16"));
        (void)civ_pre;
    }

    // Milestone dates. Late-era triggers: 66 day / 20 week / 2 month / 4 year;
    // early-era: 18 day / 8 week. Leakage dates attach to leaking rows with a
    // small day-count spread.
    {
        int j = 0;
        for (int i : trig_pre) {
            long long delta = (j < 18) ? 3 + (j * 37) % 600 : 10 + (j * 37) % 600;
            DatePrecision prec = j < 18 ? DatePrecision::Day : DatePrecision::Week;
            rows[i].trigger = ImpreciseDate{Date{rows[i].attack.days - delta}, prec};
            ++j;
        }
        j = 0;
        for (int i : trig_post) {
            long long delta;
            DatePrecision prec;
            if (j < 66) {
                delta = 1 + (j * 53) % 700;
                prec = DatePrecision::Day;
            } else if (j < 86) {
                delta = 7 + (j * 31) % 400;
                prec = DatePrecision::Week;
            } else if (j < 88) {
                delta = 60 + (j * 17) % 500;
                prec = DatePrecision::Month;
            } else {
                delta = 400 + (j * 13) % 800;
                prec = DatePrecision::Year;
            }
            rows[i].trigger = ImpreciseDate{Date{rows[i].attack.days - delta}, prec};
            ++j;
        }
        j = 0;
        for (auto& r : rows) {
            bool leaks = ((r.bits >> item("C12")) & 1ULL) || ((r.bits >> item("C13")) & 1ULL);
            if (!leaks) continue;
            long long delta = (j * 29) % 180;
            DatePrecision prec = DatePrecision::Day;
            if (j % 10 == 3) {
                prec = DatePrecision::Week;
                delta += 7;
            } else if (j % 25 == 7) {
                prec = DatePrecision::Month;
                delta += 31;
            }
            r.leakage = ImpreciseDate{Date{r.attack.days - delta}, prec};
            ++j;
        }
    }

    // Validate everything against the catalog before writing.
    std::vector<Transaction> txs;
    for (const auto& r : rows) {
        Transaction t;
        t.id = r.id;
        t.attack_date = r.attack;
        t.era = r.era;
        t.ideology = r.ideology;
        t.scene = r.scene;
        t.bits = r.bits;
        t.trigger = r.trigger;
        t.leakage = r.leakage;
        txs.push_back(std::move(t));
    }
    Dataset ds(cat, std::move(txs), "synthetic fixture");

    std::ofstream out(out_path);
    if (!out) {
        std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
        return 1;
    }
    write_csv(ds, out);
    std::fprintf(stderr, "wrote %s (%lld rows, seed %llu)\n", out_path.c_str(),
                 ds.size(), static_cast<unsigned long long>(seed));
    return 0;
}
