#include "acmine/miner.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "acmine/errors.hpp"
#include "acmine/parallel.hpp"

namespace acmine {

int mask_size(ItemMask m) {
    return std::popcount(m);
}

bool mask_contains(ItemMask super, ItemMask sub) {
    return (super & sub) == sub;
}

std::vector<int> mask_items(ItemMask m) {
    std::vector<int> out;
    while (m) {
        int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

ItemMask items_mask(const std::vector<int>& items) {
    ItemMask m = 0;
    for (int i : items) m |= 1ULL << i;
    return m;
}

bool canonical_less(ItemMask a, ItemMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    while (a && b) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

std::string format_itemset(ItemMask m, const ItemCatalog& cat) {
    std::string out;
    for (int i : mask_items(m)) {
        if (!out.empty()) out += ' ';
        out += cat.item(i).code;
    }
    return out;
}

ItemMask parse_itemset(const std::string& text, const ItemCatalog& cat) {
    std::istringstream ss(text);
    std::string code;
    ItemMask m = 0;
    while (ss >> code) m |= 1ULL << cat.index_of(code);
    return m;
}

long long count_containing(const Dataset& ds, ItemMask set, int workers) {
    const auto& rows = ds.transactions();
    int chunks = chunk_count(rows.size(), workers);
    std::vector<long long> partial(chunks, 0);
    parallel_chunks(rows.size(), workers, [&](int ci, std::size_t b, std::size_t e) {
        long long c = 0;
        for (std::size_t i = b; i < e; ++i)
            if ((rows[i].bits & set) == set) ++c;
        partial[ci] = c;
    });
    long long total = 0;
    for (long long c : partial) total += c;
    return total;
}

Fraction support(const Dataset& ds, ItemMask set) {
    if (ds.size() == 0) throw EmptyResultError("support over an empty dataset");
    if (ds.catalog().size() < 64 && (set >> ds.catalog().size()) != 0)
        throw DataError("itemset references an item outside the catalog");
    return Fraction(count_containing(ds, set), ds.size());
}

Fraction support(const Dataset& ds, const std::vector<std::string>& codes) {
    ItemMask m = 0;
    for (const auto& c : codes) m |= 1ULL << ds.catalog().index_of(c);
    return support(ds, m);
}

long long FrequentSetTable::count(ItemMask m) const {
    auto it = index_.find(m);
    if (it == index_.end())
        throw DataError("itemset is not in the frequent-set table");
    return it->second;
}

std::vector<int> FrequentSetTable::frequent_items() const {
    std::vector<int> out;
    for (const auto& [mask, cnt] : sets)
        if (std::popcount(mask) == 1) out.push_back(std::countr_zero(mask));
    std::sort(out.begin(), out.end());
    return out;
}

void FrequentSetTable::rebuild_index() {
    index_.clear();
    index_.reserve(sets.size());
    for (const auto& [mask, cnt] : sets) index_[mask] = cnt;
}

std::vector<ItemMask> candidate_join(const std::vector<ItemMask>& level_sets) {
    if (level_sets.empty()) return {};
    int k = std::popcount(level_sets[0]);
    std::unordered_set<ItemMask> present;
    for (ItemMask m : level_sets) {
        if (std::popcount(m) != k)
            throw ConfigError("candidate_join requires sets of identical cardinality");
        present.insert(m);
    }
    if (k == 0) return {};

    // Bucket by the set minus its largest item; every joinable pair shares
    // that prefix.
    std::unordered_map<ItemMask, std::vector<int>> buckets;
    for (ItemMask m : present) {
        int top = 63 - std::countl_zero(m);
        buckets[m ^ (1ULL << top)].push_back(top);
    }

    std::vector<ItemMask> out;
    for (auto& [base, tops] : buckets) {
        std::sort(tops.begin(), tops.end());
        for (std::size_t i = 0; i < tops.size(); ++i) {
            for (std::size_t j = i + 1; j < tops.size(); ++j) {
                ItemMask cand = base | (1ULL << tops[i]) | (1ULL << tops[j]);
                bool ok = true;
                for (ItemMask rest = cand; rest;) {
                    ItemMask bit = rest & (0 - rest);
                    if (!present.count(cand ^ bit)) {
                        ok = false;
                        break;
                    }
                    rest ^= bit;
                }
                if (ok) out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

FrequentSetTable mine_frequent(const Dataset& ds, Fraction min_support,
                               const MineOptions& opts) {
    if (ds.size() == 0) throw EmptyResultError("cannot mine an empty dataset");
    if (!(Fraction(0, 1) < min_support) || min_support > Fraction(1, 1))
        throw ConfigError("min_support must be in (0, 1]");

    const long long n = ds.size();
    const int d = ds.catalog().size();
    const int max_items = opts.max_items > 0 ? std::min(opts.max_items, d) : d;

    FrequentSetTable table;
    table.n = n;
    table.min_support = min_support;
    table.sets.emplace_back(0, n);  // the empty set holds in every transaction

    // Level 1: one pass for all singleton counts.
    std::vector<long long> item_counts(d, 0);
    {
        int chunks = chunk_count(ds.transactions().size(), opts.workers);
        std::vector<std::vector<long long>> partial(chunks, std::vector<long long>(d, 0));
        parallel_chunks(ds.transactions().size(), opts.workers,
                        [&](int ci, std::size_t b, std::size_t e) {
                            auto& local = partial[ci];
                            for (std::size_t r = b; r < e; ++r) {
                                ItemMask bits = ds.transactions()[r].bits;
                                while (bits) {
                                    local[std::countr_zero(bits)]++;
                                    bits &= bits - 1;
                                }
                            }
                        });
        for (const auto& local : partial)
            for (int i = 0; i < d; ++i) item_counts[i] += local[i];
    }

    std::vector<ItemMask> level;
    for (int i = 0; i < d; ++i) {
        if (ratio_at_least(item_counts[i], n, min_support)) {
            level.push_back(1ULL << i);
            table.sets.emplace_back(1ULL << i, item_counts[i]);
        }
    }

    int k = 1;
    while (!level.empty() && k < max_items) {
        std::vector<ItemMask> cands = candidate_join(level);
        if (cands.empty()) break;

        std::vector<long long> counts(cands.size(), 0);
        int chunks = chunk_count(ds.transactions().size(), opts.workers);
        std::vector<std::vector<long long>> partial(chunks,
                                                    std::vector<long long>(cands.size(), 0));
        parallel_chunks(ds.transactions().size(), opts.workers,
                        [&](int ci, std::size_t b, std::size_t e) {
                            auto& local = partial[ci];
                            for (std::size_t r = b; r < e; ++r) {
                                ItemMask bits = ds.transactions()[r].bits;
                                for (std::size_t c = 0; c < cands.size(); ++c)
                                    if ((bits & cands[c]) == cands[c]) local[c]++;
                            }
                        });
        for (const auto& local : partial)
            for (std::size_t c = 0; c < cands.size(); ++c) counts[c] += local[c];

        level.clear();
        for (std::size_t c = 0; c < cands.size(); ++c) {
            if (ratio_at_least(counts[c], n, min_support)) {
                level.push_back(cands[c]);
                table.sets.emplace_back(cands[c], counts[c]);
            }
        }
        ++k;
    }

    std::sort(table.sets.begin(), table.sets.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    table.rebuild_index();
    return table;
}

}  // namespace acmine
