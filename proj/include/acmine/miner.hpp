#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "acmine/dataset.hpp"
#include "acmine/fraction.hpp"

namespace acmine {

// An itemset is a bit mask over the catalog's canonical item order.
using ItemMask = std::uint64_t;

int mask_size(ItemMask m);
bool mask_contains(ItemMask super, ItemMask sub);
std::vector<int> mask_items(ItemMask m);
ItemMask items_mask(const std::vector<int>& items);

// Canonical itemset order: by cardinality, then lexicographically on the
// ascending item-index sequence.
bool canonical_less(ItemMask a, ItemMask b);

std::string format_itemset(ItemMask m, const ItemCatalog& cat);  // "C09 C18"
ItemMask parse_itemset(const std::string& text, const ItemCatalog& cat);

// Number of transactions containing every item of `set`.
long long count_containing(const Dataset& ds, ItemMask set, int workers = 1);

// Exact support fraction |{t : set ⊆ t}| / n.
Fraction support(const Dataset& ds, ItemMask set);
Fraction support(const Dataset& ds, const std::vector<std::string>& codes);

struct MineOptions {
    int max_items = 0;  // itemset cardinality cap; 0 means the catalog size
    int workers = 1;
};

struct FrequentSetTable {
    long long n = 0;
    Fraction min_support;
    // Canonically ordered, empty set first; every subset of a stored set is
    // also stored.
    std::vector<std::pair<ItemMask, long long>> sets;

    bool contains(ItemMask m) const { return index_.count(m) != 0; }
    long long count(ItemMask m) const;
    Fraction support_of(ItemMask m) const { return Fraction(count(m), n); }
    std::vector<int> frequent_items() const;  // frequent singletons, ascending

    void rebuild_index();

private:
    std::unordered_map<ItemMask, long long> index_;
};

// Joins same-cardinality sets sharing all but their largest item, then drops
// any candidate with a k-subset missing from the input level.
std::vector<ItemMask> candidate_join(const std::vector<ItemMask>& level_sets);

// Level-wise mining: exactly the itemsets with support >= min_support.
FrequentSetTable mine_frequent(const Dataset& ds, Fraction min_support,
                               const MineOptions& opts = {});

}  // namespace acmine
