#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "acmine/dataset.hpp"
#include "acmine/miner.hpp"
#include "acmine/rng.hpp"

namespace testutil {

using namespace acmine;

// d single-letter items (A, B, C, ...), each in its own optional group, so
// any bit pattern is a valid transaction.
inline std::shared_ptr<const ItemCatalog> toy_catalog(int d) {
    std::ostringstream doc;
    for (int i = 0; i < d; ++i) {
        char code = static_cast<char>('A' + i);
        doc << "item " << code << " early item " << code << "\n";
    }
    for (int i = 0; i < d; ++i) {
        char code = static_cast<char>('A' + i);
        doc << "group g" << code << " optional " << code << "\n";
    }
    std::istringstream in(doc.str());
    return ItemCatalog::parse_shared(in, "<toy>");
}

inline Dataset make_dataset(std::shared_ptr<const ItemCatalog> cat,
                            const std::vector<ItemMask>& rows) {
    std::vector<Transaction> txs;
    int i = 0;
    for (ItemMask bits : rows) {
        Transaction t;
        t.id = "T" + std::to_string(++i);
        t.attack_date = parse_date("2010-01-01");
        t.era = Era::Post911;
        t.bits = bits;
        txs.push_back(std::move(t));
    }
    return Dataset(std::move(cat), std::move(txs), "<test>");
}

inline Dataset random_dataset(SplitMix64& rng, int n, int d, double density = 0.4) {
    auto cat = toy_catalog(d);
    std::vector<ItemMask> rows;
    rows.reserve(n);
    for (int r = 0; r < n; ++r) {
        ItemMask bits = 0;
        for (int i = 0; i < d; ++i)
            if (rng.unit() < density) bits |= 1ULL << i;
        rows.push_back(bits);
    }
    return make_dataset(cat, rows);
}

}  // namespace testutil
