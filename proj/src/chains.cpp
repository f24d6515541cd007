#include "acmine/chains.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "acmine/errors.hpp"
#include "acmine/miner.hpp"
#include "acmine/parallel.hpp"

namespace acmine {

double CohesionMeasure::operator()(long long count_both, long long count_a) const {
    if (count_a == 0) throw DataError("cohesion undefined: antecedent never occurs");
    if (2 * count_both <= count_a) return 0.0;  // p <= 1/2, exact comparison
    double p = static_cast<double>(count_both) / static_cast<double>(count_a);
    double h = 0.0;
    if (p < 1.0) h = -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
    return std::sqrt(std::max(0.0, 1.0 - h * h));
}

namespace {

const CohesionMeasure kDefaultMeasure;

// Per-item occurrence rows as packed bit vectors plus cached counts; lets the
// chain search intersect candidate chains incrementally.
struct ItemRows {
    int d = 0;
    std::size_t words = 0;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<long long> count;

    explicit ItemRows(const Dataset& ds) {
        d = ds.catalog().size();
        std::size_t n = ds.transactions().size();
        words = (n + 63) / 64;
        rows.assign(d, std::vector<std::uint64_t>(words, 0));
        count.assign(d, 0);
        for (std::size_t r = 0; r < n; ++r) {
            ItemMask bits = ds.transactions()[r].bits;
            while (bits) {
                int i = std::countr_zero(bits);
                rows[i][r / 64] |= 1ULL << (r % 64);
                count[i]++;
                bits &= bits - 1;
            }
        }
    }
};

long long popcount_words(const std::vector<std::uint64_t>& w) {
    long long c = 0;
    for (std::uint64_t x : w) c += std::popcount(x);
    return c;
}

// Directed pairwise cohesion cache.
struct CohesionTable {
    int d;
    std::vector<long long> pair_count;
    std::vector<long long> item_count;
    std::vector<double> value;

    CohesionTable(const Dataset& ds, const ItemRows& rows) : d(rows.d) {
        pair_count.assign(static_cast<std::size_t>(d) * d, 0);
        item_count = rows.count;
        for (const auto& t : ds.transactions()) {
            auto present = mask_items(t.bits);
            for (std::size_t i = 0; i < present.size(); ++i)
                for (std::size_t j = i + 1; j < present.size(); ++j) {
                    pair_count[present[i] * d + present[j]]++;
                    pair_count[present[j] * d + present[i]]++;
                }
        }
        value.assign(static_cast<std::size_t>(d) * d, 0.0);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (a == b || item_count[a] == 0) continue;
                value[a * d + b] = kDefaultMeasure(pair_count[a * d + b], item_count[a]);
            }
    }

    double operator()(int a, int b) const { return value[a * d + b]; }
};

double chain_cohesion_cached(const CohesionTable& coh, const std::vector<int>& nodes) {
    std::size_t m = nodes.size();
    // Left-hand sides of the rules are nodes[0..m-2], right-hand sides
    // nodes[1..m-1].
    double product = 1.0;
    for (std::size_t i = 0; i + 1 < m - 1; ++i)  // within LHS
        for (std::size_t j = i + 1; j < m - 1; ++j) product *= coh(nodes[i], nodes[j]);
    for (std::size_t i = 1; i + 1 < m; ++i)  // within RHS
        for (std::size_t j = i + 1; j < m; ++j) product *= coh(nodes[i], nodes[j]);
    for (std::size_t i = 0; i < m - 1; ++i)  // across, skipping self-pairs
        for (std::size_t j = 1; j < m; ++j) {
            if (nodes[i] == nodes[j]) continue;
            product *= coh(nodes[i], nodes[j]);
        }
    return product;
}

void check_nodes(const Dataset& ds, const std::vector<int>& nodes, std::size_t min_len) {
    if (nodes.size() < min_len)
        throw ConfigError("chain needs at least " + std::to_string(min_len) + " nodes");
    std::set<int> uniq(nodes.begin(), nodes.end());
    if (uniq.size() != nodes.size()) throw DataError("chain nodes must be distinct");
    for (int v : nodes)
        if (v < 0 || v >= ds.catalog().size())
            throw DataError("chain node outside the catalog");
}

}  // namespace

double pair_cohesion(const Dataset& ds, int item_a, int item_b) {
    if (item_a < 0 || item_a >= ds.catalog().size() || item_b < 0 ||
        item_b >= ds.catalog().size())
        throw DataError("item index outside the catalog");
    long long ca = count_containing(ds, 1ULL << item_a);
    long long both = count_containing(ds, (1ULL << item_a) | (1ULL << item_b));
    return kDefaultMeasure(both, ca);
}

double chain_cohesion(const Dataset& ds, const std::vector<int>& nodes) {
    check_nodes(ds, nodes, 3);
    ItemRows rows(ds);
    CohesionTable coh(ds, rows);
    return chain_cohesion_cached(coh, nodes);
}

Fraction end_to_end_confidence(const Dataset& ds, const std::vector<int>& nodes) {
    check_nodes(ds, nodes, 2);
    long long head = count_containing(ds, 1ULL << nodes[0]);
    if (head == 0) throw DataError("chain head never occurs");
    return Fraction(count_containing(ds, items_mask(nodes)), head);
}

namespace {

struct SearchContext {
    const Dataset& ds;
    const CohesionConfig& cfg;
    const ItemRows& rows;
    const CohesionTable& coh;
    const std::vector<std::vector<int>>& adjacency;
    std::size_t max_len;
};

struct PathState {
    std::vector<int> nodes;
    std::vector<std::uint64_t> joint_rows;
    long long head_count = 0;
};

// Returns true when some extension of the current path with >= 3 nodes passed
// both thresholds (so the current path is a prefix of an emitted chain).
bool dfs(const SearchContext& ctx, PathState& path, std::vector<std::vector<int>>& out) {
    bool any_pass = false;
    if (path.nodes.size() >= ctx.max_len) return false;
    for (int next : ctx.adjacency[path.nodes.back()]) {
        if (std::find(path.nodes.begin(), path.nodes.end(), next) != path.nodes.end())
            continue;

        std::vector<std::uint64_t> joint(path.joint_rows.size());
        for (std::size_t w = 0; w < joint.size(); ++w)
            joint[w] = path.joint_rows[w] & ctx.rows.rows[next][w];
        long long joint_count = popcount_words(joint);
        // Both metrics only shrink as the chain grows, so failing either
        // prunes the whole branch.
        if (!ratio_at_least(joint_count, path.head_count, ctx.cfg.min_chain_confidence))
            continue;

        path.nodes.push_back(next);
        double coh = path.nodes.size() >= 3 ? chain_cohesion_cached(ctx.coh, path.nodes)
                                            : ctx.coh(path.nodes[0], path.nodes[1]);
        if (coh < ctx.cfg.min_cohesion) {
            path.nodes.pop_back();
            continue;
        }

        std::swap(path.joint_rows, joint);
        bool deeper = dfs(ctx, path, out);
        std::swap(path.joint_rows, joint);

        if (path.nodes.size() >= 3) {
            any_pass = true;
            if (!ctx.cfg.maximal_only || !deeper) out.push_back(path.nodes);
        } else {
            any_pass |= deeper;
        }
        path.nodes.pop_back();
    }
    return any_pass;
}

}  // namespace

std::vector<RuleChain> search_chains(const std::vector<AssociationRule>& rules,
                                     const Dataset& ds, const CohesionConfig& cfg,
                                     std::optional<int> seed_item) {
    if (cfg.min_cohesion <= 0.0 || cfg.min_cohesion > 1.0)
        throw ConfigError("min_cohesion must be in (0, 1]");
    if (!(Fraction(0, 1) < cfg.min_chain_confidence) ||
        cfg.min_chain_confidence > Fraction(1, 1))
        throw ConfigError("min_chain_confidence must be in (0, 1]");

    const int d = ds.catalog().size();
    std::vector<std::vector<int>> adjacency(d);
    for (const auto& r : rules) {
        if (r.strength != Strength::Strong) continue;
        if (std::popcount(r.antecedent) != 1 || std::popcount(r.consequent) != 1) continue;
        adjacency[std::countr_zero(r.antecedent)].push_back(std::countr_zero(r.consequent));
    }
    for (auto& adj : adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }

    ItemRows rows(ds);
    CohesionTable coh(ds, rows);
    SearchContext ctx{ds, cfg, rows, coh, adjacency,
                      cfg.max_chain_length > 0 ? static_cast<std::size_t>(cfg.max_chain_length)
                                               : static_cast<std::size_t>(d)};

    std::vector<int> seeds;
    if (seed_item) {
        if (*seed_item < 0 || *seed_item >= d)
            throw DataError("seed item outside the catalog");
        seeds.push_back(*seed_item);
    } else {
        for (int i = 0; i < d; ++i)
            if (!adjacency[i].empty()) seeds.push_back(i);
    }

    // Seeds are independent; results are concatenated in seed order so the
    // worker count never shows in the output.
    std::vector<std::vector<std::vector<int>>> per_seed(seeds.size());
    parallel_chunks(seeds.size(), cfg.workers, [&](int, std::size_t b, std::size_t e) {
        for (std::size_t s = b; s < e; ++s) {
            int head = seeds[s];
            if (rows.count[head] == 0) continue;
            PathState path;
            path.nodes = {head};
            path.joint_rows = rows.rows[head];
            path.head_count = rows.count[head];
            dfs(ctx, path, per_seed[s]);
        }
    });

    std::vector<std::vector<int>> found;
    for (auto& v : per_seed)
        for (auto& nodes : v) found.push_back(std::move(nodes));
    std::sort(found.begin(), found.end());

    std::vector<RuleChain> chains;
    chains.reserve(found.size());
    for (const auto& nodes : found) {
        RuleChain c;
        c.nodes = nodes;
        c.cohesion = chain_cohesion_cached(coh, nodes);
        std::vector<std::uint64_t> joint = rows.rows[nodes[0]];
        for (std::size_t i = 1; i < nodes.size(); ++i)
            for (std::size_t w = 0; w < joint.size(); ++w)
                joint[w] &= rows.rows[nodes[i]][w];
        c.confidence = Fraction(popcount_words(joint), rows.count[nodes[0]]);

        c.pairwise.assign(nodes.size(), std::vector<double>(nodes.size(), 0.0));
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = 0; j < nodes.size(); ++j)
                if (i != j) c.pairwise[i][j] = coh(nodes[i], nodes[j]);

        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            int a = nodes[i], b = nodes[i + 1];
            long long joint_ab = coh.pair_count[a * d + b];
            long long fwd_den = cfg.convention == ConfidenceConvention::Consequent
                                    ? coh.item_count[b]
                                    : coh.item_count[a];
            long long rev_den = cfg.convention == ConfidenceConvention::Consequent
                                    ? coh.item_count[a]
                                    : coh.item_count[b];
            c.edge_confidence.emplace_back(joint_ab, fwd_den);
            if (ratio_at_least(joint_ab, rev_den, cfg.edge_confidence))
                c.bidirectional.push_back(static_cast<int>(i));
        }
        chains.push_back(std::move(c));
    }
    return chains;
}

RuleChain annotate_phases(RuleChain chain, const ItemCatalog& cat) {
    chain.phases.clear();
    for (int v : chain.nodes) {
        if (v < 0 || v >= cat.size()) throw DataError("chain node outside the catalog");
        chain.phases.push_back(cat.item(v).phase);
    }
    chain.non_chronological = false;
    for (std::size_t i = 0; i < chain.phases.size(); ++i)
        for (std::size_t j = i + 1; j < chain.phases.size(); ++j)
            if (static_cast<int>(chain.phases[i]) > static_cast<int>(chain.phases[j]))
                chain.non_chronological = true;
    return chain;
}

}  // namespace acmine
