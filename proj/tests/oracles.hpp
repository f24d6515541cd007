#pragma once

// Independent reference implementations used to check the library. These are
// deliberately written from the definitions, not by calling the code under
// test: exhaustive enumeration instead of level-wise mining, literal products
// for the chain cohesion, full pair sorting for the C-Index, and Boost.Math
// for the distribution tails.

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "acmine/dataset.hpp"
#include "acmine/miner.hpp"

namespace oracle {

using acmine::Dataset;
using acmine::ItemMask;

inline long long count_rows(const Dataset& ds, ItemMask set) {
    long long c = 0;
    for (const auto& t : ds.transactions())
        if ((t.bits & set) == set) ++c;
    return c;
}

// All 2^d itemsets with count/n >= num/den, by direct counting.
inline std::map<ItemMask, long long> exhaustive_frequent(const Dataset& ds, long long num,
                                                         long long den) {
    const int d = ds.catalog().size();
    const long long n = ds.size();
    std::map<ItemMask, long long> out;
    for (ItemMask set = 0; set < (1ULL << d); ++set) {
        long long c = count_rows(ds, set);
        if (static_cast<__int128>(c) * den >= static_cast<__int128>(num) * n)
            out[set] = c;
    }
    return out;
}

struct BruteRule {
    int a = 0, b = 0;
    bool strong = false;
    bool two_way = false;
};

// Strong single-item rules by a full ordered-pair scan. Confidence uses the
// consequent-side denominator; lift compares count(ab)*n with count(a)*count(b).
inline std::vector<BruteRule> brute_strong_rules(const Dataset& ds, long long sup_num,
                                                 long long sup_den, long long conf_num,
                                                 long long conf_den) {
    const int d = ds.catalog().size();
    const long long n = ds.size();
    std::vector<std::vector<bool>> strong(d, std::vector<bool>(d, false));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            if (a == b) continue;
            long long ca = count_rows(ds, 1ULL << a);
            long long cb = count_rows(ds, 1ULL << b);
            long long cab = count_rows(ds, (1ULL << a) | (1ULL << b));
            bool sup_ok = static_cast<__int128>(cab) * sup_den >=
                          static_cast<__int128>(sup_num) * n;
            bool conf_ok = cb > 0 && static_cast<__int128>(cab) * conf_den >=
                                         static_cast<__int128>(conf_num) * cb;
            bool lift_ok = static_cast<__int128>(cab) * n >
                           static_cast<__int128>(ca) * cb;
            strong[a][b] = sup_ok && conf_ok && lift_ok;
        }
    }
    std::vector<BruteRule> out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (a == b) continue;
            out.push_back({a, b, strong[a][b], strong[a][b] && strong[b][a]});
        }
    return out;
}

inline double binomial_exact_two_sided(long long count, long long n, double p0) {
    boost::math::binomial_distribution<double> dist(static_cast<double>(n), p0);
    double lower = boost::math::cdf(dist, static_cast<double>(count));
    double upper = count == 0 ? 1.0
                              : 1.0 - boost::math::cdf(dist, static_cast<double>(count - 1));
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

inline double binomial_upper_tail(long long count, long long n, double p0) {
    if (count <= 0) return 1.0;
    boost::math::binomial_distribution<double> dist(static_cast<double>(n), p0);
    return 1.0 - boost::math::cdf(dist, static_cast<double>(count - 1));
}

inline double t_two_sided(double t, double df) {
    boost::math::students_t_distribution<double> dist(df);
    double upper = 1.0 - boost::math::cdf(dist, std::fabs(t));
    return 2.0 * upper;
}

// Literal evaluation of the chain-cohesion definition: decompose the chain
// into the list of rule left-hand sides and right-hand sides, multiply the
// pairwise cohesions within each list and across the two lists (skipping
// identical-item pairs).
inline double ref_pair_cohesion(const Dataset& ds, int a, int b) {
    long long ca = 0, cab = 0;
    for (const auto& t : ds.transactions()) {
        bool ha = (t.bits >> a) & 1ULL, hb = (t.bits >> b) & 1ULL;
        if (ha) ++ca;
        if (ha && hb) ++cab;
    }
    if (ca == 0) return 0.0;
    if (2 * cab <= ca) return 0.0;
    double p = static_cast<double>(cab) / static_cast<double>(ca);
    double h = 0.0;
    if (p < 1.0) h = -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
    return std::sqrt(std::max(0.0, 1.0 - h * h));
}

inline double ref_chain_cohesion(const Dataset& ds, const std::vector<int>& nodes) {
    std::vector<int> lhs(nodes.begin(), nodes.end() - 1);
    std::vector<int> rhs(nodes.begin() + 1, nodes.end());
    double product = 1.0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = i + 1; j < lhs.size(); ++j)
            product *= ref_pair_cohesion(ds, lhs[i], lhs[j]);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        for (std::size_t j = i + 1; j < rhs.size(); ++j)
            product *= ref_pair_cohesion(ds, rhs[i], rhs[j]);
    for (int x : lhs)
        for (int y : rhs) {
            if (x == y) continue;
            product *= ref_pair_cohesion(ds, x, y);
        }
    return product;
}

inline double ref_end_to_end(const Dataset& ds, const std::vector<int>& nodes) {
    ItemMask all = 0;
    for (int v : nodes) all |= 1ULL << v;
    long long head = count_rows(ds, 1ULL << nodes[0]);
    return static_cast<double>(count_rows(ds, all)) / static_cast<double>(head);
}

// Exhaustive chain enumeration: every ordering of every subset with length
// >= 3 whose adjacent pairs are strong edges and whose two metrics clear the
// thresholds; optionally reduced to maximal chains (those that are not a
// proper prefix of another passing chain).
inline std::vector<std::vector<int>> brute_chains(const Dataset& ds,
                                                  const std::set<std::pair<int, int>>& edges,
                                                  double min_cohesion, double min_conf,
                                                  bool maximal_only, std::size_t max_len) {
    const int d = ds.catalog().size();
    std::vector<std::vector<int>> passing;
    std::vector<int> path;
    std::function<void()> extend = [&]() {
        if (path.size() >= 3) {
            double coh = ref_chain_cohesion(ds, path);
            double conf = ref_end_to_end(ds, path);
            if (coh >= min_cohesion && conf >= min_conf - 1e-15) passing.push_back(path);
        }
        if (path.size() >= max_len) return;
        for (int next = 0; next < d; ++next) {
            if (std::find(path.begin(), path.end(), next) != path.end()) continue;
            if (!path.empty() && !edges.count({path.back(), next})) continue;
            path.push_back(next);
            extend();
            path.pop_back();
        }
    };
    extend();

    if (!maximal_only) {
        std::sort(passing.begin(), passing.end());
        return passing;
    }
    std::vector<std::vector<int>> maximal;
    for (const auto& p : passing) {
        bool is_prefix = false;
        for (const auto& q : passing) {
            if (q.size() <= p.size()) continue;
            if (std::equal(p.begin(), p.end(), q.begin())) {
                is_prefix = true;
                break;
            }
        }
        if (!is_prefix) maximal.push_back(p);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

// Full pair-sorting C-Index on the raw bit vectors.
inline double ref_c_index(const Dataset& ds, const std::vector<int>& labels) {
    const auto& rows = ds.transactions();
    std::vector<double> all;
    double s = 0;
    long long p = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            double dist = static_cast<double>(std::popcount(rows[i].bits ^ rows[j].bits));
            all.push_back(dist);
            if (labels[i] == labels[j]) {
                s += dist;
                ++p;
            }
        }
    std::sort(all.begin(), all.end());
    double s_min = 0, s_max = 0;
    for (long long i = 0; i < p; ++i) {
        s_min += all[i];
        s_max += all[all.size() - 1 - i];
    }
    if (s_max == s_min) return 0.0;
    return (s - s_min) / (s_max - s_min);
}

struct RefSummary {
    long double mean = 0, median = 0, stddev = 0, cv = 0;
};

inline RefSummary ref_summary(std::vector<long long> xs) {
    RefSummary r;
    long double sum = 0;
    for (long long v : xs) sum += v;
    r.mean = sum / xs.size();
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    r.median = n % 2 ? static_cast<long double>(xs[n / 2])
                     : (xs[n / 2 - 1] + xs[n / 2]) / 2.0L;
    if (n > 1) {
        long double ss = 0;
        for (long long v : xs) ss += (v - r.mean) * (v - r.mean);
        r.stddev = std::sqrt(static_cast<double>(ss / (n - 1)));
    }
    if (r.mean > 0) r.cv = r.stddev / r.mean;
    return r;
}

}  // namespace oracle
