#include "acmine/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "acmine/csv.hpp"
#include "acmine/errors.hpp"
#include "acmine/parallel.hpp"
#include "acmine/rng.hpp"

namespace acmine {

namespace {

std::vector<std::vector<double>> points_of(const Dataset& ds) {
    const int d = ds.catalog().size();
    std::vector<std::vector<double>> pts;
    pts.reserve(ds.transactions().size());
    for (const auto& t : ds.transactions()) {
        std::vector<double> p(d, 0.0);
        for (int i = 0; i < d; ++i) p[i] = (t.bits >> i) & 1ULL ? 1.0 : 0.0;
        pts.push_back(std::move(p));
    }
    return pts;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

}  // namespace

ClusterModel kmeans(const Dataset& ds, int k, std::uint64_t seed, const KMeansOptions& opts) {
    const long long n = ds.size();
    if (k < 1) throw ConfigError("k must be at least 1");
    if (k > n) throw ConfigError("k exceeds the number of transactions");
    if (opts.max_iter < 1) throw ConfigError("max_iter must be at least 1");

    const auto pts = points_of(ds);
    const std::size_t nn = pts.size();

    // Farthest-point init: seeded first center, then repeatedly the point
    // farthest from its nearest chosen center (ties to the lowest index).
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    SplitMix64 rng(seed);
    std::size_t first = static_cast<std::size_t>(rng.bounded(nn));
    centroids.push_back(pts[first]);
    std::vector<double> min_dist(nn);
    for (std::size_t i = 0; i < nn; ++i) min_dist[i] = sq_dist(pts[i], centroids[0]);
    while (static_cast<int>(centroids.size()) < k) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < nn; ++i)
            if (min_dist[i] > min_dist[far]) far = i;
        centroids.push_back(pts[far]);
        for (std::size_t i = 0; i < nn; ++i)
            min_dist[i] = std::min(min_dist[i], sq_dist(pts[i], centroids.back()));
    }

    std::vector<int> labels(nn, 0);
    std::vector<double> dist_to_own(nn, 0.0);

    auto assign = [&]() {
        parallel_chunks(nn, opts.workers, [&](int, std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                int best = 0;
                double best_d = sq_dist(pts[i], centroids[0]);
                for (int c = 1; c < k; ++c) {
                    double dd = sq_dist(pts[i], centroids[c]);
                    if (dd < best_d) {
                        best_d = dd;
                        best = c;
                    }
                }
                labels[i] = best;
                dist_to_own[i] = best_d;
            }
        });
    };

    assign();
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        // Sequential centroid update keeps double summation order fixed.
        std::vector<std::vector<double>> sums(k, std::vector<double>(pts[0].size(), 0.0));
        std::vector<long long> counts(k, 0);
        for (std::size_t i = 0; i < nn; ++i) {
            counts[labels[i]]++;
            for (std::size_t j = 0; j < pts[i].size(); ++j) sums[labels[i]][j] += pts[i][j];
        }
        std::vector<bool> used(nn, false);
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t j = 0; j < sums[c].size(); ++j)
                    centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
            } else {
                // Reseed an empty cluster at the farthest unclaimed point.
                std::size_t far = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < nn; ++i)
                    if (!used[i] && dist_to_own[i] > best) {
                        best = dist_to_own[i];
                        far = i;
                    }
                used[far] = true;
                centroids[c] = pts[far];
            }
        }

        std::vector<int> prev = labels;
        assign();
        if (labels == prev) break;
    }

    ClusterModel model;
    model.k = k;
    model.labels = labels;
    model.centroids = centroids;
    model.sizes.assign(k, 0);
    for (std::size_t i = 0; i < nn; ++i) model.sizes[labels[i]]++;
    model.inertia = 0.0;
    for (std::size_t i = 0; i < nn; ++i) model.inertia += dist_to_own[i];
    model.ids.reserve(nn);
    for (const auto& t : ds.transactions()) model.ids.push_back(t.id);
    for (int c = 0; c < k; ++c)
        if (model.sizes[c] > 0) model.retained.insert(c);

    if (k >= 2) {
        try {
            model.c_index = c_index(ds, labels);
            model.c_index_valid = true;
        } catch (const Error&) {
            model.c_index_valid = false;
        }
    }
    return model;
}

double c_index(const Dataset& ds, const std::vector<int>& labels) {
    const auto& rows = ds.transactions();
    const std::size_t n = rows.size();
    if (labels.size() != n) throw ConfigError("label count does not match dataset size");

    std::set<int> distinct_labels(labels.begin(), labels.end());
    if (distinct_labels.size() < 2)
        throw ConfigError("C-Index needs at least 2 clusters");

    bool two_distinct = false;
    for (std::size_t i = 1; i < n && !two_distinct; ++i)
        two_distinct = rows[i].bits != rows[0].bits;
    if (!two_distinct) throw DataError("C-Index undefined: fewer than 2 distinct points");

    // Squared Euclidean on 0/1 vectors is the Hamming distance, so everything
    // here is exact integer arithmetic until the final division.
    std::vector<long long> all;
    all.reserve(n * (n - 1) / 2);
    long long s = 0, p = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long dist = std::popcount(rows[i].bits ^ rows[j].bits);
            all.push_back(dist);
            if (labels[i] == labels[j]) {
                s += dist;
                ++p;
            }
        }
    std::sort(all.begin(), all.end());
    long long s_min = 0, s_max = 0;
    for (long long i = 0; i < p; ++i) {
        s_min += all[i];
        s_max += all[all.size() - 1 - i];
    }
    if (s_min == s_max) return 0.0;
    return static_cast<double>(s - s_min) / static_cast<double>(s_max - s_min);
}

SelectKResult select_k(const Dataset& ds, int k_min, int k_max, int seeds_per_k,
                       std::uint64_t seed, const KMeansOptions& opts) {
    const long long n = ds.size();
    if (k_min > k_max) throw ConfigError("empty k range");
    if (k_min < 2) throw ConfigError("k range must start at 2 or above");
    if (k_max > n - 1) throw ConfigError("k range must stay below the number of points");
    if (seeds_per_k < 1) throw ConfigError("seeds_per_k must be at least 1");

    SelectKResult result;
    std::vector<ClusterModel> best_per_k;
    for (int k = k_min; k <= k_max; ++k) {
        ClusterModel best;
        bool have = false;
        for (int r = 0; r < seeds_per_k; ++r) {
            ClusterModel m = kmeans(ds, k, mix_seed(seed, static_cast<std::uint64_t>(k),
                                                    static_cast<std::uint64_t>(r)),
                                    opts);
            if (!have || m.inertia < best.inertia) {
                best = std::move(m);
                have = true;
            }
        }
        result.table.push_back({k, best.inertia, best.c_index, best.c_index_valid});
        best_per_k.push_back(std::move(best));
    }

    int chosen = -1;
    for (std::size_t i = 0; i < best_per_k.size(); ++i) {
        if (!best_per_k[i].c_index_valid) continue;
        if (chosen < 0 || best_per_k[i].c_index < best_per_k[chosen].c_index)
            chosen = static_cast<int>(i);
    }
    if (chosen < 0) {
        result.best = std::move(best_per_k.front());
        result.best.warning =
            "C-Index undefined for every k (no two distinct points); returning the smallest k";
        return result;
    }
    result.best = std::move(best_per_k[chosen]);
    return result;
}

ClusterModel filter_small(ClusterModel model, long long min_size) {
    if (min_size < 1) throw ConfigError("min_size must be at least 1");
    model.retained.clear();
    for (int c = 0; c < model.k; ++c)
        if (model.sizes[c] >= min_size) model.retained.insert(c);
    return model;
}

std::vector<std::pair<int, Dataset>> retained_subsets(const Dataset& ds,
                                                      const ClusterModel& model) {
    if (model.labels.size() != ds.transactions().size())
        throw ConfigError("cluster model does not match the dataset");
    if (model.retained.empty()) throw EmptyResultError("no retained clusters");
    std::vector<std::pair<int, Dataset>> out;
    for (int label : model.retained) {
        std::vector<Transaction> rows;
        for (std::size_t i = 0; i < model.labels.size(); ++i)
            if (model.labels[i] == label) rows.push_back(ds.transactions()[i]);
        out.emplace_back(label, Dataset(ds.catalog_ptr(), std::move(rows), ds.provenance()));
    }
    return out;
}

ClusterProfile build_profile(const Dataset& ds, const ClusterModel& model) {
    const int d = ds.catalog().size();
    ClusterProfile prof;
    prof.prevalence.assign(model.k, std::vector<double>(d, 0.0));
    prof.by_ideology.assign(model.k, std::vector<double>(5, 0.0));
    prof.by_scene.assign(model.k, std::vector<double>(6, 0.0));

    for (std::size_t i = 0; i < model.labels.size(); ++i) {
        const Transaction& t = ds.transactions()[i];
        int c = model.labels[i];
        for (int j = 0; j < d; ++j)
            if ((t.bits >> j) & 1ULL) prof.prevalence[c][j] += 1.0;
        prof.by_ideology[c][static_cast<int>(t.ideology)] += 1.0;
        prof.by_scene[c][static_cast<int>(t.scene)] += 1.0;
    }
    for (int c = 0; c < model.k; ++c) {
        double size = static_cast<double>(model.sizes[c]);
        if (size == 0) continue;
        for (auto& v : prof.prevalence[c]) v /= size;
        for (auto& v : prof.by_ideology[c]) v /= size;
        for (auto& v : prof.by_scene[c]) v /= size;
    }
    return prof;
}

void write_assignments_csv(const ClusterModel& model, std::ostream& out) {
    write_csv_row(out, {"id", "cluster", "retained"});
    for (std::size_t i = 0; i < model.ids.size(); ++i) {
        write_csv_row(out, {model.ids[i], std::to_string(model.labels[i]),
                            model.retained.count(model.labels[i]) ? "true" : "false"});
    }
}

std::unordered_map<std::string, int> read_assignments_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields) || fields.size() < 2 || fields[0] != "id" ||
        fields[1] != "cluster")
        throw DataError("assignments file must start with header id,cluster[,retained]");
    std::unordered_map<std::string, int> by_id;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() < 2) throw DataError("malformed assignments row");
        try {
            std::size_t used = 0;
            by_id[fields[0]] = std::stoi(fields[1], &used);
            if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
        } catch (const std::exception&) {
            throw DataError("bad cluster label for id '" + fields[0] + "'");
        }
    }
    return by_id;
}

Dataset attach_cluster_labels(const Dataset& ds,
                              const std::unordered_map<std::string, int>& by_id) {
    std::vector<Transaction> rows = ds.transactions();
    for (auto& t : rows) {
        auto it = by_id.find(t.id);
        if (it != by_id.end()) t.cluster = it->second;
    }
    return Dataset(ds.catalog_ptr(), std::move(rows), ds.provenance());
}

}  // namespace acmine
