#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "acmine/dataset.hpp"

namespace acmine {

struct KMeansOptions {
    int max_iter = 100;
    int workers = 1;
};

struct ClusterModel {
    int k = 0;
    std::vector<int> labels;  // aligned with the dataset's row order
    std::vector<std::string> ids;
    std::vector<std::vector<double>> centroids;
    std::vector<long long> sizes;
    double inertia = 0.0;
    double c_index = 0.0;
    bool c_index_valid = false;
    std::set<int> retained;  // all nonempty clusters until filter_small narrows it
    std::string warning;
};

// Lloyd iterations on the 0/1 item vectors under squared Euclidean distance.
// Farthest-point initialization from a seeded first pick; empty clusters are
// reseeded from the point farthest from its centroid. Deterministic given the
// seed at any worker count.
ClusterModel kmeans(const Dataset& ds, int k, std::uint64_t seed,
                    const KMeansOptions& opts = {});

// C = (S - S_min) / (S_max - S_min) with S the total within-cluster pairwise
// distance and S_min/S_max the sums of the same number of globally smallest /
// largest pairwise distances. Smaller is better; 0 when all distances are
// equal.
double c_index(const Dataset& ds, const std::vector<int>& labels);

struct KSelectRow {
    int k = 0;
    double inertia = 0.0;
    double c_index = 0.0;
    bool valid = false;
};

struct SelectKResult {
    ClusterModel best;
    std::vector<KSelectRow> table;
};

// Per k: best-of-seeds by inertia, then C-Index; returns the model minimizing
// C-Index, ties toward smaller k. Degenerate data (no two distinct points)
// falls back to the smallest k with a warning.
SelectKResult select_k(const Dataset& ds, int k_min, int k_max, int seeds_per_k,
                       std::uint64_t seed, const KMeansOptions& opts = {});

// Marks clusters below min_size as not retained; their members are the
// outlier cohort and are excluded from per-cluster mining.
ClusterModel filter_small(ClusterModel model, long long min_size);

// Cohort per retained cluster, in label order. Throws EmptyResultError when
// nothing is retained.
std::vector<std::pair<int, Dataset>> retained_subsets(const Dataset& ds,
                                                      const ClusterModel& model);

struct ClusterProfile {
    // prevalence[label][item]: fraction of the cluster with the item set.
    std::vector<std::vector<double>> prevalence;
    // Row-normalized cross-tabs, one row per cluster.
    std::vector<std::vector<double>> by_ideology;  // 5 columns
    std::vector<std::vector<double>> by_scene;     // 6 columns
};

ClusterProfile build_profile(const Dataset& ds, const ClusterModel& model);

// Assignment CSV: id,cluster,retained.
void write_assignments_csv(const ClusterModel& model, std::ostream& out);
std::unordered_map<std::string, int> read_assignments_csv(std::istream& in);

// Attaches labels by id; rows absent from the map keep no label and simply
// never match a cluster=N cohort.
Dataset attach_cluster_labels(const Dataset& ds,
                              const std::unordered_map<std::string, int>& by_id);

}  // namespace acmine
