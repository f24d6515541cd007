#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acmine/chains.hpp"
#include "acmine/cluster.hpp"
#include "acmine/miner.hpp"
#include "acmine/rules.hpp"
#include "acmine/temporal.hpp"

namespace acmine {

std::string fmt_double(double v, int decimals = 6);

void write_frequent_csv(const FrequentSetTable& fs, const ItemCatalog& cat, std::ostream& out);

// antecedent,consequent,support,confidence,lift,z,significant,strong,two_way.
void write_rules_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                     std::ostream& out);

// A matrix cell (antecedent row, consequent column) is blank unless the rule's
// confidence is at least 0.5, its lift is at least 1, and both items are
// frequent; otherwise it carries the confidence as the shade value.
std::vector<std::vector<std::optional<double>>> rule_matrix(
    const std::vector<AssociationRule>& rules, const ItemCatalog& cat);

void write_matrix_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                      std::ostream& out);
// Long form of the visible cells, for plotting: antecedent,consequent,confidence.
void write_heatmap_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                       std::ostream& out);

// One DOT digraph per chain; node fill encodes the phase on a light-to-dark
// scale, two-way edges render with dir=both.
void write_chain_dot(const RuleChain& chain, std::size_t index, const ItemCatalog& cat,
                     std::ostream& out);
// JSON-lines export with the full numeric fields, one chain per line.
void write_chains_jsonl(const std::vector<RuleChain>& chains, const ItemCatalog& cat,
                        std::ostream& out);

void write_kselect_csv(const std::vector<KSelectRow>& table, std::ostream& out);
void write_profile_csv(const ClusterProfile& prof, const ClusterModel& model,
                       const ItemCatalog& cat, std::ostream& out);
void write_crosstab_ideology_csv(const ClusterProfile& prof, const ClusterModel& model,
                                 std::ostream& out);
void write_crosstab_scene_csv(const ClusterProfile& prof, const ClusterModel& model,
                              std::ostream& out);

struct TemporalRow {
    std::string cohort;
    std::string prominent;  // manual annotation, may be empty
    DurationSummary summary;
};

// cohort,n,prominent,mean,median,std,cv
void write_temporal_csv(const std::vector<TemporalRow>& rows, std::ostream& out);

struct WelchRow {
    std::string comparison;
    long long n_a = 0, n_b = 0;
    TwoSampleResult result;
};

void write_welch_csv(const std::vector<WelchRow>& rows, std::ostream& out);
void write_skips_csv(const MilestoneSkips& skips, std::ostream& out);

// item,label,count,support for items at or above the descriptive threshold.
void write_common_csv(const Dataset& ds, Fraction threshold, std::ostream& out);

void write_rejections_csv(const std::vector<Rejection>& rejected, std::ostream& out);

}  // namespace acmine
