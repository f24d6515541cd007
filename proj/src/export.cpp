#include "acmine/export.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "acmine/csv.hpp"

namespace acmine {

std::string fmt_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

void write_frequent_csv(const FrequentSetTable& fs, const ItemCatalog& cat, std::ostream& out) {
    write_csv_row(out, {"itemset", "count", "support"});
    for (const auto& [mask, count] : fs.sets) {
        write_csv_row(out, {format_itemset(mask, cat), std::to_string(count),
                            fmt_double(Fraction(count, fs.n).value())});
    }
}

void write_rules_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                     std::ostream& out) {
    write_csv_row(out, {"antecedent", "consequent", "support", "confidence", "lift", "z",
                        "significant", "strong", "two_way"});
    for (const auto& r : rules) {
        write_csv_row(out, {format_itemset(r.antecedent, cat),
                            format_itemset(r.consequent, cat),
                            fmt_double(r.support_joint.value()),
                            fmt_double(r.confidence.value()),
                            fmt_double(r.lift),
                            r.testable ? fmt_double(r.z, 4) : "",
                            r.testable ? (r.significant ? "true" : "false") : "untestable",
                            r.strength == Strength::Strong ? "true" : "false",
                            r.two_way ? "true" : "false"});
    }
}

std::vector<std::vector<std::optional<double>>> rule_matrix(
    const std::vector<AssociationRule>& rules, const ItemCatalog& cat) {
    const int d = cat.size();
    std::vector<std::vector<std::optional<double>>> cells(
        d, std::vector<std::optional<double>>(d));
    for (const auto& r : rules) {
        if (std::popcount(r.antecedent) != 1 || std::popcount(r.consequent) != 1) continue;
        int a = std::countr_zero(r.antecedent);
        int b = std::countr_zero(r.consequent);
        // Visible iff confidence >= 1/2 and lift >= 1, both exact.
        bool visible = r.confidence >= Fraction(1, 2) &&
                       static_cast<__int128>(r.count_joint) * r.n >=
                           static_cast<__int128>(r.count_antecedent) * r.count_consequent;
        if (visible) cells[a][b] = r.confidence.value();
    }
    return cells;
}

void write_matrix_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                      std::ostream& out) {
    auto cells = rule_matrix(rules, cat);
    std::vector<std::string> header{"item"};
    for (const auto& it : cat.items()) header.push_back(it.code);
    write_csv_row(out, header);
    for (int a = 0; a < cat.size(); ++a) {
        std::vector<std::string> row{cat.item(a).code};
        for (int b = 0; b < cat.size(); ++b)
            row.push_back(cells[a][b] ? fmt_double(*cells[a][b]) : "");
        write_csv_row(out, row);
    }
}

void write_heatmap_csv(const std::vector<AssociationRule>& rules, const ItemCatalog& cat,
                       std::ostream& out) {
    auto cells = rule_matrix(rules, cat);
    write_csv_row(out, {"antecedent", "consequent", "confidence"});
    for (int a = 0; a < cat.size(); ++a)
        for (int b = 0; b < cat.size(); ++b)
            if (cells[a][b])
                write_csv_row(out, {cat.item(a).code, cat.item(b).code,
                                    fmt_double(*cells[a][b])});
}

namespace {

// Lighter fills are further in the past.
const char* phase_fill(Phase p) {
    switch (p) {
        case Phase::Early: return "#f2f2f2";
        case Phase::Trigger: return "#c8c8c8";
        case Phase::Preparatory: return "#8f8f8f";
        case Phase::Outcome: return "#4d4d4d";
    }
    return "#ffffff";
}

const char* phase_font(Phase p) {
    return p == Phase::Outcome ? "white" : "black";
}

}  // namespace

void write_chain_dot(const RuleChain& chain, std::size_t index, const ItemCatalog& cat,
                     std::ostream& out) {
    out << "digraph chain_" << index << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box style=filled];\n";
    for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
        const ItemDef& item = cat.item(chain.nodes[i]);
        Phase phase = i < chain.phases.size() ? chain.phases[i] : item.phase;
        out << "  \"" << item.code << "\" [label=\"" << item.code << "\" tooltip=\""
            << item.label << "\" phase=\"" << phase_name(phase) << "\" fillcolor=\""
            << phase_fill(phase) << "\" fontcolor=" << phase_font(phase) << "];\n";
    }
    for (std::size_t i = 0; i + 1 < chain.nodes.size(); ++i) {
        bool both_dirs = false;
        for (int b : chain.bidirectional)
            if (b == static_cast<int>(i)) both_dirs = true;
        out << "  \"" << cat.item(chain.nodes[i]).code << "\" -> \""
            << cat.item(chain.nodes[i + 1]).code << "\" [label=\""
            << fmt_double(chain.edge_confidence[i].value(), 3) << "\" confidence=\""
            << fmt_double(chain.edge_confidence[i].value(), 6) << "\"";
        if (both_dirs) out << " dir=both";
        out << "];\n";
    }
    out << "}\n";
}

void write_chains_jsonl(const std::vector<RuleChain>& chains, const ItemCatalog& cat,
                        std::ostream& out) {
    for (const auto& c : chains) {
        nlohmann::json j;
        std::vector<std::string> codes;
        for (int v : c.nodes) codes.push_back(cat.item(v).code);
        j["nodes"] = codes;
        std::vector<std::string> phases;
        for (Phase p : c.phases) phases.push_back(phase_name(p));
        j["phases"] = phases;
        j["cohesion"] = c.cohesion;
        j["confidence"] = c.confidence.value();
        j["confidence_exact"] = c.confidence.str();
        std::vector<double> edge_conf;
        for (const auto& f : c.edge_confidence) edge_conf.push_back(f.value());
        j["edge_confidence"] = edge_conf;
        j["bidirectional_edges"] = c.bidirectional;
        j["pairwise_cohesion"] = c.pairwise;
        j["non_chronological"] = c.non_chronological;
        out << j.dump() << '\n';
    }
}

void write_kselect_csv(const std::vector<KSelectRow>& table, std::ostream& out) {
    write_csv_row(out, {"k", "inertia", "c_index"});
    for (const auto& row : table)
        write_csv_row(out, {std::to_string(row.k), fmt_double(row.inertia),
                            row.valid ? fmt_double(row.c_index) : "undefined"});
}

void write_profile_csv(const ClusterProfile& prof, const ClusterModel& model,
                       const ItemCatalog& cat, std::ostream& out) {
    std::vector<std::string> header{"cluster", "size", "retained"};
    for (const auto& it : cat.items()) header.push_back(it.code);
    write_csv_row(out, header);
    for (int c = 0; c < model.k; ++c) {
        std::vector<std::string> row{std::to_string(c), std::to_string(model.sizes[c]),
                                     model.retained.count(c) ? "true" : "false"};
        for (double v : prof.prevalence[c]) row.push_back(fmt_double(v, 4));
        write_csv_row(out, row);
    }
}

void write_crosstab_ideology_csv(const ClusterProfile& prof, const ClusterModel& model,
                                 std::ostream& out) {
    write_csv_row(out, {"cluster", "jihadist", "rightwing", "singleissue", "other", "unknown"});
    for (int c = 0; c < model.k; ++c) {
        std::vector<std::string> row{std::to_string(c)};
        for (double v : prof.by_ideology[c]) row.push_back(fmt_double(v, 4));
        write_csv_row(out, row);
    }
}

void write_crosstab_scene_csv(const ClusterProfile& prof, const ClusterModel& model,
                              std::ostream& out) {
    write_csv_row(out, {"cluster", "maxdamager", "symbolic", "daredevil", "attentionseeker",
                        "staller", "unknown"});
    for (int c = 0; c < model.k; ++c) {
        std::vector<std::string> row{std::to_string(c)};
        for (double v : prof.by_scene[c]) row.push_back(fmt_double(v, 4));
        write_csv_row(out, row);
    }
}

void write_temporal_csv(const std::vector<TemporalRow>& rows, std::ostream& out) {
    write_csv_row(out, {"cohort", "n", "prominent", "mean", "median", "std", "cv"});
    for (const auto& r : rows) {
        write_csv_row(out, {r.cohort, std::to_string(r.summary.n), r.prominent,
                            fmt_double(r.summary.mean, 2), fmt_double(r.summary.median, 2),
                            fmt_double(r.summary.stddev, 2),
                            r.summary.cv ? fmt_double(*r.summary.cv, 4) : ""});
    }
}

void write_welch_csv(const std::vector<WelchRow>& rows, std::ostream& out) {
    write_csv_row(out, {"comparison", "n_a", "n_b", "t", "df", "p"});
    for (const auto& r : rows) {
        write_csv_row(out, {r.comparison, std::to_string(r.n_a), std::to_string(r.n_b),
                            fmt_double(r.result.t, 4), fmt_double(r.result.df, 4),
                            fmt_double(r.result.p, 6)});
    }
}

void write_skips_csv(const MilestoneSkips& skips, std::ostream& out) {
    write_csv_row(out, {"kind", "precision", "skipped"});
    write_csv_row(out, {"trigger_to_attack", "month", std::to_string(skips.trigger_month)});
    write_csv_row(out, {"trigger_to_attack", "year", std::to_string(skips.trigger_year)});
    write_csv_row(out, {"leakage_to_attack", "month", std::to_string(skips.leakage_month)});
    write_csv_row(out, {"leakage_to_attack", "year", std::to_string(skips.leakage_year)});
}

void write_common_csv(const Dataset& ds, Fraction threshold, std::ostream& out) {
    write_csv_row(out, {"item", "label", "count", "support"});
    const long long n = ds.size();
    for (int i = 0; i < ds.catalog().size(); ++i) {
        long long c = count_containing(ds, 1ULL << i);
        if (!ratio_at_least(c, n, threshold)) continue;
        write_csv_row(out, {ds.catalog().item(i).code, ds.catalog().item(i).label,
                            std::to_string(c), fmt_double(Fraction(c, n).value())});
    }
}

void write_rejections_csv(const std::vector<Rejection>& rejected, std::ostream& out) {
    write_csv_row(out, {"line", "id", "reason"});
    for (const auto& r : rejected)
        write_csv_row(out, {std::to_string(r.line), r.id, r.reason});
}

}  // namespace acmine
