#include "acmine/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "acmine/chains.hpp"
#include "acmine/cluster.hpp"
#include "acmine/errors.hpp"
#include "acmine/expr.hpp"
#include "acmine/export.hpp"
#include "acmine/miner.hpp"
#include "acmine/rules.hpp"
#include "acmine/temporal.hpp"

namespace acmine {

namespace fs = std::filesystem;

namespace {

struct Pipeline {
    std::shared_ptr<const ItemCatalog> catalog;
    Dataset full;
    Dataset cohort;
    std::vector<Rejection> rejected;
};

Pipeline load_pipeline(const RunConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("--input is required");
    auto catalog =
        cfg.catalog_path.empty() ? ItemCatalog::builtin() : ItemCatalog::load_file(cfg.catalog_path);

    std::ifstream in(cfg.input);
    if (!in) throw DataError("cannot open input file: " + cfg.input);
    IngestResult ing = ingest(in, catalog, cfg.quarantine ? IngestMode::Quarantine : IngestMode::Strict,
                              cfg.input);

    Dataset full = std::move(ing.dataset);
    if (!cfg.clusters_path.empty()) {
        std::ifstream cf(cfg.clusters_path);
        if (!cf) throw DataError("cannot open assignments file: " + cfg.clusters_path);
        full = attach_cluster_labels(full, read_assignments_csv(cf));
    }
    if (full.size() == 0) throw EmptyResultError("no valid rows ingested from " + cfg.input);

    Dataset cohort = filter_cohort(full, cfg.cohort);
    return Pipeline{catalog, std::move(full), std::move(cohort), std::move(ing.rejected)};
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path.string());
    body(out);
}

fs::path prepare_out(const RunConfig& cfg) {
    if (cfg.out_dir.empty()) throw ConfigError("--out is required");
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_run_metadata(const RunConfig& cfg, const std::string& command, const Pipeline& p,
                        const fs::path& dir) {
    write_file(dir / "manifest.json", [&](std::ostream& out) {
        out << manifest_json(cfg, command, p.full.size(), p.cohort.size(),
                             static_cast<long long>(p.rejected.size()));
    });
    write_file(dir / "run.config", [&](std::ostream& out) { write_run_config(cfg, out); });
    if (!p.rejected.empty())
        write_file(dir / "rejects.csv",
                   [&](std::ostream& out) { write_rejections_csv(p.rejected, out); });
}

FrequentSetTable mine_step(const RunConfig& cfg, const Dataset& cohort) {
    MineOptions mo;
    mo.max_items = cfg.max_items;
    mo.workers = cfg.workers;
    return mine_frequent(cohort, cfg.min_support_f(), mo);
}

std::vector<AssociationRule> rules_step(const RunConfig& cfg, const Dataset& cohort,
                                        const FrequentSetTable& fsets,
                                        SignificanceOutcome* sig_out = nullptr) {
    auto rules = generate_rules(fsets, cohort, cfg.rule_thresholds());
    SignificanceOutcome sig = apply_significance(rules, cfg.significance());
    if (sig_out) *sig_out = sig;
    return rules;
}

CohesionConfig cohesion_config(const RunConfig& cfg) {
    CohesionConfig cc;
    cc.min_cohesion = cfg.min_cohesion;
    cc.min_chain_confidence = cfg.min_chain_confidence_f();
    cc.max_chain_length = cfg.max_chain_length;
    cc.maximal_only = !cfg.all_chains;
    cc.edge_confidence = cfg.min_confidence_f();
    cc.convention = cfg.convention_e();
    cc.workers = cfg.workers;
    return cc;
}

std::vector<RuleChain> chains_step(const RunConfig& cfg, const Dataset& cohort,
                                   const std::vector<AssociationRule>& rules) {
    std::optional<int> seed_item;
    if (!cfg.seed_item.empty()) seed_item = cohort.catalog().index_of(cfg.seed_item);
    auto chains = search_chains(rules, cohort, cohesion_config(cfg), seed_item);
    for (auto& c : chains) c = annotate_phases(std::move(c), cohort.catalog());
    return chains;
}

void write_chain_files(const std::vector<RuleChain>& chains, const ItemCatalog& cat,
                       const fs::path& dir) {
    write_file(dir / "chains.jsonl",
               [&](std::ostream& out) { write_chains_jsonl(chains, cat, out); });
    fs::path graph_dir = dir / "chains";
    fs::create_directories(graph_dir);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "chain_%03zu.dot", i + 1);
        write_file(graph_dir / name,
                   [&](std::ostream& out) { write_chain_dot(chains[i], i + 1, cat, out); });
    }
}

long long default_min_cluster_size(const RunConfig& cfg, long long n) {
    if (cfg.min_cluster_size > 0) return cfg.min_cluster_size;
    return std::max<long long>(1, n / 10);
}

struct ClusterStep {
    SelectKResult selection;
    ClusterModel model;  // after filter_small
    ClusterProfile profile;
};

ClusterStep cluster_step(const RunConfig& cfg, const Dataset& cohort) {
    long long n = cohort.size();
    int k_max = std::min<long long>(cfg.k_max, n - 1);
    if (cfg.k_min > k_max)
        throw ConfigError("cohort of " + std::to_string(n) +
                          " rows cannot support the requested k range");
    KMeansOptions ko;
    ko.max_iter = cfg.max_iter;
    ko.workers = cfg.workers;
    ClusterStep step{select_k(cohort, cfg.k_min, k_max, cfg.seeds_per_k, cfg.seed, ko),
                     ClusterModel{},
                     ClusterProfile{}};
    step.model = filter_small(step.selection.best, default_min_cluster_size(cfg, n));
    step.profile = build_profile(cohort, step.model);
    return step;
}

void write_cluster_files(const ClusterStep& step, const Dataset& cohort, const fs::path& dir) {
    write_file(dir / "kselect.csv",
               [&](std::ostream& out) { write_kselect_csv(step.selection.table, out); });
    write_file(dir / "assignments.csv",
               [&](std::ostream& out) { write_assignments_csv(step.model, out); });
    write_file(dir / "cluster_profiles.csv", [&](std::ostream& out) {
        write_profile_csv(step.profile, step.model, cohort.catalog(), out);
    });
    write_file(dir / "crosstab_ideology.csv", [&](std::ostream& out) {
        write_crosstab_ideology_csv(step.profile, step.model, out);
    });
    write_file(dir / "crosstab_scene.csv", [&](std::ostream& out) {
        write_crosstab_scene_csv(step.profile, step.model, out);
    });
}

std::vector<TemporalRow> temporal_rows(const RunConfig& cfg, const Dataset& cohort,
                                       const MilestoneRecords& records, DurationKind kind) {
    std::vector<TemporalRow> rows;
    auto add_row = [&](const std::string& name, const std::vector<std::string>& ids,
                       const std::string& prominent) {
        std::vector<long long> days;
        for (const auto& r : records.records) {
            if (r.kind != kind) continue;
            if (std::find(ids.begin(), ids.end(), r.id) == ids.end()) continue;
            days.push_back(r.days);
        }
        if (days.empty()) return;
        rows.push_back({name, prominent, summarize(days)});
    };

    std::vector<std::string> all_ids;
    for (const auto& t : cohort.transactions()) all_ids.push_back(t.id);
    add_row("overall", all_ids, cfg.prominent);

    auto subgroup = [&](const std::string& name, auto pred) {
        std::vector<std::string> ids;
        for (const auto& t : cohort.transactions())
            if (pred(t)) ids.push_back(t.id);
        if (!ids.empty()) add_row(name, ids, "");
    };
    for (Ideology i : {Ideology::Jihadist, Ideology::RightWing, Ideology::SingleIssue,
                       Ideology::Other, Ideology::Unknown})
        subgroup(std::string("ideology=") + ideology_name(i),
                 [i](const Transaction& t) { return t.ideology == i; });
    for (SceneType s : {SceneType::MaxDamager, SceneType::Symbolic, SceneType::Daredevil,
                        SceneType::AttentionSeeker, SceneType::Staller})
        subgroup(std::string("scene=") + scene_name(s),
                 [s](const Transaction& t) { return t.scene == s; });

    std::set<int> labels;
    for (const auto& t : cohort.transactions())
        if (t.cluster) labels.insert(*t.cluster);
    for (int l : labels)
        subgroup("cluster=" + std::to_string(l),
                 [l](const Transaction& t) { return t.cluster && *t.cluster == l; });
    return rows;
}

std::vector<WelchRow> welch_rows(const RunConfig& cfg, const Dataset& cohort,
                                 const MilestoneRecords& records) {
    std::vector<WelchRow> rows;
    auto fatal_idx = cohort.catalog().find(cfg.fatal_item);
    if (!fatal_idx) return rows;

    std::set<std::string> fatal_ids;
    for (const auto& t : cohort.transactions())
        if ((t.bits >> *fatal_idx) & 1ULL) fatal_ids.insert(t.id);

    for (DurationKind kind : {DurationKind::TriggerToAttack, DurationKind::LeakageToAttack}) {
        std::vector<long long> fatal, nonfatal;
        for (const auto& r : records.records) {
            if (r.kind != kind) continue;
            (fatal_ids.count(r.id) ? fatal : nonfatal).push_back(r.days);
        }
        if (fatal.size() < 2 || nonfatal.size() < 2) continue;
        TwoSampleResult res = cfg.pooled ? pooled_t(fatal, nonfatal) : welch_t(fatal, nonfatal);
        rows.push_back({std::string(duration_kind_name(kind)) + ":fatal_vs_nonfatal",
                        static_cast<long long>(fatal.size()),
                        static_cast<long long>(nonfatal.size()), res});
    }
    return rows;
}

void write_temporal_files(const RunConfig& cfg, const Dataset& cohort, const fs::path& dir) {
    MilestoneRecords records = milestone_extract(cohort);
    write_file(dir / "temporal_trigger.csv", [&](std::ostream& out) {
        write_temporal_csv(temporal_rows(cfg, cohort, records, DurationKind::TriggerToAttack),
                           out);
    });
    write_file(dir / "temporal_leakage.csv", [&](std::ostream& out) {
        write_temporal_csv(temporal_rows(cfg, cohort, records, DurationKind::LeakageToAttack),
                           out);
    });
    write_file(dir / "temporal_welch.csv", [&](std::ostream& out) {
        write_welch_csv(welch_rows(cfg, cohort, records), out);
    });
    write_file(dir / "temporal_skipped.csv",
               [&](std::ostream& out) { write_skips_csv(records.skipped, out); });
}

std::string chain_to_text(const RuleChain& c, const ItemCatalog& cat) {
    std::string out;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (i) {
            bool both = std::find(c.bidirectional.begin(), c.bidirectional.end(),
                                  static_cast<int>(i - 1)) != c.bidirectional.end();
            out += both ? " <-> " : " -> ";
        }
        out += cat.item(c.nodes[i]).code;
    }
    return out;
}

}  // namespace

void cmd_mine(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    FrequentSetTable fsets = mine_step(cfg, p.cohort);
    write_file(dir / "frequent.csv",
               [&](std::ostream& out) { write_frequent_csv(fsets, p.cohort.catalog(), out); });
    write_file(dir / "common.csv", [&](std::ostream& out) {
        write_common_csv(p.cohort, cfg.common_threshold_f(), out);
    });
    write_run_metadata(cfg, "mine", p, dir);
}

void cmd_rules(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    FrequentSetTable fsets = mine_step(cfg, p.cohort);
    auto rules = rules_step(cfg, p.cohort, fsets);
    write_file(dir / "rules.csv",
               [&](std::ostream& out) { write_rules_csv(rules, p.cohort.catalog(), out); });
    write_file(dir / "matrix.csv",
               [&](std::ostream& out) { write_matrix_csv(rules, p.cohort.catalog(), out); });
    write_file(dir / "heatmap.csv",
               [&](std::ostream& out) { write_heatmap_csv(rules, p.cohort.catalog(), out); });
    write_run_metadata(cfg, "rules", p, dir);
}

void cmd_chains(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    FrequentSetTable fsets = mine_step(cfg, p.cohort);
    auto rules = rules_step(cfg, p.cohort, fsets);
    auto chains = chains_step(cfg, p.cohort, rules);
    write_chain_files(chains, p.cohort.catalog(), dir);
    write_run_metadata(cfg, "chains", p, dir);
}

void cmd_cluster(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    ClusterStep step = cluster_step(cfg, p.cohort);
    write_cluster_files(step, p.cohort, dir);
    write_run_metadata(cfg, "cluster", p, dir);
}

void cmd_temporal(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    write_temporal_files(cfg, p.cohort, dir);
    write_run_metadata(cfg, "temporal", p, dir);
}

void cmd_report(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    fs::path dir = prepare_out(cfg);
    const ItemCatalog& cat = p.cohort.catalog();

    FrequentSetTable fsets = mine_step(cfg, p.cohort);
    write_file(dir / "frequent.csv",
               [&](std::ostream& out) { write_frequent_csv(fsets, cat, out); });
    write_file(dir / "common.csv", [&](std::ostream& out) {
        write_common_csv(p.cohort, cfg.common_threshold_f(), out);
    });

    SignificanceOutcome sig;
    auto rules = rules_step(cfg, p.cohort, fsets, &sig);
    write_file(dir / "rules.csv", [&](std::ostream& out) { write_rules_csv(rules, cat, out); });
    write_file(dir / "matrix.csv",
               [&](std::ostream& out) { write_matrix_csv(rules, cat, out); });
    write_file(dir / "heatmap.csv",
               [&](std::ostream& out) { write_heatmap_csv(rules, cat, out); });

    auto chains = chains_step(cfg, p.cohort, rules);
    write_chain_files(chains, cat, dir);

    // Clustering runs when the cohort can support the k range; small cohorts
    // skip it rather than failing the whole report.
    std::optional<ClusterStep> cluster;
    std::string cluster_note;
    Dataset labeled = p.cohort;
    if (p.cohort.size() - 1 >= cfg.k_min) {
        ClusterStep step = cluster_step(cfg, p.cohort);
        write_cluster_files(step, p.cohort, dir);
        labeled = p.cohort.with_clusters(step.model.labels);

        fs::path rules_dir = dir / "cluster_rules";
        fs::create_directories(rules_dir);
        for (const auto& [label, subset] : retained_subsets(p.cohort, step.model)) {
            FrequentSetTable cfs = mine_step(cfg, subset);
            auto crules = rules_step(cfg, subset, cfs);
            char name[48];
            std::snprintf(name, sizeof name, "cluster_%d_rules.csv", label);
            write_file(rules_dir / name,
                       [&](std::ostream& out) { write_rules_csv(crules, cat, out); });
        }
        cluster = std::move(step);
    } else {
        cluster_note = "cohort too small for the configured k range; clustering skipped";
    }

    write_temporal_files(cfg, labeled, dir);

    write_file(dir / "report.md", [&](std::ostream& out) {
        out << "# Association analysis report\n\n";
        out << "## Run\n\n";
        out << "- input: " << cfg.input << "\n";
        out << "- catalog: " << (cfg.catalog_path.empty() ? "builtin" : cfg.catalog_path)
            << "\n";
        out << "- cohort: `" << cfg.cohort << "` (" << p.cohort.size() << " of "
            << p.full.size() << " rows)\n";
        out << "- rejected rows: " << p.rejected.size() << "\n\n";

        out << "## Cohort summary\n\n";
        long long pre = 0, post = 0;
        std::map<std::string, long long> by_ideology, by_scene;
        for (const auto& t : p.cohort.transactions()) {
            (t.era == Era::Pre911 ? pre : post)++;
            by_ideology[ideology_name(t.ideology)]++;
            by_scene[scene_name(t.scene)]++;
        }
        out << "- era: pre911 " << pre << ", post911 " << post << "\n";
        out << "- ideology:";
        for (const auto& [k, v] : by_ideology) out << ' ' << k << ' ' << v << ';';
        out << "\n- scene:";
        for (const auto& [k, v] : by_scene) out << ' ' << k << ' ' << v << ';';
        out << "\n\n";

        out << "## Common characteristics (support >= " << cfg.common_threshold << ")\n\n";
        const long long n = p.cohort.size();
        for (int i = 0; i < cat.size(); ++i) {
            long long c = count_containing(p.cohort, 1ULL << i);
            if (!ratio_at_least(c, n, cfg.common_threshold_f())) continue;
            out << "- " << cat.item(i).code << " (" << cat.item(i).label << "): "
                << fmt_double(100.0 * static_cast<double>(c) / static_cast<double>(n), 1)
                << "%\n";
        }
        out << "\n";

        out << "## Strong rules\n\n";
        long long n_strong = 0, n_two = 0;
        for (const auto& r : rules) {
            if (r.strength == Strength::Strong) ++n_strong;
            if (r.two_way) ++n_two;
        }
        out << "- strong: " << n_strong << " (two-way pairs counted twice: " << n_two
            << ")\n";
        for (const auto& r : rules) {
            if (r.strength != Strength::Strong) continue;
            int a = mask_items(r.antecedent)[0];
            int b = mask_items(r.consequent)[0];
            if (r.two_way && a > b) continue;  // print each two-way pair once
            out << "- " << format_itemset(r.antecedent, cat) << (r.two_way ? " <-> " : " -> ")
                << format_itemset(r.consequent, cat) << " (confidence "
                << fmt_double(r.confidence.value(), 3) << ", lift " << fmt_double(r.lift, 3)
                << (r.testable ? (r.significant ? ", significant" : ", not significant")
                               : ", untestable")
                << ")\n";
        }
        out << "\n- significance: family size m=" << sig.m
            << ", effective K=" << fmt_double(sig.k_effective, 4) << "\n\n";

        out << "## Chains\n\n";
        if (chains.empty()) {
            out << "No chains satisfied the cohesion and confidence thresholds.\n\n";
        } else {
            for (const auto& c : chains) {
                out << "- " << chain_to_text(c, cat) << " (cohesion "
                    << fmt_double(c.cohesion, 4) << ", confidence "
                    << fmt_double(c.confidence.value(), 4)
                    << (c.non_chronological ? ", non-chronological" : "") << ")\n";
            }
            out << "\n";
        }

        out << "## Clusters\n\n";
        if (cluster) {
            out << "- selected k=" << cluster->model.k << " (C-Index "
                << (cluster->model.c_index_valid ? fmt_double(cluster->model.c_index, 6)
                                                 : std::string("undefined"))
                << ")\n";
            out << "- sizes:";
            for (int c = 0; c < cluster->model.k; ++c)
                out << ' ' << cluster->model.sizes[c]
                    << (cluster->model.retained.count(c) ? "" : "(dropped)");
            long long outliers = 0;
            for (std::size_t i = 0; i < cluster->model.labels.size(); ++i)
                if (!cluster->model.retained.count(cluster->model.labels[i])) ++outliers;
            out << "\n- outlier cohort: " << outliers << " rows in dropped clusters\n";
            if (!cluster->model.warning.empty())
                out << "- warning: " << cluster->model.warning << "\n";
        } else {
            out << cluster_note << "\n";
        }
        out << "\n## Temporal\n\n";
        out << "See temporal_trigger.csv, temporal_leakage.csv, temporal_welch.csv, "
               "temporal_skipped.csv.\n";
    });

    write_run_metadata(cfg, "report", p, dir);
}

}  // namespace acmine
