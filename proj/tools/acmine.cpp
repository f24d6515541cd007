#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "acmine/config.hpp"
#include "acmine/errors.hpp"
#include "acmine/report.hpp"

namespace {

using acmine::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--input", cfg.input, "transaction CSV file");
    cmd->add_option("--catalog", cfg.catalog_path, "item catalog document (default: builtin)");
    cmd->add_option("--cohort", cfg.cohort, "cohort expression, e.g. \"era=post911 AND ideology=jihadist\"");
    cmd->add_option("--config", config_path, "flat key=value config file; flags win");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--workers", cfg.workers, "worker threads (results are identical at any count)");
    cmd->add_option("--clusters", cfg.clusters_path, "assignments CSV to attach cluster labels");
    cmd->add_flag("--quarantine", cfg.quarantine, "exclude and list invalid rows instead of aborting");
}

void add_mine_options(CLI::App* cmd, RunConfig& cfg, bool& min_support_given) {
    cmd->add_option("--min-support", cfg.min_support, "frequent itemset threshold (default 0.2)")
        ->each([&min_support_given](const std::string&) { min_support_given = true; });
    cmd->add_option("--preset", cfg.preset, "strong20 (support 0.2) or common50 (support 0.5)");
    cmd->add_option("--max-items", cfg.max_items, "itemset cardinality cap (0 = catalog size)");
    cmd->add_option("--common-threshold", cfg.common_threshold,
                    "descriptive listing threshold (default 0.6)");
}

void add_rule_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--min-confidence", cfg.min_confidence, "rule confidence threshold (default 0.7)");
    cmd->add_option("--min-lift", cfg.min_lift, "strict lift lower bound (default 1.0)");
    cmd->add_option("--convention", cfg.convention,
                    "confidence normalization: consequent (default) or antecedent");
    cmd->add_flag("--itemset-rules", cfg.itemset_rules, "also emit rules with multi-item sides");
    cmd->add_option("--significance-k", cfg.significance_k, "z threshold K (default 2)");
    cmd->add_flag("--no-bonferroni", [&cfg](std::int64_t) { cfg.bonferroni = false; },
                  "disable the sqrt(m)K adjustment");
    cmd->add_option("--family-size", cfg.family_size,
                    "override m for the Bonferroni adjustment (0 = candidate count)");
}

void add_chain_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--min-cohesion", cfg.min_cohesion, "chain cohesion threshold (default 0.7)");
    cmd->add_option("--min-chain-confidence", cfg.min_chain_confidence,
                    "end-to-end confidence threshold (default 0.7)");
    cmd->add_option("--max-chain-length", cfg.max_chain_length, "node cap (0 = catalog size)");
    cmd->add_flag("--all-chains", cfg.all_chains, "emit non-maximal chains too");
    cmd->add_option("--seed-item", cfg.seed_item, "restrict the search to chains headed by this item");
}

void add_cluster_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--k-min", cfg.k_min, "smallest k (default 2)");
    cmd->add_option("--k-max", cfg.k_max, "largest k (default 10)");
    cmd->add_option("--seeds-per-k", cfg.seeds_per_k, "restarts per k (default 25)");
    cmd->add_option("--min-cluster-size", cfg.min_cluster_size,
                    "retained-cluster size floor (0 = 10% of the cohort)");
    cmd->add_option("--max-iter", cfg.max_iter, "Lloyd iteration cap (default 100)");
}

void add_temporal_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--prominent", cfg.prominent, "annotation for the overall summary row");
    cmd->add_option("--fatal-item", cfg.fatal_item,
                    "item splitting the two-sample duration test (default C22)");
    cmd->add_flag("--pooled", cfg.pooled, "pooled-variance t test instead of Welch");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acmine: association rules, cohesion chains, clustering and milestone "
                 "statistics over binary behavioral transactions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    bool min_support_given = false;

    CLI::App* mine = app.add_subcommand("mine", "frequent itemsets and common characteristics");
    CLI::App* rules = app.add_subcommand("rules", "association rules, matrix and heatmap");
    CLI::App* chains = app.add_subcommand("chains", "cohesion-validated association chains");
    CLI::App* cluster = app.add_subcommand("cluster", "k-means with C-Index model selection");
    CLI::App* temporal = app.add_subcommand("temporal", "milestone interval statistics");
    CLI::App* report = app.add_subcommand("report", "full pipeline");

    for (CLI::App* cmd : {mine, rules, chains, cluster, temporal, report}) {
        add_common_options(cmd, cfg, config_path);
        add_mine_options(cmd, cfg, min_support_given);
    }
    for (CLI::App* cmd : {rules, chains, report}) add_rule_options(cmd, cfg);
    for (CLI::App* cmd : {chains, report}) add_chain_options(cmd, cfg);
    for (CLI::App* cmd : {cluster, report}) add_cluster_options(cmd, cfg);
    for (CLI::App* cmd : {temporal, report}) add_temporal_options(cmd, cfg);

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }

        // Precedence: defaults < config file < preset < explicit flags. The
        // config file is parsed first, then flags are re-applied on top.
        if (!config_path.empty()) {
            RunConfig file_cfg;
            acmine::apply_config_file(file_cfg, config_path);
            RunConfig merged = file_cfg;
            // Re-parse so command-line flags overwrite file values.
            CLI::App reparse{""};
            reparse.require_subcommand(1);
            RunConfig& c2 = merged;
            std::string dummy_cfg;
            bool msg2 = file_cfg.min_support_explicit;
            CLI::App* m2 = reparse.add_subcommand("mine", "");
            CLI::App* r2 = reparse.add_subcommand("rules", "");
            CLI::App* ch2 = reparse.add_subcommand("chains", "");
            CLI::App* cl2 = reparse.add_subcommand("cluster", "");
            CLI::App* t2 = reparse.add_subcommand("temporal", "");
            CLI::App* rep2 = reparse.add_subcommand("report", "");
            for (CLI::App* cmd : {m2, r2, ch2, cl2, t2, rep2}) {
                add_common_options(cmd, c2, dummy_cfg);
                add_mine_options(cmd, c2, msg2);
            }
            for (CLI::App* cmd : {r2, ch2, rep2}) add_rule_options(cmd, c2);
            for (CLI::App* cmd : {ch2, rep2}) add_chain_options(cmd, c2);
            for (CLI::App* cmd : {cl2, rep2}) add_cluster_options(cmd, c2);
            for (CLI::App* cmd : {t2, rep2}) add_temporal_options(cmd, c2);
            reparse.parse(argc, argv);
            merged.min_support_explicit = msg2;
            cfg = merged;
        } else {
            cfg.min_support_explicit = min_support_given;
        }

        cfg.apply_preset();
        cfg.validate();

        if (mine->parsed()) acmine::cmd_mine(cfg);
        else if (rules->parsed()) acmine::cmd_rules(cfg);
        else if (chains->parsed()) acmine::cmd_chains(cfg);
        else if (cluster->parsed()) acmine::cmd_cluster(cfg);
        else if (temporal->parsed()) acmine::cmd_temporal(cfg);
        else if (report->parsed()) acmine::cmd_report(cfg);
        return 0;
    } catch (const acmine::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const acmine::EmptyResultError& e) {
        std::fprintf(stderr, "empty result: %s\n", e.what());
        return 4;
    } catch (const acmine::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
