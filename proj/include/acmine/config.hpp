#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "acmine/fraction.hpp"
#include "acmine/rules.hpp"

namespace acmine {

inline constexpr const char* kToolVersion = "0.1.0";

// Every knob of the pipeline. Threshold-valued fields are kept as the text
// the user supplied and parsed exactly; validate() pins the ranges. Flags win
// over config-file entries, which win over these defaults.
struct RunConfig {
    std::string input;
    std::string catalog_path;    // empty: built-in catalog
    std::string cohort = "true";
    std::string out_dir;
    std::string clusters_path;   // optional assignments CSV to attach labels

    std::string min_support = "0.2";
    std::string min_confidence = "0.7";
    std::string min_lift = "1.0";          // strict lower bound
    std::string min_chain_confidence = "0.7";
    std::string common_threshold = "0.6";
    std::string preset;                     // "", "strong20", "common50"
    std::string convention = "consequent";  // confidence normalization side
    std::string seed_item;                  // optional chain-search head
    std::string prominent;                  // manual annotation for summaries
    std::string fatal_item = "C22";         // split for the two-sample duration test

    double significance_k = 2.0;
    double min_cohesion = 0.7;
    bool bonferroni = true;
    bool itemset_rules = false;
    bool all_chains = false;   // emit non-maximal chains too
    bool quarantine = false;   // ingest mode; default strict
    bool pooled = false;       // pooled-variance t instead of Welch

    long long family_size = 0;      // 0: candidate-rule count
    long long min_cluster_size = 0; // 0: 10% of the cohort size
    int max_items = 0;              // itemset cardinality cap; 0: catalog size
    int max_chain_length = 0;       // 0: catalog size
    int k_min = 2;
    int k_max = 10;
    int seeds_per_k = 25;
    int max_iter = 100;
    int workers = 1;
    std::uint64_t seed = 1;

    // Track whether min_support came from the user; presets only fill the gap.
    bool min_support_explicit = false;

    void validate() const;
    void apply_preset();

    Fraction min_support_f() const { return Fraction::parse(min_support); }
    Fraction min_confidence_f() const { return Fraction::parse(min_confidence); }
    Fraction min_lift_f() const { return Fraction::parse(min_lift); }
    Fraction min_chain_confidence_f() const { return Fraction::parse(min_chain_confidence); }
    Fraction common_threshold_f() const { return Fraction::parse(common_threshold); }
    ConfidenceConvention convention_e() const { return parse_convention(convention); }

    RuleThresholds rule_thresholds() const;
    SignificanceConfig significance() const;
};

// Flat `key = value` text, '#' comments. Unknown keys are errors.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// The effective configuration, re-runnable via --config. Excludes the output
// directory and worker count, which by contract never change results.
void write_run_config(const RunConfig& cfg, std::ostream& out);

std::uint64_t fnv1a_file(const std::string& path);
std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          long long n_ingested, long long n_cohort, long long n_rejected);

}  // namespace acmine
