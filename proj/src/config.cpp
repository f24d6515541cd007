#include "acmine/config.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acmine/errors.hpp"

namespace acmine {

void RunConfig::validate() const {
    auto in_unit = [](Fraction f, const char* name, bool allow_zero) {
        Fraction zero(0, 1), one(1, 1);
        bool low_ok = allow_zero ? f >= zero : f > zero;
        if (!low_ok || f > one)
            throw ConfigError(std::string(name) + " must be in " +
                              (allow_zero ? "[0, 1]" : "(0, 1]"));
    };
    in_unit(min_support_f(), "min_support", false);
    in_unit(min_confidence_f(), "min_confidence", false);
    in_unit(min_chain_confidence_f(), "min_chain_confidence", false);
    in_unit(common_threshold_f(), "common_threshold", false);
    if (min_lift_f() < Fraction(0, 1)) throw ConfigError("min_lift must be nonnegative");
    if (min_cohesion <= 0.0 || min_cohesion > 1.0)
        throw ConfigError("min_cohesion must be in (0, 1]");
    if (significance_k <= 0.0) throw ConfigError("significance_k must be positive");
    if (family_size < 0) throw ConfigError("family_size must be nonnegative");
    if (min_cluster_size < 0) throw ConfigError("min_cluster_size must be nonnegative");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (seeds_per_k < 1) throw ConfigError("seeds_per_k must be at least 1");
    if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (k_min < 2) throw ConfigError("k_min must be at least 2");
    if (k_min > k_max) throw ConfigError("k_min must not exceed k_max");
    if (max_items < 0 || max_chain_length < 0)
        throw ConfigError("cardinality caps must be nonnegative");
    if (!preset.empty() && preset != "strong20" && preset != "common50")
        throw ConfigError("unknown preset '" + preset + "' (strong20 or common50)");
    parse_convention(convention);
}

void RunConfig::apply_preset() {
    if (preset.empty() || min_support_explicit) return;
    if (preset == "strong20") min_support = "0.2";
    else if (preset == "common50") min_support = "0.5";
}

RuleThresholds RunConfig::rule_thresholds() const {
    RuleThresholds th;
    th.min_support = min_support_f();
    th.min_confidence = min_confidence_f();
    th.min_lift = min_lift_f();
    th.convention = convention_e();
    th.itemset_rules = itemset_rules;
    th.workers = workers;
    return th;
}

SignificanceConfig RunConfig::significance() const {
    SignificanceConfig sc;
    sc.k = significance_k;
    sc.bonferroni = bonferroni;
    sc.family_size = family_size;
    return sc;
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

long long parse_ll(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        long long out = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' expects an integer, got '" + v + "'");
    }
}

double parse_dbl(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt_config_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "input") cfg.input = value;
    else if (key == "catalog") cfg.catalog_path = value;
    else if (key == "cohort") cfg.cohort = value;
    else if (key == "clusters") cfg.clusters_path = value;
    else if (key == "min_support") { cfg.min_support = value; cfg.min_support_explicit = true; }
    else if (key == "min_confidence") cfg.min_confidence = value;
    else if (key == "min_lift") cfg.min_lift = value;
    else if (key == "min_chain_confidence") cfg.min_chain_confidence = value;
    else if (key == "common_threshold") cfg.common_threshold = value;
    else if (key == "preset") cfg.preset = value;
    else if (key == "convention") cfg.convention = value;
    else if (key == "seed_item") cfg.seed_item = value;
    else if (key == "prominent") cfg.prominent = value;
    else if (key == "fatal_item") cfg.fatal_item = value;
    else if (key == "significance_k") cfg.significance_k = parse_dbl(value, key);
    else if (key == "min_cohesion") cfg.min_cohesion = parse_dbl(value, key);
    else if (key == "bonferroni") cfg.bonferroni = parse_bool(value, key);
    else if (key == "itemset_rules") cfg.itemset_rules = parse_bool(value, key);
    else if (key == "all_chains") cfg.all_chains = parse_bool(value, key);
    else if (key == "quarantine") cfg.quarantine = parse_bool(value, key);
    else if (key == "pooled") cfg.pooled = parse_bool(value, key);
    else if (key == "family_size") cfg.family_size = parse_ll(value, key);
    else if (key == "min_cluster_size") cfg.min_cluster_size = parse_ll(value, key);
    else if (key == "max_items") cfg.max_items = static_cast<int>(parse_ll(value, key));
    else if (key == "max_chain_length")
        cfg.max_chain_length = static_cast<int>(parse_ll(value, key));
    else if (key == "k_min") cfg.k_min = static_cast<int>(parse_ll(value, key));
    else if (key == "k_max") cfg.k_max = static_cast<int>(parse_ll(value, key));
    else if (key == "seeds_per_k") cfg.seeds_per_k = static_cast<int>(parse_ll(value, key));
    else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_ll(value, key));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_ll(value, key));
    else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void write_run_config(const RunConfig& cfg, std::ostream& out) {
    out << "input = " << cfg.input << '\n';
    if (!cfg.catalog_path.empty()) out << "catalog = " << cfg.catalog_path << '\n';
    if (!cfg.clusters_path.empty()) out << "clusters = " << cfg.clusters_path << '\n';
    out << "cohort = " << cfg.cohort << '\n';
    out << "min_support = " << cfg.min_support << '\n';
    out << "min_confidence = " << cfg.min_confidence << '\n';
    out << "min_lift = " << cfg.min_lift << '\n';
    out << "min_chain_confidence = " << cfg.min_chain_confidence << '\n';
    out << "common_threshold = " << cfg.common_threshold << '\n';
    if (!cfg.preset.empty()) out << "preset = " << cfg.preset << '\n';
    out << "convention = " << cfg.convention << '\n';
    if (!cfg.seed_item.empty()) out << "seed_item = " << cfg.seed_item << '\n';
    if (!cfg.prominent.empty()) out << "prominent = " << cfg.prominent << '\n';
    out << "fatal_item = " << cfg.fatal_item << '\n';
    out << "significance_k = " << fmt_config_double(cfg.significance_k) << '\n';
    out << "min_cohesion = " << fmt_config_double(cfg.min_cohesion) << '\n';
    out << "bonferroni = " << (cfg.bonferroni ? "true" : "false") << '\n';
    out << "itemset_rules = " << (cfg.itemset_rules ? "true" : "false") << '\n';
    out << "all_chains = " << (cfg.all_chains ? "true" : "false") << '\n';
    out << "quarantine = " << (cfg.quarantine ? "true" : "false") << '\n';
    out << "pooled = " << (cfg.pooled ? "true" : "false") << '\n';
    out << "family_size = " << cfg.family_size << '\n';
    out << "min_cluster_size = " << cfg.min_cluster_size << '\n';
    out << "max_items = " << cfg.max_items << '\n';
    out << "max_chain_length = " << cfg.max_chain_length << '\n';
    out << "k_min = " << cfg.k_min << '\n';
    out << "k_max = " << cfg.k_max << '\n';
    out << "seeds_per_k = " << cfg.seeds_per_k << '\n';
    out << "max_iter = " << cfg.max_iter << '\n';
    out << "seed = " << cfg.seed << '\n';
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          long long n_ingested, long long n_cohort, long long n_rejected) {
    nlohmann::json j;
    j["tool"] = "acmine";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["input"] = cfg.input;
    j["input_fnv1a"] = [&] {
        std::ostringstream hex;
        hex << std::hex << fnv1a_file(cfg.input);
        return hex.str();
    }();
    j["catalog"] = cfg.catalog_path.empty() ? "builtin" : cfg.catalog_path;
    j["rows_ingested"] = n_ingested;
    j["rows_rejected"] = n_rejected;
    j["rows_in_cohort"] = n_cohort;
    std::ostringstream conf;
    write_run_config(cfg, conf);
    nlohmann::json config_obj;
    std::istringstream lines(conf.str());
    std::string line;
    while (std::getline(lines, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        config_obj[key] = value;
    }
    j["config"] = config_obj;
    return j.dump(2) + "\n";
}

}  // namespace acmine
