#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acmine/catalog.hpp"
#include "acmine/dates.hpp"

namespace acmine {

enum class Era { Pre911, Post911 };
enum class Ideology { Jihadist, RightWing, SingleIssue, Other, Unknown };
enum class SceneType { MaxDamager, Symbolic, Daredevil, AttentionSeeker, Staller, Unknown };

Era parse_era(const std::string& text);
Ideology parse_ideology(const std::string& text);
SceneType parse_scene(const std::string& text);
const char* era_name(Era e);
const char* ideology_name(Ideology i);
const char* scene_name(SceneType s);

// 2001-09-11; attack dates strictly before it are the early era.
Date era_cutoff();
Era era_of(Date attack_date);

struct Transaction {
    std::string id;
    Date attack_date;
    Era era = Era::Post911;
    Ideology ideology = Ideology::Unknown;
    SceneType scene = SceneType::Unknown;
    std::optional<ImpreciseDate> trigger;
    std::optional<ImpreciseDate> leakage;
    std::uint64_t bits = 0;
    std::optional<int> cluster;  // attached after clustering; filterable

    bool operator==(const Transaction&) const = default;
};

int width(const Transaction& t);  // number of set bits

// Reason the record is invalid against the catalog, or empty.
std::optional<std::string> validate_transaction(const ItemCatalog& cat, const Transaction& t);

// Immutable, order-preserving collection of validated transactions, all
// against one catalog. Safe to share across threads.
class Dataset {
public:
    Dataset(std::shared_ptr<const ItemCatalog> catalog, std::vector<Transaction> rows,
            std::string provenance);

    const ItemCatalog& catalog() const { return *catalog_; }
    std::shared_ptr<const ItemCatalog> catalog_ptr() const { return catalog_; }
    const std::vector<Transaction>& transactions() const { return rows_; }
    long long size() const { return static_cast<long long>(rows_.size()); }
    const std::string& provenance() const { return provenance_; }

    Dataset with_clusters(const std::vector<int>& labels) const;

private:
    std::shared_ptr<const ItemCatalog> catalog_;
    std::vector<Transaction> rows_;
    std::string provenance_;
};

enum class IngestMode { Strict, Quarantine };

struct Rejection {
    std::size_t line = 0;  // 1-based line number in the source file
    std::string id;
    std::string reason;
};

struct IngestResult {
    Dataset dataset;
    std::vector<Rejection> rejected;
};

// Header: id,attack_date,era,ideology,scene_type,trigger_date,trigger_precision,
// leakage_date,leakage_precision,<item codes in catalog order>. Strict mode
// aborts on the first bad row; Quarantine collects and excludes bad rows.
IngestResult ingest(std::istream& in, std::shared_ptr<const ItemCatalog> catalog,
                    IngestMode mode, const std::string& source_name);

void write_csv(const Dataset& ds, std::ostream& out);

}  // namespace acmine
