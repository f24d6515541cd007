#include "acmine/dataset.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "acmine/csv.hpp"
#include "acmine/errors.hpp"

namespace acmine {

namespace {

std::string squash(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace

Era parse_era(const std::string& text) {
    std::string s = squash(text);
    if (s == "pre911") return Era::Pre911;
    if (s == "post911") return Era::Post911;
    throw DataError("unknown era: '" + text + "'");
}

Ideology parse_ideology(const std::string& text) {
    std::string s = squash(text);
    if (s == "jihadist") return Ideology::Jihadist;
    if (s == "rightwing") return Ideology::RightWing;
    if (s == "singleissue") return Ideology::SingleIssue;
    if (s == "other") return Ideology::Other;
    if (s == "unknown") return Ideology::Unknown;
    throw DataError("unknown ideology: '" + text + "'");
}

SceneType parse_scene(const std::string& text) {
    std::string s = squash(text);
    if (s == "maxdamager") return SceneType::MaxDamager;
    if (s == "symbolic") return SceneType::Symbolic;
    if (s == "daredevil") return SceneType::Daredevil;
    if (s == "attentionseeker") return SceneType::AttentionSeeker;
    if (s == "staller") return SceneType::Staller;
    if (s == "unknown") return SceneType::Unknown;
    throw DataError("unknown scene type: '" + text + "'");
}

const char* era_name(Era e) {
    return e == Era::Pre911 ? "pre911" : "post911";
}

const char* ideology_name(Ideology i) {
    switch (i) {
        case Ideology::Jihadist: return "jihadist";
        case Ideology::RightWing: return "rightwing";
        case Ideology::SingleIssue: return "singleissue";
        case Ideology::Other: return "other";
        case Ideology::Unknown: return "unknown";
    }
    return "?";
}

const char* scene_name(SceneType s) {
    switch (s) {
        case SceneType::MaxDamager: return "maxdamager";
        case SceneType::Symbolic: return "symbolic";
        case SceneType::Daredevil: return "daredevil";
        case SceneType::AttentionSeeker: return "attentionseeker";
        case SceneType::Staller: return "staller";
        case SceneType::Unknown: return "unknown";
    }
    return "?";
}

Date era_cutoff() {
    static const Date cutoff = parse_date("2001-09-11");
    return cutoff;
}

Era era_of(Date attack_date) {
    return attack_date < era_cutoff() ? Era::Pre911 : Era::Post911;
}

int width(const Transaction& t) {
    return std::popcount(t.bits);
}

std::optional<std::string> validate_transaction(const ItemCatalog& cat, const Transaction& t) {
    if (auto bad = cat.check_bits(t.bits)) return bad;
    if (era_of(t.attack_date) != t.era)
        return std::string("era does not match attack date ") + format_date(t.attack_date);
    if (t.trigger && t.trigger->date > t.attack_date)
        return std::string("trigger date after attack date");
    if (t.leakage && t.leakage->date > t.attack_date)
        return std::string("leakage date after attack date");
    return std::nullopt;
}

Dataset::Dataset(std::shared_ptr<const ItemCatalog> catalog, std::vector<Transaction> rows,
                 std::string provenance)
    : catalog_(std::move(catalog)), rows_(std::move(rows)), provenance_(std::move(provenance)) {
    if (!catalog_) throw DataError("dataset requires a catalog");
    for (const auto& t : rows_) {
        if (auto bad = validate_transaction(*catalog_, t))
            throw DataError("transaction '" + t.id + "': " + *bad);
    }
}

Dataset Dataset::with_clusters(const std::vector<int>& labels) const {
    if (labels.size() != rows_.size())
        throw DataError("cluster label count does not match dataset size");
    std::vector<Transaction> rows = rows_;
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].cluster = labels[i];
    return Dataset(catalog_, std::move(rows), provenance_);
}

namespace {

constexpr const char* kMetaColumns[] = {
    "id",           "attack_date",    "era",          "ideology",         "scene_type",
    "trigger_date", "trigger_precision", "leakage_date", "leakage_precision",
};
constexpr std::size_t kMetaCount = sizeof(kMetaColumns) / sizeof(kMetaColumns[0]);

std::optional<ImpreciseDate> parse_dated(const std::string& date_s,
                                         const std::string& prec_s, const char* what) {
    if (date_s.empty() && prec_s.empty()) return std::nullopt;
    if (date_s.empty())
        throw DataError(std::string(what) + " precision given without a date");
    ImpreciseDate d;
    d.date = parse_date(date_s);
    d.precision = prec_s.empty() ? DatePrecision::Day : parse_precision(prec_s);
    return d;
}

Transaction parse_row(const std::vector<std::string>& f, const ItemCatalog& cat) {
    Transaction t;
    t.id = f[0];
    if (t.id.empty()) throw DataError("empty id");
    t.attack_date = parse_date(f[1]);
    t.era = parse_era(f[2]);
    t.ideology = parse_ideology(f[3]);
    t.scene = parse_scene(f[4]);
    t.trigger = parse_dated(f[5], f[6], "trigger");
    t.leakage = parse_dated(f[7], f[8], "leakage");
    for (int i = 0; i < cat.size(); ++i) {
        const std::string& cell = f[kMetaCount + i];
        if (cell == "1")
            t.bits |= 1ULL << i;
        else if (cell != "0")
            throw DataError("bit value for " + cat.item(i).code + " must be 0 or 1, got '" +
                            cell + "'");
    }
    return t;
}

}  // namespace

IngestResult ingest(std::istream& in, std::shared_ptr<const ItemCatalog> catalog,
                    IngestMode mode, const std::string& source_name) {
    if (!catalog) throw DataError("ingest requires a catalog");
    const ItemCatalog& cat = *catalog;

    std::vector<std::string> fields;
    if (!read_csv_record(in, fields))
        throw DataError(source_name + ": empty file (missing header)");

    std::vector<std::string> expected(kMetaColumns, kMetaColumns + kMetaCount);
    for (const auto& it : cat.items()) expected.push_back(it.code);
    if (fields != expected) {
        throw DataError(source_name + ": header does not match the expected schema (" +
                        std::to_string(expected.size()) + " columns ending in item codes)");
    }

    std::vector<Transaction> rows;
    std::vector<Rejection> rejected;
    std::unordered_set<std::string> seen_ids;
    std::size_t lineno = 1;

    while (read_csv_record(in, fields)) {
        ++lineno;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank trailing line
        std::string reason;
        try {
            if (fields.size() != expected.size())
                throw DataError("expected " + std::to_string(expected.size()) +
                                " columns, got " + std::to_string(fields.size()));
            Transaction t = parse_row(fields, cat);
            if (!seen_ids.insert(t.id).second)
                throw DataError("duplicate id '" + t.id + "'");
            if (auto bad = validate_transaction(cat, t)) throw DataError(*bad);
            rows.push_back(std::move(t));
            continue;
        } catch (const DataError& e) {
            reason = e.what();
        }
        if (mode == IngestMode::Strict)
            throw DataError(source_name + ":" + std::to_string(lineno) + ": " + reason);
        rejected.push_back({lineno, fields.empty() ? "" : fields[0], reason});
    }

    return IngestResult{Dataset(catalog, std::move(rows), source_name), std::move(rejected)};
}

void write_csv(const Dataset& ds, std::ostream& out) {
    const ItemCatalog& cat = ds.catalog();
    std::vector<std::string> row(kMetaColumns, kMetaColumns + kMetaCount);
    for (const auto& it : cat.items()) row.push_back(it.code);
    write_csv_row(out, row);

    for (const auto& t : ds.transactions()) {
        row.clear();
        row.push_back(t.id);
        row.push_back(format_date(t.attack_date));
        row.push_back(era_name(t.era));
        row.push_back(ideology_name(t.ideology));
        row.push_back(scene_name(t.scene));
        row.push_back(t.trigger ? format_date(t.trigger->date) : "");
        row.push_back(t.trigger ? precision_name(t.trigger->precision) : "");
        row.push_back(t.leakage ? format_date(t.leakage->date) : "");
        row.push_back(t.leakage ? precision_name(t.leakage->precision) : "");
        for (int i = 0; i < cat.size(); ++i)
            row.push_back((t.bits >> i) & 1ULL ? "1" : "0");
        write_csv_row(out, row);
    }
}

}  // namespace acmine
