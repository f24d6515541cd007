#include "acmine/catalog.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "acmine/errors.hpp"

namespace acmine {

Phase parse_phase(const std::string& text) {
    if (text == "early") return Phase::Early;
    if (text == "trigger") return Phase::Trigger;
    if (text == "preparatory") return Phase::Preparatory;
    if (text == "outcome") return Phase::Outcome;
    throw DataError("unknown phase tag: '" + text + "'");
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Early: return "early";
        case Phase::Trigger: return "trigger";
        case Phase::Preparatory: return "preparatory";
        case Phase::Outcome: return "outcome";
    }
    return "?";
}

GroupRule parse_group_rule(const std::string& text) {
    if (text == "exactly_one") return GroupRule::ExactlyOne;
    if (text == "at_least_one") return GroupRule::AtLeastOne;
    if (text == "optional") return GroupRule::Optional;
    throw DataError("unknown group rule: '" + text + "'");
}

const char* group_rule_name(GroupRule r) {
    switch (r) {
        case GroupRule::ExactlyOne: return "exactly_one";
        case GroupRule::AtLeastOne: return "at_least_one";
        case GroupRule::Optional: return "optional";
    }
    return "?";
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

// Document syntax, one declaration per line:
//   item <code> <phase> <label...>
//   group <name> <rule> [exclusive=<code>] <member> <member> ...
const char kBuiltinCatalog[] = R"(# Behavioral item catalog: 25 binary characteristics in 10 exhaustivity groups.
item C01 early No criminal history
item C02 early One prior offense
item C03 early Multiple prior offenses
item C04 early Formal weaponry training
item C05 early No prior relations with extremist groups
item C06 early Contacts with extremist or terrorist groups or people
item C07 early Self-radicalized
item C08 early Not self-radicalized
item C09 trigger Triggering event caused the attack idea
item C10 trigger No particular triggering event
item C11 preparatory No leakage of intent
item C12 preparatory Leakage made offline
item C13 preparatory Leakage made online
item C14 preparatory Civilian targets
item C15 preparatory Target symbolizing the enemy ideology
item C16 preparatory Law enforcement or government targets
item C17 preparatory No targets aimed / symbolic attack
item C18 preparatory Firearms
item C19 preparatory Other weapons
item C20 outcome No fatalities or injuries
item C21 outcome Injuries but no fatalities
item C22 outcome At least one fatality
item C23 outcome Escaped the crime scene
item C24 outcome Surrendered or arrested at the scene
item C25 outcome Committed suicide or was killed at the scene
group criminal_history exactly_one C01 C02 C03
group weapons_training optional C04
group radical_relations exactly_one C05 C06
group radicalization_means exactly_one C07 C08
group trigger exactly_one C09 C10
group leakage at_least_one exclusive=C11 C11 C12 C13
group targets at_least_one exclusive=C17 C14 C15 C16 C17
group attack_means exactly_one C18 C19
group fatalities exactly_one C20 C21 C22
group after_attack exactly_one C23 C24 C25
)";

}  // namespace

ItemCatalog ItemCatalog::parse(std::istream& in, const std::string& source_name) {
    ItemCatalog cat;
    std::unordered_map<std::string, int> index;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<GroupDef, std::vector<std::string>>> raw_groups;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);

        if (toks[0] == "item") {
            if (toks.size() < 3) throw DataError(where + ": item needs code and phase");
            ItemDef item;
            item.code = toks[1];
            item.phase = parse_phase(toks[2]);
            std::string label;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (i > 3) label += ' ';
                label += toks[i];
            }
            item.label = label;
            if (index.count(item.code))
                throw DataError(where + ": duplicate item code '" + item.code + "'");
            index[item.code] = static_cast<int>(cat.items_.size());
            cat.items_.push_back(std::move(item));
        } else if (toks[0] == "group") {
            if (toks.size() < 3) throw DataError(where + ": group needs name and rule");
            GroupDef g;
            g.name = toks[1];
            g.rule = parse_group_rule(toks[2]);
            std::vector<std::string> member_codes;
            std::optional<std::string> excl;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (toks[i].rfind("exclusive=", 0) == 0) {
                    excl = toks[i].substr(10);
                } else {
                    member_codes.push_back(toks[i]);
                }
            }
            if (excl) member_codes.push_back("exclusive:" + *excl);
            raw_groups.emplace_back(std::move(g), std::move(member_codes));
        } else {
            throw DataError(where + ": unknown declaration '" + toks[0] + "'");
        }
    }

    for (auto& [g, codes] : raw_groups) {
        for (const auto& code : codes) {
            bool is_excl = code.rfind("exclusive:", 0) == 0;
            const std::string c = is_excl ? code.substr(10) : code;
            auto it = index.find(c);
            if (it == index.end())
                throw DataError(source_name + ": group '" + g.name +
                                "' references unknown item '" + c + "'");
            if (is_excl)
                g.exclusive = it->second;
            else
                g.members.push_back(it->second);
        }
        cat.groups_.push_back(std::move(g));
    }

    cat.validate_and_finalize(source_name);
    return cat;
}

void ItemCatalog::validate_and_finalize(const std::string& source_name) {
    if (items_.empty()) throw DataError(source_name + ": catalog has no items");
    if (items_.size() > 64)
        throw DataError(source_name + ": catalogs are limited to 64 items");

    std::vector<int> membership(items_.size(), 0);
    group_masks_.clear();
    for (const auto& g : groups_) {
        std::uint64_t mask = 0;
        for (int m : g.members) {
            ++membership[m];
            mask |= 1ULL << m;
        }
        group_masks_.push_back(mask);
        if (g.rule == GroupRule::ExactlyOne && g.members.size() < 2)
            throw DataError(source_name + ": group '" + g.name +
                            "' is exactly_one with fewer than 2 members");
        if (g.exclusive) {
            bool found = false;
            for (int m : g.members) found |= (m == *g.exclusive);
            if (!found)
                throw DataError(source_name + ": group '" + g.name +
                                "' exclusive member is not in the group");
        }
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (membership[i] == 0)
            throw DataError(source_name + ": item '" + items_[i].code +
                            "' belongs to no group");
        if (membership[i] > 1)
            throw DataError(source_name + ": item '" + items_[i].code +
                            "' belongs to more than one group");
    }
}

std::shared_ptr<const ItemCatalog> ItemCatalog::parse_shared(std::istream& in,
                                                             const std::string& source_name) {
    return std::make_shared<const ItemCatalog>(parse(in, source_name));
}

std::shared_ptr<const ItemCatalog> ItemCatalog::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open catalog file: " + path);
    return parse_shared(f, path);
}

std::shared_ptr<const ItemCatalog> ItemCatalog::builtin() {
    static const std::shared_ptr<const ItemCatalog> cat = [] {
        std::istringstream ss(kBuiltinCatalog);
        return parse_shared(ss, "<builtin>");
    }();
    return cat;
}

int ItemCatalog::index_of(const std::string& code) const {
    auto idx = find(code);
    if (!idx) throw DataError("unknown item code: '" + code + "'");
    return *idx;
}

std::optional<int> ItemCatalog::find(const std::string& code) const {
    for (std::size_t i = 0; i < items_.size(); ++i)
        if (items_[i].code == code) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<std::string> ItemCatalog::check_bits(std::uint64_t bits) const {
    if (size() < 64 && (bits >> size()) != 0)
        return "bit set outside the catalog's " + std::to_string(size()) + " items";
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        const GroupDef& g = groups_[gi];
        std::uint64_t in_group = bits & group_masks_[gi];
        int set = std::popcount(in_group);
        switch (g.rule) {
            case GroupRule::ExactlyOne:
                if (set != 1) return "group " + g.name + ": ExactlyOne violated";
                break;
            case GroupRule::AtLeastOne:
                if (set < 1) return "group " + g.name + ": AtLeastOne violated";
                break;
            case GroupRule::Optional:
                break;
        }
        if (g.exclusive && (in_group >> *g.exclusive) & 1ULL) {
            if (set > 1)
                return "group " + g.name + ": '" + items_[*g.exclusive].code +
                       "' cannot co-occur with other members";
        }
    }
    return std::nullopt;
}

void ItemCatalog::write(std::ostream& out) const {
    for (const auto& it : items_)
        out << "item " << it.code << ' ' << phase_name(it.phase) << ' ' << it.label << '\n';
    for (const auto& g : groups_) {
        out << "group " << g.name << ' ' << group_rule_name(g.rule);
        if (g.exclusive) out << " exclusive=" << items_[*g.exclusive].code;
        for (int m : g.members) out << ' ' << items_[m].code;
        out << '\n';
    }
}

}  // namespace acmine
