#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace acmine {

// Chronological tag of a behavioral characteristic, light-to-dark on timeline
// renderings.
enum class Phase { Early, Trigger, Preparatory, Outcome };

Phase parse_phase(const std::string& text);
const char* phase_name(Phase p);

enum class GroupRule { ExactlyOne, AtLeastOne, Optional };

GroupRule parse_group_rule(const std::string& text);
const char* group_rule_name(GroupRule r);

struct ItemDef {
    std::string code;
    std::string label;
    Phase phase = Phase::Early;

    bool operator==(const ItemDef&) const = default;
};

struct GroupDef {
    std::string name;
    std::vector<int> members;      // item indices in catalog order
    GroupRule rule = GroupRule::Optional;
    std::optional<int> exclusive;  // member that cannot co-occur with the rest

    bool operator==(const GroupDef&) const = default;
};

// The fixed item universe. Item order in the source document is the canonical
// order used everywhere downstream; groups must partition the items. At most
// 64 items, so transactions fit in one word.
class ItemCatalog {
public:
    static ItemCatalog parse(std::istream& in, const std::string& source_name);
    static std::shared_ptr<const ItemCatalog> parse_shared(std::istream& in,
                                                           const std::string& source_name);
    static std::shared_ptr<const ItemCatalog> load_file(const std::string& path);

    // Built-in 25-item behavioral catalog (10 groups).
    static std::shared_ptr<const ItemCatalog> builtin();

    int size() const { return static_cast<int>(items_.size()); }
    const std::vector<ItemDef>& items() const { return items_; }
    const std::vector<GroupDef>& groups() const { return groups_; }
    const ItemDef& item(int idx) const { return items_.at(idx); }

    int index_of(const std::string& code) const;  // throws DataError when unknown
    std::optional<int> find(const std::string& code) const;

    // Empty result means the bit vector satisfies every group constraint;
    // otherwise describes the first violation.
    std::optional<std::string> check_bits(std::uint64_t bits) const;

    void write(std::ostream& out) const;

    bool operator==(const ItemCatalog& other) const {
        return items_ == other.items_ && groups_ == other.groups_;
    }

private:
    std::vector<ItemDef> items_;
    std::vector<GroupDef> groups_;
    std::vector<std::uint64_t> group_masks_;

    void validate_and_finalize(const std::string& source_name);
};

}  // namespace acmine
