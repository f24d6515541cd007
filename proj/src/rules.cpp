#include "acmine/rules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "acmine/errors.hpp"

namespace acmine {

ConfidenceConvention parse_convention(const std::string& text) {
    if (text == "consequent") return ConfidenceConvention::Consequent;
    if (text == "antecedent") return ConfidenceConvention::Antecedent;
    throw ConfigError("unknown confidence convention: '" + text +
                      "' (expected consequent or antecedent)");
}

const char* convention_name(ConfidenceConvention c) {
    return c == ConfidenceConvention::Consequent ? "consequent" : "antecedent";
}

namespace {

void require_rule_pair(ItemMask a, ItemMask b) {
    if (a == 0 || b == 0) throw ConfigError("rule sides must be nonempty");
    if (a & b) throw ConfigError("rule sides must be disjoint");
}

bool lift_exceeds(long long count_joint, long long n, long long count_a, long long count_b,
                  Fraction min_lift) {
    // joint/n / ((a/n)(b/n)) > num/den  <=>  joint*n*den > num*a*b
    return static_cast<__int128>(count_joint) * n * min_lift.den >
           static_cast<__int128>(min_lift.num) * count_a * count_b;
}

}  // namespace

Fraction confidence(const Dataset& ds, ItemMask a, ItemMask b, ConfidenceConvention conv) {
    require_rule_pair(a, b);
    long long joint = count_containing(ds, a | b);
    long long denom = conv == ConfidenceConvention::Consequent ? count_containing(ds, b)
                                                               : count_containing(ds, a);
    if (denom == 0) throw DataError("confidence undefined: normalizing side never occurs");
    return Fraction(joint, denom);
}

double lift(const Dataset& ds, ItemMask a, ItemMask b) {
    require_rule_pair(a, b);
    long long ca = count_containing(ds, a);
    long long cb = count_containing(ds, b);
    if (ca == 0 || cb == 0) throw DataError("lift undefined: zero marginal support");
    long long joint = count_containing(ds, a | b);
    return static_cast<double>(joint) * static_cast<double>(ds.size()) /
           (static_cast<double>(ca) * static_cast<double>(cb));
}

namespace {

AssociationRule make_rule(ItemMask a, ItemMask b, long long ca, long long cb,
                          long long joint, long long n, const RuleThresholds& th) {
    AssociationRule r;
    r.antecedent = a;
    r.consequent = b;
    r.n = n;
    r.count_antecedent = ca;
    r.count_consequent = cb;
    r.count_joint = joint;
    r.support_joint = Fraction(joint, n);
    long long denom = th.convention == ConfidenceConvention::Consequent ? cb : ca;
    r.confidence = Fraction(joint, denom);
    r.lift = static_cast<double>(joint) * static_cast<double>(n) /
             (static_cast<double>(ca) * static_cast<double>(cb));
    bool support_ok = ratio_at_least(joint, n, th.min_support);
    bool conf_ok = ratio_at_least(joint, denom, th.min_confidence);
    r.candidate = support_ok && conf_ok;
    r.strength = (r.candidate && lift_exceeds(joint, n, ca, cb, th.min_lift))
                     ? Strength::Strong
                     : Strength::Weak;
    return r;
}

}  // namespace

std::vector<AssociationRule> generate_rules(const FrequentSetTable& fs, const Dataset& ds,
                                            const RuleThresholds& th) {
    const long long n = ds.size();
    if (n == 0) throw EmptyResultError("cannot generate rules over an empty dataset");
    if (fs.min_support > th.min_support)
        throw ConfigError("frequent sets were mined above the rule support threshold");

    std::vector<AssociationRule> rules;

    const std::vector<int> items = fs.frequent_items();
    const int d = ds.catalog().size();

    // Pairwise co-occurrence in one pass; rules also need counts for pairs
    // that fall below min_support.
    std::vector<std::vector<long long>> pair_count(d, std::vector<long long>(d, 0));
    std::vector<long long> item_count(d, 0);
    for (const auto& t : ds.transactions()) {
        auto present = mask_items(t.bits);
        for (std::size_t i = 0; i < present.size(); ++i) {
            item_count[present[i]]++;
            for (std::size_t j = i + 1; j < present.size(); ++j) {
                pair_count[present[i]][present[j]]++;
                pair_count[present[j]][present[i]]++;
            }
        }
    }

    for (int a : items) {
        for (int b : items) {
            if (a == b) continue;
            rules.push_back(make_rule(1ULL << a, 1ULL << b, item_count[a], item_count[b],
                                      pair_count[a][b], n, th));
        }
    }

    if (th.itemset_rules) {
        // Every ordered two-block partition of each frequent itemset; all
        // counts come from the table by downward closure.
        for (const auto& [set, cnt] : fs.sets) {
            int size = std::popcount(set);
            if (size < 2) continue;
            auto members = mask_items(set);
            for (ItemMask pick = 1; pick + 1 < (1ULL << size); ++pick) {
                ItemMask a = 0;
                for (int bitpos = 0; bitpos < size; ++bitpos)
                    if ((pick >> bitpos) & 1ULL) a |= 1ULL << members[bitpos];
                ItemMask b = set ^ a;
                if (std::popcount(a) == 1 && std::popcount(b) == 1) continue;  // already emitted
                rules.push_back(
                    make_rule(a, b, fs.count(a), fs.count(b), cnt, n, th));
            }
        }
    }

    std::sort(rules.begin(), rules.end(), [](const AssociationRule& x, const AssociationRule& y) {
        if (x.antecedent != y.antecedent) return canonical_less(x.antecedent, y.antecedent);
        return canonical_less(x.consequent, y.consequent);
    });

    // A rule is two-way when both directions are Strong.
    std::map<std::pair<ItemMask, ItemMask>, bool> strong;
    for (const auto& r : rules)
        strong[{r.antecedent, r.consequent}] = r.strength == Strength::Strong;
    for (auto& r : rules) {
        auto rev = strong.find({r.consequent, r.antecedent});
        r.two_way = r.strength == Strength::Strong && rev != strong.end() && rev->second;
    }
    return rules;
}

double rule_z_score(long long count_joint, long long n, long long count_a, long long count_b) {
    double sa = static_cast<double>(count_a) / static_cast<double>(n);
    double sb = static_cast<double>(count_b) / static_cast<double>(n);
    double p0 = sa * sb;
    double expected = static_cast<double>(n) * p0;
    double var = expected * (1.0 - p0);
    return (static_cast<double>(count_joint) - expected) / std::sqrt(var);
}

SignificanceOutcome apply_significance(std::vector<AssociationRule>& rules,
                                       const SignificanceConfig& cfg) {
    if (cfg.k <= 0) throw ConfigError("significance K must be positive");
    if (cfg.family_size < 0) throw ConfigError("family size must be nonnegative");

    long long m = cfg.family_size;
    if (m == 0) {
        for (const auto& r : rules)
            if (r.candidate) ++m;
        if (m == 0) m = 1;
    }
    double k_eff = cfg.bonferroni ? std::sqrt(static_cast<double>(m)) * cfg.k : cfg.k;

    for (auto& r : rules) {
        bool degenerate = r.count_antecedent == 0 || r.count_consequent == 0 ||
                          r.count_antecedent == r.n || r.count_consequent == r.n;
        if (degenerate) {
            r.testable = false;
            r.z = std::numeric_limits<double>::quiet_NaN();
            r.significant = false;
            continue;
        }
        r.testable = true;
        r.z = rule_z_score(r.count_joint, r.n, r.count_antecedent, r.count_consequent);
        r.significant = std::fabs(r.z) > k_eff;
    }
    return SignificanceOutcome{m, k_eff};
}

}  // namespace acmine
