#pragma once

#include <vector>

#include "acmine/dataset.hpp"
#include "acmine/fraction.hpp"
#include "acmine/miner.hpp"

namespace acmine {

// Which side of A -> B normalizes the confidence. Consequent is the default:
// confidence = count(A and B) / count(B), "A is implied by B". Antecedent is
// the common market-basket reading, count(A and B) / count(A).
enum class ConfidenceConvention { Consequent, Antecedent };

ConfidenceConvention parse_convention(const std::string& text);
const char* convention_name(ConfidenceConvention c);

enum class Strength { Strong, Weak };

struct AssociationRule {
    ItemMask antecedent = 0;
    ItemMask consequent = 0;
    long long n = 0;
    long long count_antecedent = 0;
    long long count_consequent = 0;
    long long count_joint = 0;
    Fraction support_joint;
    Fraction confidence;
    double lift = 0.0;
    Strength strength = Strength::Weak;
    bool two_way = false;
    // Support + confidence gates alone (no lift); the family counted for the
    // Bonferroni adjustment.
    bool candidate = false;
    // Filled by apply_significance.
    double z = 0.0;
    bool testable = false;
    bool significant = false;
};

struct RuleThresholds {
    Fraction min_support{1, 5};
    Fraction min_confidence{7, 10};
    Fraction min_lift{1, 1};  // strict: lift must exceed this
    ConfidenceConvention convention = ConfidenceConvention::Consequent;
    bool itemset_rules = false;  // also emit rules with multi-item sides
    int workers = 1;
};

struct SignificanceConfig {
    double k = 2.0;
    bool bonferroni = true;
    long long family_size = 0;  // 0: use the count of candidate rules
};

struct SignificanceOutcome {
    long long m = 1;
    double k_effective = 2.0;
};

Fraction confidence(const Dataset& ds, ItemMask a, ItemMask b,
                    ConfidenceConvention conv = ConfidenceConvention::Consequent);
double lift(const Dataset& ds, ItemMask a, ItemMask b);

// One rule per ordered disjoint pair of frequent itemsets (single items by
// default). Output order: antecedent then consequent, canonical item order.
std::vector<AssociationRule> generate_rules(const FrequentSetTable& fs, const Dataset& ds,
                                            const RuleThresholds& thresholds);

// z = (count(A and B) - n*sA*sB) / sqrt(n*sA*sB*(1 - sA*sB)); significant when
// |z| > K, with K scaled to sqrt(m)*K under the Bonferroni adjustment. Rules
// with degenerate marginals (support 0 or 1) are left untestable.
SignificanceOutcome apply_significance(std::vector<AssociationRule>& rules,
                                       const SignificanceConfig& cfg);

double rule_z_score(long long count_joint, long long n, long long count_a, long long count_b);

}  // namespace acmine
