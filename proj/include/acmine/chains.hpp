#pragma once

#include <optional>
#include <vector>

#include "acmine/dataset.hpp"
#include "acmine/fraction.hpp"
#include "acmine/rules.hpp"

namespace acmine {

// Pairwise cohesion of (a, b), an inverse-entropy measure of how rarely `a`
// occurs without `b`: with p = P(b | a) and H the binary entropy in bits,
//   c = sqrt(1 - H(p)^2)   when p > 1/2, else 0.
// Swap in a different CohesionMeasure to change the definition everywhere.
double pair_cohesion(const Dataset& ds, int item_a, int item_b);

class CohesionMeasure {
public:
    virtual ~CohesionMeasure() = default;
    // p as a ratio of counts: occurrences of both over occurrences of a.
    virtual double operator()(long long count_both, long long count_a) const;
};

// Chain cohesion for nodes a1 -> a2 -> ... -> am, multiplying three blocks:
// the pairwise cohesions within the rule left-hand sides {a1..am-1}, within
// the right-hand sides {a2..am}, and across the two (skipping the self-pairs
// shared middles would create). Each factor is in [0,1], so extending a chain
// never increases its cohesion.
double chain_cohesion(const Dataset& ds, const std::vector<int>& nodes);

// count(a1 and ... and am) / count(a1): the chance the whole suffix holds
// given the head.
Fraction end_to_end_confidence(const Dataset& ds, const std::vector<int>& nodes);

struct CohesionConfig {
    double min_cohesion = 0.7;
    Fraction min_chain_confidence{7, 10};
    int max_chain_length = 0;  // nodes; 0 means the catalog size
    bool maximal_only = true;  // drop chains that are a prefix of an emitted chain
    // Reverse-direction confidence gate for flagging two-way edges.
    Fraction edge_confidence{7, 10};
    ConfidenceConvention convention = ConfidenceConvention::Consequent;
    int workers = 1;
};

struct RuleChain {
    std::vector<int> nodes;  // item indices, head first; length >= 3, no repeats
    // Directed pairwise cohesion over chain nodes: pairwise[i][j] is the
    // cohesion of (nodes[i], nodes[j]).
    std::vector<std::vector<double>> pairwise;
    double cohesion = 0.0;
    Fraction confidence;  // end-to-end, suffix given head
    std::vector<Fraction> edge_confidence;  // per adjacent rule
    std::vector<int> bidirectional;         // edge positions whose reverse also passes
    std::vector<Phase> phases;              // filled by annotate_phases
    bool non_chronological = false;         // a later phase precedes an earlier one
};

// Depth-first extension over the Strong single-item rules in `rules`. A chain
// is emitted iff cohesion and end-to-end confidence both clear their
// thresholds; by default only maximal chains survive. Output is ordered by
// head item, then lexicographically.
std::vector<RuleChain> search_chains(const std::vector<AssociationRule>& rules,
                                     const Dataset& ds, const CohesionConfig& cfg,
                                     std::optional<int> seed_item = std::nullopt);

// Tags each node with its catalog phase and flags chains where an Outcome
// phase precedes an earlier one.
RuleChain annotate_phases(RuleChain chain, const ItemCatalog& cat);

}  // namespace acmine
