#pragma once

#include <memory>
#include <string>

#include "acmine/dataset.hpp"

namespace acmine {

// Boolean predicate over transaction metadata. Grammar:
//   expr    := term ( OR term )*
//   term    := factor ( AND factor )*
//   factor  := NOT factor | '(' expr ')' | 'true' | field '=' value
// Fields: era, ideology, scene_type (alias scene), cluster. Field and enum
// values are validated at parse time.
class CohortExpr {
public:
    static CohortExpr parse(const std::string& text);

    bool matches(const Transaction& t) const;
    bool references_cluster() const;
    bool is_true() const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

// Order-preserving subset sharing the catalog. Throws EmptyResultError when
// no transaction matches, so downstream mining never sees an empty cohort.
Dataset filter_cohort(const Dataset& ds, const CohortExpr& expr);
Dataset filter_cohort(const Dataset& ds, const std::string& expr_text);

}  // namespace acmine
