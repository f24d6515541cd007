#include "acmine/expr.hpp"

#include <cctype>
#include <vector>

#include "acmine/errors.hpp"

namespace acmine {

struct CohortExpr::Node {
    enum class Kind { True, And, Or, Not, Era, Ideology, Scene, Cluster } kind;
    std::shared_ptr<const Node> lhs, rhs;
    Era era{};
    Ideology ideology{};
    SceneType scene{};
    int cluster = 0;
};

namespace {

using Node = CohortExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

struct Token {
    enum class Kind { Ident, Equals, LParen, RParen, End } kind;
    std::string text;
};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '=') {
            out.push_back({Token::Kind::Equals, "="});
            ++i;
        } else if (c == '(') {
            out.push_back({Token::Kind::LParen, "("});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::RParen, ")"});
            ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            std::string tok;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                    text[i] == '-'))
                tok += text[i++];
            out.push_back({Token::Kind::Ident, tok});
        } else {
            throw ConfigError("cohort expression: unexpected character '" +
                              std::string(1, c) + "'");
        }
    }
    out.push_back({Token::Kind::End, ""});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    NodePtr parse() {
        NodePtr n = parse_or();
        if (peek().kind != Token::Kind::End)
            throw ConfigError("cohort expression: trailing input at '" + peek().text + "'");
        return n;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    bool take_keyword(const char* kw) {
        if (peek().kind == Token::Kind::Ident && lower(peek().text) == kw) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_or() {
        NodePtr n = parse_and();
        while (take_keyword("or")) {
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Or;
            node->lhs = n;
            node->rhs = parse_and();
            n = node;
        }
        return n;
    }

    NodePtr parse_and() {
        NodePtr n = parse_factor();
        while (take_keyword("and")) {
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::And;
            node->lhs = n;
            node->rhs = parse_factor();
            n = node;
        }
        return n;
    }

    NodePtr parse_factor() {
        if (take_keyword("not")) {
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Not;
            node->lhs = parse_factor();
            return node;
        }
        if (peek().kind == Token::Kind::LParen) {
            take();
            NodePtr n = parse_or();
            if (peek().kind != Token::Kind::RParen)
                throw ConfigError("cohort expression: missing ')'");
            take();
            return n;
        }
        if (take_keyword("true")) {
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::True;
            return node;
        }
        if (peek().kind != Token::Kind::Ident)
            throw ConfigError("cohort expression: expected a field name, got '" +
                              peek().text + "'");
        std::string field = lower(take().text);
        if (peek().kind != Token::Kind::Equals)
            throw ConfigError("cohort expression: expected '=' after '" + field + "'");
        take();
        if (peek().kind != Token::Kind::Ident)
            throw ConfigError("cohort expression: expected a value after '" + field + "='");
        std::string value = take().text;

        auto node = std::make_shared<Node>();
        try {
            if (field == "era") {
                node->kind = Node::Kind::Era;
                node->era = parse_era(value);
            } else if (field == "ideology") {
                node->kind = Node::Kind::Ideology;
                node->ideology = parse_ideology(value);
            } else if (field == "scene_type" || field == "scene") {
                node->kind = Node::Kind::Scene;
                node->scene = parse_scene(value);
            } else if (field == "cluster") {
                node->kind = Node::Kind::Cluster;
                std::size_t used = 0;
                node->cluster = std::stoi(value, &used);
                if (used != value.size())
                    throw DataError("cluster label must be an integer");
            } else {
                throw ConfigError("cohort expression: unknown field '" + field + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("cohort expression: bad value '" + value + "' for field '" +
                              field + "': " + e.what());
        }
        return node;
    }
};

bool eval(const Node& n, const Transaction& t) {
    switch (n.kind) {
        case Node::Kind::True: return true;
        case Node::Kind::And: return eval(*n.lhs, t) && eval(*n.rhs, t);
        case Node::Kind::Or: return eval(*n.lhs, t) || eval(*n.rhs, t);
        case Node::Kind::Not: return !eval(*n.lhs, t);
        case Node::Kind::Era: return t.era == n.era;
        case Node::Kind::Ideology: return t.ideology == n.ideology;
        case Node::Kind::Scene: return t.scene == n.scene;
        case Node::Kind::Cluster: return t.cluster && *t.cluster == n.cluster;
    }
    return false;
}

bool uses_cluster(const Node& n) {
    if (n.kind == Node::Kind::Cluster) return true;
    if (n.lhs && uses_cluster(*n.lhs)) return true;
    if (n.rhs && uses_cluster(*n.rhs)) return true;
    return false;
}

}  // namespace

CohortExpr CohortExpr::parse(const std::string& text) {
    CohortExpr e;
    e.text_ = text;
    e.root_ = Parser(text).parse();
    return e;
}

bool CohortExpr::matches(const Transaction& t) const {
    return eval(*root_, t);
}

bool CohortExpr::references_cluster() const {
    return uses_cluster(*root_);
}

bool CohortExpr::is_true() const {
    return root_->kind == Node::Kind::True;
}

Dataset filter_cohort(const Dataset& ds, const CohortExpr& expr) {
    if (expr.references_cluster()) {
        bool any_labeled = false;
        for (const auto& t : ds.transactions()) any_labeled |= t.cluster.has_value();
        if (!any_labeled)
            throw DataError("cohort references cluster labels but none are attached");
    }
    std::vector<Transaction> rows;
    for (const auto& t : ds.transactions())
        if (expr.matches(t)) rows.push_back(t);
    if (rows.empty()) throw EmptyResultError("empty cohort: '" + expr.text() + "'");
    return Dataset(ds.catalog_ptr(), std::move(rows), ds.provenance());
}

Dataset filter_cohort(const Dataset& ds, const std::string& expr_text) {
    return filter_cohort(ds, CohortExpr::parse(expr_text));
}

}  // namespace acmine
