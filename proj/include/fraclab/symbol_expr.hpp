#pragma once

#include <cctype>
#include <memory>
#include <string>

#include "fraclab/symbols.hpp"

namespace fraclab {

/// Parser for the symbol expressions accepted in config files: complex
/// arithmetic over the frequency components `xi1 xi2 xi3`, the radial
/// magnitude `r` (= |xi|), the imaginary unit `i`, numeric literals,
/// parentheses and the operators + - * / ^. Examples:
///   0.5*i*xi1                  (half the gradient symbol)
///   -i*xi1*xi2/(r^2)           (a projected-divergence entry)
///   xi1/r                      (an order-0 Riesz-type symbol)
class SymbolExpr {
public:
    static Symbol parse(const std::string& text, int claimed_order) {
        SymbolExpr p(text);
        auto node = p.parse_expr();
        p.skip_ws();
        if (p.pos_ != p.text_.size())
            throw ConfigError("symbol expression: unexpected trailing input at '" +
                              p.text_.substr(p.pos_) + "'");
        return Symbol{[node](const Xi& xi) { return node->eval(xi); }, claimed_order};
    }

private:
    struct Node {
        virtual ~Node() = default;
        virtual Complex eval(const Xi& xi) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Literal : Node {
        Complex value;
        explicit Literal(Complex v) : value(v) {}
        Complex eval(const Xi&) const override { return value; }
    };
    struct Variable : Node {
        int kind;  // 0..2 -> xi components, 3 -> |xi|
        explicit Variable(int k) : kind(k) {}
        Complex eval(const Xi& xi) const override {
            return kind < 3 ? Complex(xi[kind], 0.0) : Complex(xi_norm(xi), 0.0);
        }
    };
    struct Binary : Node {
        char op;
        NodePtr lhs, rhs;
        Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
        Complex eval(const Xi& xi) const override {
            const Complex a = lhs->eval(xi), b = rhs->eval(xi);
            switch (op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                default: return std::pow(a, b);
            }
        }
    };
    struct Negate : Node {
        NodePtr inner;
        explicit Negate(NodePtr n) : inner(std::move(n)) {}
        Complex eval(const Xi& xi) const override { return -inner->eval(xi); }
    };

    explicit SymbolExpr(std::string text) : text_(std::move(text)) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+')) lhs = std::make_shared<Binary>('+', lhs, parse_term());
            else if (consume('-')) lhs = std::make_shared<Binary>('-', lhs, parse_term());
            else return lhs;
        }
    }
    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*')) lhs = std::make_shared<Binary>('*', lhs, parse_factor());
            else if (consume('/')) lhs = std::make_shared<Binary>('/', lhs, parse_factor());
            else return lhs;
        }
    }
    NodePtr parse_factor() {
        if (consume('-')) return std::make_shared<Negate>(parse_factor());
        if (consume('+')) return parse_factor();
        NodePtr base = parse_primary();
        if (consume('^')) return std::make_shared<Binary>('^', base, parse_factor());
        return base;
    }
    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ConfigError("symbol expression ended unexpectedly");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')')) throw ConfigError("symbol expression: missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(text_.substr(pos_), &used);
            pos_ += used;
            return std::make_shared<Literal>(Complex(v, 0.0));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string name = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "i") return std::make_shared<Literal>(Complex(0.0, 1.0));
            if (name == "xi1") return std::make_shared<Variable>(0);
            if (name == "xi2") return std::make_shared<Variable>(1);
            if (name == "xi3") return std::make_shared<Variable>(2);
            if (name == "r") return std::make_shared<Variable>(3);
            throw ConfigError("symbol expression: unknown identifier '" + name +
                              "' (expected i, xi1, xi2, xi3 or r)");
        }
        throw ConfigError(std::string("symbol expression: unexpected character '") + c + "'");
    }

    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace fraclab
