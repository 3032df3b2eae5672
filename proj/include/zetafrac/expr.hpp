#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "zetafrac/errors.hpp"
#include "zetafrac/hp.hpp"

namespace zetafrac {

// Arithmetic expressions over decimal literals, pi, log(...), sqrt(...),
// + - * / ( ), unary minus, and one optional free variable.  Standard
// precedence, left-associative.  Parsed once into a small tree that can be
// evaluated either in 50-digit precision (alpha values) or plain double
// (per-point weight functions, where speed matters).
class Expr {
    enum class Op { num, var, pi_c, neg, add, sub, mul, div, log_f, sqrt_f };

    struct Node {
        Op op;
        hp value_hp{0};
        double value_d = 0.0;
        std::size_t pos = 0;
        std::unique_ptr<Node> a, b;
    };

    std::unique_ptr<Node> root_;
    std::string source_;
    std::string var_name_;

    struct Parser {
        const std::string& s;
        std::size_t i = 0;
        const std::string& var;

        [[noreturn]] void fail(std::size_t at, const std::string& what) const {
            fail_usage("expression error at position " + std::to_string(at + 1)
                       + ": " + what);
        }

        void skip_ws() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }

        bool eat(char c) {
            skip_ws();
            if (i < s.size() && s[i] == c) { ++i; return true; }
            return false;
        }

        std::unique_ptr<Node> make(Op op, std::size_t pos,
                                   std::unique_ptr<Node> a = nullptr,
                                   std::unique_ptr<Node> b = nullptr) {
            auto n = std::make_unique<Node>();
            n->op = op;
            n->pos = pos;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }

        std::unique_ptr<Node> parse_expr() {
            auto lhs = parse_term();
            for (;;) {
                skip_ws();
                std::size_t at = i;
                if (eat('+')) lhs = make(Op::add, at, std::move(lhs), parse_term());
                else if (eat('-')) lhs = make(Op::sub, at, std::move(lhs), parse_term());
                else return lhs;
            }
        }

        std::unique_ptr<Node> parse_term() {
            auto lhs = parse_unary();
            for (;;) {
                skip_ws();
                std::size_t at = i;
                if (eat('*')) lhs = make(Op::mul, at, std::move(lhs), parse_unary());
                else if (eat('/')) lhs = make(Op::div, at, std::move(lhs), parse_unary());
                else return lhs;
            }
        }

        std::unique_ptr<Node> parse_unary() {
            skip_ws();
            std::size_t at = i;
            if (eat('-')) return make(Op::neg, at, parse_unary());
            return parse_primary();
        }

        std::unique_ptr<Node> parse_primary() {
            skip_ws();
            if (i >= s.size()) fail(i, "unexpected end of expression");
            std::size_t at = i;
            char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
                return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c)))
                return parse_name();
            if (eat('(')) {
                auto e = parse_expr();
                if (!eat(')')) fail(i, "expected ')'");
                return e;
            }
            fail(at, std::string("unexpected character '") + c + "'");
        }

        std::unique_ptr<Node> parse_number() {
            std::size_t at = i;
            bool dot = false, digit = false;
            while (i < s.size()) {
                char c = s[i];
                if (std::isdigit(static_cast<unsigned char>(c))) { digit = true; ++i; }
                else if (c == '.' && !dot) { dot = true; ++i; }
                else break;
            }
            if (!digit) fail(at, "malformed number");
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t save = i;
                ++i;
                if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
                if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                } else {
                    i = save;
                }
            }
            auto n = std::make_unique<Node>();
            n->op = Op::num;
            n->pos = at;
            std::string text = s.substr(at, i - at);
            n->value_hp = hp(text);
            n->value_d = std::stod(text);
            return n;
        }

        std::unique_ptr<Node> parse_name() {
            std::size_t at = i;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
            std::string name = s.substr(at, i - at);
            if (name == "pi") return make(Op::pi_c, at);
            if (!var.empty() && name == var) return make(Op::var, at);
            if (name == "log" || name == "sqrt") {
                if (!eat('(')) fail(i, "expected '(' after " + name);
                auto arg = parse_expr();
                if (!eat(')')) fail(i, "expected ')'");
                return make(name == "log" ? Op::log_f : Op::sqrt_f, at, std::move(arg));
            }
            fail(at, "unknown name '" + name + "'");
        }
    };

    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        fail_usage("expression error at position " + std::to_string(pos + 1)
                   + ": " + what);
    }

    hp eval_hp_node(const Node* n, const hp* var) const {
        switch (n->op) {
            case Op::num: return n->value_hp;
            case Op::pi_c: return hp_pi();
            case Op::var:
                if (!var) fail_at(n->pos, "variable not bound");
                return *var;
            case Op::neg: return -eval_hp_node(n->a.get(), var);
            case Op::add: return eval_hp_node(n->a.get(), var) + eval_hp_node(n->b.get(), var);
            case Op::sub: return eval_hp_node(n->a.get(), var) - eval_hp_node(n->b.get(), var);
            case Op::mul: return eval_hp_node(n->a.get(), var) * eval_hp_node(n->b.get(), var);
            case Op::div: {
                hp d = eval_hp_node(n->b.get(), var);
                if (d == 0) fail_at(n->pos, "division by zero");
                return eval_hp_node(n->a.get(), var) / d;
            }
            case Op::log_f: {
                hp a = eval_hp_node(n->a.get(), var);
                if (a <= 0) fail_at(n->pos, "log of nonpositive value");
                return log(a);
            }
            case Op::sqrt_f: {
                hp a = eval_hp_node(n->a.get(), var);
                if (a < 0) fail_at(n->pos, "sqrt of negative value");
                return sqrt(a);
            }
        }
        fail_at(n->pos, "corrupt expression tree");
    }

    double eval_d_node(const Node* n, const double* var) const {
        switch (n->op) {
            case Op::num: return n->value_d;
            case Op::pi_c: return 3.14159265358979323846;
            case Op::var:
                if (!var) fail_at(n->pos, "variable not bound");
                return *var;
            case Op::neg: return -eval_d_node(n->a.get(), var);
            case Op::add: return eval_d_node(n->a.get(), var) + eval_d_node(n->b.get(), var);
            case Op::sub: return eval_d_node(n->a.get(), var) - eval_d_node(n->b.get(), var);
            case Op::mul: return eval_d_node(n->a.get(), var) * eval_d_node(n->b.get(), var);
            case Op::div: {
                double d = eval_d_node(n->b.get(), var);
                if (d == 0.0) fail_at(n->pos, "division by zero");
                return eval_d_node(n->a.get(), var) / d;
            }
            case Op::log_f: {
                double a = eval_d_node(n->a.get(), var);
                if (a <= 0.0) fail_at(n->pos, "log of nonpositive value");
                return std::log(a);
            }
            case Op::sqrt_f: {
                double a = eval_d_node(n->a.get(), var);
                if (a < 0.0) fail_at(n->pos, "sqrt of negative value");
                return std::sqrt(a);
            }
        }
        fail_at(n->pos, "corrupt expression tree");
    }

public:
    // var_name = "" parses a closed expression; otherwise that single
    // identifier is accepted as a free variable.
    explicit Expr(std::string source, std::string var_name = "")
        : source_(std::move(source)), var_name_(std::move(var_name)) {
        Parser p{source_, 0, var_name_};
        root_ = p.parse_expr();
        p.skip_ws();
        if (p.i != source_.size())
            p.fail(p.i, "trailing input");
    }

    const std::string& source() const { return source_; }

    hp eval_hp() const { return eval_hp_node(root_.get(), nullptr); }
    hp eval_hp(const hp& v) const { return eval_hp_node(root_.get(), &v); }
    double eval(double v) const { return eval_d_node(root_.get(), &v); }
    double eval() const { return eval_d_node(root_.get(), nullptr); }
};

}
