#include "expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "errors.hpp"

namespace ps {

enum class NodeKind { Number, Variable, Constant, Unary, Binary, Call };

struct ExprNode {
    NodeKind kind;
    double value = 0.0;    // Number
    char op = 0;           // Unary ('-') / Binary ('+','-','*','/','^')
    std::string name;      // Constant ("pi","e") / Call ("sin",...)
    std::shared_ptr<const ExprNode> lhs, rhs;  // Unary/Call use lhs only
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Number;
    n->value = v;
    return n;
}

NodePtr make_named(NodeKind k, std::string name, NodePtr arg = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->name = std::move(name);
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_op(NodeKind k, char op, NodePtr l, NodePtr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

constexpr std::array<std::string_view, 6> kFunctions = {"sin", "cos", "exp",
                                                        "tanh", "sqrt", "abs"};

bool is_function(std::string_view s) {
    for (auto f : kFunctions)
        if (f == s) return true;
    return false;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= text_.size()) fail("empty expression", 0);
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input", pos_);
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& what, std::size_t off) const {
        throw ParseError("expression parse error: " + what + " at byte offset " +
                             std::to_string(off),
                         off);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            lhs = make_op(NodeKind::Binary, c, std::move(lhs), parse_term());
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            lhs = make_op(NodeKind::Binary, c, std::move(lhs), parse_factor());
        }
        return lhs;
    }

    // factor := '-' factor | power;  power := atom ('^' factor)?
    // so -x^2 parses as -(x^2) and 2^-3 is accepted.
    NodePtr parse_factor() {
        if (peek() == '-') {
            ++pos_;
            return make_op(NodeKind::Unary, '-', parse_factor());
        }
        NodePtr base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            return make_op(NodeKind::Binary, '^', std::move(base), parse_factor());
        }
        return base;
    }

    NodePtr parse_atom() {
        char c = peek();
        std::size_t off = pos_;
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_sum();
            if (peek() != ')') fail("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '\0') fail("unexpected end of input", text_.size());
        fail(std::string("unexpected character '") + c + "'", off);
    }

    NodePtr parse_number() {
        std::size_t off = pos_;
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr == first) fail("invalid number", off);
        pos_ += static_cast<std::size_t>(ptr - first);
        return make_number(v);
    }

    NodePtr parse_ident() {
        std::size_t off = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        std::string name(text_.substr(pos_, end - pos_));
        pos_ = end;
        if (name == "x") return make_named(NodeKind::Variable, name);
        if (name == "pi" || name == "e") return make_named(NodeKind::Constant, name);
        if (is_function(name)) {
            if (peek() != '(') fail("function '" + name + "' requires '('", pos_);
            ++pos_;
            NodePtr arg = parse_sum();
            if (peek() != ')') fail("expected ')'", pos_);
            ++pos_;
            return make_named(NodeKind::Call, name, std::move(arg));
        }
        fail("unknown identifier '" + name + "'", off);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval_node(const ExprNode* n, double x) {
    switch (n->kind) {
        case NodeKind::Number: return n->value;
        case NodeKind::Variable: return x;
        case NodeKind::Constant: return n->name == "pi" ? M_PI : M_E;
        case NodeKind::Unary: return -eval_node(n->lhs.get(), x);
        case NodeKind::Binary: {
            double a = eval_node(n->lhs.get(), x);
            double b = eval_node(n->rhs.get(), x);
            switch (n->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
        case NodeKind::Call: {
            double a = eval_node(n->lhs.get(), x);
            if (n->name == "sin") return std::sin(a);
            if (n->name == "cos") return std::cos(a);
            if (n->name == "exp") return std::exp(a);
            if (n->name == "tanh") return std::tanh(a);
            if (n->name == "sqrt") return std::sqrt(a);
            return std::abs(a);
        }
    }
    return 0.0;
}

int precedence(const ExprNode* n) {
    if (n->kind == NodeKind::Binary) {
        if (n->op == '+' || n->op == '-') return 1;
        if (n->op == '*' || n->op == '/') return 2;
        return 4;  // '^'
    }
    if (n->kind == NodeKind::Unary) return 3;
    return 5;  // atoms
}

std::string fmt_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const ExprNode* n, std::string& out) {
    auto child = [&](const ExprNode* c, bool needs_paren) {
        if (needs_paren) out += '(';
        print_node(c, out);
        if (needs_paren) out += ')';
    };
    switch (n->kind) {
        case NodeKind::Number: out += fmt_number(n->value); return;
        case NodeKind::Variable:
        case NodeKind::Constant: out += n->name; return;
        case NodeKind::Unary:
            out += '-';
            child(n->lhs.get(), precedence(n->lhs.get()) < precedence(n));
            return;
        case NodeKind::Binary: {
            int p = precedence(n);
            // Left child needs parens when strictly weaker; for the
            // right-associative '^' a left '^' child must be wrapped, and for
            // '-' and '/' equal-precedence right children must be wrapped.
            bool lp = precedence(n->lhs.get()) < p || (n->op == '^' && precedence(n->lhs.get()) == p);
            bool rp = precedence(n->rhs.get()) < p ||
                      ((n->op == '-' || n->op == '/') && precedence(n->rhs.get()) == p);
            child(n->lhs.get(), lp);
            out += n->op;
            child(n->rhs.get(), rp);
            return;
        }
        case NodeKind::Call:
            out += n->name;
            out += '(';
            print_node(n->lhs.get(), out);
            out += ')';
            return;
    }
}

bool equal_node(const ExprNode* a, const ExprNode* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Number:
            return a->value == b->value || (std::isnan(a->value) && std::isnan(b->value));
        case NodeKind::Variable:
        case NodeKind::Constant: return a->name == b->name;
        case NodeKind::Unary: return a->op == b->op && equal_node(a->lhs.get(), b->lhs.get());
        case NodeKind::Binary:
            return a->op == b->op && equal_node(a->lhs.get(), b->lhs.get()) &&
                   equal_node(a->rhs.get(), b->rhs.get());
        case NodeKind::Call:
            return a->name == b->name && equal_node(a->lhs.get(), b->lhs.get());
    }
    return false;
}

}  // namespace

Expr parse(std::string_view text) { return Expr(Parser(text).run()); }

double eval(const Expr& e, double x) {
    if (!e.valid()) throw ValidationError("eval of empty expression");
    double v = eval_node(e.root(), x);
    if (!std::isfinite(v))
        throw ValidationError("expression evaluates to a non-finite value at x = " + fmt_number(x));
    return v;
}

std::string pretty(const Expr& e) {
    if (!e.valid()) return "";
    std::string out;
    print_node(e.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) { return equal_node(a.root(), b.root()); }

Profile validate_profile(std::string_view text, double a, double b, int samples) {
    if (!(a < b)) throw ValidationError("profile interval requires a < b");
    if (samples < 2) throw ValidationError("profile validation requires at least 2 samples");
    Profile p;
    p.expr = parse(text);
    p.a = a;
    p.b = b;
    p.text = std::string(text);
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        if (i == samples - 1) x = b;
        double v = eval_node(p.expr.root(), x);
        if (!std::isfinite(v))
            throw ValidationError("profile '" + p.text + "' is non-finite at x = " + fmt_number(x));
        if (i == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo > 0.0))
        throw ValidationError("profile '" + p.text + "' is not strictly positive on [" +
                              fmt_number(a) + ", " + fmt_number(b) + "]: sampled minimum " +
                              fmt_number(lo));
    p.c0 = lo;
    p.c1 = hi;
    return p;
}

}  // namespace ps
