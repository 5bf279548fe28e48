#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ps {

// One-variable arithmetic expressions over `x`: numbers, pi, e, + - * / ^
// (right-associative), unary minus, parentheses, and the functions
// sin cos exp tanh sqrt abs.  Parse errors carry the byte offset.

struct ExprNode;

class Expr {
  public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
    const ExprNode* root() const { return root_.get(); }
    bool valid() const { return root_ != nullptr; }

  private:
    std::shared_ptr<const ExprNode> root_;
};

// Thrown by parse(); `offset` is the byte position of the error in the input.
struct ParseError : ValidationError {
    ParseError(const std::string& msg, std::size_t off) : ValidationError(msg), offset(off) {}
    std::size_t offset = 0;
};

Expr parse(std::string_view text);
double eval(const Expr& e, double x);           // ValidationError on non-finite result
std::string pretty(const Expr& e);              // parse(pretty(e)) is structurally equal
bool structurally_equal(const Expr& a, const Expr& b);

// A validated coefficient profile on [a, b]: c0 <= expr(x) <= c1 with c0 > 0,
// established by sampling `samples` uniform points including both endpoints.
struct Profile {
    Expr expr;
    double a = 0.0;
    double b = 1.0;
    double c0 = 0.0;  // sampled minimum
    double c1 = 0.0;  // sampled maximum
    std::string text;
};

Profile validate_profile(std::string_view text, double a, double b, int samples = 10001);

}  // namespace ps
