#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace tsg {

/// Syntax error with the byte offset of the offending character in the
/// original source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic expression over variables x, y, s, t, u, v with + - * / ^,
/// unary minus, and exp/abs/min/max. Exponents are nonnegative integer
/// literals. Precedence: ^ binds tightest, then unary minus, then * /,
/// then + -; binary operators associate left, ^ associates right.
/// Immutable value type; trees compare structurally.
class Expr {
public:
    Expr() = default;

    double eval(const std::map<std::string, double>& env) const;

    /// Canonical text form; parsing it back yields an equal tree.
    std::string str() const;

    bool operator==(const Expr& other) const;
    bool operator!=(const Expr& other) const { return !(*this == other); }

    static Expr number(double value);
    static Expr variable(const std::string& name);
    static Expr unary_minus(Expr operand);
    static Expr binary(char op, Expr lhs, Expr rhs);
    static Expr power(Expr base, unsigned exponent);
    static Expr call(const std::string& func, Expr arg);
    static Expr call(const std::string& func, Expr arg1, Expr arg2);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;

    friend Expr parse_expr(const std::string& source);
};

/// Recursive-descent parser; whitespace-insensitive. Failures throw
/// ParseError with the byte offset, never crash.
Expr parse_expr(const std::string& source);

inline double eval_expr(const Expr& e, const std::map<std::string, double>& env) {
    return e.eval(env);
}

} // namespace tsg
