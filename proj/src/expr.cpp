#include "tsgronwall/expr.hpp"

#include "tsgronwall/format.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace tsg {

struct Expr::Node {
    enum class Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 };
    Kind kind;
    double num = 0.0;
    std::string name;
    unsigned exponent = 0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

bool is_var_name(const std::string& s) {
    return s.size() == 1 && std::string("xystuv").find(s[0]) != std::string::npos;
}

bool is_func_name(const std::string& s) {
    return s == "exp" || s == "abs" || s == "min" || s == "max";
}

int func_arity(const std::string& s) { return (s == "min" || s == "max") ? 2 : 1; }

std::shared_ptr<Node> make(Kind kind) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    return n;
}

// Printing precedence levels; higher binds tighter.
int level(const Node& n) {
    switch (n.kind) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const Node& n, std::string& out);

void print_child(const Node& child, int min_level, std::string& out) {
    if (level(child) < min_level) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::Num: out += fmt17(n.num); return;
        case Kind::Var: out += n.name; return;
        case Kind::Neg:
            out += '-';
            print_child(*n.a, 3, out);
            return;
        case Kind::Add:
            print_child(*n.a, 1, out);
            out += '+';
            print_child(*n.b, 2, out);
            return;
        case Kind::Sub:
            print_child(*n.a, 1, out);
            out += '-';
            print_child(*n.b, 2, out);
            return;
        case Kind::Mul:
            print_child(*n.a, 2, out);
            out += '*';
            print_child(*n.b, 3, out);
            return;
        case Kind::Div:
            print_child(*n.a, 2, out);
            out += '/';
            print_child(*n.b, 3, out);
            return;
        case Kind::Pow:
            print_child(*n.a, 5, out);
            out += '^';
            out += std::to_string(n.exponent);
            return;
        case Kind::Call1:
            out += n.name;
            out += '(';
            print(*n.a, out);
            out += ')';
            return;
        case Kind::Call2:
            out += n.name;
            out += '(';
            print(*n.a, out);
            out += ',';
            print(*n.b, out);
            out += ')';
            return;
    }
}

bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::Num: return a.num == b.num && std::signbit(a.num) == std::signbit(b.num);
        case Kind::Var: return a.name == b.name;
        case Kind::Neg: return equal(*a.a, *b.a);
        case Kind::Pow: return a.exponent == b.exponent && equal(*a.a, *b.a);
        case Kind::Call1: return a.name == b.name && equal(*a.a, *b.a);
        case Kind::Call2: return a.name == b.name && equal(*a.a, *b.a) && equal(*a.b, *b.b);
        default: return equal(*a.a, *b.a) && equal(*a.b, *b.b);
    }
}

double eval_node(const Node& n, const std::map<std::string, double>& env) {
    switch (n.kind) {
        case Kind::Num: return n.num;
        case Kind::Var: {
            auto it = env.find(n.name);
            if (it == env.end()) throw EvalError("unbound variable '" + n.name + "'");
            return it->second;
        }
        case Kind::Neg: return -eval_node(*n.a, env);
        case Kind::Add: return eval_node(*n.a, env) + eval_node(*n.b, env);
        case Kind::Sub: return eval_node(*n.a, env) - eval_node(*n.b, env);
        case Kind::Mul: return eval_node(*n.a, env) * eval_node(*n.b, env);
        case Kind::Div: {
            const double d = eval_node(*n.b, env);
            if (d == 0.0) throw EvalError("division by zero");
            return eval_node(*n.a, env) / d;
        }
        case Kind::Pow: return std::pow(eval_node(*n.a, env), static_cast<double>(n.exponent));
        case Kind::Call1: {
            const double v = eval_node(*n.a, env);
            return n.name == "exp" ? std::exp(v) : std::abs(v);
        }
        case Kind::Call2: {
            const double v1 = eval_node(*n.a, env);
            const double v2 = eval_node(*n.b, env);
            return n.name == "min" ? std::min(v1, v2) : std::max(v1, v2);
        }
    }
    throw EvalError("malformed expression tree");
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what, pos_);
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                auto n = make(Kind::Add);
                n->a = lhs;
                n->b = parse_term();
                lhs = n;
            } else if (accept('-')) {
                auto n = make(Kind::Sub);
                n->a = lhs;
                n->b = parse_term();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                auto n = make(Kind::Mul);
                n->a = lhs;
                n->b = parse_factor();
                lhs = n;
            } else if (accept('/')) {
                auto n = make(Kind::Div);
                n->a = lhs;
                n->b = parse_factor();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (accept('-')) {
            auto n = make(Kind::Neg);
            n->a = parse_factor();
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (!accept('^')) return base;
        auto n = make(Kind::Pow);
        n->a = base;
        n->exponent = parse_exponent_chain();
        return n;
    }

    // Exponents are nonnegative integer literals; a chain like 2^3 folds
    // right-associatively into a single integer.
    unsigned parse_exponent_chain() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("exponent must be a nonnegative integer literal", pos_);
        unsigned long long value = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            value = value * 10 + static_cast<unsigned long long>(src_[pos_] - '0');
            if (value > 1000000u) fail("exponent too large", at);
            ++pos_;
        }
        if (pos_ < src_.size() &&
            (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
            fail("exponent must be a nonnegative integer literal", at);
        if (accept('^')) {
            const unsigned rest = parse_exponent_chain();
            unsigned long long folded = 1;
            for (unsigned k = 0; k < rest; ++k) {
                folded *= value;
                if (folded > 1000000u) fail("exponent too large", at);
            }
            value = folded;
        }
        return static_cast<unsigned>(value);
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_sum();
            expect(')', "to close '('");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t at = pos_;
        const char* start = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail("malformed number", at);
        if (!std::isfinite(v)) fail("number literal out of range", at);
        pos_ += static_cast<std::size_t>(end - start);
        auto n = make(Kind::Num);
        n->num = v;
        return n;
    }

    NodePtr parse_name() {
        const std::size_t at = pos_;
        std::string name;
        while (pos_ < src_.size() &&
               std::isalnum(static_cast<unsigned char>(src_[pos_])))
            name += src_[pos_++];
        if (is_func_name(name)) {
            expect('(', "after function name '" + name + "'");
            NodePtr arg1 = parse_sum();
            if (func_arity(name) == 2) {
                expect(',', "between arguments of '" + name + "'");
                NodePtr arg2 = parse_sum();
                expect(')', "to close '" + name + "('");
                auto n = make(Kind::Call2);
                n->name = name;
                n->a = arg1;
                n->b = arg2;
                return n;
            }
            expect(')', "to close '" + name + "('");
            auto n = make(Kind::Call1);
            n->name = name;
            n->a = arg1;
            return n;
        }
        if (is_var_name(name)) {
            auto n = make(Kind::Var);
            n->name = name;
            return n;
        }
        fail("unknown identifier '" + name + "'", at);
    }
};

} // namespace

double Expr::eval(const std::map<std::string, double>& env) const {
    if (!node_) throw EvalError("empty expression");
    const double v = eval_node(*node_, env);
    if (!std::isfinite(v)) throw EvalError("evaluation produced a non-finite value");
    return v;
}

std::string Expr::str() const {
    if (!node_) return "";
    std::string out;
    print(*node_, out);
    return out;
}

bool Expr::operator==(const Expr& other) const {
    if (!node_ || !other.node_) return node_ == other.node_;
    return equal(*node_, *other.node_);
}

Expr Expr::number(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("Expr::number: literal must be finite");
    if (std::signbit(value)) return unary_minus(number(-value));
    auto n = make(Kind::Num);
    n->num = value;
    return Expr(n);
}

Expr Expr::variable(const std::string& name) {
    if (!is_var_name(name))
        throw std::invalid_argument("Expr::variable: unknown variable '" + name + "'");
    auto n = make(Kind::Var);
    n->name = name;
    return Expr(n);
}

Expr Expr::unary_minus(Expr operand) {
    if (!operand.node_) throw std::invalid_argument("Expr::unary_minus: empty operand");
    auto n = make(Kind::Neg);
    n->a = operand.node_;
    return Expr(n);
}

Expr Expr::binary(char op, Expr lhs, Expr rhs) {
    if (!lhs.node_ || !rhs.node_) throw std::invalid_argument("Expr::binary: empty operand");
    Kind kind;
    switch (op) {
        case '+': kind = Kind::Add; break;
        case '-': kind = Kind::Sub; break;
        case '*': kind = Kind::Mul; break;
        case '/': kind = Kind::Div; break;
        default: throw std::invalid_argument("Expr::binary: unknown operator");
    }
    auto n = make(kind);
    n->a = lhs.node_;
    n->b = rhs.node_;
    return Expr(n);
}

Expr Expr::power(Expr base, unsigned exponent) {
    if (!base.node_) throw std::invalid_argument("Expr::power: empty base");
    auto n = make(Kind::Pow);
    n->a = base.node_;
    n->exponent = exponent;
    return Expr(n);
}

Expr Expr::call(const std::string& func, Expr arg) {
    if (!is_func_name(func) || func_arity(func) != 1)
        throw std::invalid_argument("Expr::call: unknown unary function '" + func + "'");
    if (!arg.node_) throw std::invalid_argument("Expr::call: empty argument");
    auto n = make(Kind::Call1);
    n->name = func;
    n->a = arg.node_;
    return Expr(n);
}

Expr Expr::call(const std::string& func, Expr arg1, Expr arg2) {
    if (!is_func_name(func) || func_arity(func) != 2)
        throw std::invalid_argument("Expr::call: unknown binary function '" + func + "'");
    if (!arg1.node_ || !arg2.node_) throw std::invalid_argument("Expr::call: empty argument");
    auto n = make(Kind::Call2);
    n->name = func;
    n->a = arg1.node_;
    n->b = arg2.node_;
    return Expr(n);
}

Expr parse_expr(const std::string& source) { return Expr(Parser(source).run()); }

} // namespace tsg
