#include "spde/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace spde::expr {

namespace {

constexpr int kMaxDepth = 64;
constexpr int kMaxExponent = 64;

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    std::unique_ptr<Ast> run() {
        auto ast = parse_expr(0);
        skip_ws();
        if (pos_ != src_.size()) {
            fail("unexpected trailing input; expected operator or end of input");
        }
        return ast;
    }

private:
    [[noreturn]] void fail(const std::string& expected) {
        std::ostringstream msg;
        msg << "syntax error at offset " << pos_ << ": " << expected;
        throw parse_error(msg.str(), pos_);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void check_depth(int depth) {
        if (depth > kMaxDepth) fail("expression nests deeper than 64 levels");
    }

    std::unique_ptr<Ast> parse_expr(int depth) {
        check_depth(depth);
        auto lhs = parse_term(depth + 1);
        for (;;) {
            BinaryOp op;
            if (accept('+')) {
                op = BinaryOp::Add;
            } else if (accept('-')) {
                op = BinaryOp::Sub;
            } else {
                return lhs;
            }
            auto node = std::make_unique<Ast>();
            node->kind = NodeKind::Binary;
            node->bop = op;
            node->lhs = std::move(lhs);
            node->rhs = parse_term(depth + 1);
            lhs = std::move(node);
        }
    }

    std::unique_ptr<Ast> parse_term(int depth) {
        check_depth(depth);
        auto lhs = parse_factor(depth + 1);
        for (;;) {
            BinaryOp op;
            if (accept('*')) {
                op = BinaryOp::Mul;
            } else if (accept('/')) {
                op = BinaryOp::Div;
            } else {
                return lhs;
            }
            auto node = std::make_unique<Ast>();
            node->kind = NodeKind::Binary;
            node->bop = op;
            node->lhs = std::move(lhs);
            node->rhs = parse_factor(depth + 1);
            lhs = std::move(node);
        }
    }

    std::unique_ptr<Ast> parse_factor(int depth) {
        check_depth(depth);
        if (accept('-')) {
            auto node = std::make_unique<Ast>();
            node->kind = NodeKind::Unary;
            node->uop = UnaryOp::Neg;
            node->lhs = parse_factor(depth + 1);
            return node;
        }
        return parse_power(depth + 1);
    }

    std::unique_ptr<Ast> parse_power(int depth) {
        check_depth(depth);
        auto base = parse_atom(depth + 1);
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t expo_pos = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[end]))) {
            ++end;
        }
        if (end == pos_) fail("expected a nonnegative integer exponent after '^'");
        if (end < src_.size() && (src_[end] == '.' || src_[end] == 'e' || src_[end] == 'E')) {
            pos_ = expo_pos;
            fail("exponent must be a plain nonnegative integer");
        }
        const long expo = std::strtol(src_.c_str() + pos_, nullptr, 10);
        if (expo > kMaxExponent) fail("exponent larger than 64");
        pos_ = end;
        if (peek('^')) fail("'^' is non-associative; parenthesize nested powers");
        auto node = std::make_unique<Ast>();
        node->kind = NodeKind::Binary;
        node->bop = BinaryOp::Pow;
        node->exponent = static_cast<int>(expo);
        node->lhs = std::move(base);
        return node;
    }

    std::unique_ptr<Ast> parse_atom(int depth) {
        check_depth(depth);
        skip_ws();
        if (pos_ >= src_.size()) fail("expected a number, variable, function or '('");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr(depth + 1);
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* endp = nullptr;
            const double v = std::strtod(src_.c_str() + pos_, &endp);
            const std::size_t len = static_cast<std::size_t>(endp - (src_.c_str() + pos_));
            if (len == 0) fail("malformed number");
            pos_ += len;
            auto node = std::make_unique<Ast>();
            node->kind = NodeKind::Constant;
            node->value = v;
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   std::isalpha(static_cast<unsigned char>(src_[end]))) {
                ++end;
            }
            const std::string name = src_.substr(pos_, end - pos_);
            if (name == "t" || name == "x") {
                pos_ = end;
                auto node = std::make_unique<Ast>();
                node->kind = name == "t" ? NodeKind::VarT : NodeKind::VarX;
                return node;
            }
            UnaryOp op;
            if (name == "sin") {
                op = UnaryOp::Sin;
            } else if (name == "cos") {
                op = UnaryOp::Cos;
            } else if (name == "exp") {
                op = UnaryOp::Exp;
            } else if (name == "abs") {
                op = UnaryOp::Abs;
            } else {
                fail("unknown identifier '" + name + "'");
            }
            pos_ = end;
            if (!accept('(')) fail("expected '(' after function name");
            auto node = std::make_unique<Ast>();
            node->kind = NodeKind::Unary;
            node->uop = op;
            node->lhs = parse_expr(depth + 1);
            if (!accept(')')) fail("expected ')'");
            return node;
        }
        fail("expected a number, variable, function or '('");
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

double finite_or_throw(double v, const char* what) {
    if (!std::isfinite(v)) throw eval_error(std::string("evaluation produced non-finite value in ") + what);
    return v;
}

}  // namespace

std::unique_ptr<Ast> parse(const std::string& source) {
    return Parser(source).run();
}

double eval(const Ast& ast, double t, double x) {
    switch (ast.kind) {
        case NodeKind::Constant:
            return ast.value;
        case NodeKind::VarT:
            return t;
        case NodeKind::VarX:
            return x;
        case NodeKind::Unary: {
            const double v = eval(*ast.lhs, t, x);
            switch (ast.uop) {
                case UnaryOp::Neg: return -v;
                case UnaryOp::Sin: return std::sin(v);
                case UnaryOp::Cos: return std::cos(v);
                case UnaryOp::Exp: return finite_or_throw(std::exp(v), "exp");
                case UnaryOp::Abs: return std::abs(v);
            }
            break;
        }
        case NodeKind::Binary: {
            const double a = eval(*ast.lhs, t, x);
            switch (ast.bop) {
                case BinaryOp::Add: return finite_or_throw(a + eval(*ast.rhs, t, x), "+");
                case BinaryOp::Sub: return finite_or_throw(a - eval(*ast.rhs, t, x), "-");
                case BinaryOp::Mul: return finite_or_throw(a * eval(*ast.rhs, t, x), "*");
                case BinaryOp::Div: {
                    const double b = eval(*ast.rhs, t, x);
                    if (b == 0.0) throw eval_error("division by zero");
                    return finite_or_throw(a / b, "/");
                }
                case BinaryOp::Pow: {
                    double r = 1.0, base = a;
                    int e = ast.exponent;
                    while (e > 0) {  // exact integer power by squaring
                        if (e & 1) r *= base;
                        base *= base;
                        e >>= 1;
                    }
                    return finite_or_throw(r, "^");
                }
            }
            break;
        }
    }
    throw eval_error("corrupt expression tree");
}

std::string pretty_print(const Ast& ast) {
    switch (ast.kind) {
        case NodeKind::Constant: {
            std::ostringstream os;
            os.precision(17);
            os << ast.value;
            const std::string s = os.str();
            return ast.value < 0.0 ? "(0-" + s.substr(1) + ")" : s;
        }
        case NodeKind::VarT:
            return "t";
        case NodeKind::VarX:
            return "x";
        case NodeKind::Unary: {
            const std::string inner = pretty_print(*ast.lhs);
            switch (ast.uop) {
                case UnaryOp::Neg: return "(-" + inner + ")";
                case UnaryOp::Sin: return "sin(" + inner + ")";
                case UnaryOp::Cos: return "cos(" + inner + ")";
                case UnaryOp::Exp: return "exp(" + inner + ")";
                case UnaryOp::Abs: return "abs(" + inner + ")";
            }
            break;
        }
        case NodeKind::Binary: {
            if (ast.bop == BinaryOp::Pow) {
                return "(" + pretty_print(*ast.lhs) + ")^" + std::to_string(ast.exponent);
            }
            const char* op = ast.bop == BinaryOp::Add   ? "+"
                             : ast.bop == BinaryOp::Sub ? "-"
                             : ast.bop == BinaryOp::Mul ? "*"
                                                        : "/";
            return "(" + pretty_print(*ast.lhs) + op + pretty_print(*ast.rhs) + ")";
        }
    }
    return "?";
}

bool structurally_equal(const Ast& a, const Ast& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Constant:
            return a.value == b.value;
        case NodeKind::VarT:
        case NodeKind::VarX:
            return true;
        case NodeKind::Unary:
            return a.uop == b.uop && structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Binary:
            if (a.bop != b.bop) return false;
            if (a.bop == BinaryOp::Pow) {
                return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
            }
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
    return false;
}

bool uses_variable(const Ast& ast, char var) {
    switch (ast.kind) {
        case NodeKind::Constant:
            return false;
        case NodeKind::VarT:
            return var == 't';
        case NodeKind::VarX:
            return var == 'x';
        case NodeKind::Unary:
            return uses_variable(*ast.lhs, var);
        case NodeKind::Binary:
            return uses_variable(*ast.lhs, var) ||
                   (ast.rhs && uses_variable(*ast.rhs, var));
    }
    return false;
}

std::unique_ptr<Ast> clone(const Ast& ast) {
    auto node = std::make_unique<Ast>();
    node->kind = ast.kind;
    node->value = ast.value;
    node->uop = ast.uop;
    node->bop = ast.bop;
    node->exponent = ast.exponent;
    if (ast.lhs) node->lhs = clone(*ast.lhs);
    if (ast.rhs) node->rhs = clone(*ast.rhs);
    return node;
}

}  // namespace spde::expr
