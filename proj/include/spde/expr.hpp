#pragma once

#include <memory>
#include <string>

namespace spde::expr {

enum class NodeKind { Constant, VarT, VarX, Unary, Binary };
enum class UnaryOp { Neg, Sin, Cos, Exp, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

/// Immutable expression tree over the variables t and x.
/// Grammar (whitespace-insensitive):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' integer)?          -- non-associative, integer only
///   atom   := number | 't' | 'x' | name '(' expr ')' | '(' expr ')'
/// with names sin, cos, exp, abs. '^' binds tighter than unary minus.
struct Ast {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;     // Constant
    UnaryOp uop{};          // Unary
    BinaryOp bop{};         // Binary
    int exponent = 0;       // Binary/Pow
    std::unique_ptr<Ast> lhs;
    std::unique_ptr<Ast> rhs;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class eval_error : public std::runtime_error {
public:
    explicit eval_error(const std::string& what) : std::runtime_error(what) {}
};

// Parses `source` completely; trailing input is an error. Tree depth is
// capped at 64.
std::unique_ptr<Ast> parse(const std::string& source);

// IEEE double evaluation. Division by zero and non-finite intermediate
// results raise eval_error rather than propagating inf/nan.
double eval(const Ast& ast, double t, double x);

// Canonical fully parenthesized form; parse(pretty_print(a)) is structurally
// identical to a.
std::string pretty_print(const Ast& ast);

bool structurally_equal(const Ast& a, const Ast& b);

// True if the tree references the given variable.
bool uses_variable(const Ast& ast, char var);

std::unique_ptr<Ast> clone(const Ast& ast);

}  // namespace spde::expr
