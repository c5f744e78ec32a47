#include "spde/expr.hpp"

#include "spde/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace spde;
using expr::parse;

namespace {

// Random parseable tree: nonnegative constants, both variables, every
// operator, depth-limited.
std::unique_ptr<expr::Ast> random_tree(const rng::CounterStream& s,
                                       std::uint64_t& ctr, int depth) {
    const std::uint64_t pick = s.bits(ctr++);
    auto leaf = [&]() {
        auto node = std::make_unique<expr::Ast>();
        const std::uint64_t kind = s.bits(ctr++) % 3;
        if (kind == 0) {
            node->kind = expr::NodeKind::Constant;
            node->value = std::floor(s.open01(ctr++) * 1000.0) / 8.0;
        } else {
            node->kind = kind == 1 ? expr::NodeKind::VarT : expr::NodeKind::VarX;
        }
        return node;
    };
    if (depth <= 0 || pick % 8 < 2) return leaf();
    auto node = std::make_unique<expr::Ast>();
    if (pick % 8 < 4) {
        node->kind = expr::NodeKind::Unary;
        node->uop = static_cast<expr::UnaryOp>(s.bits(ctr++) % 5);
        node->lhs = random_tree(s, ctr, depth - 1);
        return node;
    }
    node->kind = expr::NodeKind::Binary;
    const std::uint64_t op = s.bits(ctr++) % 5;
    node->bop = static_cast<expr::BinaryOp>(op);
    node->lhs = random_tree(s, ctr, depth - 1);
    if (node->bop == expr::BinaryOp::Pow) {
        node->exponent = static_cast<int>(s.bits(ctr++) % 7);
    } else {
        node->rhs = random_tree(s, ctr, depth - 1);
    }
    return node;
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
    CHECK(expr::eval(*parse("2*x+1"), 0.0, 3.0) == doctest::Approx(7.0));
    CHECK(expr::eval(*parse("1+2*3"), 0, 0) == doctest::Approx(7.0));
    CHECK(expr::eval(*parse("(1+2)*3"), 0, 0) == doctest::Approx(9.0));
    CHECK(expr::eval(*parse("2-3-4"), 0, 0) == doctest::Approx(-5.0));  // left assoc
    CHECK(expr::eval(*parse("12/3/2"), 0, 0) == doctest::Approx(2.0));
    CHECK(expr::eval(*parse("2+3*4^2"), 0, 0) == doctest::Approx(50.0));
    CHECK(expr::eval(*parse("-x^2"), 0, 2.0) == doctest::Approx(-4.0));  // ^ over unary -
    CHECK(expr::eval(*parse("(-x)^2"), 0, 2.0) == doctest::Approx(4.0));
    CHECK(expr::eval(*parse("x^2"), 0, -2.0) == doctest::Approx(4.0));
    CHECK(expr::eval(*parse("x^0"), 0, -2.0) == doctest::Approx(1.0));
    CHECK(expr::eval(*parse("3.5"), 9, 9) == doctest::Approx(3.5));
    CHECK(expr::eval(*parse("  2 * x  +1 "), 0, 3.0) == doctest::Approx(7.0));
    CHECK(expr::eval(*parse("sin(t)*exp(-x^2)"), 0.0, 5.0) == doctest::Approx(0.0));
    CHECK(expr::eval(*parse("abs(0-x)"), 0.0, -3.0) == doctest::Approx(3.0));
    CHECK(expr::eval(*parse("cos(t)"), 0.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("grammar rejections carry byte offsets") {
    CHECK_THROWS_AS(parse("2*+x"), expr::parse_error);
    try {
        parse("2*+x");
    } catch (const expr::parse_error& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse("2^3^2"), expr::parse_error);   // non-associative
    CHECK_THROWS_AS(parse("x^-2"), expr::parse_error);    // integer exponent only
    CHECK_THROWS_AS(parse("x^2.5"), expr::parse_error);
    CHECK_THROWS_AS(parse("x^y"), expr::parse_error);
    CHECK_THROWS_AS(parse("y+1"), expr::parse_error);     // unknown identifier
    CHECK_THROWS_AS(parse("foo(x)"), expr::parse_error);
    CHECK_THROWS_AS(parse("2*x)"), expr::parse_error);    // trailing input
    CHECK_THROWS_AS(parse("sin x"), expr::parse_error);
    CHECK_THROWS_AS(parse(""), expr::parse_error);
    CHECK_THROWS_AS(parse("(1+2"), expr::parse_error);

    std::string deep;
    for (int i = 0; i < 80; ++i) deep += "(";
    deep += "x";
    for (int i = 0; i < 80; ++i) deep += ")";
    CHECK_THROWS_AS(parse(deep), expr::parse_error);
}

TEST_CASE("evaluation errors instead of non-finite values") {
    CHECK_THROWS_AS(expr::eval(*parse("1/(x-x)"), 0.0, 1.0), expr::eval_error);
    CHECK_THROWS_AS(expr::eval(*parse("exp(x)"), 0.0, 1e9), expr::eval_error);
    CHECK_NOTHROW(expr::eval(*parse("1/(1+x^2)"), 0.0, 3.0));
}

TEST_CASE("evaluation is bitwise deterministic") {
    const auto ast = parse("sin(t)*exp(-x^2)+cos(t*x)/(2+x^2)");
    const double a = expr::eval(*ast, 0.37, -1.25);
    for (int i = 0; i < 5; ++i) CHECK(expr::eval(*ast, 0.37, -1.25) == a);
}

TEST_CASE("pretty-print round trip preserves structure") {
    const rng::CounterStream s(0xE59, 0x1);
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto tree = random_tree(s, ctr, 5);
        const std::string printed = expr::pretty_print(*tree);
        CAPTURE(printed);
        const auto reparsed = parse(printed);
        CHECK(expr::structurally_equal(*tree, *reparsed));
    }
}

TEST_CASE("variable usage scan") {
    CHECK(expr::uses_variable(*parse("sin(t)+x"), 't'));
    CHECK(expr::uses_variable(*parse("sin(t)+x"), 'x'));
    CHECK_FALSE(expr::uses_variable(*parse("exp(-x^2)"), 't'));
}
