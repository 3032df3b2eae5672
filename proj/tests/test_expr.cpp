#include <catch2/catch_amalgamated.hpp>

#include "zetafrac/errors.hpp"
#include "zetafrac/expr.hpp"

using namespace zetafrac;

namespace {

// 50-digit references computed with an independent arbitrary-precision tool.
const hp REF_LOG2_2PI("0.11031780007632579669822821605899884549134487436483");
const hp REF_SQRT2("1.4142135623730950488016887242096980785696718753769");
const hp REF_PI("3.1415926535897932384626433832795028841971693993751");
const hp REF_MIX("0.15368999961803284424289929868637709567064099700009");

bool close40(const hp& a, const hp& b) {
    return abs(a - b) <= abs(b) * hp("1e-40");
}

}

TEST_CASE("literals and operators", "[expr]") {
    REQUIRE(Expr("1").eval() == 1.0);
    REQUIRE(Expr("1+2*3").eval() == 7.0);
    REQUIRE(Expr("(1+2)*3").eval() == 9.0);
    REQUIRE(Expr("2-3-4").eval() == -5.0);
    REQUIRE(Expr("12/3/2").eval() == 2.0);
    REQUIRE(Expr("-2*-3").eval() == 6.0);
    REQUIRE(Expr("- -2").eval() == 2.0);
    REQUIRE(Expr("1e-3").eval() == 1e-3);
    REQUIRE(Expr("2.5E+2").eval() == 250.0);
    REQUIRE(Expr(".5").eval() == 0.5);
    REQUIRE(Expr(" 1 + 2 ").eval() == 3.0);
}

TEST_CASE("named constants and functions to 40 digits", "[expr]") {
    REQUIRE(close40(Expr("pi").eval_hp(), REF_PI));
    REQUIRE(close40(Expr("sqrt(2)").eval_hp(), REF_SQRT2));
    REQUIRE(close40(Expr("log(2)/(2*pi)").eval_hp(), REF_LOG2_2PI));
    REQUIRE(close40(Expr("(3*log(5))/(10*pi)").eval_hp(), REF_MIX));
    REQUIRE(Expr("log(1)").eval_hp() == 0);
}

TEST_CASE("free variable binding", "[expr]") {
    Expr f("1/sqrt(n)", "n");
    REQUIRE(f.eval(4.0) == 0.5);
    REQUIRE(f.eval_hp(hp(9)) == hp(1) / 3);
    Expr g("n*n - 2*n + 1", "n");
    REQUIRE(g.eval(5.0) == 16.0);
}

TEST_CASE("errors carry positions", "[expr]") {
    auto expect_fail = [](const std::string& src, const std::string& needle,
                          const std::string& var = "") {
        try {
            Expr e(src, var);
            if (!var.empty()) e.eval(1.0); else e.eval();
            FAIL("no error raised for: " << src);
        } catch (const Error& err) {
            REQUIRE(err.kind() == ErrorKind::usage);
            REQUIRE(std::string(err.what()).find(needle) != std::string::npos);
            REQUIRE(std::string(err.what()).find("position") != std::string::npos);
        }
    };
    expect_fail("1+", "unexpected end");
    expect_fail("(1+2", "expected ')'");
    expect_fail("1+2)", "trailing input");
    expect_fail("bogus", "unknown name");
    expect_fail("n+1", "unknown name");
    expect_fail("1/0", "division by zero");
    expect_fail("log(0)", "log of nonpositive");
    expect_fail("log(1-2)", "log of nonpositive");
    expect_fail("sqrt(0-4)", "sqrt of negative");
    expect_fail("1..2", "trailing input");
    expect_fail("log 2", "expected '('");

    try {
        Expr e("5bogus");
        FAIL("no error raised");
    } catch (const Error& err) {
        std::string msg = err.what();
        REQUIRE(msg.find("position 2") != std::string::npos);
    }
}
