#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "lightcone/error.hpp"
#include "lightcone/expr.hpp"
#include "support.hpp"

using namespace lightcone;
using lightcone::testing::Rng;

namespace {

constexpr Complex kI{0.0, 1.0};

// Random trees over the full grammar. `entire` restricts to operations that
// are analytic everywhere (no division, log, sqrt).
Expr random_expr(Rng& rng, int depth, bool entire) {
    if (depth == 0 || rng.integer(0, 3) == 0) {
        if (rng.integer(0, 1) == 0) return Expr::variable();
        return Expr::literal(entire ? Complex(rng.uniform(-2, 2), 0.0) : rng.complex(2.0));
    }
    const int pick = rng.integer(0, entire ? 8 : 11);
    auto sub = [&] { return random_expr(rng, depth - 1, entire); };
    switch (pick) {
        case 0: return Expr::binary(Expr::Kind::Add, sub(), sub());
        case 1: return Expr::binary(Expr::Kind::Sub, sub(), sub());
        case 2: return Expr::binary(Expr::Kind::Mul, sub(), sub());
        case 3: return Expr::negate(sub());
        case 4: return Expr::binary(Expr::Kind::Pow, sub(), Expr::literal(double(rng.integer(0, 3))));
        case 5: return Expr::call(Expr::Func::Exp, sub());
        case 6: return Expr::call(Expr::Func::Sin, sub());
        case 7: return Expr::call(Expr::Func::Cosh, sub());
        case 8: return Expr::call(Expr::Func::Cos, sub());
        case 9: return Expr::binary(Expr::Kind::Div, sub(), sub());
        case 10: return Expr::call(Expr::Func::Log, sub());
        default: return Expr::call(Expr::Func::Sqrt, sub());
    }
}

// True when w is within `margin` of a pole, zero of a log/sqrt argument or
// the negative real cut of a principal branch somewhere in the tree; finite
// differences across those points do not approximate the derivative.
bool near_singularity(const Expr& e, Complex w, double margin) {
    switch (e.kind()) {
        case Expr::Kind::Literal:
        case Expr::Kind::Variable: return false;
        case Expr::Kind::Negate: return near_singularity(e.lhs(), w, margin);
        case Expr::Kind::Call: {
            if (near_singularity(e.lhs(), w, margin)) return true;
            if (e.func() == Expr::Func::Log || e.func() == Expr::Func::Sqrt) {
                const Complex a = e.lhs().eval(w);
                return std::abs(a) < margin || (a.real() < 0.0 && std::abs(a.imag()) < margin);
            }
            return false;
        }
        default:
            if (near_singularity(e.lhs(), e.kind() == Expr::Kind::Pow ? w : w, margin) ||
                near_singularity(e.rhs(), w, margin))
                return true;
            if (e.kind() == Expr::Kind::Div) return std::abs(e.rhs().eval(w)) < margin;
            return false;
    }
}

}  // namespace

TEST(Parse, ExpExample) {
    const Expr e = parse("exp(2*i*u)");
    ASSERT_EQ(e.kind(), Expr::Kind::Call);
    EXPECT_EQ(e.func(), Expr::Func::Exp);
    const Expr& mul = e.lhs();
    ASSERT_EQ(mul.kind(), Expr::Kind::Mul);
    EXPECT_EQ(mul.rhs().kind(), Expr::Kind::Variable);
    ASSERT_EQ(mul.lhs().kind(), Expr::Kind::Mul);
    EXPECT_TRUE(mul.lhs().lhs().is_literal(2.0));
    EXPECT_TRUE(mul.lhs().rhs().is_literal(kI));
}

TEST(Parse, SubstitutedParameter) {
    const Expr e = parse("(a-2)/(a+2)", {{"a", 1.5}});
    EXPECT_TRUE(e.is_constant());
    for (Complex w : {Complex(0.0), Complex(3.0, -1.0)}) EXPECT_NEAR(std::abs(e.eval(w) + 1.0 / 7.0), 0.0, 1e-16);
}

TEST(Parse, DoubleCaretFailsAtOffset2) {
    try {
        parse("u^^2");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 2u);
        EXPECT_FALSE(e.expected().empty());
    }
}

TEST(Parse, Errors) {
    for (const char* bad : {"", "u+", "(u", "exp u", "foo(u)", "2*", "u^u", "1..2", "b", "u)"}) {
        EXPECT_THROW(parse(bad), SyntaxError) << bad;
    }
    try {
        parse("exp(u) + (u");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 11u);
    }
}

TEST(Parse, PrecedenceAndAssociativity) {
    EXPECT_NEAR(std::abs(parse("2^3^2").eval(0.0) - 512.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(parse("-2^2").eval(0.0) + 4.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("1-2-3").eval(0.0) + 4.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("8/4/2").eval(0.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse(" 2 *\tu + 1.5e1 ").eval(2.0) - 19.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("2*pi").eval(0.0) - 2.0 * std::numbers::pi), 0.0, 1e-15);
}

TEST(Eval, Examples) {
    EXPECT_NEAR(std::abs(parse("exp(2*i*u)").eval(0.0) - 1.0), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(parse("u^2").eval(Complex(1, 1)) - 2.0 * kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("exp(2*i*u)").eval(kI) - std::exp(-2.0)), 0.0, 1e-16);
}

TEST(Eval, PrincipalBranches) {
    EXPECT_NEAR(std::abs(parse("sqrt(u)").eval(-4.0) - 2.0 * kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("log(u)").eval(-1.0) - std::numbers::pi * kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(parse("u^0.5").eval(-4.0) - 2.0 * kI), 0.0, 1e-15);
}

TEST(Eval, ErrorsCarryArgument) {
    try {
        parse("1/u").eval(0.0);
        FAIL();
    } catch (const EvaluationError& e) {
        EXPECT_EQ(e.at(), Complex(0.0));
    }
    EXPECT_THROW(parse("log(u)").eval(0.0), EvaluationError);
    EXPECT_THROW(parse("u^-1").eval(0.0), EvaluationError);
    EXPECT_NO_THROW(parse("u^2").eval(0.0));
}

TEST(Diff, Examples) {
    Rng rng(3);
    const Expr d = diff(parse("u^2"));
    const Expr ref = parse("2*u");
    for (int k = 0; k < 5; ++k) {
        const Complex w = rng.complex(3.0);
        EXPECT_NEAR(std::abs(d.eval(w) - ref.eval(w)), 0.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(diff(parse("exp(2*i*u)")).eval(0.0) - 2.0 * kI), 0.0, 1e-15);
    const Expr dc = diff(parse("3.5 + 2*i"));
    EXPECT_TRUE(dc.is_literal(0.0));
}

TEST(Diff, AgreesWithFiniteDifferences) {
    Rng rng(17);
    int tested = 0, attempts = 0;
    constexpr double h = 1e-5;
    while (tested < 100) {
        ASSERT_LT(++attempts, 20000) << "generator rarely produced a testable tree";
        const Expr e = random_expr(rng, 4, false);
        const Complex w = rng.complex(1.0);
        if (near_singularity(e, w, 0.05)) continue;
        Complex fd, exact;
        try {
            fd = (e.eval(w + h) - e.eval(w - h)) / (2.0 * h);
            exact = diff(e).eval(w);
        } catch (const EvaluationError&) {
            continue;
        }
        // Keep magnitudes where the absolute 1e-6 bound is meaningful.
        if (!(std::abs(e.eval(w)) < 100.0) || !(std::abs(exact) < 100.0)) continue;
        ASSERT_LE(std::abs(fd - exact), 1e-6) << e.to_string() << " at " << w;
        ++tested;
    }
}

TEST(Print, ParsePrintParseIdempotent) {
    for (const char* s : {"exp(2*i*u)", "(a-2)/(a+2)*exp(2*i*u)", "-i*(a+2)^2/8*exp(-2*i*u)", "u^2", "c*u+i",
                          "sqrt(u)*log(u+2)-sinh(u)/cosh(u)", "-u^-2", "1e-3*u - -2", "2^3^2", "u*(1+u)*(2-u)"}) {
        const Expr first = parse(s, {{"a", 1.5}, {"c", 0.5}});
        const Expr second = parse(first.to_string());
        EXPECT_EQ(first, second) << s << " -> " << first.to_string();
        EXPECT_EQ(second.to_string(), first.to_string());
    }
    Rng rng(21);
    for (int k = 0; k < 200; ++k) {
        const Expr e = random_expr(rng, 4, false);
        const Expr p = parse(e.to_string());
        ASSERT_EQ(parse(p.to_string()), p) << e.to_string();
    }
}

TEST(Eval, RealCoefficientsStayReal) {
    Rng rng(23);
    for (int k = 0; k < 300; ++k) {
        const Expr e = random_expr(rng, 4, true);
        const double u = rng.uniform(-1.5, 1.5);
        const Complex value = e.eval(u);
        ASSERT_LE(std::abs(value.imag()), 1e-14 * std::max(1.0, std::abs(value))) << e.to_string();
    }
}

TEST(Reflection, ConjugateCoefficients) {
    const Expr e = parse("(1+2*i)*exp(i*u) + u^2");
    const Expr r = conjugate_coefficients(e);
    Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        const Complex w = rng.complex(2.0);
        EXPECT_NEAR(std::abs(r.eval(w) - std::conj(e.eval(std::conj(w)))), 0.0, 1e-12);
    }
}

TEST(Folding, Builders) {
    const Expr u = Expr::variable();
    EXPECT_TRUE((Expr::literal(2.0) * Expr::literal(3.0)).is_literal(6.0));
    EXPECT_EQ(u + Expr::literal(0.0), u);
    EXPECT_TRUE((u * Expr::literal(0.0)).is_literal(0.0));
    EXPECT_EQ(u * Expr::literal(1.0), u);
    EXPECT_THROW(Expr::binary(Expr::Kind::Pow, u, u), std::invalid_argument);
}
