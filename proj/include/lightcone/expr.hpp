#pragma once

// Analytic expressions in one variable `u`. Evaluating at complex w = u + iv
// is how curve data gets analytically extended off the real axis.
//
// Grammar (low to high precedence):
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?          right associative
//   atom  := number | 'i' | 'u' | 'pi' | name | func '(' expr ')' | '(' expr ')'
//   func  := exp | log | sqrt | sin | cos | sinh | cosh
//
// `name` is looked up in the parameter map passed to parse() and becomes a
// literal. Exponents must be constant.

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace lightcone {

using Complex = std::complex<double>;

class Expr {
public:
    enum class Kind { Literal, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
    enum class Func { Exp, Log, Sqrt, Sin, Cos, Sinh, Cosh };

    Expr();  // literal 0

    static Expr literal(Complex value);
    static Expr variable();
    static Expr call(Func f, Expr arg);
    // Raw node constructors; no folding. Pow requires a constant exponent.
    static Expr binary(Kind op, Expr lhs, Expr rhs);
    static Expr negate(Expr e);

    Kind kind() const;
    Func func() const;               // Call only
    Complex value() const;           // Literal only
    const Expr& lhs() const;         // binary ops, Negate, Call
    const Expr& rhs() const;         // binary ops

    bool is_constant() const;        // contains no Variable
    bool is_literal(Complex v) const;

    // Principal branches; throws EvaluationError on division by zero, log(0)
    // and 0 raised to a power with non-positive real part.
    Complex eval(Complex w) const;

    // Fully parenthesized; parse(to_string()) reproduces a parsed tree.
    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    struct Empty {};
    explicit Expr(Empty) {}
    explicit Expr(std::shared_ptr<const Node> n);
    static const std::shared_ptr<const Node>& zero_node();
    std::shared_ptr<const Node> node_;
};

using ParameterMap = std::map<std::string, double, std::less<>>;

// Throws SyntaxError carrying the byte offset and the expected-token set.
Expr parse(std::string_view text, const ParameterMap& params = {});

Complex eval(const Expr& e, Complex w);

// Symbolic derivative d/du.
Expr diff(const Expr& e);

// Schwarz reflection: the expression whose values are conj(e(conj w)).
// For data given on the real axis this is the analytic extension of conj(e).
Expr conjugate_coefficients(const Expr& e);

// Builders with constant folding (literal-literal arithmetic, additive zero,
// multiplicative zero and one).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& e);

std::string_view function_name(Expr::Func f);

}  // namespace lightcone
