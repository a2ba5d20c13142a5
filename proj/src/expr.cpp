#include "lightcone/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "lightcone/error.hpp"

namespace lightcone {

struct Expr::Node {
    Kind kind = Kind::Literal;
    Func func = Func::Exp;
    Complex value{};
    Expr a{Empty{}};
    Expr b{Empty{}};
    bool constant = true;
};

const std::shared_ptr<const Expr::Node>& Expr::zero_node() {
    static const auto n = std::make_shared<const Expr::Node>();
    return n;
}

namespace {

bool is_binary(Expr::Kind k) {
    return k == Expr::Kind::Add || k == Expr::Kind::Sub || k == Expr::Kind::Mul ||
           k == Expr::Kind::Div || k == Expr::Kind::Pow;
}

// Signed zeros would put the branch cut on the wrong side for inputs on the
// negative real axis.
Complex clean_zero(Complex z) {
    return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

bool as_small_integer(Complex c, long& n) {
    if (c.imag() != 0.0) return false;
    const double r = c.real();
    if (!(std::abs(r) <= 64.0) || std::floor(r) != r) return false;
    n = static_cast<long>(r);
    return true;
}

Complex complex_pow(Complex base, Complex exponent, Complex w) {
    long n = 0;
    if (as_small_integer(exponent, n)) {
        // Integer powers are single valued; repeated squaring keeps real
        // inputs exactly real.
        if (n < 0 && base == Complex{}) throw EvaluationError("division by zero in negative power", w);
        Complex result = 1.0;
        Complex sq = base;
        for (long k = std::abs(n); k > 0; k >>= 1) {
            if (k & 1) result *= sq;
            sq *= sq;
        }
        return n < 0 ? 1.0 / result : result;
    }
    if (base == Complex{}) {
        if (exponent.real() > 0.0) return 0.0;
        throw EvaluationError("zero raised to a power with non-positive real part", w);
    }
    return std::exp(exponent * std::log(clean_zero(base)));
}

Complex apply(Expr::Func f, Complex x, Complex w) {
    switch (f) {
        case Expr::Func::Exp: return std::exp(x);
        case Expr::Func::Log:
            if (x == Complex{}) throw EvaluationError("log(0)", w);
            return std::log(clean_zero(x));
        case Expr::Func::Sqrt: return std::sqrt(clean_zero(x));
        case Expr::Func::Sin: return std::sin(x);
        case Expr::Func::Cos: return std::cos(x);
        case Expr::Func::Sinh: return std::sinh(x);
        case Expr::Func::Cosh: return std::cosh(x);
    }
    return {};
}

std::string format_real(double r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    return buf;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}
Expr::Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Expr Expr::literal(Complex value) {
    auto n = std::make_shared<Node>();
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->constant = false;
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->constant = arg.is_constant();
    n->a = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
    if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary operator");
    if (op == Kind::Pow && !rhs.is_constant()) {
        throw std::invalid_argument("Expr::binary: exponent must be constant");
    }
    auto n = std::make_shared<Node>();
    n->kind = op;
    n->constant = lhs.is_constant() && rhs.is_constant();
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->constant = e.is_constant();
    n->a = std::move(e);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
Expr::Func Expr::func() const { return node_->func; }
Complex Expr::value() const { return node_->value; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
bool Expr::is_constant() const { return node_->constant; }
bool Expr::is_literal(Complex v) const { return node_->kind == Kind::Literal && node_->value == v; }

Complex Expr::eval(Complex w) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Literal: return n.value;
        case Kind::Variable: return w;
        case Kind::Negate: return -n.a.eval(w);
        case Kind::Add: return n.a.eval(w) + n.b.eval(w);
        case Kind::Sub: return n.a.eval(w) - n.b.eval(w);
        case Kind::Mul: return n.a.eval(w) * n.b.eval(w);
        case Kind::Div: {
            const Complex num = n.a.eval(w);
            const Complex den = n.b.eval(w);
            if (den == Complex{}) throw EvaluationError("division by zero", w);
            return num / den;
        }
        case Kind::Pow: return complex_pow(n.a.eval(w), n.b.eval(w), w);
        case Kind::Call: return apply(n.func, n.a.eval(w), w);
    }
    return {};
}

std::string Expr::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Literal: {
            const Complex v = n.value;
            if (v == Complex(0.0, 1.0)) return "i";
            if (v.imag() == 0.0) {
                // Parsed literals are never negative; folded ones print as a negation.
                if (std::signbit(v.real())) return "(-" + format_real(-v.real()) + ")";
                return format_real(v.real());
            }
            const char sign = std::signbit(v.imag()) ? '-' : '+';
            return "(" + format_real(v.real()) + sign + format_real(std::abs(v.imag())) + "*i)";
        }
        case Kind::Variable: return "u";
        case Kind::Negate: return "(-" + n.a.to_string() + ")";
        case Kind::Add: return "(" + n.a.to_string() + "+" + n.b.to_string() + ")";
        case Kind::Sub: return "(" + n.a.to_string() + "-" + n.b.to_string() + ")";
        case Kind::Mul: return "(" + n.a.to_string() + "*" + n.b.to_string() + ")";
        case Kind::Div: return "(" + n.a.to_string() + "/" + n.b.to_string() + ")";
        case Kind::Pow: return "(" + n.a.to_string() + "^" + n.b.to_string() + ")";
        case Kind::Call: return std::string(function_name(n.func)) + "(" + n.a.to_string() + ")";
    }
    return {};
}

bool operator==(const Expr& x, const Expr& y) {
    if (x.node_ == y.node_) return true;
    const Expr::Node& a = *x.node_;
    const Expr::Node& b = *y.node_;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Literal: return a.value == b.value;
        case Expr::Kind::Variable: return true;
        case Expr::Kind::Negate: return a.a == b.a;
        case Expr::Kind::Call: return a.func == b.func && a.a == b.a;
        default: return a.a == b.a && a.b == b.b;
    }
}

std::string_view function_name(Expr::Func f) {
    switch (f) {
        case Expr::Func::Exp: return "exp";
        case Expr::Func::Log: return "log";
        case Expr::Func::Sqrt: return "sqrt";
        case Expr::Func::Sin: return "sin";
        case Expr::Func::Cos: return "cos";
        case Expr::Func::Sinh: return "sinh";
        case Expr::Func::Cosh: return "cosh";
    }
    return {};
}

Complex eval(const Expr& e, Complex w) { return e.eval(w); }

// ---------------------------------------------------------------------------
// Parser

namespace {

const std::vector<std::string>& atom_tokens() {
    static const std::vector<std::string> t{"number", "'i'", "'u'", "'pi'", "function", "parameter",
                                            "'('", "'-'"};
    return t;
}

class Parser {
public:
    Parser(std::string_view text, const ParameterMap& params) : text_(text), params_(params) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) {
            fail(std::string("unexpected '") + text_[pos_] + "'",
                 {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        throw SyntaxError("syntax error at offset " + std::to_string(pos_) + ": " + what, pos_,
                          std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\n' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Kind::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Kind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(Expr::Kind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            Expr exponent = parse_unary();
            if (!exponent.is_constant()) {
                pos_ = at;
                fail("exponent must be a constant expression", {"constant expression"});
            }
            return Expr::binary(Expr::Kind::Pow, base, exponent);
        }
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input", atom_tokens());
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail("missing ')'", {"')'"});
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail(std::string("unexpected '") + c + "'", atom_tokens());
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number", {"digit"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark + 1;
                fail("malformed exponent", {"digit"});
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{}) {
            pos_ = start;
            fail("number out of range", {"number"});
        }
        return Expr::literal(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        static const std::pair<std::string_view, Expr::Func> funcs[] = {
            {"exp", Expr::Func::Exp},   {"log", Expr::Func::Log}, {"sqrt", Expr::Func::Sqrt},
            {"sin", Expr::Func::Sin},   {"cos", Expr::Func::Cos}, {"sinh", Expr::Func::Sinh},
            {"cosh", Expr::Func::Cosh},
        };
        for (const auto& [fname, f] : funcs) {
            if (name == fname) {
                if (!accept('(')) fail("expected '(' after " + std::string(name), {"'('"});
                Expr arg = parse_expr();
                if (!accept(')')) fail("missing ')'", {"')'"});
                return Expr::call(f, arg);
            }
        }
        if (name == "u") return Expr::variable();
        if (name == "i") return Expr::literal({0.0, 1.0});
        if (name == "pi") return Expr::literal(std::numbers::pi);
        if (auto it = params_.find(name); it != params_.end()) return Expr::literal(it->second);
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'", atom_tokens());
    }

    std::string_view text_;
    const ParameterMap& params_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParameterMap& params) { return Parser(text, params).parse_all(); }

// ---------------------------------------------------------------------------
// Folding builders

Expr operator+(const Expr& a, const Expr& b) {
    if (a.kind() == Expr::Kind::Literal && b.kind() == Expr::Kind::Literal) return Expr::literal(a.value() + b.value());
    if (a.is_literal(0.0)) return b;
    if (b.is_literal(0.0)) return a;
    return Expr::binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.kind() == Expr::Kind::Literal && b.kind() == Expr::Kind::Literal) return Expr::literal(a.value() - b.value());
    if (b.is_literal(0.0)) return a;
    if (a.is_literal(0.0)) return -b;
    return Expr::binary(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.kind() == Expr::Kind::Literal && b.kind() == Expr::Kind::Literal) return Expr::literal(a.value() * b.value());
    if (a.is_literal(0.0) || b.is_literal(0.0)) return Expr::literal(0.0);
    if (a.is_literal(1.0)) return b;
    if (b.is_literal(1.0)) return a;
    return Expr::binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.kind() == Expr::Kind::Literal && b.kind() == Expr::Kind::Literal && b.value() != Complex{}) {
        return Expr::literal(a.value() / b.value());
    }
    if (b.is_literal(1.0)) return a;
    return Expr::binary(Expr::Kind::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.kind() == Expr::Kind::Literal) return Expr::literal(-a.value());
    if (a.kind() == Expr::Kind::Negate) return a.lhs();
    return Expr::negate(a);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_literal(1.0)) return base;
    if (exponent.is_literal(0.0)) return Expr::literal(1.0);
    return Expr::binary(Expr::Kind::Pow, base, exponent);
}

Expr exp(const Expr& e) { return Expr::call(Expr::Func::Exp, e); }

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Literal: return Expr::literal(0.0);
        case K::Variable: return Expr::literal(1.0);
        case K::Negate: return -diff(e.lhs());
        case K::Add: return diff(e.lhs()) + diff(e.rhs());
        case K::Sub: return diff(e.lhs()) - diff(e.rhs());
        case K::Mul: return diff(e.lhs()) * e.rhs() + e.lhs() * diff(e.rhs());
        case K::Div: {
            const Expr& f = e.lhs();
            const Expr& g = e.rhs();
            if (g.is_constant()) return diff(f) / g;
            return (diff(f) * g - f * diff(g)) / (g * g);
        }
        case K::Pow: {
            const Expr& f = e.lhs();
            const Expr& c = e.rhs();
            if (f.is_constant()) return Expr::literal(0.0);
            return c * pow(f, c - Expr::literal(1.0)) * diff(f);
        }
        case K::Call: {
            const Expr& f = e.lhs();
            const Expr df = diff(f);
            switch (e.func()) {
                case Expr::Func::Exp: return e * df;
                case Expr::Func::Log: return df / f;
                case Expr::Func::Sqrt: return df / (Expr::literal(2.0) * e);
                case Expr::Func::Sin: return Expr::call(Expr::Func::Cos, f) * df;
                case Expr::Func::Cos: return -(Expr::call(Expr::Func::Sin, f) * df);
                case Expr::Func::Sinh: return Expr::call(Expr::Func::Cosh, f) * df;
                case Expr::Func::Cosh: return Expr::call(Expr::Func::Sinh, f) * df;
            }
        }
    }
    return Expr::literal(0.0);
}

Expr conjugate_coefficients(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Literal: return Expr::literal(std::conj(e.value()));
        case K::Variable: return e;
        case K::Negate: return Expr::negate(conjugate_coefficients(e.lhs()));
        case K::Call: return Expr::call(e.func(), conjugate_coefficients(e.lhs()));
        default:
            return Expr::binary(e.kind(), conjugate_coefficients(e.lhs()), conjugate_coefficients(e.rhs()));
    }
}

}  // namespace lightcone
