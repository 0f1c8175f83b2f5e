#include "rmap/expr.hpp"

#include "rmap/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <type_traits>

namespace rmap::expr {
namespace {

using NodePtr = std::shared_ptr<const Node>;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr long kMaxRepeatedExponent = 64;

NodePtr make(Node::Constant c, std::size_t offset) {
    return std::make_shared<const Node>(Node{std::move(c), offset});
}
NodePtr make(Node::Variable v, std::size_t offset) {
    return std::make_shared<const Node>(Node{v, offset});
}
NodePtr make(Node::Unary u, std::size_t offset) {
    return std::make_shared<const Node>(Node{std::move(u), offset});
}
NodePtr make(Node::Binary b, std::size_t offset) {
    return std::make_shared<const Node>(Node{std::move(b), offset});
}
NodePtr make(Node::IntegerPower p, std::size_t offset) {
    return std::make_shared<const Node>(Node{std::move(p), offset});
}

// Integer literal exponent, optionally negated: `2`, `-3`, `(-1)` after parsing.
std::optional<long> integer_literal(const Node& node) {
    if (const auto* c = std::get_if<Node::Constant>(&node.data)) {
        if (!c->name.empty() || c->value != std::floor(c->value) ||
            std::abs(c->value) > static_cast<double>(kMaxRepeatedExponent)) {
            return std::nullopt;
        }
        return static_cast<long>(c->value);
    }
    if (const auto* u = std::get_if<Node::Unary>(&node.data); u && u->op == UnaryOp::Negate) {
        if (auto inner = integer_literal(*u->operand)) {
            return -*inner;
        }
    }
    return std::nullopt;
}

std::optional<UnaryOp> lookup_function(std::string_view name) {
    static constexpr std::pair<std::string_view, UnaryOp> table[] = {
        {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
        {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt},
        {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh},
    };
    for (const auto& [key, op] : table) {
        if (key == name) {
            return op;
        }
    }
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> coords) : src_(src), coords_(coords) {}

    NodePtr parse() {
        auto root = expression();
        skip_space();
        if (pos_ != src_.size()) {
            throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
        }
        return root;
    }

private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) {
                throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
            }
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr expression() {
        auto lhs = term();
        for (;;) {
            const auto at = (skip_space(), pos_);
            if (accept('+')) {
                lhs = make(Node::Binary{BinaryOp::Add, lhs, term()}, at);
            } else if (accept('-')) {
                lhs = make(Node::Binary{BinaryOp::Sub, lhs, term()}, at);
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = factor();
        for (;;) {
            const auto at = (skip_space(), pos_);
            if (accept('*')) {
                lhs = make(Node::Binary{BinaryOp::Mul, lhs, factor()}, at);
            } else if (accept('/')) {
                lhs = make(Node::Binary{BinaryOp::Div, lhs, factor()}, at);
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor() {
        const auto at = (skip_space(), pos_);
        if (accept('-')) {
            return make(Node::Unary{UnaryOp::Negate, factor()}, at);
        }
        return power();
    }

    NodePtr power() {
        auto base = atom();
        const auto at = (skip_space(), pos_);
        if (!accept('^')) {
            return base;
        }
        auto exponent = factor();
        if (auto n = integer_literal(*exponent)) {
            return make(Node::IntegerPower{base, *n}, at);
        }
        return make(Node::Binary{BinaryOp::Pow, base, exponent}, at);
    }

    NodePtr atom() {
        skip_space();
        const auto at = pos_;
        if (pos_ >= src_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return name();
        }
        if (accept('(')) {
            auto inner = expression();
            expect(')');
            return inner;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", at);
    }

    NodePtr number() {
        const auto start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            auto save = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                digits();
            } else {
                pos_ = save;
            }
        }
        double value = 0.0;
        const auto* first = src_.data() + start;
        const auto* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError("malformed number '" + std::string(first, last) + "'", start);
        }
        return make(Node::Constant{value, {}}, start);
    }

    NodePtr name() {
        const auto start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string ident(src_.substr(start, pos_ - start));

        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            auto op = lookup_function(ident);
            if (!op) {
                throw UnknownIdentifierError(ident, start);
            }
            expect('(');
            auto arg = expression();
            expect(')');
            return make(Node::Unary{*op, arg}, start);
        }
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == ident) {
                return make(Node::Variable{i}, start);
            }
        }
        if (ident == "pi") {
            return make(Node::Constant{std::numbers::pi, "pi"}, start);
        }
        throw UnknownIdentifierError(ident, start);
    }

    std::string_view src_;
    std::span<const std::string> coords_;
    std::size_t pos_ = 0;
};

// -- printing -----------------------------------------------------------------

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print(const Node& node, const std::vector<std::string>& coords, std::string& out) {
    std::visit(Overloaded{
                   [&](const Node::Constant& c) { out += c.name.empty() ? format_number(c.value) : c.name; },
                   [&](const Node::Variable& v) { out += coords.at(v.index); },
                   [&](const Node::Unary& u) {
                       if (u.op == UnaryOp::Negate) {
                           out += "(-";
                           print(*u.operand, coords, out);
                           out += ')';
                       } else {
                           out += function_name(u.op);
                           out += '(';
                           print(*u.operand, coords, out);
                           out += ')';
                       }
                   },
                   [&](const Node::Binary& b) {
                       static constexpr char symbols[] = {'+', '-', '*', '/', '^'};
                       out += '(';
                       print(*b.lhs, coords, out);
                       out += ' ';
                       out += symbols[static_cast<int>(b.op)];
                       out += ' ';
                       print(*b.rhs, coords, out);
                       out += ')';
                   },
                   [&](const Node::IntegerPower& p) {
                       out += '(';
                       print(*p.base, coords, out);
                       out += " ^ ";
                       out += p.exponent < 0 ? "(" + std::to_string(p.exponent) + ")" : std::to_string(p.exponent);
                       out += ')';
                   },
               },
               node.data);
}

// -- evaluation ---------------------------------------------------------------

template <class S>
double value_of(const S& s) {
    if constexpr (std::is_same_v<S, double>) {
        return s;
    } else {
        return s.value();
    }
}

template <class S>
S apply(const S& u, double f, double df, double d2f) {
    if constexpr (std::is_same_v<S, double>) {
        (void)u, (void)df, (void)d2f;
        return f;
    } else {
        return u.chain(f, df, d2f);
    }
}

template <class S>
class Evaluator {
public:
    Evaluator(std::span<const double> point, const std::vector<std::string>& coords)
        : point_(point), coords_(coords) {}

    S eval(const Node& node) const {
        return std::visit(Overloaded{
                              [&](const Node::Constant& c) { return constant(c.value); },
                              [&](const Node::Variable& v) { return variable(v.index); },
                              [&](const Node::Unary& u) { return unary(node, u); },
                              [&](const Node::Binary& b) { return binary(node, b); },
                              [&](const Node::IntegerPower& p) { return integer_power(node, p); },
                          },
                          node.data);
    }

private:
    static constexpr bool kJet = !std::is_same_v<S, double>;

    S constant(double c) const {
        if constexpr (kJet) {
            return ScalarJet2::constant(c, point_.size());
        } else {
            return c;
        }
    }

    S variable(std::size_t index) const {
        if constexpr (kJet) {
            return ScalarJet2::variable(point_[index], index, point_.size());
        } else {
            return point_[index];
        }
    }

    [[noreturn]] void domain_error(const Node& node, const std::string& what, double arg) const {
        std::string text;
        print(node, coords_, text);
        throw DomainError(what + " (argument " + format_number(arg) + ") in '" + text + "' at offset " +
                          std::to_string(node.offset));
    }

    S reciprocal(const Node& node, const S& u) const {
        const double x = value_of(u);
        if (x == 0.0) {
            domain_error(node, "division by zero", x);
        }
        return apply(u, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
    }

    S unary(const Node& node, const Node::Unary& un) const {
        const S u = eval(*un.operand);
        const double x = value_of(u);
        switch (un.op) {
            case UnaryOp::Negate:
                return -u;
            case UnaryOp::Sin:
                return apply(u, std::sin(x), std::cos(x), -std::sin(x));
            case UnaryOp::Cos:
                return apply(u, std::cos(x), -std::sin(x), -std::cos(x));
            case UnaryOp::Tan: {
                // x within rounding of an odd multiple of pi/2
                const double c = std::cos(x);
                if (std::abs(c) < 1e-15) {
                    domain_error(node, "tan at a pole", x);
                }
                const double t = std::tan(x);
                const double sec2 = 1.0 / (c * c);
                return apply(u, t, sec2, 2.0 * t * sec2);
            }
            case UnaryOp::Exp: {
                const double e = std::exp(x);
                return apply(u, e, e, e);
            }
            case UnaryOp::Log:
                if (!(x > 0.0)) {
                    domain_error(node, "log of non-positive value", x);
                }
                return apply(u, std::log(x), 1.0 / x, -1.0 / (x * x));
            case UnaryOp::Sqrt: {
                if (x < 0.0 || (kJet && x == 0.0) || std::isnan(x)) {
                    domain_error(node, kJet ? "sqrt needs a positive argument for derivatives"
                                            : "sqrt of negative value",
                                 x);
                }
                const double r = std::sqrt(x);
                if constexpr (kJet) {
                    return apply(u, r, 0.5 / r, -0.25 / (r * x));
                } else {
                    return r;
                }
            }
            case UnaryOp::Sinh:
                return apply(u, std::sinh(x), std::cosh(x), std::sinh(x));
            case UnaryOp::Cosh:
                return apply(u, std::cosh(x), std::sinh(x), std::cosh(x));
        }
        return u;
    }

    S binary(const Node& node, const Node::Binary& b) const {
        const S lhs = eval(*b.lhs);
        const S rhs = eval(*b.rhs);
        switch (b.op) {
            case BinaryOp::Add:
                return lhs + rhs;
            case BinaryOp::Sub:
                return lhs - rhs;
            case BinaryOp::Mul:
                return lhs * rhs;
            case BinaryOp::Div:
                return lhs * reciprocal(node, rhs);
            case BinaryOp::Pow: {
                const double base = value_of(lhs);
                if (!(base > 0.0)) {
                    domain_error(node, "non-integer power needs a positive base", base);
                }
                if constexpr (kJet) {
                    // base^e = exp(e log base)
                    const S log_base = apply(lhs, std::log(base), 1.0 / base, -1.0 / (base * base));
                    const S product = rhs * log_base;
                    const double v = std::exp(value_of(product));
                    return apply(product, v, v, v);
                } else {
                    return std::pow(base, rhs);
                }
            }
        }
        return lhs;
    }

    S integer_power(const Node& node, const Node::IntegerPower& p) const {
        const S base = eval(*p.base);
        const long n = p.exponent < 0 ? -p.exponent : p.exponent;
        S result = constant(1.0);
        if (n > 0) {
            result = base;
            for (long i = 1; i < n; ++i) {
                result = result * base;
            }
        }
        return p.exponent < 0 ? reciprocal(node, result) : result;
    }

    std::span<const double> point_;
    const std::vector<std::string>& coords_;
};

void check_arity(const Expr& e, std::span<const double> point) {
    if (e.empty()) {
        throw PreconditionError("evaluating an empty expression");
    }
    if (point.size() != e.arity()) {
        throw PreconditionError("point has " + std::to_string(point.size()) + " entries, expression expects " +
                                std::to_string(e.arity()));
    }
}

bool references_variable(const Node& node) {
    return std::visit(Overloaded{
                          [](const Node::Constant&) { return false; },
                          [](const Node::Variable&) { return true; },
                          [](const Node::Unary& u) { return references_variable(*u.operand); },
                          [](const Node::Binary& b) { return references_variable(*b.lhs) || references_variable(*b.rhs); },
                          [](const Node::IntegerPower& p) { return references_variable(*p.base); },
                      },
                      node.data);
}

}  // namespace

std::string_view function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Negate: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Tan: return "tan";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Sinh: return "sinh";
        case UnaryOp::Cosh: return "cosh";
    }
    return "?";
}

Expr parse(std::string_view source, std::span<const std::string> coords) {
    auto names = std::make_shared<const std::vector<std::string>>(coords.begin(), coords.end());
    Parser parser(source, *names);
    return Expr(parser.parse(), std::move(names));
}

const std::vector<std::string>& Expr::coords() const {
    static const std::vector<std::string> none;
    return coords_ ? *coords_ : none;
}

double Expr::value(std::span<const double> point) const { return eval_value(*this, point); }

ScalarJet2 Expr::jet(std::span<const double> point) const { return eval_jet(*this, point); }

ScalarJet2 Expr::jet(std::span<const double> point, DerivativeMode mode) const {
    return mode == DerivativeMode::Jets ? eval_jet(*this, point) : eval_jet_fd(*this, point);
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) {
        print(*root_, *coords_, out);
    }
    return out;
}

bool Expr::is_constant() const { return !root_ || !references_variable(*root_); }

double eval_value(const Expr& e, std::span<const double> point) {
    check_arity(e, point);
    return Evaluator<double>(point, e.coords()).eval(e.root());
}

ScalarJet2 eval_jet(const Expr& e, std::span<const double> point) {
    check_arity(e, point);
    return Evaluator<ScalarJet2>(point, e.coords()).eval(e.root());
}

ScalarJet2 eval_jet_fd(const Expr& e, std::span<const double> point, FiniteDifferenceSteps steps) {
    check_arity(e, point);
    const std::size_t n = point.size();
    std::vector<double> x(point.begin(), point.end());
    auto f = [&] { return eval_value(e, x); };

    const double f0 = f();
    Vector grad(static_cast<Eigen::Index>(n));
    Matrix hess(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    const double hg = steps.gradient;
    const double hh = steps.hessian;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        x[i] = xi + hg;
        const double gp = f();
        x[i] = xi - hg;
        const double gm = f();
        x[i] = xi + hh;
        const double hp = f();
        x[i] = xi - hh;
        const double hm = f();
        x[i] = xi;
        const auto ii = static_cast<Eigen::Index>(i);
        grad(ii) = (gp - gm) / (2.0 * hg);
        hess(ii, ii) = (hp - 2.0 * f0 + hm) / (hh * hh);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double xi = x[i];
            const double xj = x[j];
            auto at = [&](double si, double sj) {
                x[i] = xi + si * hh;
                x[j] = xj + sj * hh;
                return f();
            };
            const double fpp = at(1, 1);
            const double fpm = at(1, -1);
            const double fmp = at(-1, 1);
            const double fmm = at(-1, -1);
            x[i] = xi;
            x[j] = xj;
            const double h = ((fpp - fpm) - (fmp - fmm)) / (4.0 * hh * hh);
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            hess(ii, jj) = h;
            hess(jj, ii) = h;
        }
    }
    return ScalarJet2::from_parts(f0, std::move(grad), std::move(hess));
}

}  // namespace rmap::expr
