#pragma once

#include "rmap/jet.hpp"
#include "rmap/types.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rmap::expr {

struct Node;

/// Immutable scalar expression over a fixed list of coordinate names.
///
/// Grammar (whitespace insignificant):
///
///     expr   := term (('+' | '-') term)*
///     term   := factor (('*' | '/') factor)*
///     factor := '-' factor | power
///     power  := atom ('^' factor)?
///     atom   := number | name | name '(' expr ')' | '(' expr ')'
///
/// so `^` binds tighter than unary minus (`-x^2` is `-(x^2)`) and is
/// right-associative. Functions: sin cos tan exp log sqrt sinh cosh. The only
/// named constant is `pi`. Integer literal exponents are evaluated by repeated
/// multiplication; any other exponent needs a positive base.
///
/// Copies share the tree, so an Expr is cheap to pass by value and safe to
/// evaluate from several threads at once.
class Expr {
public:
    Expr() = default;

    // Coordinate names this expression was parsed against.
    const std::vector<std::string>& coords() const;
    std::size_t arity() const { return coords_ ? coords_->size() : 0; }
    bool empty() const { return root_ == nullptr; }

    double value(std::span<const double> point) const;
    ScalarJet2 jet(std::span<const double> point) const;
    ScalarJet2 jet(std::span<const double> point, DerivativeMode mode) const;

    // Fully parenthesised text that parses back to an equivalent tree.
    std::string to_string() const;

    // True when the expression contains no coordinate references.
    bool is_constant() const;

    const Node& root() const { return *root_; }

private:
    friend Expr parse(std::string_view, std::span<const std::string>);

    Expr(std::shared_ptr<const Node> root, std::shared_ptr<const std::vector<std::string>> coords)
        : root_(std::move(root)), coords_(std::move(coords)) {}

    std::shared_ptr<const Node> root_;
    std::shared_ptr<const std::vector<std::string>> coords_;
};

// Throws ParseError (with byte offset) or UnknownIdentifierError.
Expr parse(std::string_view source, std::span<const std::string> coords);

inline Expr parse(std::string_view source, const std::vector<std::string>& coords) {
    return parse(source, std::span<const std::string>(coords));
}

// Value, gradient and Hessian by forward propagation. Throws DomainError.
ScalarJet2 eval_jet(const Expr& e, std::span<const double> point);

// Cheap value-only path; equals eval_jet(e, p).value().
double eval_value(const Expr& e, std::span<const double> point);

// Steps used by the finite-difference evaluation mode.
struct FiniteDifferenceSteps {
    double gradient = 1e-5;
    double hessian = 1e-4;
};

// Central-difference jet built only from eval_value.
ScalarJet2 eval_jet_fd(const Expr& e, std::span<const double> point,
                       FiniteDifferenceSteps steps = {});

// -- tree ---------------------------------------------------------------------

enum class UnaryOp { Negate, Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Node {
    struct Constant {
        double value;
        std::string name;  // "pi", or empty for literals
    };
    struct Variable {
        std::size_t index;
    };
    struct Unary {
        UnaryOp op;
        std::shared_ptr<const Node> operand;
    };
    struct Binary {
        BinaryOp op;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    struct IntegerPower {
        std::shared_ptr<const Node> base;
        long exponent;
    };

    std::variant<Constant, Variable, Unary, Binary, IntegerPower> data;
    std::size_t offset = 0;  // source position, for diagnostics
};

std::string_view function_name(UnaryOp op);

}  // namespace rmap::expr
