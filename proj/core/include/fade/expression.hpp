#pragma once

// Problem-definition expressions g(x), f(x,t). Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | primary ('^' number)*
//   primary:= number | 'x' | 't' | '(' expr ')' | 'exp' '(' expr ')'
//
// Whitespace is ignored and implicit multiplication is not accepted. Exponents
// are nonnegative literals, divisors must be nonzero constants, and exp() only
// takes affine arguments a*x + b*t + c.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fade/errors.hpp"

namespace fade {

class SyntaxError : public DomainError {
public:
    SyntaxError(const std::string& message, std::size_t offset, std::vector<std::string> expected);

    /// Byte offset into the parsed text.
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// c * x^p * t^q
struct Monomial {
    double coefficient;
    double x_power;
    double t_power;
};

/// Canonical sums: terms merged, zero terms dropped, sorted by (x_power, t_power).
using MonomialSum = std::vector<Monomial>;

MonomialSum canonical(MonomialSum terms);

/// Value of a monomial sum at (x, t), with 0^0 = 1.
double evaluate(const MonomialSum& terms, double x, double t);

class Expression {
public:
    enum class Kind { number, x, t, add, sub, mul, div, pow, neg, exp };

    struct Node {
        Kind kind;
        double value = 0.0;  // literal for number, exponent for pow
        int lhs = -1;
        int rhs = -1;
        std::size_t offset = 0;
    };

    /// The constant 0.
    Expression();

    const std::string& text() const { return text_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }

    template <class Real>
    Real evaluate(const Real& x, const Real& t) const {
        return evaluate_node<Real>(root_, x, t);
    }

    /// Builds an expression whose text is the canonical rendering of the sum.
    static Expression from_monomials(const MonomialSum& terms);

private:
    friend Expression parse(std::string_view text);

    template <class Real>
    Real evaluate_node(int index, const Real& x, const Real& t) const {
        using std::exp;
        using std::pow;
        const Node& node = nodes_[index];
        switch (node.kind) {
            case Kind::number: return Real(node.value);
            case Kind::x: return x;
            case Kind::t: return t;
            case Kind::add: return evaluate_node<Real>(node.lhs, x, t) + evaluate_node<Real>(node.rhs, x, t);
            case Kind::sub: return evaluate_node<Real>(node.lhs, x, t) - evaluate_node<Real>(node.rhs, x, t);
            case Kind::mul: return evaluate_node<Real>(node.lhs, x, t) * evaluate_node<Real>(node.rhs, x, t);
            case Kind::div: return evaluate_node<Real>(node.lhs, x, t) / evaluate_node<Real>(node.rhs, x, t);
            case Kind::neg: return -evaluate_node<Real>(node.lhs, x, t);
            case Kind::exp: return Real(exp(evaluate_node<Real>(node.lhs, x, t)));
            case Kind::pow: {
                if (node.value == 0.0) return Real(1);
                return Real(pow(evaluate_node<Real>(node.lhs, x, t), Real(node.value)));
            }
        }
        return Real(0);
    }

    std::string text_;
    std::vector<Node> nodes_;
    int root_ = 0;
};

/// Throws SyntaxError with the byte offset and the set of tokens that would
/// have been accepted there.
Expression parse(std::string_view text);

struct Classification {
    enum class Kind { monomial_sum, general };
    Kind kind = Kind::general;
    MonomialSum terms;

    bool is_monomial_sum() const { return kind == Kind::monomial_sum; }
};

/// MonomialSum iff the tree normalizes to a finite sum of c x^p t^q.
Classification classify(const Expression& e);

/// Double evaluation; throws NumericalError on a non-finite result.
double eval(const Expression& e, double x, double t);

/// Canonical text of a monomial sum, parseable by parse().
std::string to_string(const MonomialSum& terms);

}  // namespace fade
