#include "fade/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "fade/fractional_calculus.hpp"

namespace fade {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

std::string format_double(double v) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

bool same_power(double a, double b) { return std::abs(a - b) <= kExponentTolerance; }

}  // namespace

SyntaxError::SyntaxError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
    : DomainError(message + " at offset " + std::to_string(offset) +
                  (expected.empty() ? std::string() : " (expected " + join(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

MonomialSum canonical(MonomialSum terms) {
    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
        if (!same_power(a.x_power, b.x_power)) return a.x_power < b.x_power;
        if (!same_power(a.t_power, b.t_power)) return a.t_power < b.t_power;
        return false;
    });
    MonomialSum merged;
    for (const auto& term : terms) {
        if (!merged.empty() && same_power(merged.back().x_power, term.x_power) &&
            same_power(merged.back().t_power, term.t_power)) {
            merged.back().coefficient += term.coefficient;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const Monomial& m) { return m.coefficient == 0.0; });
    return merged;
}

double evaluate(const MonomialSum& terms, double x, double t) {
    double sum = 0.0;
    for (const auto& m : terms) {
        const double xp = m.x_power == 0.0 ? 1.0 : std::pow(x, m.x_power);
        const double tp = m.t_power == 0.0 ? 1.0 : std::pow(t, m.t_power);
        sum += m.coefficient * xp * tp;
    }
    return sum;
}

Expression::Expression() : text_("0"), nodes_{Node{Kind::number, 0.0}}, root_(0) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression::Node& node(int i) { return nodes_[i]; }

    int parse_all() {
        const int root = parse_expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'",
                 {"+", "-", "*", "/", "^", "end of input"});
        }
        return root;
    }

    std::vector<Expression::Node> take_nodes() { return std::move(nodes_); }

private:
    using Kind = Expression::Kind;

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        throw SyntaxError(what, pos_, std::move(expected));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Kind kind, std::size_t offset, double value = 0.0, int lhs = -1, int rhs = -1) {
        nodes_.push_back({kind, value, lhs, rhs, offset});
        return static_cast<int>(nodes_.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        while (true) {
            skip_space();
            const std::size_t at = pos_;
            if (accept('+')) {
                lhs = add(Kind::add, at, 0.0, lhs, parse_term());
            } else if (accept('-')) {
                lhs = add(Kind::sub, at, 0.0, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        while (true) {
            skip_space();
            const std::size_t at = pos_;
            if (accept('*')) {
                lhs = add(Kind::mul, at, 0.0, lhs, parse_factor());
            } else if (accept('/')) {
                lhs = add(Kind::div, at, 0.0, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    int parse_factor() {
        skip_space();
        const std::size_t at = pos_;
        if (accept('-')) return add(Kind::neg, at, 0.0, parse_factor());
        int base = parse_primary();
        while (true) {
            skip_space();
            const std::size_t caret = pos_;
            if (!accept('^')) return base;
            skip_space();
            const auto exponent = scan_number();
            if (!exponent) fail("exponent must be a nonnegative number literal", {"number"});
            base = add(Kind::pow, caret, *exponent, base);
        }
    }

    int parse_primary() {
        skip_space();
        const std::size_t at = pos_;
        const std::vector<std::string> starts = {"number", "x", "t", "(", "exp", "-"};
        if (pos_ >= text_.size()) fail("unexpected end of input", starts);
        if (accept('(')) {
            const int inner = parse_expr();
            if (!accept(')')) fail("unbalanced parenthesis", {")", "+", "-", "*", "/", "^"});
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
            const std::string_view word = text_.substr(pos_, end - pos_);
            if (word == "x") {
                pos_ = end;
                return add(Kind::x, at);
            }
            if (word == "t") {
                pos_ = end;
                return add(Kind::t, at);
            }
            if (word == "exp") {
                pos_ = end;
                if (!accept('(')) fail("exp must be followed by a parenthesized argument", {"("});
                const int inner = parse_expr();
                if (!accept(')')) fail("unbalanced parenthesis", {")", "+", "-", "*", "/", "^"});
                return add(Kind::exp, at, 0.0, inner);
            }
            fail("unknown identifier '" + std::string(word) + "'", starts);
        }
        if (const auto value = scan_number()) return add(Kind::number, at, *value);
        fail("unexpected character '" + std::string(1, text_[pos_]) + "'", starts);
    }

    std::optional<double> scan_number() {
        std::size_t end = pos_;
        auto digits = [&] {
            const std::size_t start = end;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
            return end - start;
        };
        std::size_t count = digits();
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            count += digits();
        }
        if (count == 0) return std::nullopt;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t mark = end++;
            if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) ++end;
            if (digits() == 0) end = mark;  // "2e" is the number 2 followed by junk
        }
        double value = 0.0;
        const auto result = std::from_chars(text_.data() + pos_, text_.data() + end, value);
        if (result.ec != std::errc() || result.ptr != text_.data() + end || !std::isfinite(value)) {
            fail("malformed number", {"number"});
        }
        pos_ = end;
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Expression::Node> nodes_;
};

// Normalizes a subtree to a monomial sum; nullopt means "general".
std::optional<MonomialSum> normalize(const std::vector<Expression::Node>& nodes, int index) {
    using Kind = Expression::Kind;
    const auto& node = nodes[index];
    switch (node.kind) {
        case Kind::number: return canonical({{node.value, 0.0, 0.0}});
        case Kind::x: return MonomialSum{{1.0, 1.0, 0.0}};
        case Kind::t: return MonomialSum{{1.0, 0.0, 1.0}};
        case Kind::exp: return std::nullopt;
        case Kind::neg: {
            auto inner = normalize(nodes, node.lhs);
            if (!inner) return std::nullopt;
            for (auto& m : *inner) m.coefficient = -m.coefficient;
            return inner;
        }
        case Kind::add:
        case Kind::sub: {
            auto lhs = normalize(nodes, node.lhs);
            auto rhs = normalize(nodes, node.rhs);
            if (!lhs || !rhs) return std::nullopt;
            for (auto m : *rhs) {
                if (node.kind == Kind::sub) m.coefficient = -m.coefficient;
                lhs->push_back(m);
            }
            return canonical(std::move(*lhs));
        }
        case Kind::mul: {
            auto lhs = normalize(nodes, node.lhs);
            auto rhs = normalize(nodes, node.rhs);
            if (!lhs || !rhs) return std::nullopt;
            MonomialSum out;
            for (const auto& a : *lhs) {
                for (const auto& b : *rhs) {
                    out.push_back({a.coefficient * b.coefficient, a.x_power + b.x_power, a.t_power + b.t_power});
                }
            }
            return canonical(std::move(out));
        }
        case Kind::div: {
            auto lhs = normalize(nodes, node.lhs);
            auto rhs = normalize(nodes, node.rhs);
            if (!lhs || !rhs) return std::nullopt;
            const double divisor = rhs->empty() ? 0.0 : rhs->front().coefficient;
            for (auto& m : *lhs) m.coefficient /= divisor;
            return canonical(std::move(*lhs));
        }
        case Kind::pow: {
            auto base = normalize(nodes, node.lhs);
            if (!base) return std::nullopt;
            const double e = node.value;
            if (e == 0.0) return MonomialSum{{1.0, 0.0, 0.0}};
            if (base->empty()) return MonomialSum{};
            if (base->size() == 1) {
                const auto& m = base->front();
                const bool integral = std::floor(e) == e;
                if (m.coefficient < 0.0 && !integral) return std::nullopt;
                return canonical({{std::pow(m.coefficient, e), m.x_power * e, m.t_power * e}});
            }
            if (std::floor(e) != e || e > 64.0) return std::nullopt;
            MonomialSum out{{1.0, 0.0, 0.0}};
            for (int k = 0; k < static_cast<int>(e); ++k) {
                MonomialSum next;
                for (const auto& a : out) {
                    for (const auto& b : *base) {
                        next.push_back({a.coefficient * b.coefficient, a.x_power + b.x_power,
                                        a.t_power + b.t_power});
                    }
                }
                out = canonical(std::move(next));
            }
            return out;
        }
    }
    return std::nullopt;
}

bool is_constant(const std::optional<MonomialSum>& sum) {
    return sum && std::all_of(sum->begin(), sum->end(), [](const Monomial& m) {
               return m.x_power == 0.0 && m.t_power == 0.0;
           });
}

bool is_affine(const std::optional<MonomialSum>& sum) {
    return sum && std::all_of(sum->begin(), sum->end(), [](const Monomial& m) {
               const bool constant = m.x_power == 0.0 && m.t_power == 0.0;
               const bool linear_x = m.x_power == 1.0 && m.t_power == 0.0;
               const bool linear_t = m.x_power == 0.0 && m.t_power == 1.0;
               return constant || linear_x || linear_t;
           });
}

void validate(const std::vector<Expression::Node>& nodes) {
    using Kind = Expression::Kind;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& node = nodes[i];
        if (node.kind == Kind::div) {
            const auto divisor = normalize(nodes, node.rhs);
            if (!is_constant(divisor)) {
                throw SyntaxError("division is only allowed by constants", node.offset, {"constant divisor"});
            }
            if (divisor->empty()) throw SyntaxError("division by zero", node.offset, {"nonzero divisor"});
        }
        if (node.kind == Kind::exp && !is_affine(normalize(nodes, node.lhs))) {
            throw SyntaxError("exp() argument must be affine in x and t", node.offset, {"a*x + b*t + c"});
        }
    }
}

}  // namespace

Expression parse(std::string_view text) {
    Parser parser(text);
    const int root = parser.parse_all();
    Expression e;
    e.nodes_ = parser.take_nodes();
    e.root_ = root;
    e.text_ = std::string(text);
    validate(e.nodes_);
    return e;
}

Classification classify(const Expression& e) {
    Classification out;
    if (auto sum = normalize(e.nodes(), e.root())) {
        out.kind = Classification::Kind::monomial_sum;
        out.terms = std::move(*sum);
    }
    return out;
}

double eval(const Expression& e, double x, double t) {
    const double value = e.evaluate<double>(x, t);
    if (!std::isfinite(value)) {
        throw NumericalError("expression '" + e.text() + "' is not finite at x = " + format_double(x) +
                             ", t = " + format_double(t));
    }
    return value;
}

std::string to_string(const MonomialSum& terms) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& m = terms[i];
        double c = m.coefficient;
        if (i == 0) {
            if (c < 0.0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0.0 ? " - " : " + ");
            c = std::abs(c);
        }
        out << format_double(c);
        if (m.x_power != 0.0) {
            out << "*x";
            if (m.x_power != 1.0) out << "^" << format_double(m.x_power);
        }
        if (m.t_power != 0.0) {
            out << "*t";
            if (m.t_power != 1.0) out << "^" << format_double(m.t_power);
        }
    }
    return out.str();
}

Expression Expression::from_monomials(const MonomialSum& terms) { return parse(to_string(canonical(terms))); }

}  // namespace fade
