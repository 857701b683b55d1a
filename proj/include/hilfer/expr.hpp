#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hilfer/errors.hpp"

namespace hilfer {

// A small arithmetic expression language for problem data supplied in
// configuration files: psi, f, g, delay maps and bound functions.
//
// Grammar (conventional precedence, '^' right-associative and binding
// tighter than unary minus, no implicit multiplication):
//
//   expr    ::= term { ('+'|'-') term }
//   term    ::= unary { ('*'|'/') unary }
//   unary   ::= '-' unary | power
//   power   ::= atom [ '^' unary ]
//   atom    ::= number | identifier | identifier '(' expr {',' expr} ')'
//             | '(' expr ')'
//
// Known call names: exp ln sin cos tan sqrt abs pow. Constants: pi, e.
// Any other identifier is a free variable.

class Expr {
public:
    enum class Kind { Number, Variable, Constant, Negate, Binary, Call };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        Kind kind;
        double number = 0.0;       // Number
        std::string name;          // Variable / Constant / Call
        char op = 0;               // Binary: + - * / ^
        std::vector<NodePtr> args; // Negate(1), Binary(2), Call(1..2)
    };

    Expr() = default;
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    bool valid() const { return root_ != nullptr; }
    const Node& root() const { return *root_; }
    NodePtr node() const { return root_; }

    // Structural equality (exact: same shape, same literals bit for bit).
    bool structurally_equal(const Expr& other) const;

    // Free variables, sorted and deduplicated.
    std::vector<std::string> free_variables() const;

    static Expr number(double v);
    static Expr variable(std::string name);
    // e1 + e2, used to augment a forcing term with a perturbation.
    static Expr sum(const Expr& e1, const Expr& e2);

private:
    NodePtr root_;
};

using EvalEnv = std::map<std::string, double>;

// Parses source text into an AST. Throws SyntaxError (with byte offset)
// or UnknownIdentifier (unknown function name in call position).
Expr parse(std::string_view source);

// Evaluates with the given variable bindings. Throws UnboundVariable or
// DomainError; never returns NaN silently.
double eval(const Expr& e, const EvalEnv& env);

// Minimal-parenthesis rendering; parse(to_string(e)) is structurally
// identical to e.
std::string to_string(const Expr& e);

} // namespace hilfer
