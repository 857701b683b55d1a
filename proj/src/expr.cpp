#include "hilfer/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>

namespace hilfer {

namespace {

const std::set<std::string> kFunctions = {
    "exp", "ln", "sin", "cos", "tan", "sqrt", "abs", "pow"};

bool is_constant_name(const std::string& s) { return s == "pi" || s == "e"; }

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(pos, what);
    }

    Expr::NodePtr make(Expr::Kind k) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        return n;
    }

    Expr::NodePtr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos;
            auto rhs = parse_term();
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Binary;
            n->op = c;
            n->args = {lhs, rhs};
            lhs = n;
        }
    }

    Expr::NodePtr parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos;
            auto rhs = parse_unary();
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Binary;
            n->op = c;
            n->args = {lhs, rhs};
            lhs = n;
        }
    }

    // Unary minus binds looser than '^': -x^2 parses as -(x^2).
    Expr::NodePtr parse_unary() {
        if (accept('-')) {
            skip_ws();
            // '-' directly on a literal folds into a signed number, so
            // negative literals round-trip; '^' still wins: -3^2 = -(3^2).
            if (pos < src.size() &&
                (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.')) {
                auto num = parse_number();
                if (peek() != '^') {
                    auto m = std::make_shared<Expr::Node>();
                    m->kind = Expr::Kind::Number;
                    m->number = -num->number;
                    return m;
                }
                ++pos;
                auto p = std::make_shared<Expr::Node>();
                p->kind = Expr::Kind::Binary;
                p->op = '^';
                p->args = {std::move(num), parse_unary()};
                auto n = std::make_shared<Expr::Node>();
                n->kind = Expr::Kind::Negate;
                n->args = {p};
                return n;
            }
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Negate;
            n->args = {parse_unary()};
            return n;
        }
        return parse_power();
    }

    Expr::NodePtr parse_power() {
        auto base = parse_atom();
        if (accept('^')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Binary;
            n->op = '^';
            n->args = {base, parse_unary()}; // right-associative
            return n;
        }
        return base;
    }

    Expr::NodePtr parse_atom() {
        skip_ws();
        if (pos >= src.size()) throw SyntaxError(pos, "number, identifier or '('");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            auto inner = parse_expr();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw SyntaxError(pos, "number, identifier or '('");
    }

    Expr::NodePtr parse_number() {
        const char* begin = src.data() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError(pos, "number");
        pos += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Kind::Number;
        n->number = v;
        return n;
    }

    Expr::NodePtr parse_ident() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name(src.substr(start, pos - start));
        auto n = std::make_shared<Expr::Node>();
        if (peek() == '(') {
            if (!kFunctions.count(name)) throw UnknownIdentifier(name);
            ++pos;
            n->kind = Expr::Kind::Call;
            n->name = name;
            n->args.push_back(parse_expr());
            while (accept(',')) n->args.push_back(parse_expr());
            expect(')', "')'");
            std::size_t want = (name == "pow") ? 2 : 1;
            if (n->args.size() != want) throw SyntaxError(pos, name + " argument count");
            return n;
        }
        n->kind = is_constant_name(name) ? Expr::Kind::Constant : Expr::Kind::Variable;
        n->name = name;
        return n;
    }
};

double checked_pow(double base, double exponent) {
    if (base == 0.0 && exponent < 0.0) throw DomainError("pow", base);
    if (base < 0.0) {
        // only integer exponents of negative bases are real
        if (exponent != std::floor(exponent)) throw DomainError("pow", base);
    }
    return std::pow(base, exponent);
}

double eval_node(const Expr::Node& n, const EvalEnv& env) {
    switch (n.kind) {
        case Expr::Kind::Number: return n.number;
        case Expr::Kind::Constant: return n.name == "pi" ? M_PI : M_E;
        case Expr::Kind::Variable: {
            auto it = env.find(n.name);
            if (it == env.end()) throw UnboundVariable(n.name);
            return it->second;
        }
        case Expr::Kind::Negate: return -eval_node(*n.args[0], env);
        case Expr::Kind::Binary: {
            double a = eval_node(*n.args[0], env);
            double b = eval_node(*n.args[1], env);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw DomainError("div", b);
                    return a / b;
                case '^': return checked_pow(a, b);
            }
            throw Error("corrupt AST");
        }
        case Expr::Kind::Call: {
            double a = eval_node(*n.args[0], env);
            if (n.name == "exp") return std::exp(a);
            if (n.name == "ln") {
                if (a <= 0.0) throw DomainError("ln", a);
                return std::log(a);
            }
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "tan") return std::tan(a);
            if (n.name == "sqrt") {
                if (a < 0.0) throw DomainError("sqrt", a);
                return std::sqrt(a);
            }
            if (n.name == "abs") return std::fabs(a);
            if (n.name == "pow") return checked_pow(a, eval_node(*n.args[1], env));
            throw Error("corrupt AST");
        }
    }
    throw Error("corrupt AST");
}

// Precedence levels for printing: additive 1, multiplicative 2, unary 3,
// power 4, atom 5.
int level(const Expr::Node& n) {
    switch (n.kind) {
        case Expr::Kind::Binary:
            if (n.op == '+' || n.op == '-') return 1;
            if (n.op == '*' || n.op == '/') return 2;
            return 4; // '^'
        case Expr::Kind::Negate: return 3;
        case Expr::Kind::Number:
            // a negative literal prints with a leading '-', so it binds
            // like a unary minus
            return std::signbit(n.number) ? 3 : 5;
        default: return 5;
    }
}

void print_node(const Expr::Node& n, std::string& out);

void print_child(const Expr::Node& child, int min_level, std::string& out) {
    bool parens = level(child) < min_level;
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const Expr::Node& n, std::string& out) {
    switch (n.kind) {
        case Expr::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out += buf;
            return;
        }
        case Expr::Kind::Variable:
        case Expr::Kind::Constant:
            out += n.name;
            return;
        case Expr::Kind::Negate:
            out += '-';
            // parenthesize a literal operand: '-3' is a signed literal,
            // an explicit negation prints as '-(3)'
            print_child(*n.args[0],
                        n.args[0]->kind == Expr::Kind::Number ? 6 : 3, out);
            return;
        case Expr::Kind::Binary: {
            int lv = level(n);
            if (n.op == '^') {
                // right-associative: left child needs parens at equal level
                print_child(*n.args[0], 5, out);
                out += '^';
                print_child(*n.args[1], 3, out);
            } else {
                print_child(*n.args[0], lv, out);
                out += n.op;
                print_child(*n.args[1], lv + 1, out);
            }
            return;
        }
        case Expr::Kind::Call: {
            out += n.name;
            out += '(';
            print_node(*n.args[0], out);
            for (std::size_t i = 1; i < n.args.size(); ++i) {
                out += ',';
                print_node(*n.args[i], out);
            }
            out += ')';
            return;
        }
    }
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
    if (a.kind != b.kind || a.op != b.op || a.name != b.name) return false;
    if (a.kind == Expr::Kind::Number &&
        std::memcmp(&a.number, &b.number, sizeof(double)) != 0)
        return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!nodes_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

void collect_vars(const Expr::Node& n, std::set<std::string>& out) {
    if (n.kind == Expr::Kind::Variable) out.insert(n.name);
    for (const auto& c : n.args) collect_vars(*c, out);
}

} // namespace

Expr parse(std::string_view source) {
    Parser p{source};
    auto root = p.parse_expr();
    if (!p.at_end()) throw SyntaxError(p.pos, "end of input or operator");
    return Expr(std::move(root));
}

double eval(const Expr& e, const EvalEnv& env) {
    if (!e.valid()) throw Error("evaluating empty expression");
    return eval_node(e.root(), env);
}

std::string to_string(const Expr& e) {
    std::string out;
    if (e.valid()) print_node(e.root(), out);
    return out;
}

bool Expr::structurally_equal(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodes_equal(*root_, *other.root_);
}

std::vector<std::string> Expr::free_variables() const {
    std::set<std::string> vars;
    if (root_) collect_vars(*root_, vars);
    return {vars.begin(), vars.end()};
}

Expr Expr::number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->number = v;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::sum(const Expr& e1, const Expr& e2) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Binary;
    n->op = '+';
    n->args = {e1.node(), e2.node()};
    return Expr(std::move(n));
}

} // namespace hilfer
