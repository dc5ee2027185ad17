#include "oscil/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

namespace oscil {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
    }
    return "?";
}

struct Expr::Node {
    NodeKind kind;
    double value = 0.0;       // Constant
    std::string name;         // Param
    Func fn = Func::Sin;      // Call
    std::shared_ptr<const Node> a, b;
};

Expr::Expr() : Expr(constant(0.0)) {}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
const std::string& Expr::param_name() const { return node_->name; }
Func Expr::func() const { return node_->fn; }
Expr Expr::child(int i) const { return Expr(i == 0 ? node_->a : node_->b); }

int Expr::arity() const {
    switch (node_->kind) {
        case NodeKind::Constant:
        case NodeKind::Var:
        case NodeKind::Param:
            return 0;
        case NodeKind::Neg:
        case NodeKind::Call:
            return 1;
        default:
            return 2;
    }
}

Expr Expr::constant(double v) {
    if (!std::isfinite(v)) throw SpecError("expression constants must be finite");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::var() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Var;
    return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Param;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::neg(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Neg;
    n->a = e.node_;
    return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Add;
    n->a = a.node_;
    n->b = b.node_;
    return Expr(std::move(n));
}

Expr Expr::sub(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Sub;
    n->a = a.node_;
    n->b = b.node_;
    return Expr(std::move(n));
}

Expr Expr::mul(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Mul;
    n->a = a.node_;
    n->b = b.node_;
    return Expr(std::move(n));
}

Expr Expr::div(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Div;
    n->a = a.node_;
    n->b = b.node_;
    return Expr(std::move(n));
}

Expr Expr::pow(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->a = a.node_;
    n->b = b.node_;
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->fn = f;
    n->a = arg.node_;
    return Expr(std::move(n));
}

bool Expr::is_zero() const { return is_constant(0.0); }

bool Expr::is_constant(double v) const {
    return node_->kind == NodeKind::Constant && node_->value == v;
}

std::set<std::string> Expr::parameters() const {
    std::set<std::string> out;
    std::vector<const Node*> stack{node_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->kind == NodeKind::Param) out.insert(n->name);
        if (n->a) stack.push_back(n->a.get());
        if (n->b) stack.push_back(n->b.get());
    }
    return out;
}

bool Expr::same_tree(const Expr& other) const {
    struct Cmp {
        static bool eq(const Node* a, const Node* b) {
            if (a == b) return true;
            if (a->kind != b->kind) return false;
            switch (a->kind) {
                case NodeKind::Constant: return a->value == b->value;
                case NodeKind::Var: return true;
                case NodeKind::Param: return a->name == b->name;
                case NodeKind::Call:
                    if (a->fn != b->fn) return false;
                    return eq(a->a.get(), b->a.get());
                case NodeKind::Neg:
                    return eq(a->a.get(), b->a.get());
                default:
                    return eq(a->a.get(), b->a.get()) && eq(a->b.get(), b->b.get());
            }
        }
    };
    return Cmp::eq(node_.get(), other.node_.get());
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    double value = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= s_.size()) return {Tok::End, start};
        char c = s_[pos_];
        switch (c) {
            case '+': ++pos_; return {Tok::Plus, start};
            case '-': ++pos_; return {Tok::Minus, start};
            case '*': ++pos_; return {Tok::Star, start};
            case '/': ++pos_; return {Tok::Slash, start};
            case '^': ++pos_; return {Tok::Caret, start};
            case '(': ++pos_; return {Tok::LParen, start};
            case ')': ++pos_; return {Tok::RParen, start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(start);
        throw ParseError("syntax error at offset " + std::to_string(start) +
                             ": unexpected character '" + std::string(1, c) + "'",
                         start, "number, identifier, operator, or parenthesis");
    }

private:
    Token lex_number(std::size_t start) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // bare 'e' belongs to a following identifier, not this literal
            }
        }
        Token t{Tok::Num, start};
        t.text = s_.substr(start, pos_ - start);
        t.value = std::strtod(t.text.c_str(), nullptr);
        return t;
    }

    Token lex_ident(std::size_t start) {
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        Token t{Tok::Ident, start};
        t.text = s_.substr(start, pos_ - start);
        return t;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    Expr parse_all() {
        Expr e = parse_expr();
        if (cur_.kind != Tok::End)
            fail("operator or end of input");
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError("syntax error at offset " + std::to_string(cur_.offset) + ": expected " +
                             expected,
                         cur_.offset, expected);
    }

    Expr parse_expr() {
        Expr e = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            bool plus = cur_.kind == Tok::Plus;
            advance();
            Expr rhs = parse_term();
            e = plus ? Expr::add(e, rhs) : Expr::sub(e, rhs);
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            bool star = cur_.kind == Tok::Star;
            advance();
            Expr rhs = parse_factor();
            e = star ? Expr::mul(e, rhs) : Expr::div(e, rhs);
        }
        return e;
    }

    Expr parse_factor() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return Expr::neg(parse_factor());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (cur_.kind == Tok::Caret) {
            advance();
            return Expr::pow(base, parse_factor());  // right-associative
        }
        return base;
    }

    Expr parse_atom() {
        switch (cur_.kind) {
            case Tok::Num: {
                double v = cur_.value;
                advance();
                return Expr::constant(v);
            }
            case Tok::Ident: {
                std::string name = cur_.text;
                std::size_t off = cur_.offset;
                advance();
                if (cur_.kind == Tok::LParen) {
                    Func f;
                    if (!lookup_func(name, f)) throw UnknownFunctionError(name, off);
                    advance();
                    Expr arg = parse_expr();
                    if (cur_.kind != Tok::RParen) fail("')'");
                    advance();
                    return Expr::call(f, arg);
                }
                if (name == "x") return Expr::var();
                return Expr::param(name);
            }
            case Tok::LParen: {
                advance();
                Expr e = parse_expr();
                if (cur_.kind != Tok::RParen) fail("')'");
                advance();
                return e;
            }
            default:
                fail("number, identifier, '(' or '-'");
        }
    }

    static bool lookup_func(const std::string& name, Func& out) {
        if (name == "sin") out = Func::Sin;
        else if (name == "cos") out = Func::Cos;
        else if (name == "tan") out = Func::Tan;
        else if (name == "exp") out = Func::Exp;
        else if (name == "ln") out = Func::Ln;
        else if (name == "sqrt") out = Func::Sqrt;
        else if (name == "abs") out = Func::Abs;
        else return false;
        return true;
    }

    Lexer lex_;
    Token cur_{Tok::End, 0};
};

}  // namespace

Expr parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty expression", 0, "an expression");
    return Parser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_node(const Expr& e, double x, const ParamBindings& params) {
    switch (e.kind()) {
        case NodeKind::Constant:
            return e.constant_value();
        case NodeKind::Var:
            return x;
        case NodeKind::Param: {
            auto it = params.find(e.param_name());
            if (it == params.end()) throw UnboundParameterError(e.param_name());
            return it->second;
        }
        case NodeKind::Neg:
            return -eval_node(e.child(0), x, params);
        case NodeKind::Add:
            return eval_node(e.child(0), x, params) + eval_node(e.child(1), x, params);
        case NodeKind::Sub:
            return eval_node(e.child(0), x, params) - eval_node(e.child(1), x, params);
        case NodeKind::Mul:
            return eval_node(e.child(0), x, params) * eval_node(e.child(1), x, params);
        case NodeKind::Div:
            return eval_node(e.child(0), x, params) / eval_node(e.child(1), x, params);
        case NodeKind::Pow:
            return std::pow(eval_node(e.child(0), x, params), eval_node(e.child(1), x, params));
        case NodeKind::Call: {
            double u = eval_node(e.child(0), x, params);
            switch (e.func()) {
                case Func::Sin: return std::sin(u);
                case Func::Cos: return std::cos(u);
                case Func::Tan: return std::tan(u);
                case Func::Exp: return std::exp(u);
                case Func::Ln: return std::log(u);
                case Func::Sqrt: return std::sqrt(u);
                case Func::Abs: return std::fabs(u);
            }
            return kNaN;
        }
    }
    return kNaN;
}

}  // namespace

double eval(const Expr& e, double x, const ParamBindings& params) {
    double v = eval_node(e, x, params);
    // Canonical marker: any non-finite result (poles, log/sqrt domain,
    // overflow) collapses to NaN so callers have a single failure test.
    return std::isfinite(v) ? v : kNaN;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e) {
    using E = Expr;
    switch (e.kind()) {
        case NodeKind::Constant:
        case NodeKind::Param:
            return E::constant(0.0);
        case NodeKind::Var:
            return E::constant(1.0);
        case NodeKind::Neg:
            return simplify(E::neg(differentiate(e.child(0))));
        case NodeKind::Add:
            return simplify(E::add(differentiate(e.child(0)), differentiate(e.child(1))));
        case NodeKind::Sub:
            return simplify(E::sub(differentiate(e.child(0)), differentiate(e.child(1))));
        case NodeKind::Mul: {
            E u = e.child(0), v = e.child(1);
            return simplify(E::add(E::mul(differentiate(u), v), E::mul(u, differentiate(v))));
        }
        case NodeKind::Div: {
            E u = e.child(0), v = e.child(1);
            E num = E::sub(E::mul(differentiate(u), v), E::mul(u, differentiate(v)));
            return simplify(E::div(num, E::pow(v, E::constant(2.0))));
        }
        case NodeKind::Pow: {
            E u = e.child(0), v = e.child(1);
            if (v.kind() == NodeKind::Constant) {
                double c = v.constant_value();
                E rule = E::mul(E::mul(E::constant(c), E::pow(u, E::constant(c - 1.0))),
                                differentiate(u));
                return simplify(rule);
            }
            // u^v * (v' ln u + v u'/u)
            E t1 = E::mul(differentiate(v), E::call(Func::Ln, u));
            E t2 = E::div(E::mul(v, differentiate(u)), u);
            return simplify(E::mul(e, E::add(t1, t2)));
        }
        case NodeKind::Call: {
            E u = e.child(0);
            E du = differentiate(u);
            E inner;
            switch (e.func()) {
                case Func::Sin: inner = E::call(Func::Cos, u); break;
                case Func::Cos: inner = E::neg(E::call(Func::Sin, u)); break;
                case Func::Tan:
                    inner = E::div(E::constant(1.0),
                                   E::pow(E::call(Func::Cos, u), E::constant(2.0)));
                    break;
                case Func::Exp: inner = E::call(Func::Exp, u); break;
                case Func::Ln: inner = E::div(E::constant(1.0), u); break;
                case Func::Sqrt:
                    inner = E::div(E::constant(1.0),
                                   E::mul(E::constant(2.0), E::call(Func::Sqrt, u)));
                    break;
                case Func::Abs:
                    // u/|u|, i.e. sign(u) away from zero; NaN marker at zero.
                    inner = E::div(u, E::call(Func::Abs, u));
                    break;
            }
            return simplify(E::mul(inner, du));
        }
    }
    return Expr::constant(0.0);
}

// ---------------------------------------------------------------------------
// Simplification

namespace {

bool const_value(const Expr& e, double& out) {
    if (e.kind() != NodeKind::Constant) return false;
    out = e.constant_value();
    return true;
}

Expr simplify_node(const Expr& e);

Expr simplify_children(const Expr& e) {
    using E = Expr;
    switch (e.kind()) {
        case NodeKind::Neg: return E::neg(simplify_node(e.child(0)));
        case NodeKind::Add: return E::add(simplify_node(e.child(0)), simplify_node(e.child(1)));
        case NodeKind::Sub: return E::sub(simplify_node(e.child(0)), simplify_node(e.child(1)));
        case NodeKind::Mul: return E::mul(simplify_node(e.child(0)), simplify_node(e.child(1)));
        case NodeKind::Div: return E::div(simplify_node(e.child(0)), simplify_node(e.child(1)));
        case NodeKind::Pow: return E::pow(simplify_node(e.child(0)), simplify_node(e.child(1)));
        case NodeKind::Call: return E::call(e.func(), simplify_node(e.child(0)));
        default: return e;
    }
}

Expr simplify_node(const Expr& e) {
    using E = Expr;
    if (e.arity() == 0) return e;
    Expr s = simplify_children(e);

    double av = 0, bv = 0;
    switch (s.kind()) {
        case NodeKind::Neg: {
            Expr u = s.child(0);
            if (const_value(u, av)) return E::constant(-av);
            if (u.kind() == NodeKind::Neg) return u.child(0);
            return s;
        }
        case NodeKind::Add: {
            Expr a = s.child(0), b = s.child(1);
            if (const_value(a, av) && const_value(b, bv) && std::isfinite(av + bv))
                return E::constant(av + bv);
            if (a.is_zero()) return b;
            if (b.is_zero()) return a;
            return s;
        }
        case NodeKind::Sub: {
            Expr a = s.child(0), b = s.child(1);
            if (const_value(a, av) && const_value(b, bv) && std::isfinite(av - bv))
                return E::constant(av - bv);
            if (b.is_zero()) return a;
            if (a.is_zero()) return simplify_node(E::neg(b));
            if (a.str() == b.str()) return E::constant(0.0);  // identical subtrees
            return s;
        }
        case NodeKind::Mul: {
            Expr a = s.child(0), b = s.child(1);
            if (const_value(a, av) && const_value(b, bv) && std::isfinite(av * bv))
                return E::constant(av * bv);
            if (a.is_zero() || b.is_zero()) return E::constant(0.0);
            if (a.is_constant(1.0)) return b;
            if (b.is_constant(1.0)) return a;
            if (a.is_constant(-1.0)) return simplify_node(E::neg(b));
            if (b.is_constant(-1.0)) return simplify_node(E::neg(a));
            // hoist negations out of products
            if (a.kind() == NodeKind::Neg)
                return simplify_node(E::neg(E::mul(a.child(0), b)));
            if (b.kind() == NodeKind::Neg)
                return simplify_node(E::neg(E::mul(a, b.child(0))));
            // merge constants across a nested product: c1*(c2*u) -> (c1*c2)*u
            if (!const_value(a, av) && const_value(b, bv)) std::swap(a, b), std::swap(av, bv);
            if (const_value(a, av) && b.kind() == NodeKind::Mul) {
                double inner;
                if (const_value(b.child(0), inner) && std::isfinite(av * inner))
                    return simplify_node(E::mul(E::constant(av * inner), b.child(1)));
                if (const_value(b.child(1), inner) && std::isfinite(av * inner))
                    return simplify_node(E::mul(E::constant(av * inner), b.child(0)));
            }
            return s;
        }
        case NodeKind::Div: {
            Expr a = s.child(0), b = s.child(1);
            if (const_value(a, av) && const_value(b, bv) && bv != 0.0 &&
                std::isfinite(av / bv))
                return E::constant(av / bv);
            if (b.is_constant(1.0)) return a;
            if (a.is_zero() && !b.is_zero()) return E::constant(0.0);
            if (a.kind() == NodeKind::Neg)
                return simplify_node(E::neg(E::div(a.child(0), b)));
            if (b.kind() == NodeKind::Neg)
                return simplify_node(E::neg(E::div(a, b.child(0))));
            return s;
        }
        case NodeKind::Pow: {
            Expr a = s.child(0), b = s.child(1);
            if (const_value(a, av) && const_value(b, bv) && std::isfinite(std::pow(av, bv)))
                return E::constant(std::pow(av, bv));
            if (b.is_constant(1.0)) return a;
            if (b.is_zero()) return E::constant(1.0);  // pow(u, 0) == 1, IEEE semantics
            return s;
        }
        case NodeKind::Call: {
            Expr u = s.child(0);
            if (const_value(u, av)) {
                double v = eval(s, 0.0, {});
                if (std::isfinite(v)) return E::constant(v);
            }
            return s;
        }
        default:
            return s;
    }
}

}  // namespace

Expr simplify(const Expr& e) { return simplify_node(e); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: additive 1, multiplicative 2, unary minus 3, power 4.
int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const Expr& e, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(e.kind());
    bool parens = prec < parent_prec ||
                  (prec == parent_prec && right_side && prec != 5 && e.kind() != NodeKind::Neg);
    // Power is right-associative, so a right child at equal precedence needs
    // no parentheses while a left child does; handled by the caller passing
    // parent_prec = prec+1 for left-of-pow.
    if (parens) out += '(';
    switch (e.kind()) {
        case NodeKind::Constant:
            if (e.constant_value() < 0) {
                out += '(';
                out += format_number(e.constant_value());
                out += ')';
            } else {
                out += format_number(e.constant_value());
            }
            break;
        case NodeKind::Var:
            out += 'x';
            break;
        case NodeKind::Param:
            out += e.param_name();
            break;
        case NodeKind::Neg:
            out += '-';
            print_node(e.child(0), out, prec + 1, false);
            break;
        case NodeKind::Add: {
            print_node(e.child(0), out, prec, false);
            Expr rhs = e.child(1);
            if (rhs.kind() == NodeKind::Constant && rhs.constant_value() < 0) {
                out += " - ";
                out += format_number(-rhs.constant_value());
            } else if (rhs.kind() == NodeKind::Neg) {
                out += " - ";
                print_node(rhs.child(0), out, prec, true);
            } else {
                out += " + ";
                print_node(rhs, out, prec, true);
            }
            break;
        }
        case NodeKind::Sub:
            print_node(e.child(0), out, prec, false);
            out += " - ";
            print_node(e.child(1), out, prec, true);
            break;
        case NodeKind::Mul:
            print_node(e.child(0), out, prec, false);
            out += '*';
            print_node(e.child(1), out, prec, true);
            break;
        case NodeKind::Div:
            print_node(e.child(0), out, prec, false);
            out += '/';
            print_node(e.child(1), out, prec, true);
            break;
        case NodeKind::Pow:
            print_node(e.child(0), out, prec + 1, false);
            out += '^';
            print_node(e.child(1), out, prec, false);
            break;
        case NodeKind::Call:
            out += func_name(e.func());
            out += '(';
            print_node(e.child(0), out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    print_node(*this, out, 0, false);
    return out;
}

}  // namespace oscil
