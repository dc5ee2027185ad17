#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "oscil/errors.hpp"

namespace oscil {

/// Parameter name -> value. Binding an unused name is permitted; evaluating
/// an expression with an unbound parameter throws UnboundParameterError.
using ParamBindings = std::map<std::string, double>;

enum class NodeKind { Constant, Var, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };

const char* func_name(Func f);

/// Immutable expression tree in one independent variable `x` plus named
/// parameters. Copy is a cheap shared handle; all operations are pure.
class Expr {
public:
    Expr();  // the constant 0

    static Expr constant(double v);  // v must be finite
    static Expr var();               // the independent variable x
    static Expr param(std::string name);
    static Expr neg(Expr e);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr a, Expr b);
    static Expr call(Func f, Expr arg);

    NodeKind kind() const;
    double constant_value() const;        // valid when kind()==Constant
    const std::string& param_name() const;  // valid when kind()==Param
    Func func() const;                    // valid when kind()==Call
    Expr child(int i) const;              // 0 = only/left, 1 = right
    int arity() const;

    /// True when this is the constant 0 / the constant `v`.
    bool is_zero() const;
    bool is_constant(double v) const;

    /// Names of all parameters appearing in the tree.
    std::set<std::string> parameters() const;

    bool same_tree(const Expr& other) const;

    std::string str() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Parse expression text. Grammar (EBNF):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | identifier | identifier '(' expr ')' | '(' expr ')'
/// `^` is right-associative and binds tighter than unary minus. Numbers are
/// decimal literals with optional fraction and exponent. `x` is the
/// independent variable; every other identifier is a parameter.
Expr parse(const std::string& text);

/// Evaluate at x under the given bindings. Returns NaN as the domain-failure
/// marker (log of a non-positive value, division by zero, sqrt of a negative,
/// overflow to infinity); throws UnboundParameterError for a missing binding.
double eval(const Expr& e, double x, const ParamBindings& params);

inline double eval(const Expr& e, double x) { return eval(e, x, {}); }

/// True when `v` is the eval() domain-failure marker.
inline bool is_domain_failure(double v) { return v != v; }

/// Exact symbolic derivative with respect to x; parameters are constants.
/// abs differentiates to u/|u| * u', which evaluates to the failure marker
/// at u = 0.
Expr differentiate(const Expr& e);

/// Constant folding, identity elimination (*1, +0, ^1, ...), double-negation
/// removal. The result evaluates identically at every point of the common
/// domain.
Expr simplify(const Expr& e);

}  // namespace oscil
