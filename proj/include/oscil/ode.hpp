#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscil/expr.hpp"

namespace oscil {

/// The equation y'' + b(x) y' + c(x) y = f(x) with its parameter bindings.
/// Homogeneous iff f simplifies to the zero constant.
struct OdeSpec {
    Expr b, c, f;
    ParamBindings params;
    std::vector<double> singular_points;  // declared excluded abscissae
    bool homogeneous = true;

    /// Validates that every parameter of b, c, f is bound.
    static OdeSpec create(Expr b, Expr c, Expr f, ParamBindings params = {},
                          std::vector<double> singular_points = {});

    static OdeSpec create(const std::string& b, const std::string& c,
                          const std::string& f = "0", ParamBindings params = {},
                          std::vector<double> singular_points = {});

    double eval_b(double x) const { return eval(b, x, params); }
    double eval_c(double x) const { return eval(c, x, params); }
    double eval_f(double x) const { return eval(f, x, params); }
};

/// D(x) = b^2 - 4c + 2b', the sign of which drives the classification.
/// Reduces to b^2 - 4c for constant coefficients.
Expr discriminant(const OdeSpec& spec);

/// b^2 - 4c, the frozen-coefficient form. Kept for contrast: it mispredicts
/// when b is non-constant.
Expr naive_discriminant(const OdeSpec& spec);

/// Adaptive-Simpson integral of e over [a, b] to absolute tolerance abs_tol.
/// Throws SingularPathError when e is not evaluable somewhere on the path.
double integrate_expr(const Expr& e, const ParamBindings& params, double a, double b,
                      double abs_tol = 1e-10);

/// w(x) = exp(-1/2 * integral of b from anchor to x). Positive, w(anchor)=1.
/// Pure function of x: every call recomputes the quadrature, so concurrent
/// evaluations are identical by construction.
class WeightFn {
public:
    WeightFn(Expr b, ParamBindings params, double anchor, double abs_tol = 1e-10)
        : b_(std::move(b)), params_(std::move(params)), anchor_(anchor), abs_tol_(abs_tol) {}

    double operator()(double x) const;
    double anchor() const { return anchor_; }

private:
    Expr b_;
    ParamBindings params_;
    double anchor_;
    double abs_tol_;
};

/// u'' + q(x) u = 0 with q = -1/4 (b^2 - 4c + 2b'), plus the weight that maps
/// its solutions back: y = w(x) u(x) solves the original equation.
struct NormalForm {
    Expr q;
    double anchor;
    WeightFn weight;
};

/// Throws SpecError when b is not evaluable near the anchor.
NormalForm normal_form(const OdeSpec& spec, double anchor);

}  // namespace oscil
