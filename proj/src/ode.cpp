#include "oscil/ode.hpp"

#include <cmath>

namespace oscil {

namespace {

void require_bound(const Expr& e, const ParamBindings& params) {
    for (const auto& name : e.parameters())
        if (!params.count(name)) throw UnboundParameterError(name);
}

}  // namespace

OdeSpec OdeSpec::create(Expr b, Expr c, Expr f, ParamBindings params,
                        std::vector<double> singular_points) {
    require_bound(b, params);
    require_bound(c, params);
    require_bound(f, params);
    OdeSpec spec;
    spec.b = std::move(b);
    spec.c = std::move(c);
    spec.f = std::move(f);
    spec.params = std::move(params);
    spec.singular_points = std::move(singular_points);
    spec.homogeneous = simplify(spec.f).is_zero();
    return spec;
}

OdeSpec OdeSpec::create(const std::string& b, const std::string& c, const std::string& f,
                        ParamBindings params, std::vector<double> singular_points) {
    return create(parse(b), parse(c), parse(f), std::move(params), std::move(singular_points));
}

Expr discriminant(const OdeSpec& spec) {
    Expr b = spec.b, c = spec.c;
    Expr d = Expr::add(Expr::sub(Expr::mul(b, b), Expr::mul(Expr::constant(4.0), c)),
                       Expr::mul(Expr::constant(2.0), differentiate(b)));
    return simplify(d);
}

Expr naive_discriminant(const OdeSpec& spec) {
    Expr b = spec.b, c = spec.c;
    return simplify(Expr::sub(Expr::mul(b, b), Expr::mul(Expr::constant(4.0), c)));
}

namespace {

struct QuadCtx {
    const Expr& e;
    const ParamBindings& params;

    double f(double x) const {
        double v = eval(e, x, params);
        if (is_domain_failure(v))
            throw SingularPathError("integrand not evaluable at x = " + std::to_string(x), x);
        return v;
    }
};

// Classic adaptive Simpson with Richardson correction. The tolerance is
// split across halves; depth is capped to keep pathological integrands from
// recursing forever.
double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const QuadCtx& ctx, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = ctx.f(lm), frm = ctx.f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(ctx, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(ctx, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_expr(const Expr& e, const ParamBindings& params, double a, double b,
                      double abs_tol) {
    if (a == b) return 0.0;
    QuadCtx ctx{e, params};
    double m = 0.5 * (a + b);
    double fa = ctx.f(a), fb = ctx.f(b), fm = ctx.f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adapt(ctx, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

double WeightFn::operator()(double x) const {
    if (x == anchor_) return 1.0;
    double integral = integrate_expr(b_, params_, anchor_, x, abs_tol_);
    return std::exp(-0.5 * integral);
}

NormalForm normal_form(const OdeSpec& spec, double anchor) {
    double probe = eval(spec.b, anchor, spec.params);
    if (is_domain_failure(probe))
        throw SpecError("b is not evaluable at the requested anchor x = " +
                        std::to_string(anchor));
    Expr q = simplify(Expr::mul(Expr::constant(-0.25), discriminant(spec)));
    return NormalForm{q, anchor, WeightFn(spec.b, spec.params, anchor)};
}

}  // namespace oscil
