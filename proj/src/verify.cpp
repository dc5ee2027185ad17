#include "oscil/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscil {

namespace {

OdeSpec normal_spec(const Expr& q, const ParamBindings& params) {
    return OdeSpec::create(Expr::constant(0.0), q, Expr::constant(0.0), params, {});
}

// Probe both coefficients across the window; optionally enforce q1 > q2.
double probe_pair(const Expr& q1, const Expr& q2, const ParamBindings& params, double lo,
                  double hi, int samples, bool require_gap) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        double x = lo + (hi - lo) * i / samples;
        double a = eval(q1, x, params), b = eval(q2, x, params);
        if (is_domain_failure(a) || is_domain_failure(b))
            throw HypothesisError("comparison coefficient not evaluable", x);
        if (require_gap && !(a > b)) throw HypothesisError("q1 > q2 fails", x);
        min_gap = std::min(min_gap, a - b);
    }
    return min_gap;
}

}  // namespace

SturmCheckResult check_sturm(const Expr& q1, const Expr& q2, const Window& w,
                             const InitialCondition& ic1, const InitialCondition& ic2,
                             const ParamBindings& params, const CheckOptions& opt) {
    if (!(w.lo < w.hi)) throw SpecError("comparison window requires lo < hi");
    if (ic1.trivial() || ic2.trivial()) throw SpecError("comparison needs non-trivial solutions");

    SturmCheckResult res;
    res.min_gap = probe_pair(q1, q2, params, w.lo, w.hi, opt.samples, true);

    Trajectory t1 =
        solve_ivp_window(normal_spec(q1, params), ic1, w.lo, w.hi, opt.rel_tol, opt.abs_tol);
    Trajectory t2 =
        solve_ivp_window(normal_spec(q2, params), ic2, w.lo, w.hi, opt.rel_tol, opt.abs_tol);

    for (const auto& z : count_zeros(t1, w.lo, w.hi).zeros) res.zeros_fast.push_back(z.x);
    for (const auto& z : count_zeros(t2, w.lo, w.hi).zeros) res.zeros_slow.push_back(z.x);

    int passed = 0;
    const auto& slow = res.zeros_slow;
    for (std::size_t i = 0; i + 1 < slow.size(); ++i) {
        GapCheck gap;
        gap.lo = slow[i];
        gap.hi = slow[i + 1];
        double edge = 1e-8 * (1.0 + std::max(std::fabs(gap.lo), std::fabs(gap.hi)));
        for (double z : res.zeros_fast) {
            if (std::fabs(z - gap.lo) <= edge || std::fabs(z - gap.hi) <= edge) {
                if (res.shared.empty() || std::fabs(res.shared.back() - z) > edge)
                    res.shared.push_back(z);
                continue;
            }
            if (z > gap.lo && z < gap.hi) gap.interior.push_back(z);
        }
        gap.pass = !gap.interior.empty();
        if (gap.pass) passed++;
        res.gaps.push_back(std::move(gap));
    }
    res.pass_rate = res.gaps.empty() ? 1.0 : double(passed) / double(res.gaps.size());
    res.pass = passed == static_cast<int>(res.gaps.size());
    return res;
}

WronskianCheckResult check_wronskian(const Expr& q1, const Expr& q2, const Window& w,
                                     const InitialCondition& ic1, const InitialCondition& ic2,
                                     const ParamBindings& params, const CheckOptions& opt) {
    if (!(w.lo < w.hi)) throw SpecError("comparison window requires lo < hi");
    if (ic1.trivial() || ic2.trivial()) throw SpecError("comparison needs non-trivial solutions");
    probe_pair(q1, q2, params, w.lo, w.hi, opt.samples, false);

    Trajectory t1 =
        solve_ivp_window(normal_spec(q1, params), ic1, w.lo, w.hi, opt.rel_tol, opt.abs_tol);
    Trajectory t2 =
        solve_ivp_window(normal_spec(q2, params), ic2, w.lo, w.hi, opt.rel_tol, opt.abs_tol);

    WronskianCheckResult res;
    res.w_min = std::numeric_limits<double>::infinity();
    res.w_max = -res.w_min;

    double prev_w = 0.0;
    bool prev_positive = false;  // q1 > q2 and u1 u2 > 0 held at previous sample
    double wscale = 1.0;
    for (int i = 0; i <= opt.samples; ++i) {
        double x = w.lo + (w.hi - w.lo) * i / opt.samples;
        double y1 = t1.y(x), y2 = t2.y(x);
        double wr = y1 * t2.dy(x) - t1.dy(x) * y2;
        res.w_min = std::min(res.w_min, wr);
        res.w_max = std::max(res.w_max, wr);
        wscale = std::max(wscale, std::fabs(wr));

        // dW/dx with second derivatives read off the trajectories
        double dw = y1 * t2.ddy(x) - t1.ddy(x) * y2;
        double rhs = (eval(q1, x, params) - eval(q2, x, params)) * y1 * y2;
        double r = std::fabs(dw - rhs);
        if (r > res.max_residual) {
            res.max_residual = r;
            res.at_x = x;
        }

        bool positive = eval(q1, x, params) > eval(q2, x, params) && y1 * y2 > 0.0;
        if (i > 0 && prev_positive && positive && !(wr > prev_w - 1e-12 * wscale))
            res.monotone_violations++;
        prev_w = wr;
        prev_positive = positive;
    }
    res.monotone_ok = res.monotone_violations == 0;
    res.pass = res.monotone_ok && res.max_residual < opt.threshold;
    return res;
}

RiccatiCheckResult check_riccati(const OdeSpec& spec, const Trajectory& t, double cutoff,
                                 int samples, double threshold) {
    if (!spec.homogeneous) throw SpecError("logarithmic-derivative check needs f = 0");
    if (!(cutoff > 0.0)) throw SpecError("cutoff must be positive");

    const double lo = t.x_min(), hi = t.x_max();
    const double floor = cutoff * t.max_abs_y();

    RiccatiCheckResult res;
    res.cutoff = cutoff;
    for (int i = 0; i <= samples; ++i) {
        double x = lo + (hi - lo) * i / samples;
        double y = t.y(x);
        if (std::fabs(y) < floor) {
            res.skipped++;
            continue;
        }
        double b = spec.eval_b(x), c = spec.eval_c(x);
        if (is_domain_failure(b) || is_domain_failure(c)) {
            res.skipped++;
            continue;
        }
        double m = t.dy(x) / y;
        double mp = t.ddy(x) / y - m * m;
        double r = std::fabs(mp + m * m + b * m + c);
        res.m_samples.emplace_back(x, m);
        if (r > res.max_residual) {
            res.max_residual = r;
            res.at_x = x;
        }
    }
    if (res.m_samples.empty())
        throw NumericError("every sample sits inside the zero cutoff", lo);
    res.pass = res.max_residual < threshold;
    return res;
}

NormalFormCheckResult check_normal_form(const OdeSpec& spec, const InitialCondition& ic,
                                        const Window& w, double tol, const CheckOptions& opt) {
    if (!spec.homogeneous) throw SpecError("normal-form comparison needs f = 0");
    if (ic.trivial()) throw SpecError("normal-form comparison needs a non-trivial solution");
    for (double s : spec.singular_points)
        if (s >= w.lo && s <= w.hi)
            throw SpecError("window must not contain a singular point");

    NormalForm nf = normal_form(spec, ic.x0);

    // psi = w u with w(x0) = 1, w'(x0) = -b(x0)/2: product rule at the anchor.
    double b0 = spec.eval_b(ic.x0);
    InitialCondition uic{ic.x0, ic.y0, ic.dy0 + 0.5 * b0 * ic.y0};

    Trajectory psi = solve_ivp_window(spec, ic, w.lo, w.hi, opt.rel_tol, opt.abs_tol);
    Trajectory u = solve_ivp_window(normal_spec(nf.q, spec.params), uic, w.lo, w.hi, opt.rel_tol,
                                    opt.abs_tol);

    NormalFormCheckResult res;
    res.scale = std::max(1.0, psi.max_abs_y());
    for (int i = 0; i <= opt.samples; ++i) {
        double x = w.lo + (w.hi - w.lo) * i / opt.samples;
        double dev = std::fabs(psi.y(x) - nf.weight(x) * u.y(x)) / res.scale;
        res.max_deviation = std::max(res.max_deviation, dev);
    }

    for (const auto& z : count_zeros(psi, w.lo, w.hi).zeros) res.zeros_psi.push_back(z.x);
    for (const auto& z : count_zeros(u, w.lo, w.hi).zeros) res.zeros_u.push_back(z.x);

    res.zero_sets_match = res.zeros_psi.size() == res.zeros_u.size();
    if (res.zero_sets_match)
        for (std::size_t i = 0; i < res.zeros_psi.size(); ++i)
            res.max_zero_gap =
                std::max(res.max_zero_gap, std::fabs(res.zeros_psi[i] - res.zeros_u[i]));
    res.pass = res.max_deviation <= tol && res.zero_sets_match && res.max_zero_gap <= 1e-6;
    return res;
}

OscillatesAboutResult oscillates_about(const OdeSpec& spec, const Expr& particular,
                                       const InitialCondition& ic, const Window& w, double gate,
                                       const CheckOptions& opt) {
    if (!(w.lo < w.hi)) throw SpecError("window requires lo < hi");

    Expr dp = differentiate(particular);
    Expr ddp = differentiate(dp);

    OscillatesAboutResult res;
    for (int i = 0; i <= opt.samples; ++i) {
        double x = w.lo + (w.hi - w.lo) * i / opt.samples;
        double b = spec.eval_b(x), c = spec.eval_c(x), f = spec.eval_f(x);
        double p = eval(particular, x, spec.params);
        double p1 = eval(dp, x, spec.params);
        double p2 = eval(ddp, x, spec.params);
        if (is_domain_failure(b) || is_domain_failure(c) || is_domain_failure(f) ||
            is_domain_failure(p) || is_domain_failure(p1) || is_domain_failure(p2))
            throw HypothesisError("particular solution not evaluable", x);
        res.particular_residual =
            std::max(res.particular_residual, std::fabs(p2 + b * p1 + c * p - f));
    }
    if (res.particular_residual > gate)
        throw HypothesisError("claimed particular solution fails the residual gate",
                              res.particular_residual);

    Trajectory psi = solve_ivp_window(spec, ic, w.lo, w.hi, opt.rel_tol, opt.abs_tol);
    Trajectory diff = subtract_expr(psi, particular, spec.params);
    res.zeros = count_zeros(diff, std::max(w.lo, diff.x_min()), std::min(w.hi, diff.x_max()));
    return res;
}

}  // namespace oscil
