#include "oscil/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscil {

namespace {

constexpr double kBlowupGuard = 1e12;
constexpr long kMaxSteps = 10'000'000;

struct State {
    double y, v;
};

struct Rhs {
    const OdeSpec& spec;

    // y' = v, v' = f(x) - b(x) v - c(x) y. Coefficients depend on x only.
    State operator()(double x, const State& s) const {
        double b = spec.eval_b(x);
        double c = spec.eval_c(x);
        double f = spec.eval_f(x);
        if (is_domain_failure(b) || is_domain_failure(c) || is_domain_failure(f))
            throw SingularPathError(
                "coefficient not evaluable at x = " + std::to_string(x), x);
        return {s.v, f - b * s.v - c * s.y};
    }
};

// Third derivative along a solution, from the differentiated equation:
// y''' = f' - b' y' - b y'' - c' y - c y'. NaN when a derivative is not
// evaluable at x (interpolation falls back to a lower order there).
struct ThirdDeriv {
    const OdeSpec& spec;
    Expr db, dc, df;

    explicit ThirdDeriv(const OdeSpec& s)
        : spec(s),
          db(simplify(differentiate(s.b))),
          dc(simplify(differentiate(s.c))),
          df(simplify(differentiate(s.f))) {}

    double operator()(double x, const State& s, double ddy) const {
        double bp = eval(db, x, spec.params);
        double cp = eval(dc, x, spec.params);
        double fp = eval(df, x, spec.params);
        if (is_domain_failure(bp) || is_domain_failure(cp) || is_domain_failure(fp))
            return std::numeric_limits<double>::quiet_NaN();
        return fp - bp * s.v - spec.eval_b(x) * ddy - cp * s.y - spec.eval_c(x) * s.v;
    }
};

// Dormand-Prince 4(5) pair, FSAL.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    double y = base.y, v = base.v;
    for (const auto& [coef, k] : terms) {
        y += h * coef * k->y;
        v += h * coef * k->v;
    }
    return {y, v};
}

double initial_step(const Rhs& rhs, double x0, const State& s0, const State& f0, double dir,
                    double span, double rel_tol, double abs_tol) {
    auto norm = [&](const State& s, const State& ref) {
        double sy = abs_tol + rel_tol * std::fabs(ref.y);
        double sv = abs_tol + rel_tol * std::fabs(ref.v);
        return std::sqrt(0.5 * ((s.y / sy) * (s.y / sy) + (s.v / sv) * (s.v / sv)));
    };
    double d0 = norm(s0, s0);
    double d1 = norm(f0, s0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    State s1{s0.y + dir * h0 * f0.y, s0.v + dir * h0 * f0.v};
    State f1 = rhs(x0 + dir * h0, s1);
    double d2 = norm({f1.y - f0.y, f1.v - f0.v}, s0) / h0;
    double h1;
    if (std::max(d1, d2) <= 1e-15)
        h1 = std::max(1e-6, h0 * 1e-3);
    else
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    return dir * std::min({100.0 * h0, h1, span});
}

}  // namespace

Trajectory Trajectory::from_nodes(std::vector<double> xs, std::vector<double> ys,
                                  std::vector<double> dys, std::vector<double> ddys,
                                  IntegrationStats stats) {
    if (xs.size() < 2 || xs.size() != ys.size() || xs.size() != dys.size() ||
        xs.size() != ddys.size())
        throw SpecError("trajectory needs at least two nodes with matching columns");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw SpecError("trajectory nodes must be strictly ascending");
    Trajectory t;
    t.xs_ = std::move(xs);
    t.ys_ = std::move(ys);
    t.dys_ = std::move(dys);
    t.ddys_ = std::move(ddys);
    t.stats_ = std::move(stats);
    return t;
}

Trajectory Trajectory::from_nodes(std::vector<double> xs, std::vector<double> ys,
                                  std::vector<double> dys, std::vector<double> ddys,
                                  std::vector<double> dddys, IntegrationStats stats) {
    if (!dddys.empty() && dddys.size() != xs.size())
        throw SpecError("trajectory needs at least two nodes with matching columns");
    Trajectory t = from_nodes(std::move(xs), std::move(ys), std::move(dys), std::move(ddys),
                              std::move(stats));
    t.dddys_ = std::move(dddys);
    return t;
}

std::size_t Trajectory::locate(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t idx = (it == xs_.begin()) ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
    return std::min(idx, xs_.size() - 2);
}

namespace {

double hermite(double t, double h, double p0, double m0, double p1, double m1) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * p1 +
           (t3 - t2) * h * m1;
}

double hermite_deriv(double t, double h, double p0, double m0, double p1, double m1) {
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * p1 +
            (3 * t2 - 2 * t) * h * m1) /
           h;
}

}  // namespace

double Trajectory::y(double x) const {
    std::size_t i = locate(x);
    double h = xs_[i + 1] - xs_[i];
    double t = (x - xs_[i]) / h;
    return hermite(t, h, ys_[i], dys_[i], ys_[i + 1], dys_[i + 1]);
}

double Trajectory::dy(double x) const {
    std::size_t i = locate(x);
    double h = xs_[i + 1] - xs_[i];
    double t = (x - xs_[i]) / h;
    return hermite(t, h, dys_[i], ddys_[i], dys_[i + 1], ddys_[i + 1]);
}

double Trajectory::ddy(double x) const {
    std::size_t i = locate(x);
    double h = xs_[i + 1] - xs_[i];
    double t = (x - xs_[i]) / h;
    if (!dddys_.empty() && std::isfinite(dddys_[i]) && std::isfinite(dddys_[i + 1]))
        return hermite(t, h, ddys_[i], dddys_[i], ddys_[i + 1], dddys_[i + 1]);
    return hermite_deriv(t, h, dys_[i], ddys_[i], dys_[i + 1], ddys_[i + 1]);
}

double Trajectory::max_abs_y() const {
    double m = 0.0;
    for (double v : ys_) m = std::max(m, std::fabs(v));
    return m;
}

Trajectory solve_ivp(const OdeSpec& spec, const InitialCondition& ic, double to_x, double rel_tol,
                     double abs_tol) {
    if (rel_tol < 1e-12 || rel_tol > 1e-3 || abs_tol < 1e-12 || abs_tol > 1e-3)
        throw SpecError("tolerances must lie in [1e-12, 1e-3]");
    if (to_x == ic.x0) throw SpecError("integration range is empty");
    for (double s : spec.singular_points)
        if (s >= std::min(ic.x0, to_x) && s <= std::max(ic.x0, to_x))
            throw SpecError("integration path crosses the singular point x = " +
                            std::to_string(s));

    const double dir = to_x > ic.x0 ? 1.0 : -1.0;
    Rhs rhs{spec};
    ThirdDeriv third(spec);

    std::vector<double> xs{ic.x0}, ys{ic.y0}, dys{ic.dy0}, ddys, dddys;
    State s{ic.y0, ic.dy0};
    State k1 = rhs(ic.x0, s);
    ddys.push_back(k1.v);
    dddys.push_back(third(ic.x0, s, k1.v));

    IntegrationStats stats;
    stats.rel_tol = rel_tol;
    stats.abs_tol = abs_tol;

    double x = ic.x0;
    double h = initial_step(rhs, x, s, k1, dir, std::fabs(to_x - ic.x0), rel_tol, abs_tol);

    long steps = 0;
    bool done = false;
    while (!done) {
        if (++steps > kMaxSteps) throw NumericError("step budget exhausted", x);
        if (std::fabs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x)))
            throw NumericError("step size underflow at x = " + std::to_string(x), x);
        if ((x + h - to_x) * dir > 0.0) h = to_x - x;
        bool last = (x + h == to_x);

        State k2 = rhs(x + c2 * h, axpy(s, h, {{a21, &k1}}));
        State k3 = rhs(x + c3 * h, axpy(s, h, {{a31, &k1}, {a32, &k2}}));
        State k4 = rhs(x + c4 * h, axpy(s, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        State k5 = rhs(x + c5 * h, axpy(s, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        State k6 = rhs(x + h, axpy(s, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        State snew = axpy(s, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        State k7 = rhs(x + h, snew);

        double erry = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);
        double errv = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
        double sy = abs_tol + rel_tol * std::max(std::fabs(s.y), std::fabs(snew.y));
        double sv = abs_tol + rel_tol * std::max(std::fabs(s.v), std::fabs(snew.v));
        double err = std::sqrt(0.5 * ((erry / sy) * (erry / sy) + (errv / sv) * (errv / sv)));

        if (!std::isfinite(err)) {
            stats.rejected++;
            h *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            stats.accepted++;
            x += h;
            if (last) x = to_x;
            s = snew;
            k1 = k7;  // FSAL
            xs.push_back(x);
            ys.push_back(s.y);
            dys.push_back(s.v);
            ddys.push_back(k7.v);
            dddys.push_back(third(x, s, k7.v));
            if (std::max(std::fabs(s.y), std::fabs(s.v)) > kBlowupGuard) {
                stats.truncated = true;
                stats.stop_reason = "solution magnitude exceeded 1e12 at x = " + std::to_string(x);
                done = true;
            }
            if (last) done = true;
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            stats.rejected++;
            double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.2, 1.0);
        }
    }

    if (dir < 0) {
        std::reverse(xs.begin(), xs.end());
        std::reverse(ys.begin(), ys.end());
        std::reverse(dys.begin(), dys.end());
        std::reverse(ddys.begin(), ddys.end());
        std::reverse(dddys.begin(), dddys.end());
    }
    return Trajectory::from_nodes(std::move(xs), std::move(ys), std::move(dys), std::move(ddys),
                                  std::move(dddys), std::move(stats));
}

Trajectory solve_ivp_window(const OdeSpec& spec, const InitialCondition& ic, double lo, double hi,
                            double rel_tol, double abs_tol) {
    if (!(lo < hi)) throw SpecError("window requires lo < hi");
    if (ic.x0 < lo || ic.x0 > hi) throw SpecError("initial condition lies outside the window");

    std::vector<double> xs, ys, dys, ddys, dddys;
    IntegrationStats stats;
    stats.rel_tol = rel_tol;
    stats.abs_tol = abs_tol;

    if (ic.x0 > lo) {
        Trajectory left = solve_ivp(spec, ic, lo, rel_tol, abs_tol);
        xs = left.xs();
        ys = left.ys();
        dys = left.dys();
        ddys = left.ddys();
        dddys = left.dddys();
        stats.accepted += left.stats().accepted;
        stats.rejected += left.stats().rejected;
        stats.truncated |= left.stats().truncated;
        if (!left.stats().stop_reason.empty()) stats.stop_reason = left.stats().stop_reason;
    } else {
        xs = {ic.x0};
        ys = {ic.y0};
        dys = {ic.dy0};
        Rhs rhs{spec};
        State k1 = rhs(ic.x0, {ic.y0, ic.dy0});
        ddys = {k1.v};
        dddys = {ThirdDeriv(spec)(ic.x0, {ic.y0, ic.dy0}, k1.v)};
    }

    if (ic.x0 < hi) {
        Trajectory right = solve_ivp(spec, ic, hi, rel_tol, abs_tol);
        // first node duplicates ic.x0
        xs.insert(xs.end(), right.xs().begin() + 1, right.xs().end());
        ys.insert(ys.end(), right.ys().begin() + 1, right.ys().end());
        dys.insert(dys.end(), right.dys().begin() + 1, right.dys().end());
        ddys.insert(ddys.end(), right.ddys().begin() + 1, right.ddys().end());
        dddys.insert(dddys.end(), right.dddys().begin() + 1, right.dddys().end());
        stats.accepted += right.stats().accepted;
        stats.rejected += right.stats().rejected;
        stats.truncated |= right.stats().truncated;
        if (!right.stats().stop_reason.empty()) {
            if (!stats.stop_reason.empty()) stats.stop_reason += "; ";
            stats.stop_reason += right.stats().stop_reason;
        }
    }

    return Trajectory::from_nodes(std::move(xs), std::move(ys), std::move(dys), std::move(ddys),
                                  std::move(dddys), std::move(stats));
}

// ---------------------------------------------------------------------------
// Zero location

namespace {

double refine_zero(const Trajectory& t, double lo, double hi, double flo) {
    // Bisection on the interpolant; the bracket [lo, hi] has a sign change.
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-10 * (1.0 + std::fabs(mid))) return mid;
        double fm = t.y(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ZeroList count_zeros(const Trajectory& t, double lo, double hi) {
    if (!(lo < hi)) throw SpecError("zero count range requires lo < hi");
    if (lo < t.x_min() - 1e-12 || hi > t.x_max() + 1e-12)
        throw SpecError("zero count range exceeds trajectory coverage");
    lo = std::max(lo, t.x_min());
    hi = std::min(hi, t.x_max());

    const auto& xs = t.xs();
    const auto& ys = t.ys();
    const auto& dys = t.dys();
    const double tangent_tol = t.stats().abs_tol;
    const double dy_scale = [&] {
        double m = 0.0;
        for (double v : dys) m = std::max(m, std::fabs(v));
        return m > 0 ? m : 1.0;
    }();

    ZeroList out;
    auto push_zero = [&](double z) {
        double sep = 1e-9 * (1.0 + std::fabs(z));
        if (!out.zeros.empty() && z - out.zeros.back().x <= sep) return;
        Zero zr;
        zr.x = z;
        zr.residual = std::fabs(t.y(z));
        zr.simple = std::fabs(t.dy(z)) > 1e-9 * dy_scale;
        out.zeros.push_back(zr);
    };

    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double a = std::max(xs[i], lo), b = std::min(xs[i + 1], hi);
        if (!(a < b)) continue;
        double h = xs[i + 1] - xs[i];

        // Cubic in t on this step: y = c0 + c1 t + c2 t^2 + c3 t^3.
        double y0 = ys[i], y1 = ys[i + 1], m0 = h * dys[i], m1 = h * dys[i + 1];
        double c1 = m0;
        double c2 = -3 * y0 - 2 * m0 + 3 * y1 - m1;
        double c3 = 2 * y0 + m0 - 2 * y1 + m1;

        // Breakpoints: segment ends plus interior extrema of the cubic, so a
        // double dip inside one step cannot hide a sign change.
        double ta = (a - xs[i]) / h, tb = (b - xs[i]) / h;
        double pts[4];
        int npts = 0;
        pts[npts++] = ta;
        double qa = 3 * c3, qb = 2 * c2, qc = c1;
        if (qa != 0.0) {
            double disc = qb * qb - 4 * qa * qc;
            if (disc > 0.0) {
                double sq = std::sqrt(disc);
                double r1 = (-qb - sq) / (2 * qa), r2 = (-qb + sq) / (2 * qa);
                if (r1 > r2) std::swap(r1, r2);
                if (r1 > ta && r1 < tb) pts[npts++] = r1;
                if (r2 > ta && r2 < tb) pts[npts++] = r2;
            }
        } else if (qb != 0.0) {
            double r = -qc / qb;
            if (r > ta && r < tb) pts[npts++] = r;
        }
        pts[npts++] = tb;

        for (int p = 0; p + 1 < npts; ++p) {
            double xa = xs[i] + pts[p] * h, xb = xs[i] + pts[p + 1] * h;
            double fa = t.y(xa), fb = t.y(xb);
            if (fa == 0.0 && p == 0) push_zero(xa);
            if (fb == 0.0) {
                push_zero(xb);
                continue;
            }
            if (fa == 0.0) continue;
            if ((fa < 0) != (fb < 0)) push_zero(refine_zero(t, xa, xb, fa));
        }

        // Interior extrema that graze zero without crossing are reported as
        // suspects, not counted.
        for (int p = 1; p + 1 < npts; ++p) {
            double xe = xs[i] + pts[p] * h;
            double fe = t.y(xe);
            if (fe == 0.0 || std::fabs(fe) >= tangent_tol) continue;
            bool near_zero = false;
            for (const auto& z : out.zeros)
                if (std::fabs(z.x - xe) < 1e-8 * (1 + std::fabs(xe))) near_zero = true;
            if (!near_zero &&
                (out.suspects.empty() || std::fabs(out.suspects.back() - xe) > 1e-12))
                out.suspects.push_back(xe);
        }
    }
    return out;
}

double residual(const OdeSpec& spec, const Trajectory& t, int samples) {
    if (samples < 10) throw SpecError("residual needs at least 10 samples");
    double lo = t.x_min(), hi = t.x_max();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = lo + (hi - lo) * (i + 0.5) / samples;
        double b = spec.eval_b(x), c = spec.eval_c(x), f = spec.eval_f(x);
        if (is_domain_failure(b) || is_domain_failure(c) || is_domain_failure(f)) continue;
        double r = std::fabs(t.ddy(x) + b * t.dy(x) + c * t.y(x) - f);
        worst = std::max(worst, r);
    }
    return worst;
}

Trajectory subtract_expr(const Trajectory& t, const Expr& e, const ParamBindings& params) {
    Expr de = differentiate(e);
    Expr dde = differentiate(de);
    Expr ddde = differentiate(dde);
    std::vector<double> xs = t.xs(), ys = t.ys(), dys = t.dys(), ddys = t.ddys(),
                        dddys = t.dddys();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = eval(e, xs[i], params);
        double dv = eval(de, xs[i], params);
        double ddv = eval(dde, xs[i], params);
        if (is_domain_failure(v) || is_domain_failure(dv) || is_domain_failure(ddv))
            throw SpecError("expression not evaluable at trajectory node x = " +
                            std::to_string(xs[i]));
        ys[i] -= v;
        dys[i] -= dv;
        ddys[i] -= ddv;
        if (!dddys.empty()) {
            double dddv = eval(ddde, xs[i], params);
            // drop to the lower-order interpolant there rather than fail
            dddys[i] = is_domain_failure(dddv) ? std::numeric_limits<double>::quiet_NaN()
                                               : dddys[i] - dddv;
        }
    }
    return Trajectory::from_nodes(std::move(xs), std::move(ys), std::move(dys), std::move(ddys),
                                  std::move(dddys), t.stats());
}

}  // namespace oscil
