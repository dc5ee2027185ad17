#pragma once

#include <string>
#include <vector>

#include "oscil/ode.hpp"

namespace oscil {

struct InitialCondition {
    double x0 = 0.0;
    double y0 = 0.0;
    double dy0 = 0.0;

    bool trivial() const { return y0 == 0.0 && dy0 == 0.0; }
};

struct IntegrationStats {
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    long accepted = 0;
    long rejected = 0;
    bool truncated = false;       // stopped early (magnitude guard)
    std::string stop_reason;
};

/// Dense numeric solution (x, y, y') with per-step cubic Hermite
/// interpolation for both y and y'. Nodes are stored ascending in x
/// regardless of integration direction. Immutable once built.
class Trajectory {
public:
    static Trajectory from_nodes(std::vector<double> xs, std::vector<double> ys,
                                 std::vector<double> dys, std::vector<double> ddys,
                                 IntegrationStats stats = {});

    // with third-derivative nodes: y'' interpolation gains an order
    static Trajectory from_nodes(std::vector<double> xs, std::vector<double> ys,
                                 std::vector<double> dys, std::vector<double> ddys,
                                 std::vector<double> dddys, IntegrationStats stats);

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    bool covers(double lo, double hi) const { return lo >= x_min() && hi <= x_max(); }

    double y(double x) const;    // cubic Hermite on (y, y')
    double dy(double x) const;   // cubic Hermite on (y', y'')
    double ddy(double x) const;  // cubic Hermite on (y'', y''') when third
                                 // derivatives are available, otherwise the
                                 // derivative of the y' interpolant

    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    const std::vector<double>& dys() const { return dys_; }
    const std::vector<double>& ddys() const { return ddys_; }
    const std::vector<double>& dddys() const { return dddys_; }
    const IntegrationStats& stats() const { return stats_; }

    double max_abs_y() const;

    /// Index i with xs[i] <= x <= xs[i+1] (clamped at the ends).
    std::size_t locate(double x) const;

private:
    std::vector<double> xs_, ys_, dys_, ddys_, dddys_;  // dddys_ may be empty
    IntegrationStats stats_;
};

struct Zero {
    double x = 0.0;
    double residual = 0.0;  // |y| after refinement
    bool simple = true;     // y' != 0 at the zero
};

struct ZeroList {
    std::vector<Zero> zeros;        // ascending
    std::vector<double> suspects;   // tangential near-zeros, not counted
    std::size_t count() const { return zeros.size(); }
};

/// Integrate spec from ic to to_x (either direction) with an adaptive
/// embedded Runge-Kutta 4(5) pair. Local error per step is kept within
/// the tolerances; tolerances must lie in [1e-12, 1e-3].
/// Stops and truncates when |y| or |y'| exceeds the blow-up guard (1e12);
/// throws NumericError on step-size underflow and SingularPathError when a
/// coefficient stops being evaluable mid-path.
Trajectory solve_ivp(const OdeSpec& spec, const InitialCondition& ic, double to_x,
                     double rel_tol = 1e-10, double abs_tol = 1e-12);

/// Integrate from ic.x0 outward in both directions until [lo, hi] is covered
/// (or truncation strikes first) and merge into one ascending trajectory.
Trajectory solve_ivp_window(const OdeSpec& spec, const InitialCondition& ic, double lo, double hi,
                            double rel_tol = 1e-10, double abs_tol = 1e-12);

/// Zeros of the interpolated solution on [lo, hi]: per-step sign changes are
/// bracketed (interior extrema of the cubic included) and refined by
/// bisection to 1e-10*(1+|x|). Tangential near-zeros are reported as
/// suspects, not counted.
ZeroList count_zeros(const Trajectory& t, double lo, double hi);

/// Max over `samples` points of |y'' + b y' + c y - f| with y'' taken from
/// the derivative of the y' interpolant. An integration sanity gauge.
double residual(const OdeSpec& spec, const Trajectory& t, int samples);

/// Trajectory of t minus the closed form e: nodes become
/// (x, y - e(x), y' - e'(x), y'' - e''(x)). Throws SpecError when e is not
/// evaluable at a node.
Trajectory subtract_expr(const Trajectory& t, const Expr& e, const ParamBindings& params);

}  // namespace oscil
