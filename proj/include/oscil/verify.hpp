#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oscil/classify.hpp"
#include "oscil/integrate.hpp"
#include "oscil/ode.hpp"

namespace oscil {

struct CheckOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    int samples = 512;        // probe/sample grid resolution
    double threshold = 1e-6;  // residual bound folded into `pass` where relevant
};

// Interlacing evidence for u'' + q u = 0 pairs with q1 > q2: every open
// interval between consecutive zeros of the slow solution must contain a zero
// of the fast one, strictly inside.  Fast zeros landing on a gap endpoint are
// reported in `shared` and never satisfy a gap.
struct GapCheck {
    double lo = 0.0, hi = 0.0;
    std::vector<double> interior;  // fast zeros strictly inside
    bool pass = false;
};

struct SturmCheckResult {
    double min_gap = 0.0;  // min of q1 - q2 over the probe grid
    std::vector<double> zeros_fast, zeros_slow;
    std::vector<GapCheck> gaps;
    std::vector<double> shared;
    double pass_rate = 1.0;
    bool pass = false;
};

SturmCheckResult check_sturm(const Expr& q1, const Expr& q2, const Window& w,
                             const InitialCondition& ic1, const InitialCondition& ic2,
                             const ParamBindings& params = {}, const CheckOptions& opt = {});

// Residual of dW/dx = (q1 - q2) u1 u2 for W = u1 u2' - u1' u2, with second
// derivatives taken from the integrated trajectories; also confirms W is
// increasing wherever q1 > q2 and u1 u2 > 0.  No sign hypothesis on q1 - q2.
struct WronskianCheckResult {
    double max_residual = 0.0;
    double at_x = 0.0;
    double w_min = 0.0, w_max = 0.0;  // range of W over the samples
    int monotone_violations = 0;
    bool monotone_ok = true;
    bool pass = false;
};

WronskianCheckResult check_wronskian(const Expr& q1, const Expr& q2, const Window& w,
                                     const InitialCondition& ic1, const InitialCondition& ic2,
                                     const ParamBindings& params = {},
                                     const CheckOptions& opt = {});

// Logarithmic derivative m = y'/y of a homogeneous solution must satisfy
// -m' = m^2 + b m + c away from zeros of y; m' comes from the identity
// m' = y''/y - m^2 with y'' read off the trajectory.
struct RiccatiCheckResult {
    double max_residual = 0.0;
    double at_x = 0.0;
    double cutoff = 0.0;  // samples with |y| < cutoff * max|y| are skipped
    std::vector<std::pair<double, double>> m_samples;  // (x, m)
    int skipped = 0;
    bool pass = false;
};

RiccatiCheckResult check_riccati(const OdeSpec& spec, const Trajectory& t, double cutoff = 1e-3,
                                 int samples = 512, double threshold = 1e-4);

// Solves the original equation and u'' + Q u = 0 side by side, with the
// initial slope transformed by the product rule at the anchor, and confirms
// psi = w * u within tolerance plus a one-to-one zero-set match.
struct NormalFormCheckResult {
    double max_deviation = 0.0;  // max |psi - w u| / scale
    double scale = 1.0;          // max(1, max |psi|)
    std::vector<double> zeros_psi, zeros_u;
    bool zero_sets_match = false;
    double max_zero_gap = 0.0;
    bool pass = false;
};

NormalFormCheckResult check_normal_form(const OdeSpec& spec, const InitialCondition& ic,
                                        const Window& w, double tol = 1e-6,
                                        const CheckOptions& opt = {});

// For a forced equation: verifies the claimed particular solution against the
// equation (HypothesisError past the gate), then counts zeros of psi - psi_p.
struct OscillatesAboutResult {
    double particular_residual = 0.0;
    ZeroList zeros;
};

OscillatesAboutResult oscillates_about(const OdeSpec& spec, const Expr& particular,
                                       const InitialCondition& ic, const Window& w,
                                       double gate = 1e-8, const CheckOptions& opt = {});

}  // namespace oscil
