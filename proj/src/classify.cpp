#include "oscil/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscil {

std::string to_string(Oscillation v) {
    switch (v) {
        case Oscillation::Oscillatory: return "Oscillatory";
        case Oscillation::NonOscillatory: return "NonOscillatory";
        default: return "Indeterminate";
    }
}

namespace {

double refine_sign_change(const Expr& e, const ParamBindings& params, double lo, double hi,
                          double flo) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-10 * (1.0 + std::fabs(mid))) return mid;
        double fm = eval(e, mid, params);
        if (is_domain_failure(fm) || fm == 0.0) return mid;
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

SignScan scan_sign_regions(const Expr& e, const ParamBindings& params, const Window& w,
                           int grid_n) {
    const double lo = w.lo, hi = w.hi;
    if (!(lo < hi)) throw SpecError("sign scan requires lo < hi");
    if (grid_n < 16) throw SpecError("sign scan needs at least 16 grid points");

    SignScan scan;
    const double step = (hi - lo) / grid_n;
    const double hairline = 1e-9 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));

    double piece_lo = lo;
    int piece_sign = 0;    // first nonzero sample sign seen in the open piece
    bool in_piece = true;  // false while walking an invalid gap
    double gap_lo = lo;
    double prev_x = lo;
    double prev_v = 0.0;
    bool have_prev = false;

    auto close_piece = [&](double at) {
        if (at - piece_lo > hairline) {
            SignPiece p;
            p.lo = piece_lo;
            p.hi = at;
            p.sign = piece_sign == 0 ? 1 : piece_sign;  // D identically 0 counts as D >= 0
            scan.pieces.push_back(p);
        }
    };

    for (int i = 0; i <= grid_n; ++i) {
        double x = (i == grid_n) ? hi : lo + i * step;
        double v = eval(e, x, params);

        if (is_domain_failure(v)) {
            if (in_piece) {
                close_piece(have_prev ? prev_x : piece_lo);
                gap_lo = have_prev ? prev_x : piece_lo;
                in_piece = false;
            }
            have_prev = false;
            continue;
        }

        // exact zeros sit on the D >= 0 side; a root is recorded only where
        // the sign strictly flips, so an identically-zero stretch stays one piece
        int s = v < 0.0 ? -1 : 1;

        if (!in_piece) {
            scan.invalid.emplace_back(gap_lo, x);
            in_piece = true;
            piece_lo = x;
            piece_sign = s;
        } else if (piece_sign == 0) {
            piece_sign = s;
        } else if (have_prev && s != piece_sign) {
            double r = refine_sign_change(e, params, prev_x, x, prev_v);
            if (scan.roots.empty() || r - scan.roots.back() > hairline)
                scan.roots.push_back(r);
            close_piece(r);
            piece_lo = r;
            piece_sign = s;
        }

        prev_x = x;
        prev_v = v;
        have_prev = true;
    }

    if (in_piece)
        close_piece(hi);
    else
        scan.invalid.emplace_back(gap_lo, hi);

    if (scan.pieces.empty() && scan.roots.empty())
        throw SpecError("expression is not evaluable anywhere in the window");
    return scan;
}

namespace {

// Geometric ladder of probe points past an unbounded edge, reaching from
// half_width/100 out to 100*half_width beyond it.
bool tail_stays_negative(const Expr& d, const ParamBindings& params, double edge, double dir,
                         double half_width, double margin) {
    constexpr int kProbes = 64;
    const double near = half_width / 100.0, far = 100.0 * half_width;
    const double ratio = std::pow(far / near, 1.0 / (kProbes - 1));
    double dist = near;
    for (int i = 0; i < kProbes; ++i) {
        double x = edge + dir * dist;
        double v = eval(d, x, params);
        if (is_domain_failure(v) || !(v <= -margin)) return false;
        dist *= ratio;
    }
    return true;
}

// inf of D over interior sample points for D>=0 pieces, sup for D<0 ones
double piece_witness(const Expr& d, const ParamBindings& params, const SignPiece& p) {
    constexpr int kSamples = 256;
    bool want_inf = p.sign > 0;
    double w = want_inf ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
        double x = p.lo + (p.hi - p.lo) * (i + 0.5) / kSamples;
        double v = eval(d, x, params);
        if (is_domain_failure(v)) continue;
        w = want_inf ? std::min(w, v) : std::max(w, v);
    }
    return w;
}

}  // namespace

ClassificationReport classify(const OdeSpec& spec, const Window& window, double margin,
                              int samples) {
    if (!(window.lo < window.hi)) throw SpecError("window requires lo < hi");
    if (!(margin > 0.0)) throw SpecError("margin must be positive");
    for (double s : spec.singular_points)
        if (s > window.lo && s < window.hi)
            throw SpecError("window straddles the singular point x = " + std::to_string(s));

    Expr d = discriminant(spec);
    SignScan scan = scan_sign_regions(d, spec.params, window, samples);

    ClassificationReport report;
    report.b = spec.b.str();
    report.c = spec.c.str();
    report.f = spec.f.str();
    report.params = spec.params;
    report.window = window;
    report.margin = margin;
    report.samples = samples;
    report.discriminant = d.str();
    report.naive_discriminant = naive_discriminant(spec).str();
    report.roots = std::move(scan.roots);
    report.invalid = std::move(scan.invalid);
    report.pieces = std::move(scan.pieces);

    const double half_width = 0.5 * (window.hi - window.lo);
    const double edge_tol = 1e-9 * (1.0 + std::max(std::fabs(window.lo), std::fabs(window.hi)));

    for (auto& p : report.pieces) {
        p.witness = piece_witness(d, spec.params, p);
        if (p.sign > 0) {
            p.verdict = Oscillation::NonOscillatory;
            p.justification = "D>=0";
            continue;
        }
        bool at_left = window.unbounded_left && std::fabs(p.lo - window.lo) <= edge_tol;
        bool at_right = window.unbounded_right && std::fabs(p.hi - window.hi) <= edge_tol;
        bool certified =
            (at_left && tail_stays_negative(d, spec.params, window.lo, -1.0, half_width, margin)) ||
            (at_right && tail_stays_negative(d, spec.params, window.hi, 1.0, half_width, margin));
        if (certified) {
            p.verdict = Oscillation::Oscillatory;
            p.justification = "D<=-margin";
        } else {
            p.verdict = Oscillation::Indeterminate;
            p.justification = "none";
        }
    }
    return report;
}

}  // namespace oscil
