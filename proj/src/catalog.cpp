#include "oscil/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscil/verify.hpp"

namespace oscil {

namespace {

using O = Oscillation;

std::vector<CatalogEntry> build_entries() {
    std::vector<CatalogEntry> v;

    v.push_back({"parabolic_cylinder",
                 "Weber equation y'' + (x^2/4 - a) y = 0; oscillates where |x| >= 2 sqrt(a).",
                 "0", "(1/4)*x^2 - a", "0",
                 {{"a", 16.0}},
                 {},
                 {-20.0, 20.0, true, true},
                 {"-2*sqrt(a)", "2*sqrt(a)"},
                 {O::Oscillatory, O::NonOscillatory, O::Oscillatory},
                 "", "",
                 {0.0, 1.0, 0.0}});

    v.push_back({"airy",
                 "Airy equation y'' - x y = 0; oscillates on the negative axis.",
                 "0", "-x", "0",
                 {},
                 {},
                 {-30.0, 10.0, true, false},
                 {"0"},
                 {O::Oscillatory, O::NonOscillatory},
                 "", "",
                 {0.0, 0.3550280538878172, -0.2588194037928068}});  // Ai(0), Ai'(0)

    v.push_back({"bessel",
                 "Bessel equation of order n; oscillates beyond sqrt(n^2 - 1/4).",
                 "1/x", "1 - n^2/x^2", "0",
                 {{"n", 2.0}},
                 {0.0},
                 {0.5, 30.0, false, true},
                 {"sqrt(n^2 - 1/4)"},
                 {O::NonOscillatory, O::Oscillatory},
                 "", "",
                 {0.5, 1.0, 0.0}});

    v.push_back({"hermite",
                 "Hermite equation y'' - 2x y' + 2 lambda y = 0; D < 0 only on the finite "
                 "stretch |x| < sqrt(2 lambda + 1), which the tail rule cannot certify.",
                 "-2*x", "2*lambda", "0",
                 {{"lambda", 18.0}},
                 {},
                 {-10.0, 10.0, true, true},
                 {"-sqrt(2*lambda + 1)", "sqrt(2*lambda + 1)"},
                 {O::NonOscillatory, O::Indeterminate, O::NonOscillatory},
                 "", "",
                 {0.0, 1.0, 0.0}});

    v.push_back({"modified_bessel",
                 "Modified Bessel equation of order n; D = (4n^2 - 1)/x^2 + 4 stays positive "
                 "for n >= 1/2.",
                 "1/x", "-(1 + n^2/x^2)", "0",
                 {{"n", 1.0}},
                 {0.0},
                 {0.5, 40.0, false, true},
                 {},
                 {O::NonOscillatory},
                 "", "",
                 {0.5, 1.0, 0.0}});

    v.push_back({"euler_log",
                 "Euler equation with solution sin(k ln x): D tends to zero from below, so "
                 "the tail rule stays silent although the solution oscillates.",
                 "1/x", "k^2/x^2", "0",
                 {{"k", 2.0}},
                 {0.0},
                 {0.5, 120.0, false, true},
                 {},
                 {O::Indeterminate},
                 "sin(k*ln(x))", "",
                 {1.0, 0.0, 2.0}});  // matches sin(k ln x) at k = 2

    v.push_back({"sqrt_case",
                 "y'' + y/(4 x^2) = 0 with solution sqrt(x): D tends to zero from below and "
                 "the solution never vanishes twice.",
                 "0", "1/(4*x^2)", "0",
                 {},
                 {0.0},
                 {0.5, 100.0, false, true},
                 {},
                 {O::Indeterminate},
                 "sqrt(x)", "",
                 {1.0, 1.0, 0.5}});

    v.push_back({"nonhomog_airy",
                 "Forced Airy equation y'' - x y = 5 x^2 with particular solution -5x; "
                 "y + 5x oscillates on the negative axis.",
                 "0", "-x", "5*x^2",
                 {},
                 {},
                 {-25.0, 0.0, true, false},
                 {"0"},
                 {O::Oscillatory},
                 "", "-5*x",
                 {-1.0, 0.0, 1.0}});

    return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_entries();
    return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return &e;
    return nullptr;
}

namespace {

ParamBindings merged_params(const CatalogEntry& entry, const ParamBindings& overrides) {
    ParamBindings p = entry.defaults;
    for (const auto& [k, val] : overrides) p[k] = val;
    return p;
}

}  // namespace

OdeSpec make_spec(const CatalogEntry& entry, const ParamBindings& overrides) {
    return OdeSpec::create(entry.b, entry.c, entry.f, merged_params(entry, overrides),
                           entry.singular_points);
}

std::vector<double> boundary_values(const CatalogEntry& entry, const ParamBindings& overrides) {
    ParamBindings p = merged_params(entry, overrides);
    std::vector<double> out;
    for (const auto& text : entry.boundaries) {
        double v = eval(parse(text), 0.0, p);
        if (is_domain_failure(v))
            throw SpecError("boundary expression not evaluable: " + text);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

RegressionResult regression_check(const CatalogEntry& entry, double margin, int samples) {
    RegressionResult res;
    res.name = entry.name;

    OdeSpec spec = make_spec(entry);
    res.report = classify(spec, entry.window, margin, samples);

    if (res.report.pieces.size() != entry.labels.size())
        res.notes.push_back("expected " + std::to_string(entry.labels.size()) + " pieces, got " +
                            std::to_string(res.report.pieces.size()));
    else
        for (std::size_t i = 0; i < entry.labels.size(); ++i)
            if (res.report.pieces[i].verdict != entry.labels[i])
                res.notes.push_back("piece " + std::to_string(i) + " is " +
                                    to_string(res.report.pieces[i].verdict) + ", expected " +
                                    to_string(entry.labels[i]));

    std::vector<double> expected = boundary_values(entry);
    if (res.report.roots.size() != expected.size())
        res.notes.push_back("expected " + std::to_string(expected.size()) + " boundaries, got " +
                            std::to_string(res.report.roots.size()));
    else
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (std::fabs(res.report.roots[i] - expected[i]) > 1e-6)
                res.notes.push_back("boundary " + fmt(expected[i]) + " located at " +
                                    fmt(res.report.roots[i]));

    // One solution per piece: a NonOscillatory verdict allows at most one
    // zero, an Oscillatory one should produce several.
    for (std::size_t i = 0; i < res.report.pieces.size(); ++i) {
        const auto& piece = res.report.pieces[i];
        if (piece.verdict == Oscillation::Indeterminate) continue;
        std::size_t n = 0;
        if (spec.homogeneous) {
            InitialCondition ic{piece.lo, 0.0, 1.0};
            Trajectory t = solve_ivp_window(spec, ic, piece.lo, piece.hi, 1e-10, 1e-12);
            n = count_zeros(t, std::max(piece.lo, t.x_min()), std::min(piece.hi, t.x_max()))
                    .count();
        } else {
            if (entry.particular.empty()) continue;
            if (entry.ic.x0 < piece.lo || entry.ic.x0 > piece.hi) continue;
            Window w{piece.lo, piece.hi, false, false};
            auto osc = oscillates_about(spec, parse(entry.particular), entry.ic, w);
            n = osc.zeros.count();
        }
        if (piece.verdict == Oscillation::NonOscillatory && n > 1)
            res.notes.push_back("piece " + std::to_string(i) + " is NonOscillatory but a probe "
                                "solution vanished " + std::to_string(n) + " times");
        if (piece.verdict == Oscillation::Oscillatory && n < 2)
            res.notes.push_back("piece " + std::to_string(i) + " is Oscillatory but a probe "
                                "solution vanished only " + std::to_string(n) + " times");
    }

    res.ok = res.notes.empty();
    return res;
}

}  // namespace oscil
