#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oscil/ode.hpp"

namespace oscil {

enum class Oscillation { Oscillatory, NonOscillatory, Indeterminate };

std::string to_string(Oscillation v);

struct Window {
    double lo = 0.0;
    double hi = 0.0;
    bool unbounded_left = false;   // domain continues past lo
    bool unbounded_right = false;  // domain continues past hi
};

// Maximal subinterval of the window on which the discriminant keeps one sign.
// Roots of D sit between pieces and belong to neither.
struct SignPiece {
    double lo = 0.0;
    double hi = 0.0;
    int sign = 0;  // +1: D >= 0 throughout, -1: D < 0 throughout
    Oscillation verdict = Oscillation::Indeterminate;
    std::string justification;  // "D>=0", "D<=-margin", or "none"
    double witness = 0.0;       // inf of D on a D>=0 piece, sup on a D<0 piece
};

struct ClassificationReport {
    std::string b, c, f;  // the analyzed equation, echoed
    ParamBindings params;
    Window window;
    double margin = 0.0;
    int samples = 0;
    std::string discriminant;
    std::string naive_discriminant;
    std::vector<SignPiece> pieces;
    std::vector<double> roots;                       // refined zeros of D, ascending
    std::vector<std::pair<double, double>> invalid;  // D not evaluable here
};

// Grid scan of an expression's sign over the window: pieces of constant sign,
// refined sign-change points, and subranges where evaluation fails.
struct SignScan {
    std::vector<SignPiece> pieces;  // verdict/justification left unset
    std::vector<double> roots;
    std::vector<std::pair<double, double>> invalid;
};

SignScan scan_sign_regions(const Expr& e, const ParamBindings& params, const Window& w,
                           int grid_n = 2048);

// Sign analysis of the corrected discriminant D = b^2 - 4c + 2b' over the
// window.  A D<0 piece is Oscillatory only when it reaches a window edge
// marked unbounded and D stays <= -margin on a probe sequence extending one
// hundred half-widths past that edge; interior D<0 pieces are Indeterminate.
ClassificationReport classify(const OdeSpec& spec, const Window& window, double margin = 1e-6,
                              int samples = 2048);

}  // namespace oscil
