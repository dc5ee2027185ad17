#include "oscil/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace oscil {

std::string fmt_g17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write(const ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += ordered_json(it.key()).dump();
                out += ": ";
                write(it.value(), out, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write(v, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += fmt_g17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string write_json(const ordered_json& j, int indent) {
    std::string out;
    write(j, out, indent, 0);
    out += "\n";
    return out;
}

ordered_json json_of(const Window& w) {
    return {{"lo", w.lo},
            {"hi", w.hi},
            {"unbounded_left", w.unbounded_left},
            {"unbounded_right", w.unbounded_right}};
}

ordered_json json_of(const ClassificationReport& r) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    ordered_json pieces = ordered_json::array();
    for (const auto& p : r.pieces)
        pieces.push_back({{"lo", p.lo},
                          {"hi", p.hi},
                          {"sign", p.sign},
                          {"label", to_string(p.verdict)},
                          {"justification", p.justification},
                          {"witness", p.witness}});
    ordered_json invalid = ordered_json::array();
    for (const auto& [lo, hi] : r.invalid) invalid.push_back({{"lo", lo}, {"hi", hi}});
    return {{"spec", {{"b", r.b}, {"c", r.c}, {"f", r.f}, {"params", params}}},
            {"D", r.discriminant},
            {"naiveD", r.naive_discriminant},
            {"pieces", pieces},
            {"roots", r.roots},
            {"invalid", invalid},
            {"options", {{"window", json_of(r.window)}, {"margin", r.margin}, {"samples", r.samples}}}};
}

ordered_json json_of(const Zero& z) {
    return {{"x", z.x}, {"residual", z.residual}, {"simple", z.simple}};
}

ordered_json json_of(const ZeroList& zl) {
    ordered_json zeros = ordered_json::array();
    for (const auto& z : zl.zeros) zeros.push_back(json_of(z));
    return {{"count", zl.count()}, {"zeros", zeros}, {"suspects", zl.suspects}};
}

ordered_json json_of(const IntegrationStats& s) {
    return {{"rel_tol", s.rel_tol},
            {"abs_tol", s.abs_tol},
            {"accepted", s.accepted},
            {"rejected", s.rejected},
            {"truncated", s.truncated},
            {"stop_reason", s.stop_reason}};
}

ordered_json json_of(const SturmCheckResult& r) {
    ordered_json gaps = ordered_json::array();
    for (const auto& g : r.gaps)
        gaps.push_back({{"lo", g.lo}, {"hi", g.hi}, {"interior", g.interior}, {"pass", g.pass}});
    return {{"pass", r.pass},
            {"pass_rate", r.pass_rate},
            {"min_gap", r.min_gap},
            {"zeros_fast", r.zeros_fast},
            {"zeros_slow", r.zeros_slow},
            {"gaps", gaps},
            {"shared", r.shared}};
}

ordered_json json_of(const WronskianCheckResult& r) {
    return {{"pass", r.pass},
            {"max_residual", r.max_residual},
            {"at_x", r.at_x},
            {"w_min", r.w_min},
            {"w_max", r.w_max},
            {"monotone_ok", r.monotone_ok},
            {"monotone_violations", r.monotone_violations}};
}

ordered_json json_of(const RiccatiCheckResult& r) {
    ordered_json samples = ordered_json::array();
    for (const auto& [x, m] : r.m_samples) samples.push_back({{"x", x}, {"m", m}});
    return {{"pass", r.pass},
            {"max_residual", r.max_residual},
            {"at_x", r.at_x},
            {"cutoff", r.cutoff},
            {"skipped", r.skipped},
            {"m_samples", samples}};
}

ordered_json json_of(const NormalFormCheckResult& r) {
    return {{"pass", r.pass},
            {"max_deviation", r.max_deviation},
            {"scale", r.scale},
            {"zero_sets_match", r.zero_sets_match},
            {"max_zero_gap", r.max_zero_gap},
            {"zeros_psi", r.zeros_psi},
            {"zeros_u", r.zeros_u}};
}

ordered_json json_of(const OscillatesAboutResult& r) {
    return {{"pass", true},  // reaching a result means the residual gate held
            {"particular_residual", r.particular_residual},
            {"zeros", json_of(r.zeros)}};
}

ordered_json json_of(const CatalogEntry& e) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : e.defaults) params[k] = v;
    ordered_json labels = ordered_json::array();
    for (auto l : e.labels) labels.push_back(to_string(l));
    return {{"name", e.name},
            {"note", e.note},
            {"b", e.b},
            {"c", e.c},
            {"f", e.f},
            {"params", params},
            {"singular_points", e.singular_points},
            {"window", json_of(e.window)},
            {"boundaries", e.boundaries},
            {"boundary_values", boundary_values(e)},
            {"labels", labels},
            {"exact", e.exact},
            {"particular", e.particular},
            {"ic", {{"x0", e.ic.x0}, {"y0", e.ic.y0}, {"dy0", e.ic.dy0}}}};
}

ordered_json json_of(const RegressionResult& r) {
    return {{"name", r.name}, {"ok", r.ok}, {"notes", r.notes}, {"report", json_of(r.report)}};
}

std::string trajectory_csv(const Trajectory& t) {
    std::string out = "x,y,dy\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += fmt_g17(t.xs()[i]);
        out += ',';
        out += fmt_g17(t.ys()[i]);
        out += ',';
        out += fmt_g17(t.dys()[i]);
        out += '\n';
    }
    return out;
}

}  // namespace oscil
