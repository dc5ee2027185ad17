// oscil: oscillation analysis of y'' + b(x) y' + c(x) y = f(x)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscil/catalog.hpp"
#include "oscil/classify.hpp"
#include "oscil/integrate.hpp"
#include "oscil/json_io.hpp"
#include "oscil/ode.hpp"
#include "oscil/verify.hpp"

namespace {

using namespace oscil;

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw SpecError("cannot parse " + what + " from '" + text + "'");
    }
}

std::pair<double, double> parse_window_arg(const std::string& s) {
    auto colon = s.find(':', 1);  // skip a leading '-'
    if (colon == std::string::npos) throw SpecError("window must look like lo:hi");
    double lo = parse_number(s.substr(0, colon), "window lo");
    double hi = parse_number(s.substr(colon + 1), "window hi");
    if (!(lo < hi)) throw SpecError("window requires lo < hi");
    return {lo, hi};
}

InitialCondition parse_ic_arg(const std::string& s) {
    auto c1 = s.find(',');
    auto c2 = (c1 == std::string::npos) ? std::string::npos : s.find(',', c1 + 1);
    if (c2 == std::string::npos) throw SpecError("initial condition must look like x0,y0,dy0");
    return {parse_number(s.substr(0, c1), "x0"),
            parse_number(s.substr(c1 + 1, c2 - c1 - 1), "y0"),
            parse_number(s.substr(c2 + 1), "dy0")};
}

ParamBindings parse_param_args(const std::vector<std::string>& kvs) {
    ParamBindings params;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SpecError("parameter must look like name=value: '" + kv + "'");
        params[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1), "parameter value");
    }
    return params;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SpecError("cannot open output file: " + path);
    os << text;
}

// Flags shared by the subcommands that need an equation.
struct SourceFlags {
    std::string b, c, f;
    std::string catalog_name;
    std::vector<std::string> params;

    void attach(CLI::App* cmd) {
        cmd->add_option("--b", b, "coefficient b(x)");
        cmd->add_option("--c", c, "coefficient c(x)");
        cmd->add_option("--f", f, "forcing term f(x), default 0");
        cmd->add_option("--catalog", catalog_name, "use a catalog entry as the equation");
        cmd->add_option("--param", params, "bind a parameter, name=value (repeatable)");
    }

    std::pair<OdeSpec, const CatalogEntry*> resolve() const {
        ParamBindings overrides = parse_param_args(params);
        if (!catalog_name.empty()) {
            if (!b.empty() || !c.empty() || !f.empty())
                throw SpecError("give either --catalog or inline --b/--c/--f, not both");
            const CatalogEntry* entry = find_entry(catalog_name);
            if (!entry) throw SpecError("unknown catalog entry: " + catalog_name);
            return {make_spec(*entry, overrides), entry};
        }
        if (b.empty() || c.empty())
            throw SpecError("an equation needs --b and --c (or --catalog)");
        return {OdeSpec::create(b, c, f.empty() ? "0" : f, overrides), nullptr};
    }
};

Window resolve_window(const std::string& window_arg, const std::string& unbounded_arg,
                      const CatalogEntry* entry) {
    Window w;
    if (!window_arg.empty()) {
        auto [lo, hi] = parse_window_arg(window_arg);
        w.lo = lo;
        w.hi = hi;
        if (entry) {
            w.unbounded_left = entry->window.unbounded_left;
            w.unbounded_right = entry->window.unbounded_right;
        }
    } else if (entry) {
        w = entry->window;
    } else {
        throw SpecError("--window is required without --catalog");
    }
    if (!unbounded_arg.empty()) {
        w.unbounded_left = unbounded_arg == "left" || unbounded_arg == "both";
        w.unbounded_right = unbounded_arg == "right" || unbounded_arg == "both";
    }
    return w;
}

InitialCondition resolve_ic(const std::string& ic_arg, const CatalogEntry* entry) {
    if (!ic_arg.empty()) return parse_ic_arg(ic_arg);
    if (entry) return entry->ic;
    throw SpecError("--ic is required without --catalog");
}

std::string sample_csv(const OdeSpec& spec, double lo, double hi, int n) {
    Expr d = discriminant(spec);
    Expr nd = naive_discriminant(spec);
    std::string out = "x,D,Q,naiveD\n";
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double dv = eval(d, x, spec.params);
        double nv = eval(nd, x, spec.params);
        if (is_domain_failure(dv) || is_domain_failure(nv)) continue;
        out += fmt_g17(x) + ',' + fmt_g17(dv) + ',' + fmt_g17(-0.25 * dv) + ',' + fmt_g17(nv) +
               '\n';
    }
    return out;
}

ordered_json sample_json(const OdeSpec& spec, double lo, double hi, int n) {
    Expr d = discriminant(spec);
    Expr nd = naive_discriminant(spec);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double dv = eval(d, x, spec.params);
        double nv = eval(nd, x, spec.params);
        if (is_domain_failure(dv) || is_domain_failure(nv)) continue;
        rows.push_back({{"x", x}, {"D", dv}, {"Q", -0.25 * dv}, {"naiveD", nv}});
    }
    return rows;
}

ordered_json trajectory_json(const Trajectory& t) {
    return {{"stats", json_of(t.stats())},
            {"x", t.xs()},
            {"y", t.ys()},
            {"dy", t.dys()}};
}

std::string zeros_csv(const ZeroList& zl) {
    std::string out = "x,residual,simple\n";
    for (const auto& z : zl.zeros)
        out += fmt_g17(z.x) + ',' + fmt_g17(z.residual) + ',' + (z.simple ? "1" : "0") + '\n';
    return out;
}

std::string pieces_csv(const ClassificationReport& r) {
    std::string out = "lo,hi,sign,label,justification,witness\n";
    for (const auto& p : r.pieces)
        out += fmt_g17(p.lo) + ',' + fmt_g17(p.hi) + ',' + std::to_string(p.sign) + ',' +
               to_string(p.verdict) + ',' + p.justification + ',' + fmt_g17(p.witness) + '\n';
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillation analysis for y'' + b(x) y' + c(x) y = f(x)"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "classify the window by the sign of D");
    SourceFlags an_src;
    an_src.attach(analyze);
    std::string an_window, an_unbounded, an_format = "json", an_output;
    double an_margin = 1e-6;
    int an_samples = 2048;
    analyze->add_option("--window", an_window, "analysis window, lo:hi");
    analyze->add_option("--unbounded", an_unbounded, "edges the domain continues past")
        ->check(CLI::IsMember({"left", "right", "both", "none"}));
    analyze->add_option("--margin", an_margin, "oscillation margin for the tail probe");
    analyze->add_option("--samples", an_samples, "sign-scan grid resolution");
    analyze->add_option("--format", an_format)->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--output", an_output, "write to a file instead of stdout");

    // solve
    auto* solve = app.add_subcommand("solve", "integrate an initial-value problem");
    SourceFlags so_src;
    so_src.attach(solve);
    std::string so_ic, so_about, so_format = "csv", so_output;
    double so_to = 0.0, so_rel = 1e-10, so_abs = 1e-12;
    bool so_to_set = false;
    solve->add_option("--ic", so_ic, "initial condition, x0,y0,dy0");
    solve->add_option("--to", so_to, "integrate from x0 to this point")
        ->each([&](const std::string&) { so_to_set = true; });
    solve->add_option("--about", so_about,
                      "emit the solution minus this claimed particular solution");
    solve->add_option("--rel-tol", so_rel, "relative tolerance");
    solve->add_option("--abs-tol", so_abs, "absolute tolerance");
    solve->add_option("--format", so_format)->check(CLI::IsMember({"json", "csv"}));
    solve->add_option("--output", so_output, "write to a file instead of stdout");

    // zeros
    auto* zeros = app.add_subcommand("zeros", "locate zeros of a solution");
    SourceFlags ze_src;
    ze_src.attach(zeros);
    std::string ze_ic, ze_about, ze_range, ze_format = "json", ze_output;
    double ze_to = 0.0, ze_rel = 1e-10, ze_abs = 1e-12, ze_gate = 1e-8;
    bool ze_to_set = false;
    zeros->add_option("--ic", ze_ic, "initial condition, x0,y0,dy0");
    zeros->add_option("--to", ze_to, "integrate from x0 to this point")
        ->each([&](const std::string&) { ze_to_set = true; });
    zeros->add_option("--range", ze_range, "count zeros on this subrange, lo:hi");
    zeros->add_option("--about", ze_about, "count zeros of the solution minus this expression");
    zeros->add_option("--gate", ze_gate, "residual gate for --about");
    zeros->add_option("--rel-tol", ze_rel, "relative tolerance");
    zeros->add_option("--abs-tol", ze_abs, "absolute tolerance");
    zeros->add_option("--format", ze_format)->check(CLI::IsMember({"json", "csv"}));
    zeros->add_option("--output", ze_output, "write to a file instead of stdout");

    // sample
    auto* sample = app.add_subcommand("sample", "tabulate x, D, Q, naiveD over a window");
    SourceFlags sa_src;
    sa_src.attach(sample);
    std::string sa_window, sa_format = "csv", sa_output;
    int sa_samples = 1000;
    sample->add_option("--window", sa_window, "sampling window, lo:hi");
    sample->add_option("--samples", sa_samples, "number of grid intervals");
    sample->add_option("--format", sa_format)->check(CLI::IsMember({"json", "csv"}));
    sample->add_option("--output", sa_output, "write to a file instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "run a numeric check and report pass/fail");
    SourceFlags ve_src;
    ve_src.attach(verify);
    std::string ve_check, ve_q1 = "4", ve_q2 = "1", ve_ic, ve_ic1, ve_ic2;
    std::string ve_window, ve_format = "json", ve_output;
    double ve_cutoff = 1e-3, ve_threshold = 0.0, ve_rel = 1e-12, ve_abs = 1e-12;
    int ve_samples = 512;
    verify->add_option("--check", ve_check, "sturm | wronskian | riccati | normalform")
        ->required()
        ->check(CLI::IsMember({"sturm", "wronskian", "riccati", "normalform"}));
    verify->add_option("--q1", ve_q1, "fast comparison coefficient (sturm/wronskian)");
    verify->add_option("--q2", ve_q2, "slow comparison coefficient (sturm/wronskian)");
    verify->add_option("--ic", ve_ic, "initial condition for riccati/normalform");
    verify->add_option("--ic1", ve_ic1, "initial condition for the q1 solution");
    verify->add_option("--ic2", ve_ic2, "initial condition for the q2 solution");
    verify->add_option("--window", ve_window, "check window, lo:hi (default 0:20)");
    verify->add_option("--cutoff", ve_cutoff, "zero-neighborhood cutoff for riccati");
    verify->add_option("--threshold", ve_threshold, "residual bound for pass/fail");
    verify->add_option("--samples", ve_samples, "probe/sample grid resolution");
    verify->add_option("--rel-tol", ve_rel, "relative tolerance");
    verify->add_option("--abs-tol", ve_abs, "absolute tolerance");
    verify->add_option("--format", ve_format)->check(CLI::IsMember({"json"}));
    verify->add_option("--output", ve_output, "write to a file instead of stdout");

    // catalog
    auto* cat = app.add_subcommand("catalog", "named equations with expected classifications");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list", "list entry names");
    std::string cl_format = "json", cl_output;
    cat_list->add_option("--format", cl_format)->check(CLI::IsMember({"json"}));
    cat_list->add_option("--output", cl_output, "write to a file instead of stdout");
    auto* cat_show = cat->add_subcommand("show", "show one entry");
    std::string cs_name, cs_format = "json", cs_output;
    std::vector<std::string> cs_params;
    cat_show->add_option("name", cs_name, "entry name")->required();
    cat_show->add_option("--param", cs_params, "override a parameter, name=value (repeatable)");
    cat_show->add_option("--format", cs_format)->check(CLI::IsMember({"json"}));
    cat_show->add_option("--output", cs_output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) {
            auto [spec, entry] = an_src.resolve();
            Window w = resolve_window(an_window, an_unbounded, entry);
            ClassificationReport report = classify(spec, w, an_margin, an_samples);
            emit(an_format == "csv" ? pieces_csv(report) : write_json(json_of(report)),
                 an_output);
            return 0;
        }

        if (*solve) {
            auto [spec, entry] = so_src.resolve();
            InitialCondition ic = resolve_ic(so_ic, entry);
            if (!so_to_set) throw SpecError("--to is required");
            Trajectory t = solve_ivp(spec, ic, so_to, so_rel, so_abs);
            if (!so_about.empty()) t = subtract_expr(t, parse(so_about), spec.params);
            emit(so_format == "json" ? write_json(trajectory_json(t)) : trajectory_csv(t),
                 so_output);
            return 0;
        }

        if (*zeros) {
            auto [spec, entry] = ze_src.resolve();
            InitialCondition ic = resolve_ic(ze_ic, entry);
            if (!ze_to_set) throw SpecError("--to is required");
            double lo = std::min(ic.x0, ze_to), hi = std::max(ic.x0, ze_to);

            auto cut_to_range = [&](ZeroList zl) {
                if (ze_range.empty()) return zl;
                auto [rlo, rhi] = parse_window_arg(ze_range);
                ZeroList cut;
                for (const auto& z : zl.zeros)
                    if (z.x >= rlo && z.x <= rhi) cut.zeros.push_back(z);
                for (double s : zl.suspects)
                    if (s >= rlo && s <= rhi) cut.suspects.push_back(s);
                return cut;
            };

            if (!ze_about.empty()) {
                Window w{lo, hi, false, false};
                CheckOptions opt;
                opt.rel_tol = ze_rel;
                opt.abs_tol = ze_abs;
                OscillatesAboutResult res = oscillates_about(spec, parse(ze_about), ic, w,
                                                             ze_gate, opt);
                res.zeros = cut_to_range(std::move(res.zeros));
                emit(ze_format == "csv" ? zeros_csv(res.zeros) : write_json(json_of(res)),
                     ze_output);
                return 0;
            }
            Trajectory t = solve_ivp(spec, ic, ze_to, ze_rel, ze_abs);
            ZeroList zl =
                cut_to_range(count_zeros(t, std::max(lo, t.x_min()), std::min(hi, t.x_max())));
            emit(ze_format == "csv" ? zeros_csv(zl) : write_json(json_of(zl)), ze_output);
            return 0;
        }

        if (*sample) {
            auto [spec, entry] = sa_src.resolve();
            Window w = resolve_window(sa_window, "", entry);
            if (sa_samples < 1) throw SpecError("--samples must be positive");
            emit(sa_format == "json" ? write_json(sample_json(spec, w.lo, w.hi, sa_samples))
                                     : sample_csv(spec, w.lo, w.hi, sa_samples),
                 sa_output);
            return 0;
        }

        if (*verify) {
            CheckOptions opt;
            opt.rel_tol = ve_rel;
            opt.abs_tol = ve_abs;
            opt.samples = ve_samples;

            if (ve_check == "sturm" || ve_check == "wronskian") {
                ParamBindings params = parse_param_args(ve_src.params);
                Window w{0.0, 20.0, false, false};
                if (!ve_window.empty()) {
                    auto [lo, hi] = parse_window_arg(ve_window);
                    w.lo = lo;
                    w.hi = hi;
                }
                InitialCondition ic1 =
                    ve_ic1.empty() ? InitialCondition{w.lo, 0.0, 1.0} : parse_ic_arg(ve_ic1);
                InitialCondition ic2 =
                    ve_ic2.empty() ? InitialCondition{w.lo, 0.0, 1.0} : parse_ic_arg(ve_ic2);
                if (ve_check == "sturm") {
                    auto r = check_sturm(parse(ve_q1), parse(ve_q2), w, ic1, ic2, params, opt);
                    emit(write_json(json_of(r)), ve_output);
                    return r.pass ? 0 : 1;
                }
                opt.threshold = ve_threshold > 0.0 ? ve_threshold : 1e-6;
                auto r = check_wronskian(parse(ve_q1), parse(ve_q2), w, ic1, ic2, params, opt);
                emit(write_json(json_of(r)), ve_output);
                return r.pass ? 0 : 1;
            }

            auto [spec, entry] = ve_src.resolve();
            Window w = resolve_window(ve_window, "", entry);
            InitialCondition ic = resolve_ic(ve_ic, entry);
            if (ve_check == "riccati") {
                Trajectory t = solve_ivp_window(spec, ic, w.lo, w.hi, ve_rel, ve_abs);
                auto r = check_riccati(spec, t, ve_cutoff, ve_samples,
                                       ve_threshold > 0.0 ? ve_threshold : 1e-4);
                emit(write_json(json_of(r)), ve_output);
                return r.pass ? 0 : 1;
            }
            auto r = check_normal_form(spec, ic, w, ve_threshold > 0.0 ? ve_threshold : 1e-6,
                                       opt);
            emit(write_json(json_of(r)), ve_output);
            return r.pass ? 0 : 1;
        }

        if (*cat_list) {
            ordered_json rows = ordered_json::array();
            for (const auto& e : catalog_entries())
                rows.push_back({{"name", e.name}, {"note", e.note}});
            emit(write_json(rows), cl_output);
            return 0;
        }

        if (*cat_show) {
            const CatalogEntry* entry = find_entry(cs_name);
            if (!entry) throw SpecError("unknown catalog entry: " + cs_name);
            CatalogEntry shown = *entry;
            for (const auto& [k, v] : parse_param_args(cs_params)) shown.defaults[k] = v;
            emit(write_json(json_of(shown)), cs_output);
            return 0;
        }
    } catch (const UnboundParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const SingularPathError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
