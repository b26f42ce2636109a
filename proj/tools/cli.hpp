#pragma once

// Command-line front end. run() is kept separate from main() so the tests can
// drive it in-process.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "summa/errors.hpp"
#include "summa/expression.hpp"
#include "summa/fourier.hpp"
#include "summa/kernels.hpp"
#include "summa/parallel.hpp"
#include "summa/pde.hpp"
#include "summa/summation.hpp"

namespace summa::cli {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parsing

// Numbers may be written as constant expressions ("pi/2", "1e-3").
inline double number(const std::string& s) {
    try {
        return Expression::parse(s, {})({});
    } catch (const ParseError& e) {
        throw UsageError("bad number '" + s + "': " + e.what());
    }
}

inline std::vector<double> number_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) v.push_back(number(item));
    if (v.empty()) throw UsageError("empty list");
    return v;
}

struct Axis {
    double from = 0, to = 1;
    std::size_t points = 2;

    double at(std::size_t i) const {
        if (i + 1 == points) return to;
        return from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
};

// "P" spans the default interval; "from:to:P" sets it explicitly.
inline Axis parse_axis(const std::string& s, double from, double to) {
    Axis a{from, to, 0};
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    std::string pts;
    if (parts.size() == 1) {
        pts = parts[0];
    } else if (parts.size() == 3) {
        a.from = number(parts[0]);
        a.to = number(parts[1]);
        pts = parts[2];
    } else {
        throw UsageError("grid axis '" + s + "' must be P or from:to:P");
    }
    const double p = number(pts);
    if (!(p >= 2) || p != std::floor(p) || p > 1e7) throw UsageError("grid axis '" + s + "': need an integer P >= 2");
    a.points = static_cast<std::size_t>(p);
    if (!(a.from < a.to)) throw UsageError("grid axis '" + s + "': need from < to");
    return a;
}

inline std::vector<Axis> parse_grid(const std::string& s, const std::vector<std::pair<double, double>>& domain) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, 'x');) parts.push_back(item);
    if (parts.size() != domain.size())
        throw UsageError("grid '" + s + "' needs " + std::to_string(domain.size()) + " axis spec(s)");
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < parts.size(); ++i) axes.push_back(parse_axis(parts[i], domain[i].first, domain[i].second));
    return axes;
}

// Inline JSON if the argument starts with '{' or '[', otherwise a file path.
inline json load_json(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot open '" + arg + "'");
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("invalid JSON in '" + arg + "': " + e.what());
    }
}

// ---------------------------------------------------------------- series I/O

inline json to_json(const TrigSeries& s) {
    return {{"l", s.l}, {"mode", to_string(s.mode)}, {"a", s.a}, {"b", s.b}};
}

inline json grid_to_json(const DoubleTrigSeries& s, const std::vector<double>& g) {
    json rows = json::array();
    for (std::size_t m = 0; m <= s.M; ++m)
        rows.push_back(std::vector<double>(g.begin() + s.idx(m, 0), g.begin() + s.idx(m, 0) + s.N + 1));
    return rows;
}

inline json to_json(const DoubleTrigSeries& s) {
    return {{"p", s.p},
            {"q", s.q},
            {"a", grid_to_json(s, s.a)},
            {"b", grid_to_json(s, s.b)},
            {"c", grid_to_json(s, s.c)},
            {"d", grid_to_json(s, s.d)}};
}

inline bool is_double_series(const json& j) { return j.is_object() && j.contains("p"); }

inline TrigSeries series_from_json(const json& j) {
    try {
        TrigSeries s;
        s.l = j.at("l").get<double>();
        s.a = j.at("a").get<std::vector<double>>();
        s.b = j.at("b").get<std::vector<double>>();
        if (j.contains("mode")) s.mode = series_mode_from_string(j.at("mode").get<std::string>());
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw UsageError(std::string("series JSON: ") + e.what());
    }
}

inline DoubleTrigSeries double_series_from_json(const json& j) {
    try {
        const auto a = j.at("a").get<std::vector<std::vector<double>>>();
        if (a.empty() || a[0].empty()) throw UsageError("double series JSON: empty coefficient grid");
        DoubleTrigSeries s = DoubleTrigSeries::zeros(j.at("p").get<double>(), j.at("q").get<double>(), a.size() - 1,
                                                     a[0].size() - 1);
        for (auto [key, dst] : {std::pair{"a", &s.a}, {"b", &s.b}, {"c", &s.c}, {"d", &s.d}}) {
            const auto g = j.at(key).get<std::vector<std::vector<double>>>();
            if (g.size() != s.M + 1) throw UsageError(std::string("double series JSON: '") + key + "' has wrong shape");
            for (std::size_t m = 0; m <= s.M; ++m) {
                if (g[m].size() != s.N + 1)
                    throw UsageError(std::string("double series JSON: '") + key + "' has wrong shape");
                std::copy(g[m].begin(), g[m].end(), dst->begin() + s.idx(m, 0));
            }
        }
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw UsageError(std::string("double series JSON: ") + e.what());
    }
}

// A data field is a number, an expression in `vars`, a series object, or
// "@path" naming a series file. Missing or null fields give an empty function.
template <class Fn>
Fn data_function(const json& cfg, const char* key, std::vector<std::string> vars) {
    if (!cfg.contains(key) || cfg.at(key).is_null()) return {};
    json v = cfg.at(key);
    if (v.is_number()) {
        const double c = v.get<double>();
        return [c](auto...) { return c; };
    }
    if (v.is_string() && !v.get<std::string>().empty() && v.get<std::string>()[0] == '@')
        v = load_json(v.get<std::string>().substr(1));
    if (v.is_string()) {
        try {
            const Expression e = Expression::parse(v.get<std::string>(), vars);
            return [e](auto... args) { return e(static_cast<double>(args)...); };
        } catch (const ParseError& e) {
            throw UsageError(std::string("field '") + key + "': " + e.what());
        }
    }
    if (is_double_series(v)) {
        if constexpr (std::is_invocable_v<Fn, double, double>) {
            auto s = double_series_from_json(v);
            return [s](double x, double y) { return double_partial_sum(s, s.M, s.N, x, y); };
        }
        throw UsageError(std::string("field '") + key + "': a double series needs two variables");
    }
    if (v.is_object()) {
        if constexpr (std::is_invocable_v<Fn, double>) {
            auto s = series_from_json(v);
            return [s](double x) { return partial_sum(s, x); };
        }
        throw UsageError(std::string("field '") + key + "': a single series needs one variable");
    }
    throw UsageError(std::string("field '") + key + "' must be a number, expression or series");
}

inline KernelSpec kernel_from_json(const json& j) {
    if (j.is_string()) return builtin(j.get<std::string>());
    try {
        const std::string support = j.value("support", "finite");
        if (support != "finite" && support != "infinite") throw UsageError("kernel support must be finite or infinite");
        return custom_kernel(j.at("name").get<std::string>(),
                             support == "finite" ? Support::finite : Support::infinite,
                             j.at("omega").get<std::string>(), j.value("lambda", 0.0), j.value("A", 0.0),
                             j.value("p", 0), j.value("q", 0));
    } catch (const json::exception& e) {
        throw UsageError(std::string("kernel JSON: ") + e.what());
    }
}

template <class T>
T field(const json& cfg, const char* key, T dflt) {
    if (!cfg.contains(key)) return dflt;
    const auto& v = cfg.at(key);
    try {
        if constexpr (std::is_floating_point_v<T>) {
            if (v.is_string()) return number(v.get<std::string>());
        }
        return v.get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("field '") + key + "': " + e.what());
    }
}

inline std::size_t count_field(const json& cfg, const char* key, std::size_t dflt) {
    const double v = field<double>(cfg, key, static_cast<double>(dflt));
    if (!(v >= 1) || v != std::floor(v) || v > 1e6) throw UsageError(std::string("field '") + key + "' must be a positive integer");
    return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------- output

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void write(std::ostream& os) const {
        os << std::setprecision(17);
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\r\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\r\n";
        }
    }
    json to_json() const {
        json cols = json::object();
        for (std::size_t c = 0; c < header.size(); ++c) {
            std::vector<double> v;
            for (const auto& r : rows) v.push_back(r[c]);
            cols[header[c]] = v;
        }
        return cols;
    }
};

// Evaluates rows in parallel; each row is computed from its index alone, so
// the output does not depend on the thread count.
template <class F>
std::vector<std::vector<double>> parallel_rows(std::size_t n, F&& row) {
    std::vector<std::vector<double>> rows(n);
    parallel_for(n, [&](std::size_t i) { rows[i] = row(i); });
    return rows;
}

struct Options {
    std::string format, out;
    double tol = 1e-8;

    QuadConfig quad() const {
        QuadConfig c;
        c.abs_tol = tol;
        c.rel_tol = tol;
        return c;
    }
};

inline void emit(const Options& o, const std::string& dflt, const json& j, const Table* t, std::ostream& out) {
    const std::string fmt = o.format.empty() ? dflt : o.format;
    std::ostringstream buf;
    if (fmt == "json") {
        buf << (t ? t->to_json() : j).dump(2) << "\n";
    } else {
        if (!t) throw UsageError("this command has no CSV form; use --format json");
        t->write(buf);
    }
    if (o.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + o.out + "'");
        f << buf.str();
    }
}

// ---------------------------------------------------------------- commands

inline std::string format_support(Support s) { return s == Support::finite ? "finite" : "infinite"; }

inline std::string smoothness_text(int p) { return p == infinite_smoothness ? "inf" : std::to_string(p); }

inline void kernels_list(const Options& o, std::ostream& out) {
    json arr = json::array();
    std::ostringstream csv;
    csv << std::setprecision(17) << "name,support,lambda,A,p,q,omega,phi\r\n";
    for (const auto& name : builtin_kernel_names()) {
        const auto k = builtin(name);
        arr.push_back({{"name", k.name},
                       {"support", format_support(k.support)},
                       {"lambda", k.decay_lambda},
                       {"A", k.decay_A},
                       {"p", smoothness_text(k.smoothness_p)},
                       {"q", k.moment_order_q},
                       {"omega", k.omega_text},
                       {"phi", k.phi_text}});
        csv << k.name << "," << format_support(k.support) << "," << k.decay_lambda << "," << k.decay_A << ","
            << smoothness_text(k.smoothness_p) << "," << k.moment_order_q << "," << csv_field(k.omega_text) << ","
            << csv_field(k.phi_text) << "\r\n";
    }
    const std::string fmt = o.format.empty() ? "csv" : o.format;
    std::ostringstream buf;
    if (fmt == "json") buf << arr.dump(2) << "\n";
    else buf << csv.str();
    if (o.out.empty()) out << buf.str();
    else std::ofstream(o.out, std::ios::binary) << buf.str();
}

inline void methods_list(const Options& o, std::ostream& out) {
    json arr = json::array();
    std::ostringstream csv;
    csv << "name,parameter,p,factor\r\n";
    for (const auto& name : method_names()) {
        const auto m = method(name);
        const std::string param = m.param_kind == ParamKind::continuous_r ? "r" : "n";
        arr.push_back({{"name", m.name}, {"parameter", param}, {"p", smoothness_text(m.smoothness_p)}, {"factor", m.formula}});
        csv << m.name << "," << param << "," << smoothness_text(m.smoothness_p) << "," << csv_field(m.formula) << "\r\n";
    }
    const std::string fmt = o.format.empty() ? "csv" : o.format;
    std::ostringstream buf;
    if (fmt == "json") buf << arr.dump(2) << "\n";
    else buf << csv.str();
    if (o.out.empty()) out << buf.str();
    else std::ofstream(o.out, std::ios::binary) << buf.str();
}

inline json report_json(const KernelSpec& k, const ValidationReport& r) {
    return {{"name", k.name},
            {"passed", r.passed},
            {"normalization_residual", r.normalization_residual},
            {"decay_violations", r.decay_violations},
            {"worst_decay_ratio", r.worst_decay_ratio},
            {"moment_residuals", r.moment_residuals},
            {"messages", r.messages}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonal series, kernel smoothing and generalized summation"};
    app.name("summa");
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", o.out, "Write the result to this file instead of stdout");
    app.add_option("--tol", o.tol, "Quadrature tolerance; also the convergence threshold of sum")
        ->check(CLI::PositiveNumber);

    // expand
    auto* expand = app.add_subcommand("expand", "Trigonometric coefficients of an expression");
    expand->fallthrough();
    std::string fn, l_text = "pi", l2_text, mode_text = "full";
    std::size_t N = 8, N2 = 0;
    expand->add_option("--fn", fn, "f(x), or f(x, y) with --l2")->required();
    expand->add_option("--l", l_text, "Half period in x (default pi)");
    expand->add_option("--N", N, "Number of harmonics in x");
    expand->add_option("--l2", l2_text, "Half period in y; selects a double series");
    expand->add_option("--N2", N2, "Number of harmonics in y (default: N)");
    expand->add_option("--mode", mode_text, "full, cosine_only or sine_only")
        ->check(CLI::IsMember({"full", "cosine_only", "sine_only"}));

    // sum
    auto* sum = app.add_subcommand("sum", "Generalized sum of a series");
    sum->fallthrough();
    std::string series_arg, method_name, schedule_text, x_text, y_text, param_text, grid_text;
    std::optional<double> method_extra;
    sum->add_option("--series", series_arg, "Series JSON (file or inline)")->required();
    sum->add_option("--method", method_name, "Summation method")->required();
    sum->add_option("--order", method_extra, "Riesz / poly / raised_cosine order");
    sum->add_option("--schedule", schedule_text, "Comma-separated parameter values toward the limit");
    sum->add_option("--x", x_text, "Evaluation point");
    sum->add_option("--y", y_text, "Second coordinate for double series");
    sum->add_option("--param", param_text, "Single parameter value, evaluated over --grid");
    sum->add_option("--grid", grid_text, "Evaluation grid with --param: P or from:to:P");

    // smooth
    auto* smooth_cmd = app.add_subcommand("smooth", "Kernel smoothing of an expression");
    smooth_cmd->fallthrough();
    std::string kernel_name = "gauss", kernel_json, r_text;
    smooth_cmd->add_option("--fn", fn, "f(x)")->required();
    smooth_cmd->add_option("--kernel", kernel_name, "Built-in kernel name");
    smooth_cmd->add_option("--kernel-json", kernel_json, "Custom kernel JSON (file or inline)");
    smooth_cmd->add_option("--r", r_text, "Smoothing radius")->required();
    smooth_cmd->add_option("--grid", grid_text, "from:to:P")->required();

    // kernels
    auto* kernels = app.add_subcommand("kernels", "Kernel catalog");
    kernels->require_subcommand(1);
    auto* kernels_list_cmd = kernels->add_subcommand("list", "List built-in kernels");
    auto* kernels_validate = kernels->add_subcommand("validate", "Check normalization, decay and moments");
    kernels_list_cmd->fallthrough();
    kernels_validate->fallthrough();
    kernels->fallthrough();
    std::string validate_name;
    kernels_validate->add_option("--kernel", validate_name, "Built-in kernel (default: all)");
    kernels_validate->add_option("--kernel-json", kernel_json, "Custom kernel JSON (file or inline)");

    // methods
    auto* methods = app.add_subcommand("methods", "Summation method catalog");
    methods->require_subcommand(1);
    methods->fallthrough();
    auto* methods_list_cmd = methods->add_subcommand("list", "List summation methods");
    methods_list_cmd->fallthrough();

    // solvers
    std::string config_arg, t_text = "0";
    auto* solve_string = app.add_subcommand("solve-string", "Vibrating string with fixed ends");
    auto* solve_membrane = app.add_subcommand("solve-membrane", "Rectangular membrane with fixed edge");
    auto* solve_helmholtz = app.add_subcommand("solve-helmholtz", "Helmholtz equation on a rectangle");
    for (auto* c : {solve_string, solve_membrane, solve_helmholtz}) {
        c->fallthrough();
        c->add_option("--config", config_arg, "Problem JSON (file or inline)")->required();
        c->add_option("--grid", grid_text, "Grid: P or from:to:P per axis, axes joined by 'x'");
    }
    for (auto* c : {solve_string, solve_membrane})
        c->add_option("--t", t_text, "Comma-separated output times (default 0)");

    auto fail = [&](int code, const char* kind, const std::string& msg) {
        err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
        return code;
    };

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
        return fail(2, "UsageError", e.what());
    }

    try {
        const QuadConfig q = o.quad();
        if (expand->parsed()) {
            const double l = number(l_text);
            if (l2_text.empty()) {
                const Expression e = Expression::parse(fn, {"x"});
                const auto s = trig_coefficients([&](double x) { return e(x); }, l, N,
                                                 series_mode_from_string(mode_text), q);
                Table t{{"k", "a", "b"}, {}};
                for (std::size_t k = 0; k <= s.N(); ++k) t.rows.push_back({double(k), s.a[k], s.sin_coef(k)});
                const std::string fmt = o.format.empty() ? "json" : o.format;
                emit(o, "json", to_json(s), fmt == "csv" ? &t : nullptr, out);
            } else {
                const double l2 = number(l2_text);
                const Expression e = Expression::parse(fn, {"x", "y"});
                const auto s = double_trig_coefficients([&](double x, double y) { return e(x, y); }, l, l2, N,
                                                        N2 ? N2 : N, q);
                Table t{{"m", "n", "a", "b", "c", "d"}, {}};
                for (std::size_t m = 0; m <= s.M; ++m)
                    for (std::size_t n = 0; n <= s.N; ++n) {
                        const auto i = s.idx(m, n);
                        t.rows.push_back({double(m), double(n), s.a[i], s.b[i], s.c[i], s.d[i]});
                    }
                const std::string fmt = o.format.empty() ? "json" : o.format;
                emit(o, "json", to_json(s), fmt == "csv" ? &t : nullptr, out);
            }
            return 0;
        }

        if (sum->parsed()) {
            const json sj = load_json(series_arg);
            const SummationMethod m = method(method_name, method_extra);
            const bool twod = is_double_series(sj);
            if (!param_text.empty()) {
                if (twod) throw UsageError("--param with --grid is only available for single series");
                const auto s = series_from_json(sj);
                const double p = number(param_text);
                if (grid_text.empty()) throw UsageError("--param needs --grid");
                const Axis ax = parse_grid(grid_text, {{-s.l, s.l}})[0];
                Table t{{"x", "value"}, parallel_rows(ax.points, [&](std::size_t i) {
                            return std::vector<double>{ax.at(i), summed_partial(s, m, p, ax.at(i))};
                        })};
                emit(o, "csv", {}, &t, out);
                return 0;
            }
            if (x_text.empty()) throw UsageError("sum needs --x (or --param with --grid)");
            const double x = number(x_text);
            const auto schedule = schedule_text.empty() ? default_schedule(m) : number_list(schedule_text);
            GeneralizedSumResult res;
            json j = {{"method", m.name}, {"x", x}};
            if (twod) {
                if (y_text.empty()) throw UsageError("a double series needs --y");
                const double y = number(y_text);
                const auto s = double_series_from_json(sj);
                res = detail::run_schedule(m, schedule, o.tol,
                                           [&](double p) { return summed_double(s, m, m, p, x, y); });
                j["y"] = y;
            } else {
                res = generalized_sum(series_from_json(sj), m, x, schedule, o.tol);
            }
            j["value"] = res.value;
            j["schedule"] = res.schedule;
            j["estimates"] = res.estimates;
            j["converged"] = res.converged;
            j["residual"] = res.residual;
            Table t{{"param", "estimate"}, {}};
            for (std::size_t i = 0; i < res.schedule.size(); ++i) t.rows.push_back({res.schedule[i], res.estimates[i]});
            const std::string fmt = o.format.empty() ? "json" : o.format;
            emit(o, "json", j, fmt == "csv" ? &t : nullptr, out);
            return 0;
        }

        if (smooth_cmd->parsed()) {
            const KernelSpec k = kernel_json.empty() ? builtin(kernel_name) : kernel_from_json(load_json(kernel_json));
            const Expression e = Expression::parse(fn, {"x"});
            const double r = number(r_text);
            if (!(r > 0)) throw UsageError("--r must be positive");
            if (grid_text.find(':') == std::string::npos) throw UsageError("smooth needs --grid from:to:P");
            const Axis ax = parse_grid(grid_text, {{0, 1}})[0];
            auto f = [&](double x) { return e(x); };
            Table t{{"x", "f", "smoothed"}, parallel_rows(ax.points, [&](std::size_t i) {
                        const double x = ax.at(i);
                        return std::vector<double>{x, f(x), smooth(f, k, r, x, q)};
                    })};
            emit(o, "csv", {}, &t, out);
            return 0;
        }

        if (kernels_list_cmd->parsed()) {
            kernels_list(o, out);
            return 0;
        }
        if (kernels_validate->parsed()) {
            std::vector<KernelSpec> ks;
            if (!kernel_json.empty()) ks.push_back(kernel_from_json(load_json(kernel_json)));
            else if (!validate_name.empty()) ks.push_back(builtin(validate_name));
            else
                for (const auto& n : builtin_kernel_names()) ks.push_back(builtin(n));
            std::vector<json> reports(ks.size());
            parallel_for(ks.size(), [&](std::size_t i) { reports[i] = report_json(ks[i], validate(ks[i], q)); });
            if (o.format == "csv") {
                // Names are text, so the CSV form is written by hand.
                std::ostringstream buf;
                buf << std::setprecision(17) << "name,passed,normalization_residual,decay_violations,worst_decay_ratio\r\n";
                for (const auto& r : reports)
                    buf << csv_field(r["name"].get<std::string>()) << "," << (r["passed"].get<bool>() ? 1 : 0) << ","
                        << r["normalization_residual"].get<double>() << "," << r["decay_violations"].get<int>() << ","
                        << r["worst_decay_ratio"].get<double>() << "\r\n";
                if (o.out.empty()) out << buf.str();
                else std::ofstream(o.out, std::ios::binary) << buf.str();
                return 0;
            }
            emit(o, "json", json(reports), nullptr, out);
            return 0;
        }
        if (methods_list_cmd->parsed()) {
            methods_list(o, out);
            return 0;
        }

        if (solve_string->parsed()) {
            const json cfg = load_json(config_arg);
            StringProblem p;
            p.l = field<double>(cfg, "l", p.l);
            p.a = field<double>(cfg, "a", p.a);
            p.chi = data_function<std::function<double(double)>>(cfg, "chi", {"x"});
            p.psi = data_function<std::function<double(double)>>(cfg, "psi", {"x"});
            p.load = data_function<std::function<double(double, double)>>(cfg, "load", {"x", "t"});
            const std::size_t n = count_field(cfg, "N", 200);
            const double r = field<double>(cfg, "r", 0.0);
            const KernelSpec k = kernel_from_json(cfg.contains("kernel") ? cfg.at("kernel") : json("gauss"));
            const auto free = string_free(p, n, r, k, q);
            std::function<double(double, double)> forced;
            if (p.load) forced = string_forced(p, n, r, k, q);
            const Axis ax = parse_grid(grid_text.empty() ? "101" : grid_text, {{0, p.l}})[0];
            const auto times = number_list(t_text);
            Table t{{"x", "t", "u"}, parallel_rows(ax.points * times.size(), [&](std::size_t i) {
                        const double x = ax.at(i % ax.points), tt = times[i / ax.points];
                        double u = free.string_value(x, tt);
                        if (forced) u += forced(x, tt);
                        return std::vector<double>{x, tt, u};
                    })};
            for (const auto& w : free.warnings) err << json{{"warning", w}}.dump() << "\n";
            emit(o, "csv", {}, &t, out);
            return 0;
        }

        if (solve_membrane->parsed()) {
            const json cfg = load_json(config_arg);
            MembraneProblem p;
            p.l1 = field<double>(cfg, "l1", p.l1);
            p.l2 = field<double>(cfg, "l2", p.l2);
            p.a = field<double>(cfg, "a", p.a);
            p.chi = data_function<std::function<double(double, double)>>(cfg, "chi", {"x", "y"});
            p.psi = data_function<std::function<double(double, double)>>(cfg, "psi", {"x", "y"});
            p.load = data_function<std::function<double(double, double, double)>>(cfg, "load", {"x", "y", "t"});
            const std::size_t M = count_field(cfg, "M", 40), Nm = count_field(cfg, "N", M);
            const double r = field<double>(cfg, "r", 0.0);
            const KernelSpec k = kernel_from_json(cfg.contains("kernel") ? cfg.at("kernel") : json("gauss"));
            const auto free = membrane_free(p, M, Nm, r, k, q);
            std::function<double(double, double, double)> forced;
            if (p.load) forced = membrane_forced(p, M, Nm, r, k, q);
            const auto axes = parse_grid(grid_text.empty() ? "33x33" : grid_text, {{0, p.l1}, {0, p.l2}});
            const auto times = number_list(t_text);
            const std::size_t per = axes[0].points * axes[1].points;
            Table t{{"x", "y", "t", "u"}, parallel_rows(per * times.size(), [&](std::size_t i) {
                        const std::size_t j = i % per;
                        const double x = axes[0].at(j / axes[1].points), y = axes[1].at(j % axes[1].points);
                        const double tt = times[i / per];
                        double u = free.membrane_value(x, y, tt);
                        if (forced) u += forced(x, y, tt);
                        return std::vector<double>{x, y, tt, u};
                    })};
            for (const auto& w : free.warnings) err << json{{"warning", w}}.dump() << "\n";
            emit(o, "csv", {}, &t, out);
            return 0;
        }

        if (solve_helmholtz->parsed()) {
            const json cfg = load_json(config_arg);
            HelmholtzProblem p;
            p.l1 = field<double>(cfg, "l1", p.l1);
            p.l2 = field<double>(cfg, "l2", p.l2);
            p.theta = field<double>(cfg, "theta", p.theta);
            p.source = data_function<std::function<double(double, double)>>(cfg, "source", {"x", "y"});
            if (!p.source) throw UsageError("helmholtz config needs a 'source'");
            const std::size_t M = count_field(cfg, "M", 40), Nm = count_field(cfg, "N", M);
            const double r = field<double>(cfg, "r", 0.0);
            const KernelSpec k = kernel_from_json(cfg.contains("kernel") ? cfg.at("kernel") : json("gauss"));
            const auto s = helmholtz_modes(p, M, Nm, r, k, q);
            const auto axes = parse_grid(grid_text.empty() ? "33x33" : grid_text, {{0, p.l1}, {0, p.l2}});
            Table t{{"x", "y", "u"}, parallel_rows(axes[0].points * axes[1].points, [&](std::size_t i) {
                        const double x = axes[0].at(i / axes[1].points), y = axes[1].at(i % axes[1].points);
                        return std::vector<double>{x, y, s.helmholtz_value(x, y)};
                    })};
            emit(o, "csv", {}, &t, out);
            return 0;
        }
    } catch (const UsageError& e) {
        return fail(2, "UsageError", e.what());
    } catch (const ParseError& e) {
        return fail(2, e.kind(), e.what());
    } catch (const UnknownKernel& e) {
        return fail(2, e.kind(), e.what());
    } catch (const UnknownMethod& e) {
        return fail(2, e.kind(), e.what());
    } catch (const DomainError& e) {
        return fail(2, e.kind(), e.what());
    } catch (const IndexError& e) {
        return fail(2, e.kind(), e.what());
    } catch (const Error& e) {
        return fail(1, e.kind(), e.what());
    }
    return fail(2, "UsageError", "no command given");
}

}  // namespace summa::cli
