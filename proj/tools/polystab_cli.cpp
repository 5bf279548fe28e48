// polystab command-line driver: all functionality goes through the C API in
// polystab.h; this file only handles argument parsing and file plumbing.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "polystab.h"

namespace {

int fail(int code) {
    std::cerr << "error: " << ps_last_error() << "\n";
    return code;
}

int fail_msg(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return code;
}

bool read_file(const std::string& path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = "cannot open config file '" + path + "'";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

struct ModelHandle {
    ps_model* m = nullptr;
    ~ModelHandle() { ps_model_free(m); }
};
struct TraceHandle {
    ps_trace* t = nullptr;
    ~TraceHandle() { ps_trace_free(t); }
};
struct ScanHandle {
    ps_scan* s = nullptr;
    ~ScanHandle() { ps_scan_free(s); }
};
struct StringHandle {
    char* s = nullptr;
    ~StringHandle() { ps_string_free(s); }
};

// The config's "out_csv" is used when no --out flag is given.  The C API has
// no config accessor, so the CLI peeks at the raw JSON for that one key.
std::string config_out_csv(const std::string& json) {
    auto pos = json.find("\"out_csv\"");
    if (pos == std::string::npos) return "";
    pos = json.find(':', pos);
    if (pos == std::string::npos) return "";
    pos = json.find('"', pos);
    if (pos == std::string::npos) return "";
    auto end = json.find('"', pos + 1);
    if (end == std::string::npos) return "";
    return json.substr(pos + 1, end - pos - 1);
}

int cmd_simulate(const std::string& config_path, std::string out_path) {
    std::string cfg, err;
    if (!read_file(config_path, cfg, err)) return fail_msg(2, err);
    ModelHandle mh;
    if (int rc = ps_model_create(cfg.c_str(), &mh.m)) return fail(rc);
    TraceHandle th;
    if (int rc = ps_model_simulate(mh.m, &th.t)) return fail(rc);
    if (out_path.empty()) out_path = config_out_csv(cfg);
    if (out_path.empty())
        return fail_msg(1, "no output path: pass --out or set \"out_csv\" in the config");
    if (int rc = ps_trace_write_csv(th.t, out_path.c_str())) return fail(rc);
    long rows = 0;
    ps_trace_rows(th.t, &rows);
    std::cout << "simulate: " << rows << " rows -> " << out_path << "\n";
    return 0;
}

int cmd_passivity_check(const std::string& config_path) {
    std::string cfg, err;
    if (!read_file(config_path, cfg, err)) return fail_msg(2, err);
    ModelHandle mh;
    if (int rc = ps_model_create(cfg.c_str(), &mh.m)) return fail(rc);
    int pass = 0;
    StringHandle json;
    if (int rc = ps_model_passivity_report(mh.m, &pass, &json.s)) return fail(rc);
    std::cout << json.s;
    return pass ? 0 : 1;
}

int cmd_transfer_scan(const std::string& config_path, double s0, double smax, int points,
                      const std::string& out_path, const std::string& report_path,
                      double alpha, bool have_alpha, double fit_s0) {
    std::string cfg, err;
    if (!read_file(config_path, cfg, err)) return fail_msg(2, err);
    ScanHandle sh;
    if (int rc = ps_transfer_scan(cfg.c_str(), s0, smax, points, &sh.s)) return fail(rc);
    if (!out_path.empty())
        if (int rc = ps_scan_write_csv(sh.s, out_path.c_str())) return fail(rc);
    if (have_alpha) {
        StringHandle json;
        if (int rc = ps_scan_fit_lower_bound(sh.s, alpha, fit_s0, &json.s)) return fail(rc);
        std::cout << json.s;
        if (!report_path.empty()) {
            std::ofstream out(report_path + ".tmp", std::ios::binary);
            out << json.s;
            out.close();
            if (!out || std::rename((report_path + ".tmp").c_str(), report_path.c_str()) != 0)
                return fail_msg(2, "cannot write report '" + report_path + "'");
        }
    }
    return 0;
}

int cmd_resolvent_scan(const std::string& config_path, double s0, double smax, int points,
                       bool peaks, double pilot_ds, const std::string& out_path,
                       const std::string& report_path, bool have_window, double w1, double w2) {
    std::string cfg, err;
    if (!read_file(config_path, cfg, err)) return fail_msg(2, err);
    ModelHandle mh;
    if (int rc = ps_model_create(cfg.c_str(), &mh.m)) return fail(rc);
    ScanHandle sh;
    if (int rc = ps_model_resolvent_scan(mh.m, s0, smax, points, peaks ? 1 : 0, pilot_ds, &sh.s))
        return fail(rc);
    if (!out_path.empty())
        if (int rc = ps_scan_write_csv(sh.s, out_path.c_str())) return fail(rc);
    if (have_window) {
        StringHandle json;
        if (int rc = ps_scan_fit_power(sh.s, w1, w2, &json.s)) return fail(rc);
        std::cout << json.s;
        if (!report_path.empty()) {
            std::ofstream out(report_path + ".tmp", std::ios::binary);
            out << json.s;
            out.close();
            if (!out || std::rename((report_path + ".tmp").c_str(), report_path.c_str()) != 0)
                return fail_msg(2, "cannot write report '" + report_path + "'");
        }
    }
    return 0;
}

int cmd_decay_fit(const std::string& config_path, const std::string& trace_path,
                  bool have_window, double w1, double w2, const std::string& report_path) {
    TraceHandle th;
    if (!trace_path.empty()) {
        if (!have_window)
            return fail_msg(1, "decay-fit on an existing trace requires --window T1 T2");
        if (int rc = ps_trace_read_csv(trace_path.c_str(), &th.t)) return fail(rc);
    } else {
        std::string cfg, err;
        if (!read_file(config_path, cfg, err)) return fail_msg(2, err);
        ModelHandle mh;
        if (int rc = ps_model_create(cfg.c_str(), &mh.m)) return fail(rc);
        if (int rc = ps_model_simulate(mh.m, &th.t)) return fail(rc);
        if (!have_window) {
            // Default window [t_final/20, t_final/2]: inside the power-law
            // regime, clear of both the initial transient and the tail.
            long rows = 0;
            ps_trace_rows(th.t, &rows);
            double t_end = 0, e0, e1b, e2b;
            ps_trace_get(th.t, rows - 1, &t_end, &e0, &e1b, &e2b);
            w1 = t_end / 20.0;
            w2 = t_end / 2.0;
        }
    }
    StringHandle json;
    if (int rc = ps_trace_decay_fit(th.t, w1, w2, &json.s)) return fail(rc);
    std::cout << json.s;
    if (!report_path.empty()) {
        std::ofstream out(report_path + ".tmp", std::ios::binary);
        out << json.s;
        out.close();
        if (!out || std::rename((report_path + ".tmp").c_str(), report_path.c_str()) != 0)
            return fail_msg(2, "cannot write report '" + report_path + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polystab: passivity-preserving discretization and polynomial-stability "
                 "diagnostics for coupled 1D wave systems"};
    app.set_version_flag("--version", ps_version());
    app.require_subcommand(1);

    std::string config_path, out_path, report_path, trace_path;
    double s0 = 0.1, smax = 100.0, pilot_ds = 0.5, alpha = 0.0, fit_s0 = 0.0;
    int points = 200;
    bool peaks = false;
    std::vector<double> window;

    auto* sim = app.add_subcommand("simulate", "run the implicit-midpoint simulation");
    sim->add_option("--config", config_path, "JSON config file")->required();
    sim->add_option("--out", out_path, "energy-trace CSV path (overrides config out_csv)");

    auto* pas = app.add_subcommand("passivity-check",
                                   "KYP residuals and coupled contractivity certificate");
    pas->add_option("--config", config_path, "JSON config file")->required();

    auto* tra = app.add_subcommand("transfer-scan",
                                   "closed-form Re P(is) of the coupling block");
    tra->add_option("--config", config_path, "JSON config file")->required();
    tra->add_option("--s0", s0, "scan start (log-spaced grid; 0 gives a linear grid)");
    tra->add_option("--smax", smax, "scan end");
    tra->add_option("--points", points, "number of grid points");
    tra->add_option("--out", out_path, "scan CSV path");
    tra->add_option("--report", report_path, "fit report JSON path");
    auto* alpha_opt = tra->add_option("--alpha", alpha,
                                      "certify Re P(is) >= eta0/(1+s^alpha) for s >= --fit-s0");
    tra->add_option("--fit-s0", fit_s0, "lower end of the certification range");

    auto* res = app.add_subcommand("resolvent-scan",
                                   "weighted resolvent-norm scan along the imaginary axis");
    res->add_option("--config", config_path, "JSON config file")->required();
    res->add_option("--s0", s0, "scan start");
    res->add_option("--smax", smax, "scan end");
    res->add_option("--points", points, "grid points (grid mode)");
    res->add_flag("--peaks", peaks, "locate and refine resonance peaks instead of a fixed grid");
    res->add_option("--pilot-ds", pilot_ds, "pilot step for --peaks");
    res->add_option("--out", out_path, "scan CSV path");
    res->add_option("--report", report_path, "power-law fit report JSON path");
    res->add_option("--fit-window", window, "power-law fit window W1 W2")->expected(2);

    auto* dec = app.add_subcommand("decay-fit", "log-log energy decay rate fit");
    dec->add_option("--config", config_path, "JSON config file (simulates, then fits)");
    dec->add_option("--trace", trace_path, "existing energy-trace CSV to fit instead");
    dec->add_option("--window", window, "fit window T1 T2 (default [t_final/20, t_final/2])")
        ->expected(2);
    dec->add_option("--report", report_path, "fit report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (sim->parsed()) return cmd_simulate(config_path, out_path);
    if (pas->parsed()) return cmd_passivity_check(config_path);
    if (tra->parsed())
        return cmd_transfer_scan(config_path, s0, smax, points, out_path, report_path, alpha,
                                 alpha_opt->count() > 0, fit_s0);
    if (res->parsed())
        return cmd_resolvent_scan(config_path, s0, smax, points, peaks, pilot_ds, out_path,
                                  report_path, window.size() == 2, window.empty() ? 0 : window[0],
                                  window.size() == 2 ? window[1] : 0);
    if (dec->parsed()) {
        if (config_path.empty() && trace_path.empty())
            return fail_msg(1, "decay-fit requires --config or --trace");
        return cmd_decay_fit(config_path, trace_path, window.size() == 2,
                             window.empty() ? 0 : window[0],
                             window.size() == 2 ? window[1] : 0, report_path);
    }
    return 1;
}
