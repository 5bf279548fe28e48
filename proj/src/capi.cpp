#include "polystab.h"

#include <Eigen/Eigenvalues>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "fmtio.hpp"
#include "spectral.hpp"
#include "timestep.hpp"

struct ps_model {
    ps::RunConfig cfg;
    ps::Model mdl;
};
struct ps_trace {
    ps::EnergyTrace tr;
};
struct ps_scan {
    ps::FrequencyScan sc;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return PS_OK;
    } catch (const ps::ValidationError& e) {
        g_last_error = e.what();
        return PS_ERR_VALIDATION;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PS_ERR_RUNTIME;
    } catch (...) {
        g_last_error = "unknown error";
        return PS_ERR_RUNTIME;
    }
}

void require(bool cond, const char* what) {
    if (!cond) throw ps::ValidationError(std::string("null or invalid argument: ") + what);
}

// Deterministic JSON passivity report assembled with 17-digit floats.
std::string passivity_json(const ps_model& h, bool& pass) {
    const double tol = 1e-10;
    auto block_entry = [&](const ps::PassiveBlock& b) {
        double kyp = ps::kyp_residual(b);
        bool mb = (b.Mdiag.asDiagonal() * b.B) == b.C.transpose();
        bool skew = ps::is_energy_skew(b);
        pass = pass && kyp <= tol && mb;
        return std::string("{\"label\":\"") + b.label + "\",\"kyp_residual\":" +
               ps::fmt_g17(kyp) + ",\"mb_matches_ct\":" + (mb ? "true" : "false") +
               ",\"energy_skew\":" + (skew ? "true" : "false") + "}";
    };
    pass = true;
    std::string blocks = block_entry(h.mdl.sys.plant) + "," + block_entry(h.mdl.sys.controller);
    ps::MatrixXd MA = h.mdl.sys.Me.asDiagonal() * h.mdl.sys.Ae;
    Eigen::SelfAdjointEigenSolver<ps::MatrixXd> es(0.5 * (MA + MA.transpose()),
                                                   Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ps::NumericalError("passivity report: eigensolver failed");
    double symmax = es.eigenvalues().maxCoeff();
    pass = pass && symmax <= tol;
    return std::string("{\"model\":\"") + ps::to_string(h.mdl.params.kind) +
           "\",\"blocks\":[" + blocks + "],\"coupled_sym_max\":" + ps::fmt_g17(symmax) +
           ",\"tolerance\":" + ps::fmt_g17(tol) + ",\"pass\":" + (pass ? "true" : "false") +
           "}\n";
}

}  // namespace

extern "C" {

const char* ps_version(void) { return "0.1.0"; }

const char* ps_last_error(void) { return g_last_error.c_str(); }

void ps_string_free(char* s) { std::free(s); }

int ps_model_create(const char* config_json, ps_model** out) {
    return guarded([&] {
        require(config_json && out, "ps_model_create");
        auto h = std::make_unique<ps_model>();
        h->cfg = ps::parse_config(config_json);
        h->mdl = ps::build_model(h->cfg.params);
        *out = h.release();
    });
}

void ps_model_free(ps_model* m) { delete m; }

int ps_model_dim(const ps_model* m, long* out_dim) {
    return guarded([&] {
        require(m && out_dim, "ps_model_dim");
        *out_dim = static_cast<long>(m->mdl.sys.n());
    });
}

int ps_model_passivity_report(const ps_model* m, int* out_pass, char** out_json) {
    return guarded([&] {
        require(m && out_pass && out_json, "ps_model_passivity_report");
        bool pass = true;
        std::string json = passivity_json(*m, pass);
        *out_pass = pass ? 1 : 0;
        *out_json = dup_string(json);
    });
}

int ps_model_simulate(const ps_model* m, ps_trace** out) {
    return guarded([&] {
        require(m && out, "ps_model_simulate");
        ps::VectorXd x0 = ps::default_initial_data(m->mdl, m->cfg.family);
        double dt = ps::resolved_dt(m->cfg, m->mdl);
        long steps = ps::resolved_steps(m->cfg, m->mdl);
        ps::SimulateOptions opts;
        opts.snapshot_every = m->cfg.snapshot_every;
        auto h = std::make_unique<ps_trace>();
        h->tr = ps::simulate(m->mdl.sys, x0, dt, steps, opts);
        *out = h.release();
    });
}

int ps_model_resolvent_scan(const ps_model* m, double s0, double s_max, int points,
                            int use_peak_scan, double pilot_ds, ps_scan** out) {
    return guarded([&] {
        require(m && out, "ps_model_resolvent_scan");
        auto h = std::make_unique<ps_scan>();
        if (use_peak_scan)
            h->sc = ps::resolvent_peak_scan(m->mdl.sys, s0, s_max, pilot_ds);
        else
            h->sc = ps::resolvent_grid_scan(m->mdl.sys, s0, s_max, points);
        *out = h.release();
    });
}

int ps_transfer_scan(const char* config_json, double s0, double s_max, int points,
                     ps_scan** out) {
    return guarded([&] {
        require(config_json && out, "ps_transfer_scan");
        ps::RunConfig cfg = ps::parse_config(config_json);
        auto h = std::make_unique<ps_scan>();
        if (cfg.params.kind == ps::ModelKind::WaveHeat) {
            h->sc = ps::scan_heat_transfer_real(s0, s_max, points);
        } else {
            ps::Profile T = ps::validate_profile(cfg.params.T, 0.0, 1.0);
            double T1 = ps::eval(T.expr, 1.0);
            h->sc = ps::scan_acoustic_transfer_real(s0, s_max, points, cfg.params.m,
                                                    cfg.params.d, cfg.params.k,
                                                    cfg.params.beta, T1);
        }
        *out = h.release();
    });
}

int ps_trace_rows(const ps_trace* t, long* out_rows) {
    return guarded([&] {
        require(t && out_rows, "ps_trace_rows");
        *out_rows = static_cast<long>(t->tr.rows());
    });
}

int ps_trace_get(const ps_trace* t, long row, double* out_t, double* out_e_total,
                 double* out_e_block1, double* out_e_block2) {
    return guarded([&] {
        require(t && out_t && out_e_total && out_e_block1 && out_e_block2, "ps_trace_get");
        require(row >= 0 && row < static_cast<long>(t->tr.rows()), "ps_trace_get row");
        *out_t = t->tr.t[row];
        *out_e_total = t->tr.E_total[row];
        *out_e_block1 = t->tr.E_block1[row];
        *out_e_block2 = t->tr.E_block2[row];
    });
}

int ps_trace_write_csv(const ps_trace* t, const char* path) {
    return guarded([&] {
        require(t && path, "ps_trace_write_csv");
        ps::write_trace_csv(t->tr, path);
    });
}

int ps_trace_read_csv(const char* path, ps_trace** out) {
    return guarded([&] {
        require(path && out, "ps_trace_read_csv");
        auto h = std::make_unique<ps_trace>();
        h->tr = ps::read_trace_csv(path);
        *out = h.release();
    });
}

void ps_trace_free(ps_trace* t) { delete t; }

int ps_trace_decay_fit(const ps_trace* t, double t1, double t2, char** out_json) {
    return guarded([&] {
        require(t && out_json, "ps_trace_decay_fit");
        ps::BoundFit fit = ps::decay_rate_fit(t->tr.t, t->tr.E_total, t1, t2);
        *out_json = dup_string(ps::fit_report_json(fit));
    });
}

int ps_scan_len(const ps_scan* s, long* out_len) {
    return guarded([&] {
        require(s && out_len, "ps_scan_len");
        *out_len = static_cast<long>(s->sc.s.size());
    });
}

int ps_scan_get(const ps_scan* s, long i, double* out_s, double* out_value) {
    return guarded([&] {
        require(s && out_s && out_value, "ps_scan_get");
        require(i >= 0 && i < static_cast<long>(s->sc.s.size()), "ps_scan_get index");
        *out_s = s->sc.s(i);
        *out_value = s->sc.value(i);
    });
}

int ps_scan_write_csv(const ps_scan* s, const char* path) {
    return guarded([&] {
        require(s && path, "ps_scan_write_csv");
        ps::write_scan_csv(s->sc, path);
    });
}

void ps_scan_free(ps_scan* s) { delete s; }

int ps_scan_fit_power(const ps_scan* s, double w1, double w2, char** out_json) {
    return guarded([&] {
        require(s && out_json, "ps_scan_fit_power");
        ps::BoundFit fit = ps::fit_power_law(s->sc, w1, w2);
        *out_json = dup_string(ps::fit_report_json(fit));
    });
}

int ps_scan_fit_lower_bound(const ps_scan* s, double alpha, double s0, char** out_json) {
    return guarded([&] {
        require(s && out_json, "ps_scan_fit_lower_bound");
        ps::BoundFit fit = ps::fit_lower_bound(s->sc, alpha, s0);
        *out_json = dup_string(ps::fit_report_json(fit));
    });
}

}  // extern "C"
