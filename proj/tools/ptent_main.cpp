// Command-line front end: closed-form entropy curves, figure datasets,
// asymptote/death-time/spectrum queries, and the verification battery.
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ptent/closed_form.hpp"
#include "ptent/curve.hpp"
#include "ptent/errors.hpp"
#include "ptent/oracle.hpp"
#include "ptent/params.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string complex_str(const std::complex<double>& z) {
    if (z.imag() == 0.0) return num(z.real());
    return num(z.real()) + (z.imag() < 0 ? " - " : " + ") +
           num(std::abs(z.imag())) + "i";
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        ptent::atomic_write(out_path, content);
}

void add_model_flags(CLI::App* cmd, ptent::ModelParams& p, bool with_bath,
                     std::string& config_path) {
    cmd->add_option("--nu", p.nu, "mode frequency")->capture_default_str();
    cmd->add_option("--g", p.g, "Hermitian system-bath coupling")
        ->capture_default_str();
    cmd->add_option("--kappa", p.kappa, "anti-Hermitian (gain/loss) coupling")
        ->capture_default_str();
    cmd->add_option("--c1", p.c1, "metric integration constant (> 0)")
        ->capture_default_str();
    cmd->add_option("--c2", p.c2, "metric time offset")->capture_default_str();
    cmd->add_option("--gamma", p.gamma, "initial-state mixing angle (radians)")
        ->capture_default_str();
    if (with_bath)
        cmd->add_option("--bath-size", p.n_bath, "bath size N")
            ->capture_default_str();
    cmd->add_option("--config", config_path,
                    "flat key=value file supplying defaults for the flags above");
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value defaults: explicit command-line flags win, config beats the
// built-in defaults. Applied after parsing so "did the user pass the flag"
// is answerable.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f)
        throw ptent::InvalidParams("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string body = trimmed(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        size_t eq = body.find('=');
        std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ptent::InvalidParams("expected key=value at " + where);
        std::string key = trimmed(body.substr(0, eq));
        std::string value = trimmed(body.substr(eq + 1));
        if (key.empty() || value.empty() || key == "config")
            throw ptent::InvalidParams("bad config entry at " + where);
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw ptent::InvalidParams("unknown config key '" + key + "' at " + where);
        if (!opt->empty()) continue; // an explicit flag overrides the file
        opt->add_result(value);
        opt->run_callback();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric system-bath entanglement entropy toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ptent::version_string());

    ptent::ModelParams params; // defaults: nu=1, gamma=pi/4, c1=1, c2=0
    params.nu = 1.0;

    // curve
    auto* curve_cmd = app.add_subcommand(
        "curve", "sample the closed-form entropy curve over a time range");
    double t_start = 0.0, t_end = 10.0;
    int samples = 2001;
    std::vector<int> curve_baths{1};
    std::string format = "csv";
    std::string out_path;
    std::string curve_config;
    add_model_flags(curve_cmd, params, false, curve_config);
    curve_cmd->add_option("--bath-size", curve_baths, "bath sizes (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    curve_cmd->add_option("--t-start", t_start, "start time")->capture_default_str();
    curve_cmd->add_option("--t-end", t_end, "end time")->capture_default_str();
    curve_cmd->add_option("--samples", samples, "sample count")
        ->capture_default_str();
    curve_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    curve_cmd->add_option("--out", out_path,
                          "output file (per bath size, suffixed _N<k>); "
                          "stdout when omitted");

    // figures
    auto* figures_cmd = app.add_subcommand(
        "figures",
        "write the canonical unbroken/exceptional/broken datasets, N = 1..5");
    std::string fig_dir = "figures";
    double fig_t_start = 0.0, fig_t_end = 10.0;
    int fig_samples = 2001;
    figures_cmd->add_option("--out", fig_dir, "output directory")
        ->capture_default_str();
    figures_cmd->add_option("--t-start", fig_t_start, "start time")
        ->capture_default_str();
    figures_cmd->add_option("--t-end", fig_t_end, "end time")
        ->capture_default_str();
    figures_cmd->add_option("--samples", fig_samples, "sample count")
        ->capture_default_str();

    // asymptote
    auto* asym_cmd = app.add_subcommand(
        "asymptote", "long-time entropy plateau of the broken regime");
    std::string asym_format = "text";
    std::string asym_out;
    std::string asym_config;
    add_model_flags(asym_cmd, params, true, asym_config);
    asym_cmd->add_option("--format", asym_format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    asym_cmd->add_option("--out", asym_out, "output file; stdout when omitted");

    // death-time
    auto* death_cmd = app.add_subcommand(
        "death-time", "first zero of the entropy per bath size");
    std::vector<int> death_baths{1, 2, 3, 4, 5};
    std::string death_format = "csv";
    std::string death_out;
    std::string death_config;
    add_model_flags(death_cmd, params, false, death_config);
    death_cmd->add_option("--bath-size", death_baths, "bath sizes (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    death_cmd->add_option("--format", death_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    death_cmd->add_option("--out", death_out, "output file; stdout when omitted");

    // spectrum
    auto* spec_cmd = app.add_subcommand(
        "spectrum", "eigenvalue pair of the m-excitation sector");
    int spec_m = 1;
    std::string spec_format = "text";
    std::string spec_out;
    std::string spec_config;
    add_model_flags(spec_cmd, params, true, spec_config);
    spec_cmd->add_option("--m", spec_m, "excitation number")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    spec_cmd->add_option("--format", spec_format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    spec_cmd->add_option("--out", spec_out, "output file; stdout when omitted");

    // verify
    auto* verify_cmd = app.add_subcommand(
        "verify", "run the numerical verification battery");
    std::string scope = "quick";
    std::string verify_out;
    double mu_scale = 1.0;
    verify_cmd->add_option("--scope", scope, "battery size")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    verify_cmd->add_option("--out", verify_out, "write the JSON report here");
    verify_cmd->add_option("--mu-scale", mu_scale)->group(""); // negative control

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_config(curve_cmd, curve_config);
        apply_config(asym_cmd, asym_config);
        apply_config(death_cmd, death_config);
        apply_config(spec_cmd, spec_config);

        if (app.got_subcommand(curve_cmd)) {
            ptent::RunConfig cfg;
            cfg.params = params;
            cfg.t_start = t_start;
            cfg.t_end = t_end;
            cfg.samples = samples;
            cfg.bath_sizes = curve_baths;
            cfg.format = format == "json" ? ptent::OutputFormat::Json
                                          : ptent::OutputFormat::Csv;
            cfg.output_path = out_path;
            ptent::validate(cfg);
            for (int n : cfg.bath_sizes) {
                ptent::ModelParams p = cfg.params;
                p.n_bath = n;
                std::vector<ptent::CurveRow> rows =
                    ptent::sample_curve(p, cfg.t_start, cfg.t_end, cfg.samples);
                std::string blob = cfg.format == ptent::OutputFormat::Json
                                       ? ptent::curve_json(p, rows)
                                       : ptent::curve_csv(p, rows);
                if (cfg.output_path.empty())
                    std::cout << blob;
                else
                    ptent::atomic_write(
                        ptent::with_bath_suffix(cfg.output_path, n), blob);
            }
        } else if (app.got_subcommand(figures_cmd)) {
            struct Set {
                const char* name;
                double g, kappa;
            } sets[] = {{"unbroken", 0.7, 0.3},
                        {"exceptional", 0.5, 0.5},
                        {"broken", 0.3, 0.7}};
            for (const Set& s : sets) {
                ptent::ModelParams p;
                p.nu = 1.0;
                p.g = s.g;
                p.kappa = s.kappa;
                p.c1 = 1.0;
                p.c2 = 0.0;
                p.gamma = 0.25 * kPi;
                for (int n = 1; n <= 5; ++n) {
                    p.n_bath = n;
                    std::vector<ptent::CurveRow> rows = ptent::sample_curve(
                        p, fig_t_start, fig_t_end, fig_samples);
                    std::string path = ptent::with_bath_suffix(
                        fig_dir + "/" + s.name + ".csv", n);
                    ptent::atomic_write(path, ptent::curve_csv(p, rows));
                    std::cout << path << "\n";
                }
            }
        } else if (app.got_subcommand(asym_cmd)) {
            ptent::Asymptote a = ptent::asymptote(params);
            std::string blob;
            if (asym_format == "json") {
                blob = std::string("{\n  \"s_infinity\": ") + num(a.s_infinity) +
                       ",\n  \"xi\": " + num(a.xi) + "\n}\n";
            } else if (asym_format == "csv") {
                blob = "xi,S_infinity\n" + num(a.xi) + "," + num(a.s_infinity) + "\n";
            } else {
                blob = "S_infinity = " + num(a.s_infinity) + "\nxi = " +
                       num(a.xi) + "\n";
            }
            emit(asym_out, blob);
        } else if (app.got_subcommand(death_cmd)) {
            std::string blob;
            bool json = death_format == "json";
            if (json) blob = "{\n  \"rows\": [\n";
            for (size_t i = 0; i < death_baths.size(); ++i) {
                ptent::ModelParams p = params;
                p.n_bath = death_baths[i];
                std::optional<double> t = ptent::sudden_death_time(p);
                if (json) {
                    blob += "    {\"n_bath\": " + std::to_string(p.n_bath) +
                            ", \"t_star\": " + (t ? num(*t) : "null") + "}";
                    blob += (i + 1 < death_baths.size()) ? ",\n" : "\n";
                } else {
                    if (i == 0) blob = "N,t_star\n";
                    blob += std::to_string(p.n_bath) + "," +
                            (t ? num(*t) : "none") + "\n";
                }
            }
            if (json) blob += "  ]\n}\n";
            emit(death_out, blob);
        } else if (app.got_subcommand(spec_cmd)) {
            auto [ep, em] = ptent::energy_spectrum(params, spec_m);
            ptent::Regime reg = ptent::classify_regime(params);
            std::string blob;
            if (spec_format == "json") {
                blob = std::string("{\n") +
                       "  \"m\": " + std::to_string(spec_m) + ",\n" +
                       "  \"regime\": \"" + ptent::to_string(reg.tag) + "\",\n" +
                       "  \"E_plus\": {\"re\": " + num(ep.real()) +
                       ", \"im\": " + num(ep.imag()) + "},\n" +
                       "  \"E_minus\": {\"re\": " + num(em.real()) +
                       ", \"im\": " + num(em.imag()) + "},\n" +
                       "  \"spectrum_bounded_below\": " +
                       (params.spectrum_bounded_below() ? "true" : "false") +
                       "\n}\n";
            } else if (spec_format == "csv") {
                blob = "m,E_plus_re,E_plus_im,E_minus_re,E_minus_im\n" +
                       std::to_string(spec_m) + "," + num(ep.real()) + "," +
                       num(ep.imag()) + "," + num(em.real()) + "," +
                       num(em.imag()) + "\n";
            } else {
                blob = std::string("regime = ") + ptent::to_string(reg.tag) +
                       "\nE_plus = " + complex_str(ep) +
                       "\nE_minus = " + complex_str(em) +
                       "\nspectrum_bounded_below = " +
                       (params.spectrum_bounded_below() ? "yes" : "no") + "\n";
            }
            emit(spec_out, blob);
        } else if (app.got_subcommand(verify_cmd)) {
            ptent::VerifyOutcome outcome = ptent::run_verification(
                scope == "full" ? ptent::Scope::Full : ptent::Scope::Quick,
                mu_scale);
            std::cout << ptent::verify_text(outcome);
            if (!verify_out.empty())
                ptent::atomic_write(verify_out, ptent::verify_json(outcome));
            return outcome.overall_pass ? 0 : 1;
        }
    } catch (const ptent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
