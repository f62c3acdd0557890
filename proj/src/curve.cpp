#include "ptent/curve.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ptent/errors.hpp"

namespace ptent {
namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string param_comment(const ModelParams& p) {
    return "# nu=" + num(p.nu) + " g=" + num(p.g) + " kappa=" + num(p.kappa) +
           " N=" + std::to_string(p.n_bath) + " c1=" + num(p.c1) +
           " c2=" + num(p.c2) + " gamma=" + num(p.gamma) + "\n";
}

nlohmann::ordered_json params_json(const ModelParams& p) {
    nlohmann::ordered_json j;
    j["nu"] = p.nu;
    j["g"] = p.g;
    j["kappa"] = p.kappa;
    j["n_bath"] = p.n_bath;
    j["c1"] = p.c1;
    j["c2"] = p.c2;
    j["gamma"] = p.gamma;
    return j;
}

nlohmann::ordered_json report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["notes"] = r.notes;
    return j;
}

} // namespace

const char* version_string() {
    return "ptent 1.0.0";
}

void validate(const RunConfig& cfg) {
    if (!(cfg.t_end > cfg.t_start))
        throw InvalidParams("t_end must exceed t_start");
    if (cfg.samples < 2)
        throw InvalidParams("need at least 2 samples");
    if (cfg.bath_sizes.empty())
        throw InvalidParams("need at least one bath size");
    for (int n : cfg.bath_sizes)
        if (n < 1) throw InvalidParams("bath sizes must be >= 1");
    ModelParams p = cfg.params;
    p.n_bath = cfg.bath_sizes.front();
    validate(p);
}

std::vector<CurveRow> sample_curve(const ModelParams& p, double t_start,
                                   double t_end, int samples) {
    if (!(t_end > t_start) || samples < 2)
        throw InvalidParams("bad sampling range");
    MetricSolution sol(p);
    std::vector<CurveRow> rows;
    rows.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = t_start + (t_end - t_start) * double(i) / double(samples - 1);
        EntropyPoint e = sol.entropy(t);
        rows.push_back({t, e.entropy, e.lambda1, e.lambda2, sol.mu_integral(t)});
    }
    return rows;
}

std::string curve_csv(const ModelParams& p, const std::vector<CurveRow>& rows) {
    std::string out;
    out += std::string("# ") + version_string() + " curve\n";
    out += param_comment(p);
    out += "t,S,lambda1,lambda2,mu_I\n";
    for (const CurveRow& r : rows)
        out += num(r.t) + "," + num(r.entropy) + "," + num(r.lambda1) + "," +
               num(r.lambda2) + "," + num(r.mu_integral) + "\n";
    return out;
}

std::string curve_json(const ModelParams& p, const std::vector<CurveRow>& rows) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["params"] = params_json(p);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CurveRow& r : rows) {
        nlohmann::ordered_json row;
        row["t"] = r.t;
        row["S"] = r.entropy;
        row["lambda1"] = r.lambda1;
        row["lambda2"] = r.lambda2;
        row["mu_I"] = r.mu_integral;
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string verify_json(const VerifyOutcome& outcome) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["overall_pass"] = outcome.overall_pass;
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const CheckReport& r : outcome.reports) reps.push_back(report_json(r));
    j["reports"] = std::move(reps);
    nlohmann::ordered_json finds = nlohmann::ordered_json::array();
    for (const CheckReport& r : outcome.findings) finds.push_back(report_json(r));
    j["findings"] = std::move(finds);
    return j.dump(2) + "\n";
}

std::string verify_text(const VerifyOutcome& outcome) {
    std::string out;
    char line[256];
    for (const CheckReport& r : outcome.reports) {
        std::snprintf(line, sizeof line, "[%s] %-55s residual %9.3e  tol %9.3e\n",
                      r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_residual,
                      r.tolerance);
        out += line;
        if (!r.notes.empty()) out += "       " + r.notes + "\n";
    }
    for (const CheckReport& r : outcome.findings) {
        std::snprintf(line, sizeof line, "[INFO] %-55s residual %9.3e  tol %9.3e\n",
                      r.name.c_str(), r.max_residual, r.tolerance);
        out += line;
        if (!r.notes.empty()) out += "       " + r.notes + "\n";
    }
    out += std::string("overall: ") + (outcome.overall_pass ? "PASS" : "FAIL") + "\n";
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    if (target.has_parent_path())
        std::filesystem::create_directories(target.parent_path());
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw InvalidParams("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), std::streamsize(content.size()));
        if (!f)
            throw InvalidParams("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string with_bath_suffix(const std::string& path, int n_bath) {
    std::filesystem::path fs(path);
    std::string stem = fs.stem().string();
    std::string ext = fs.extension().string();
    fs.replace_filename(stem + "_N" + std::to_string(n_bath) + ext);
    return fs.string();
}

} // namespace ptent
