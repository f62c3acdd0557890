#ifndef PTENT_CURVE_HPP
#define PTENT_CURVE_HPP

#include <string>
#include <vector>

#include "ptent/closed_form.hpp"
#include "ptent/oracle.hpp"
#include "ptent/params.hpp"

namespace ptent {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    ModelParams params;
    double t_start = 0.0;
    double t_end = 10.0;
    int samples = 2001;
    std::vector<int> bath_sizes = {1};
    OutputFormat format = OutputFormat::Csv;
    std::string output_path; // empty writes to stdout
};

void validate(const RunConfig& cfg);

struct CurveRow {
    double t = 0.0;
    double entropy = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu_integral = 0.0;
};

std::vector<CurveRow> sample_curve(const ModelParams& p, double t_start,
                                   double t_end, int samples);

// Serializers are pure string builders: fixed schema t,S,lambda1,lambda2,mu_I,
// '#'-prefixed version/parameter comments, %.17g numbers. Equal input gives
// byte-identical output; no timestamps anywhere.
std::string curve_csv(const ModelParams& p, const std::vector<CurveRow>& rows);
std::string curve_json(const ModelParams& p, const std::vector<CurveRow>& rows);

std::string verify_json(const VerifyOutcome& outcome);
std::string verify_text(const VerifyOutcome& outcome);

// temp file + rename so readers never see a half-written file
void atomic_write(const std::string& path, const std::string& content);

// "out.csv" -> "out_N3.csv"
std::string with_bath_suffix(const std::string& path, int n_bath);

const char* version_string();

} // namespace ptent

#endif
