#include "ptent/params.hpp"

#include <cmath>

#include "ptent/errors.hpp"

namespace ptent {

bool ModelParams::spectrum_bounded_below() const {
    double disc = g * g - kappa * kappa;
    if (disc <= 0.0) return nu > 0.0;
    return nu > std::sqrt(double(n_bath)) * std::sqrt(disc);
}

const char* to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Unbroken: return "unbroken";
        case RegimeTag::Exceptional: return "exceptional";
        case RegimeTag::Broken: return "broken";
    }
    return "?";
}

void validate(const ModelParams& p) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(p.nu) || !finite(p.g) || !finite(p.kappa) || !finite(p.c1) ||
        !finite(p.c2) || !finite(p.gamma))
        throw InvalidParams("parameters must be finite");
    if (p.n_bath < 1)
        throw InvalidParams("need at least one bath mode (n_bath >= 1)");
    if (p.g == 0.0 && p.kappa == 0.0)
        throw InvalidParams("g = kappa = 0 leaves no system-bath coupling");
    if (p.c1 == 0.0)
        throw InvalidParams("c1 = 0 collapses the metric flow (sigma identically 0)");
    if (p.c1 < 0.0)
        throw InvalidParams(
            "c1 must be positive; a negative c1 is the same solution with "
            "c2 -> -c2 and a sign flip of sigma, pass it that way");
}

Regime classify_regime(const ModelParams& p) {
    validate(p);
    double disc = p.g * p.g - p.kappa * p.kappa;
    double eps = 1e-12 * std::max(1.0, p.g * p.g + p.kappa * p.kappa);
    Regime r;
    r.discriminant = disc;
    if (disc > eps)
        r.tag = RegimeTag::Unbroken;
    else if (disc < -eps)
        r.tag = RegimeTag::Broken;
    else
        r.tag = RegimeTag::Exceptional;
    return r;
}

std::pair<std::complex<double>, std::complex<double>>
energy_spectrum(const ModelParams& p, int m) {
    validate(p);
    if (m < 0) throw InvalidParams("excitation number m must be >= 0");
    double disc = p.g * p.g - p.kappa * p.kappa;
    // sqrt of the discriminant, continued onto the imaginary axis
    std::complex<double> w = disc >= 0.0
        ? std::complex<double>(std::sqrt(disc), 0.0)
        : std::complex<double>(0.0, std::sqrt(-disc));
    std::complex<double> split = std::sqrt(double(p.n_bath)) * w;
    double md = double(m);
    return {md * (p.nu + split), md * (p.nu - split)};
}

} // namespace ptent
