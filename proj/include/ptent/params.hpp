#ifndef PTENT_PARAMS_HPP
#define PTENT_PARAMS_HPP

#include <complex>
#include <string>
#include <utility>

namespace ptent {

// Model: one system mode coupled to N identical bath modes,
//   H = nu*N_A + nu*N_Q + sqrt(N)*g*A_x - i*sqrt(N)*kappa*A_y.
// g is the Hermitian coupling, kappa the anti-Hermitian (gain/loss) one.
// c1, c2 are the integration constants of the metric equations of motion
// and gamma parametrizes the initial single-excitation state
// cos(gamma)|1_a 0_q> + sin(gamma)|0_a 1_q>.
struct ModelParams {
    double nu = 1.0;
    double g = 0.0;
    double kappa = 0.0;
    int n_bath = 1;
    double c1 = 1.0;
    double c2 = 0.0;
    double gamma = 0.78539816339744831; // pi/4, an equal-weight initial state

    // True when the real part of the spectrum m*(nu +- sqrt(N)*sqrt(g^2-kappa^2))
    // stays bounded below as m grows, i.e. nu > sqrt(N)*sqrt(max(g^2-kappa^2, 0)).
    bool spectrum_bounded_below() const;
};

enum class RegimeTag { Unbroken, Exceptional, Broken };

struct Regime {
    RegimeTag tag = RegimeTag::Unbroken;
    double discriminant = 0.0; // g^2 - kappa^2, unsnapped
};

const char* to_string(RegimeTag tag);

// Throws InvalidParams unless: everything finite, n_bath >= 1, c1 > 0
// (flip the sign of c2 and the state phase instead of passing c1 < 0),
// and not g == kappa == 0 (free theory, no metric flow to track).
void validate(const ModelParams& p);

// Sign of g^2 - kappa^2 with tolerance 1e-12 * max(1, g^2 + kappa^2).
// Also runs validate().
Regime classify_regime(const ModelParams& p);

// Eigenvalue pair of the m-excitation block, E_mp/E_mm = m*(nu +- sqrt(N)*w)
// where w = sqrt(g^2 - kappa^2) continued to i*sqrt(kappa^2 - g^2) when broken.
std::pair<std::complex<double>, std::complex<double>>
energy_spectrum(const ModelParams& p, int m);

} // namespace ptent

#endif
