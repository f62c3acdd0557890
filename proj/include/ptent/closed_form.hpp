#ifndef PTENT_CLOSED_FORM_HPP
#define PTENT_CLOSED_FORM_HPP

#include <optional>
#include <utility>

#include "ptent/params.hpp"

namespace ptent {

struct EntropyPoint {
    double t = 0.0;
    double lambda1 = 0.0; // cos^2(mu_I - gamma)
    double lambda2 = 0.0; // sin^2(mu_I - gamma)
    double entropy = 0.0; // -l1*ln(l1) - l2*ln(l2), nats
};

// Closed-form solution of the metric equations of motion
//   beta' = sqrt(N) * (kappa*cosh(2a) + g*sinh(2a))
//   alpha' = -tanh(2b) * sqrt(N) * (g*cosh(2a) + kappa*sinh(2a))
// written through sigma = sinh(2*beta), which obeys the linear oscillator
//   sigma'' + 4*N*(g^2 - kappa^2)*sigma = 0,  sigma(-c2) = 0, sigma'(-c2)
//   = 2*sqrt(N)*c1.
// One trig branch covers all three regimes: sin(sqrt(D)x)/sqrt(D) is
// continued through D = 0 into sinh, so no caller ever picks a branch.
//
// Construction validates the parameters and, in the broken regime, the
// reality condition c1^2 > kappa^2 - g^2 (otherwise alpha leaves the real
// line in finite time and the metric stops existing).
class MetricSolution {
public:
    explicit MetricSolution(const ModelParams& p);

    const ModelParams& params() const { return p_; }
    const Regime& regime() const { return regime_; }

    double sigma(double t) const;
    double sigma_dot(double t) const;
    double beta(double t) const;      // asinh(sigma)/2
    double beta_dot(double t) const;
    double alpha(double t) const;     // atanh branch continued through beta' = 0
    double alpha_dot(double t) const; // equation-of-motion rhs at alpha(t), beta(t)
    double tanh_two_alpha(double t) const;

    // Coupling of the Hermitian image h = nu*(N_A+N_Q) + mu(t)*A_x produced
    // by the time-dependent similarity map; equals d/dt mu_integral.
    double mu(double t) const;

    // The same coupling evaluated from its standalone closed form
    // (separate code path, kept for cross-checking; see verification notes:
    // evaluates to exactly mu/2).
    double mu_printed(double t) const;

    // Antiderivative of mu with mu_integral(-c2) = 0, unwrapped so it is
    // continuous and increasing across the arctan branch cuts.
    double mu_integral(double t) const;

    // t -> +inf limit of mu_integral; empty in the unbroken regime where
    // mu_integral grows without bound.
    std::optional<double> mu_integral_limit() const;

    std::pair<double, double> lambda_pair(double t) const;
    EntropyPoint entropy(double t) const;

    // t -> +inf limit of the entropy, when mu_integral has one.
    std::optional<double> entropy_limit() const;

private:
    ModelParams p_;
    Regime regime_;
    double delta_;   // g^2 - kappa^2, snapped to 0 when classified exceptional
    double sqrt_n_;
    double r2_;      // c1^2 + delta
    double phase(double t) const; // 2*sqrt(N)*(t + c2)
};

// One-shot conveniences; construct a MetricSolution once when sampling many t.
double sigma(double t, const ModelParams& p);
std::pair<double, double> alpha_beta(double t, const ModelParams& p);
double mu(double t, const ModelParams& p);
double mu_integral(double t, const ModelParams& p);
std::pair<double, double> lambda_pair(double t, const ModelParams& p);
EntropyPoint entropy(double t, const ModelParams& p);

struct Asymptote {
    double xi = 0.0;        // sqrt(c1^2 - (kappa^2 - g^2)) / c1
    double s_infinity = 0.0;
};

// Long-time entropy plateau in the broken regime for gamma = pi/4:
//   S_inf = -sum_{+-} (1 +- xi)/2 * ln((1 +- xi)/2).
// Throws NotBrokenRegime elsewhere and InvalidParams for gamma != pi/4.
Asymptote asymptote(const ModelParams& p);

// First t > 0 where the entropy hits zero, i.e. where mu_integral reaches
// gamma + j*pi/2. Empty when mu_integral saturates below every such target.
// Requires gamma in (0, pi/2).
std::optional<double> sudden_death_time(const ModelParams& p);

} // namespace ptent

#endif
