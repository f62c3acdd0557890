#include "ptent/closed_form.hpp"

#include <cmath>
#include <string>

#include "ptent/errors.hpp"

namespace ptent {
namespace {

constexpr double kPi = 3.14159265358979323846;

// sin(sqrt(x)*u)/sqrt(x), continued through x <= 0: u at x = 0,
// sinh(sqrt(-x)*u)/sqrt(-x) beyond. Near x*u^2 = 0 the direct quotient
// cancels, so switch to the even series in x*u^2 there.
double stretched_sin(double x, double u) {
    double z = x * u * u;
    if (std::abs(z) < 0.25) {
        double term = u, sum = u;
        for (int k = 1; k < 12; ++k) {
            term *= -z / double(2 * k * (2 * k + 1));
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    if (x > 0.0) {
        double s = std::sqrt(x);
        return std::sin(s * u) / s;
    }
    double s = std::sqrt(-x);
    return std::sinh(s * u) / s;
}

// cos(sqrt(x)*u), same continuation (cosh for x < 0).
double stretched_cos(double x, double u) {
    double z = x * u * u;
    if (std::abs(z) < 0.25) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 12; ++k) {
            term *= -z / double((2 * k - 1) * 2 * k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    if (x > 0.0) return std::cos(std::sqrt(x) * u);
    return std::cosh(std::sqrt(-x) * u);
}

double entropy_term(double x) {
    return x > 0.0 ? -x * std::log(x) : 0.0;
}

} // namespace

MetricSolution::MetricSolution(const ModelParams& p)
    : p_(p), regime_(classify_regime(p)) {
    delta_ = regime_.tag == RegimeTag::Exceptional ? 0.0 : regime_.discriminant;
    sqrt_n_ = std::sqrt(double(p_.n_bath));
    r2_ = p_.c1 * p_.c1 + delta_;
    if (r2_ <= 0.0)
        throw RealityConditionViolated(
            "metric stays real only for c1^2 > kappa^2 - g^2, got c1^2 = " +
            std::to_string(p_.c1 * p_.c1) + " against kappa^2 - g^2 = " +
            std::to_string(-delta_));
}

double MetricSolution::phase(double t) const {
    return 2.0 * sqrt_n_ * (t + p_.c2);
}

double MetricSolution::sigma(double t) const {
    return p_.c1 * stretched_sin(delta_, phase(t));
}

double MetricSolution::sigma_dot(double t) const {
    return 2.0 * sqrt_n_ * p_.c1 * stretched_cos(delta_, phase(t));
}

double MetricSolution::beta(double t) const {
    return 0.5 * std::asinh(sigma(t));
}

double MetricSolution::beta_dot(double t) const {
    // sigma = sinh(2*beta)  =>  beta' = sigma' / (2*cosh(2*beta))
    return sigma_dot(t) / (2.0 * std::hypot(1.0, sigma(t)));
}

double MetricSolution::tanh_two_alpha(double t) const {
    double n = double(p_.n_bath);
    double s = sigma(t);
    double c2b = std::hypot(1.0, s); // cosh(2*beta)
    double bd = sigma_dot(t) / (2.0 * c2b);
    double r = sqrt_n_ * std::sqrt(r2_) / c2b;
    // Eliminating cosh(2a)/sinh(2a) between the two equations of motion and
    // the conserved combination beta'^2 + N*(g^2-kappa^2) = N*(c1^2+delta)/
    // cosh^2(2b) leaves a single branch that passes smoothly through
    // beta' = 0, unlike the naive atanh of each equation separately.
    return (-n * p_.g * p_.kappa + bd * r) / (n * p_.g * p_.g + bd * bd);
}

double MetricSolution::alpha(double t) const {
    double x = tanh_two_alpha(t);
    if (!(std::abs(x) < 1.0))
        throw RealityConditionViolated(
            "tanh(2*alpha) left (-1, 1) at t = " + std::to_string(t));
    return 0.5 * std::atanh(x);
}

double MetricSolution::alpha_dot(double t) const {
    double x = tanh_two_alpha(t);
    double c2a = 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
    double s2a = x * c2a;
    double s = sigma(t);
    double t2b = s / std::hypot(1.0, s);
    return -t2b * sqrt_n_ * (p_.g * c2a + p_.kappa * s2a);
}

double MetricSolution::mu(double t) const {
    double s = sigma(t);
    return sqrt_n_ * std::sqrt(r2_) / (1.0 + s * s);
}

double MetricSolution::mu_printed(double t) const {
    double u = phase(t);
    double c1sq = p_.c1 * p_.c1;
    if (delta_ == 0.0) {
        // limit of the 0/0 form below as delta -> 0
        return sqrt_n_ * p_.c1 / (2.0 * (1.0 + c1sq * u * u));
    }
    // kept verbatim, including the cancellation-prone denominator: this is
    // an independent code path that the verification suite compares to mu()
    double num = delta_ * sqrt_n_ * std::sqrt(r2_);
    double den;
    if (delta_ > 0.0)
        den = c1sq + 2.0 * delta_ - c1sq * std::cos(2.0 * std::sqrt(delta_) * u);
    else
        den = c1sq + 2.0 * delta_ - c1sq * std::cosh(2.0 * std::sqrt(-delta_) * u);
    return num / den;
}

double MetricSolution::mu_integral(double t) const {
    double u = phase(t);
    double sk = stretched_sin(delta_, u);
    double ck = stretched_cos(delta_, u);
    double r = std::sqrt(r2_);
    // Unbroken: the antiderivative atan(r*tan(theta)/sqrt(delta))/2 jumps at
    // theta = pi/2 + k*pi. Reduce theta into branch k, evaluate there with
    // atan2 (exact at the former pole), and add back k*pi/2.
    long long k = 0;
    double sgn = 1.0;
    if (delta_ > 0.0) {
        double theta = std::sqrt(delta_) * u;
        k = (long long)std::floor(theta / kPi + 0.5);
        if (k & 1LL) sgn = -1.0;
    }
    return 0.5 * (std::atan2(r * sgn * sk, sgn * ck) + double(k) * kPi);
}

std::optional<double> MetricSolution::mu_integral_limit() const {
    switch (regime_.tag) {
        case RegimeTag::Unbroken:
            return std::nullopt;
        case RegimeTag::Exceptional:
            return 0.25 * kPi;
        case RegimeTag::Broken:
            // tanh saturates: atan(sqrt(c1^2+delta)/sqrt(-delta)) / 2
            return 0.5 * std::atan2(std::sqrt(r2_), std::sqrt(-delta_));
    }
    return std::nullopt;
}

std::pair<double, double> MetricSolution::lambda_pair(double t) const {
    double m = mu_integral(t) - p_.gamma;
    double c = std::cos(m), s = std::sin(m);
    return {c * c, s * s};
}

EntropyPoint MetricSolution::entropy(double t) const {
    auto [l1, l2] = lambda_pair(t);
    EntropyPoint e;
    e.t = t;
    e.lambda1 = l1;
    e.lambda2 = l2;
    e.entropy = entropy_term(l1) + entropy_term(l2);
    return e;
}

std::optional<double> MetricSolution::entropy_limit() const {
    auto lim = mu_integral_limit();
    if (!lim) return std::nullopt;
    double m = *lim - p_.gamma;
    double c = std::cos(m), s = std::sin(m);
    return entropy_term(c * c) + entropy_term(s * s);
}

double sigma(double t, const ModelParams& p) {
    return MetricSolution(p).sigma(t);
}

std::pair<double, double> alpha_beta(double t, const ModelParams& p) {
    MetricSolution sol(p);
    return {sol.alpha(t), sol.beta(t)};
}

double mu(double t, const ModelParams& p) {
    return MetricSolution(p).mu(t);
}

double mu_integral(double t, const ModelParams& p) {
    return MetricSolution(p).mu_integral(t);
}

std::pair<double, double> lambda_pair(double t, const ModelParams& p) {
    return MetricSolution(p).lambda_pair(t);
}

EntropyPoint entropy(double t, const ModelParams& p) {
    return MetricSolution(p).entropy(t);
}

Asymptote asymptote(const ModelParams& p) {
    Regime r = classify_regime(p);
    if (r.tag != RegimeTag::Broken)
        throw NotBrokenRegime(
            std::string("entropy saturates only for kappa > g, regime here is ") +
            to_string(r.tag));
    if (std::abs(p.gamma - 0.25 * kPi) > 1e-9)
        throw InvalidParams("plateau formula holds for gamma = pi/4, got gamma = " +
                            std::to_string(p.gamma));
    double d = -r.discriminant; // kappa^2 - g^2
    double num = p.c1 * p.c1 - d;
    if (num <= 0.0)
        throw RealityConditionViolated(
            "metric stays real only for c1^2 > kappa^2 - g^2, got c1^2 = " +
            std::to_string(p.c1 * p.c1) + " against kappa^2 - g^2 = " +
            std::to_string(d));
    Asymptote a;
    a.xi = std::sqrt(num) / p.c1;
    double lp = 0.5 * (1.0 + a.xi);
    double lm = 0.5 * (1.0 - a.xi);
    a.s_infinity = entropy_term(lp) + entropy_term(lm);
    return a;
}

std::optional<double> sudden_death_time(const ModelParams& p) {
    MetricSolution sol(p);
    if (!(p.gamma > 0.0 && p.gamma < 0.5 * kPi))
        throw InvalidParams("zero-crossing search needs gamma in (0, pi/2), got " +
                            std::to_string(p.gamma));
    double f0 = sol.mu_integral(0.0);
    // entropy vanishes whenever mu_integral sits on gamma + j*pi/2; find the
    // first rung of that ladder strictly above the starting value
    double half = 0.5 * kPi;
    long long j = (long long)std::ceil((f0 - p.gamma) / half);
    while (p.gamma + double(j) * half <= f0) ++j;
    double target = p.gamma + double(j) * half;
    if (auto lim = sol.mu_integral_limit(); lim && target >= *lim)
        return std::nullopt;
    double lo = 0.0, hi = 1.0;
    while (sol.mu_integral(hi) < target) {
        hi *= 2.0;
        if (!(hi < 1e12))
            return std::nullopt; // not reachable in any sane time span
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (sol.mu_integral(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace ptent
