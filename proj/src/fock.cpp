#include "ptent/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

#include "ptent/closed_form.hpp"
#include "ptent/errors.hpp"

namespace ptent {
namespace {

void enumerate(int mode, int n_modes, int remaining, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (mode == n_modes) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        cur[mode] = v;
        enumerate(mode + 1, n_modes, remaining - v, cur, out);
    }
    cur[mode] = 0;
}

void check_basis_params(const FockBasis& basis, const ModelParams& p) {
    if (p.n_bath != basis.n_bath)
        throw LabelMismatch("params have n_bath = " + std::to_string(p.n_bath) +
                            " but the basis was built for " +
                            std::to_string(basis.n_bath));
}

} // namespace

int FockBasis::index_of(const std::vector<int>& occ) const {
    auto it = std::find(states.begin(), states.end(), occ);
    return it == states.end() ? -1 : int(it - states.begin());
}

ModeLabels FockBasis::labels() const {
    return ModeLabels{states};
}

BipartiteSplit FockBasis::system_bath_split() const {
    BipartiteSplit split;
    split.system_modes = {0};
    for (int m = 1; m <= n_bath; ++m) split.bath_modes.push_back(m);
    return split;
}

FockBasis build_basis(int n_bath, int max_total) {
    if (n_bath < 1)
        throw InvalidParams("need at least one bath mode");
    if (max_total < 1 || max_total > 2)
        throw UnsupportedTruncation("total occupation cap must be 1 or 2, got " +
                                    std::to_string(max_total));
    FockBasis b;
    b.n_bath = n_bath;
    b.max_total = max_total;
    std::vector<int> cur(n_bath + 1, 0);
    enumerate(0, n_bath + 1, max_total, cur, b.states);
    return b;
}

Eigen::MatrixXcd lowering(const FockBasis& basis, int mode) {
    if (mode < 0 || mode > basis.n_bath)
        throw LabelMismatch("mode " + std::to_string(mode) + " out of range");
    int dim = basis.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        int n = basis.states[i][mode];
        if (n == 0) continue;
        std::vector<int> target = basis.states[i];
        target[mode] = n - 1;
        int j = basis.index_of(target);
        m(j, i) = std::sqrt(double(n));
    }
    return m;
}

Generators build_generators(const FockBasis& basis) {
    double n = double(basis.n_bath);
    int dim = basis.dim();
    Eigen::MatrixXcd a = lowering(basis, 0);
    std::vector<Eigen::MatrixXcd> q;
    q.reserve(basis.n_bath);
    for (int m = 1; m <= basis.n_bath; ++m) q.push_back(lowering(basis, m));

    Eigen::MatrixXcd qsum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& qm : q) qsum += qm;

    Generators gen;
    gen.n_a = a.adjoint() * a;
    gen.n_q = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& qm : q) gen.n_q += qm.adjoint() * qm;

    // literal definition, exchange terms one at a time
    gen.n_aq = gen.n_a - gen.n_q / n;
    for (int l = 0; l < basis.n_bath; ++l)
        for (int m = 0; m < basis.n_bath; ++m)
            if (l != m) gen.n_aq -= (q[l].adjoint() * q[m]) / n;

    Eigen::MatrixXcd up = a.adjoint() * qsum;   // a^dag Q
    Eigen::MatrixXcd down = qsum.adjoint() * a; // a Q^dag (they commute)
    double rn = std::sqrt(n);
    gen.a_x = (up + down) / rn;
    gen.a_y = Complex(0.0, 1.0) * (up - down) / rn;
    return gen;
}

Eigen::MatrixXcd build_hamiltonian(const FockBasis& basis, const ModelParams& p) {
    validate(p);
    check_basis_params(basis, p);
    int dim = basis.dim();
    Eigen::MatrixXcd a = lowering(basis, 0);
    Eigen::MatrixXcd qsum = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd nq = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 1; m <= basis.n_bath; ++m) {
        Eigen::MatrixXcd qm = lowering(basis, m);
        qsum += qm;
        nq += qm.adjoint() * qm;
    }
    Eigen::MatrixXcd na = a.adjoint() * a;
    return p.nu * (na + nq) + (p.g + p.kappa) * (a.adjoint() * qsum) +
           (p.g - p.kappa) * (qsum.adjoint() * a);
}

Eigen::MatrixXcd build_h_image(double t, const FockBasis& basis,
                               const ModelParams& p, double mu_scale) {
    check_basis_params(basis, p);
    MetricSolution sol(p);
    Generators gen = build_generators(basis);
    return p.nu * (gen.n_a + gen.n_q) + (mu_scale * sol.mu(t)) * gen.a_x;
}

DysonMap build_eta(double t, const FockBasis& basis, const ModelParams& p) {
    check_basis_params(basis, p);
    MetricSolution sol(p);
    Generators gen = build_generators(basis);
    double al = sol.alpha(t);
    double be = sol.beta(t);
    Eigen::MatrixXcd eb = (be * gen.a_y).exp();
    Eigen::MatrixXcd ea = (al * gen.n_aq).exp();
    DysonMap d;
    d.eta = eb * ea;
    d.eta_inv = (-al * gen.n_aq).exp() * (-be * gen.a_y).exp();
    d.eta_dot = sol.beta_dot(t) * (gen.a_y * d.eta) +
                sol.alpha_dot(t) * (eb * gen.n_aq * ea);
    return d;
}

} // namespace ptent
