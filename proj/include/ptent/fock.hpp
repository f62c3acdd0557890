#ifndef PTENT_FOCK_HPP
#define PTENT_FOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "ptent/density.hpp"
#include "ptent/params.hpp"

namespace ptent {

// Truncated Fock space of one system mode plus n_bath bath modes, keeping
// every occupation tuple with total <= max_total. Mode 0 is the system mode;
// states are ordered lexicographically with mode 0 slowest, vacuum first.
struct FockBasis {
    int n_bath = 1;
    int max_total = 1;
    std::vector<std::vector<int>> states;

    int dim() const { return int(states.size()); }
    int n_modes() const { return n_bath + 1; }
    int index_of(const std::vector<int>& occ) const; // -1 when absent
    ModeLabels labels() const;
    BipartiteSplit system_bath_split() const; // mode 0 vs the rest
};

// max_total must be 1 or 2: every operator in the model conserves the total
// occupation, the states of interest live in the single-excitation sector,
// and the cap-2 space exists to demonstrate the truncation is not biting.
FockBasis build_basis(int n_bath, int max_total);

// Annihilation operator of one mode on the truncated basis.
Eigen::MatrixXcd lowering(const FockBasis& basis, int mode);

// The observables the model is written in. All Hermitian and all commute
// with the total number, so the lowering-first products below stay exact
// under the truncation.
struct Generators {
    Eigen::MatrixXcd n_a;  // a^dag a
    Eigen::MatrixXcd n_q;  // sum_n q_n^dag q_n
    Eigen::MatrixXcd n_aq; // N_A - N_Q/N - (1/N) sum_{n != m} q_n^dag q_m
    Eigen::MatrixXcd a_x;  // (a^dag Q + a Q^dag)/sqrt(N) with Q = sum_n q_n
    Eigen::MatrixXcd a_y;  // i (a^dag Q - a Q^dag)/sqrt(N)
};

Generators build_generators(const FockBasis& basis);

// Non-Hermitian Hamiltonian in its ladder form
//   nu*(N_A + N_Q) + (g + kappa) a^dag Q + (g - kappa) a Q^dag,
// assembled independently of build_generators so the identity
// H = nu*N_A + nu*N_Q + sqrt(N)*g*A_x - i*sqrt(N)*kappa*A_y is testable.
Eigen::MatrixXcd build_hamiltonian(const FockBasis& basis, const ModelParams& p);

// Hermitian image nu*(N_A + N_Q) + mu(t)*A_x of the similarity map.
// mu_scale deliberately mis-scales the coupling; the verification suite uses
// it as a negative control and it must stay 1 everywhere else.
Eigen::MatrixXcd build_h_image(double t, const FockBasis& basis,
                               const ModelParams& p, double mu_scale = 1.0);

// eta(t) = exp(beta A_y) exp(alpha N_AQ) plus the pieces every check of the
// time-dependent similarity map needs. eta_inv is assembled analytically as
// exp(-alpha N_AQ) exp(-beta A_y), eta_dot by the product rule.
struct DysonMap {
    Eigen::MatrixXcd eta;
    Eigen::MatrixXcd eta_inv;
    Eigen::MatrixXcd eta_dot;
};

DysonMap build_eta(double t, const FockBasis& basis, const ModelParams& p);

} // namespace ptent

#endif
