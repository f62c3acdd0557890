#ifndef PTENT_DENSITY_HPP
#define PTENT_DENSITY_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace ptent {

using Complex = std::complex<double>;

// Unit-trace matrix on a finite mode basis. Hermiticity and positivity are
// *not* part of the invariant: similarity images eta * rho * eta^-1 live here
// too, they share the spectrum but not the Hermitian form.
struct DensityMatrix {
    Eigen::MatrixXcd mat;

    int dim() const { return int(mat.rows()); }

    // Checked constructor: square, finite entries, trace 1 within 1e-10.
    static DensityMatrix from(Eigen::MatrixXcd m);
};

// Pure states with classical weights; weights must be in [0,1] and sum to 1.
struct Ensemble {
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> states;
};

// Occupation-number labels for each basis vector, one entry per mode.
// The partial trace is defined entirely by these labels, so it works for any
// labeled basis (full product grids, truncated total-number sectors, ...).
struct ModeLabels {
    std::vector<std::vector<int>> occ;

    int dim() const { return int(occ.size()); }
    int n_modes() const { return occ.empty() ? 0 : int(occ.front().size()); }
};

// All occupation tuples with per-mode dimensions dims, lexicographic with the
// first mode slowest. dim = prod(dims).
ModeLabels product_labels(const std::vector<int>& dims);

// Disjoint partition of the mode indices into the kept and traced groups.
struct BipartiteSplit {
    std::vector<int> system_modes;
    std::vector<int> bath_modes;
};

enum class Keep { System, Bath };

// rho = sum_k w_k |psi_k><psi_k|, or |psi_k><psi_k| * metric when a metric is
// given (the non-Hermitian-frame density, normalized as <psi|metric|psi> = 1).
// Throws InvalidWeights / NonNormalizedState.
DensityMatrix density_from_ensemble(
    const Ensemble& e,
    const std::optional<Eigen::MatrixXcd>& metric = std::nullopt);

// eta * rho * eta^-1 via an LU solve (never forms the inverse). Throws
// SingularEta when the condition number of eta exceeds 1e12.
DensityMatrix similarity_map(const DensityMatrix& rho, const Eigen::MatrixXcd& eta);

struct ReducedDensity {
    DensityMatrix rho;
    ModeLabels labels; // labels of the kept modes, in their original order
};

// Trace out one side of the split. Basis vectors of the kept side are the
// distinct kept-occupation tuples, ordered lexicographically.
ReducedDensity partial_trace(const DensityMatrix& rho, const ModeLabels& labels,
                             const BipartiteSplit& split, Keep keep);

// -sum l*ln(l) in nats over a probability spectrum; entries <= 0 contribute 0.
double entropy_from_spectrum(std::span<const double> lambda);

// Entropy of a Hermitian positive unit-trace matrix. Symmetrizes away an
// anti-Hermitian part up to 1e-10 (NotADensityMatrix beyond), clamps
// eigenvalue noise down to -1e-10, and requires the spectrum to sum to 1.
double von_neumann_entropy(const DensityMatrix& rho);

} // namespace ptent

#endif
