#include "ptent/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ptent/errors.hpp"

namespace ptent {
namespace {

bool all_finite(const Eigen::MatrixXcd& m) {
    return m.allFinite();
}

double entropy_term(double x) {
    return x > 0.0 ? -x * std::log(x) : 0.0;
}

void check_partition(const ModeLabels& labels, const BipartiteSplit& split) {
    std::vector<int> all = split.system_modes;
    all.insert(all.end(), split.bath_modes.begin(), split.bath_modes.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < int(all.size()); ++i)
        if (all[i] != i)
            throw LabelMismatch(
                "system and bath mode lists must partition the modes exactly");
    if (int(all.size()) != labels.n_modes())
        throw LabelMismatch("split covers " + std::to_string(all.size()) +
                            " modes, basis has " +
                            std::to_string(labels.n_modes()));
}

} // namespace

DensityMatrix DensityMatrix::from(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols())
        throw NotADensityMatrix("matrix is not square");
    if (!all_finite(m))
        throw NotADensityMatrix("matrix has non-finite entries");
    Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10)
        throw NotADensityMatrix("trace is " + std::to_string(tr.real()) + " + " +
                                std::to_string(tr.imag()) + "i, expected 1");
    return DensityMatrix{std::move(m)};
}

ModeLabels product_labels(const std::vector<int>& dims) {
    if (dims.empty())
        throw LabelMismatch("need at least one mode");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw LabelMismatch("mode dimensions must be >= 1");
        total *= d;
        if (total > 1 << 20)
            throw LabelMismatch("product basis too large");
    }
    ModeLabels labels;
    labels.occ.reserve(total);
    std::vector<int> cur(dims.size(), 0);
    for (long i = 0; i < total; ++i) {
        labels.occ.push_back(cur);
        for (int m = int(dims.size()) - 1; m >= 0; --m) {
            if (++cur[m] < dims[m]) break;
            cur[m] = 0;
        }
    }
    return labels;
}

DensityMatrix density_from_ensemble(const Ensemble& e,
                                    const std::optional<Eigen::MatrixXcd>& metric) {
    if (e.weights.empty() || e.weights.size() != e.states.size())
        throw InvalidWeights("need one weight per state, got " +
                             std::to_string(e.weights.size()) + " weights for " +
                             std::to_string(e.states.size()) + " states");
    double sum = 0.0;
    for (double w : e.weights) {
        if (!(w >= -1e-12 && w <= 1.0 + 1e-12))
            throw InvalidWeights("weight " + std::to_string(w) +
                                 " outside [0, 1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw InvalidWeights("weights sum to " + std::to_string(sum));

    int dim = int(e.states.front().size());
    if (metric && (metric->rows() != dim || metric->cols() != dim))
        throw LabelMismatch("metric dimension does not match the states");

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t k = 0; k < e.states.size(); ++k) {
        const Eigen::VectorXcd& v = e.states[k];
        if (int(v.size()) != dim)
            throw LabelMismatch("states live on different spaces");
        double norm2 = metric ? (v.adjoint() * (*metric) * v).value().real()
                              : v.squaredNorm();
        if (std::abs(norm2 - 1.0) > 1e-10)
            throw NonNormalizedState("state " + std::to_string(k) +
                                     " has norm^2 = " + std::to_string(norm2));
        if (metric)
            rho += e.weights[k] * (v * (v.adjoint() * (*metric)));
        else
            rho += e.weights[k] * (v * v.adjoint());
    }
    return DensityMatrix::from(std::move(rho));
}

DensityMatrix similarity_map(const DensityMatrix& rho, const Eigen::MatrixXcd& eta) {
    if (eta.rows() != eta.cols() || eta.rows() != rho.mat.rows())
        throw LabelMismatch("eta must be square with the density's dimension");
    if (!all_finite(eta))
        throw SingularEta("eta has non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eta);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e12)
        throw SingularEta("condition number " +
                          std::to_string(smin > 0.0 ? smax / smin
                                                    : std::numeric_limits<double>::infinity()) +
                          " exceeds 1e12");
    // eta * rho * eta^-1, right division done as a transposed LU solve
    Eigen::MatrixXcd left = eta * rho.mat;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(eta.transpose());
    Eigen::MatrixXcd out = lu.solve(left.transpose()).transpose();
    // the trace is preserved exactly in exact arithmetic; a visible drift
    // means eta was too ill-conditioned for the solve to be trusted
    if (std::abs(out.trace() - rho.mat.trace()) > 1e-8)
        throw SingularEta("similarity transform lost the trace");
    return DensityMatrix{std::move(out)};
}

ReducedDensity partial_trace(const DensityMatrix& rho, const ModeLabels& labels,
                             const BipartiteSplit& split, Keep keep) {
    if (labels.dim() != rho.dim())
        throw LabelMismatch("basis has " + std::to_string(labels.dim()) +
                            " labels for a dimension-" +
                            std::to_string(rho.dim()) + " density");
    check_partition(labels, split);
    const std::vector<int>& kept_modes =
        keep == Keep::System ? split.system_modes : split.bath_modes;
    const std::vector<int>& traced_modes =
        keep == Keep::System ? split.bath_modes : split.system_modes;

    int dim = labels.dim();
    std::vector<std::vector<int>> kept_key(dim), traced_key(dim);
    for (int i = 0; i < dim; ++i) {
        for (int m : kept_modes) kept_key[i].push_back(labels.occ[i][m]);
        for (int m : traced_modes) traced_key[i].push_back(labels.occ[i][m]);
    }

    std::map<std::vector<int>, int> index; // lexicographic, so deterministic
    for (int i = 0; i < dim; ++i)
        index.emplace(kept_key[i], 0);
    int next = 0;
    ModeLabels out_labels;
    out_labels.occ.reserve(index.size());
    for (auto& [key, idx] : index) {
        idx = next++;
        out_labels.occ.push_back(key);
    }

    Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(next, next);
    for (int i = 0; i < dim; ++i) {
        int ki = index.at(kept_key[i]);
        for (int j = 0; j < dim; ++j) {
            if (traced_key[i] != traced_key[j]) continue;
            red(ki, index.at(kept_key[j])) += rho.mat(i, j);
        }
    }
    return ReducedDensity{DensityMatrix::from(std::move(red)), std::move(out_labels)};
}

double entropy_from_spectrum(std::span<const double> lambda) {
    double s = 0.0;
    for (double l : lambda) s += entropy_term(l);
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::MatrixXcd& m = rho.mat;
    double skew = 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (skew > 1e-10)
        throw NotADensityMatrix("anti-Hermitian part " + std::to_string(skew) +
                                " exceeds 1e-10; use entropy_from_spectrum for "
                                "similarity images");
    Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm,
                                                       Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    double total = 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-10)
            throw NotADensityMatrix("negative eigenvalue " + std::to_string(ev(i)));
        if (ev(i) < 0.0) ev(i) = 0.0;
        total += ev(i);
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw NotADensityMatrix("spectrum sums to " + std::to_string(total));
    return entropy_from_spectrum(std::span<const double>(ev.data(), ev.size()));
}

} // namespace ptent
