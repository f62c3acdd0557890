#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "ptent/closed_form.hpp"
#include "ptent/density.hpp"
#include "ptent/errors.hpp"

using namespace ptent;

namespace {

Eigen::MatrixXcd diag(std::initializer_list<double> xs) {
  Eigen::VectorXcd v(long(xs.size()));
  long i = 0;
  for (double x : xs) v(i++) = Complex(x, 0.0);
  return v.asDiagonal();
}

Eigen::VectorXcd basis_vec(int dim, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return v;
}

// deterministic complex matrix with entries in the unit square
Eigen::MatrixXcd random_matrix(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

DensityMatrix random_density(int n, std::mt19937& rng) {
  Eigen::MatrixXcd a = random_matrix(n, rng);
  Eigen::MatrixXcd m = a * a.adjoint();
  m /= m.trace();
  return DensityMatrix::from(m);
}

}  // namespace

TEST_CASE("checked construction enforces shape, finiteness, and unit trace") {
  CHECK_NOTHROW(DensityMatrix::from(diag({0.5, 0.5})));
  CHECK_THROWS_AS(DensityMatrix::from(diag({0.5, 0.6})), NotADensityMatrix);
  CHECK_THROWS_AS(DensityMatrix::from(Eigen::MatrixXcd::Zero(2, 3)), NotADensityMatrix);
  Eigen::MatrixXcd bad = diag({1.0, 0.0});
  bad(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(DensityMatrix::from(bad), NotADensityMatrix);
}

TEST_CASE("spectrum entropy handles zeros and matches hand values") {
  std::vector<double> p1 = {1.0, 0.0};
  CHECK(entropy_from_spectrum(p1) == 0.0);
  std::vector<double> p2 = {0.5, 0.5};
  CHECK(entropy_from_spectrum(p2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  std::vector<double> p3 = {0.8872983346207418, 0.1127016653792583};
  CHECK(entropy_from_spectrum(p3) ==
        doctest::Approx(0.3521268061190675).epsilon(1e-13));
  std::vector<double> p4 = {0.25, 0.25, 0.25, 0.25};
  CHECK(entropy_from_spectrum(p4) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("von Neumann entropy of diagonal and projector states") {
  CHECK(von_neumann_entropy(DensityMatrix::from(diag({1.0, 0.0}))) <= 1e-14);
  CHECK(von_neumann_entropy(DensityMatrix::from(diag({0.5, 0.5}))) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // projector onto (|0> + |1>)/sqrt(2) is pure regardless of basis
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  CHECK(von_neumann_entropy(DensityMatrix::from(m)) <= 1e-12);
}

TEST_CASE("von Neumann entropy rejects non-Hermitian and indefinite input") {
  Eigen::MatrixXcd skew = diag({0.5, 0.5});
  skew(0, 1) = Complex(0.0, 0.3);  // no conjugate partner below the diagonal
  CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix::from(skew)), NotADensityMatrix);
  CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix::from(diag({1.5, -0.5}))),
                  NotADensityMatrix);
}

TEST_CASE("ensembles assemble classical mixtures of projectors") {
  Ensemble e;
  e.weights = {0.25, 0.75};
  e.states = {basis_vec(2, 0), basis_vec(2, 1)};
  DensityMatrix rho = density_from_ensemble(e);
  CHECK(std::abs(rho.mat(0, 0) - Complex(0.25, 0)) < 1e-15);
  CHECK(std::abs(rho.mat(1, 1) - Complex(0.75, 0)) < 1e-15);
  CHECK(std::abs(rho.mat(0, 1)) == 0.0);

  e.weights = {0.5};
  CHECK_THROWS_AS(density_from_ensemble(e), InvalidWeights);
  e.weights = {1.3, -0.3};
  CHECK_THROWS_AS(density_from_ensemble(e), InvalidWeights);
  e.weights = {0.25, 0.25};
  CHECK_THROWS_AS(density_from_ensemble(e), InvalidWeights);

  e.weights = {0.5, 0.5};
  e.states[0] *= 2.0;
  CHECK_THROWS_AS(density_from_ensemble(e), NonNormalizedState);
}

TEST_CASE("metric-weighted ensembles build the non-Hermitian-frame density") {
  // metric diag(4, 1): the state (1/2, 0) is metric-normalized
  Eigen::MatrixXcd metric = diag({4.0, 1.0});
  Ensemble e;
  e.weights = {1.0};
  e.states = {0.5 * basis_vec(2, 0)};
  DensityMatrix rho = density_from_ensemble(e, metric);
  CHECK(std::abs(rho.mat.trace() - Complex(1.0, 0)) < 1e-14);
  CHECK(std::abs(rho.mat(0, 0) - Complex(1.0, 0)) < 1e-14);

  // the same state fails when the metric is dropped
  CHECK_THROWS_AS(density_from_ensemble(e), NonNormalizedState);
}

TEST_CASE("similarity map preserves spectrum, trace, and entropy") {
  std::mt19937 rng(20240817u);
  for (int n : {2, 3, 6}) {
    DensityMatrix rho = random_density(n, rng);
    Eigen::MatrixXcd eta =
        Eigen::MatrixXcd::Identity(n, n) + 0.4 * random_matrix(n, rng);
    DensityMatrix mapped = similarity_map(rho, eta);
    CHECK(std::abs(mapped.mat.trace() - Complex(1.0, 0)) < 1e-12);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mapped.mat);
    REQUIRE(es.info() == Eigen::Success);
    std::vector<double> mapped_spec;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-10);
      mapped_spec.push_back(es.eigenvalues()(i).real());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(rho.mat);
    REQUIRE(hs.info() == Eigen::Success);
    std::sort(mapped_spec.begin(), mapped_spec.end());
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(mapped_spec[i] - hs.eigenvalues()(i)) < 1e-10);

    std::vector<double> clamped;
    for (double l : mapped_spec) clamped.push_back(std::max(l, 0.0));
    CHECK(std::abs(entropy_from_spectrum(clamped) - von_neumann_entropy(rho)) < 1e-9);
  }
}

TEST_CASE("similarity map is the identity for eta = identity") {
  std::mt19937 rng(7u);
  DensityMatrix rho = random_density(4, rng);
  DensityMatrix same = similarity_map(rho, Eigen::MatrixXcd::Identity(4, 4));
  CHECK((same.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("similarity map refuses numerically singular frames") {
  std::mt19937 rng(11u);
  DensityMatrix rho = random_density(2, rng);
  CHECK_THROWS_AS(similarity_map(rho, diag({1e13, 1.0})), SingularEta);
  CHECK_THROWS_AS(similarity_map(rho, Eigen::MatrixXcd::Identity(3, 3)), LabelMismatch);
}

TEST_CASE("product labels enumerate occupations with the first mode slowest") {
  ModeLabels labels = product_labels({2, 3});
  REQUIRE(labels.dim() == 6);
  CHECK(labels.occ[0] == std::vector<int>{0, 0});
  CHECK(labels.occ[1] == std::vector<int>{0, 1});
  CHECK(labels.occ[2] == std::vector<int>{0, 2});
  CHECK(labels.occ[3] == std::vector<int>{1, 0});
  CHECK(labels.occ[5] == std::vector<int>{1, 2});
  CHECK(labels.n_modes() == 2);
}

TEST_CASE("partial trace of a product state is the factor state") {
  ModeLabels labels = product_labels({2, 2});
  // |0> x |1>
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0;  // occupation (0, 1)
  Ensemble e{{1.0}, {psi}};
  DensityMatrix rho = density_from_ensemble(e);
  BipartiteSplit split{{0}, {1}};

  ReducedDensity sys = partial_trace(rho, labels, split, Keep::System);
  REQUIRE(sys.rho.dim() == 2);
  CHECK(std::abs(sys.rho.mat(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(von_neumann_entropy(sys.rho) <= 1e-14);

  ReducedDensity bath = partial_trace(rho, labels, split, Keep::Bath);
  REQUIRE(bath.rho.dim() == 2);
  CHECK(std::abs(bath.rho.mat(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(bath.labels.occ[0] == std::vector<int>{0});
}

TEST_CASE("partial trace of a Bell pair is maximally mixed on both sides") {
  ModeLabels labels = product_labels({2, 2});
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);  // (0,0)
  psi(3) = 1.0 / std::sqrt(2.0);  // (1,1)
  DensityMatrix rho = density_from_ensemble(Ensemble{{1.0}, {psi}});
  BipartiteSplit split{{0}, {1}};
  for (Keep side : {Keep::System, Keep::Bath}) {
    ReducedDensity red = partial_trace(rho, labels, split, side);
    CHECK((red.rho.mat - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK(von_neumann_entropy(red.rho) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("both reductions of a pure state share their entropy") {
  std::mt19937 rng(20240818u);
  ModeLabels labels = product_labels({2, 2, 3});
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd psi(labels.dim());
  for (int i = 0; i < labels.dim(); ++i) psi(i) = Complex(u(rng), u(rng));
  psi.normalize();
  DensityMatrix rho = density_from_ensemble(Ensemble{{1.0}, {psi}});
  BipartiteSplit split{{0}, {1, 2}};
  double s_sys =
      von_neumann_entropy(partial_trace(rho, labels, split, Keep::System).rho);
  double s_bath =
      von_neumann_entropy(partial_trace(rho, labels, split, Keep::Bath).rho);
  CHECK(std::abs(s_sys - s_bath) < 1e-10);
  CHECK(s_sys > 0.01);  // a random pure state is entangled
}

TEST_CASE("partial trace validates the mode partition") {
  ModeLabels labels = product_labels({2, 2});
  DensityMatrix rho = DensityMatrix::from(0.25 * Eigen::MatrixXcd::Identity(4, 4));
  CHECK_THROWS_AS(partial_trace(rho, labels, BipartiteSplit{{0}, {0, 1}}, Keep::System),
                  LabelMismatch);
  CHECK_THROWS_AS(partial_trace(rho, labels, BipartiteSplit{{0}, {2}}, Keep::System),
                  LabelMismatch);
  CHECK_THROWS_AS(partial_trace(rho, labels, BipartiteSplit{{0}, {}}, Keep::System),
                  LabelMismatch);
  ModeLabels wrong = product_labels({2});
  CHECK_THROWS_AS(partial_trace(rho, wrong, BipartiteSplit{{0}, {1}}, Keep::System),
                  LabelMismatch);
}

TEST_CASE("partial trace is linear and trace preserving") {
  std::mt19937 rng(31u);
  ModeLabels labels = product_labels({2, 3});
  DensityMatrix a = random_density(6, rng);
  DensityMatrix b = random_density(6, rng);
  Eigen::MatrixXcd mix = 0.3 * a.mat + 0.7 * b.mat;
  BipartiteSplit split{{0}, {1}};
  ReducedDensity ra = partial_trace(a, labels, split, Keep::System);
  ReducedDensity rb = partial_trace(b, labels, split, Keep::System);
  ReducedDensity rm =
      partial_trace(DensityMatrix::from(mix), labels, split, Keep::System);
  CHECK((rm.rho.mat - 0.3 * ra.rho.mat - 0.7 * rb.rho.mat).cwiseAbs().maxCoeff() <
        1e-13);
  CHECK(std::abs(ra.rho.mat.trace() - Complex(1, 0)) < 1e-13);
}

TEST_CASE("two-level reduced spectrum matches the closed form weights") {
  // State cos(g)|10> + sin(g)|01> on two modes: reduction to mode 0 has
  // eigenvalues cos^2(g), sin^2(g) - the analytic lambda pair at t = 0.
  double gamma = 0.78539816339744831;
  ModeLabels labels = product_labels({2, 2});
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(2) = std::cos(gamma);  // (1, 0)
  psi(1) = std::sin(gamma);  // (0, 1)
  DensityMatrix rho = density_from_ensemble(Ensemble{{1.0}, {psi}});
  ReducedDensity red = partial_trace(rho, labels, BipartiteSplit{{0}, {1}}, Keep::System);

  ModelParams p;
  p.g = 0.7;
  p.kappa = 0.3;
  auto [l1, l2] = MetricSolution(p).lambda_pair(0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(red.rho.mat);
  REQUIRE(es.info() == Eigen::Success);
  CHECK(es.eigenvalues()(1) == doctest::Approx(l1).epsilon(1e-12));
  CHECK(es.eigenvalues()(0) == doctest::Approx(l2).epsilon(1e-12));
}
