#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qhcompat/dyson.hpp"
#include "qhcompat/error.hpp"
#include "qhcompat/fixtures.hpp"
#include "qhcompat/genpair.hpp"

using namespace qhcompat;
using namespace qhcompat::dyson;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IoError;
}

} // namespace

TEST_CASE("analyze recovers the three-level spectra") {
    const SpectralData first = analyze(fixtures::three_level_first(0.5));
    CHECK(first.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(first.eigenvalues(1)) <= 1e-12);
    CHECK(first.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-12));

    const SpectralData second = analyze(fixtures::three_level_second(0.5));
    CHECK(second.eigenvalues(0) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(second.eigenvalues(1)) <= 1e-12);
    CHECK(second.eigenvalues(2) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    for (const SpectralData* sd : {&first, &second}) {
        const ComplexMatrix& od = sd->omega_dagger;
        const ComplexMatrix lhs = sd->source.adjoint() * od;
        const ComplexMatrix rhs = od * sd->eigenvalues.cast<Complex>().asDiagonal();
        CHECK((lhs - rhs).norm() <= 1e-9 * sd->source.norm() * od.norm());
        for (Eigen::Index k = 0; k < od.cols(); ++k) {
            Eigen::Index pivot = 0;
            od.col(k).cwiseAbs().maxCoeff(&pivot);
            CHECK(od(pivot, k).imag() == 0.0);
            CHECK(od(pivot, k).real() > 0.0);
            CHECK(od.col(k).norm() == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("analyze rejects non-real and degenerate spectra") {
    ComplexMatrix rotation(2, 2);
    rotation << 0.0, 1.0, -1.0, 0.0;
    CHECK(kind_of([&] { analyze(rotation); }) == ErrorKind::NonRealSpectrum);

    CHECK(kind_of([] { analyze(ComplexMatrix::Identity(2, 2)); }) == ErrorKind::DegenerateSpectrum);

    ComplexMatrix jordan(2, 2);
    jordan << 1.0, 1.0, 0.0, 1.0;
    const ErrorKind k = kind_of([&] { analyze(jordan); });
    CHECK((k == ErrorKind::DegenerateSpectrum || k == ErrorKind::NonRealSpectrum ||
           k == ErrorKind::SingularMatrix));

    // a = 1 collapses the second spectrum onto zero.
    const ErrorKind at_ep = kind_of([] { analyze(fixtures::three_level_second(1.0)); });
    CHECK((at_ep == ErrorKind::DegenerateSpectrum || at_ep == ErrorKind::NonRealSpectrum ||
           at_ep == ErrorKind::SingularMatrix));
}

TEST_CASE("scaling vector validation") {
    CHECK(kind_of([] { ScalingVector(RealVector::Constant(2, 0.0)); }) == ErrorKind::InvalidArgument);
    RealVector v(2);
    v << 1.0, -1.0;
    CHECK(kind_of([&] { ScalingVector{v}; }) == ErrorKind::InvalidArgument);
    CHECK(ScalingVector::uniform(3, 2.0)[1] == 2.0);
}

TEST_CASE("metric") {
    ComplexMatrix h(2, 2);
    h << 2.0, Complex(0, 1), Complex(0, -1), 3.0;
    const auto sd_h = analyze(h);
    const auto unit = metric(sd_h, ScalingVector::uniform(2));
    CHECK((unit.theta - ComplexMatrix::Identity(2, 2)).norm() <= 1e-12);

    // The closed-form factor gives Theta = Omega^dagger Omega with c = 1; the
    // unit-normalized pipeline factor needs c^2 = squared column norms.
    const ComplexMatrix a1 = fixtures::three_level_first(0.5);
    const ComplexMatrix closed = fixtures::three_level_first_factor(0.5);
    const auto from_print = from_factor(a1, closed);
    CHECK(from_print.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(from_print.eigenvalues(1) == doctest::Approx(-1.0));
    CHECK(from_print.eigenvalues(2) == doctest::Approx(1.0));
    const auto theta_print = metric(from_print, ScalingVector::uniform(3));
    CHECK((theta_print.theta - closed * closed.adjoint()).norm() <= 1e-12 * theta_print.theta.norm());

    const auto sd1 = analyze(a1);
    RealVector squared(3);
    // sorted order (-1, 0, 1) maps to closed-form columns (1, 0, 2)
    squared << closed.col(1).squaredNorm(), closed.col(0).squaredNorm(), closed.col(2).squaredNorm();
    const auto theta_pipeline = metric(sd1, ScalingVector(squared));
    CHECK((theta_pipeline.theta - theta_print.theta).norm() <= 1e-12 * theta_print.theta.norm());

    const auto base = metric(sd1, ScalingVector::uniform(3, 1.0));
    const auto four = metric(sd1, ScalingVector::uniform(3, 4.0));
    CHECK(four.theta == ComplexMatrix(4.0 * base.theta));

    CHECK(kind_of([&] { metric(sd1, ScalingVector::uniform(2)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("quasi_hermiticity_residual") {
    ComplexMatrix h(2, 2);
    h << 1.0, Complex(0, 2), Complex(0, -2), -1.0;
    CHECK(quasi_hermiticity_residual(h, ComplexMatrix::Identity(2, 2)) == 0.0);

    const ComplexMatrix a1 = fixtures::three_level_first(0.5);
    const auto sd1 = analyze(a1);
    const auto theta = metric(sd1, ScalingVector::uniform(3)).theta;
    CHECK(quasi_hermiticity_residual(a1, theta) <= 1e-10);
    CHECK(quasi_hermiticity_residual(a1, ComplexMatrix::Identity(3, 3)) > 0.1);

    CHECK(kind_of([&] { quasi_hermiticity_residual(a1, ComplexMatrix::Identity(2, 2)); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("isospectral_image") {
    const auto sd1 = analyze(fixtures::three_level_first(0.5));
    RealVector expected(3);
    expected << -1.0, 0.0, 1.0;
    const ComplexMatrix image = isospectral_image(sd1);
    CHECK((image - ComplexMatrix(expected.cast<Complex>().asDiagonal())).norm() <= 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 5.0;
    d(1, 1) = 7.0;
    CHECK((isospectral_image(analyze(d)) - d).norm() <= 1e-14);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto pair = genpair::generate(4, seed);
        const ComplexMatrix img = isospectral_image(analyze(pair.a1));
        const ComplexMatrix planted = pair.spectrum1.cast<Complex>().asDiagonal();
        CHECK((img - planted).norm() <= 1e-9 * pair.spectrum1.norm());
    }
}

TEST_CASE("metric family properties on random observables") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
        const ComplexMatrix a = genpair::random_observable(n, seed, seed % 2 == 0);
        const auto sd = analyze(a);
        RealVector c(n);
        for (Eigen::Index i = 0; i < n; ++i) c(i) = u(rng);
        const auto candidate = metric(sd, ScalingVector(c));
        CHECK(quasi_hermiticity_residual(a, candidate.theta) <= 1e-9);
        CHECK(hermitian_eigenvalues(candidate.theta)(0) > 0.0);
        CHECK(hermiticity_residual(candidate.theta) <= 1e-10);

        const auto scaled = metric(sd, ScalingVector(RealVector(2.5 * c)));
        CHECK((scaled.theta - 2.5 * candidate.theta).norm() <= 1e-14 * scaled.theta.norm());
    }
}
