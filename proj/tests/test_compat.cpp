#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qhcompat/compat.hpp"
#include "qhcompat/error.hpp"
#include "qhcompat/fixtures.hpp"
#include "qhcompat/genpair.hpp"
#include "qhcompat/oracle.hpp"
#include "test_support.hpp"

using namespace qhcompat;
using namespace qhcompat::compat;

namespace {

ComplexMatrix hadamard() {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0, 1.0, -1.0;
    return m / std::sqrt(2.0);
}

MixerMatrix wrap(const ComplexMatrix& m) { return MixerMatrix{m, condition_number(m)}; }

// Direct evaluation of the strict upper triangle of M^dagger diag(x) M.
RealVector direct_offdiagonal(const ComplexMatrix& m, const RealVector& x) {
    const ComplexMatrix g = m.adjoint() * x.cast<Complex>().asDiagonal() * m;
    const Eigen::Index n = m.rows();
    RealVector out(n * (n - 1));
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            out(row++) = g(i, j).real();
            out(row++) = g(i, j).imag();
        }
    }
    return out;
}

} // namespace

TEST_CASE("mixer") {
    const auto sd = dyson::analyze(fixtures::three_level_first(0.5));
    CHECK((mixer(sd, sd).m - ComplexMatrix::Identity(3, 3)).norm() <= 1e-12);

    const auto first = dyson::from_factor(fixtures::three_level_first(0.5),
                                          fixtures::three_level_first_factor(0.5));
    const auto second = dyson::from_factor(fixtures::three_level_second(0.5),
                                           fixtures::three_level_second_factor_half());
    const MixerMatrix m = mixer(first, second);
    CHECK((m.m * second.omega() - first.omega()).norm() <= 1e-10 * first.omega().norm());

    const auto doubled = dyson::from_factor(sd.source, 2.0 * sd.omega_dagger);
    CHECK((mixer(doubled, sd).m - 2.0 * ComplexMatrix::Identity(3, 3)).norm() <= 1e-12);

    const auto small = dyson::analyze(hadamard());
    try {
        mixer(sd, small);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("assemble_constraints") {
    CHECK(assemble_constraints(wrap(ComplexMatrix::Identity(3, 3))).c_real.isZero());

    ComplexVector phases(3);
    phases << std::polar(1.0, 0.3), std::polar(1.0, -1.1), std::polar(1.0, 2.0);
    CHECK(assemble_constraints(wrap(phases.asDiagonal())).c_real.isZero());

    const ConstraintSystem h = assemble_constraints(wrap(hadamard()));
    REQUIRE(h.c_real.rows() == 2);
    CHECK(h.c_real(0, 0) == doctest::Approx(0.5));
    CHECK(h.c_real(0, 1) == doctest::Approx(-0.5));
    CHECK(h.c_real.row(1).isZero());
    CHECK(h.labels[0].part == ConstraintLabel::Part::Re);
    CHECK(h.labels[1].part == ConstraintLabel::Part::Im);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 2 + trial % 6;
        const ComplexMatrix m = testing::random_complex(n, rng);
        const ConstraintSystem cs = assemble_constraints(wrap(m));
        CHECK(cs.c_real.rows() == n * (n - 1));
        CHECK(static_cast<Eigen::Index>(cs.labels.size()) == n * (n - 1));
        RealVector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = u(rng);
        CHECK((cs.c_real * x - direct_offdiagonal(m, x)).norm() <= 1e-12 * m.squaredNorm());
    }
}

TEST_CASE("solve_positive") {
    const PositiveSolve identity = solve_positive(assemble_constraints(wrap(ComplexMatrix::Identity(3, 3))));
    REQUIRE(identity.x);
    CHECK(identity.nullspace_dim == 3);
    CHECK((identity.x->values() - RealVector::Ones(3)).norm() <= 1e-12);
    CHECK(*identity.margin == doctest::Approx(1.0));

    const PositiveSolve h = solve_positive(assemble_constraints(wrap(hadamard())));
    REQUIRE(h.x);
    CHECK((h.x->values() - RealVector::Ones(2)).norm() <= 1e-12);

    const auto first = dyson::analyze(fixtures::three_level_first(0.5));
    const auto second = dyson::analyze(fixtures::three_level_second(0.5));
    const PositiveSolve fixture = solve_positive(assemble_constraints(mixer(first, second)));
    CHECK_FALSE(fixture.x);
    CHECK(fixture.nullspace_dim == 0);
    CHECK_FALSE(fixture.margin);
}

TEST_CASE("second_scaling") {
    const ScalingVector x(RealVector::LinSpaced(3, 1.0, 3.0));
    CHECK(second_scaling(wrap(ComplexMatrix::Identity(3, 3)), x).values() == x.values());
    CHECK(second_scaling(wrap(2.0 * ComplexMatrix::Identity(2, 2)), ScalingVector::uniform(2)).values() ==
          RealVector::Constant(2, 4.0));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto pair = genpair::generate(4, seed);
        const auto v = decide(pair.a1, pair.a2);
        REQUIRE(v.witness);
        const ComplexMatrix& m = v.mixers.front().m;
        const ComplexMatrix g = m.adjoint() * v.witness->x.values().cast<Complex>().asDiagonal() * m;
        const RealVector diag = g.diagonal().real();
        CHECK((v.witness->y.front().values() - diag).norm() <= 1e-12 * diag.norm());
    }
}

TEST_CASE("decide: identical observables, the three-level pair, generated pairs") {
    const ComplexMatrix a = genpair::random_observable(3, 5);
    const auto same = decide(a, a);
    CHECK(same.status == Status::Compatible);
    REQUIRE(same.witness);
    const auto sd = dyson::analyze(a);
    const auto family = dyson::metric(sd, same.witness->x);
    CHECK((family.theta - same.witness->theta).norm() <= 1e-12 * family.theta.norm());

    const auto fixture = decide(fixtures::three_level_first(0.5), fixtures::three_level_second(0.5));
    CHECK(fixture.status == Status::Incompatible);
    CHECK_FALSE(fixture.witness);
    CHECK(fixture.certificate.nullspace_dim == 0);

    for (Eigen::Index n = 2; n <= 6; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto pair = genpair::generate(n, 1000 * static_cast<std::uint64_t>(n) + seed);
            const auto v = decide(pair.a1, pair.a2);
            REQUIRE(v.status == Status::Compatible);
            const auto& w = *v.witness;
            CHECK(w.unitarity_residual <= 1e-8);
            CHECK(w.metric_mismatch <= 1e-8);
            CHECK(w.theta_min_eigenvalue > 0.0);
            if (v.certificate.nullspace_dim == 1) {
                const ComplexMatrix lhs = w.theta / w.theta.norm();
                const ComplexMatrix rhs = pair.theta / pair.theta.norm();
                CHECK((lhs - rhs).norm() <= 1e-6);
            }
        }
    }
}

TEST_CASE("decide properties: symmetry, scale invariance, unitary certificate") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
        ComplexMatrix a1, a2;
        if (seed % 2 == 0) {
            const auto pair = genpair::generate(n, seed);
            a1 = pair.a1;
            a2 = pair.a2;
        } else {
            a1 = genpair::random_observable(n, 2 * seed, seed % 4 == 1);
            a2 = genpair::random_observable(n, 2 * seed + 1, seed % 4 == 1);
        }
        const auto forward = decide(a1, a2);
        const auto backward = decide(a2, a1);
        CHECK(forward.status == backward.status);
        CHECK(decide(3.7 * a1, a2).status == forward.status);
        CHECK(forward.certificate.constraint_rows == n * (n - 1));

        if (forward.status == Status::Compatible) {
            const auto& w = *forward.witness;
            const ComplexMatrix u = scaled_mixer(forward.mixers.front(), w.x, w.y.front());
            CHECK(is_unitary(u, 1e-8).unitary);
            for (double r : w.quasi_hermiticity) CHECK(r <= 1e-8);
        }
    }
}

TEST_CASE("decide_multi") {
    const auto pair = genpair::generate(3, 77);
    const ComplexMatrix two[] = {pair.a1, pair.a2};
    CHECK(decide_multi(two).status == decide(pair.a1, pair.a2).status);

    const ComplexMatrix three[] = {pair.a1, pair.a2, pair.a2};
    const auto dup = decide_multi(three);
    CHECK(dup.status == Status::Compatible);
    CHECK(dup.certificate.constraint_rows == 3 * 2 * 2);

    const ComplexMatrix fixture[] = {fixtures::three_level_first(0.5), fixtures::three_level_second(0.5),
                                     fixtures::three_level_second(0.5)};
    CHECK(decide_multi(fixture).status == Status::Incompatible);

    const auto family = genpair::generate_family(4, 3, 9);
    const auto shared = decide_multi(family.observables);
    REQUIRE(shared.status == Status::Compatible);
    CHECK(shared.certificate.constraint_rows == 4 * 3 * 2);
    for (double r : shared.witness->quasi_hermiticity) CHECK(r <= 1e-8);

    const ComplexMatrix lonely[] = {pair.a1};
    CHECK_THROWS_AS(decide_multi(lonely), Error);
}

TEST_CASE("decide_multi: pairwise compatible but jointly incompatible triple") {
    std::mt19937_64 rng(2024);
    bool found = false;
    for (int attempt = 0; attempt < 20 && !found; ++attempt) {
        const ComplexMatrix ta = testing::random_positive_definite(3, rng);
        const ComplexMatrix tb = testing::random_positive_definite(3, rng);
        const ComplexMatrix tc = testing::random_positive_definite(3, rng);
        const ComplexMatrix a1 = testing::observable_from_factor(testing::congruence_factor(ta, tb),
                                                                 testing::spread_spectrum(3, rng));
        const ComplexMatrix a2 = testing::observable_from_factor(testing::congruence_factor(ta, tc),
                                                                 testing::spread_spectrum(3, rng));
        const ComplexMatrix a3 = testing::observable_from_factor(testing::congruence_factor(tb, tc),
                                                                 testing::spread_spectrum(3, rng));
        const bool pairwise = decide(a1, a2).status == Status::Compatible &&
                              decide(a1, a3).status == Status::Compatible &&
                              decide(a2, a3).status == Status::Compatible;
        if (!pairwise) continue;
        const ComplexMatrix triple[] = {a1, a2, a3};
        const auto v = decide_multi(triple);
        if (v.status != Status::Incompatible) continue;
        found = true;
        CHECK_FALSE(oracle::decide_bruteforce(triple).compatible);
        const ComplexMatrix p12[] = {a1, a2};
        CHECK(oracle::decide_bruteforce(p12).compatible);
    }
    CHECK(found);
}

TEST_CASE("complex_scaling_space") {
    CHECK(complex_scaling_space(wrap(ComplexMatrix::Identity(3, 3))).x_basis.cols() == 3);

    const auto h = complex_scaling_space(wrap(hadamard()));
    REQUIRE(h.x_basis.cols() == 1);
    CHECK(std::abs(h.x_basis(0, 0) - h.x_basis(1, 0)) <= 1e-12);

    const auto first = dyson::analyze(fixtures::three_level_first(0.5));
    const auto second = dyson::analyze(fixtures::three_level_second(0.5));
    const auto line = complex_scaling_space(mixer(first, second));
    CHECK(line.x_basis.cols() == 1);
    CHECK(line.y_basis.cols() == 1);
}
