#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qnd/errors.hpp"
#include "qnd/fock.hpp"

using namespace qnd;

TEST_CASE("number state is a basis vector") {
    const auto vac = make_number_state(0, 4);
    CHECK(vac.amplitude(0) == complex_t{1.0, 0.0});
    for (int n = 1; n <= 4; ++n) CHECK(vac.amplitude(n) == complex_t{0.0, 0.0});

    const auto three = make_number_state(3, 5);
    CHECK(three.amplitude(3) == complex_t{1.0, 0.0});
    CHECK(three.amplitude(4) == complex_t{0.0, 0.0});

    const auto m = number_moments(make_number_state(7, 10));
    CHECK(m.mean == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(m.variance == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("number state outside the basis is rejected") {
    CHECK_THROWS_AS(make_number_state(5, 4), std::domain_error);
    CHECK_THROWS_AS(make_number_state(-1, 4), std::domain_error);
}

TEST_CASE("coherent state amplitudes") {
    SUBCASE("xi = 0 is the vacuum") {
        const auto vac = make_coherent_state({complex_t{0.0, 0.0}}, 10);
        CHECK(std::abs(vac.amplitude(0)) == doctest::Approx(1.0).epsilon(1e-15));
        for (int n = 1; n <= 10; ++n) CHECK(std::abs(vac.amplitude(n)) == 0.0);
    }
    SUBCASE("mean and variance equal |xi|^2") {
        const auto psi = make_coherent_state({complex_t{2.0, 0.0}}, 40);
        const auto m = number_moments(psi);
        CHECK(m.mean == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(m.variance == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("closed-form ground amplitude at xi = 1") {
        const auto psi = make_coherent_state({complex_t{1.0, 0.0}}, 30);
        CHECK(std::abs(psi.amplitude(0)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    }
}

TEST_CASE("coherent truncation policy") {
    CHECK_THROWS_AS(make_coherent_state({complex_t{4.0, 0.0}}, 8), truncation_error);
    try {
        make_coherent_state({complex_t{4.0, 0.0}}, 8);
    } catch (const truncation_error& e) {
        CHECK(e.required_n_max() == coherent_n_max(16.0));
    }
    // Policy n_max keeps the tail below 1e-12 up to |xi|^2 = 200.
    for (double mean : {1.0, 25.0, 100.0, 200.0}) {
        const double xi = std::sqrt(mean);
        CHECK_NOTHROW(make_coherent_state({complex_t{xi, 0.0}}, coherent_n_max(mean)));
    }
}

TEST_CASE("moments track |xi|^2 across the policy range") {
    for (double mean : {0.25, 4.0, 49.0, 100.0}) {
        const double xi = std::sqrt(mean);
        const auto psi = make_coherent_state({complex_t{xi, 0.0}}, coherent_n_max(mean));
        const auto m = number_moments(psi);
        CHECK(m.mean == doctest::Approx(mean).epsilon(1e-9));
        CHECK(m.variance == doctest::Approx(mean).epsilon(1e-9));
    }
}

TEST_CASE("two-term superposition moments") {
    std::vector<complex_t> a(3, complex_t{0.0, 0.0});
    a[0] = a[2] = complex_t{1.0, 0.0};
    const auto m = number_moments(PhotonPureState(std::move(a)));
    CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.variance == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("constructors normalize") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = oracles::random_state(17, rng);
        for (auto& z : a) z *= 3.7;  // deliberately unnormalized input
        const PhotonPureState psi(std::move(a));
        double n2 = 0.0;
        for (const auto& z : psi.amplitudes()) n2 += std::norm(z);
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(PhotonPureState(std::vector<complex_t>(4, complex_t{0.0, 0.0})),
                    std::invalid_argument);
}

TEST_CASE("fidelity") {
    const auto three = make_number_state(3, 6);
    const auto four = make_number_state(4, 6);
    CHECK(fidelity(three, three) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(three, four) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity(three, make_number_state(0, 3)), std::domain_error);

    SUBCASE("coherent overlap follows the Gaussian law") {
        const complex_t xi{1.5, 0.5}, eta{0.8, -0.3};
        const auto a = make_coherent_state({xi}, 60);
        const auto b = make_coherent_state({eta}, 60);
        const double expected = std::exp(-std::norm(xi - eta));
        CHECK(fidelity(a, b) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(fidelity(b, a) == doctest::Approx(fidelity(a, b)).epsilon(1e-12));
    }
    SUBCASE("global phase is unobservable") {
        std::mt19937_64 rng(7);
        const auto a = oracles::random_state(12, rng);
        auto b = a;
        for (auto& z : b) z *= std::polar(1.0, 1.234);
        CHECK(fidelity(PhotonPureState(a), PhotonPureState(b)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("pure against mixed") {
        const auto psi = make_coherent_state({complex_t{1.0, 0.0}}, 30);
        const auto rho = PhotonDensityMatrix::from_pure(psi);
        CHECK(fidelity(psi, rho) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fidelity(make_number_state(0, 30), rho) ==
              doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    }
}

TEST_CASE("density matrix validation") {
    const auto rho = PhotonDensityMatrix::from_pure(make_coherent_state({complex_t{1.2, 0.4}}, 30));
    CHECK_NOTHROW(rho.validate());
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));

    PhotonDensityMatrix bad(2);
    bad.at(0, 0) = complex_t{0.5, 0.0};
    bad.at(1, 1) = complex_t{0.5, 0.0};
    bad.at(0, 1) = complex_t{0.3, 0.0};
    bad.at(1, 0) = complex_t{0.1, 0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
