#include "spdclat/dispersion.hpp"

#include "spdclat/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace spdclat;

TEST_SUITE("dispersion") {

TEST_CASE("lithium niobate extraordinary index") {
    const auto n = IndexModel::lithium_niobate_ne();
    // golden values, frozen from the Sellmeier coefficients
    CHECK(n(1.55) == doctest::Approx(2.1375596497855565).epsilon(1e-12));
    CHECK(n(1.0) > n(1.55));   // normal dispersion
    CHECK_THROWS_AS(n(0.2), DomainError);
    CHECK_THROWS_AS(n(9.0), DomainError);
}

TEST_CASE("tabulated index interpolation") {
    IndexModel m;
    m.kind = IndexModel::Kind::Tabulated;
    m.table = {{1.0, 2.2}, {2.0, 2.0}};
    m.lambda_min = 1.0;
    m.lambda_max = 2.0;
    CHECK(m(1.5) == doctest::Approx(2.1));
}

TEST_CASE("coupling strength at the design point") {
    const auto model = DispersionModel::lithium_niobate_defaults();
    // C_M = C(lambda_0, d_m); golden value frozen from the LN defaults
    const double C_M = coupling_strength(model, 1.55, 13.0);
    CHECK(C_M == doctest::Approx(0.5477330138906338).epsilon(1e-12));

    SUBCASE("strictly decreasing in d") {
        double prev = coupling_strength(model, 1.55, 13.0);
        for (double d : {14.0, 16.0, 20.0, 30.0}) {
            const double c = coupling_strength(model, 1.55, d);
            CHECK(c < prev);
            prev = c;
        }
    }
    SUBCASE("validity limit") {
        CHECK_THROWS_AS(coupling_strength(model, 1.55, 12.0), DomainError);
    }
}

TEST_CASE("distance profile") {
    const auto model = DispersionModel::lithium_niobate_defaults();
    SUBCASE("unit couplings sit at the minimal distance") {
        const auto d = distance_profile(model, {1.0, 1.0});
        CHECK(d[0] == doctest::Approx(13.0));
        CHECK(d[1] == doctest::Approx(13.0));
    }
    SUBCASE("glauber-fock profile gives strictly decreasing distances") {
        const int N = 6;
        std::vector<double> f(N - 1);
        for (int j = 1; j < N; ++j) f[j - 1] = std::sqrt(double(j) / double(N - 1));
        const auto d = distance_profile(model, f);
        for (int j = 1; j < N - 1; ++j) CHECK(d[j] < d[j - 1]);
        CHECK(d[N - 2] == doctest::Approx(13.0));   // f = 1 at the last bond
    }
    SUBCASE("round trip through the coupling model") {
        const std::vector<double> f = {0.17, 0.42, 0.9, 1.0};
        const auto d = distance_profile(model, f);
        const double C_M = coupling_strength(model, model.lambda_0, model.d_m);
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double fj = coupling_strength(model, model.lambda_0, d[j]) / C_M;
            CHECK(std::abs(fj - f[j]) < 1e-12);
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(distance_profile(model, {0.0}), DomainError);
        CHECK_THROWS_AS(distance_profile(model, {-0.2}), DomainError);
        CHECK_THROWS_AS(distance_profile(model, {1.2}), DomainError);
    }
}

TEST_CASE("distorted profile") {
    const auto model = DispersionModel::lithium_niobate_defaults();
    const std::vector<double> f = {0.1, 0.5, 1.0};
    SUBCASE("design wavelength reproduces the design exactly") {
        const auto got = distorted_profile(model, f, model.lambda_0);
        for (std::size_t j = 0; j < f.size(); ++j) CHECK(got[j] == doctest::Approx(f[j]).epsilon(1e-14));
    }
    SUBCASE("closed form equals the coupling-model composition") {
        const auto d = distance_profile(model, f);
        const double C_M = coupling_strength(model, model.lambda_0, model.d_m);
        for (double lambda : {1.50, 1.52, 1.55, 1.58, 1.60}) {
            const auto closed = distorted_profile(model, f, lambda);
            for (std::size_t j = 0; j < f.size(); ++j) {
                const double composed = coupling_strength(model, lambda, d[j]) / C_M;
                CHECK(std::abs(closed[j] - composed) < 1e-12);
            }
        }
    }
    SUBCASE("deviation grows away from the design wavelength") {
        double prev = 0.0;
        for (int nm = 1; nm <= 50; ++nm) {
            const double lambda = 1.55 + nm * 1e-3;
            const double dev = std::abs(distorted_profile(model, {1.0}, lambda)[0] - 1.0);
            CHECK(dev > prev);
            prev = dev;
        }
    }
    SUBCASE("deviation grows as the design coupling weakens") {
        const double lambda = 1.58;
        double prev = 0.0;
        for (double fd : {1.0, 0.5, 0.1}) {
            const double dev = std::abs(distorted_profile(model, {fd}, lambda)[0] / fd - 1.0);
            CHECK(dev > prev);
            prev = dev;
        }
    }
}

TEST_CASE("model validation") {
    DispersionModel m = DispersionModel::lithium_niobate_defaults();
    m.d_m = 10.0;   // below the validity minimum
    CHECK_THROWS_AS(m.validate(), ConfigError);
}

} // TEST_SUITE
