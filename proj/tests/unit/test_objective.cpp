#include "instances.hpp"
#include "oracles.hpp"

#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"
#include "pcm/selection.hpp"

#include <doctest.h>

using namespace pcm;

TEST_CASE("social cost against the first-principles expansion") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 50; ++k) {
        const auto inst = fixture::random_instance(rng, 1 + k % 7);
        const auto h = hour_data(inst, Hour(1));
        const IncentivePair p{fixture::uniform(rng, 5, 40), fixture::uniform(rng, 5, 40)};
        for (int n = 0; n <= h.count(); ++n) {
            const double x = equilibrium_total(h, n, p);
            for (auto side : {BalancingSide::up, BalancingSide::down}) {
                const double ref = oracle::social_cost(h, x, h.balancing_price(side));
                CHECK(social_cost(h, n, p, side) == doctest::Approx(ref).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("the cell quadratic reproduces the expected cost inside the cell") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 20; ++k) {
        const auto inst = fixture::random_instance(rng, 1 + k % 6);
        const auto h = hour_data(inst, Hour(1));
        const auto q = weights(SelectionModel(inst.selection_probabilities()));
        const auto part = build_partition(h);
        const double centre = part.rhs / h.count();
        for (int j = 0; j < 200; ++j) {
            const IncentivePair p{fixture::uniform(rng, centre - 20, centre + 20),
                                  fixture::uniform(rng, centre - 20, centre + 20)};
            const auto& cell = classify(part, p);
            const double direct = expected_social_cost(h, part, p, q);
            CHECK(expected_cost_quadratic(h, cell, q)(p) == doctest::Approx(direct).epsilon(1e-10));
            double ref = 0.0;
            for (int n = 0; n <= h.count(); ++n) {
                const double x = oracle::equilibrium_total(h, n, p);
                ref += q[static_cast<std::size_t>(n)] *
                       oracle::social_cost(h, x, h.balancing_price(oracle::side_of(x)));
            }
            CHECK(direct == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("affine totals and extremes") {
    const auto inst = fixture::reference_instance();
    const auto h = hour_data(inst, Hour(2));
    const IncentivePair p{22.0, 13.0};
    for (int n = 0; n <= 4; ++n)
        CHECK(total_affine(h, n)(p) == doctest::Approx(equilibrium_total(h, n, p)));
    const auto [x0, xN] = extreme_totals(h, p);
    CHECK(x0 > xN);  // wp price above ls: more WP members buy less
    const auto c = hour_coefficients(h);
    CHECK(c.phi_up - c.phi_down == doctest::Approx(h.up_price - h.down_price));
    CHECK_THROWS_AS(expected_social_cost(h, build_partition(h), p, std::vector<double>{1.0}), InputError);
}
