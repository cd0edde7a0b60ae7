// Shared helpers for the test suite: deterministic random presentation
// generators and tiny conveniences.

#ifndef ORBICOH_TESTS_SUPPORT_HPP
#define ORBICOH_TESTS_SUPPORT_HPP

#include <numeric>
#include <random>
#include <vector>

#include "orbicoh/orbicoh.hpp"

namespace orbicoh::testing {

// Random abelian sphere-quotient presentation with |G| <= 12 and at most
// four complex coordinates. Retries until the action is effective.
inline SphereQuotientPresentation random_sphere_presentation(std::mt19937& rng) {
    for (;;) {
        std::uniform_int_distribution<int> rank_pick(1, 2);
        std::vector<std::int64_t> orders;
        std::int64_t order_product = 1;
        const int rank = rank_pick(rng);
        for (int i = 0; i < rank; ++i) {
            std::uniform_int_distribution<std::int64_t> order_pick(1, 12 / order_product);
            const std::int64_t n = order_pick(rng);
            orders.push_back(n);
            order_product *= n;
        }
        std::uniform_int_distribution<int> coords_pick(1, 4);
        const int coords = coords_pick(rng);
        SphereQuotientPresentation p;
        p.complex_coords = coords;
        p.group = GroupSpec{orders};
        for (std::int64_t n : orders) {
            std::vector<std::int64_t> row;
            std::uniform_int_distribution<std::int64_t> weight_pick(0, n - 1);
            for (int j = 0; j < coords; ++j) row.push_back(weight_pick(rng));
            p.weights.push_back(row);
        }
        try {
            sphere_quotient_atlas(p);
            return p;
        } catch (const validation_error&) {
            // non-effective draw, try again
        }
    }
}

// Random weighted-projective circle presentation, gcd of weights 1.
inline WpsCirclePresentation random_wps_presentation(std::mt19937& rng) {
    for (;;) {
        std::uniform_int_distribution<int> len_pick(2, 6);
        std::uniform_int_distribution<std::int64_t> weight_pick(1, 9);
        std::vector<std::int64_t> ws;
        const int len = len_pick(rng);
        for (int i = 0; i < len; ++i) ws.push_back(weight_pick(rng));
        std::int64_t g = 0;
        for (auto w : ws) g = std::gcd(g, w);
        if (g == 1) return WpsCirclePresentation{ws};
    }
}

} // namespace orbicoh::testing

#endif
