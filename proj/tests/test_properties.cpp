#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "orbicoh/orbicoh.hpp"
#include "support.hpp"

using namespace orbicoh;

namespace {
constexpr unsigned kSeed = 20260817;
}

TEST_CASE("random sphere quotients satisfy the structural invariants") {
    std::mt19937 rng(kSeed);
    int checked = 0;
    for (int trial = 0; trial < 220; ++trial) {
        const SphereQuotientPresentation p = testing::random_sphere_presentation(rng);
        const SectorAtlas atlas = sphere_quotient_atlas(p);
        const LabelAlgebra algebra = atlas.labels();
        INFO("trial " << trial << ", sectors " << atlas.sectors.size() << ", multisectors "
                      << atlas.multisectors.size());

        for (const MultiSector& ms : atlas.multisectors) {
            CHECK(ms.rank_e >= 0);
            CHECK(ms.rank_e % 2 == 0);
            CHECK(ms.genus >= 0);
        }
        for (const Sector& s : atlas.sectors) {
            // inverse-pair degree shifts absorb the codimension
            const Sector& inv = atlas.sector(algebra.inverse(s.label));
            CHECK(Rational(2) * (s.iota + inv.iota) == Rational(atlas.ambient_dim - s.dim));
            CHECK(iota_integrality_consistent(s, algebra));
        }
        CHECK(duality_report(atlas).pass);
        ++checked;
    }
    CHECK(checked == 220);
}

TEST_CASE("cylinder comparison passes on random and shipped atlases") {
    std::mt19937 rng(kSeed + 1);
    int passes = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const SectorAtlas atlas = sphere_quotient_atlas(testing::random_sphere_presentation(rng));
        INFO("sphere trial " << trial);
        const CrossRReport r = cross_r_compare(atlas);
        CHECK(r.pass);
        passes += r.pass ? 1 : 0;
    }
    for (int trial = 0; trial < 60; ++trial) {
        const SectorAtlas atlas = wps_circle_atlas(testing::random_wps_presentation(rng));
        INFO("wps trial " << trial);
        const CrossRReport r = cross_r_compare(atlas);
        CHECK(r.pass);
        passes += r.pass ? 1 : 0;
    }
    CHECK(passes == 120);

    SphereQuotientPresentation z3;
    z3.complex_coords = 2;
    z3.group = GroupSpec{{3}};
    z3.weights = {{1, 0}};
    CHECK(cross_r_compare(sphere_quotient_atlas(z3)).pass);
    CHECK(cross_r_compare(wps_circle_atlas(WpsCirclePresentation{{1, 2, 2, 3, 3, 3}})).pass);
}

TEST_CASE("random weighted projective atlases satisfy duality") {
    std::mt19937 rng(kSeed + 2);
    for (int trial = 0; trial < 40; ++trial) {
        const SectorAtlas atlas = wps_circle_atlas(testing::random_wps_presentation(rng));
        INFO("trial " << trial);
        CHECK(duality_report(atlas).pass);
        const auto coh = assemble(atlas);
        CHECK(symmetric_about(coh.total, Rational(atlas.ambient_dim)));
    }
}

TEST_CASE("random ring tables are unital, graded and associative") {
    std::mt19937 rng(kSeed + 3);
    for (int trial = 0; trial < 25; ++trial) {
        const SectorAtlas atlas = sphere_quotient_atlas(testing::random_sphere_presentation(rng));
        INFO("trial " << trial << ", |G| = " << atlas.multisectors.size());
        const RingSystem sys(atlas);
        const StructureConstants sc = sys.structure_constants();
        const int n = static_cast<int>(sc.basis.size());

        // basis element 0 is the untwisted unit
        CHECK(sc.basis[0].degree == Rational(0));
        for (int j = 0; j < n; ++j) {
            const auto it = sc.table.find({0, j});
            REQUIRE(it != sc.table.end());
            CHECK(it->second == std::map<int, Rational>{{j, Rational(1)}});
        }
        // orbifold degrees add across every resolved nonzero product
        for (const auto& [pair, expansion] : sc.table)
            for (const auto& [k, coeff] : expansion) {
                CHECK(!coeff.is_zero());
                CHECK(sc.basis[static_cast<std::size_t>(k)].degree ==
                      sc.basis[static_cast<std::size_t>(pair.first)].degree +
                          sc.basis[static_cast<std::size_t>(pair.second)].degree);
            }
        const AssociativityReport assoc = associativity_check(sc);
        INFO(assoc.detail);
        CHECK(assoc.pass);
    }
}
