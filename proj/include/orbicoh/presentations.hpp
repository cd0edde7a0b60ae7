/// @file presentations.hpp
/// The two built-in orbifold presentation families:
///   - odd spheres modulo finite abelian groups acting by diagonal unitary
///     rotations, and
///   - weighted projective spaces crossed with a circle.

#ifndef ORBICOH_PRESENTATIONS_HPP
#define ORBICOH_PRESENTATIONS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "orbicoh/sectors.hpp"

namespace orbicoh {

// S^{2n+1} / G presentation: `weights[i][j]` is the integer rotation weight
// of the i-th cyclic generator on the j-th of n+1 complex coordinates.
struct SphereQuotientPresentation {
    std::int64_t complex_coords = 1; // n + 1
    GroupSpec group;
    std::vector<std::vector<std::int64_t>> weights; // one row per cyclic factor
};

// P(w_0, ..., w_n) x S^1 presentation.
struct WpsCirclePresentation {
    std::vector<std::int64_t> weights;
};

namespace detail {

// Fractional rotation angles of g on each coordinate.
inline std::vector<Rational> rotation_angles(const SphereQuotientPresentation& p,
                                             const GroupElement& g) {
    std::vector<Rational> out(static_cast<std::size_t>(p.complex_coords), Rational(0));
    for (std::size_t j = 0; j < out.size(); ++j) {
        Rational angle(0);
        for (std::size_t i = 0; i < p.group.rank(); ++i)
            angle += Rational(g[i] * p.weights[i][j], p.group.cyclic_orders[i]);
        out[j] = frac(angle);
    }
    return out;
}

inline ModelSpace sphere_model(std::int64_t fixed_coords) {
    return make_odd_sphere(2 * fixed_coords - 1);
}

} // namespace detail

// Builds the full sector atlas of S^{2n+1}/G. Integration weights follow
// the global chart: every sector and multisector integrates with 1/|G|.
inline SectorAtlas sphere_quotient_atlas(const SphereQuotientPresentation& p) {
    p.group.validate();
    if (p.complex_coords < 1)
        throw validation_error("sphere quotient: need at least one complex coordinate");
    if (p.weights.size() != p.group.rank())
        throw validation_error("sphere quotient: one weight row per cyclic factor required");
    SphereQuotientPresentation norm = p;
    for (std::size_t i = 0; i < norm.weights.size(); ++i) {
        if (norm.weights[i].size() != static_cast<std::size_t>(p.complex_coords))
            throw validation_error("sphere quotient: weight row length must equal coordinate count");
        for (auto& w : norm.weights[i]) {
            w %= p.group.cyclic_orders[i];
            if (w < 0) w += p.group.cyclic_orders[i];
        }
    }

    SectorAtlas atlas;
    atlas.kind = "sphere_quotient";
    atlas.ambient_dim = 2 * p.complex_coords - 1;
    atlas.group = p.group;
    const Rational chart_weight(1, p.group.order());

    const auto elements = enumerate_elements(p.group);
    for (const auto& g : elements) {
        const auto angles = detail::rotation_angles(norm, g);
        std::int64_t fixed = 0;
        Rational iota(0);
        for (const auto& a : angles) {
            if (a.is_zero()) ++fixed;
            iota += a;
        }
        if (fixed == 0) {
            if (is_identity(g)) throw validation_error("sphere quotient: identity fixes nothing?");
            continue; // free element, no sector
        }
        if (!is_identity(g) && fixed == p.complex_coords)
            throw validation_error(
                "sphere quotient: the action is not effective (a nontrivial element acts trivially)");
        Sector s;
        s.label = g;
        s.model = detail::sphere_model(fixed);
        s.dim = 2 * fixed - 1;
        s.iota = iota;
        s.weight = chart_weight;
        s.rotations = angles;
        atlas.sectors.push_back(std::move(s));
    }

    for (const auto& t : enumerate_triples(p.group)) {
        const auto a1 = detail::rotation_angles(norm, t.g1);
        const auto a2 = detail::rotation_angles(norm, t.g2);
        const auto a3 = detail::rotation_angles(norm, t.g3);
        std::int64_t common = 0;
        for (std::int64_t j = 0; j < p.complex_coords; ++j)
            if (a1[j].is_zero() && a2[j].is_zero() && a3[j].is_zero()) ++common;
        if (common == 0) continue;
        MultiSector ms;
        ms.labels = {SectorLabel(t.g1), SectorLabel(t.g2), SectorLabel(t.g3)};
        ms.model = detail::sphere_model(common);
        ms.dim = 2 * common - 1;
        ms.weight = chart_weight;
        atlas.multisectors.push_back(std::move(ms));
    }

    atlas = annotate_multisectors(atlas);
    validate_atlas(atlas);
    return atlas;
}

namespace detail {

inline std::vector<std::int64_t> wps_surviving(const std::vector<std::int64_t>& weights,
                                               const Rational& f) {
    std::vector<std::int64_t> out;
    for (auto w : weights)
        if ((f * Rational(w)).is_integer()) out.push_back(w);
    return out;
}

inline ModelSpace wps_sector_model(const std::vector<std::int64_t>& surviving) {
    return make_product({make_weighted_proj(surviving), make_circle()});
}

inline Rational wps_iota(const std::vector<std::int64_t>& weights, const Rational& f) {
    Rational iota(0);
    for (auto w : weights) iota += frac(f * Rational(w));
    return iota;
}

} // namespace detail

// Builds the sector atlas of P(w_0,...,w_n) x S^1. Sector labels are the
// rotation numbers f in Q/Z with nonempty fixed locus; each sector's weight
// is one over the generic isotropy order of its locus.
inline SectorAtlas wps_circle_atlas(const WpsCirclePresentation& p) {
    if (p.weights.empty()) throw validation_error("wps_circle: needs at least one weight");
    for (auto w : p.weights)
        if (w < 1) throw validation_error("wps_circle: weights must be >= 1");
    std::int64_t overall = 0;
    for (auto w : p.weights) overall = std::gcd(overall, w);
    if (overall != 1)
        throw validation_error("wps_circle: the presentation is not effective "
                               "(all weights share the factor " +
                               std::to_string(overall) + ")");

    std::vector<std::int64_t> weights = p.weights;
    std::sort(weights.begin(), weights.end());

    std::set<Rational> label_set;
    for (auto w : weights)
        for (std::int64_t l = 0; l < w; ++l) label_set.insert(Rational(l, w));

    SectorAtlas atlas;
    atlas.kind = "wps_circle";
    atlas.ambient_dim = 2 * (static_cast<std::int64_t>(weights.size()) - 1) + 1;

    for (const auto& f : label_set) {
        const auto surviving = detail::wps_surviving(weights, f);
        if (surviving.empty()) continue; // cannot happen for f in the label set
        std::int64_t iso = 0;
        for (auto w : surviving) iso = std::gcd(iso, w);
        Sector s;
        s.label = f;
        s.model = detail::wps_sector_model(surviving);
        s.dim = model_dim(s.model);
        s.iota = detail::wps_iota(weights, f);
        s.weight = Rational(1, iso);
        atlas.sectors.push_back(std::move(s));
    }

    for (const auto& f1 : label_set)
        for (const auto& f2 : label_set) {
            const Rational f3 = frac(-(f1 + f2));
            auto surviving = detail::wps_surviving(weights, f1);
            {
                std::vector<std::int64_t> next;
                for (auto w : surviving)
                    if ((f2 * Rational(w)).is_integer() && (f3 * Rational(w)).is_integer())
                        next.push_back(w);
                surviving = std::move(next);
            }
            if (surviving.empty()) continue;
            std::int64_t iso = 0;
            for (auto w : surviving) iso = std::gcd(iso, w);
            MultiSector ms;
            ms.labels = {SectorLabel(f1), SectorLabel(f2), SectorLabel(f3)};
            ms.model = detail::wps_sector_model(surviving);
            ms.dim = model_dim(ms.model);
            ms.weight = Rational(1, iso);
            atlas.multisectors.push_back(std::move(ms));
        }

    atlas = annotate_multisectors(atlas);
    validate_atlas(atlas);
    return atlas;
}

} // namespace orbicoh

#endif
