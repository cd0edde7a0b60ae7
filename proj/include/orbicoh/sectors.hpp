/// @file sectors.hpp
/// Sector-level invariants: degree shifting numbers, branched-cover genus,
/// obstruction bundle ranks, multisector annotation, atlas validation.

#ifndef ORBICOH_SECTORS_HPP
#define ORBICOH_SECTORS_HPP

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "orbicoh/atlas.hpp"

namespace orbicoh {

// iota = sum_i m_i / m for diagonal rotation exponents 0 <= m_i < m.
inline Rational degree_shift(const std::vector<std::int64_t>& exponents, std::int64_t order) {
    if (order < 1) throw validation_error("degree_shift: order must be >= 1");
    Rational iota(0);
    for (auto m : exponents) {
        if (m < 0 || m >= order)
            throw validation_error("degree_shift: exponent " + std::to_string(m) +
                                   " out of range [0, " + std::to_string(order) + ")");
        iota += Rational(m, order);
    }
    return iota;
}

// Genus of the branched cover attached to a multisector:
//   g = (2 + |K| - sum_i |K| / k_i) / 2.
inline Rational genus(std::int64_t k_order, const std::array<std::int64_t, 3>& branch_orders) {
    if (k_order < 1) throw validation_error("genus: group order must be >= 1");
    Rational g = Rational(2) + Rational(k_order);
    for (auto k : branch_orders) {
        if (k < 1 || k_order % k != 0)
            throw validation_error("genus: branch order " + std::to_string(k) +
                                   " does not divide group order " + std::to_string(k_order));
        g -= Rational(k_order / k);
    }
    return g / Rational(2);
}

// Real rank of the obstruction bundle over a multisector:
//   rank = dim(multisector) - dim(ambient) + 2 * sum_j iota_j.
inline std::int64_t obstruction_rank(std::int64_t multisector_dim, std::int64_t ambient_dim,
                                     const std::array<Rational, 3>& iotas) {
    Rational r = Rational(multisector_dim) - Rational(ambient_dim);
    for (const auto& i : iotas) r += Rational(2) * i;
    if (!r.is_integer())
        throw validation_error("obstruction rank is not an integer: inconsistent atlas data");
    return static_cast<std::int64_t>(r.num());
}

namespace detail {

// Rotation exponents of a sphere-quotient sector over the common
// denominator m = order(label). Available only when rotation data is present.
inline std::vector<std::int64_t> rotation_exponents(const Sector& s, std::int64_t order) {
    std::vector<std::int64_t> out;
    out.reserve(s.rotations.size());
    for (const auto& r : s.rotations) {
        const Rational scaled = r * Rational(order);
        if (!scaled.is_integer())
            throw validation_error("sector rotation data inconsistent with label order");
        out.push_back(static_cast<std::int64_t>(scaled.num()));
    }
    return out;
}

} // namespace detail

// Property check: iota(g) is an integer exactly when the rotation exponents
// sum to a multiple of the label's order. Only meaningful for sectors that
// carry rotation data; returns true (vacuously) otherwise.
inline bool iota_integrality_consistent(const Sector& s, const LabelAlgebra& algebra) {
    if (s.rotations.empty()) return true;
    const auto order = algebra.order(s.label);
    const auto exps = detail::rotation_exponents(s, order);
    std::int64_t sum = 0;
    for (auto e : exps) sum += e;
    const bool divides = (sum % order) == 0;
    return s.iota.is_integer() == divides && degree_shift(exps, order) == s.iota;
}

// Fills the derived fields of every multisector (group data, genus, rank,
// restriction maps) from the sector inventory, and cross-checks the rank
// against the cylinder formulation (both dimensions raised by one), which
// must give the same answer.
inline SectorAtlas annotate_multisectors(const SectorAtlas& atlas) {
    SectorAtlas out = atlas;
    const auto algebra = atlas.labels();
    for (auto& ms : out.multisectors) {
        // the triple must multiply to the identity
        const SectorLabel prod =
            algebra.multiply(algebra.multiply(ms.labels[0], ms.labels[1]), ms.labels[2]);
        if (!is_identity_label(prod))
            throw validation_error("multisector labels do not multiply to the identity");

        std::array<Rational, 3> iotas;
        for (int i = 0; i < 3; ++i) {
            const Sector& s = out.sector(ms.labels[i]);
            iotas[i] = s.iota;
            ms.restrictions[i] = restriction_map(s.model, ms.model);
        }
        ms.dim = model_dim(ms.model);
        ms.k_order = algebra.subgroup_order(ms.labels[0], ms.labels[1]);
        for (int i = 0; i < 3; ++i) ms.branch_orders[i] = algebra.order(ms.labels[i]);
        ms.genus = genus(ms.k_order, ms.branch_orders);
        ms.rank_e = obstruction_rank(ms.dim, out.ambient_dim, iotas);

        // cylinder cross-check: crossing everything with a line adds one to
        // both dimensions and must not change the rank
        const auto cylinder_rank = obstruction_rank(ms.dim + 1, out.ambient_dim + 1, iotas);
        if (cylinder_rank != ms.rank_e)
            throw validation_error("obstruction rank disagrees with its cylinder formulation");
    }
    return out;
}

// Full structural validation. Expects annotated multisectors.
inline void validate_atlas(const SectorAtlas& atlas) {
    if (atlas.ambient_dim < 1 || atlas.ambient_dim % 2 == 0)
        throw validation_error("ambient dimension must be odd and >= 1");
    if (atlas.group) atlas.group->validate();
    if (atlas.sectors.empty()) throw validation_error("atlas has no sectors");

    const auto algebra = atlas.labels();
    std::set<std::string> seen;
    bool has_untwisted = false;
    for (const auto& s : atlas.sectors) {
        if (!seen.insert(label_string(s.label)).second)
            throw validation_error("duplicate sector label " + label_string(s.label));
        if (const auto* g = std::get_if<GroupElement>(&s.label)) {
            if (!atlas.group) throw validation_error("group sector label in a groupless atlas");
            atlas.group->check_element(*g);
        } else {
            const auto& f = std::get<Rational>(s.label);
            if (f < Rational(0) || !(f < Rational(1)))
                throw validation_error("rational sector label must lie in [0,1)");
        }
        if (s.dim != model_dim(s.model))
            throw validation_error("sector " + label_string(s.label) + ": dim does not match model");
        if (s.iota < Rational(0))
            throw validation_error("sector " + label_string(s.label) + ": negative iota");
        if (!(s.weight > Rational(0)))
            throw validation_error("sector " + label_string(s.label) + ": weight must be positive");
        const bool ident = is_identity_label(s.label);
        if (ident) {
            has_untwisted = true;
            if (s.dim != atlas.ambient_dim)
                throw validation_error("untwisted sector dimension must equal the ambient dimension");
        }
        if (s.iota.is_zero() != ident)
            throw validation_error("sector " + label_string(s.label) +
                                   ": iota vanishes exactly on the untwisted sector");
        if (!s.rotations.empty()) {
            if (!iota_integrality_consistent(s, algebra))
                throw validation_error("sector " + label_string(s.label) +
                                       ": rotation data inconsistent with iota");
            Rational sum(0);
            for (const auto& r : s.rotations) sum += r;
            if (!(sum == s.iota))
                throw validation_error("sector " + label_string(s.label) +
                                       ": iota differs from the rotation angle sum");
        }
    }
    if (!has_untwisted) throw validation_error("atlas has no untwisted sector");

    for (const auto& ms : atlas.multisectors) {
        for (const auto& l : ms.labels)
            if (!atlas.find_sector(l))
                throw validation_error("multisector references missing sector " + label_string(l));
        const SectorLabel prod =
            algebra.multiply(algebra.multiply(ms.labels[0], ms.labels[1]), ms.labels[2]);
        if (!is_identity_label(prod))
            throw validation_error("multisector labels do not multiply to the identity");
        if (ms.dim != model_dim(ms.model)) throw validation_error("multisector dim/model mismatch");
        if (ms.k_order < 1) throw validation_error("multisector group order must be >= 1");
        for (int i = 0; i < 3; ++i) {
            if (ms.branch_orders[i] != algebra.order(ms.labels[i]))
                throw validation_error("multisector branch orders disagree with label orders");
            if (ms.dim > atlas.sector(ms.labels[i]).dim)
                throw validation_error("multisector larger than one of its sectors");
        }
        if (!ms.genus.is_integer() || ms.genus < Rational(0))
            throw validation_error("multisector genus must be a non-negative integer");
        if (ms.rank_e < 0 || ms.rank_e % 2 != 0)
            throw validation_error("obstruction rank must be even and non-negative");
        if (!(ms.weight > Rational(0))) throw validation_error("multisector weight must be positive");
    }
}

} // namespace orbicoh

#endif
