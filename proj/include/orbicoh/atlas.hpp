/// @file atlas.hpp
/// Twisted-sector atlases: the combinatorial presentation of an orbifold
/// that every computation in this library consumes.

#ifndef ORBICOH_ATLAS_HPP
#define ORBICOH_ATLAS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbicoh/errors.hpp"
#include "orbicoh/labels.hpp"
#include "orbicoh/model_spaces.hpp"

namespace orbicoh {

// One twisted sector: the fixed locus attached to a conjugacy label,
// with its degree shifting number and integration weight.
struct Sector {
    SectorLabel label;
    ModelSpace model;
    std::int64_t dim = 0;
    Rational iota;
    Rational weight = Rational(1);

    // For sphere quotients: fractional rotation angle of the label on each
    // ambient complex coordinate. Empty for other presentations. Derived
    // bookkeeping, not part of sector identity.
    std::vector<Rational> rotations;

    friend bool operator==(const Sector& a, const Sector& b) {
        return !label_less(a.label, b.label) && !label_less(b.label, a.label) &&
               a.model == b.model && a.dim == b.dim && a.iota == b.iota && a.weight == b.weight;
    }
};

// A 3-multisector: the common fixed locus of an ordered label triple that
// multiplies to the identity, annotated with the branched-cover data and
// the obstruction bundle rank.
struct MultiSector {
    std::array<SectorLabel, 3> labels;
    ModelSpace model;
    std::int64_t dim = 0;
    std::int64_t k_order = 1;                   // |<g1, g2>|
    std::array<std::int64_t, 3> branch_orders{1, 1, 1};
    Rational genus;                             // always a non-negative integer
    std::int64_t rank_e = 0;                    // real rank of the obstruction bundle
    Rational weight = Rational(1);
    std::array<RestrictionMap, 3> restrictions; // sector model -> this model

    friend bool operator==(const MultiSector& a, const MultiSector& b) {
        for (int i = 0; i < 3; ++i)
            if (label_less(a.labels[i], b.labels[i]) || label_less(b.labels[i], a.labels[i]))
                return false;
        return a.model == b.model && a.dim == b.dim && a.k_order == b.k_order &&
               a.branch_orders == b.branch_orders && a.genus == b.genus && a.rank_e == b.rank_e &&
               a.weight == b.weight;
    }
};

struct SectorAtlas {
    std::int64_t ambient_dim = 1; // odd
    std::optional<GroupSpec> group;
    std::vector<Sector> sectors;
    std::vector<MultiSector> multisectors;
    std::string kind; // presentation family, for reports; not part of identity

    LabelAlgebra labels() const { return LabelAlgebra(group); }

    const Sector* find_sector(const SectorLabel& l) const {
        for (const auto& s : sectors)
            if (!label_less(s.label, l) && !label_less(l, s.label)) return &s;
        return nullptr;
    }

    const Sector& sector(const SectorLabel& l) const {
        if (const auto* s = find_sector(l)) return *s;
        throw validation_error("no sector with label " + label_string(l));
    }

    const MultiSector* find_multisector(const std::array<SectorLabel, 3>& ls) const {
        for (const auto& m : multisectors) {
            bool same = true;
            for (int i = 0; i < 3; ++i)
                if (label_less(m.labels[i], ls[i]) || label_less(ls[i], m.labels[i])) {
                    same = false;
                    break;
                }
            if (same) return &m;
        }
        return nullptr;
    }

    const Sector& untwisted() const {
        for (const auto& s : sectors)
            if (is_identity_label(s.label)) return s;
        throw validation_error("atlas has no untwisted sector");
    }

    friend bool operator==(const SectorAtlas& a, const SectorAtlas& b) {
        return a.ambient_dim == b.ambient_dim && a.group == b.group && a.sectors == b.sectors &&
               a.multisectors == b.multisectors;
    }
};

// ---------------------------------------------------------------------------
// Euler-integral oracle
// ---------------------------------------------------------------------------

// Key: the multisector's ordered label triple (rendered canonically) plus
// the generator monomial whose pairing against the Euler form is tabulated.
struct OracleKey {
    std::array<std::string, 3> labels;
    std::string monomial;

    friend bool operator<(const OracleKey& a, const OracleKey& b) {
        if (a.labels != b.labels) return a.labels < b.labels;
        return a.monomial < b.monomial;
    }
    friend bool operator==(const OracleKey&, const OracleKey&) = default;

    std::string str() const {
        return "(" + labels[0] + "," + labels[1] + "," + labels[2] + ") * " + monomial;
    }
};

inline OracleKey make_oracle_key(const std::array<SectorLabel, 3>& ls, const std::string& monomial) {
    return OracleKey{{label_string(ls[0]), label_string(ls[1]), label_string(ls[2])}, monomial};
}

enum class MissingPolicy { report, error };

// Externally computed Euler-form integrals. Values are complete orbifold
// integrals of (monomial wedge euler form) over the multisector, in the
// normalization stated by the `normalization` note.
struct EulerOracle {
    std::map<OracleKey, Rational> table;
    std::optional<std::string> normalization;
    MissingPolicy on_missing = MissingPolicy::report;

    bool empty() const { return table.empty(); }

    std::optional<Rational> lookup(const OracleKey& k) const {
        auto it = table.find(k);
        if (it == table.end()) return std::nullopt;
        return it->second;
    }

    void insert(const OracleKey& k, const Rational& v) {
        auto [it, fresh] = table.emplace(k, v);
        if (!fresh && !(it->second == v))
            throw oracle_error("conflicting oracle entries for " + k.str());
    }

    void merge(const EulerOracle& other) {
        for (const auto& [k, v] : other.table) insert(k, v);
        if (other.normalization) normalization = other.normalization;
        if (other.on_missing == MissingPolicy::error) on_missing = MissingPolicy::error;
    }
};

} // namespace orbicoh

#endif
