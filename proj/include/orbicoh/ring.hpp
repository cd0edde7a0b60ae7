/// @file ring.hpp
/// The orbifold cup product: orbifold integration, 3-point functions with
/// obstruction bundle bookkeeping, the Poincare pairing, and structure
/// constants solved blockwise from the pairing.
///
/// 3-point functions over a multisector with positive obstruction rank need
/// externally supplied Euler-form integrals; missing entries are reported as
/// a first-class inventory, never silently zeroed.

#ifndef ORBICOH_RING_HPP
#define ORBICOH_RING_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbicoh/cohomology.hpp"

namespace orbicoh {

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

namespace detail {

inline Rational integrate_model(const RingTable& table, const Rational& weight,
                                const ModelClass& top_class) {
    for (const auto& [i, c] : top_class)
        if (i < 0 || i >= static_cast<int>(table.gens.size()))
            throw validation_error("malformed class: unknown generator index");
    // only the top component survives; lower degrees integrate to zero
    return weight * table.top_integral * top_coefficient(table, top_class);
}

} // namespace detail

// Orbifold integral over a sector: (integration weight) * (model integral).
inline Rational integrate(const Sector& s, const ModelClass& top_class) {
    return detail::integrate_model(ring_table(s.model), s.weight, top_class);
}

inline Rational integrate(const MultiSector& ms, const ModelClass& top_class) {
    return detail::integrate_model(ring_table(ms.model), ms.weight, top_class);
}

// ---------------------------------------------------------------------------
// Sector classes and 3-point functions
// ---------------------------------------------------------------------------

// A class supported on a single sector, written in that sector's model
// generators. The ring operations require homogeneous classes and extend
// by linearity.
struct SectorClass {
    SectorLabel sector;
    ModelClass coeffs;
};

enum class ThreePointStatus {
    value,            // evaluated exactly
    no_multisector,   // forced zero: the triple has no common locus
    rank_exceeds_dim, // forced zero: Euler form of rank above the dimension
    degree_mismatch,  // forced zero: degree filter fails
    needs_oracle      // blocked on missing Euler integrals
};

inline std::string status_string(ThreePointStatus s) {
    switch (s) {
        case ThreePointStatus::value: return "value";
        case ThreePointStatus::no_multisector: return "forced-zero(no-multisector)";
        case ThreePointStatus::rank_exceeds_dim: return "forced-zero(rank-exceeds-dim)";
        case ThreePointStatus::degree_mismatch: return "forced-zero(degree-mismatch)";
        case ThreePointStatus::needs_oracle: return "needs-oracle";
    }
    return "?";
}

struct ThreePointResult {
    ThreePointStatus status = ThreePointStatus::value;
    Rational value;                 // zero for every forced-zero status
    std::vector<OracleKey> missing; // populated for needs_oracle
    const MultiSector* multisector = nullptr;
};

struct CupResult {
    // expansion of the product over the target sector's model generators;
    // empty optional when blocked on missing oracle entries
    std::optional<ModelClass> value;
    SectorLabel target;
    std::vector<OracleKey> missing;
};

struct MissingOracleEntry {
    OracleKey key;
    std::int64_t rank_e = 0;
    std::int64_t dim = 0;
    friend bool operator<(const MissingOracleEntry& a, const MissingOracleEntry& b) {
        return a.key < b.key;
    }
};

struct StructureConstants {
    std::vector<BasisElement> basis;
    // (i, j) -> expansion of basis_i cup basis_j over basis indices.
    // Every resolved pair has an entry (possibly empty = zero); blocked
    // pairs appear in missing_pairs instead.
    std::map<std::pair<int, int>, std::map<int, Rational>> table;
    std::set<std::pair<int, int>> missing_pairs;
    std::set<MissingOracleEntry> missing_oracle;

    bool complete() const { return missing_pairs.empty(); }
};

struct AssociativityReport {
    bool pass = false;
    std::int64_t checked = 0;
    std::int64_t skipped = 0; // triples touching blocked entries
    std::optional<std::array<int, 3>> witness;
    std::string detail;
};

// Exact solver for small square systems; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> v) {
    const std::size_t n = v.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(v[pivot], v[col]);
        const Rational inv = Rational(1) / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        v[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            const Rational f = a[row][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            v[row] -= f * v[col];
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// RingSystem: cached tables plus the ring operations
// ---------------------------------------------------------------------------

class RingSystem {
  public:
    explicit RingSystem(const SectorAtlas& atlas, EulerOracle oracle = {})
        : atlas_(atlas), oracle_(std::move(oracle)), algebra_(atlas.labels()) {
        coh_ = assemble(atlas_);
        for (const auto& s : atlas_.sectors) tables_.emplace(s.label, ring_table(s.model));
        int pos = 0;
        for (const auto& b : coh_.basis) {
            index_.emplace(std::make_pair(b.sector, b.gen), pos);
            ++pos;
        }
        validate_oracle();
    }

    const SectorAtlas& atlas() const { return atlas_; }
    const EulerOracle& oracle() const { return oracle_; }
    const OrbCohomology& cohomology() const { return coh_; }

    const RingTable& table(const SectorLabel& l) const {
        auto it = tables_.find(l);
        if (it == tables_.end())
            throw validation_error("no sector with label " + label_string(l));
        return it->second;
    }

    int basis_index(const SectorLabel& sector, const std::string& gen) const {
        auto it = index_.find(std::make_pair(sector, gen));
        if (it == index_.end())
            throw validation_error("no basis element " + label_string(sector) + ":" + gen);
        return it->second;
    }

    // Eq for the 3-point function: locate the multisector of
    // (g1, g2, (g1 g2)^-1), apply the forced-zero filters, then integrate
    // the product of the restrictions, against the Euler form if the
    // obstruction rank is positive.
    ThreePointResult three_point(const SectorClass& e1, const SectorClass& e2,
                                 const SectorClass& e3) const {
        const std::array<const SectorClass*, 3> etas{&e1, &e2, &e3};
        std::array<std::optional<std::int64_t>, 3> degrees;
        for (int i = 0; i < 3; ++i) {
            const auto& eta = *etas[i];
            degrees[i] = class_degree(table(eta.sector), eta.coeffs);
            if (!degrees[i]) return {}; // a zero class: exact zero, status value
        }

        ThreePointResult r;
        const SectorLabel expected3 = algebra_.inverse(algebra_.multiply(e1.sector, e2.sector));
        if (label_less(expected3, e3.sector) || label_less(e3.sector, expected3)) {
            r.status = ThreePointStatus::no_multisector;
            return r;
        }
        const MultiSector* ms = atlas_.find_multisector({e1.sector, e2.sector, e3.sector});
        if (!ms) {
            r.status = ThreePointStatus::no_multisector;
            return r;
        }
        r.multisector = ms;
        if (ms->rank_e > ms->dim) {
            r.status = ThreePointStatus::rank_exceeds_dim;
            return r;
        }
        if (*degrees[0] + *degrees[1] + *degrees[2] + ms->rank_e != ms->dim) {
            r.status = ThreePointStatus::degree_mismatch;
            return r;
        }

        const RingTable ms_table = ring_table(ms->model);
        ModelClass mu = ms->restrictions[0].apply(e1.coeffs);
        mu = multiply(ms_table, mu, ms->restrictions[1].apply(e2.coeffs));
        mu = multiply(ms_table, mu, ms->restrictions[2].apply(e3.coeffs));
        if (mu.empty()) return r; // product of restrictions vanishes

        if (ms->rank_e == 0) {
            r.value = detail::integrate_model(ms_table, ms->weight, mu);
            return r;
        }

        // positive rank: pair each surviving monomial with its tabulated
        // Euler-form integral
        Rational total(0);
        for (const auto& [gen, coeff] : mu) {
            const OracleKey key =
                make_oracle_key(ms->labels, ms_table.gens.at(static_cast<std::size_t>(gen)).label);
            if (const auto v = oracle_.lookup(key)) {
                total += coeff * *v;
            } else {
                r.missing.push_back(key);
            }
        }
        if (!r.missing.empty()) {
            if (oracle_.on_missing == MissingPolicy::error)
                throw oracle_error("missing Euler integral for " + r.missing.front().str());
            r.status = ThreePointStatus::needs_oracle;
            return r;
        }
        r.value = total;
        return r;
    }

    // Poincare pairing: integrate alpha wedge beta over X_(g) when the
    // sectors are mutually inverse; zero otherwise.
    Rational pairing(const SectorClass& a, const SectorClass& b) const {
        const SectorLabel inv = algebra_.inverse(a.sector);
        if (label_less(inv, b.sector) || label_less(b.sector, inv)) return Rational(0);
        const Sector& sa = atlas_.sector(a.sector);
        const Sector& sb = atlas_.sector(b.sector);
        if (!(sa.model == sb.model))
            throw validation_error("pairing: inverse sectors carry different models");
        const RingTable& t = table(a.sector);
        return detail::integrate_model(t, sa.weight, multiply(t, a.coeffs, b.coeffs));
    }

    // Cup product of homogeneous single-sector classes, solved against the
    // pairing on the (target sector, target degree) block.
    CupResult cup(const SectorClass& a, const SectorClass& b) const {
        CupResult out;
        const SectorLabel target = algebra_.multiply(a.sector, b.sector);
        out.target = target;
        const auto da = class_degree(table(a.sector), a.coeffs);
        const auto db = class_degree(table(b.sector), b.coeffs);
        if (!da || !db) {
            out.value = ModelClass{};
            return out;
        }
        const SectorLabel g3 = algebra_.inverse(target);
        const MultiSector* ms = atlas_.find_multisector({a.sector, b.sector, g3});
        if (!ms || ms->rank_e > ms->dim) {
            out.value = ModelClass{};
            return out;
        }
        const std::int64_t d3 = ms->dim - ms->rank_e - *da - *db;
        const Sector* target_sector = atlas_.find_sector(target);
        if (!target_sector) {
            // no multisector could pair into a missing sector; nothing to hold
            // a nonzero product either
            out.value = ModelClass{};
            return out;
        }
        const RingTable& target_table = table(target);
        const RingTable& dual_table = table(g3);
        std::vector<int> dual_gens;
        for (int j = 0; j < static_cast<int>(dual_table.gens.size()); ++j)
            if (dual_table.gens[static_cast<std::size_t>(j)].degree == d3) dual_gens.push_back(j);
        if (dual_gens.empty()) {
            out.value = ModelClass{};
            return out;
        }
        std::vector<Rational> rhs;
        for (int j : dual_gens) {
            SectorClass eta3{g3, ModelClass{{j, Rational(1)}}};
            const auto tp = three_point(a, b, eta3);
            if (tp.status == ThreePointStatus::needs_oracle) {
                for (const auto& k : tp.missing) out.missing.push_back(k);
                continue;
            }
            rhs.push_back(tp.value);
        }
        if (!out.missing.empty()) {
            std::sort(out.missing.begin(), out.missing.end());
            out.missing.erase(std::unique(out.missing.begin(), out.missing.end()),
                              out.missing.end());
            return out; // blocked
        }

        const std::int64_t m_target = target_sector->dim - d3;
        std::vector<int> target_gens;
        for (int i = 0; i < static_cast<int>(target_table.gens.size()); ++i)
            if (target_table.gens[static_cast<std::size_t>(i)].degree == m_target)
                target_gens.push_back(i);
        const bool any_nonzero =
            std::any_of(rhs.begin(), rhs.end(), [](const Rational& r) { return !r.is_zero(); });
        if (target_gens.empty()) {
            if (any_nonzero)
                throw duality_error("cup: 3-point functions hit an empty target block on sector " +
                                    label_string(target));
            out.value = ModelClass{};
            return out;
        }
        if (target_gens.size() != dual_gens.size())
            throw duality_error("cup: pairing block on sector " + label_string(target) +
                                " is not square");

        // pairing matrix rows follow the dual generators
        std::vector<std::vector<Rational>> mat(dual_gens.size(),
                                               std::vector<Rational>(target_gens.size()));
        for (std::size_t j = 0; j < dual_gens.size(); ++j)
            for (std::size_t i = 0; i < target_gens.size(); ++i)
                mat[j][i] = pairing(SectorClass{target, ModelClass{{target_gens[i], Rational(1)}}},
                                    SectorClass{g3, ModelClass{{dual_gens[j], Rational(1)}}});
        const auto solved = solve_linear(mat, rhs);
        if (!solved)
            throw duality_error("cup: degenerate pairing block on sector " + label_string(target));
        ModelClass result;
        for (std::size_t i = 0; i < target_gens.size(); ++i)
            class_add(result, target_gens[i], (*solved)[i]);
        out.value = std::move(result);
        return out;
    }

    // Full structure-constant table over the cohomology basis.
    StructureConstants structure_constants() const {
        StructureConstants sc;
        sc.basis = coh_.basis;
        const int n = static_cast<int>(coh_.basis.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& bi = coh_.basis[static_cast<std::size_t>(i)];
                const auto& bj = coh_.basis[static_cast<std::size_t>(j)];
                SectorClass a{bi.sector, ModelClass{{table(bi.sector).gen_index(bi.gen), Rational(1)}}};
                SectorClass b{bj.sector, ModelClass{{table(bj.sector).gen_index(bj.gen), Rational(1)}}};
                const auto cup_ab = cup(a, b);
                if (!cup_ab.value) {
                    sc.missing_pairs.insert({i, j});
                    const SectorLabel g3 = algebra_.inverse(cup_ab.target);
                    const MultiSector* ms = atlas_.find_multisector({a.sector, b.sector, g3});
                    for (const auto& key : cup_ab.missing)
                        sc.missing_oracle.insert(MissingOracleEntry{
                            key, ms ? ms->rank_e : 0, ms ? ms->dim : 0});
                    continue;
                }
                std::map<int, Rational> expansion;
                if (!cup_ab.value->empty()) {
                    const RingTable& tt = table(cup_ab.target);
                    for (const auto& [gen, coeff] : *cup_ab.value)
                        expansion[basis_index(
                            cup_ab.target, tt.gens.at(static_cast<std::size_t>(gen)).label)] =
                            coeff;
                }
                sc.table[{i, j}] = std::move(expansion);
            }
        return sc;
    }

  private:
    void validate_oracle() const {
        for (const auto& [key, value] : oracle_.table) {
            const MultiSector* found = nullptr;
            for (const auto& ms : atlas_.multisectors) {
                if (make_oracle_key(ms.labels, key.monomial) == key) {
                    found = &ms;
                    break;
                }
            }
            if (!found)
                throw oracle_error("oracle entry " + key.str() +
                                   " does not match any multisector of the atlas");
            if (found->rank_e <= 0 || found->rank_e > found->dim)
                throw oracle_error("oracle entry " + key.str() +
                                   " keys a multisector that needs no Euler data");
            const RingTable t = ring_table(found->model);
            const int gen = t.gen_index(key.monomial);
            if (t.gens[static_cast<std::size_t>(gen)].degree != found->dim - found->rank_e)
                throw oracle_error("oracle entry " + key.str() +
                                   " has inconsistent degree: monomial must have degree " +
                                   std::to_string(found->dim - found->rank_e));
        }
    }

    SectorAtlas atlas_;
    EulerOracle oracle_;
    LabelAlgebra algebra_;
    OrbCohomology coh_;
    std::map<SectorLabel, RingTable, LabelLess> tables_;
    struct IndexLess {
        bool operator()(const std::pair<SectorLabel, std::string>& x,
                        const std::pair<SectorLabel, std::string>& y) const {
            if (label_less(x.first, y.first)) return true;
            if (label_less(y.first, x.first)) return false;
            return x.second < y.second;
        }
    };
    std::map<std::pair<SectorLabel, std::string>, int, IndexLess> index_;
};

// Exhaustive associativity check on the resolved part of the table.
// Triples touching blocked entries are skipped and counted.
inline AssociativityReport associativity_check(const StructureConstants& sc) {
    AssociativityReport rep;
    const int n = static_cast<int>(sc.basis.size());
    const auto expand = [&](const std::map<int, Rational>& cls,
                            int k) -> std::optional<std::map<int, Rational>> {
        std::map<int, Rational> out;
        for (const auto& [m, c] : cls) {
            if (c.is_zero()) continue;
            if (sc.missing_pairs.count({m, k})) return std::nullopt;
            const auto it = sc.table.find({m, k});
            if (it == sc.table.end()) return std::nullopt;
            for (const auto& [idx, c2] : it->second) {
                out[idx] += c * c2;
                if (out[idx].is_zero()) out.erase(idx);
            }
        }
        return out;
    };
    rep.pass = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto ij = sc.table.find({i, j});
                const auto jk = sc.table.find({j, k});
                if (ij == sc.table.end() || jk == sc.table.end()) {
                    ++rep.skipped;
                    continue;
                }
                const auto lhs = expand(ij->second, k);
                std::optional<std::map<int, Rational>> rhs;
                {
                    // right association: b_i cup (b_j cup b_k)
                    std::map<int, Rational> acc;
                    bool blocked = false;
                    for (const auto& [m, c] : jk->second) {
                        if (c.is_zero()) continue;
                        if (sc.missing_pairs.count({i, m})) {
                            blocked = true;
                            break;
                        }
                        const auto it = sc.table.find({i, m});
                        if (it == sc.table.end()) {
                            blocked = true;
                            break;
                        }
                        for (const auto& [idx, c2] : it->second) {
                            acc[idx] += c * c2;
                            if (acc[idx].is_zero()) acc.erase(idx);
                        }
                    }
                    if (!blocked) rhs = std::move(acc);
                }
                if (!lhs || !rhs) {
                    ++rep.skipped;
                    continue;
                }
                ++rep.checked;
                if (*lhs != *rhs) {
                    rep.pass = false;
                    if (!rep.witness) {
                        rep.witness = std::array<int, 3>{i, j, k};
                        const auto& bi = sc.basis[static_cast<std::size_t>(i)];
                        const auto& bj = sc.basis[static_cast<std::size_t>(j)];
                        const auto& bk = sc.basis[static_cast<std::size_t>(k)];
                        rep.detail = "(" + label_string(bi.sector) + ":" + bi.gen + " * " +
                                     label_string(bj.sector) + ":" + bj.gen + ") * " +
                                     label_string(bk.sector) + ":" + bk.gen +
                                     " differs from the right association";
                    }
                }
            }
    return rep;
}

// ---------------------------------------------------------------------------
// Free-function wrappers
// ---------------------------------------------------------------------------

inline ThreePointResult three_point(const SectorAtlas& atlas, const EulerOracle& oracle,
                                    const SectorClass& e1, const SectorClass& e2,
                                    const SectorClass& e3) {
    return RingSystem(atlas, oracle).three_point(e1, e2, e3);
}

inline Rational pairing(const SectorAtlas& atlas, const SectorClass& a, const SectorClass& b) {
    return RingSystem(atlas).pairing(a, b);
}

inline CupResult cup(const SectorAtlas& atlas, const EulerOracle& oracle, const SectorClass& a,
                     const SectorClass& b) {
    return RingSystem(atlas, oracle).cup(a, b);
}

inline StructureConstants structure_constants(const SectorAtlas& atlas, const EulerOracle& oracle) {
    return RingSystem(atlas, oracle).structure_constants();
}

} // namespace orbicoh

#endif
