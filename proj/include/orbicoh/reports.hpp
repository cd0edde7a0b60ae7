/// @file reports.hpp
/// Deterministic rendering of the four command reports, as aligned text
/// tables or as JSON with sorted keys. Byte-identical output on repeated
/// runs is part of the contract.

#ifndef ORBICOH_REPORTS_HPP
#define ORBICOH_REPORTS_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "orbicoh/loader.hpp"

namespace orbicoh {

enum class Format { table, json };

namespace detail {

inline std::string align_rows(const std::vector<std::vector<std::string>>& rows,
                              const std::string& indent) {
    std::vector<std::size_t> widths;
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (widths.size() <= c) widths.resize(c + 1, 0);
            widths[c] = std::max(widths[c], r[c].size());
        }
    std::ostringstream out;
    for (const auto& r : rows) {
        out << indent;
        for (std::size_t c = 0; c < r.size(); ++c) {
            out << r[c];
            if (c + 1 < r.size()) out << std::string(widths[c] - r[c].size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

inline std::string group_string(const std::optional<GroupSpec>& g) {
    if (!g) return "none";
    if (g->cyclic_orders.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < g->cyclic_orders.size(); ++i) {
        if (i) s += " x ";
        s += "Z" + std::to_string(g->cyclic_orders[i]);
    }
    return s;
}

inline Json group_json(const std::optional<GroupSpec>& g) {
    if (!g) return nullptr;
    Json arr = Json::array();
    for (auto n : g->cyclic_orders) arr.push_back(n);
    return arr;
}

inline Json graded_json(const GradedDims& d) {
    Json arr = Json::array();
    for (const auto& [deg, n] : d.entries()) arr.push_back(Json::array({deg.str(), n}));
    return arr;
}

inline std::string labels_string(const std::array<SectorLabel, 3>& ls) {
    return "(" + label_string(ls[0]) + "," + label_string(ls[1]) + "," + label_string(ls[2]) + ")";
}

inline bool ring_capable(const SectorAtlas& atlas, std::string* why = nullptr) {
    for (const auto& s : atlas.sectors) {
        if (const auto* c = std::get_if<CustomModel>(&s.model.v); c && !c->ring) {
            if (why)
                *why = "sector " + label_string(s.label) + " carries a Betti-only custom model";
            return false;
        }
    }
    for (const auto& ms : atlas.multisectors) {
        if (const auto* c = std::get_if<CustomModel>(&ms.model.v); c && !c->ring) {
            if (why)
                *why = "multisector " + labels_string(ms.labels) +
                       " carries a Betti-only custom model";
            return false;
        }
    }
    return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// sectors
// ---------------------------------------------------------------------------

inline std::string render_sectors(const InputDocument& doc, Format f) {
    const SectorAtlas& a = doc.atlas;
    if (f == Format::json) {
        Json j;
        j["kind"] = doc.kind;
        if (!doc.name.empty()) j["name"] = doc.name;
        j["ambient_dim"] = a.ambient_dim;
        j["group"] = detail::group_json(a.group);
        Json sectors = Json::array();
        for (const auto& s : a.sectors) {
            Json row;
            row["label"] = label_string(s.label);
            row["model"] = model_string(s.model);
            row["dim"] = s.dim;
            row["iota"] = s.iota.str();
            row["weight"] = s.weight.str();
            sectors.push_back(std::move(row));
        }
        j["sectors"] = std::move(sectors);
        Json mss = Json::array();
        for (const auto& ms : a.multisectors) {
            Json row;
            row["labels"] = Json::array({label_string(ms.labels[0]), label_string(ms.labels[1]),
                                         label_string(ms.labels[2])});
            row["model"] = model_string(ms.model);
            row["dim"] = ms.dim;
            row["k_order"] = ms.k_order;
            row["branch_orders"] =
                Json::array({ms.branch_orders[0], ms.branch_orders[1], ms.branch_orders[2]});
            row["genus"] = ms.genus.str();
            row["rank_e"] = ms.rank_e;
            row["weight"] = ms.weight.str();
            mss.push_back(std::move(row));
        }
        j["multisectors"] = std::move(mss);
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    if (!doc.name.empty()) out << "name: " << doc.name << "\n";
    out << "kind: " << doc.kind << "\n";
    out << "ambient_dim: " << a.ambient_dim << "\n";
    out << "group: " << detail::group_string(a.group) << "\n";
    out << "sectors: " << a.sectors.size() << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"label", "model", "dim", "iota", "weight"});
    for (const auto& s : a.sectors)
        rows.push_back({label_string(s.label), model_string(s.model), std::to_string(s.dim),
                        s.iota.str(), s.weight.str()});
    out << detail::align_rows(rows, "  ");
    out << "multisectors: " << a.multisectors.size() << "\n";
    rows.clear();
    rows.push_back({"labels", "model", "dim", "k", "branch", "genus", "rank_e", "weight"});
    for (const auto& ms : a.multisectors) {
        const std::string branch = std::to_string(ms.branch_orders[0]) + "," +
                                   std::to_string(ms.branch_orders[1]) + "," +
                                   std::to_string(ms.branch_orders[2]);
        rows.push_back({detail::labels_string(ms.labels), model_string(ms.model),
                        std::to_string(ms.dim), std::to_string(ms.k_order), branch,
                        ms.genus.str(), std::to_string(ms.rank_e), ms.weight.str()});
    }
    out << detail::align_rows(rows, "  ");
    return out.str();
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

inline std::string render_cohomology(const InputDocument& doc, Format f) {
    const OrbCohomology coh = assemble(doc.atlas);
    if (f == Format::json) {
        Json j;
        j["kind"] = doc.kind;
        if (!doc.name.empty()) j["name"] = doc.name;
        j["ambient_dim"] = coh.ambient_dim;
        j["poincare_series"] = series_string(coh.total);
        j["total"] = detail::graded_json(coh.total);
        Json per = Json::array();
        for (const auto& [label, dims] : coh.per_sector) {
            Json row;
            row["sector"] = label_string(label);
            row["dims"] = detail::graded_json(dims);
            row["series"] = series_string(dims);
            per.push_back(std::move(row));
        }
        j["per_sector"] = std::move(per);
        Json basis = Json::array();
        for (const auto& b : coh.basis) {
            Json row;
            row["sector"] = label_string(b.sector);
            row["gen"] = b.gen;
            row["model_degree"] = b.model_degree;
            row["degree"] = b.degree.str();
            basis.push_back(std::move(row));
        }
        j["basis"] = std::move(basis);
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    if (!doc.name.empty()) out << "name: " << doc.name << "\n";
    out << "kind: " << doc.kind << "\n";
    out << "ambient_dim: " << coh.ambient_dim << "\n";
    out << "poincare_series: " << series_string(coh.total) << "\n";
    out << "total:\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"degree", "dim"});
    for (const auto& [deg, n] : coh.total.entries())
        rows.push_back({deg.str(), std::to_string(n)});
    out << detail::align_rows(rows, "  ");
    out << "per sector:\n";
    rows.clear();
    rows.push_back({"sector", "series"});
    for (const auto& [label, dims] : coh.per_sector)
        rows.push_back({label_string(label), series_string(dims)});
    out << detail::align_rows(rows, "  ");
    out << "basis: " << coh.basis.size() << "\n";
    rows.clear();
    rows.push_back({"idx", "sector", "gen", "degree"});
    for (std::size_t i = 0; i < coh.basis.size(); ++i) {
        const auto& b = coh.basis[i];
        rows.push_back(
            {std::to_string(i), label_string(b.sector), b.gen, b.degree.str()});
    }
    out << detail::align_rows(rows, "  ");
    return out.str();
}

// ---------------------------------------------------------------------------
// ring
// ---------------------------------------------------------------------------

struct RingRender {
    std::string text;
    bool incomplete = false;
};

namespace detail {

inline std::string expansion_string(const std::map<int, Rational>& cls) {
    if (cls.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [idx, c] : cls) {
        if (!first) s += " + ";
        first = false;
        if (!(c == Rational(1))) s += c.str() + "*";
        s += "[" + std::to_string(idx) + "]";
    }
    return s;
}

} // namespace detail

inline RingRender render_ring(const InputDocument& doc, const EulerOracle& oracle, Format f) {
    std::string why;
    if (!detail::ring_capable(doc.atlas, &why))
        throw validation_error("ring operations unavailable: " + why);
    RingSystem sys(doc.atlas, oracle);
    const StructureConstants sc = sys.structure_constants();
    const AssociativityReport assoc = associativity_check(sc);
    RingRender out;
    out.incomplete = !sc.complete();

    if (f == Format::json) {
        Json j;
        j["kind"] = doc.kind;
        if (!doc.name.empty()) j["name"] = doc.name;
        j["ambient_dim"] = doc.atlas.ambient_dim;
        Json basis = Json::array();
        for (const auto& b : sc.basis) {
            Json row;
            row["sector"] = label_string(b.sector);
            row["gen"] = b.gen;
            row["degree"] = b.degree.str();
            basis.push_back(std::move(row));
        }
        j["basis"] = std::move(basis);
        Json products = Json::array();
        for (const auto& [key, cls] : sc.table) {
            if (cls.empty()) continue;
            Json row;
            row["left"] = key.first;
            row["right"] = key.second;
            Json value;
            for (const auto& [idx, c] : cls) value[std::to_string(idx)] = c.str();
            row["value"] = std::move(value);
            products.push_back(std::move(row));
        }
        j["products"] = std::move(products);
        Json missing_pairs = Json::array();
        for (const auto& [i, k] : sc.missing_pairs) missing_pairs.push_back(Json::array({i, k}));
        j["missing_pairs"] = std::move(missing_pairs);
        Json missing_oracle = Json::array();
        for (const auto& m : sc.missing_oracle) {
            Json row;
            row["labels"] = Json::array({m.key.labels[0], m.key.labels[1], m.key.labels[2]});
            row["monomial"] = m.key.monomial;
            row["rank_e"] = m.rank_e;
            row["dim"] = m.dim;
            missing_oracle.push_back(std::move(row));
        }
        j["missing_oracle"] = std::move(missing_oracle);
        j["complete"] = sc.complete();
        Json a;
        a["pass"] = assoc.pass;
        a["checked"] = assoc.checked;
        a["skipped"] = assoc.skipped;
        if (assoc.witness)
            a["witness"] = Json::array({(*assoc.witness)[0], (*assoc.witness)[1],
                                        (*assoc.witness)[2]});
        j["associativity"] = std::move(a);
        if (oracle.normalization) j["oracle_normalization"] = *oracle.normalization;
        out.text = j.dump(2) + "\n";
        return out;
    }

    std::ostringstream os;
    if (!doc.name.empty()) os << "name: " << doc.name << "\n";
    os << "kind: " << doc.kind << "\n";
    os << "ambient_dim: " << doc.atlas.ambient_dim << "\n";
    os << "basis: " << sc.basis.size() << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"idx", "sector", "gen", "degree"});
    for (std::size_t i = 0; i < sc.basis.size(); ++i) {
        const auto& b = sc.basis[i];
        rows.push_back({std::to_string(i), label_string(b.sector), b.gen, b.degree.str()});
    }
    os << detail::align_rows(rows, "  ");
    std::size_t nonzero = 0;
    for (const auto& [key, cls] : sc.table)
        if (!cls.empty()) ++nonzero;
    os << "nonzero products: " << nonzero << "\n";
    for (const auto& [key, cls] : sc.table) {
        if (cls.empty()) continue;
        os << "  [" << key.first << "]*[" << key.second
           << "] = " << detail::expansion_string(cls) << "\n";
    }
    if (!sc.missing_pairs.empty()) {
        os << "blocked pairs: " << sc.missing_pairs.size() << "\n";
        os << "missing oracle entries: " << sc.missing_oracle.size() << "\n";
        for (const auto& m : sc.missing_oracle)
            os << "  " << m.key.str() << "  (rank_e " << m.rank_e << ", dim " << m.dim << ")\n";
    }
    if (oracle.normalization) os << "oracle normalization: " << *oracle.normalization << "\n";
    os << "associativity: " << (assoc.pass ? "pass" : "fail") << " (checked " << assoc.checked
       << ", skipped " << assoc.skipped << ")";
    if (assoc.witness)
        os << "  witness [" << (*assoc.witness)[0] << "]*[" << (*assoc.witness)[1] << "]*["
           << (*assoc.witness)[2] << "]";
    os << "\n";
    os << "status: " << (sc.complete() ? "complete" : "incomplete, pending oracle entries")
       << "\n";
    out.text = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyRender {
    std::string text;
    bool pass = true;
    bool incomplete = false;
};

namespace detail {

struct CheckLine {
    std::string name;
    std::string status; // pass | fail | partial | skipped
    std::string note;
};

} // namespace detail

inline VerifyRender render_verify(const InputDocument& doc, const EulerOracle& oracle, Format f) {
    const SectorAtlas& atlas = doc.atlas;
    std::vector<detail::CheckLine> checks;
    VerifyRender out;

    checks.push_back({"atlas validation", "pass", ""}); // loading already validated

    {
        const CrossRReport r = cross_r_compare(atlas);
        std::string note;
        if (!r.pass) {
            note = "mismatched degrees:";
            for (const auto& d : r.mismatched_degrees) note += " " + d.str();
        }
        checks.push_back({"cylinder invariance", r.pass ? "pass" : "fail", note});
        if (!r.pass) out.pass = false;
    }
    {
        const DualityReport r = duality_report(atlas);
        std::string note = "rows " + std::to_string(r.rows.size());
        if (!r.pass)
            for (const auto& row : r.rows)
                if (!row.ok) {
                    note += "; first failure at sector " + label_string(row.sector) +
                            " degree " + row.degree.str();
                    break;
                }
        checks.push_back({"poincare duality", r.pass ? "pass" : "fail", note});
        if (!r.pass) out.pass = false;
    }
    {
        bool ok = true;
        std::string note;
        const Rational D(atlas.ambient_dim);
        const auto algebra = atlas.labels();
        for (const auto& s : atlas.sectors) {
            const Sector& inv = atlas.sector(algebra.inverse(s.label));
            if (Rational(2) * (s.iota + inv.iota) != D - Rational(s.dim)) {
                ok = false;
                note = "fails at sector " + label_string(s.label);
                break;
            }
        }
        checks.push_back({"shift sum", ok ? "pass" : "fail", note});
        if (!ok) out.pass = false;
    }
    {
        bool ok = true;
        bool any = false;
        std::string note;
        const auto algebra = atlas.labels();
        for (const auto& s : atlas.sectors) {
            if (s.rotations.empty()) continue;
            any = true;
            if (!iota_integrality_consistent(s, algebra)) {
                ok = false;
                note = "fails at sector " + label_string(s.label);
                break;
            }
        }
        if (!any)
            checks.push_back({"iota integrality", "skipped", "no rotation data"});
        else {
            checks.push_back({"iota integrality", ok ? "pass" : "fail", note});
            if (!ok) out.pass = false;
        }
    }

    std::string why;
    if (!detail::ring_capable(atlas, &why)) {
        checks.push_back({"pairing blocks", "skipped", why});
        checks.push_back({"unit law", "skipped", why});
        checks.push_back({"degree additivity", "skipped", why});
        checks.push_back({"associativity", "skipped", why});
    } else {
        RingSystem sys(atlas, oracle);
        const auto algebra = atlas.labels();
        {
            bool ok = true;
            std::string note;
            for (const auto& s : atlas.sectors) {
                const SectorLabel inv = algebra.inverse(s.label);
                const RingTable& t = sys.table(s.label);
                const RingTable& td = sys.table(inv);
                std::set<std::int64_t> degrees;
                for (const auto& g : t.gens) degrees.insert(g.degree);
                for (const auto d : degrees) {
                    std::vector<int> mine, dual;
                    for (int i = 0; i < static_cast<int>(t.gens.size()); ++i)
                        if (t.gens[static_cast<std::size_t>(i)].degree == d) mine.push_back(i);
                    for (int i = 0; i < static_cast<int>(td.gens.size()); ++i)
                        if (td.gens[static_cast<std::size_t>(i)].degree == s.dim - d)
                            dual.push_back(i);
                    if (mine.size() != dual.size()) {
                        ok = false;
                        note = "block not square at sector " + label_string(s.label) +
                               " degree " + std::to_string(d);
                        break;
                    }
                    std::vector<std::vector<Rational>> m(dual.size(),
                                                         std::vector<Rational>(mine.size()));
                    for (std::size_t r = 0; r < dual.size(); ++r)
                        for (std::size_t c = 0; c < mine.size(); ++c)
                            m[r][c] = sys.pairing(
                                SectorClass{s.label, ModelClass{{mine[c], Rational(1)}}},
                                SectorClass{inv, ModelClass{{dual[r], Rational(1)}}});
                    if (!solve_linear(m, std::vector<Rational>(mine.size(), Rational(0)))) {
                        ok = false;
                        note = "degenerate block at sector " + label_string(s.label) +
                               " degree " + std::to_string(d);
                        break;
                    }
                }
                if (!ok) break;
            }
            checks.push_back({"pairing blocks", ok ? "pass" : "fail", note});
            if (!ok) out.pass = false;
        }

        const StructureConstants sc = sys.structure_constants();
        if (!sc.complete()) out.incomplete = true;
        const int n = static_cast<int>(sc.basis.size());
        const SectorLabel id_label = atlas.untwisted().label;
        const int unit = sys.basis_index(id_label, sys.table(id_label).gens[0].label);
        {
            bool ok = true;
            std::int64_t skipped = 0;
            std::string note;
            for (int i = 0; i < n && ok; ++i) {
                for (const auto key : {std::make_pair(unit, i), std::make_pair(i, unit)}) {
                    if (sc.missing_pairs.count(key)) {
                        ++skipped;
                        continue;
                    }
                    const auto it = sc.table.find(key);
                    const std::map<int, Rational> expect{{i, Rational(1)}};
                    if (it == sc.table.end() || it->second != expect) {
                        ok = false;
                        note = "unit product fails on basis element " + std::to_string(i);
                        break;
                    }
                }
            }
            if (ok && skipped)
                note = "skipped " + std::to_string(skipped) + " blocked products";
            checks.push_back({"unit law", ok ? "pass" : "fail", note});
            if (!ok) out.pass = false;
        }
        {
            bool ok = true;
            std::string note;
            for (const auto& [key, cls] : sc.table) {
                const Rational want = sc.basis[static_cast<std::size_t>(key.first)].degree +
                                      sc.basis[static_cast<std::size_t>(key.second)].degree;
                for (const auto& [idx, c] : cls)
                    if (sc.basis[static_cast<std::size_t>(idx)].degree != want) {
                        ok = false;
                        note = "product [" + std::to_string(key.first) + "]*[" +
                               std::to_string(key.second) + "] leaves degree " + want.str();
                        break;
                    }
                if (!ok) break;
            }
            checks.push_back({"degree additivity", ok ? "pass" : "fail", note});
            if (!ok) out.pass = false;
        }
        {
            const AssociativityReport a = associativity_check(sc);
            std::string note = "checked " + std::to_string(a.checked) + ", skipped " +
                               std::to_string(a.skipped);
            if (!sc.complete())
                note += ", missing oracle entries " + std::to_string(sc.missing_oracle.size());
            if (!a.pass && a.witness) note += "; witness " + a.detail;
            const std::string status = !a.pass ? "fail" : (sc.complete() ? "pass" : "partial");
            checks.push_back({"associativity", status, note});
            if (!a.pass) out.pass = false;
        }
    }

    const std::vector<std::string> notes{
        "inverse-pair degree shifts satisfy 2*(iota(g) + iota(g~)) = D - dim X_(g), with D the "
        "ambient dimension and g~ the inverse label",
        "the pairing couples orbifold degree d with orbifold degree D - d"};
    const std::string result = !out.pass ? "fail" : (out.incomplete ? "incomplete" : "pass");

    if (f == Format::json) {
        Json j;
        j["kind"] = doc.kind;
        if (!doc.name.empty()) j["name"] = doc.name;
        j["ambient_dim"] = atlas.ambient_dim;
        Json cs = Json::array();
        for (const auto& c : checks) {
            Json row;
            row["name"] = c.name;
            row["status"] = c.status;
            if (!c.note.empty()) row["note"] = c.note;
            cs.push_back(std::move(row));
        }
        j["checks"] = std::move(cs);
        j["notes"] = notes;
        j["result"] = result;
        out.text = j.dump(2) + "\n";
        return out;
    }

    std::ostringstream os;
    if (!doc.name.empty()) os << "name: " << doc.name << "\n";
    os << "kind: " << doc.kind << "\n";
    os << "ambient_dim: " << atlas.ambient_dim << "\n";
    for (const auto& c : checks) {
        os << "check " << c.name << ": " << c.status;
        if (!c.note.empty()) os << " (" << c.note << ")";
        os << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    os << "result: " << result << "\n";
    out.text = os.str();
    return out;
}

} // namespace orbicoh

#endif
