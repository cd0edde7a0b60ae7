/// @file loader.hpp
/// Input documents. Two serializations, one schema: strict JSON for .json
/// files, YAML for everything else. YAML scalars are mapped onto the JSON
/// value model before interpretation so both paths share one reader.
///
/// Document kinds: sphere_quotient, wps_circle, raw_atlas, euler_oracle.
/// Every document carries `schema: 1`.

#ifndef ORBICOH_LOADER_HPP
#define ORBICOH_LOADER_HPP

#include <cstdint>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "orbicoh/presentations.hpp"
#include "orbicoh/ring.hpp"

namespace orbicoh {

using Json = nlohmann::json;

struct InputDocument {
    std::string name; // optional display name from the document
    std::string kind;
    SectorAtlas atlas;
    EulerOracle oracle; // inline oracle entries, possibly empty
};

namespace detail {

inline Json yaml_to_json(const YAML::Node& n, const std::string& at) {
    switch (n.Type()) {
        case YAML::NodeType::Null:
            return nullptr;
        case YAML::NodeType::Scalar: {
            const std::string& s = n.Scalar();
            static const std::regex int_re("^-?[0-9]+$");
            if (std::regex_match(s, int_re)) {
                try {
                    return static_cast<std::int64_t>(std::stoll(s));
                } catch (const std::exception&) {
                    return s; // out of int64 range: keep the text
                }
            }
            return s;
        }
        case YAML::NodeType::Sequence: {
            Json arr = Json::array();
            std::size_t i = 0;
            for (const auto& item : n) {
                arr.push_back(yaml_to_json(item, at + "[" + std::to_string(i) + "]"));
                ++i;
            }
            return arr;
        }
        case YAML::NodeType::Map: {
            Json obj = Json::object();
            for (const auto& kv : n) {
                if (!kv.first.IsScalar())
                    throw validation_error(at + ": mapping keys must be scalars");
                obj[kv.first.Scalar()] =
                    yaml_to_json(kv.second, at + "." + kv.first.Scalar());
            }
            return obj;
        }
        default:
            throw validation_error(at + ": undefined node");
    }
}

inline const Json& member(const Json& j, const char* key, const std::string& at) {
    if (!j.is_object()) throw validation_error(at + ": expected a mapping");
    auto it = j.find(key);
    if (it == j.end()) throw validation_error(at + ": missing key '" + key + "'");
    return *it;
}

inline const Json* opt_member(const Json& j, const char* key, const std::string& at) {
    if (!j.is_object()) throw validation_error(at + ": expected a mapping");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                       const std::string& at) {
    if (!j.is_object()) throw validation_error(at + ": expected a mapping");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw validation_error(at + ": unknown key '" + it.key() + "'");
    }
}

inline std::int64_t as_int(const Json& j, const std::string& at) {
    if (!j.is_number_integer()) throw validation_error(at + ": expected an integer");
    return j.get<std::int64_t>();
}

inline std::string as_str(const Json& j, const std::string& at) {
    if (!j.is_string()) throw validation_error(at + ": expected a string");
    return j.get<std::string>();
}

inline Rational as_rational(const Json& j, const std::string& at) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const validation_error& e) {
            throw validation_error(at + ": " + e.what());
        }
    }
    throw validation_error(at + ": expected an integer or a fraction string");
}

inline std::vector<std::int64_t> as_int_list(const Json& j, const std::string& at) {
    if (!j.is_array()) throw validation_error(at + ": expected a list");
    std::vector<std::int64_t> out;
    std::size_t i = 0;
    for (const auto& item : j) {
        out.push_back(as_int(item, at + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

inline ModelSpace parse_model(const Json& j, const std::string& at);

inline RingTable parse_ring_table(const Json& j, std::int64_t dim, const std::string& at) {
    check_keys(j, {"gens", "products", "top_integral"}, at);
    RingTable t;
    const Json& gens = member(j, "gens", at);
    if (!gens.is_array() || gens.empty())
        throw validation_error(at + ".gens: expected a non-empty list");
    std::size_t i = 0;
    for (const auto& g : gens) {
        const std::string gat = at + ".gens[" + std::to_string(i) + "]";
        check_keys(g, {"label", "degree"}, gat);
        t.gens.push_back(RingGen{as_str(member(g, "label", gat), gat + ".label"),
                                 as_int(member(g, "degree", gat), gat + ".degree")});
        ++i;
    }
    int top = -1;
    for (std::size_t k = 0; k < t.gens.size(); ++k)
        if (t.gens[k].degree == dim) {
            if (top >= 0)
                throw validation_error(at + ".gens: more than one generator of top degree");
            top = static_cast<int>(k);
        }
    if (top < 0) throw validation_error(at + ".gens: no generator of top degree");
    t.top_degree = dim;
    t.top_index = top;
    t.top_integral = as_rational(member(j, "top_integral", at), at + ".top_integral");

    if (const Json* prods = opt_member(j, "products", at)) {
        if (!prods->is_array()) throw validation_error(at + ".products: expected a list");
        std::size_t p = 0;
        std::set<std::pair<int, int>> seen;
        for (const auto& entry : *prods) {
            const std::string pat = at + ".products[" + std::to_string(p) + "]";
            check_keys(entry, {"left", "right", "value"}, pat);
            int li, ri;
            try {
                li = t.gen_index(as_str(member(entry, "left", pat), pat + ".left"));
                ri = t.gen_index(as_str(member(entry, "right", pat), pat + ".right"));
            } catch (const validation_error& e) {
                throw validation_error(pat + ": " + e.what());
            }
            const Json& value = member(entry, "value", pat);
            if (!value.is_object()) throw validation_error(pat + ".value: expected a mapping");
            ModelClass v;
            for (auto it = value.begin(); it != value.end(); ++it) {
                int gi;
                try {
                    gi = t.gen_index(it.key());
                } catch (const validation_error& e) {
                    throw validation_error(pat + ".value: " + e.what());
                }
                class_add(v, gi, as_rational(*it, pat + ".value." + it.key()));
            }
            if (!seen.insert({li, ri}).second)
                throw validation_error(pat + ": duplicate product entry");
            if (!v.empty()) t.prod[{li, ri}] = std::move(v);
            ++p;
        }
    }

    // fill what graded commutativity and the unit law determine
    const int n = static_cast<int>(t.gens.size());
    for (const auto& [key, val] : std::map<std::pair<int, int>, ModelClass>(t.prod)) {
        const auto mirror = std::make_pair(key.second, key.first);
        if (t.prod.count(mirror)) continue;
        const bool odd = (t.gens[static_cast<std::size_t>(key.first)].degree % 2) &&
                         (t.gens[static_cast<std::size_t>(key.second)].degree % 2);
        t.prod[mirror] = odd ? class_scale(val, Rational(-1)) : val;
    }
    for (int k = 0; k < n; ++k) {
        ModelClass g{{k, Rational(1)}};
        if (!t.prod.count({0, k})) t.prod[{0, k}] = g;
        if (k != 0 && !t.prod.count({k, 0})) t.prod[{k, 0}] = g;
    }
    try {
        validate_ring_table(t, dim);
    } catch (const validation_error& e) {
        throw validation_error(at + ": " + e.what());
    }
    return t;
}

inline ModelSpace parse_model(const Json& j, const std::string& at) {
    const std::string kind = as_str(member(j, "kind", at), at + ".kind");
    try {
        if (kind == "point") {
            check_keys(j, {"kind"}, at);
            return make_point();
        }
        if (kind == "circle") {
            check_keys(j, {"kind"}, at);
            return make_circle();
        }
        if (kind == "odd_sphere") {
            check_keys(j, {"kind", "dim"}, at);
            return make_odd_sphere(as_int(member(j, "dim", at), at + ".dim"));
        }
        if (kind == "weighted_proj") {
            check_keys(j, {"kind", "weights"}, at);
            return make_weighted_proj(as_int_list(member(j, "weights", at), at + ".weights"));
        }
        if (kind == "product") {
            check_keys(j, {"kind", "factors"}, at);
            const Json& factors = member(j, "factors", at);
            if (!factors.is_array()) throw validation_error(at + ".factors: expected a list");
            std::vector<ModelSpace> fs;
            std::size_t i = 0;
            for (const auto& f : factors) {
                fs.push_back(parse_model(f, at + ".factors[" + std::to_string(i) + "]"));
                ++i;
            }
            return make_product(std::move(fs));
        }
        if (kind == "custom") {
            check_keys(j, {"kind", "name", "dim", "betti", "ring"}, at);
            CustomModel c;
            c.name = opt_member(j, "name", at)
                         ? as_str(*opt_member(j, "name", at), at + ".name")
                         : "custom";
            c.dim = as_int(member(j, "dim", at), at + ".dim");
            if (c.dim < 0) throw validation_error(at + ".dim: negative dimension");
            if (const Json* ring = opt_member(j, "ring", at))
                c.ring = parse_ring_table(*ring, c.dim, at + ".ring");
            if (const Json* betti = opt_member(j, "betti", at)) {
                if (!betti->is_object())
                    throw validation_error(at + ".betti: expected a mapping");
                for (auto it = betti->begin(); it != betti->end(); ++it) {
                    const Rational deg = as_rational(Json(it.key()), at + ".betti");
                    if (!deg.is_integer() || deg < Rational(0) || Rational(c.dim) < deg)
                        throw validation_error(at + ".betti: degree " + it.key() +
                                               " out of range");
                    c.betti.add(deg, as_int(*it, at + ".betti." + it.key()));
                }
            } else if (c.ring) {
                for (const auto& g : c.ring->gens) c.betti.add(Rational(g.degree), 1);
            } else {
                throw validation_error(at + ": custom model needs 'betti' or 'ring'");
            }
            if (c.ring) {
                GradedDims from_ring;
                for (const auto& g : c.ring->gens) from_ring.add(Rational(g.degree), 1);
                if (!(from_ring == c.betti))
                    throw validation_error(at + ": betti data disagrees with the ring table");
            }
            if (c.betti.at(Rational(0)) != 1)
                throw validation_error(at + ": custom model must have a single class in degree 0");
            return ModelSpace{std::move(c)};
        }
    } catch (const validation_error& e) {
        const std::string msg = e.what();
        if (msg.rfind(at, 0) == 0) throw; // already carries a location
        throw validation_error(at + ": " + msg);
    }
    throw validation_error(at + ".kind: unknown model kind '" + kind + "'");
}

inline SectorLabel parse_label(const Json& j, const std::optional<GroupSpec>& group,
                               const std::string& at) {
    if (group) {
        const GroupElement g = as_int_list(j, at);
        try {
            group->check_element(g);
        } catch (const validation_error& e) {
            throw validation_error(at + ": " + e.what());
        }
        return SectorLabel{g};
    }
    const Rational f = as_rational(j, at);
    if (f < Rational(0) || Rational(1) <= f)
        throw validation_error(at + ": rational label must lie in [0, 1)");
    return SectorLabel{f};
}

inline EulerOracle parse_oracle_body(const Json& j, const std::string& at) {
    check_keys(j, {"schema", "kind", "name", "normalization", "on_missing", "entries"}, at);
    EulerOracle o;
    if (const Json* n = opt_member(j, "normalization", at))
        o.normalization = as_str(*n, at + ".normalization");
    if (const Json* m = opt_member(j, "on_missing", at)) {
        const std::string policy = as_str(*m, at + ".on_missing");
        if (policy == "report")
            o.on_missing = MissingPolicy::report;
        else if (policy == "error")
            o.on_missing = MissingPolicy::error;
        else
            throw validation_error(at + ".on_missing: expected 'report' or 'error'");
    }
    const Json& entries = member(j, "entries", at);
    if (!entries.is_array()) throw validation_error(at + ".entries: expected a list");
    std::size_t i = 0;
    for (const auto& entry : entries) {
        const std::string eat = at + ".entries[" + std::to_string(i) + "]";
        check_keys(entry, {"labels", "monomial", "value"}, eat);
        const Json& labels = member(entry, "labels", eat);
        if (!labels.is_array() || labels.size() != 3)
            throw validation_error(eat + ".labels: expected a list of three labels");
        OracleKey key;
        for (int k = 0; k < 3; ++k) {
            const Json& l = labels[static_cast<std::size_t>(k)];
            const std::string lat = eat + ".labels[" + std::to_string(k) + "]";
            if (l.is_array())
                key.labels[static_cast<std::size_t>(k)] = element_string(as_int_list(l, lat));
            else
                key.labels[static_cast<std::size_t>(k)] = as_rational(l, lat).str();
        }
        key.monomial = as_str(member(entry, "monomial", eat), eat + ".monomial");
        try {
            o.insert(key, as_rational(member(entry, "value", eat), eat + ".value"));
        } catch (const oracle_error& e) {
            throw oracle_error(eat + ": " + e.what());
        }
        ++i;
    }
    return o;
}

inline void check_schema(const Json& j, const std::string& at) {
    if (as_int(member(j, "schema", at), at + ".schema") != 1)
        throw validation_error(at + ".schema: unsupported schema version");
}

inline SectorAtlas parse_raw_atlas(const Json& j, const std::string& at) {
    check_keys(j, {"schema", "kind", "name", "ambient_dim", "group", "sectors", "multisectors",
                   "euler_oracle"},
               at);
    SectorAtlas atlas;
    atlas.kind = "raw_atlas";
    atlas.ambient_dim = as_int(member(j, "ambient_dim", at), at + ".ambient_dim");
    if (const Json* g = opt_member(j, "group", at)) {
        GroupSpec spec{as_int_list(*g, at + ".group")};
        try {
            spec.validate();
        } catch (const validation_error& e) {
            throw validation_error(at + ".group: " + e.what());
        }
        atlas.group = std::move(spec);
    }
    const Json& sectors = member(j, "sectors", at);
    if (!sectors.is_array()) throw validation_error(at + ".sectors: expected a list");
    std::size_t i = 0;
    for (const auto& s : sectors) {
        const std::string sat = at + ".sectors[" + std::to_string(i) + "]";
        check_keys(s, {"label", "model", "iota", "weight"}, sat);
        Sector sec;
        sec.label = parse_label(member(s, "label", sat), atlas.group, sat + ".label");
        sec.model = parse_model(member(s, "model", sat), sat + ".model");
        sec.dim = model_dim(sec.model);
        sec.iota = as_rational(member(s, "iota", sat), sat + ".iota");
        sec.weight = as_rational(member(s, "weight", sat), sat + ".weight");
        atlas.sectors.push_back(std::move(sec));
        ++i;
    }
    if (const Json* mss = opt_member(j, "multisectors", at)) {
        if (!mss->is_array()) throw validation_error(at + ".multisectors: expected a list");
        i = 0;
        for (const auto& m : *mss) {
            const std::string mat = at + ".multisectors[" + std::to_string(i) + "]";
            check_keys(m, {"labels", "model", "weight"}, mat);
            MultiSector ms;
            const Json& labels = member(m, "labels", mat);
            if (!labels.is_array() || labels.size() != 3)
                throw validation_error(mat + ".labels: expected a list of three labels");
            for (int k = 0; k < 3; ++k)
                ms.labels[static_cast<std::size_t>(k)] =
                    parse_label(labels[static_cast<std::size_t>(k)], atlas.group,
                                mat + ".labels[" + std::to_string(k) + "]");
            ms.model = parse_model(member(m, "model", mat), mat + ".model");
            ms.dim = model_dim(ms.model);
            if (const Json* w = opt_member(m, "weight", mat))
                ms.weight = as_rational(*w, mat + ".weight");
            else
                ms.weight = atlas.sector(ms.labels[0]).weight;
            atlas.multisectors.push_back(std::move(ms));
            ++i;
        }
    }
    atlas = annotate_multisectors(atlas);
    validate_atlas(atlas);
    return atlas;
}

} // namespace detail

// Parse a document file into the shared JSON value model.
inline Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        try {
            return Json::parse(buffer.str());
        } catch (const Json::exception& e) {
            throw validation_error(path + ": invalid JSON: " + e.what());
        }
    }
    try {
        return detail::yaml_to_json(YAML::Load(buffer.str()), "$");
    } catch (const YAML::Exception& e) {
        throw validation_error(path + ": invalid YAML: " + e.what());
    }
}

// Load an input document describing an orbifold. The returned atlas is
// annotated and validated.
inline InputDocument load_input(const std::string& path) {
    const Json j = parse_file(path);
    try {
        const std::string at = "$";
        detail::check_schema(j, at);
        InputDocument doc;
        doc.kind = detail::as_str(detail::member(j, "kind", at), at + ".kind");
        if (const Json* n = detail::opt_member(j, "name", at))
            doc.name = detail::as_str(*n, at + ".name");
        if (doc.kind == "sphere_quotient") {
            detail::check_keys(
                j, {"schema", "kind", "name", "complex_coords", "group", "weights", "euler_oracle"},
                at);
            SphereQuotientPresentation p;
            p.complex_coords =
                detail::as_int(detail::member(j, "complex_coords", at), at + ".complex_coords");
            p.group = GroupSpec{detail::as_int_list(detail::member(j, "group", at), at + ".group")};
            const Json& rows = detail::member(j, "weights", at);
            if (!rows.is_array()) throw validation_error(at + ".weights: expected a list");
            std::size_t i = 0;
            for (const auto& row : rows) {
                p.weights.push_back(
                    detail::as_int_list(row, at + ".weights[" + std::to_string(i) + "]"));
                ++i;
            }
            doc.atlas = sphere_quotient_atlas(p);
        } else if (doc.kind == "wps_circle") {
            detail::check_keys(j, {"schema", "kind", "name", "weights", "euler_oracle"}, at);
            WpsCirclePresentation p;
            p.weights = detail::as_int_list(detail::member(j, "weights", at), at + ".weights");
            doc.atlas = wps_circle_atlas(p);
        } else if (doc.kind == "raw_atlas") {
            doc.atlas = detail::parse_raw_atlas(j, at);
        } else if (doc.kind == "euler_oracle") {
            throw validation_error(at + ".kind: this document is an oracle, not an orbifold");
        } else {
            throw validation_error(at + ".kind: unknown document kind '" + doc.kind + "'");
        }
        if (const Json* o = detail::opt_member(j, "euler_oracle", at))
            doc.oracle = detail::parse_oracle_body(*o, at + ".euler_oracle");
        return doc;
    } catch (const oracle_error& e) {
        const std::string msg = e.what();
        throw oracle_error(path + ": " + msg);
    } catch (const validation_error& e) {
        const std::string msg = e.what();
        throw validation_error(path + ": " + msg);
    }
}

// Load a standalone Euler-integral oracle document.
inline EulerOracle load_oracle(const std::string& path) {
    const Json j = parse_file(path);
    try {
        const std::string at = "$";
        detail::check_schema(j, at);
        const std::string kind = detail::as_str(detail::member(j, "kind", at), at + ".kind");
        if (kind != "euler_oracle")
            throw validation_error(at + ".kind: expected 'euler_oracle', found '" + kind + "'");
        return detail::parse_oracle_body(j, at);
    } catch (const oracle_error& e) {
        const std::string msg = e.what();
        throw oracle_error(path + ": " + msg);
    } catch (const validation_error& e) {
        const std::string msg = e.what();
        throw validation_error(path + ": " + msg);
    }
}

} // namespace orbicoh

#endif
