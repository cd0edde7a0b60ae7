/// @file model_spaces.hpp
/// Catalog of sector model spaces and their rational cohomology rings.
///
/// Supported spaces: point, circle, odd spheres, weighted projective spaces,
/// finite products of these, and user-supplied custom models (Betti data,
/// optionally a full ring table). All cohomology is with Q coefficients.

#ifndef ORBICOH_MODEL_SPACES_HPP
#define ORBICOH_MODEL_SPACES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbicoh/errors.hpp"
#include "orbicoh/graded_dims.hpp"
#include "orbicoh/rational.hpp"

namespace orbicoh {

// ---------------------------------------------------------------------------
// Ring tables
// ---------------------------------------------------------------------------

struct RingGen {
    std::string label;
    std::int64_t degree = 0;
    friend bool operator==(const RingGen&, const RingGen&) = default;
};

// Linear combination of ring generators, generator index -> coefficient.
using ModelClass = std::map<int, Rational>;

// Multiplication table of a graded-commutative Q-algebra with a chosen
// homogeneous basis. gens[0] is the unit; top_index points at the unique
// generator of maximal degree; top_integral is the integral of that
// generator over the space.
struct RingTable {
    std::vector<RingGen> gens;
    std::map<std::pair<int, int>, ModelClass> prod; // absent entry means zero
    std::int64_t top_degree = 0;
    int top_index = 0;
    Rational top_integral = Rational(1);

    int gen_index(const std::string& label) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].label == label) return static_cast<int>(i);
        throw validation_error("unknown generator label '" + label + "'");
    }

    ModelClass product(int i, int j) const {
        auto it = prod.find({i, j});
        return it == prod.end() ? ModelClass{} : it->second;
    }
};

inline void class_add(ModelClass& into, int gen, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = into.emplace(gen, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) into.erase(it);
    }
}

inline ModelClass class_scale(const ModelClass& a, const Rational& c) {
    ModelClass out;
    if (c.is_zero()) return out;
    for (const auto& [g, x] : a) out.emplace(g, x * c);
    return out;
}

inline ModelClass multiply(const RingTable& t, const ModelClass& a, const ModelClass& b) {
    ModelClass out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b)
            for (const auto& [k, ck] : t.product(i, j)) class_add(out, k, ci * cj * ck);
    return out;
}

// Degree of a homogeneous class; throws on mixed degrees. Zero classes
// report no degree.
inline std::optional<std::int64_t> class_degree(const RingTable& t, const ModelClass& a) {
    std::optional<std::int64_t> deg;
    for (const auto& [i, c] : a) {
        if (c.is_zero()) continue;
        const auto d = t.gens.at(static_cast<std::size_t>(i)).degree;
        if (deg && *deg != d) throw validation_error("class is not homogeneous");
        deg = d;
    }
    return deg;
}

inline Rational top_coefficient(const RingTable& t, const ModelClass& a) {
    auto it = a.find(t.top_index);
    return it == a.end() ? Rational(0) : it->second;
}

// Full finite check of the graded ring axioms on the table's basis.
inline void validate_ring_table(const RingTable& t, std::int64_t dim) {
    if (t.gens.empty()) throw validation_error("ring table: no generators");
    if (t.gens[0].degree != 0) throw validation_error("ring table: gens[0] must have degree 0");
    int zero_count = 0;
    int top_count = 0;
    for (const auto& g : t.gens) {
        if (g.degree < 0 || g.degree > dim)
            throw validation_error("ring table: generator degree out of range");
        if (g.degree == 0) ++zero_count;
        if (g.degree == t.top_degree) ++top_count;
    }
    if (zero_count != 1) throw validation_error("ring table: unit must be the only degree-0 generator");
    if (t.top_degree != dim) throw validation_error("ring table: top degree != model dimension");
    if (top_count != 1) throw validation_error("ring table: top degree must be one-dimensional");
    if (t.gens.at(static_cast<std::size_t>(t.top_index)).degree != t.top_degree)
        throw validation_error("ring table: top_index degree mismatch");
    if (t.top_integral.is_zero()) throw validation_error("ring table: zero top integral");
    const int n = static_cast<int>(t.gens.size());
    for (const auto& [key, val] : t.prod) {
        if (key.first < 0 || key.first >= n || key.second < 0 || key.second >= n)
            throw validation_error("ring table: product key out of range");
        const auto d = t.gens[key.first].degree + t.gens[key.second].degree;
        for (const auto& [k, c] : val) {
            if (k < 0 || k >= n) throw validation_error("ring table: product value out of range");
            if (c.is_zero()) throw validation_error("ring table: stored zero coefficient");
            if (t.gens[k].degree != d)
                throw validation_error("ring table: product violates degree additivity");
        }
    }
    const auto unit = [&]() {
        ModelClass u;
        u.emplace(0, Rational(1));
        return u;
    }();
    for (int i = 0; i < n; ++i) {
        ModelClass gi;
        gi.emplace(i, Rational(1));
        if (multiply(t, unit, gi) != gi || multiply(t, gi, unit) != gi)
            throw validation_error("ring table: unit law fails");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto ij = t.product(i, j);
            auto ji = t.product(j, i);
            const bool odd = (t.gens[i].degree % 2) && (t.gens[j].degree % 2);
            if (odd) ji = class_scale(ji, Rational(-1));
            if (ij != ji) throw validation_error("ring table: graded commutativity fails");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                ModelClass gi, gj, gk;
                gi.emplace(i, Rational(1));
                gj.emplace(j, Rational(1));
                gk.emplace(k, Rational(1));
                if (multiply(t, multiply(t, gi, gj), gk) != multiply(t, gi, multiply(t, gj, gk)))
                    throw validation_error("ring table: associativity fails");
            }
}

// ---------------------------------------------------------------------------
// Model spaces
// ---------------------------------------------------------------------------

struct ModelSpace;

struct PointModel {
    friend bool operator==(const PointModel&, const PointModel&) = default;
};
struct CircleModel {
    friend bool operator==(const CircleModel&, const CircleModel&) = default;
};
struct OddSphereModel {
    std::int64_t dim = 3;
    friend bool operator==(const OddSphereModel&, const OddSphereModel&) = default;
};
struct WeightedProjModel {
    std::vector<std::int64_t> weights; // kept sorted ascending
    friend bool operator==(const WeightedProjModel&, const WeightedProjModel&) = default;
};
struct ProductModel {
    std::vector<ModelSpace> factors; // flattened, at least two entries
    friend bool operator==(const ProductModel&, const ProductModel&);
};
struct CustomModel {
    std::string name;
    std::int64_t dim = 0;
    GradedDims betti;
    std::optional<RingTable> ring; // absent: Betti-level operations only
    friend bool operator==(const CustomModel& a, const CustomModel& b) {
        return a.name == b.name && a.dim == b.dim && a.betti == b.betti;
    }
};

struct ModelSpace {
    std::variant<PointModel, CircleModel, OddSphereModel, WeightedProjModel, ProductModel,
                 CustomModel>
        v;
    friend bool operator==(const ModelSpace&, const ModelSpace&) = default;
};

inline bool operator==(const ProductModel& a, const ProductModel& b) {
    return a.factors == b.factors;
}

inline ModelSpace make_point() { return ModelSpace{PointModel{}}; }
inline ModelSpace make_circle() { return ModelSpace{CircleModel{}}; }

inline ModelSpace make_odd_sphere(std::int64_t dim) {
    if (dim < 1 || dim % 2 == 0) throw validation_error("odd_sphere: dimension must be odd and >= 1");
    if (dim == 1) return make_circle(); // canonical form
    return ModelSpace{OddSphereModel{dim}};
}

inline ModelSpace make_weighted_proj(std::vector<std::int64_t> weights) {
    if (weights.empty()) throw validation_error("weighted_proj: needs at least one weight");
    for (auto w : weights)
        if (w < 1) throw validation_error("weighted_proj: weights must be >= 1");
    std::sort(weights.begin(), weights.end());
    return ModelSpace{WeightedProjModel{std::move(weights)}};
}

// Flattens nested products and collapses single-factor products.
inline ModelSpace make_product(std::vector<ModelSpace> factors) {
    std::vector<ModelSpace> flat;
    for (auto& f : factors) {
        if (auto* p = std::get_if<ProductModel>(&f.v))
            for (auto& g : p->factors) flat.push_back(std::move(g));
        else
            flat.push_back(std::move(f));
    }
    if (flat.empty()) throw validation_error("product: needs at least one factor");
    if (flat.size() == 1) return flat[0];
    return ModelSpace{ProductModel{std::move(flat)}};
}

inline std::int64_t model_dim(const ModelSpace& m) {
    return std::visit(
        [](const auto& x) -> std::int64_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PointModel>) return 0;
            if constexpr (std::is_same_v<T, CircleModel>) return 1;
            if constexpr (std::is_same_v<T, OddSphereModel>) return x.dim;
            if constexpr (std::is_same_v<T, WeightedProjModel>)
                return 2 * (static_cast<std::int64_t>(x.weights.size()) - 1);
            if constexpr (std::is_same_v<T, ProductModel>) {
                std::int64_t d = 0;
                for (const auto& f : x.factors) d += model_dim(f);
                return d;
            }
            if constexpr (std::is_same_v<T, CustomModel>) return x.dim;
        },
        m.v);
}

inline std::string model_string(const ModelSpace& m) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PointModel>) return "pt";
            if constexpr (std::is_same_v<T, CircleModel>) return "S^1";
            if constexpr (std::is_same_v<T, OddSphereModel>)
                return "S^" + std::to_string(x.dim);
            if constexpr (std::is_same_v<T, WeightedProjModel>) {
                std::string s = "P(";
                for (std::size_t i = 0; i < x.weights.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(x.weights[i]);
                }
                return s + ")";
            }
            if constexpr (std::is_same_v<T, ProductModel>) {
                std::string s;
                for (std::size_t i = 0; i < x.factors.size(); ++i) {
                    if (i) s += "×";
                    s += model_string(x.factors[i]);
                }
                return s;
            }
            if constexpr (std::is_same_v<T, CustomModel>) return "custom(" + x.name + ")";
        },
        m.v);
}

// Rational Betti numbers as a GradedDims over integer degrees.
inline GradedDims betti(const ModelSpace& m) {
    return std::visit(
        [](const auto& x) -> GradedDims {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PointModel>) return GradedDims{{Rational(0), 1}};
            if constexpr (std::is_same_v<T, CircleModel>)
                return GradedDims{{Rational(0), 1}, {Rational(1), 1}};
            if constexpr (std::is_same_v<T, OddSphereModel>)
                return GradedDims{{Rational(0), 1}, {Rational(x.dim), 1}};
            if constexpr (std::is_same_v<T, WeightedProjModel>) {
                // Same rational cohomology as ordinary projective space of
                // equal dimension, whatever the weights.
                GradedDims d;
                for (std::size_t i = 0; i < x.weights.size(); ++i)
                    d.add(Rational(2 * static_cast<std::int64_t>(i)), 1);
                return d;
            }
            if constexpr (std::is_same_v<T, ProductModel>) {
                GradedDims d{{Rational(0), 1}};
                for (const auto& f : x.factors) d = convolve(d, betti(f));
                return d;
            }
            if constexpr (std::is_same_v<T, CustomModel>) return x.betti;
        },
        m.v);
}

// ---------------------------------------------------------------------------
// Ring table construction
// ---------------------------------------------------------------------------

namespace detail {

inline RingTable two_class_table(const std::string& top_label, std::int64_t top_degree) {
    RingTable t;
    t.gens = {RingGen{"1", 0}, RingGen{top_label, top_degree}};
    t.prod[{0, 0}] = ModelClass{{0, Rational(1)}};
    t.prod[{0, 1}] = ModelClass{{1, Rational(1)}};
    t.prod[{1, 0}] = ModelClass{{1, Rational(1)}};
    // top * top vanishes
    t.top_degree = top_degree;
    t.top_index = 1;
    t.top_integral = Rational(1);
    return t;
}

inline RingTable weighted_proj_table(const std::vector<std::int64_t>& weights) {
    const int k = static_cast<int>(weights.size()) - 1;
    RingTable t;
    for (int i = 0; i <= k; ++i) {
        std::string label = i == 0 ? "1" : (i == 1 ? "h" : "h^" + std::to_string(i));
        t.gens.push_back(RingGen{label, 2 * i});
    }
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            if (i + j <= k) t.prod[{i, j}] = ModelClass{{i + j, Rational(1)}};
    t.top_degree = 2 * k;
    t.top_index = k;
    // Hyperplane normalization: the integral of h^k is 1/(w_0 * ... * w_k).
    Integer p = 1;
    for (auto w : weights) p *= w;
    t.top_integral = Rational(Integer(1), p);
    return t;
}

// Graded tensor product of ring tables with Koszul signs.
inline RingTable tensor_table(const std::vector<RingTable>& factors) {
    RingTable t;
    std::vector<std::vector<int>> tuples; // generator index per factor
    {
        std::vector<int> cur(factors.size(), 0);
        while (true) {
            tuples.push_back(cur);
            std::size_t i = factors.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++cur[i] < static_cast<int>(factors[i].gens.size())) {
                    done = false;
                    break;
                }
                cur[i] = 0;
            }
            if (done) break;
        }
    }
    std::map<std::vector<int>, int> index_of;
    for (const auto& tup : tuples) {
        std::string label;
        std::int64_t degree = 0;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (f) label += "⊗";
            label += factors[f].gens[tup[f]].label;
            degree += factors[f].gens[tup[f]].degree;
        }
        index_of[tup] = static_cast<int>(t.gens.size());
        t.gens.push_back(RingGen{label, degree});
    }
    const auto degree_of = [&](const std::vector<int>& tup, std::size_t f) {
        return factors[f].gens[tup[f]].degree;
    };
    for (std::size_t a = 0; a < tuples.size(); ++a)
        for (std::size_t b = 0; b < tuples.size(); ++b) {
            const auto& x = tuples[a];
            const auto& y = tuples[b];
            // sign from moving each y_i across x_j with j > i
            std::int64_t sign_exp = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                std::int64_t later = 0;
                for (std::size_t j = i + 1; j < factors.size(); ++j) later += degree_of(x, j);
                sign_exp += degree_of(y, i) * later;
            }
            const Rational sign = (sign_exp % 2) ? Rational(-1) : Rational(1);
            // factorwise products, then expand the tensor of linear combos
            std::vector<ModelClass> parts(factors.size());
            bool zero = false;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                parts[f] = factors[f].product(x[f], y[f]);
                if (parts[f].empty()) zero = true;
            }
            if (zero) continue;
            ModelClass result;
            std::vector<std::pair<std::vector<int>, Rational>> expansion{{{}, sign}};
            for (std::size_t f = 0; f < factors.size(); ++f) {
                std::vector<std::pair<std::vector<int>, Rational>> next;
                for (const auto& [tup, coeff] : expansion)
                    for (const auto& [g, c] : parts[f]) {
                        auto t2 = tup;
                        t2.push_back(g);
                        next.emplace_back(std::move(t2), coeff * c);
                    }
                expansion = std::move(next);
            }
            for (const auto& [tup, coeff] : expansion) class_add(result, index_of.at(tup), coeff);
            if (!result.empty()) t.prod[{static_cast<int>(a), static_cast<int>(b)}] = result;
        }
    std::vector<int> top_tuple;
    t.top_degree = 0;
    t.top_integral = Rational(1);
    for (std::size_t f = 0; f < factors.size(); ++f) {
        top_tuple.push_back(factors[f].top_index);
        t.top_degree += factors[f].top_degree;
        t.top_integral *= factors[f].top_integral;
    }
    t.top_index = index_of.at(top_tuple);
    return t;
}

} // namespace detail

// Canonical multiplication table for a catalog model. Custom models must
// carry their own ring data or this throws.
inline RingTable ring_table(const ModelSpace& m) {
    return std::visit(
        [](const auto& x) -> RingTable {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PointModel>) {
                RingTable t;
                t.gens = {RingGen{"1", 0}};
                t.prod[{0, 0}] = ModelClass{{0, Rational(1)}};
                t.top_degree = 0;
                t.top_index = 0;
                t.top_integral = Rational(1);
                return t;
            }
            if constexpr (std::is_same_v<T, CircleModel>) return detail::two_class_table("s", 1);
            if constexpr (std::is_same_v<T, OddSphereModel>)
                return detail::two_class_table("v", x.dim);
            if constexpr (std::is_same_v<T, WeightedProjModel>)
                return detail::weighted_proj_table(x.weights);
            if constexpr (std::is_same_v<T, ProductModel>) {
                std::vector<RingTable> parts;
                parts.reserve(x.factors.size());
                for (const auto& f : x.factors) parts.push_back(ring_table(f));
                return detail::tensor_table(parts);
            }
            if constexpr (std::is_same_v<T, CustomModel>) {
                if (!x.ring)
                    throw validation_error("custom model '" + x.name +
                                           "' carries no ring data; ring operations unsupported");
                return *x.ring;
            }
        },
        m.v);
}

// ---------------------------------------------------------------------------
// Restriction maps
// ---------------------------------------------------------------------------

// Degree-preserving map of canonical generators induced by including `sub`
// into `ambient` as a catalog-recognized face. image[i] is the generator of
// `sub` that ambient generator i restricts to, or -1 for zero.
struct RestrictionMap {
    std::vector<int> image;

    ModelClass apply(const ModelClass& a) const {
        ModelClass out;
        for (const auto& [i, c] : a) {
            const int j = image.at(static_cast<std::size_t>(i));
            if (j >= 0) class_add(out, j, c);
        }
        return out;
    }
};

namespace detail {

inline bool weights_sub_multiset(const std::vector<std::int64_t>& sub,
                                 const std::vector<std::int64_t>& ambient) {
    // both sorted
    std::size_t i = 0;
    for (auto w : ambient) {
        if (i < sub.size() && sub[i] == w) ++i;
    }
    return i == sub.size();
}

} // namespace detail

inline RestrictionMap restriction_map(const ModelSpace& ambient, const ModelSpace& sub) {
    const auto unsupported = [&]() -> validation_error {
        return validation_error("unsupported restriction: " + model_string(ambient) + " -> " +
                                model_string(sub));
    };

    if (ambient == sub) {
        RestrictionMap r;
        const auto n = ring_table(ambient).gens.size();
        for (std::size_t i = 0; i < n; ++i) r.image.push_back(static_cast<int>(i));
        return r;
    }

    // everything restricts to a point: only the unit survives
    if (std::holds_alternative<PointModel>(sub.v)) {
        RestrictionMap r;
        const auto table = ring_table(ambient);
        for (const auto& g : table.gens) r.image.push_back(g.degree == 0 ? 0 : -1);
        return r;
    }

    // spheres and circles: the smaller sphere kills the top class
    const bool amb_sphere =
        std::holds_alternative<OddSphereModel>(ambient.v) || std::holds_alternative<CircleModel>(ambient.v);
    const bool sub_sphere =
        std::holds_alternative<OddSphereModel>(sub.v) || std::holds_alternative<CircleModel>(sub.v);
    if (amb_sphere && sub_sphere) {
        if (model_dim(sub) > model_dim(ambient)) throw unsupported();
        // dims differ here since equal models were handled above
        return RestrictionMap{{0, -1}};
    }

    if (const auto* wa = std::get_if<WeightedProjModel>(&ambient.v)) {
        if (const auto* ws = std::get_if<WeightedProjModel>(&sub.v)) {
            if (!detail::weights_sub_multiset(ws->weights, wa->weights)) throw unsupported();
            const int k_sub = static_cast<int>(ws->weights.size()) - 1;
            RestrictionMap r;
            for (std::size_t i = 0; i < wa->weights.size(); ++i)
                r.image.push_back(static_cast<int>(i) <= k_sub ? static_cast<int>(i) : -1);
            return r;
        }
        throw unsupported();
    }

    if (const auto* pa = std::get_if<ProductModel>(&ambient.v)) {
        const auto* ps = std::get_if<ProductModel>(&sub.v);
        if (!ps || ps->factors.size() != pa->factors.size()) throw unsupported();
        std::vector<RestrictionMap> parts;
        std::vector<RingTable> amb_tables, sub_tables;
        for (std::size_t f = 0; f < pa->factors.size(); ++f) {
            parts.push_back(restriction_map(pa->factors[f], ps->factors[f]));
            amb_tables.push_back(ring_table(pa->factors[f]));
            sub_tables.push_back(ring_table(ps->factors[f]));
        }
        // tensor generator tuples enumerate exactly as in tensor_table
        RestrictionMap r;
        std::vector<int> cur(pa->factors.size(), 0);
        while (true) {
            int mapped = 0;
            bool dead = false;
            // recompute the sub tuple index in mixed radix
            std::vector<int> sub_tuple(cur.size());
            for (std::size_t f = 0; f < cur.size(); ++f) {
                const int j = parts[f].image.at(static_cast<std::size_t>(cur[f]));
                if (j < 0) {
                    dead = true;
                    break;
                }
                sub_tuple[f] = j;
            }
            if (dead) {
                r.image.push_back(-1);
            } else {
                for (std::size_t f = 0; f < cur.size(); ++f)
                    mapped = mapped * static_cast<int>(sub_tables[f].gens.size()) + sub_tuple[f];
                r.image.push_back(mapped);
            }
            std::size_t i = cur.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++cur[i] < static_cast<int>(amb_tables[i].gens.size())) {
                    done = false;
                    break;
                }
                cur[i] = 0;
            }
            if (done) break;
        }
        return r;
    }

    throw unsupported();
}

} // namespace orbicoh

#endif
