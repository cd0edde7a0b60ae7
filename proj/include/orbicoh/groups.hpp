/// @file groups.hpp
/// Finite abelian groups presented as products of cyclic factors.

#ifndef ORBICOH_GROUPS_HPP
#define ORBICOH_GROUPS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "orbicoh/errors.hpp"

namespace orbicoh {

// Element of Z_{n_1} x ... x Z_{n_k}, one residue per factor.
using GroupElement = std::vector<std::int64_t>;

struct GroupSpec {
    std::vector<std::int64_t> cyclic_orders;

    std::size_t rank() const { return cyclic_orders.size(); }

    std::int64_t order() const {
        std::int64_t n = 1;
        for (auto m : cyclic_orders) n *= m;
        return n;
    }

    GroupElement identity() const { return GroupElement(rank(), 0); }

    void validate() const {
        for (auto m : cyclic_orders)
            if (m < 1) throw validation_error("GroupSpec: cyclic orders must be >= 1");
    }

    void check_element(const GroupElement& g) const {
        if (g.size() != rank())
            throw validation_error("group element has " + std::to_string(g.size()) +
                                   " residues, group has rank " + std::to_string(rank()));
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] < 0 || g[i] >= cyclic_orders[i])
                throw validation_error("group element residue out of range");
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.cyclic_orders == b.cyclic_orders;
    }
};

inline GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    spec.check_element(a);
    spec.check_element(b);
    GroupElement out(spec.rank());
    for (std::size_t i = 0; i < spec.rank(); ++i)
        out[i] = (a[i] + b[i]) % spec.cyclic_orders[i];
    return out;
}

inline GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
    spec.check_element(g);
    GroupElement out(spec.rank());
    for (std::size_t i = 0; i < spec.rank(); ++i)
        out[i] = (spec.cyclic_orders[i] - g[i]) % spec.cyclic_orders[i];
    return out;
}

inline bool is_identity(const GroupElement& g) {
    return std::all_of(g.begin(), g.end(), [](std::int64_t r) { return r == 0; });
}

// Order of a single element: lcm over factors of n_i / gcd(n_i, r_i).
inline std::int64_t element_order(const GroupSpec& spec, const GroupElement& g) {
    spec.check_element(g);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < spec.rank(); ++i)
        ord = std::lcm(ord, spec.cyclic_orders[i] / std::gcd(spec.cyclic_orders[i], g[i]));
    return ord;
}

// Order of the subgroup generated by the given elements, by closure.
inline std::int64_t subgroup_order(const GroupSpec& spec, const std::vector<GroupElement>& gens) {
    for (const auto& g : gens) spec.check_element(g);
    std::set<GroupElement> closure;
    closure.insert(spec.identity());
    std::vector<GroupElement> frontier{spec.identity()};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                GroupElement y = multiply(spec, x, g);
                if (closure.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return static_cast<std::int64_t>(closure.size());
}

// Ordered triple with g1 * g2 * g3 = identity.
struct Triple {
    GroupElement g1, g2, g3;
    friend bool operator==(const Triple& a, const Triple& b) {
        return a.g1 == b.g1 && a.g2 == b.g2 && a.g3 == b.g3;
    }
};

inline std::vector<GroupElement> enumerate_elements(const GroupSpec& spec) {
    spec.validate();
    std::vector<GroupElement> out;
    GroupElement cur(spec.rank(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = spec.rank();
        while (i > 0) {
            --i;
            if (++cur[i] < spec.cyclic_orders[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (spec.rank() == 0) return out;
    }
}

// All |G|^2 triples (a, b, (ab)^-1) in lexicographic (a, b) order.
inline std::vector<Triple> enumerate_triples(const GroupSpec& spec) {
    const auto elements = enumerate_elements(spec);
    std::vector<Triple> out;
    out.reserve(elements.size() * elements.size());
    for (const auto& a : elements)
        for (const auto& b : elements)
            out.push_back(Triple{a, b, inverse(spec, multiply(spec, a, b))});
    return out;
}

// "0", "2" for rank-1 groups, "(1,0)" otherwise.
inline std::string element_string(const GroupElement& g) {
    if (g.size() == 1) return std::to_string(g[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g[i]);
    }
    return s + ")";
}

} // namespace orbicoh

#endif
