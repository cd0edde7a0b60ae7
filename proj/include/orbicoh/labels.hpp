/// @file labels.hpp
/// Sector labels: group elements for finite quotients, or elements of Q/Z
/// (rationals in [0,1)) for weighted projective circle families.

#ifndef ORBICOH_LABELS_HPP
#define ORBICOH_LABELS_HPP

#include <optional>
#include <string>
#include <variant>

#include "orbicoh/groups.hpp"
#include "orbicoh/rational.hpp"

namespace orbicoh {

using SectorLabel = std::variant<GroupElement, Rational>;

inline bool is_identity_label(const SectorLabel& l) {
    if (const auto* g = std::get_if<GroupElement>(&l)) return is_identity(*g);
    return std::get<Rational>(l).is_zero();
}

inline std::string label_string(const SectorLabel& l) {
    if (const auto* g = std::get_if<GroupElement>(&l)) return element_string(*g);
    return std::get<Rational>(l).str();
}

// Strict weak order usable as a map key. Atlases never mix label kinds.
inline bool label_less(const SectorLabel& a, const SectorLabel& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (const auto* g = std::get_if<GroupElement>(&a))
        return *g < std::get<GroupElement>(b);
    return std::get<Rational>(a) < std::get<Rational>(b);
}

struct LabelLess {
    bool operator()(const SectorLabel& a, const SectorLabel& b) const { return label_less(a, b); }
};

// Label arithmetic. Group labels need the group; rational labels live in Q/Z.
class LabelAlgebra {
  public:
    explicit LabelAlgebra(std::optional<GroupSpec> group) : group_(std::move(group)) {}

    SectorLabel multiply(const SectorLabel& a, const SectorLabel& b) const {
        if (const auto* g = std::get_if<GroupElement>(&a))
            return orbicoh::multiply(require_group(), *g, std::get<GroupElement>(b));
        return frac(std::get<Rational>(a) + std::get<Rational>(b));
    }

    SectorLabel inverse(const SectorLabel& a) const {
        if (const auto* g = std::get_if<GroupElement>(&a))
            return orbicoh::inverse(require_group(), *g);
        return frac(-std::get<Rational>(a));
    }

    // Order of the cyclic subgroup generated by one label. For a rational
    // f in lowest terms this is its denominator.
    std::int64_t order(const SectorLabel& a) const {
        if (const auto* g = std::get_if<GroupElement>(&a))
            return element_order(require_group(), *g);
        return static_cast<std::int64_t>(std::get<Rational>(a).den());
    }

    // |<a, b>|: closure for group labels, lcm of denominators in Q/Z.
    std::int64_t subgroup_order(const SectorLabel& a, const SectorLabel& b) const {
        if (const auto* g = std::get_if<GroupElement>(&a))
            return orbicoh::subgroup_order(require_group(), {*g, std::get<GroupElement>(b)});
        return std::lcm(order(a), order(b));
    }

  private:
    const GroupSpec& require_group() const {
        if (!group_) throw validation_error("group label used in an atlas without a group");
        return *group_;
    }

    std::optional<GroupSpec> group_;
};

} // namespace orbicoh

#endif
