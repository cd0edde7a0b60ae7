/// @file graded_dims.hpp
/// Finitely supported dimension functions on rational degrees.

#ifndef ORBICOH_GRADED_DIMS_HPP
#define ORBICOH_GRADED_DIMS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "orbicoh/errors.hpp"
#include "orbicoh/rational.hpp"

namespace orbicoh {

// Map degree -> dimension. Invariant: no zero entries are stored, so
// equality of the underlying maps is equality of graded dimensions.
class GradedDims {
  public:
    using Map = std::map<Rational, std::int64_t>;

    GradedDims() = default;
    GradedDims(std::initializer_list<Map::value_type> init) {
        for (const auto& [deg, dim] : init) add(deg, dim);
    }

    void add(const Rational& degree, std::int64_t dim) {
        if (dim == 0) return;
        if (dim < 0) throw validation_error("GradedDims: negative dimension");
        map_[degree] += dim;
        if (map_[degree] == 0) map_.erase(degree);
    }

    std::int64_t at(const Rational& degree) const {
        auto it = map_.find(degree);
        return it == map_.end() ? 0 : it->second;
    }

    const Map& entries() const { return map_; }
    bool empty() const { return map_.empty(); }

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& [deg, dim] : map_) t += dim;
        return t;
    }

    friend bool operator==(const GradedDims& a, const GradedDims& b) { return a.map_ == b.map_; }

    friend GradedDims operator+(const GradedDims& a, const GradedDims& b) {
        GradedDims out = a;
        for (const auto& [deg, dim] : b.map_) out.add(deg, dim);
        return out;
    }

  private:
    Map map_;
};

// Translates every degree by s. Invertible: shift(shift(d, s), -s) == d.
inline GradedDims shift(const GradedDims& d, const Rational& s) {
    GradedDims out;
    for (const auto& [deg, dim] : d.entries()) out.add(deg + s, dim);
    return out;
}

// Kuenneth convolution: dimensions of a graded tensor product.
inline GradedDims convolve(const GradedDims& a, const GradedDims& b) {
    GradedDims out;
    for (const auto& [da, na] : a.entries())
        for (const auto& [db, nb] : b.entries()) out.add(da + db, na * nb);
    return out;
}

// True when dim(d) == dim(top - d) for every degree.
inline bool symmetric_about(const GradedDims& d, const Rational& half_top_doubled) {
    // half_top_doubled is the full reflection degree: d pairs with (it - d).
    for (const auto& [deg, dim] : d.entries())
        if (d.at(half_top_doubled - deg) != dim) return false;
    return true;
}

// Renders a Poincare series, smallest degree first. Conventions:
// empty -> "0"; coefficient 1 omitted except in degree 0; degree 0 term has
// no "t"; degree 1 renders "t"; fractional exponents are braced.
// Distinct GradedDims always render to distinct strings.
inline std::string series_string(const GradedDims& d) {
    if (d.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [deg, dim] : d.entries()) {
        if (!first) out += " + ";
        first = false;
        std::string term;
        if (deg.is_zero()) {
            term = std::to_string(dim);
        } else {
            if (dim != 1) term = std::to_string(dim) + "*";
            if (deg == Rational(1)) {
                term += "t";
            } else if (deg.is_integer()) {
                term += "t^" + deg.str();
            } else {
                term += "t^{" + deg.str() + "}";
            }
        }
        out += term;
    }
    return out;
}

} // namespace orbicoh

#endif
