#ifndef ORBICOH_ERRORS_HPP
#define ORBICOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbicoh {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad input: malformed elements, schema violations, inconsistent atlases,
// unsupported restrictions, oracle entries that do not validate.
struct validation_error : error {
    explicit validation_error(const std::string& what) : error(what) {}
};

// A structural check that should hold for every valid atlas failed at
// computation time (for example a singular pairing block).
struct duality_error : error {
    explicit duality_error(const std::string& what) : error(what) {}
};

// Oracle table problems: inconsistent degree, unknown multisector key,
// conflicting duplicate entries.
struct oracle_error : validation_error {
    explicit oracle_error(const std::string& what) : validation_error(what) {}
};

} // namespace orbicoh

#endif
