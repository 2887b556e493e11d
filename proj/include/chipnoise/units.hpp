#ifndef CHIPNOISE_UNITS_HPP
#define CHIPNOISE_UNITS_HPP

#include <string>

// Unit handling for the config boundary. Everything converts to SI on
// input; frequencies convert to angular frequency (Hz-family units pick
// up a factor 2 pi, rad/s passes through).

namespace chipnoise {

enum class Dimension {
    current,
    magnetic_field,
    length,
    mass,
    temperature,
    frequency,
    resistivity,
    magnetic_moment,
    velocity,
    acceleration,
    dimensionless,
};

// Throws ConfigError for a unit that does not belong to the dimension.
double convert_to_si(double value, const std::string& unit, Dimension dim);

// Human-readable dimension name for error messages.
const char* dimension_name(Dimension dim);

}  // namespace chipnoise

#endif
