#include "chipnoise/units.hpp"

#include <map>
#include <utility>

#include "chipnoise/constants.hpp"
#include "chipnoise/errors.hpp"

namespace chipnoise {

namespace {

using UnitTable = std::map<std::string, double>;

const UnitTable& table_for(Dimension dim) {
    using namespace constants;
    static const UnitTable current{{"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}};
    static const UnitTable field{{"T", 1.0},  {"mT", 1e-3}, {"uT", 1e-6},
                                 {"nT", 1e-9}, {"G", 1e-4},  {"mG", 1e-7},
                                 {"pT", 1e-12}};
    static const UnitTable length{{"m", 1.0},   {"cm", 1e-2}, {"mm", 1e-3},
                                  {"um", 1e-6}, {"nm", 1e-9}};
    static const UnitTable mass{{"kg", 1.0}, {"g", 1e-3}, {"amu", amu}};
    static const UnitTable temperature{
        {"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}, {"nK", 1e-9}};
    static const UnitTable frequency{{"rad/s", 1.0},
                                     {"Hz", two_pi},
                                     {"kHz", two_pi * 1e3},
                                     {"MHz", two_pi * 1e6},
                                     {"GHz", two_pi * 1e9}};
    static const UnitTable resistivity{
        {"Ohm.m", 1.0},     {"Ohm*m", 1.0},     {"ohm.m", 1.0},
        {"Ohm.cm", 1e-2},   {"Ohm*cm", 1e-2},   {"ohm.cm", 1e-2},
        {"uOhm.cm", 1e-8},  {"uOhm*cm", 1e-8}};
    static const UnitTable moment{{"J/T", 1.0}, {"muB", muB}};
    static const UnitTable velocity{{"m/s", 1.0}, {"km/s", 1e3}};
    static const UnitTable acceleration{{"m/s^2", 1.0}, {"m/s2", 1.0}};
    static const UnitTable dimensionless{{"", 1.0}, {"1", 1.0}};
    switch (dim) {
        case Dimension::current: return current;
        case Dimension::magnetic_field: return field;
        case Dimension::length: return length;
        case Dimension::mass: return mass;
        case Dimension::temperature: return temperature;
        case Dimension::frequency: return frequency;
        case Dimension::resistivity: return resistivity;
        case Dimension::magnetic_moment: return moment;
        case Dimension::velocity: return velocity;
        case Dimension::acceleration: return acceleration;
        case Dimension::dimensionless: return dimensionless;
    }
    return dimensionless;
}

}  // namespace

double convert_to_si(double value, const std::string& unit, Dimension dim) {
    const UnitTable& table = table_for(dim);
    // a bare number is accepted for every dimension as already-SI
    if (unit.empty()) return value;
    auto it = table.find(unit);
    if (it == table.end())
        throw ConfigError("unparseable unit '" + unit + "' for a " +
                          dimension_name(dim) + " value");
    return value * it->second;
}

const char* dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::current: return "current";
        case Dimension::magnetic_field: return "magnetic-field";
        case Dimension::length: return "length";
        case Dimension::mass: return "mass";
        case Dimension::temperature: return "temperature";
        case Dimension::frequency: return "frequency";
        case Dimension::resistivity: return "resistivity";
        case Dimension::magnetic_moment: return "magnetic-moment";
        case Dimension::velocity: return "velocity";
        case Dimension::acceleration: return "acceleration";
        case Dimension::dimensionless: return "dimensionless";
    }
    return "unknown";
}

}  // namespace chipnoise
