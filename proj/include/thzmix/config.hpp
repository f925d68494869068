#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thzmix/medium.hpp"

namespace thzmix {

// Resolved scenario configuration. Parsed from a line-oriented key/value file
// with [section] headers (see docs in README); a `preset` key in [scenario]
// merges the named built-in preset first, then applies the file's own keys.
struct ScenarioConfig {
    std::string name;

    // [medium] — rates in 1/s, wavelengths in nm, density in 1/cm^3
    double gamma31 = 0, gamma32 = 0, gamma21 = 0, Gamma = 0;
    double lambda31_nm = 0, lambda32_nm = 0;
    double density_cm3 = 0, temperature_K = 0, mass_amu = 0;

    // [fields] — Rabi frequencies and detunings in units of gamma31, or
    // intensities in W/cm^2 (exactly one of the two families per field pair)
    std::optional<double> g31, g32, gT;          // units of gamma31
    std::optional<double> I31, I32, IT;          // W/cm^2
    double Phi = 0.0;                            // rad
    double delta31 = 0.0, delta32 = 0.0;         // units of gamma31

    // [run]
    double tau_span = 0.0;       // full path length (dimensionless)
    std::optional<double> zeta_span;  // reduced/analytic length; derived from
                                      // tau_span when absent
    int samples = 201;
    int velocity_nodes = 64;
    double rtol_full = 1e-7;
    double rtol_reduced = 1e-9;
    bool cache_polarization = true;

    AtomicMedium medium() const;
    FieldState initial_fields(const AtomicMedium& m) const;  // resolves g vs I

    // Canonical text form of the resolved config (sorted keys); hashing this
    // yields the manifest's config hash.
    std::string canonical_text() const;
};

// Parses the documented schema; throws ConfigError with line context on
// unknown sections/keys, duplicate keys, or malformed values.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& originLabel);

// Built-in presets encoding the Mg vapor scenarios.
std::vector<std::string> preset_names();
const std::string& preset_text(const std::string& name);  // throws ConfigError if unknown
ScenarioConfig preset_config(const std::string& name);

// FNV-1a 64-bit hash, used for config hashes and the frozen preset checksums.
std::uint64_t fnv1a64(const std::string& data);

}  // namespace thzmix
