#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mafrac/potential.hpp"

namespace mafrac {

/// Raised for malformed or invalid experiment configurations; the message
/// names the offending key and constraint.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment description read from flat key = value text with [section]
/// headers. Unknown keys are rejected; every numeric field is validated
/// against the preconditions of the operation it feeds.
///
/// Sections and keys:
///   [potential] kind (quad | perturbed_quad | power1d), dim, c
///   [section]   x0 (comma list), R, resolution
///   [fractional] s (comma list), route (spectral | semigroup | extension)
///   [run]       suites (comma list), out, seed
struct ExperimentConfig {
    std::string kind = "quad";
    int dim = 1;
    double c = 1.0; ///< preset parameter: coefficient, perturbation, or power

    Vec x0;                ///< section center; defaults to the origin of dim
    double R = 0.5;
    int resolution = 300;

    std::vector<double> s_values = {0.5};
    std::string route = "spectral";

    std::vector<std::string> suites; ///< empty list runs nothing but the summary
    std::string out_dir = "out";
    unsigned long long seed = 1;

    /// Instantiates the configured potential preset.
    Potential make_potential() const;
};

/// Parses and validates a configuration. Throws ConfigError with a line
/// reference on malformed input, unknown keys, or constraint violations.
ExperimentConfig parse_config(std::istream& in);

/// File variant of parse_config; an unreadable path is a ConfigError.
ExperimentConfig parse_config_file(const std::string& path);

} // namespace mafrac
