/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace orbis {

struct RuntimeConfig {
    bool debug{false};
    std::string version;
    std::string build_id;
    std::string executable;
    std::vector<std::pair<std::string, bool>> features;
};

/// Name of the environment variable switching the debug channel:
/// "1" enables it, "0" or unset disables it.
inline constexpr const char* debug_environment_variable = "ORBIS_DEBUG";

std::string library_version();
std::string library_build_id();
std::vector<std::pair<std::string, bool>> library_features();

/// Multi-line installation summary with Build, Features and Dependencies sections.
std::string library_info();

class Library {
public:
    static Library& instance();

    /// Configures the log channels from the environment. With debug enabled,
    /// logs version, build id and executable path on the debug channel.
    /// @throws DoubleInitialise
    const RuntimeConfig& initialise( int argc = 0, char** argv = nullptr );

    /// Flushes all channels; initialise may be called again afterwards.
    void finalise();

    bool initialised() const { return initialised_; }
    const RuntimeConfig& config() const { return config_; }

private:
    Library() = default;
    bool initialised_{false};
    RuntimeConfig config_;
};

}  // namespace orbis
