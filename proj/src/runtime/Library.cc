/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/runtime/Library.h"

#include <cstdlib>
#include <sstream>

#include "orbis/kernels/Kernels.h"
#include "orbis/library/version.h"
#include "orbis/runtime/Exception.h"
#include "orbis/runtime/Log.h"

namespace orbis {

std::string library_version() {
    return ORBIS_VERSION_STR;
}

std::string library_build_id() {
    return ORBIS_GIT_SHA1;
}

std::vector<std::pair<std::string, bool>> library_features() {
    return {{"OpenMP", kernels::openmp_enabled()},
            {"BoundsChecking", false},
            {"RankSimulator", true},
            {"DeviceMirror", true},
            {"Tessellation", true}};
}

std::string library_info() {
    std::ostringstream out;
    out << "orbis version (" << library_version() << "), git (" << library_build_id() << ")\n";
    out << "\n";
    out << "Build:\n";
    out << "  build type      : " << ORBIS_BUILD_TYPE << "\n";
    out << "  timestamp       : " << ORBIS_BUILD_TIMESTAMP << "\n";
    out << "  op. system      : " << ORBIS_SYSTEM_NAME << "\n";
    out << "  processor       : " << ORBIS_SYSTEM_PROCESSOR << "\n";
    out << "  c++ compiler    : " << ORBIS_CXX_COMPILER << "\n";
    out << "  flags           : " << ORBIS_CXX_FLAGS << "\n";
    out << "\n";
    out << "Features:\n";
    for ( const auto& [name, on] : library_features() ) {
        out << "  " << name << std::string( name.size() < 15 ? 15 - name.size() : 0, ' ' ) << ": "
            << ( on ? "ON" : "OFF" ) << "\n";
    }
    out << "  gidx_t         : 64 bit integer\n";
    out << "\n";
    out << "Dependencies:\n";
    out << "  none\n";
    return out.str();
}

Library& Library::instance() {
    static Library library;
    return library;
}

const RuntimeConfig& Library::initialise( int argc, char** argv ) {
    if ( initialised_ ) {
        throw DoubleInitialise( "orbis library already initialised" );
    }
    RuntimeConfig config;
    if ( const char* env = std::getenv( debug_environment_variable ) ) {
        config.debug = std::atoi( env ) != 0;
    }
    config.version    = library_version();
    config.build_id   = library_build_id();
    config.features   = library_features();
    config.executable = ( argc > 0 && argv && argv[0] ) ? argv[0] : "";

    Log::debug().enable( config.debug );
    Log::debug() << "orbis version (" << config.version << "), git (" << config.build_id << ")" << std::endl;
    Log::debug() << "executable: " << config.executable << std::endl;

    config_      = std::move( config );
    initialised_ = true;
    return config_;
}

void Library::finalise() {
    Log::debug() << "finalising orbis" << std::endl;
    Log::debug().flush();
    Log::info().flush();
    Log::warning().flush();
    Log::error().flush();
    initialised_ = false;
}

}  // namespace orbis
