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

#include <ostream>
#include <string>
#include <vector>

namespace orbis::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int
{
    success      = 0,
    domain_error = 1,
    usage_error  = 2
};

/// Runs the `orbis` command line with args[0] as program name. Regular output
/// goes to `out`; the log channels are redirected to `out` (debug, info) and
/// `err` (warning, error) for the duration of the call.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

/// Summary of a distributed remap run, as printed by `remap --report`.
struct RemapReport {
    double max_error{0.};
    double rms_error{0.};
    long long messages_during_interpolation{0};
    std::vector<double> values;  // gathered target field, canonical order
};

/// The full remap pipeline on `parts` simulated ranks: blocks distribution of
/// the source, mesh with halo and poles, matching distribution of the target,
/// weights, analytic initialisation, halo exchange, apply, gather.
RemapReport remap_pipeline( const std::string& source, const std::string& target, int parts,
                            const std::string& field_spec, int halo = 2 );

}  // namespace orbis::cli
