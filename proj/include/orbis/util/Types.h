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

#include <cstdint>

namespace orbis {

/// Global point index, 0-based, unique per grid point.
using gidx_t = std::int64_t;

/// Local (per-partition) index.
using idx_t = std::int32_t;

/// Execution policy for data-parallel kernels. `Serial` is the reference path.
enum class Execution
{
    Serial,
    Parallel
};

}  // namespace orbis
