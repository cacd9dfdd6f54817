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

#include <optional>
#include <span>

#include "orbis/interp/Locator.h"
#include "orbis/util/Types.h"

namespace orbis::kernels {

using Location = ElementLocator::Location;

/// out[q] = locator.locate(queries[q])
void locate_all_serial( const ElementLocator&, std::span<const PointXYZ> queries, std::span<std::optional<Location>> out );
void locate_all_omp( const ElementLocator&, std::span<const PointXYZ> queries, std::span<std::optional<Location>> out );
void locate_all( Execution, const ElementLocator&, std::span<const PointXYZ> queries,
                 std::span<std::optional<Location>> out );

}  // namespace orbis::kernels
