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

#include "json.hpp"

#include "orbis/grid/Grid.h"

namespace orbis {

/// Grid description document: {name, kind, n, npts, rows: [{lat, nlon}]}.
nlohmann::json describe( const Grid& );

/// Human-readable rendering of the same fields.
std::string describe_text( const Grid& );

}  // namespace orbis
