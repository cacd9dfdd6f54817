/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/grid/GridDescription.h"

#include <iomanip>
#include <sstream>

namespace orbis {

nlohmann::json describe( const Grid& grid ) {
    nlohmann::json doc;
    doc["name"] = grid.name();
    doc["kind"] = to_string( grid.spec().kind );
    doc["n"]    = grid.spec().n;
    doc["npts"] = grid.size();
    auto rows   = nlohmann::json::array();
    for ( const GridRow& r : grid.rows() ) {
        rows.push_back( {{"lat", r.lat}, {"nlon", r.nlon}} );
    }
    doc["rows"] = std::move( rows );
    return doc;
}

std::string describe_text( const Grid& grid ) {
    std::ostringstream out;
    out << "name : " << grid.name() << '\n';
    out << "kind : " << to_string( grid.spec().kind ) << '\n';
    out << "n    : " << grid.spec().n << '\n';
    out << "npts : " << grid.size() << '\n';
    out << "rows : " << grid.ny() << '\n';
    out << std::setprecision( 17 );
    for ( idx_t j = 0; j < grid.ny(); ++j ) {
        out << "  " << std::setw( 5 ) << j << "  lat " << std::setw( 24 ) << grid.y( j ) << "  nlon " << grid.nx( j )
            << '\n';
    }
    return out.str();
}

}  // namespace orbis
