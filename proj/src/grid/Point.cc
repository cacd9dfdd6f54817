/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/grid/Point.h"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "orbis/runtime/Exception.h"

namespace orbis {

namespace {
constexpr double deg2rad = std::numbers::pi / 180.;
constexpr double rad2deg = 180. / std::numbers::pi;
}  // namespace

double normalise_lon( double lon ) {
    double l = std::fmod( lon, 360. );
    if ( l < 0. ) {
        l += 360.;
    }
    // fmod of a tiny negative number plus 360 can round to exactly 360
    if ( l >= 360. ) {
        l = 0.;
    }
    return l;
}

PointLonLat::PointLonLat( double lon, double lat ) : lon_( normalise_lon( lon ) ), lat_( lat ) {
    if ( !( lat >= -90. && lat <= 90. ) ) {
        std::ostringstream msg;
        msg << "latitude " << lat << " outside [-90, 90]";
        throw InvalidArgument( msg.str() );
    }
}

std::ostream& operator<<( std::ostream& out, const PointLonLat& p ) {
    return out << "{" << p.lon() << "," << p.lat() << "}";
}

std::ostream& operator<<( std::ostream& out, const PointXYZ& p ) {
    return out << "{" << p.x << "," << p.y << "," << p.z << "}";
}

PointXYZ lonlat_to_xyz( const PointLonLat& p ) {
    const double lon   = p.lon() * deg2rad;
    const double lat   = p.lat() * deg2rad;
    const double coslat = std::cos( lat );
    return {coslat * std::cos( lon ), coslat * std::sin( lon ), std::sin( lat )};
}

PointLonLat xyz_to_lonlat( const PointXYZ& v ) {
    const double norm = std::sqrt( dot( v, v ) );
    if ( std::abs( norm - 1. ) > 1e-9 ) {
        std::ostringstream msg;
        msg << "point " << v << " is not on the unit sphere (|v| = " << norm << ")";
        throw NotOnUnitSphere( msg.str() );
    }
    const double r = std::hypot( v.x, v.y );
    if ( r == 0. ) {
        return {0., v.z > 0. ? 90. : -90.};
    }
    const double lat = std::atan2( v.z, r ) * rad2deg;
    const double lon = std::atan2( v.y, v.x ) * rad2deg;
    return {lon, lat};
}

double great_circle_distance( const PointXYZ& a, const PointXYZ& b ) {
    // atan2 form is accurate for both tiny and near-antipodal separations
    return std::atan2( std::sqrt( dot( cross( a, b ), cross( a, b ) ) ), dot( a, b ) );
}

double great_circle_distance( const PointLonLat& a, const PointLonLat& b ) {
    return great_circle_distance( lonlat_to_xyz( a ), lonlat_to_xyz( b ) );
}

}  // namespace orbis
