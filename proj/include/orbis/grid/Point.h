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

#include <array>
#include <iosfwd>

namespace orbis {

/// Geographic coordinates in degrees. Longitude is normalised into [0, 360).
class PointLonLat {
public:
    PointLonLat() = default;
    PointLonLat( double lon, double lat );

    double lon() const { return lon_; }
    double lat() const { return lat_; }

    bool operator==( const PointLonLat& ) const = default;

private:
    double lon_{0.};
    double lat_{0.};
};

/// Cartesian coordinates on the unit sphere.
struct PointXYZ {
    double x{0.};
    double y{0.};
    double z{0.};

    double operator[]( int d ) const { return d == 0 ? x : ( d == 1 ? y : z ); }
    bool operator==( const PointXYZ& ) const = default;
};

std::ostream& operator<<( std::ostream&, const PointLonLat& );
std::ostream& operator<<( std::ostream&, const PointXYZ& );

double normalise_lon( double lon );

PointXYZ lonlat_to_xyz( const PointLonLat& );

/// Inverse of lonlat_to_xyz; returns lon = 0 at the poles.
/// @throws NotOnUnitSphere if | |v| - 1 | > 1e-9
PointLonLat xyz_to_lonlat( const PointXYZ& );

inline double dot( const PointXYZ& a, const PointXYZ& b ) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline PointXYZ cross( const PointXYZ& a, const PointXYZ& b ) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double chord2( const PointXYZ& a, const PointXYZ& b ) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

/// Central angle in radians.
double great_circle_distance( const PointXYZ& a, const PointXYZ& b );
double great_circle_distance( const PointLonLat& a, const PointLonLat& b );

}  // namespace orbis
