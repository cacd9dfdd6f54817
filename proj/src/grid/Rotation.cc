/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/grid/Rotation.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orbis {

bool RotationSpec::identity() const {
    return north_pole_lat == 90.;
}

Rotation::Rotation( const RotationSpec& spec ) : spec_( spec ), identity_( spec.identity() ) {
    constexpr double deg2rad = std::numbers::pi / 180.;
    const double lon         = spec.north_pole_lon * deg2rad;
    const double colat       = ( 90. - spec.north_pole_lat ) * deg2rad;

    // unrotate = Rz(lon) * Ry(colat)
    const double cl = std::cos( lon ), sl = std::sin( lon );
    const double cc = std::cos( colat ), sc = std::sin( colat );
    m_ = {{{cl * cc, -sl, cl * sc}, {sl * cc, cl, sl * sc}, {-sc, 0., cc}}};
}

PointXYZ Rotation::unrotate( const PointXYZ& p ) const {
    if ( identity_ ) {
        return p;
    }
    return {m_[0][0] * p.x + m_[0][1] * p.y + m_[0][2] * p.z, m_[1][0] * p.x + m_[1][1] * p.y + m_[1][2] * p.z,
            m_[2][0] * p.x + m_[2][1] * p.y + m_[2][2] * p.z};
}

PointXYZ Rotation::rotate( const PointXYZ& p ) const {
    if ( identity_ ) {
        return p;
    }
    return {m_[0][0] * p.x + m_[1][0] * p.y + m_[2][0] * p.z, m_[0][1] * p.x + m_[1][1] * p.y + m_[2][1] * p.z,
            m_[0][2] * p.x + m_[1][2] * p.y + m_[2][2] * p.z};
}

namespace {
PointLonLat to_lonlat( const PointXYZ& v ) {
    // rotation preserves the norm up to rounding; renormalise before inverting
    const double n = std::sqrt( dot( v, v ) );
    PointXYZ u{v.x / n, v.y / n, std::clamp( v.z / n, -1., 1. )};
    return xyz_to_lonlat( u );
}
}  // namespace

PointLonLat Rotation::rotate( const PointLonLat& p ) const {
    if ( identity_ ) {
        return p;
    }
    return to_lonlat( rotate( lonlat_to_xyz( p ) ) );
}

PointLonLat Rotation::unrotate( const PointLonLat& p ) const {
    if ( identity_ ) {
        return p;
    }
    return to_lonlat( unrotate( lonlat_to_xyz( p ) ) );
}

PointLonLat rotate( const PointLonLat& p, const RotationSpec& r ) {
    return Rotation( r ).rotate( p );
}

PointLonLat unrotate( const PointLonLat& p, const RotationSpec& r ) {
    return Rotation( r ).unrotate( p );
}

}  // namespace orbis
