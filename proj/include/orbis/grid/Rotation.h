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

#include "orbis/grid/Point.h"

namespace orbis {

/// Position of the rotated north pole in geographic coordinates.
/// (0, 90) is the identity.
struct RotationSpec {
    double north_pole_lon{0.};
    double north_pole_lat{90.};

    bool identity() const;
    bool operator==( const RotationSpec& ) const = default;
};

/// Rigid rotation of the sphere taking the geographic north pole onto the
/// rotated pole. `rotate` maps geographic to rotated coordinates,
/// `unrotate` maps back.
class Rotation {
public:
    explicit Rotation( const RotationSpec& );

    PointLonLat rotate( const PointLonLat& ) const;
    PointLonLat unrotate( const PointLonLat& ) const;

    PointXYZ rotate( const PointXYZ& ) const;
    PointXYZ unrotate( const PointXYZ& ) const;

    const RotationSpec& spec() const { return spec_; }

private:
    RotationSpec spec_;
    // columns are the rotated frame's axes expressed in geographic coordinates
    std::array<std::array<double, 3>, 3> m_;
    bool identity_;
};

PointLonLat rotate( const PointLonLat&, const RotationSpec& );
PointLonLat unrotate( const PointLonLat&, const RotationSpec& );

}  // namespace orbis
