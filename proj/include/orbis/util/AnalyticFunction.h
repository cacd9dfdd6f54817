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

#include "orbis/grid/Point.h"

namespace orbis {

/// Real orthonormal spherical harmonic Y_l^m on the unit sphere (no
/// Condon-Shortley phase). m > 0 uses cos(m lon), m < 0 uses sin(|m| lon).
/// @throws InvalidArgument unless 0 <= l <= 4 and |m| <= l
double spherical_harmonic( int l, int m, const PointXYZ& );

/// Analytic test field parsed from
///   constant:<v> | linear:<x|y|z> | harmonic:Y<l>,<m>
class AnalyticFunction {
public:
    enum class Kind
    {
        Constant,
        Linear,
        Harmonic
    };

    /// @throws InvalidSpec
    static AnalyticFunction parse( const std::string& spec );

    double operator()( const PointXYZ& ) const;

    Kind kind() const { return kind_; }
    const std::string& spec() const { return spec_; }

private:
    Kind kind_{Kind::Constant};
    double value_{0.};
    int axis_{0};
    int l_{0};
    int m_{0};
    std::string spec_;
};

}  // namespace orbis
