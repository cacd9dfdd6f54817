/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/grid/GaussianLatitudes.h"

#include <cmath>
#include <numbers>

#include "orbis/runtime/Exception.h"

namespace orbis {

namespace {

struct Legendre {
    long double value;
    long double derivative;
};

Legendre legendre( int degree, long double x ) {
    long double p0 = 1.L;
    long double p1 = x;
    for ( int k = 2; k <= degree; ++k ) {
        const long double pk = ( ( 2 * k - 1 ) * x * p1 - ( k - 1 ) * p0 ) / k;
        p0                   = p1;
        p1                   = pk;
    }
    return {p1, degree * ( x * p1 - p0 ) / ( x * x - 1.L )};
}

}  // namespace

std::vector<double> gaussian_latitudes( int n ) {
    if ( n < 1 ) {
        throw InvalidArgument( "gaussian_latitudes: n must be >= 1" );
    }
    constexpr long double pi = std::numbers::pi_v<long double>;
    const int degree         = 2 * n;

    std::vector<double> lat( degree );
    for ( int k = 0; k < n; ++k ) {
        long double x = std::cos( pi * ( k + 0.75L ) / ( degree + 0.5L ) );
        for ( int iter = 0; iter < 100; ++iter ) {
            const Legendre p     = legendre( degree, x );
            const long double dx = p.value / p.derivative;
            x -= dx;
            if ( std::abs( dx ) < 1e-15L ) {
                break;
            }
        }
        lat[k]              = static_cast<double>( std::asin( x ) * 180.L / pi );
        lat[degree - 1 - k] = -lat[k];
    }
    return lat;
}

}  // namespace orbis
