/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/util/AnalyticFunction.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string_view>

#include "orbis/runtime/Exception.h"

namespace orbis {

namespace {

double factorial( int n ) {
    double f = 1.;
    for ( int i = 2; i <= n; ++i ) {
        f *= i;
    }
    return f;
}

// Associated Legendre function P_l^m(x), m >= 0, without the (-1)^m phase.
double assoc_legendre( int l, int m, double x ) {
    const double s = std::sqrt( std::max( 0., 1. - x * x ) );
    double pmm     = 1.;
    for ( int i = 1; i <= m; ++i ) {
        pmm *= ( 2 * i - 1 ) * s;
    }
    if ( l == m ) {
        return pmm;
    }
    double pm1 = x * ( 2 * m + 1 ) * pmm;
    for ( int ll = m + 2; ll <= l; ++ll ) {
        const double pll = ( x * ( 2 * ll - 1 ) * pm1 - ( ll + m - 1 ) * pmm ) / ( ll - m );
        pmm              = pm1;
        pm1              = pll;
    }
    return pm1;
}

bool parse_int( std::string_view text, int& value ) {
    if ( text.empty() ) {
        return false;
    }
    const auto* end = text.data() + text.size();
    auto [ptr, ec]  = std::from_chars( text.data(), end, value );
    return ec == std::errc() && ptr == end;
}

}  // namespace

double spherical_harmonic( int l, int m, const PointXYZ& p ) {
    if ( l < 0 || l > 4 || std::abs( m ) > l ) {
        throw InvalidArgument( "spherical harmonic Y" + std::to_string( l ) + "," + std::to_string( m ) +
                               " not supported (need 0 <= l <= 4, |m| <= l)" );
    }
    const int am    = std::abs( m );
    const double nm = std::sqrt( ( 2 * l + 1 ) / ( 4. * std::numbers::pi ) * factorial( l - am ) / factorial( l + am ) );
    const double pl = assoc_legendre( l, am, p.z );
    if ( m == 0 ) {
        return nm * pl;
    }
    const double lon = std::atan2( p.y, p.x );
    return std::numbers::sqrt2 * nm * pl * ( m > 0 ? std::cos( am * lon ) : std::sin( am * lon ) );
}

AnalyticFunction AnalyticFunction::parse( const std::string& spec ) {
    AnalyticFunction f;
    f.spec_          = spec;
    const auto colon = spec.find( ':' );
    if ( colon == std::string::npos ) {
        throw InvalidSpec( "field spec '" + spec + "': expected constant:<v>, linear:<x|y|z> or harmonic:Y<l>,<m>" );
    }
    const std::string kind = spec.substr( 0, colon );
    const std::string arg  = spec.substr( colon + 1 );
    if ( kind == "constant" ) {
        f.kind_   = Kind::Constant;
        char* end = nullptr;
        f.value_  = std::strtod( arg.c_str(), &end );
        if ( arg.empty() || end != arg.c_str() + arg.size() ) {
            throw InvalidSpec( "field spec '" + spec + "': constant value is not a number" );
        }
    }
    else if ( kind == "linear" ) {
        f.kind_ = Kind::Linear;
        if ( arg == "x" ) {
            f.axis_ = 0;
        }
        else if ( arg == "y" ) {
            f.axis_ = 1;
        }
        else if ( arg == "z" ) {
            f.axis_ = 2;
        }
        else {
            throw InvalidSpec( "field spec '" + spec + "': linear axis must be x, y or z" );
        }
    }
    else if ( kind == "harmonic" ) {
        f.kind_          = Kind::Harmonic;
        const auto comma = arg.find( ',' );
        std::string_view a( arg );
        if ( arg.size() < 2 || arg[0] != 'Y' || comma == std::string::npos ||
             !parse_int( a.substr( 1, comma - 1 ), f.l_ ) || !parse_int( a.substr( comma + 1 ), f.m_ ) ) {
            throw InvalidSpec( "field spec '" + spec + "': expected harmonic:Y<l>,<m>" );
        }
        if ( f.l_ < 0 || f.l_ > 4 || std::abs( f.m_ ) > f.l_ ) {
            throw InvalidSpec( "field spec '" + spec + "': need 0 <= l <= 4 and |m| <= l" );
        }
    }
    else {
        throw InvalidSpec( "field spec '" + spec + "': unknown kind '" + kind + "'" );
    }
    return f;
}

double AnalyticFunction::operator()( const PointXYZ& p ) const {
    switch ( kind_ ) {
        case Kind::Constant:
            return value_;
        case Kind::Linear:
            return p[axis_];
        case Kind::Harmonic:
            return spherical_harmonic( l_, m_, p );
    }
    return 0.;
}

}  // namespace orbis
