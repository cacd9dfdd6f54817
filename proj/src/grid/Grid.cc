/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/grid/Grid.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "orbis/grid/GaussianLatitudes.h"
#include "orbis/runtime/Exception.h"

namespace orbis {

std::string to_string( GridKind kind ) {
    switch ( kind ) {
        case GridKind::FullGaussian:
            return "FullGaussian";
        case GridKind::OctahedralGaussian:
            return "OctahedralGaussian";
        case GridKind::Custom:
            return "Custom";
    }
    return "?";
}

GridSpec GridSpec::full_gaussian( int n ) {
    GridSpec s;
    s.kind = GridKind::FullGaussian;
    s.n    = n;
    return s;
}

GridSpec GridSpec::octahedral_gaussian( int n ) {
    GridSpec s;
    s.kind = GridKind::OctahedralGaussian;
    s.n    = n;
    return s;
}

GridSpec GridSpec::custom( std::vector<GridRow> rows ) {
    GridSpec s;
    s.kind = GridKind::Custom;
    s.rows = std::move( rows );
    return s;
}

GridSpec parse_grid_name( std::string_view name ) {
    if ( name.size() < 2 || ( name[0] != 'F' && name[0] != 'O' ) ) {
        throw UnknownGridName( std::string( name ) );
    }
    const std::string_view digits = name.substr( 1 );
    if ( digits[0] == '0' || digits.size() > 9 ) {
        throw UnknownGridName( std::string( name ) );
    }
    int n           = 0;
    const auto last = digits.data() + digits.size();
    auto [ptr, ec]  = std::from_chars( digits.data(), last, n );
    if ( ec != std::errc() || ptr != last || n < 1 ) {
        throw UnknownGridName( std::string( name ) );
    }
    return name[0] == 'F' ? GridSpec::full_gaussian( n ) : GridSpec::octahedral_gaussian( n );
}

std::string render_grid_name( const GridSpec& spec ) {
    switch ( spec.kind ) {
        case GridKind::FullGaussian:
            return "F" + std::to_string( spec.n );
        case GridKind::OctahedralGaussian:
            return "O" + std::to_string( spec.n );
        case GridKind::Custom:
            return "custom" + std::to_string( spec.rows.size() );
    }
    return {};
}

namespace {

std::vector<GridRow> materialise_rows( const GridSpec& spec ) {
    std::vector<GridRow> rows;
    switch ( spec.kind ) {
        case GridKind::FullGaussian:
        case GridKind::OctahedralGaussian: {
            if ( spec.n < 1 ) {
                throw InvalidSpec( "Gaussian grid requires N >= 1" );
            }
            const int n                     = spec.n;
            const std::vector<double> lats = gaussian_latitudes( n );
            rows.reserve( lats.size() );
            for ( int jj = 0; jj < 2 * n; ++jj ) {
                idx_t nlon;
                if ( spec.kind == GridKind::FullGaussian ) {
                    nlon = 4 * n;
                }
                else {
                    // row number counted from the nearest pole, 1..N
                    const int j = jj < n ? jj + 1 : 2 * n - jj;
                    nlon        = 4 * j + 16;
                }
                rows.push_back( {lats[jj], nlon} );
            }
            break;
        }
        case GridKind::Custom: {
            if ( spec.rows.empty() ) {
                throw InvalidSpec( "custom grid requires at least one row" );
            }
            for ( size_t j = 0; j < spec.rows.size(); ++j ) {
                const GridRow& r = spec.rows[j];
                if ( r.nlon < 1 ) {
                    throw InvalidSpec( "custom grid row " + std::to_string( j ) + " has nlon < 1" );
                }
                if ( !( r.lat >= -90. && r.lat <= 90. ) ) {
                    throw InvalidSpec( "custom grid row " + std::to_string( j ) + " latitude out of range" );
                }
                if ( j > 0 && !( r.lat < spec.rows[j - 1].lat ) ) {
                    throw InvalidSpec( "custom grid rows must be strictly ordered north to south" );
                }
            }
            rows = spec.rows;
            break;
        }
    }
    return rows;
}

}  // namespace

Grid::Grid( const GridSpec& spec ) : spec_( spec ), rows_( materialise_rows( spec ) ), name_( render_grid_name( spec ) ) {
    offsets_.resize( rows_.size() + 1 );
    offsets_[0] = 0;
    for ( size_t j = 0; j < rows_.size(); ++j ) {
        offsets_[j + 1] = offsets_[j] + rows_[j].nlon;
    }
    npts_ = offsets_.back();
    if ( spec_.projection && !spec_.projection->identity() ) {
        rotation_.emplace( *spec_.projection );
    }
}

Grid::IJ Grid::ij( gidx_t g ) const {
    if ( g < 0 || g >= npts_ ) {
        std::ostringstream msg;
        msg << "global index " << g << " out of range [0, " << npts_ << ") for grid " << name_;
        throw IndexOutOfRange( msg.str() );
    }
    const auto it = std::upper_bound( offsets_.begin(), offsets_.end(), g );
    const idx_t j = static_cast<idx_t>( it - offsets_.begin() ) - 1;
    return {static_cast<idx_t>( g - offsets_[j] ), j};
}

PointLonLat Grid::lonlat( gidx_t g ) const {
    const IJ p = ij( g );
    PointLonLat ll( x( p.i, p.j ), y( p.j ) );
    return rotation_ ? rotation_->unrotate( ll ) : ll;
}

std::vector<PointXYZ> Grid::xyz() const {
    std::vector<PointXYZ> points;
    points.reserve( static_cast<size_t>( npts_ ) );
    for ( idx_t j = 0; j < ny(); ++j ) {
        for ( idx_t i = 0; i < nx( j ); ++i ) {
            PointLonLat ll( x( i, j ), y( j ) );
            points.push_back( lonlat_to_xyz( rotation_ ? rotation_->unrotate( ll ) : ll ) );
        }
    }
    return points;
}

Grid build_grid( const GridSpec& spec ) {
    return Grid( spec );
}

PointLonLat grid_point( const Grid& grid, gidx_t g ) {
    return grid.lonlat( g );
}

}  // namespace orbis
