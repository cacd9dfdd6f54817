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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbis/grid/Point.h"
#include "orbis/grid/Rotation.h"
#include "orbis/util/Types.h"

namespace orbis {

enum class GridKind
{
    FullGaussian,
    OctahedralGaussian,
    Custom
};

std::string to_string( GridKind );

struct GridRow {
    double lat;
    idx_t nlon;
    bool operator==( const GridRow& ) const = default;
};

struct GridSpec {
    GridKind kind{GridKind::FullGaussian};
    int n{0};                      // FullGaussian / OctahedralGaussian only
    std::vector<GridRow> rows;     // Custom only
    std::optional<RotationSpec> projection;

    static GridSpec full_gaussian( int n );
    static GridSpec octahedral_gaussian( int n );
    static GridSpec custom( std::vector<GridRow> rows );

    bool operator==( const GridSpec& ) const = default;
};

/// F<N> -> FullGaussian(N), O<N> -> OctahedralGaussian(N), N >= 1 without leading zeros.
/// @throws UnknownGridName
GridSpec parse_grid_name( std::string_view name );

/// Canonical name; inverse of parse_grid_name for F/O specs.
std::string render_grid_name( const GridSpec& );

/// Immutable structured grid: latitude rows ordered north to south, each row
/// holding nlon equally spaced longitudes starting at 0.
///
/// Points are numbered row-major (j over rows, i within a row), which defines
/// the global index.
class Grid {
public:
    /// @throws InvalidSpec
    explicit Grid( const GridSpec& );
    explicit Grid( std::string_view name ) : Grid( parse_grid_name( name ) ) {}

    const GridSpec& spec() const { return spec_; }
    const std::string& name() const { return name_; }

    gidx_t size() const { return npts_; }
    idx_t ny() const { return static_cast<idx_t>( rows_.size() ); }
    idx_t nx( idx_t j ) const { return rows_[j].nlon; }
    double y( idx_t j ) const { return rows_[j].lat; }
    double x( idx_t i, idx_t j ) const { return 360. * i / rows_[j].nlon; }
    gidx_t row_offset( idx_t j ) const { return offsets_[j]; }
    const std::vector<GridRow>& rows() const { return rows_; }

    gidx_t index( idx_t i, idx_t j ) const { return offsets_[j] + i; }

    struct IJ {
        idx_t i;
        idx_t j;
    };
    /// @throws IndexOutOfRange
    IJ ij( gidx_t g ) const;

    /// Point in geographic coordinates; the projection rotation, if any, is
    /// applied to the structured (rotated-frame) coordinates.
    /// @throws IndexOutOfRange
    PointLonLat lonlat( gidx_t g ) const;
    PointXYZ xyz( gidx_t g ) const { return lonlat_to_xyz( lonlat( g ) ); }

    /// All points in canonical order.
    std::vector<PointXYZ> xyz() const;

private:
    GridSpec spec_;
    std::vector<GridRow> rows_;
    std::vector<gidx_t> offsets_;  // ny+1 entries
    gidx_t npts_{0};
    std::string name_;
    std::optional<Rotation> rotation_;
};

Grid build_grid( const GridSpec& );

/// Grid point by global index. Same as grid.lonlat(g).
PointLonLat grid_point( const Grid&, gidx_t g );

}  // namespace orbis
