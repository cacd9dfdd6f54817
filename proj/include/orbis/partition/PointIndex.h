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

#include <span>
#include <vector>

#include "orbis/grid/Point.h"
#include "orbis/util/Types.h"

namespace orbis {

/// Exact nearest-neighbour queries over a fixed point cloud on the unit
/// sphere (kd-tree over Cartesian coordinates).
///
/// Distances are chord lengths, which order identically to great-circle
/// distances. Ties are broken by the smaller point id.
class PointIndex {
public:
    struct Neighbour {
        gidx_t id;
        idx_t position;  // position in the construction arrays
        double chord;
    };

    PointIndex() = default;

    /// Ids default to positions.
    explicit PointIndex( std::vector<PointXYZ> points );
    PointIndex( std::vector<PointXYZ> points, std::vector<gidx_t> ids );

    idx_t size() const { return static_cast<idx_t>( points_.size() ); }
    bool empty() const { return points_.empty(); }

    /// @throws InvalidArgument on an empty index
    Neighbour nearest( const PointXYZ& query ) const;

    /// Up to k neighbours sorted by (chord, id).
    std::vector<Neighbour> k_nearest( const PointXYZ& query, idx_t k ) const;

    const PointXYZ& point( idx_t position ) const { return points_[position]; }
    gidx_t id( idx_t position ) const { return ids_[position]; }

private:
    struct Node {
        idx_t begin;
        idx_t end;
        idx_t left{-1};
        idx_t right{-1};
        int axis{-1};
        double split{0.};
    };

    idx_t build( idx_t begin, idx_t end );

    template <typename Visitor>
    void search( idx_t node, const PointXYZ& q, Visitor& visitor ) const;

    std::vector<PointXYZ> points_;
    std::vector<gidx_t> ids_;
    std::vector<idx_t> order_;  // tree-ordered positions
    std::vector<Node> nodes_;
    idx_t root_{-1};
};

/// nearest_point over a point cloud: (global index, chord distance).
PointIndex::Neighbour nearest_point( const PointIndex&, const PointXYZ& query );

}  // namespace orbis
