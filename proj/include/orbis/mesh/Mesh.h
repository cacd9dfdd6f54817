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
#include <vector>

#include "orbis/grid/Grid.h"
#include "orbis/grid/Point.h"
#include "orbis/partition/Distribution.h"
#include "orbis/util/Types.h"

namespace orbis {

/// Compressed row storage: row r spans indices[offsets[r] .. offsets[r+1]).
struct Connectivity {
    std::vector<idx_t> offsets{0};
    std::vector<idx_t> indices;

    idx_t rows() const { return static_cast<idx_t>( offsets.size() ) - 1; }
    idx_t cols( idx_t r ) const { return offsets[r + 1] - offsets[r]; }
    idx_t operator()( idx_t r, idx_t c ) const { return indices[offsets[r] + c]; }
};

struct Node {
    gidx_t global_index;
    PointLonLat lonlat;
    PointXYZ xyz;
    int partition;      // owner
    idx_t remote_index; // local index on the owner
    bool ghost;
    int halo_level;     // 0 for owned nodes
};

enum class ElementShape
{
    Triangle = 3,
    Quad     = 4
};

struct Element {
    gidx_t global_index;          // position in the serial element enumeration
    ElementShape shape;
    std::array<idx_t, 4> nodes;   // local node indices, counter-clockwise seen from outside
    int halo_level;
    int owner;                    // smallest owner partition among the element's nodes

    int size() const { return static_cast<int>( shape ); }
};

/// Unstructured mesh of one partition: owned nodes first (global-index order),
/// then ghost nodes ordered by (halo_level, global_index). Elements are ordered
/// by (halo_level, global_index).
///
/// Pole nodes, when present, carry global indices npts (north) and npts+1
/// (south) and are owned by the partitions of the first and last grid point.
class Mesh {
public:
    int partition() const { return partition_; }
    int nparts() const { return nparts_; }
    int halo_depth() const { return halo_depth_; }
    bool include_pole() const { return include_pole_; }
    gidx_t grid_size() const { return grid_size_; }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Element>& elements() const { return elements_; }
    const Connectivity& element_connectivity() const { return connectivity_; }

    idx_t node_count() const { return static_cast<idx_t>( nodes_.size() ); }
    idx_t element_count() const { return static_cast<idx_t>( elements_.size() ); }
    idx_t owned_count() const { return owned_count_; }

    bool is_pole( gidx_t g ) const { return include_pole_ && g >= grid_size_; }

private:
    friend Mesh generate_mesh( const Grid&, const Distribution&, int, int, bool );

    int partition_{0};
    int nparts_{1};
    int halo_depth_{0};
    bool include_pole_{false};
    gidx_t grid_size_{0};
    idx_t owned_count_{0};
    std::vector<Node> nodes_;
    std::vector<Element> elements_;
    Connectivity connectivity_;
};

/// Serial element enumeration of a grid, in global node indices.
struct GlobalElements {
    std::vector<ElementShape> shape;
    std::vector<std::array<gidx_t, 4>> nodes;

    gidx_t size() const { return static_cast<gidx_t>( shape.size() ); }
};

/// Strip tessellation between consecutive latitude rows.
///
/// Both rows are swept eastward from longitude 0. When the next points of both
/// rows sit at the same longitude a quad is emitted; otherwise the row whose
/// next point is further west advances alone, emitting a triangle. Strips close
/// periodically. With `include_pole`, each pole gets a triangle fan onto its
/// nearest row.
GlobalElements tessellate( const Grid&, bool include_pole );

/// Ghost nodes and halo elements of `part` up to `depth` rings.
///
/// Level-0 elements have only owned nodes. Ring k adds every element sharing a
/// node with the mesh built so far; nodes first introduced by ring k get
/// halo_level k.
struct Halo {
    std::vector<gidx_t> ghost_nodes;     // sorted by (level, global index)
    std::vector<int> ghost_levels;
    std::vector<gidx_t> elements;        // sorted by (level, global index)
    std::vector<int> element_levels;
};
Halo build_halo( const Grid&, const Distribution&, int part, int depth, bool include_pole = false );

/// @throws InvalidDistribution, InvalidArgument
Mesh generate_mesh( const Grid&, const Distribution&, int part, int halo, bool include_pole );

struct MeshStats {
    gidx_t vertices;
    gidx_t edges;   // unique undirected node pairs on element sides
    gidx_t faces;
    gidx_t euler;   // V - E + F
    gidx_t owned_grid_nodes;
    gidx_t owned_pole_nodes;
    gidx_t ghost_nodes;
    gidx_t owned_elements;
};

MeshStats mesh_stats( const Mesh& );

/// Area of the spherical triangle abc on the unit sphere (L'Huilier).
double spherical_triangle_area( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c );

/// Sum of spherical element areas; quads are split along a diagonal.
double spherical_area( const Mesh& );

enum class GmshCoordinates
{
    XYZ,
    LonLat
};

/// Gmsh 2.2 ASCII. Node ids are global index + 1, element ids global element
/// index + 1; element tags are (owner partition, halo level). Node data views
/// "partition" and "ghost" carry node ownership.
void write_gmsh( std::ostream&, const Mesh&, GmshCoordinates = GmshCoordinates::XYZ );

}  // namespace orbis
