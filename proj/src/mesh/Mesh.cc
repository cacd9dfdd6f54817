/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/mesh/Mesh.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "orbis/runtime/Exception.h"

namespace orbis {

GlobalElements tessellate( const Grid& grid, bool include_pole ) {
    GlobalElements ge;
    const gidx_t npts = grid.size();
    const idx_t ny    = grid.ny();

    auto tri = [&]( gidx_t a, gidx_t b, gidx_t c ) {
        ge.shape.push_back( ElementShape::Triangle );
        ge.nodes.push_back( {a, b, c, -1} );
    };
    auto quad = [&]( gidx_t a, gidx_t b, gidx_t c, gidx_t d ) {
        ge.shape.push_back( ElementShape::Quad );
        ge.nodes.push_back( {a, b, c, d} );
    };

    if ( include_pole ) {
        const gidx_t north = npts;
        const idx_t n      = grid.nx( 0 );
        for ( idx_t i = 0; i < n; ++i ) {
            tri( grid.index( i, 0 ), grid.index( ( i + 1 ) % n, 0 ), north );
        }
    }

    for ( idx_t j = 0; j + 1 < ny; ++j ) {
        const gidx_t n1 = grid.nx( j );      // northern row
        const gidx_t n2 = grid.nx( j + 1 );  // southern row
        auto north      = [&]( gidx_t i ) { return grid.index( static_cast<idx_t>( i % n1 ), j ); };
        auto south      = [&]( gidx_t i ) { return grid.index( static_cast<idx_t>( i % n2 ), j + 1 ); };
        gidx_t i1 = 0;
        gidx_t i2 = 0;
        while ( i1 < n1 || i2 < n2 ) {
            // compare next longitudes (i1+1)/n1 and (i2+1)/n2 exactly
            const gidx_t lhs = ( i1 + 1 ) * n2;
            const gidx_t rhs = ( i2 + 1 ) * n1;
            if ( i1 < n1 && i2 < n2 && lhs == rhs ) {
                quad( south( i2 ), south( i2 + 1 ), north( i1 + 1 ), north( i1 ) );
                ++i1;
                ++i2;
            }
            else if ( i2 == n2 || ( i1 < n1 && lhs < rhs ) ) {
                tri( south( i2 ), north( i1 + 1 ), north( i1 ) );
                ++i1;
            }
            else {
                tri( south( i2 ), south( i2 + 1 ), north( i1 ) );
                ++i2;
            }
        }
    }

    if ( include_pole ) {
        const gidx_t south = npts + 1;
        const idx_t j      = ny - 1;
        const idx_t n      = grid.nx( j );
        for ( idx_t i = 0; i < n; ++i ) {
            tri( grid.index( ( i + 1 ) % n, j ), grid.index( i, j ), south );
        }
    }
    return ge;
}

namespace {

struct Levels {
    std::vector<int> owner;        // per global node
    std::vector<int> node_level;   // -1 if absent from the partition
    std::vector<int> element_level;
};

Levels compute_levels( const Grid& grid, const Distribution& dist, const GlobalElements& ge, int part, int depth,
                       bool include_pole ) {
    const gidx_t npts    = grid.size();
    const gidx_t nglobal = npts + ( include_pole ? 2 : 0 );

    Levels lv;
    lv.owner.resize( static_cast<size_t>( nglobal ) );
    for ( gidx_t g = 0; g < npts; ++g ) {
        lv.owner[g] = dist.partition( g );
    }
    if ( include_pole ) {
        lv.owner[npts]     = dist.partition( 0 );
        lv.owner[npts + 1] = dist.partition( npts - 1 );
    }

    // node -> element incidence
    std::vector<idx_t> offsets( static_cast<size_t>( nglobal ) + 1, 0 );
    for ( gidx_t e = 0; e < ge.size(); ++e ) {
        for ( int k = 0; k < static_cast<int>( ge.shape[e] ); ++k ) {
            ++offsets[ge.nodes[e][k] + 1];
        }
    }
    for ( size_t g = 0; g < static_cast<size_t>( nglobal ); ++g ) {
        offsets[g + 1] += offsets[g];
    }
    std::vector<gidx_t> incident( static_cast<size_t>( offsets.back() ) );
    {
        std::vector<idx_t> fill( offsets.begin(), offsets.end() - 1 );
        for ( gidx_t e = 0; e < ge.size(); ++e ) {
            for ( int k = 0; k < static_cast<int>( ge.shape[e] ); ++k ) {
                incident[fill[ge.nodes[e][k]]++] = e;
            }
        }
    }

    lv.node_level.assign( static_cast<size_t>( nglobal ), -1 );
    lv.element_level.assign( static_cast<size_t>( ge.size() ), -1 );

    std::vector<gidx_t> frontier;
    for ( gidx_t g = 0; g < nglobal; ++g ) {
        if ( lv.owner[g] == part ) {
            lv.node_level[g] = 0;
            frontier.push_back( g );
        }
    }
    for ( gidx_t g : frontier ) {
        for ( idx_t k = offsets[g]; k < offsets[g + 1]; ++k ) {
            const gidx_t e = incident[k];
            if ( lv.element_level[e] >= 0 ) {
                continue;
            }
            bool all_owned = true;
            for ( int c = 0; c < static_cast<int>( ge.shape[e] ); ++c ) {
                all_owned = all_owned && lv.owner[ge.nodes[e][c]] == part;
            }
            if ( all_owned ) {
                lv.element_level[e] = 0;
            }
        }
    }

    for ( int ring = 1; ring <= depth; ++ring ) {
        std::vector<gidx_t> added;
        for ( gidx_t g : frontier ) {
            for ( idx_t k = offsets[g]; k < offsets[g + 1]; ++k ) {
                const gidx_t e = incident[k];
                if ( lv.element_level[e] < 0 ) {
                    lv.element_level[e] = ring;
                    added.push_back( e );
                }
            }
        }
        std::vector<gidx_t> next;
        for ( gidx_t e : added ) {
            for ( int c = 0; c < static_cast<int>( ge.shape[e] ); ++c ) {
                const gidx_t g = ge.nodes[e][c];
                if ( lv.node_level[g] < 0 ) {
                    lv.node_level[g] = ring;
                    next.push_back( g );
                }
            }
        }
        frontier = std::move( next );
    }
    return lv;
}

void check_arguments( const Grid& grid, const Distribution& dist, int part, int depth ) {
    if ( dist.size() != grid.size() ) {
        throw InvalidDistribution( "distribution covers " + std::to_string( dist.size() ) + " points but grid " +
                                   grid.name() + " has " + std::to_string( grid.size() ) );
    }
    if ( part < 0 || part >= dist.nparts() ) {
        throw InvalidArgument( "partition " + std::to_string( part ) + " outside [0, " +
                               std::to_string( dist.nparts() ) + ")" );
    }
    if ( depth < 0 ) {
        throw InvalidArgument( "halo depth must be >= 0" );
    }
}

template <typename Key>
std::vector<gidx_t> sorted_by_level( const std::vector<int>& level, Key include ) {
    std::vector<gidx_t> out;
    for ( gidx_t g = 0; g < static_cast<gidx_t>( level.size() ); ++g ) {
        if ( include( g ) ) {
            out.push_back( g );
        }
    }
    std::stable_sort( out.begin(), out.end(), [&]( gidx_t a, gidx_t b ) { return level[a] < level[b]; } );
    return out;
}

}  // namespace

Halo build_halo( const Grid& grid, const Distribution& dist, int part, int depth, bool include_pole ) {
    check_arguments( grid, dist, part, depth );
    const GlobalElements ge = tessellate( grid, include_pole );
    const Levels lv         = compute_levels( grid, dist, ge, part, depth, include_pole );

    Halo halo;
    halo.ghost_nodes = sorted_by_level( lv.node_level, [&]( gidx_t g ) { return lv.node_level[g] >= 1; } );
    for ( gidx_t g : halo.ghost_nodes ) {
        halo.ghost_levels.push_back( lv.node_level[g] );
    }
    halo.elements = sorted_by_level( lv.element_level, [&]( gidx_t e ) { return lv.element_level[e] >= 1; } );
    for ( gidx_t e : halo.elements ) {
        halo.element_levels.push_back( lv.element_level[e] );
    }
    return halo;
}

Mesh generate_mesh( const Grid& grid, const Distribution& dist, int part, int halo, bool include_pole ) {
    check_arguments( grid, dist, part, halo );
    const GlobalElements ge = tessellate( grid, include_pole );
    const Levels lv         = compute_levels( grid, dist, ge, part, halo, include_pole );
    const gidx_t npts       = grid.size();
    const gidx_t nglobal    = static_cast<gidx_t>( lv.owner.size() );

    Mesh mesh;
    mesh.partition_    = part;
    mesh.nparts_       = dist.nparts();
    mesh.halo_depth_   = halo;
    mesh.include_pole_ = include_pole;
    mesh.grid_size_    = npts;

    // local index of every global node on its owner
    std::vector<idx_t> index_on_owner( static_cast<size_t>( nglobal ) );
    {
        std::vector<idx_t> next( static_cast<size_t>( dist.nparts() ), 0 );
        for ( gidx_t g = 0; g < nglobal; ++g ) {
            index_on_owner[g] = next[lv.owner[g]]++;
        }
    }

    const std::vector<gidx_t> order = sorted_by_level( lv.node_level, [&]( gidx_t g ) { return lv.node_level[g] >= 0; } );
    std::vector<idx_t> local_of( static_cast<size_t>( nglobal ), -1 );
    mesh.nodes_.reserve( order.size() );
    for ( gidx_t g : order ) {
        PointLonLat ll;
        if ( g < npts ) {
            ll = grid.lonlat( g );
        }
        else {
            ll = PointLonLat( 0., g == npts ? 90. : -90. );
        }
        local_of[g] = static_cast<idx_t>( mesh.nodes_.size() );
        const int level = lv.node_level[g];
        mesh.nodes_.push_back( {g, ll, lonlat_to_xyz( ll ), lv.owner[g], index_on_owner[g], level > 0, level} );
        if ( level == 0 ) {
            ++mesh.owned_count_;
        }
    }

    const std::vector<gidx_t> elems =
        sorted_by_level( lv.element_level, [&]( gidx_t e ) { return lv.element_level[e] >= 0; } );
    mesh.elements_.reserve( elems.size() );
    mesh.connectivity_.offsets.reserve( elems.size() + 1 );
    for ( gidx_t e : elems ) {
        Element el{e, ge.shape[e], {-1, -1, -1, -1}, lv.element_level[e], dist.nparts()};
        for ( int c = 0; c < el.size(); ++c ) {
            const gidx_t g = ge.nodes[e][c];
            el.nodes[c]    = local_of[g];
            el.owner       = std::min( el.owner, lv.owner[g] );
            mesh.connectivity_.indices.push_back( el.nodes[c] );
        }
        mesh.connectivity_.offsets.push_back( static_cast<idx_t>( mesh.connectivity_.indices.size() ) );
        mesh.elements_.push_back( el );
    }
    return mesh;
}

MeshStats mesh_stats( const Mesh& mesh ) {
    std::vector<std::pair<idx_t, idx_t>> edges;
    gidx_t owned_elements = 0;
    for ( const Element& e : mesh.elements() ) {
        for ( int c = 0; c < e.size(); ++c ) {
            const idx_t a = e.nodes[c];
            const idx_t b = e.nodes[( c + 1 ) % e.size()];
            edges.emplace_back( std::min( a, b ), std::max( a, b ) );
        }
        if ( e.owner == mesh.partition() ) {
            ++owned_elements;
        }
    }
    std::sort( edges.begin(), edges.end() );
    edges.erase( std::unique( edges.begin(), edges.end() ), edges.end() );

    MeshStats s{};
    s.vertices = mesh.node_count();
    s.edges    = static_cast<gidx_t>( edges.size() );
    s.faces    = mesh.element_count();
    s.euler    = s.vertices - s.edges + s.faces;
    for ( const Node& n : mesh.nodes() ) {
        if ( n.ghost ) {
            ++s.ghost_nodes;
        }
        else if ( mesh.is_pole( n.global_index ) ) {
            ++s.owned_pole_nodes;
        }
        else {
            ++s.owned_grid_nodes;
        }
    }
    s.owned_elements = owned_elements;
    return s;
}

double spherical_triangle_area( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c ) {
    const double ab = great_circle_distance( a, b );
    const double bc = great_circle_distance( b, c );
    const double ca = great_circle_distance( c, a );
    const double s  = 0.5 * ( ab + bc + ca );
    const double t  = std::tan( 0.5 * s ) * std::tan( 0.5 * ( s - ab ) ) * std::tan( 0.5 * ( s - bc ) ) *
                     std::tan( 0.5 * ( s - ca ) );
    return 4. * std::atan( std::sqrt( std::max( t, 0. ) ) );
}

double spherical_area( const Mesh& mesh ) {
    double area = 0.;
    for ( const Element& e : mesh.elements() ) {
        const PointXYZ& a = mesh.nodes()[e.nodes[0]].xyz;
        const PointXYZ& b = mesh.nodes()[e.nodes[1]].xyz;
        const PointXYZ& c = mesh.nodes()[e.nodes[2]].xyz;
        area += spherical_triangle_area( a, b, c );
        if ( e.shape == ElementShape::Quad ) {
            area += spherical_triangle_area( a, c, mesh.nodes()[e.nodes[3]].xyz );
        }
    }
    return area;
}

void write_gmsh( std::ostream& out, const Mesh& mesh, GmshCoordinates coordinates ) {
    const auto flags = out.flags();
    const auto prec  = out.precision();
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
    out << "$Nodes\n" << mesh.node_count() << '\n';
    out << std::setprecision( 17 );
    for ( const Node& n : mesh.nodes() ) {
        out << n.global_index + 1 << ' ';
        if ( coordinates == GmshCoordinates::XYZ ) {
            out << n.xyz.x << ' ' << n.xyz.y << ' ' << n.xyz.z << '\n';
        }
        else {
            out << n.lonlat.lon() << ' ' << n.lonlat.lat() << " 0\n";
        }
    }
    out << "$EndNodes\n";
    out << "$Elements\n" << mesh.element_count() << '\n';
    for ( const Element& e : mesh.elements() ) {
        out << e.global_index + 1 << ' ' << ( e.shape == ElementShape::Triangle ? 2 : 3 ) << " 2 " << e.owner << ' '
            << e.halo_level;
        for ( int c = 0; c < e.size(); ++c ) {
            out << ' ' << mesh.nodes()[e.nodes[c]].global_index + 1;
        }
        out << '\n';
    }
    out << "$EndElements\n";
    // Ownership as node data views: owner partition and ghost flag
    auto node_data = [&]( const char* name, auto&& value ) {
        out << "$NodeData\n1\n\"" << name << "\"\n1\n0\n3\n0\n1\n" << mesh.node_count() << '\n';
        for ( const Node& n : mesh.nodes() ) {
            out << n.global_index + 1 << ' ' << value( n ) << '\n';
        }
        out << "$EndNodeData\n";
    };
    node_data( "partition", []( const Node& n ) { return n.partition; } );
    node_data( "ghost", []( const Node& n ) { return n.ghost ? 1 : 0; } );
    out.flags( flags );
    out.precision( prec );
}

}  // namespace orbis
