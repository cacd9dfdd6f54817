/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"

#include "Oracles.h"
#include "orbis/grid/Grid.h"
#include "orbis/mesh/Mesh.h"
#include "orbis/partition/Distribution.h"
#include "orbis/runtime/Exception.h"

using namespace orbis;

namespace {

Mesh serial_mesh( const Grid& grid, bool pole ) {
    return generate_mesh( grid, blocks_partition( grid, 1 ), 0, 0, pole );
}

// number of elements sharing each undirected edge
std::map<std::pair<gidx_t, gidx_t>, int> edge_use( const Mesh& mesh ) {
    std::map<std::pair<gidx_t, gidx_t>, int> use;
    for ( const Element& e : mesh.elements() ) {
        for ( int c = 0; c < e.size(); ++c ) {
            gidx_t a = mesh.nodes()[e.nodes[c]].global_index;
            gidx_t b = mesh.nodes()[e.nodes[( c + 1 ) % e.size()]].global_index;
            use[{std::min( a, b ), std::max( a, b )}]++;
        }
    }
    return use;
}

}  // namespace

TEST_CASE( "F1 mesh without poles is an annulus of 4 quads" ) {
    const Mesh mesh = serial_mesh( Grid( "F1" ), false );
    const auto s    = mesh_stats( mesh );
    CHECK( s.vertices == 8 );
    CHECK( s.edges == 12 );
    CHECK( s.faces == 4 );
    CHECK( s.euler == 0 );
    for ( const Element& e : mesh.elements() ) {
        CHECK( e.shape == ElementShape::Quad );
    }
}

TEST_CASE( "F1 mesh with poles closes the sphere" ) {
    const Mesh mesh = serial_mesh( Grid( "F1" ), true );
    const auto s    = mesh_stats( mesh );
    CHECK( s.vertices == 10 );
    CHECK( s.edges == 20 );
    CHECK( s.faces == 12 );
    CHECK( s.euler == 2 );
    int quads = 0, triangles = 0;
    for ( const Element& e : mesh.elements() ) {
        ( e.shape == ElementShape::Quad ? quads : triangles )++;
    }
    CHECK( quads == 4 );
    CHECK( triangles == 8 );
    CHECK( s.owned_pole_nodes == 2 );
    CHECK( s.owned_grid_nodes == 8 );
}

TEST_CASE( "strip element counts follow the gcd rule" ) {
    for ( const char* name : {"O1", "O2", "O5", "O16", "F3", "F8"} ) {
        CAPTURE( name );
        const Grid grid( name );
        const auto global = tessellate( grid, false );
        gidx_t expected = 0, quads_expected = 0;
        for ( idx_t j = 0; j + 1 < grid.ny(); ++j ) {
            expected += oracle::strip_elements( grid.nx( j ), grid.nx( j + 1 ) );
            quads_expected += std::gcd( grid.nx( j ), grid.nx( j + 1 ) );
        }
        CHECK( global.size() == expected );
        CHECK( std::count( global.shape.begin(), global.shape.end(), ElementShape::Quad ) == quads_expected );
    }
    // O1 has two rows of 20: one strip of 20 quads
    const auto o1 = tessellate( Grid( "O1" ), false );
    CHECK( o1.size() == 20 );
    CHECK( std::count( o1.shape.begin(), o1.shape.end(), ElementShape::Quad ) == 20 );
    // O2 rows 20, 24, 24, 20
    const auto o2 = tessellate( Grid( "O2" ), false );
    CHECK( o2.size() == 104 );
    CHECK( std::count( o2.shape.begin(), o2.shape.end(), ElementShape::Quad ) == 32 );
}

TEST_CASE( "serial meshes with poles: Euler characteristic 2 and area 4 pi" ) {
    for ( const char* name : {"F1", "F2", "F4", "F8", "O1", "O2", "O8", "O16"} ) {
        CAPTURE( name );
        const Grid grid( name );
        const Mesh closed = serial_mesh( grid, true );
        CHECK( mesh_stats( closed ).euler == 2 );
        CHECK( std::abs( spherical_area( closed ) - 4. * std::numbers::pi ) < 1e-6 * 4. * std::numbers::pi );
        for ( const auto& [edge, count] : edge_use( closed ) ) {
            CHECK( count == 2 );
        }
        const Mesh open = serial_mesh( grid, false );
        CHECK( mesh_stats( open ).euler == 0 );
        CHECK( spherical_area( open ) < 4. * std::numbers::pi );
    }
}

TEST_CASE( "elements are counter-clockwise seen from outside" ) {
    for ( const char* name : {"F4", "O4"} ) {
        const Mesh mesh = serial_mesh( Grid( name ), true );
        for ( const Element& e : mesh.elements() ) {
            const auto& n = mesh.nodes();
            for ( int c = 1; c + 1 < e.size(); ++c ) {
                CHECK( oracle::orientation( n[e.nodes[0]].xyz, n[e.nodes[c]].xyz, n[e.nodes[c + 1]].xyz ) > 0. );
            }
        }
    }
}

TEST_CASE( "spherical triangle area" ) {
    // octant triangle covers 1/8 of the sphere
    CHECK( spherical_triangle_area( {1, 0, 0}, {0, 1, 0}, {0, 0, 1} ) ==
           doctest::Approx( std::numbers::pi / 2 ).epsilon( 1e-14 ) );
    CHECK( spherical_triangle_area( {1, 0, 0}, {1, 0, 0}, {0, 0, 1} ) == doctest::Approx( 0. ) );
}

TEST_CASE( "partitioned meshes: ownership, ghosts and remote indices are consistent" ) {
    const Grid grid( "O8" );
    for ( int nparts : {1, 3, 4} ) {
        for ( int halo : {0, 1, 2, 3} ) {
            for ( bool pole : {false, true} ) {
                CAPTURE( nparts );
                CAPTURE( halo );
                CAPTURE( pole );
                const auto dist = blocks_partition( grid, nparts );
                std::vector<Mesh> meshes;
                for ( int p = 0; p < nparts; ++p ) {
                    meshes.push_back( generate_mesh( grid, dist, p, halo, pole ) );
                }
                const auto global = tessellate( grid, pole );
                gidx_t owned_grid = 0, owned_elements = 0;
                std::set<gidx_t> covered;
                for ( int p = 0; p < nparts; ++p ) {
                    const Mesh& m = meshes[p];
                    CHECK( m.halo_depth() == halo );
                    const auto s = mesh_stats( m );
                    owned_grid += s.owned_grid_nodes;
                    owned_elements += s.owned_elements;
                    if ( halo == 0 ) {
                        CHECK( s.ghost_nodes == 0 );
                    }
                    gidx_t prev = -1;
                    for ( idx_t n = 0; n < m.node_count(); ++n ) {
                        const Node& node = m.nodes()[n];
                        CHECK( node.ghost == ( node.halo_level >= 1 ) );
                        CHECK( node.ghost == ( n >= m.owned_count() ) );
                        CHECK( node.halo_level <= halo );
                        if ( !m.is_pole( node.global_index ) ) {
                            CHECK( node.partition == dist.partition( node.global_index ) );
                        }
                        if ( !node.ghost ) {
                            CHECK( node.partition == p );
                            CHECK( node.remote_index == n );
                            CHECK( node.global_index > prev );
                            prev = node.global_index;
                        }
                        else {
                            const Mesh& owner = meshes[node.partition];
                            REQUIRE( node.remote_index < owner.owned_count() );
                            CHECK( owner.nodes()[node.remote_index].global_index == node.global_index );
                        }
                    }
                    for ( const Element& e : m.elements() ) {
                        covered.insert( e.global_index );
                        CHECK( e.halo_level <= halo );
                        int owner = nparts;
                        for ( int c = 0; c < e.size(); ++c ) {
                            owner = std::min( owner, m.nodes()[e.nodes[c]].partition );
                            CHECK( global.nodes[e.global_index][c] == m.nodes()[e.nodes[c]].global_index );
                        }
                        CHECK( e.owner == owner );
                        if ( e.halo_level == 0 ) {
                            for ( int c = 0; c < e.size(); ++c ) {
                                CHECK( !m.nodes()[e.nodes[c]].ghost );
                            }
                        }
                    }
                }
                CHECK( owned_grid == grid.size() );
                if ( halo >= 1 ) {
                    CHECK( owned_elements == global.size() );
                    CHECK( static_cast<gidx_t>( covered.size() ) == global.size() );
                }
            }
        }
    }
}

TEST_CASE( "halo rings grow monotonically" ) {
    const Grid grid( "F8" );
    const auto dist = blocks_partition( grid, 4 );
    for ( int p = 0; p < 4; ++p ) {
        std::set<gidx_t> previous;
        for ( int depth = 0; depth <= 3; ++depth ) {
            const Halo h = build_halo( grid, dist, p, depth );
            std::set<gidx_t> now( h.ghost_nodes.begin(), h.ghost_nodes.end() );
            CHECK( std::includes( now.begin(), now.end(), previous.begin(), previous.end() ) );
            if ( depth > 0 ) {
                CHECK( now.size() > previous.size() );
            }
            for ( size_t k = 0; k + 1 < h.ghost_nodes.size(); ++k ) {
                const auto a = std::pair{h.ghost_levels[k], h.ghost_nodes[k]};
                const auto b = std::pair{h.ghost_levels[k + 1], h.ghost_nodes[k + 1]};
                CHECK( a < b );
            }
            previous = now;
        }
    }
}

TEST_CASE( "generate_mesh validates its arguments" ) {
    const Grid grid( "F2" );
    const auto dist = blocks_partition( grid, 2 );
    CHECK_THROWS_AS( generate_mesh( grid, dist, 2, 1, false ), InvalidArgument );
    CHECK_THROWS_AS( generate_mesh( grid, dist, 0, -1, false ), InvalidArgument );
    CHECK_THROWS_AS( generate_mesh( Grid( "F3" ), dist, 0, 1, false ), InvalidDistribution );
}

TEST_CASE( "Gmsh export of F1 with poles" ) {
    const Mesh mesh = serial_mesh( Grid( "F1" ), true );
    std::ostringstream a, b;
    write_gmsh( a, mesh );
    write_gmsh( b, mesh );
    CHECK( a.str() == b.str() );
    std::istringstream in( a.str() );
    std::string line;
    std::getline( in, line );
    CHECK( line == "$MeshFormat" );
    std::getline( in, line );
    CHECK( line == "2.2 0 8" );
    std::getline( in, line );
    std::getline( in, line );
    CHECK( line == "$Nodes" );
    std::getline( in, line );
    CHECK( line == "10" );
    for ( int k = 0; k < 10; ++k ) {
        std::getline( in, line );
    }
    std::getline( in, line );
    CHECK( line == "$EndNodes" );
    std::getline( in, line );
    CHECK( line == "$Elements" );
    std::getline( in, line );
    CHECK( line == "12" );
    int triangles = 0, quads = 0;
    for ( int k = 0; k < 12; ++k ) {
        std::getline( in, line );
        std::istringstream row( line );
        int id, type, ntags;
        row >> id >> type >> ntags;
        CHECK( ntags == 2 );
        ( type == 2 ? triangles : quads )++;
    }
    CHECK( triangles == 8 );
    CHECK( quads == 4 );
    CHECK( a.str().find( "$NodeData\n1\n\"partition\"" ) != std::string::npos );
}
