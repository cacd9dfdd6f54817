/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/functionspace/FunctionSpace.h"

#include <algorithm>
#include <cstring>
#include <iomanip>
#include <map>
#include <sstream>

namespace orbis {

namespace {

constexpr int plan_tag     = 101;
constexpr int exchange_tag = 102;
constexpr int scatter_tag  = 103;

std::uint64_t splitmix64( std::uint64_t x ) {
    x += 0x9E3779B97F4A7C15ULL;
    x = ( x ^ ( x >> 30 ) ) * 0xBF58476D1CE4E5B9ULL;
    x = ( x ^ ( x >> 27 ) ) * 0x94D049BB133111EBULL;
    return x ^ ( x >> 31 );
}

// owned nodes come first and are sorted by global index
idx_t owned_local_index( const Mesh& mesh, gidx_t g ) {
    const auto begin = mesh.nodes().begin();
    const auto end   = begin + mesh.owned_count();
    auto it = std::lower_bound( begin, end, g, []( const Node& n, gidx_t v ) { return n.global_index < v; } );
    if ( it == end || it->global_index != g ) {
        return -1;
    }
    return static_cast<idx_t>( it - begin );
}

}  // namespace

HaloExchangePlan build_exchange_plan( const Mesh& mesh, parallel::Communicator& comm ) {
    const int nranks = comm.size();
    const int me     = comm.rank();
    if ( mesh.nparts() != nranks || mesh.partition() != me ) {
        throw InconsistentMesh( "mesh of partition " + std::to_string( mesh.partition() ) + "/" +
                                std::to_string( mesh.nparts() ) + " used on rank " + std::to_string( me ) + "/" +
                                std::to_string( nranks ) );
    }

    HaloExchangePlan plan;
    plan.node_count_ = mesh.node_count();

    std::map<int, HaloExchangePlan::Peer> recv;
    for ( idx_t n = mesh.owned_count(); n < mesh.node_count(); ++n ) {
        const Node& node = mesh.nodes()[n];
        auto& peer       = recv[node.partition];
        peer.rank        = node.partition;
        peer.local.push_back( n );
        peer.global.push_back( node.global_index );
    }

    for ( int r = 0; r < nranks; ++r ) {
        if ( r == me ) {
            continue;
        }
        auto it = recv.find( r );
        const std::vector<gidx_t> request = it == recv.end() ? std::vector<gidx_t>{} : it->second.global;
        comm.send_values<gidx_t>( r, plan_tag, request );
    }
    for ( int r = 0; r < nranks; ++r ) {
        if ( r == me ) {
            continue;
        }
        std::vector<gidx_t> requested = comm.receive_values<gidx_t>( r, plan_tag );
        if ( requested.empty() ) {
            continue;
        }
        HaloExchangePlan::Peer peer{r, {}, {}};
        for ( gidx_t g : requested ) {
            const idx_t local = owned_local_index( mesh, g );
            if ( local < 0 ) {
                throw InconsistentMesh( "rank " + std::to_string( r ) + " requested node " + std::to_string( g ) +
                                        " which rank " + std::to_string( me ) + " does not own" );
            }
            peer.local.push_back( local );
        }
        peer.global = std::move( requested );
        plan.sends_.push_back( std::move( peer ) );
    }
    for ( auto& [rank, peer] : recv ) {
        plan.receives_.push_back( std::move( peer ) );
    }
    return plan;
}

void halo_exchange( const HaloExchangePlan& plan, Field& field, parallel::Communicator& comm ) {
    if ( field.npts() != plan.node_count() ) {
        throw PlanMismatch( "field '" + field.name() + "' has " + std::to_string( field.npts() ) +
                            " points, exchange plan expects " + std::to_string( plan.node_count() ) );
    }
    auto bytes         = field.host_bytes( Intent::ReadWrite );
    const size_t width = static_cast<size_t>( bytes.shape( 1 ) );

    for ( const auto& peer : plan.sends() ) {
        parallel::Payload buffer( peer.local.size() * width );
        for ( size_t k = 0; k < peer.local.size(); ++k ) {
            std::memcpy( buffer.data() + k * width, &bytes( peer.local[k], 0 ), width );
        }
        comm.send( peer.rank, exchange_tag, buffer );
    }
    for ( const auto& peer : plan.receives() ) {
        const parallel::Payload buffer = comm.receive( peer.rank, exchange_tag );
        if ( buffer.size() != peer.local.size() * width ) {
            throw PlanMismatch( "halo exchange payload from rank " + std::to_string( peer.rank ) +
                                " has unexpected size" );
        }
        for ( size_t k = 0; k < peer.local.size(); ++k ) {
            std::memcpy( &bytes( peer.local[k], 0 ), buffer.data() + k * width, width );
        }
    }
}

NodeColumns::NodeColumns( Mesh mesh, parallel::Communicator& comm ) :
    mesh_( std::move( mesh ) ), plan_( build_exchange_plan( mesh_, comm ) ) {
    owned_.global_size = mesh_.grid_size();
    owned_.local_size  = mesh_.node_count();
    for ( idx_t n = 0; n < mesh_.owned_count(); ++n ) {
        const gidx_t g = mesh_.nodes()[n].global_index;
        if ( !mesh_.is_pole( g ) ) {
            owned_.local.push_back( n );
            owned_.global.push_back( g );
        }
    }
}

Field NodeColumns::create_field( std::string name, idx_t levels, DataKind kind ) const {
    return Field( std::move( name ), mesh_.node_count(), levels, kind, tag() );
}

std::vector<gidx_t> NodeColumns::global_indices() const {
    std::vector<gidx_t> g;
    g.reserve( mesh_.nodes().size() );
    for ( const Node& n : mesh_.nodes() ) {
        g.push_back( n.global_index );
    }
    return g;
}

std::string NodeColumns::tag() const {
    return "NodeColumns[part=" + std::to_string( mesh_.partition() ) + ",halo=" + std::to_string( halo() ) + "]";
}

StructuredColumns::StructuredColumns( const Grid& grid, const Distribution& dist, int part ) : part_( part ) {
    if ( dist.size() != grid.size() ) {
        throw InvalidDistribution( "distribution does not match grid " + grid.name() );
    }
    owned_.global_size = grid.size();
    for ( gidx_t g = 0; g < grid.size(); ++g ) {
        if ( dist.partition( g ) == part ) {
            owned_.local.push_back( static_cast<idx_t>( owned_.global.size() ) );
            owned_.global.push_back( g );
        }
    }
    owned_.local_size = static_cast<idx_t>( owned_.global.size() );
}

Field StructuredColumns::create_field( std::string name, idx_t levels, DataKind kind ) const {
    return Field( std::move( name ), size(), levels, kind, tag() );
}

std::string StructuredColumns::tag() const {
    return "StructuredColumns[part=" + std::to_string( part_ ) + "]";
}

Field gather_field( const OwnedPoints& owned, Field& field, parallel::Communicator& comm ) {
    if ( field.npts() != owned.local_size ) {
        throw ShapeMismatch( "gather_field: field '" + field.name() + "' does not belong to this function space" );
    }
    parallel::Payload values;
    {
        auto bytes         = field.host_bytes( Intent::Read );
        const size_t width = static_cast<size_t>( bytes.shape( 1 ) );
        values.resize( owned.local.size() * width );
        for ( size_t k = 0; k < owned.local.size(); ++k ) {
            std::memcpy( values.data() + k * width, &bytes( owned.local[k], 0 ), width );
        }
    }
    auto indices = comm.gather_values_to_root<gidx_t>( owned.global );
    auto payload = comm.gather_to_root( values );
    if ( comm.rank() != 0 ) {
        return Field();
    }

    Field global( field.name(), static_cast<idx_t>( owned.global_size ), field.levels(), field.kind(),
                  field.functionspace_tag() );
    auto out           = global.host_bytes( Intent::ReadWrite );
    const size_t width = static_cast<size_t>( out.shape( 1 ) );
    for ( size_t r = 0; r < indices.size(); ++r ) {
        for ( size_t k = 0; k < indices[r].size(); ++k ) {
            std::memcpy( &out( static_cast<idx_t>( indices[r][k] ), 0 ), payload[r].data() + k * width, width );
        }
    }
    out.release();
    return global;
}

void scatter_field( const OwnedPoints& owned, const Field* global, Field& local, parallel::Communicator& comm ) {
    if ( local.npts() != owned.local_size ) {
        throw ShapeMismatch( "scatter_field: field '" + local.name() + "' does not belong to this function space" );
    }
    auto indices = comm.gather_values_to_root<gidx_t>( owned.global );

    parallel::Payload mine;
    if ( comm.rank() == 0 ) {
        if ( global == nullptr || global->npts() != owned.global_size || global->levels() != local.levels() ||
             global->kind() != local.kind() ) {
            throw ShapeMismatch( "scatter_field: global field missing or inconsistent on root" );
        }
        auto in            = const_cast<Field*>( global )->host_bytes( Intent::Read );
        const size_t width = static_cast<size_t>( in.shape( 1 ) );
        for ( size_t r = 0; r < indices.size(); ++r ) {
            parallel::Payload buffer( indices[r].size() * width );
            for ( size_t k = 0; k < indices[r].size(); ++k ) {
                std::memcpy( buffer.data() + k * width, &in( static_cast<idx_t>( indices[r][k] ), 0 ), width );
            }
            if ( r == 0 ) {
                mine = std::move( buffer );
            }
            else {
                comm.send( static_cast<int>( r ), scatter_tag, buffer );
            }
        }
    }
    else {
        mine = comm.receive( 0, scatter_tag );
    }

    auto out           = local.host_bytes( Intent::ReadWrite );
    const size_t width = static_cast<size_t>( out.shape( 1 ) );
    for ( size_t k = 0; k < owned.local.size(); ++k ) {
        std::memcpy( &out( owned.local[k], 0 ), mine.data() + k * width, width );
    }
}

std::uint64_t checksum_mix( gidx_t g, idx_t level, std::uint64_t bits ) {
    std::uint64_t h = splitmix64( static_cast<std::uint64_t>( g ) );
    h               = splitmix64( h ^ static_cast<std::uint64_t>( level ) );
    return splitmix64( h ^ bits );
}

std::uint64_t checksum( const OwnedPoints& owned, Field& field, parallel::Communicator& comm ) {
    if ( field.npts() != owned.local_size ) {
        throw ShapeMismatch( "checksum: field '" + field.name() + "' does not belong to this function space" );
    }
    std::uint64_t partial = 0;
    {
        auto bytes         = field.host_bytes( Intent::Read );
        const size_t esize = size_of( field.kind() );
        for ( size_t k = 0; k < owned.local.size(); ++k ) {
            for ( idx_t l = 0; l < field.levels(); ++l ) {
                std::uint64_t bits = 0;
                std::memcpy( &bits, &bytes( owned.local[k], static_cast<idx_t>( l * esize ) ), esize );
                partial += checksum_mix( owned.global[k], l, bits );
            }
        }
    }
    const std::uint64_t one[1] = {partial};
    std::uint64_t total        = 0;
    for ( const auto& p : comm.gather_values_to_root<std::uint64_t>( one ) ) {
        total += p.at( 0 );
    }
    const std::uint64_t result[1] = {total};
    const auto b                  = comm.broadcast_from_root( std::as_bytes( std::span( result ) ) );
    return parallel::Communicator::from_bytes<std::uint64_t>( b ).at( 0 );
}

std::string checksum_hex( std::uint64_t digest ) {
    std::ostringstream out;
    out << std::hex << std::setw( 16 ) << std::setfill( '0' ) << digest;
    return out.str();
}

}  // namespace orbis
