/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/partition/Distribution.h"

#include <string>

#include "orbis/kernels/Kernels.h"
#include "orbis/partition/PointIndex.h"
#include "orbis/runtime/Exception.h"

namespace orbis {

Distribution::Distribution( int nparts, std::vector<int> part_of ) :
    nparts_( nparts ), part_of_( std::move( part_of ) ), counts_( static_cast<size_t>( std::max( nparts, 0 ) ), 0 ) {
    if ( nparts < 1 ) {
        throw InvalidDistribution( "distribution needs at least one partition" );
    }
    for ( int p : part_of_ ) {
        if ( p < 0 || p >= nparts_ ) {
            throw InvalidDistribution( "partition id " + std::to_string( p ) + " outside [0, " +
                                       std::to_string( nparts_ ) + ")" );
        }
        ++counts_[p];
    }
}

nlohmann::json to_json( const Distribution& dist ) {
    return {{"nparts", dist.nparts()}, {"counts", dist.counts()}, {"part_of", dist.part_of()}};
}

Distribution blocks_partition( const Grid& grid, int nparts ) {
    if ( nparts < 1 ) {
        throw InvalidArgument( "blocks_partition: nparts must be >= 1" );
    }
    const gidx_t npts = grid.size();
    if ( nparts > npts ) {
        throw TooManyParts( "cannot split " + std::to_string( npts ) + " points of grid " + grid.name() + " into " +
                            std::to_string( nparts ) + " partitions" );
    }
    const gidx_t base  = npts / nparts;
    const gidx_t extra = npts % nparts;
    std::vector<int> part_of( static_cast<size_t>( npts ) );
    gidx_t g = 0;
    for ( int p = 0; p < nparts; ++p ) {
        const gidx_t chunk = base + ( p < extra ? 1 : 0 );
        for ( gidx_t k = 0; k < chunk; ++k ) {
            part_of[g++] = p;
        }
    }
    return Distribution( nparts, std::move( part_of ) );
}

Distribution matching_partition( const Grid& target, const Grid& master, const Distribution& master_dist,
                                 Execution exec ) {
    if ( master_dist.size() != master.size() ) {
        throw InvalidDistribution( "master distribution size does not match master grid " + master.name() );
    }
    const PointIndex index( master.xyz() );
    const std::vector<PointXYZ> queries = target.xyz();
    std::vector<gidx_t> nearest( queries.size() );
    kernels::nearest_ids( exec, index, queries, nearest );

    std::vector<int> part_of( queries.size() );
    for ( size_t k = 0; k < queries.size(); ++k ) {
        part_of[k] = master_dist.partition( nearest[k] );
    }
    return Distribution( master_dist.nparts(), std::move( part_of ) );
}

}  // namespace orbis
