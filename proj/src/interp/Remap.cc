/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/interp/Remap.h"

#include <sstream>

#include "orbis/interp/Locator.h"
#include "orbis/kernels/Kernels.h"
#include "orbis/kernels/LocateKernels.h"

namespace orbis {

InterpolationWeights build_remap( const NodeColumns& source, const Grid& target, const Distribution& target_dist,
                                  parallel::Communicator& comm, const RemapOptions& options ) {
    const Mesh& mesh = source.mesh();
    if ( target_dist.size() != target.size() ) {
        throw InvalidDistribution( "target distribution does not match grid " + target.name() );
    }
    if ( target_dist.nparts() != comm.size() ) {
        throw InvalidDistribution( "target distribution has " + std::to_string( target_dist.nparts() ) +
                                   " partitions, running on " + std::to_string( comm.size() ) + " ranks" );
    }

    InterpolationWeights w;
    w.source_size = mesh.node_count();
    for ( gidx_t g = 0; g < target.size(); ++g ) {
        if ( target_dist.partition( g ) == comm.rank() ) {
            w.target_global.push_back( g );
        }
    }
    std::vector<PointXYZ> queries;
    queries.reserve( w.target_global.size() );
    for ( gidx_t g : w.target_global ) {
        queries.push_back( target.xyz( g ) );
    }

    const ElementLocator locator( mesh );
    std::vector<std::optional<ElementLocator::Location>> found( queries.size() );
    kernels::locate_all( options.execution, locator, queries, found );

    w.rows.reserve( queries.size() );
    for ( size_t t = 0; t < queries.size(); ++t ) {
        InterpolationWeights::Row row{};
        if ( found[t] ) {
            const auto& loc = *found[t];
            row.element     = loc.element;
            row.nodes       = loc.nodes;
            row.weights     = barycentric_weights( locator.triangle( loc ), queries[t] );
            row.fallback    = false;
        }
        else if ( options.allow_fallback ) {
            const idx_t n = locator.nearest_node( queries[t] );
            row.element   = -1;
            row.nodes     = {n, n, n};
            row.weights   = {1., 0., 0.};
            row.fallback  = true;
        }
        else {
            std::ostringstream msg;
            msg << "target point " << w.target_global[t] << " of grid " << target.name()
                << " is not contained in any local source element on rank " << comm.rank()
                << " (source halo " << mesh.halo_depth() << ", poles "
                << ( mesh.include_pole() ? "included" : "excluded" )
                << "); increase the source halo or enable fallback";
            throw NotLocated( w.target_global[t], msg.str() );
        }
        for ( int k = 0; k < 3; ++k ) {
            row.source_global[k] = mesh.nodes()[row.nodes[k]].global_index;
        }
        w.rows.push_back( row );
    }
    return w;
}

void apply_remap( const InterpolationWeights& w, Field& source, Field& target, Execution exec ) {
    if ( source.npts() != w.source_size ) {
        throw ShapeMismatch( "apply_remap: source field '" + source.name() + "' has " +
                             std::to_string( source.npts() ) + " points, operator expects " +
                             std::to_string( w.source_size ) );
    }
    if ( target.npts() != w.size() ) {
        throw ShapeMismatch( "apply_remap: target field '" + target.name() + "' has " +
                             std::to_string( target.npts() ) + " points, operator has " + std::to_string( w.size() ) +
                             " rows" );
    }
    if ( source.levels() != target.levels() ) {
        throw ShapeMismatch( "apply_remap: source and target differ in number of levels" );
    }

    std::vector<idx_t> nodes( 3 * w.rows.size() );
    std::vector<double> weights( 3 * w.rows.size() );
    for ( size_t t = 0; t < w.rows.size(); ++t ) {
        for ( int k = 0; k < 3; ++k ) {
            nodes[3 * t + k]   = w.rows[t].nodes[k];
            weights[3 * t + k] = w.rows[t].weights[k];
        }
    }
    auto in  = source.host_view<const double>( Intent::Read );
    auto out = target.host_view<double>( Intent::ReadWrite );
    kernels::apply_weights( exec, nodes, weights, in.span(), out.span(), source.levels() );
}

nlohmann::json to_json( const InterpolationWeights& w ) {
    auto rows = nlohmann::json::array();
    for ( size_t t = 0; t < w.rows.size(); ++t ) {
        const auto& r = w.rows[t];
        rows.push_back( {{"target_global_index", w.target_global[t]},
                         {"source_global_indices", r.source_global},
                         {"weights", r.weights},
                         {"fallback", r.fallback}} );
    }
    return rows;
}

}  // namespace orbis
