/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/kernels/Kernels.h"

#include "orbis/runtime/Exception.h"

#if defined( _OPENMP )
#include <omp.h>
#endif

namespace orbis::kernels {

bool openmp_enabled() {
#if defined( _OPENMP )
    return true;
#else
    return false;
#endif
}

void nearest_ids_serial( const PointIndex& index, std::span<const PointXYZ> queries, std::span<gidx_t> out ) {
    for ( size_t q = 0; q < queries.size(); ++q ) {
        out[q] = index.nearest( queries[q] ).id;
    }
}

void nearest_ids_omp( const PointIndex& index, std::span<const PointXYZ> queries, std::span<gidx_t> out ) {
    const long n = static_cast<long>( queries.size() );
#pragma omp parallel for schedule( static ) if ( n > omp_threshold )
    for ( long q = 0; q < n; ++q ) {
        out[q] = index.nearest( queries[q] ).id;
    }
}

void nearest_ids( Execution exec, const PointIndex& index, std::span<const PointXYZ> queries, std::span<gidx_t> out ) {
    if ( out.size() != queries.size() ) {
        throw ShapeMismatch( "nearest_ids: output size differs from query count" );
    }
    exec == Execution::Parallel ? nearest_ids_omp( index, queries, out ) : nearest_ids_serial( index, queries, out );
}

namespace {
inline void weighted_row( const idx_t* nodes, const double* w, const double* source, double* target, idx_t levels ) {
    for ( idx_t l = 0; l < levels; ++l ) {
        double v = 0.;
        for ( int k = 0; k < 3; ++k ) {
            v += w[k] * source[static_cast<size_t>( nodes[k] ) * levels + l];
        }
        target[l] = v;
    }
}
}  // namespace

void apply_weights_serial( std::span<const idx_t> nodes, std::span<const double> weights,
                           std::span<const double> source, std::span<double> target, idx_t levels ) {
    const size_t rows = weights.size() / 3;
    for ( size_t t = 0; t < rows; ++t ) {
        weighted_row( nodes.data() + 3 * t, weights.data() + 3 * t, source.data(), target.data() + t * levels,
                      levels );
    }
}

void apply_weights_omp( std::span<const idx_t> nodes, std::span<const double> weights,
                        std::span<const double> source, std::span<double> target, idx_t levels ) {
    const long rows = static_cast<long>( weights.size() / 3 );
#pragma omp parallel for schedule( static ) if ( rows > omp_threshold )
    for ( long t = 0; t < rows; ++t ) {
        weighted_row( nodes.data() + 3 * t, weights.data() + 3 * t, source.data(), target.data() + t * levels,
                      levels );
    }
}

void apply_weights( Execution exec, std::span<const idx_t> nodes, std::span<const double> weights,
                    std::span<const double> source, std::span<double> target, idx_t levels ) {
    if ( nodes.size() != weights.size() || weights.size() % 3 != 0 ||
         target.size() != weights.size() / 3 * static_cast<size_t>( levels ) ) {
        throw ShapeMismatch( "apply_weights: inconsistent operator and target sizes" );
    }
    exec == Execution::Parallel ? apply_weights_omp( nodes, weights, source, target, levels )
                                : apply_weights_serial( nodes, weights, source, target, levels );
}

}  // namespace orbis::kernels
