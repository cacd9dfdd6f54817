/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/kernels/LocateKernels.h"

#include "orbis/kernels/Kernels.h"
#include "orbis/runtime/Exception.h"

namespace orbis::kernels {

void locate_all_serial( const ElementLocator& locator, std::span<const PointXYZ> queries,
                        std::span<std::optional<Location>> out ) {
    for ( size_t q = 0; q < queries.size(); ++q ) {
        out[q] = locator.locate( queries[q] );
    }
}

void locate_all_omp( const ElementLocator& locator, std::span<const PointXYZ> queries,
                     std::span<std::optional<Location>> out ) {
    const long n = static_cast<long>( queries.size() );
#pragma omp parallel for schedule( dynamic, 64 ) if ( n > omp_threshold )
    for ( long q = 0; q < n; ++q ) {
        out[q] = locator.locate( queries[q] );
    }
}

void locate_all( Execution exec, const ElementLocator& locator, std::span<const PointXYZ> queries,
                 std::span<std::optional<Location>> out ) {
    if ( out.size() != queries.size() ) {
        throw ShapeMismatch( "locate_all: output size differs from query count" );
    }
    exec == Execution::Parallel ? locate_all_omp( locator, queries, out ) : locate_all_serial( locator, queries, out );
}

}  // namespace orbis::kernels
