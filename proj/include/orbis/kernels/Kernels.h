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
#include "orbis/partition/PointIndex.h"
#include "orbis/util/Types.h"

/// Data-parallel inner loops. Every kernel has a serial reference and an
/// OpenMP variant producing bitwise identical results; `Execution` selects
/// between them.
namespace orbis::kernels {

/// out[q] = id of the nearest indexed point to queries[q]
void nearest_ids_serial( const PointIndex&, std::span<const PointXYZ> queries, std::span<gidx_t> out );
void nearest_ids_omp( const PointIndex&, std::span<const PointXYZ> queries, std::span<gidx_t> out );
void nearest_ids( Execution, const PointIndex&, std::span<const PointXYZ> queries, std::span<gidx_t> out );

/// Sparse weighted gather with three entries per row:
///   target[t*levels + l] = sum_k weights[3t+k] * source[nodes[3t+k]*levels + l]
void apply_weights_serial( std::span<const idx_t> nodes, std::span<const double> weights,
                           std::span<const double> source, std::span<double> target, idx_t levels );
void apply_weights_omp( std::span<const idx_t> nodes, std::span<const double> weights,
                        std::span<const double> source, std::span<double> target, idx_t levels );
void apply_weights( Execution, std::span<const idx_t> nodes, std::span<const double> weights,
                    std::span<const double> source, std::span<double> target, idx_t levels );

/// Parallel loops below this many iterations run serially.
inline constexpr long omp_threshold = 256;

bool openmp_enabled();

}  // namespace orbis::kernels
