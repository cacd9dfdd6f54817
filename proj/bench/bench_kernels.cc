/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

// Serial reference kernels against their OpenMP variants.

#include <optional>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "orbis/grid/Grid.h"
#include "orbis/interp/Locator.h"
#include "orbis/kernels/Kernels.h"
#include "orbis/kernels/LocateKernels.h"
#include "orbis/mesh/Mesh.h"
#include "orbis/partition/Distribution.h"

using namespace orbis;

namespace {

const Grid& source_grid() {
    static const Grid grid( "O64" );
    return grid;
}

const std::vector<PointXYZ>& queries() {
    static const std::vector<PointXYZ> q = Grid( "F48" ).xyz();
    return q;
}

void nearest_ids( benchmark::State& state, Execution ex ) {
    const PointIndex index( source_grid().xyz() );
    std::vector<gidx_t> out( queries().size() );
    for ( auto _ : state ) {
        kernels::nearest_ids( ex, index, queries(), out );
        benchmark::DoNotOptimize( out.data() );
    }
    state.SetItemsProcessed( state.iterations() * static_cast<int64_t>( queries().size() ) );
}

void locate_all( benchmark::State& state, Execution ex ) {
    const Mesh mesh = generate_mesh( source_grid(), blocks_partition( source_grid(), 1 ), 0, 0, true );
    const ElementLocator locator( mesh );
    std::vector<std::optional<kernels::Location>> out( queries().size() );
    for ( auto _ : state ) {
        kernels::locate_all( ex, locator, queries(), out );
        benchmark::DoNotOptimize( out.data() );
    }
    state.SetItemsProcessed( state.iterations() * static_cast<int64_t>( queries().size() ) );
}

void apply_weights( benchmark::State& state, Execution ex ) {
    const idx_t levels  = static_cast<idx_t>( state.range( 0 ) );
    const idx_t ntarget = 20000, nsource = 20000;
    std::mt19937 rng( 1 );
    std::uniform_int_distribution<idx_t> pick( 0, nsource - 1 );
    std::vector<idx_t> nodes( 3 * ntarget );
    std::vector<double> weights( 3 * ntarget, 1. / 3. ), source( static_cast<size_t>( nsource ) * levels, 1. );
    std::vector<double> target( static_cast<size_t>( ntarget ) * levels );
    for ( auto& n : nodes ) {
        n = pick( rng );
    }
    for ( auto _ : state ) {
        kernels::apply_weights( ex, nodes, weights, source, target, levels );
        benchmark::DoNotOptimize( target.data() );
    }
    state.SetItemsProcessed( state.iterations() * static_cast<int64_t>( ntarget ) * levels );
}

}  // namespace

BENCHMARK_CAPTURE( nearest_ids, serial, Execution::Serial )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( nearest_ids, openmp, Execution::Parallel )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( locate_all, serial, Execution::Serial )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( locate_all, openmp, Execution::Parallel )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( apply_weights, serial, Execution::Serial )->Arg( 1 )->Arg( 10 )->Arg( 100 );
BENCHMARK_CAPTURE( apply_weights, openmp, Execution::Parallel )->Arg( 1 )->Arg( 10 )->Arg( 100 );

BENCHMARK_MAIN();
