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
#include <vector>

#include "json.hpp"

#include "orbis/field/Field.h"
#include "orbis/functionspace/FunctionSpace.h"
#include "orbis/grid/Grid.h"
#include "orbis/parallel/RankSimulator.h"
#include "orbis/partition/Distribution.h"

namespace orbis {

struct RemapOptions {
    /// Use the nearest local source node (weight 1) for unlocated targets
    /// instead of failing.
    bool allow_fallback{false};
    Execution execution{Execution::Parallel};
};

/// Sparse remapping operator for the locally owned target points of one rank.
/// Row t interpolates target point target_global[t] from three local source nodes.
struct InterpolationWeights {
    struct Row {
        idx_t element;                       // -1 for fallback rows
        std::array<idx_t, 3> nodes;          // local source node indices
        std::array<gidx_t, 3> source_global;
        std::array<double, 3> weights;
        bool fallback;
    };

    std::vector<gidx_t> target_global;
    std::vector<Row> rows;
    idx_t source_size{0};  // local source node count

    idx_t size() const { return static_cast<idx_t>( rows.size() ); }
};

/// Builds weights for the target points `target_dist` assigns to this rank by
/// locating each in the local (owned + halo) source elements. No messages are
/// exchanged; with a matching distribution and halo >= 2 every target is found.
/// @throws NotLocated (with the target global index) unless fallback is allowed
InterpolationWeights build_remap( const NodeColumns& source, const Grid& target, const Distribution& target_dist,
                                  parallel::Communicator&, const RemapOptions& = {} );

/// target[t] = sum_k w_k * source[node_k], per level. Real64 fields only.
/// @throws ShapeMismatch, KindMismatch, StaleHost
void apply_remap( const InterpolationWeights&, Field& source, Field& target, Execution = Execution::Parallel );

/// Rows {target_global_index, source_global_indices[], weights[], fallback}.
nlohmann::json to_json( const InterpolationWeights& );

}  // namespace orbis
