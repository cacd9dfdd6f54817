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

#include <vector>

#include "json.hpp"

#include "orbis/grid/Grid.h"
#include "orbis/util/Types.h"

namespace orbis {

/// Owner partition of every grid point.
class Distribution {
public:
    Distribution() = default;
    /// @throws InvalidDistribution if any part id is outside [0, nparts)
    Distribution( int nparts, std::vector<int> part_of );

    int nparts() const { return nparts_; }
    gidx_t size() const { return static_cast<gidx_t>( part_of_.size() ); }
    int partition( gidx_t g ) const { return part_of_[static_cast<size_t>( g )]; }
    const std::vector<int>& part_of() const { return part_of_; }
    const std::vector<gidx_t>& counts() const { return counts_; }

    bool operator==( const Distribution& o ) const { return nparts_ == o.nparts_ && part_of_ == o.part_of_; }

private:
    int nparts_{0};
    std::vector<int> part_of_;
    std::vector<gidx_t> counts_;
};

/// {nparts, counts, part_of}
nlohmann::json to_json( const Distribution& );

/// Contiguous chunks of the canonical point order; the first (npts mod nparts)
/// chunks hold one extra point.
/// @throws TooManyParts if nparts > npts; InvalidArgument if nparts < 1
Distribution blocks_partition( const Grid&, int nparts );

/// Slaves `target` to the master decomposition: every target point takes the
/// partition of its nearest master point (ties to the smaller master index).
Distribution matching_partition( const Grid& target, const Grid& master, const Distribution& master_dist,
                                 Execution = Execution::Parallel );

}  // namespace orbis
