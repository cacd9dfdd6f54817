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

#include <cstdint>
#include <string>
#include <vector>

#include "orbis/field/Field.h"
#include "orbis/grid/Grid.h"
#include "orbis/mesh/Mesh.h"
#include "orbis/parallel/RankSimulator.h"
#include "orbis/partition/Distribution.h"

namespace orbis {

/// Locally owned grid points of a function space: their local and global indices.
struct OwnedPoints {
    std::vector<idx_t> local;
    std::vector<gidx_t> global;
    gidx_t global_size{0};  // number of grid points over all partitions
    idx_t local_size{0};    // field npts on this partition
};

/// Per-peer index lists for halo exchange. Send lists hold local indices of
/// owned nodes a peer keeps as ghosts; receive lists hold local indices of
/// ghosts owned by that peer. Both sides list nodes in the receiver's ghost
/// order, so global-index sequences match pairwise.
class HaloExchangePlan {
public:
    struct Peer {
        int rank;
        std::vector<idx_t> local;
        std::vector<gidx_t> global;
    };

    const std::vector<Peer>& sends() const { return sends_; }
    const std::vector<Peer>& receives() const { return receives_; }
    idx_t node_count() const { return node_count_; }

private:
    friend HaloExchangePlan build_exchange_plan( const Mesh&, parallel::Communicator& );
    std::vector<Peer> sends_;
    std::vector<Peer> receives_;
    idx_t node_count_{0};
};

/// Collective. Each rank sends every other rank the global indices of the
/// ghosts it owns (one request message per peer, possibly empty).
/// @throws InconsistentMesh if a requested node is not owned by the addressee
HaloExchangePlan build_exchange_plan( const Mesh&, parallel::Communicator& );

/// Collective. Copies owner values into every ghost entry, all levels, with one
/// message per send peer.
/// @throws StaleHost, PlanMismatch
void halo_exchange( const HaloExchangePlan&, Field&, parallel::Communicator& );

/// Fields on mesh nodes (owned + ghosts).
class NodeColumns {
public:
    /// Collective: builds the exchange plan.
    NodeColumns( Mesh mesh, parallel::Communicator& );

    const Mesh& mesh() const { return mesh_; }
    const HaloExchangePlan& plan() const { return plan_; }
    int halo() const { return mesh_.halo_depth(); }
    idx_t size() const { return mesh_.node_count(); }

    Field create_field( std::string name, idx_t levels = 1, DataKind kind = DataKind::Real64 ) const;

    /// Owned grid nodes; pole nodes are excluded.
    const OwnedPoints& owned() const { return owned_; }
    std::vector<gidx_t> global_indices() const;

    void halo_exchange( Field& field, parallel::Communicator& comm ) const { orbis::halo_exchange( plan_, field, comm ); }

    std::string tag() const;

private:
    Mesh mesh_;
    HaloExchangePlan plan_;
    OwnedPoints owned_;
};

/// Fields on the grid points a distribution assigns to one partition. No halo.
class StructuredColumns {
public:
    StructuredColumns( const Grid&, const Distribution&, int part );

    int partition() const { return part_; }
    idx_t size() const { return static_cast<idx_t>( owned_.global.size() ); }
    const std::vector<gidx_t>& local_points() const { return owned_.global; }
    const OwnedPoints& owned() const { return owned_; }

    Field create_field( std::string name, idx_t levels = 1, DataKind kind = DataKind::Real64 ) const;

    std::string tag() const;

private:
    int part_;
    OwnedPoints owned_;
};

/// Collective. Rank 0 returns the global field in canonical order (taken from
/// owners only); other ranks return an invalid Field.
Field gather_field( const OwnedPoints&, Field&, parallel::Communicator& );
inline Field gather_field( const NodeColumns& fs, Field& f, parallel::Communicator& c ) { return gather_field( fs.owned(), f, c ); }
inline Field gather_field( const StructuredColumns& fs, Field& f, parallel::Communicator& c ) { return gather_field( fs.owned(), f, c ); }

/// Collective inverse of gather_field: owned entries of `local` take the values
/// of `global` (significant on rank 0 only). Ghost entries are untouched.
void scatter_field( const OwnedPoints&, const Field* global, Field& local, parallel::Communicator& );

/// 64-bit order-independent digest over owned points:
///   sum (mod 2^64) over (g, level) of mix(g, level, value bits).
/// Identical on every rank and for every partition count.
std::uint64_t checksum( const OwnedPoints&, Field&, parallel::Communicator& );
inline std::uint64_t checksum( const NodeColumns& fs, Field& f, parallel::Communicator& c ) { return checksum( fs.owned(), f, c ); }
inline std::uint64_t checksum( const StructuredColumns& fs, Field& f, parallel::Communicator& c ) { return checksum( fs.owned(), f, c ); }

/// The mixing function used by checksum; splitmix64 finaliser chained over
/// global index, level and the zero-extended value bit pattern.
std::uint64_t checksum_mix( gidx_t g, idx_t level, std::uint64_t bits );

std::string checksum_hex( std::uint64_t );

}  // namespace orbis
