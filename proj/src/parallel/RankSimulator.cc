/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/parallel/RankSimulator.h"

#include <string>

namespace orbis::parallel {

namespace detail {

World::World( int nranks ) :
    nranks_( nranks ),
    mailboxes_( static_cast<size_t>( nranks ) ),
    waits_( static_cast<size_t>( nranks ) ),
    finished_( static_cast<size_t>( nranks ), false ),
    counters_( static_cast<size_t>( nranks ) ) {}

void World::check_rank( int rank, const char* what ) const {
    if ( rank < 0 || rank >= nranks_ ) {
        throw InvalidRank( std::string( what ) + ": rank " + std::to_string( rank ) + " outside [0, " +
                           std::to_string( nranks_ ) + ")" );
    }
}

bool World::ready( int rank ) const {
    const Wait& w = waits_[rank];
    switch ( w.kind ) {
        case WaitKind::None:
            return true;
        case WaitKind::Receive: {
            auto it = mailboxes_[rank].find( {w.source, w.tag} );
            return it != mailboxes_[rank].end() && !it->second.empty();
        }
        case WaitKind::Barrier:
            return barrier_generation_ > w.generation;
    }
    return true;
}

// Deadlock: every unfinished rank waits on a condition nothing can satisfy any more.
bool World::detect_deadlock() {
    if ( deadlock_ ) {
        return true;
    }
    bool any_waiting = false;
    for ( int r = 0; r < nranks_; ++r ) {
        if ( finished_[r] ) {
            continue;
        }
        if ( ready( r ) ) {
            return false;
        }
        any_waiting = true;
    }
    if ( any_waiting ) {
        deadlock_ = true;
        cv_.notify_all();
    }
    return deadlock_;
}

void World::send( int source, int dest, int tag, Payload payload ) {
    std::lock_guard lock( mutex_ );
    Counters& c = counters_[source];
    c.messages_sent += 1;
    c.bytes_sent += static_cast<std::int64_t>( payload.size() );
    mailboxes_[dest][{source, tag}].push_back( std::move( payload ) );
    cv_.notify_all();
}

Payload World::receive( int self, int source, int tag ) {
    std::unique_lock lock( mutex_ );
    waits_[self] = {WaitKind::Receive, source, tag, 0};
    while ( true ) {
        auto& queue = mailboxes_[self][{source, tag}];
        if ( !queue.empty() ) {
            Payload p = std::move( queue.front() );
            queue.pop_front();
            waits_[self]  = {};
            Counters& c = counters_[self];
            c.messages_received += 1;
            c.bytes_received += static_cast<std::int64_t>( p.size() );
            return p;
        }
        if ( detect_deadlock() ) {
            waits_[self] = {};
            throw DeadlockDetected( "rank " + std::to_string( self ) + " blocked receiving from rank " +
                                    std::to_string( source ) + " (tag " + std::to_string( tag ) +
                                    ") with no possible sender" );
        }
        cv_.wait( lock );
    }
}

void World::barrier( int self ) {
    std::unique_lock lock( mutex_ );
    const std::int64_t generation = barrier_generation_;
    if ( ++barrier_arrivals_ == nranks_ ) {
        barrier_arrivals_ = 0;
        ++barrier_generation_;
        cv_.notify_all();
        return;
    }
    waits_[self] = {WaitKind::Barrier, -1, 0, generation};
    while ( barrier_generation_ <= generation ) {
        if ( detect_deadlock() ) {
            waits_[self] = {};
            throw DeadlockDetected( "rank " + std::to_string( self ) + " blocked in barrier: not all ranks arrived" );
        }
        cv_.wait( lock );
    }
    waits_[self] = {};
}

void World::finish( int self ) {
    std::lock_guard lock( mutex_ );
    finished_[self] = true;
    waits_[self]    = {};
    detect_deadlock();
    cv_.notify_all();
}

bool World::has_unconsumed() const {
    std::lock_guard lock( mutex_ );
    for ( const auto& box : mailboxes_ ) {
        for ( const auto& [key, queue] : box ) {
            if ( !queue.empty() ) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

void Communicator::check_peer( int peer, const char* what ) const {
    if ( peer < 0 || peer >= size() || peer == rank_ ) {
        throw InvalidRank( std::string( what ) + ": invalid peer rank " + std::to_string( peer ) + " on rank " +
                           std::to_string( rank_ ) + " of " + std::to_string( size() ) );
    }
}

void Communicator::send( int dest, int tag, std::span<const std::byte> payload ) {
    check_peer( dest, "send" );
    if ( tag < 0 ) {
        throw InvalidArgument( "send: negative tags are reserved" );
    }
    world_->send( rank_, dest, tag, Payload( payload.begin(), payload.end() ) );
}

Payload Communicator::receive( int source, int tag ) {
    check_peer( source, "receive" );
    if ( tag < 0 ) {
        throw InvalidArgument( "receive: negative tags are reserved" );
    }
    return world_->receive( rank_, source, tag );
}

void Communicator::barrier() {
    world_->barrier( rank_ );
}

std::vector<Payload> Communicator::gather_to_root( std::span<const std::byte> payload ) {
    std::vector<Payload> out;
    if ( rank_ != 0 ) {
        world_->send( rank_, 0, gather_tag, Payload( payload.begin(), payload.end() ) );
        return out;
    }
    out.reserve( static_cast<size_t>( size() ) );
    out.emplace_back( payload.begin(), payload.end() );
    for ( int r = 1; r < size(); ++r ) {
        out.push_back( world_->receive( 0, r, gather_tag ) );
    }
    return out;
}

Payload Communicator::broadcast_from_root( std::span<const std::byte> payload ) {
    if ( rank_ == 0 ) {
        for ( int r = 1; r < size(); ++r ) {
            world_->send( 0, r, broadcast_tag, Payload( payload.begin(), payload.end() ) );
        }
        return Payload( payload.begin(), payload.end() );
    }
    return world_->receive( rank_, 0, broadcast_tag );
}

}  // namespace orbis::parallel
