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

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "orbis/runtime/Exception.h"

namespace orbis::parallel {

using Payload = std::vector<std::byte>;

struct Counters {
    std::int64_t messages_sent{0};
    std::int64_t bytes_sent{0};
    std::int64_t messages_received{0};
    std::int64_t bytes_received{0};

    bool operator==( const Counters& ) const = default;
};

namespace detail {

/// Shared state of one run_ranks invocation. Everything is guarded by one mutex;
/// ranks never touch each other's data except through mailboxes.
class World {
public:
    explicit World( int nranks );

    void send( int source, int dest, int tag, Payload payload );
    Payload receive( int self, int source, int tag );
    void barrier( int self );
    void finish( int self );

    const Counters& counters( int rank ) const { return counters_[rank]; }
    int size() const { return nranks_; }
    bool has_unconsumed() const;

private:
    enum class WaitKind
    {
        None,
        Receive,
        Barrier
    };
    struct Wait {
        WaitKind kind{WaitKind::None};
        int source{-1};
        int tag{0};
        std::int64_t generation{0};
    };

    bool ready( int rank ) const;
    bool detect_deadlock();
    void check_rank( int rank, const char* what ) const;

    int nranks_;
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::vector<std::map<std::pair<int, int>, std::deque<Payload>>> mailboxes_;  // [dest][(source, tag)]
    std::vector<Wait> waits_;
    std::vector<bool> finished_;
    std::vector<Counters> counters_;
    std::int64_t barrier_generation_{0};
    int barrier_arrivals_{0};
    bool deadlock_{false};
};

}  // namespace detail

/// Per-rank handle passed to rank programs: point-to-point messages and
/// collectives over the in-process world. Not shareable between ranks.
class Communicator {
public:
    Communicator( detail::World& world, int rank ) : world_( &world ), rank_( rank ) {}

    int rank() const { return rank_; }
    int size() const { return world_->size(); }

    /// Blocking-semantics send (delivery is buffered). Tags must be >= 0.
    /// @throws InvalidRank for an out-of-range or self destination
    void send( int dest, int tag, std::span<const std::byte> payload );

    /// Blocks until a message from `source` with `tag` is available; FIFO per (source, tag).
    /// @throws InvalidRank, DeadlockDetected
    Payload receive( int source, int tag );

    template <typename T>
    void send_values( int dest, int tag, std::span<const T> values ) {
        static_assert( std::is_trivially_copyable_v<T> );
        send( dest, tag, std::as_bytes( values ) );
    }

    template <typename T>
    std::vector<T> receive_values( int source, int tag ) {
        static_assert( std::is_trivially_copyable_v<T> );
        return from_bytes<T>( receive( source, tag ) );
    }

    /// @throws DeadlockDetected if not every rank arrives
    void barrier();

    /// Root (rank 0) receives all payloads ordered by rank; other ranks get an empty vector.
    std::vector<Payload> gather_to_root( std::span<const std::byte> payload );

    template <typename T>
    std::vector<std::vector<T>> gather_values_to_root( std::span<const T> values ) {
        std::vector<std::vector<T>> out;
        for ( Payload& p : gather_to_root( std::as_bytes( values ) ) ) {
            out.push_back( from_bytes<T>( p ) );
        }
        return out;
    }

    /// Every rank receives rank 0's payload.
    Payload broadcast_from_root( std::span<const std::byte> payload );

    const Counters& counters() const { return world_->counters( rank_ ); }

    template <typename T>
    static std::vector<T> from_bytes( const Payload& p ) {
        std::vector<T> v( p.size() / sizeof( T ) );
        if ( !v.empty() ) {
            std::memcpy( v.data(), p.data(), v.size() * sizeof( T ) );
        }
        return v;
    }

private:
    static constexpr int gather_tag    = -1;
    static constexpr int broadcast_tag = -2;

    void check_peer( int peer, const char* what ) const;

    detail::World* world_;
    int rank_;
};

/// Runs `program(comm)` on `nranks` isolated ranks and returns the results
/// ordered by rank.
///
/// If a rank throws, the first such error (in rank order) is rethrown after all
/// ranks stop; ranks left blocked by it fail with DeadlockDetected.
/// @throws DeadlockDetected, UnconsumedMessages
template <typename Program>
auto run_ranks( int nranks, Program&& program ) {
    using Result = std::invoke_result_t<Program&, Communicator&>;
    if ( nranks < 1 ) {
        throw InvalidRank( "run_ranks: nranks must be >= 1" );
    }

    detail::World world( nranks );
    std::vector<std::exception_ptr> errors( static_cast<size_t>( nranks ) );
    constexpr bool is_void = std::is_void_v<Result>;
    using Stored           = std::conditional_t<is_void, bool, std::optional<Result>>;
    std::vector<Stored> results( static_cast<size_t>( nranks ) );

    auto body = [&]( int r ) {
        Communicator comm( world, r );
        try {
            if constexpr ( is_void ) {
                program( comm );
            }
            else {
                results[r].emplace( program( comm ) );
            }
        }
        catch ( ... ) {
            errors[r] = std::current_exception();
        }
        world.finish( r );
    };

    if ( nranks == 1 ) {
        body( 0 );
    }
    else {
        std::vector<std::thread> threads;
        threads.reserve( static_cast<size_t>( nranks ) );
        for ( int r = 0; r < nranks; ++r ) {
            threads.emplace_back( body, r );
        }
        for ( auto& t : threads ) {
            t.join();
        }
    }

    std::exception_ptr deadlock;
    for ( auto& e : errors ) {
        if ( !e ) {
            continue;
        }
        try {
            std::rethrow_exception( e );
        }
        catch ( const DeadlockDetected& ) {
            if ( !deadlock ) {
                deadlock = e;
            }
        }
        catch ( ... ) {
            throw;
        }
    }
    if ( deadlock ) {
        std::rethrow_exception( deadlock );
    }
    if ( world.has_unconsumed() ) {
        throw UnconsumedMessages( "run_ranks: messages left in mailboxes at shutdown" );
    }

    if constexpr ( !is_void ) {
        std::vector<Result> out;
        out.reserve( results.size() );
        for ( auto& r : results ) {
            out.push_back( std::move( *r ) );
        }
        return out;
    }
}

}  // namespace orbis::parallel
