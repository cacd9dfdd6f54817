/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <typeindex>

#include "doctest.h"

#include "orbis/field/Field.h"
#include "orbis/runtime/Exception.h"

using namespace orbis;

namespace {

enum class Op
{
    AllocateDevice,
    UpdateHost,
    UpdateDevice,
    HostRead,
    HostReadWrite,
    DeviceRead,
    DeviceReadWrite
};

const char* name( Op op ) {
    switch ( op ) {
        case Op::AllocateDevice:
            return "allocate_device";
        case Op::UpdateHost:
            return "update_host";
        case Op::UpdateDevice:
            return "update_device";
        case Op::HostRead:
            return "host_view(Read)";
        case Op::HostReadWrite:
            return "host_view(ReadWrite)";
        case Op::DeviceRead:
            return "device_view(Read)";
        case Op::DeviceReadWrite:
            return "device_view(ReadWrite)";
    }
    return "";
}

using S = MemoryState;

struct Expected {
    S next;
    std::optional<std::type_index> error;  // exception type when the operation is illegal
    std::int64_t h2d{0};
    std::int64_t d2h{0};
};

// Transition table written out by hand, independent of the implementation.
Expected table( S s, Op op ) {
    const auto err = []( auto tag ) { return std::optional<std::type_index>( typeid( tag ) ); };
    switch ( op ) {
        case Op::AllocateDevice:
            return s == S::HostOnly ? Expected{S::Synced, {}, 1, 0} : Expected{s, err( AlreadyAllocated( "" ) )};
        case Op::UpdateHost:
            if ( s == S::HostOnly ) {
                return {s, err( NoDevice( "" ) )};
            }
            return s == S::DeviceDirty ? Expected{S::Synced, {}, 0, 1} : Expected{s, {}};
        case Op::UpdateDevice:
            if ( s == S::HostOnly ) {
                return {s, err( NoDevice( "" ) )};
            }
            return s == S::HostDirty ? Expected{S::Synced, {}, 1, 0} : Expected{s, {}};
        case Op::HostRead:
            return s == S::DeviceDirty ? Expected{s, err( StaleHost( "" ) )} : Expected{s, {}};
        case Op::HostReadWrite:
            if ( s == S::DeviceDirty ) {
                return {s, err( StaleHost( "" ) )};
            }
            return {s == S::HostOnly ? S::HostOnly : S::HostDirty, {}};
        case Op::DeviceRead:
            if ( s == S::HostOnly ) {
                return {s, err( NoDevice( "" ) )};
            }
            return s == S::HostDirty ? Expected{s, err( StaleDevice( "" ) )} : Expected{s, {}};
        case Op::DeviceReadWrite:
            if ( s == S::HostOnly ) {
                return {s, err( NoDevice( "" ) )};
            }
            return s == S::HostDirty ? Expected{s, err( StaleDevice( "" ) )} : Expected{S::DeviceDirty, {}};
    }
    return {s, {}};
}

Field field_in( S s ) {
    Field f( "f", 4, 2, DataKind::Real64 );
    if ( s == S::HostOnly ) {
        return f;
    }
    f.allocate_device();
    if ( s == S::HostDirty ) {
        f.host_view<double>( Intent::ReadWrite )( 0, 0 ) = 1.;
    }
    if ( s == S::DeviceDirty ) {
        f.device_view<double>( Intent::ReadWrite )( 1, 1 ) = 2.;
    }
    REQUIRE( f.state() == s );
    return f;
}

void apply( Field& f, Op op ) {
    switch ( op ) {
        case Op::AllocateDevice:
            f.allocate_device();
            break;
        case Op::UpdateHost:
            f.update_host();
            break;
        case Op::UpdateDevice:
            f.update_device();
            break;
        case Op::HostRead:
            (void)f.host_view<const double>( Intent::Read )( 0, 0 );
            break;
        case Op::HostReadWrite:
            f.host_view<double>( Intent::ReadWrite )( 2, 0 ) += 3.;
            break;
        case Op::DeviceRead:
            (void)f.device_view<const double>( Intent::Read )( 0, 0 );
            break;
        case Op::DeviceReadWrite:
            f.device_view<double>( Intent::ReadWrite )( 3, 1 ) += 5.;
            break;
    }
}

}  // namespace

TEST_CASE( "memory state machine: every (state, operation) pair matches the table" ) {
    const S states[] = {S::HostOnly, S::Synced, S::HostDirty, S::DeviceDirty};
    const Op ops[]   = {Op::AllocateDevice, Op::UpdateHost,    Op::UpdateDevice,   Op::HostRead,
                        Op::HostReadWrite,  Op::DeviceRead,    Op::DeviceReadWrite};
    int pairs        = 0;
    for ( S s : states ) {
        for ( Op op : ops ) {
            CAPTURE( to_string( s ) );
            CAPTURE( name( op ) );
            Field f                  = field_in( s );
            const CopyCounters start = f.copy_counters();
            const Expected want      = table( s, op );
            std::optional<std::type_index> got;
            try {
                apply( f, op );
            }
            catch ( const Exception& e ) {
                got = std::type_index( typeid( e ) );
            }
            CHECK( got == want.error );
            CHECK( f.state() == want.next );
            CHECK( f.copy_counters().host_to_device - start.host_to_device == want.h2d );
            CHECK( f.copy_counters().device_to_host - start.device_to_host == want.d2h );
            CHECK( ( f.state() == S::HostOnly ) == !f.has_device() );
            if ( f.state() == S::Synced ) {
                CHECK( f.buffers_equal() );
            }
            ++pairs;
        }
    }
    CHECK( pairs == 28 );
}

TEST_CASE( "random operation sequences keep Synced buffers bitwise equal" ) {
    std::mt19937 rng( 5 );
    for ( int trial = 0; trial < 200; ++trial ) {
        Field f( "r", 4, 2, DataKind::Real64 );
        S model = S::HostOnly;
        for ( int step = 0; step < 30; ++step ) {
            const Op op         = static_cast<Op>( rng() % 7 );
            const Expected want = table( model, op );
            bool threw          = false;
            try {
                apply( f, op );
            }
            catch ( const Exception& ) {
                threw = true;
            }
            CHECK( threw == want.error.has_value() );
            model = want.next;
            CHECK( f.state() == model );
            if ( model == S::Synced ) {
                CHECK( f.buffers_equal() );
            }
        }
    }
}

TEST_CASE( "device write example: view(i, j) = i*100 + j on a 2 x 3 field" ) {
    Field f( "example", 2, 3, DataKind::Real64 );
    f.allocate_device();
    {
        auto view = f.device_view<double>( Intent::ReadWrite );
        for ( idx_t i = 1; i <= 2; ++i ) {
            for ( idx_t j = 1; j <= 3; ++j ) {
                view( i - 1, j - 1 ) = i * 100 + j;
            }
        }
        CHECK( f.state() == S::Synced );  // commit happens on release
    }
    CHECK( f.state() == S::DeviceDirty );
    CHECK_THROWS_AS( f.host_view<double>( Intent::Read ), StaleHost );
    f.update_host();
    CHECK( f.state() == S::Synced );
    auto host = f.host_view<const double>( Intent::Read );
    CHECK( std::vector<double>( host.span().begin(), host.span().end() ) ==
           std::vector<double>{101, 102, 103, 201, 202, 203} );
}

TEST_CASE( "views: exclusivity, kind checks, survival across moves" ) {
    Field f( "v", 5, 1, DataKind::Int32 );
    {
        auto r1 = f.host_view<const std::int32_t>( Intent::Read );
        auto r2 = f.host_view<const std::int32_t>( Intent::Read );
        CHECK_THROWS_AS( f.host_view<std::int32_t>( Intent::ReadWrite ), ViewConflict );
        CHECK_THROWS_AS( f.allocate_device(), ViewConflict );
    }
    {
        auto w = f.host_view<std::int32_t>( Intent::ReadWrite );
        CHECK_THROWS_AS( f.host_view<const std::int32_t>( Intent::Read ), ViewConflict );
        w( 4, 0 ) = 42;
        Field moved = std::move( f );
        CHECK( w( 4, 0 ) == 42 );
        w.release();
        CHECK( moved.host_view<const std::int32_t>( Intent::Read )( 4, 0 ) == 42 );
        f = std::move( moved );
    }
    CHECK_THROWS_AS( f.host_view<double>( Intent::Read ), KindMismatch );
    auto bytes = f.host_bytes( Intent::Read );
    CHECK( bytes.shape( 1 ) == 4 );
    CHECK( bytes.size() == 20 );
}

TEST_CASE( "creation: zero-initialised, degenerate shapes, invalid shapes" ) {
    Field t = create_field( "t", 10, 1, DataKind::Real64 );
    CHECK( t.state() == S::HostOnly );
    for ( double v : t.host_view<const double>( Intent::Read ).span() ) {
        CHECK( v == 0. );
    }
    Field q = create_field( "q", 0, 3, DataKind::Real64 );
    CHECK( q.valid() );
    CHECK( q.size() == 0 );
    CHECK_THROWS_AS( create_field( "bad", -1, 1, DataKind::Real64 ), InvalidArgument );
    CHECK_THROWS_AS( create_field( "bad", 1, 0, DataKind::Real64 ), InvalidArgument );
}

TEST_CASE( "host to device round trip is exact for every kind" ) {
    for ( DataKind kind : {DataKind::Real64, DataKind::Real32, DataKind::Int32, DataKind::Int64} ) {
        CAPTURE( to_string( kind ) );
        CHECK( parse_data_kind( to_string( kind ) ) == kind );
        Field f( "k", 7, 3, kind );
        f.allocate_device();
        visit_kind( kind, [&]<typename T>() {
            {
                auto v = f.host_view<T>( Intent::ReadWrite );
                for ( std::size_t k = 0; k < v.size(); ++k ) {
                    v[k] = static_cast<T>( k * 37 + 1 ) / static_cast<T>( 3 );
                }
            }
            f.update_device();
            CHECK( f.state() == S::Synced );
            CHECK( f.buffers_equal() );
            auto h = f.host_view<const T>( Intent::Read );
            auto d = f.device_view<const T>( Intent::Read );
            for ( std::size_t k = 0; k < h.size(); ++k ) {
                CHECK( h[k] == d[k] );
            }
        } );
    }
}

TEST_CASE( "field sets reject duplicate names" ) {
    FieldSet set;
    set.add( create_field( "t", 10, 1, DataKind::Real64 ) );
    set.add( create_field( "q", 10, 1, DataKind::Real64 ) );
    CHECK( set.has( "t" ) );
    CHECK( set["q"].name() == "q" );
    CHECK_THROWS_AS( set.add( create_field( "t", 3, 1, DataKind::Int32 ) ), DuplicateName );
    CHECK_THROWS_AS( set["z"], InvalidArgument );
}

TEST_CASE( "field dump prints header and 17 significant digits" ) {
    Field f( "dump", 2, 1, DataKind::Real64 );
    {
        auto v  = f.host_view<double>( Intent::ReadWrite );
        v( 0, 0 ) = 0.1;
        v( 1, 0 ) = 1. / 3.;
    }
    std::ostringstream out;
    const std::vector<gidx_t> g{5, 9};
    write_field_dump( out, f, g );
    CHECK( out.str() ==
           "name: dump\nshape: 2 1\nkind: Real64\nglobal_index,level,value\n5,0,0.10000000000000001\n"
           "9,0,0.33333333333333331\n" );
    CHECK_THROWS_AS( write_field_dump( out, f, std::span<const gidx_t>( g.data(), 1 ) ), ShapeMismatch );
}
