/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/field/Field.h"

#include <cstring>
#include <iomanip>
#include <limits>
#include <ostream>

namespace orbis {

std::string to_string( DataKind kind ) {
    switch ( kind ) {
        case DataKind::Real64:
            return "Real64";
        case DataKind::Real32:
            return "Real32";
        case DataKind::Int32:
            return "Int32";
        case DataKind::Int64:
            return "Int64";
    }
    return "?";
}

DataKind parse_data_kind( const std::string& s ) {
    for ( DataKind k : {DataKind::Real64, DataKind::Real32, DataKind::Int32, DataKind::Int64} ) {
        if ( to_string( k ) == s ) {
            return k;
        }
    }
    throw InvalidArgument( "unknown data kind '" + s + "'" );
}

std::size_t size_of( DataKind kind ) {
    return visit_kind( kind, []<typename T>() { return sizeof( T ); } );
}

std::string to_string( MemoryState state ) {
    switch ( state ) {
        case MemoryState::HostOnly:
            return "HostOnly";
        case MemoryState::Synced:
            return "Synced";
        case MemoryState::HostDirty:
            return "HostDirty";
        case MemoryState::DeviceDirty:
            return "DeviceDirty";
    }
    return "?";
}

namespace detail {

void FieldStorage::check_idle( const char* what ) const {
    if ( readers > 0 || writer ) {
        throw ViewConflict( std::string( what ) + " on field '" + name + "' while views are active" );
    }
}

std::byte* FieldStorage::acquire( MemorySpace space, Intent intent ) {
    if ( space == MemorySpace::Host ) {
        if ( state == MemoryState::DeviceDirty ) {
            throw StaleHost( "host view of field '" + name + "' requested while device holds newer data; call update_host()" );
        }
    }
    else {
        if ( !has_device ) {
            throw NoDevice( "device view of field '" + name + "' requested before allocate_device()" );
        }
        if ( state == MemoryState::HostDirty ) {
            throw StaleDevice( "device view of field '" + name + "' requested while host holds newer data; call update_device()" );
        }
    }
    if ( writer || ( intent == Intent::ReadWrite && readers > 0 ) ) {
        throw ViewConflict( "field '" + name + "' already has an active view incompatible with the requested one" );
    }
    if ( intent == Intent::ReadWrite ) {
        writer = true;
    }
    else {
        ++readers;
    }
    return space == MemorySpace::Host ? host.data() : device.data();
}

void FieldStorage::release( MemorySpace space, Intent intent ) noexcept {
    if ( intent == Intent::Read ) {
        --readers;
        return;
    }
    writer = false;
    if ( space == MemorySpace::Host ) {
        if ( state == MemoryState::Synced ) {
            state = MemoryState::HostDirty;
        }
    }
    else {
        if ( state == MemoryState::Synced ) {
            state = MemoryState::DeviceDirty;
        }
    }
}

}  // namespace detail

Field::Field( std::string name, idx_t npts, idx_t levels, DataKind kind, std::string functionspace_tag ) :
    s_( std::make_unique<detail::FieldStorage>() ) {
    if ( npts < 0 || levels < 1 ) {
        throw InvalidArgument( "field '" + name + "' needs npts >= 0 and levels >= 1" );
    }
    s_->name              = std::move( name );
    s_->npts              = npts;
    s_->levels            = levels;
    s_->kind              = kind;
    s_->functionspace_tag = std::move( functionspace_tag );
    s_->host.assign( static_cast<std::size_t>( npts ) * levels * size_of( kind ), std::byte{0} );
}

void Field::allocate_device() {
    s_->check_idle( "allocate_device" );
    if ( s_->has_device ) {
        throw AlreadyAllocated( "field '" + s_->name + "' already has a device buffer" );
    }
    s_->device     = s_->host;
    s_->has_device = true;
    s_->state      = MemoryState::Synced;
    ++s_->counters.host_to_device;
}

void Field::update_host() {
    if ( !s_->has_device ) {
        throw NoDevice( "update_host on field '" + s_->name + "' without device buffer" );
    }
    s_->check_idle( "update_host" );
    if ( s_->state == MemoryState::DeviceDirty ) {
        s_->host  = s_->device;
        s_->state = MemoryState::Synced;
        ++s_->counters.device_to_host;
    }
}

void Field::update_device() {
    if ( !s_->has_device ) {
        throw NoDevice( "update_device on field '" + s_->name + "' without device buffer" );
    }
    s_->check_idle( "update_device" );
    if ( s_->state == MemoryState::HostDirty ) {
        s_->device = s_->host;
        s_->state  = MemoryState::Synced;
        ++s_->counters.host_to_device;
    }
}

bool Field::buffers_equal() const {
    return s_->has_device && s_->host.size() == s_->device.size() &&
           std::memcmp( s_->host.data(), s_->device.data(), s_->host.size() ) == 0;
}

Field create_field( std::string name, idx_t npts, idx_t levels, DataKind kind ) {
    return Field( std::move( name ), npts, levels, kind );
}

Field& FieldSet::add( Field&& field ) {
    if ( has( field.name() ) ) {
        throw DuplicateName( "field set already contains a field named '" + field.name() + "'" );
    }
    fields_.push_back( std::move( field ) );
    return fields_.back();
}

bool FieldSet::has( const std::string& name ) const {
    for ( const Field& f : fields_ ) {
        if ( f.name() == name ) {
            return true;
        }
    }
    return false;
}

Field& FieldSet::operator[]( const std::string& name ) {
    for ( Field& f : fields_ ) {
        if ( f.name() == name ) {
            return f;
        }
    }
    throw InvalidArgument( "no field named '" + name + "' in field set" );
}

void write_field_dump( std::ostream& out, Field& field, std::span<const gidx_t> global_index ) {
    if ( global_index.size() != static_cast<std::size_t>( field.npts() ) ) {
        throw ShapeMismatch( "write_field_dump: global index list does not match field '" + field.name() + "'" );
    }
    out << "name: " << field.name() << '\n';
    out << "shape: " << field.npts() << ' ' << field.levels() << '\n';
    out << "kind: " << to_string( field.kind() ) << '\n';
    out << "global_index,level,value\n";
    visit_kind( field.kind(), [&]<typename T>() {
        auto view = field.host_view<const T>( Intent::Read );
        const auto flags = out.flags();
        const auto prec  = out.precision();
        if constexpr ( std::is_floating_point_v<T> ) {
            out << std::setprecision( std::numeric_limits<T>::max_digits10 );
        }
        for ( idx_t p = 0; p < view.shape( 0 ); ++p ) {
            for ( idx_t l = 0; l < view.shape( 1 ); ++l ) {
                out << global_index[p] << ',' << l << ',' << view( p, l ) << '\n';
            }
        }
        out.flags( flags );
        out.precision( prec );
    } );
}

}  // namespace orbis
