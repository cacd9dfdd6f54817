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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "orbis/runtime/Exception.h"
#include "orbis/util/Types.h"

namespace orbis {

enum class DataKind
{
    Real64,
    Real32,
    Int32,
    Int64
};

std::string to_string( DataKind );
DataKind parse_data_kind( const std::string& );
std::size_t size_of( DataKind );

template <typename T>
constexpr DataKind kind_of() {
    using U = std::remove_const_t<T>;
    if constexpr ( std::is_same_v<U, double> ) {
        return DataKind::Real64;
    }
    else if constexpr ( std::is_same_v<U, float> ) {
        return DataKind::Real32;
    }
    else if constexpr ( std::is_same_v<U, std::int32_t> ) {
        return DataKind::Int32;
    }
    else {
        static_assert( std::is_same_v<U, std::int64_t>, "unsupported field value type" );
        return DataKind::Int64;
    }
}

/// Calls `f.template operator()<T>()` with T the value type of `kind`.
template <typename F>
decltype( auto ) visit_kind( DataKind kind, F&& f ) {
    switch ( kind ) {
        case DataKind::Real64:
            return f.template operator()<double>();
        case DataKind::Real32:
            return f.template operator()<float>();
        case DataKind::Int32:
            return f.template operator()<std::int32_t>();
        case DataKind::Int64:
            break;
    }
    return f.template operator()<std::int64_t>();
}

/// Which mirror holds current data.
///
///   HostOnly     no device buffer
///   Synced       both buffers equal
///   HostDirty    host written since last sync
///   DeviceDirty  device written since last sync
enum class MemoryState
{
    HostOnly,
    Synced,
    HostDirty,
    DeviceDirty
};

std::string to_string( MemoryState );

enum class Intent
{
    Read,
    ReadWrite
};

enum class MemorySpace
{
    Host,
    Device
};

struct CopyCounters {
    std::int64_t host_to_device{0};
    std::int64_t device_to_host{0};
    bool operator==( const CopyCounters& ) const = default;
};

namespace detail {

struct FieldStorage {
    std::string name;
    idx_t npts{0};
    idx_t levels{1};
    DataKind kind{DataKind::Real64};
    std::string functionspace_tag;

    std::vector<std::byte> host;
    std::vector<std::byte> device;
    bool has_device{false};
    MemoryState state{MemoryState::HostOnly};
    CopyCounters counters;

    int readers{0};
    bool writer{false};

    std::byte* acquire( MemorySpace, Intent );
    void release( MemorySpace, Intent ) noexcept;
    void check_idle( const char* what ) const;
};

}  // namespace detail

/// Access window onto one memory space of a field, indexed (point, level).
///
/// A ReadWrite view is exclusive and marks its memory space dirty when released
/// (destroyed or release() called), not on each element write.
template <typename T>
class FieldView {
public:
    FieldView() = default;
    FieldView( detail::FieldStorage* storage, MemorySpace space, Intent intent ) :
        storage_( storage ),
        space_( space ),
        intent_( intent ),
        data_( reinterpret_cast<T*>( storage->acquire( space, intent ) ) ),
        npts_( storage->npts ),
        levels_( width( storage ) ) {}

    FieldView( const FieldView& )            = delete;
    FieldView& operator=( const FieldView& ) = delete;
    FieldView( FieldView&& o ) noexcept { swap( o ); }
    FieldView& operator=( FieldView&& o ) noexcept {
        release();
        swap( o );
        return *this;
    }
    ~FieldView() { release(); }

    T& operator()( idx_t point, idx_t level ) const { return data_[static_cast<std::size_t>( point ) * levels_ + level]; }
    T& operator[]( std::size_t k ) const { return data_[k]; }

    idx_t shape( int dim ) const { return dim == 0 ? npts_ : levels_; }
    std::size_t size() const { return static_cast<std::size_t>( npts_ ) * levels_; }
    std::span<T> span() const { return {data_, size()}; }
    T* data() const { return data_; }

    void release() noexcept {
        if ( storage_ ) {
            storage_->release( space_, intent_ );
            storage_ = nullptr;
            data_    = nullptr;
        }
    }

private:
    // FieldView<std::byte> indexes bytes, not values
    static idx_t width( const detail::FieldStorage* s ) {
        if constexpr ( std::is_same_v<std::remove_const_t<T>, std::byte> ) {
            return static_cast<idx_t>( s->levels * size_of( s->kind ) );
        }
        else {
            return s->levels;
        }
    }

    void swap( FieldView& o ) noexcept {
        std::swap( storage_, o.storage_ );
        std::swap( space_, o.space_ );
        std::swap( intent_, o.intent_ );
        std::swap( data_, o.data_ );
        std::swap( npts_, o.npts_ );
        std::swap( levels_, o.levels_ );
    }

    detail::FieldStorage* storage_{nullptr};
    MemorySpace space_{MemorySpace::Host};
    Intent intent_{Intent::Read};
    T* data_{nullptr};
    idx_t npts_{0};
    idx_t levels_{0};
};

/// Named (npts x levels) array with a host buffer and an optional simulated
/// device mirror. Move-only; views stay valid across moves.
class Field {
public:
    Field() = default;
    /// @throws InvalidArgument if npts < 0 or levels < 1
    Field( std::string name, idx_t npts, idx_t levels, DataKind kind, std::string functionspace_tag = {} );

    Field( Field&& ) noexcept            = default;
    Field& operator=( Field&& ) noexcept = default;

    bool valid() const { return static_cast<bool>( s_ ); }
    const std::string& name() const { return s_->name; }
    idx_t npts() const { return s_->npts; }
    idx_t levels() const { return s_->levels; }
    std::size_t size() const { return static_cast<std::size_t>( s_->npts ) * s_->levels; }
    DataKind kind() const { return s_->kind; }
    const std::string& functionspace_tag() const { return s_->functionspace_tag; }

    MemoryState state() const { return s_->state; }
    bool has_device() const { return s_->has_device; }
    const CopyCounters& copy_counters() const { return s_->counters; }

    /// HostOnly -> Synced, copying host to device.
    /// @throws AlreadyAllocated
    void allocate_device();

    /// DeviceDirty -> Synced with a device-to-host copy; otherwise a no-op.
    /// @throws NoDevice
    void update_host();

    /// HostDirty -> Synced with a host-to-device copy; otherwise a no-op.
    /// @throws NoDevice
    void update_device();

    /// @throws StaleHost, ViewConflict, KindMismatch
    template <typename T>
    FieldView<T> host_view( Intent intent ) {
        check_kind<T>();
        return FieldView<T>( s_.get(), MemorySpace::Host, intent );
    }

    /// @throws NoDevice, StaleDevice, ViewConflict, KindMismatch
    template <typename T>
    FieldView<T> device_view( Intent intent ) {
        check_kind<T>();
        return FieldView<T>( s_.get(), MemorySpace::Device, intent );
    }

    /// Byte-wise comparison of the two mirrors (false without a device buffer).
    bool buffers_equal() const;

    /// Raw host bytes, for library-internal packing. Same state rules as host_view.
    FieldView<std::byte> host_bytes( Intent intent ) { return FieldView<std::byte>( s_.get(), MemorySpace::Host, intent ); }

private:
    template <typename T>
    void check_kind() const {
        if ( kind_of<T>() != s_->kind ) {
            throw KindMismatch( "field '" + s_->name + "' holds " + to_string( s_->kind ) + ", view requested as " +
                                to_string( kind_of<T>() ) );
        }
    }

    std::unique_ptr<detail::FieldStorage> s_;
};

Field create_field( std::string name, idx_t npts, idx_t levels, DataKind kind );

/// Ordered fields with unique names.
class FieldSet {
public:
    /// @throws DuplicateName
    Field& add( Field&& );
    bool has( const std::string& name ) const;
    /// @throws InvalidArgument if absent
    Field& operator[]( const std::string& name );
    Field& operator[]( std::size_t k ) { return fields_[k]; }
    std::size_t size() const { return fields_.size(); }

    auto begin() { return fields_.begin(); }
    auto end() { return fields_.end(); }

private:
    std::vector<Field> fields_;
};

/// Delimited text dump:
///   name: <name>
///   shape: <npts> <levels>
///   kind: <kind>
///   global_index,level,value
/// followed by one line per (point, level). Real64 values use 17 significant digits.
void write_field_dump( std::ostream&, Field&, std::span<const gidx_t> global_index );

}  // namespace orbis
