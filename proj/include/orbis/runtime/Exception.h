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
#include <stdexcept>
#include <string>

namespace orbis {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Exception : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ORBIS_DECLARE_EXCEPTION( Name )       \
    class Name : public Exception {           \
    public:                                   \
        using Exception::Exception;           \
    }

// grid
ORBIS_DECLARE_EXCEPTION( InvalidSpec );
ORBIS_DECLARE_EXCEPTION( IndexOutOfRange );
ORBIS_DECLARE_EXCEPTION( NotOnUnitSphere );

// mesh / partition
ORBIS_DECLARE_EXCEPTION( InvalidDistribution );
ORBIS_DECLARE_EXCEPTION( TooManyParts );

// parallel
ORBIS_DECLARE_EXCEPTION( DeadlockDetected );
ORBIS_DECLARE_EXCEPTION( UnconsumedMessages );
ORBIS_DECLARE_EXCEPTION( InvalidRank );

// field
ORBIS_DECLARE_EXCEPTION( DuplicateName );
ORBIS_DECLARE_EXCEPTION( AlreadyAllocated );
ORBIS_DECLARE_EXCEPTION( NoDevice );
ORBIS_DECLARE_EXCEPTION( StaleHost );
ORBIS_DECLARE_EXCEPTION( StaleDevice );
ORBIS_DECLARE_EXCEPTION( ViewConflict );
ORBIS_DECLARE_EXCEPTION( KindMismatch );

// functionspace
ORBIS_DECLARE_EXCEPTION( InconsistentMesh );
ORBIS_DECLARE_EXCEPTION( PlanMismatch );

// interp
ORBIS_DECLARE_EXCEPTION( DegenerateTriangle );
ORBIS_DECLARE_EXCEPTION( ShapeMismatch );

// runtime
ORBIS_DECLARE_EXCEPTION( DoubleInitialise );
ORBIS_DECLARE_EXCEPTION( InvalidArgument );

#undef ORBIS_DECLARE_EXCEPTION

class UnknownGridName : public Exception {
public:
    explicit UnknownGridName( const std::string& name ) :
        Exception( "Unknown grid name '" + name + "' (expected F<N> or O<N>, N >= 1)" ), name_( name ) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Raised when a target point is not contained in any local source element.
class NotLocated : public Exception {
public:
    NotLocated( std::int64_t target, const std::string& what ) :
        Exception( what ), target_( target ) {}
    std::int64_t target() const { return target_; }

private:
    std::int64_t target_;
};

}  // namespace orbis
