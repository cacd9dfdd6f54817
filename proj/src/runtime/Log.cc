/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/runtime/Log.h"

#include <iostream>

namespace orbis {

LogChannel::LogChannel( std::string name, std::ostream* sink, bool enabled ) : std::ostream( nullptr ) {
    buffer_.name    = std::move( name );
    buffer_.sink    = sink;
    buffer_.enabled = enabled;
    rdbuf( &buffer_ );
}

void LogChannel::set_sink( std::ostream* sink ) {
    flush();
    buffer_.sink       = sink;
    buffer_.line_start = true;
}

LogChannel::TaggingBuffer::int_type LogChannel::TaggingBuffer::overflow( int_type ch ) {
    if ( traits_type::eq_int_type( ch, traits_type::eof() ) ) {
        return traits_type::not_eof( ch );
    }
    if ( !enabled || sink == nullptr ) {
        return ch;
    }
    if ( line_start ) {
        *sink << '[' << name << "] ";
        line_start = false;
    }
    sink->put( traits_type::to_char_type( ch ) );
    if ( traits_type::to_char_type( ch ) == '\n' ) {
        line_start = true;
    }
    return ch;
}

int LogChannel::TaggingBuffer::sync() {
    if ( enabled && sink ) {
        sink->flush();
    }
    return 0;
}

LogChannel& Log::debug() {
    static LogChannel channel( "debug", &std::cout, false );
    return channel;
}

LogChannel& Log::info() {
    static LogChannel channel( "info", &std::cout, true );
    return channel;
}

LogChannel& Log::warning() {
    static LogChannel channel( "warning", &std::cerr, true );
    return channel;
}

LogChannel& Log::error() {
    static LogChannel channel( "error", &std::cerr, true );
    return channel;
}

void Log::reset() {
    debug().set_sink( &std::cout );
    debug().enable( false );
    info().set_sink( &std::cout );
    info().enable( true );
    warning().set_sink( &std::cerr );
    warning().enable( true );
    error().set_sink( &std::cerr );
    error().enable( true );
}

}  // namespace orbis
