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

#include <ostream>
#include <streambuf>
#include <string>

namespace orbis {

/// Output channel that prefixes every line with "[name] " and can be muted or
/// redirected.
class LogChannel : public std::ostream {
public:
    LogChannel( std::string name, std::ostream* sink, bool enabled );

    const std::string& name() const { return buffer_.name; }
    bool enabled() const { return buffer_.enabled; }
    void enable( bool on ) { buffer_.enabled = on; }
    void set_sink( std::ostream* sink );
    std::ostream* sink() const { return buffer_.sink; }

private:
    struct TaggingBuffer : std::streambuf {
        std::string name;
        std::ostream* sink{nullptr};
        bool enabled{true};
        bool line_start{true};

        int_type overflow( int_type ch ) override;
        int sync() override;
    };
    TaggingBuffer buffer_;
};

/// The four library channels. debug and info default to standard output,
/// warning and error to standard error.
class Log {
public:
    static LogChannel& debug();
    static LogChannel& info();
    static LogChannel& warning();
    static LogChannel& error();

    /// Restore default sinks and enablement (debug off).
    static void reset();
};

}  // namespace orbis
