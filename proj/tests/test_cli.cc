/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

#ifndef ORBIS_EXECUTABLE
#error "ORBIS_EXECUTABLE must name the command-line tool"
#endif

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

// Runs the tool through the shell with an optional environment prefix.
Result run( const std::string& args, const std::string& env = "unset ORBIS_DEBUG;" ) {
    const fs::path err_file = fs::temp_directory_path() / ( "orbis_cli_err_" + std::to_string( ::getpid() ) );
    const std::string cmd   = env + " " + std::string( ORBIS_EXECUTABLE ) + " " + args + " 2>" + err_file.string();
    Result r{0, {}, {}};
    FILE* pipe = ::popen( cmd.c_str(), "r" );
    REQUIRE( pipe != nullptr );
    std::array<char, 4096> buffer;
    size_t n;
    while ( ( n = std::fread( buffer.data(), 1, buffer.size(), pipe ) ) > 0 ) {
        r.out.append( buffer.data(), n );
    }
    const int status = ::pclose( pipe );
    r.status         = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    std::ifstream in( err_file );
    std::stringstream ss;
    ss << in.rdbuf();
    r.err = ss.str();
    fs::remove( err_file );
    return r;
}

std::string slurp( const fs::path& p ) {
    std::ifstream in( p, std::ios::binary );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> report( const std::string& text ) {
    std::map<std::string, std::string> kv;
    std::istringstream in( text );
    std::string line;
    while ( std::getline( in, line ) ) {
        const auto colon = line.find( ": " );
        if ( colon != std::string::npos ) {
            kv[line.substr( 0, colon )] = line.substr( colon + 2 );
        }
    }
    return kv;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ( "orbis_cli_" + std::to_string( ::getpid() ) );
        fs::create_directories( path );
    }
    ~TempDir() { fs::remove_all( path ); }
};

// Gmsh node data view "name": global id -> value
std::map<long, long> node_data( const std::string& text, const std::string& name ) {
    std::map<long, long> data;
    const auto at = text.find( "$NodeData\n1\n\"" + name + "\"" );
    REQUIRE( at != std::string::npos );
    std::istringstream in( text.substr( at ) );
    std::string line;
    for ( int k = 0; k < 9; ++k ) {  // header up to the value count
        std::getline( in, line );
    }
    long count = std::stol( line );
    for ( long k = 0; k < count; ++k ) {
        long id, value;
        in >> id >> value;
        data[id] = value;
    }
    return data;
}

}  // namespace

TEST_CASE( "info --version prints a semantic version only" ) {
    const auto r = run( "info --version" );
    CHECK( r.status == 0 );
    CHECK( std::regex_match( r.out, std::regex( R"(\d+\.\d+\.\d+\n)" ) ) );
    const auto g = run( "info --git" );
    CHECK( g.status == 0 );
    CHECK( std::regex_match( g.out, std::regex( R"([0-9a-z]+\n)" ) ) );
}

TEST_CASE( "info --info lists build, features and dependencies" ) {
    const auto r = run( "info --info" );
    CHECK( r.status == 0 );
    for ( const char* line : {"\nBuild:\n", "\nFeatures:\n", "\n  BoundsChecking", "\n  RankSimulator", "\n  DeviceMirror",
                              "\n  Tessellation", "\nDependencies:\n"} ) {
        CAPTURE( line );
        CHECK( r.out.find( line ) != std::string::npos );
    }
    CHECK( run( "info --info" ).out == r.out );
}

TEST_CASE( "usage errors exit with 2 and print usage" ) {
    const auto r = run( "info --bogus" );
    CHECK( r.status == 2 );
    CHECK( r.err.find( "Usage" ) != std::string::npos );
    CHECK( run( "" ).status == 2 );
    CHECK( run( "frobnicate" ).status == 2 );
    CHECK( run( "grid" ).status == 2 );
    CHECK( run( "grid F8 --format yaml" ).status == 2 );
    CHECK( run( "remap --source O8 --target F4 --field cubic:x" ).status == 2 );
    CHECK( run( "mesh F8 --parts 0 --out x" ).status == 2 );
    CHECK( run( "--help" ).status == 0 );
}

TEST_CASE( "grid describes points and rows" ) {
    const auto f8 = run( "grid F8 --format structured" );
    CHECK( f8.status == 0 );
    const auto doc = nlohmann::json::parse( f8.out );
    CHECK( doc["npts"] == 512 );
    CHECK( doc["kind"] == "FullGaussian" );
    CHECK( doc["rows"].size() == 16 );
    CHECK( nlohmann::json::parse( run( "grid O32 --format structured" ).out )["npts"] == 5248 );
    CHECK( run( "grid O32" ).out.find( "npts : 5248" ) != std::string::npos );
    const auto bad = run( "grid Z9" );
    CHECK( bad.status == 1 );
    CHECK( bad.err.find( "[error]" ) == 0 );
    CHECK( bad.err.find( "Z9" ) != std::string::npos );
}

TEST_CASE( "partition prints the distribution" ) {
    const auto r = run( "partition O1 --parts 3" );
    CHECK( r.status == 0 );
    const auto doc = nlohmann::json::parse( r.out );
    CHECK( doc["counts"] == nlohmann::json::array( {14, 13, 13} ) );
    CHECK( run( "partition O1 --parts 41" ).status == 1 );
    const auto m = nlohmann::json::parse( run( "partition F4 --parts 4 --master O8" ).out );
    CHECK( m["part_of"].size() == 128 );
}

TEST_CASE( "mesh writes Gmsh files, one per partition, deterministically" ) {
    TempDir dir;
    const auto single = dir.path / "f1.msh";
    const auto r      = run( "mesh F1 --pole --out " + single.string() );
    CHECK( r.status == 0 );
    CHECK( r.out.find( "[info] wrote" ) == 0 );
    const std::string text = slurp( single );
    CHECK( text.find( "$Nodes\n10\n" ) != std::string::npos );
    CHECK( text.find( "$Elements\n12\n" ) != std::string::npos );

    const auto base = dir.path / "f8.msh";
    REQUIRE( run( "mesh F8 --parts 4 --halo 1 --out " + base.string() ).status == 0 );
    CHECK_FALSE( fs::exists( base ) );
    long owned = 0;
    std::vector<std::string> first;
    for ( int p = 0; p < 4; ++p ) {
        const auto file = base.string() + ".p" + std::to_string( p );
        REQUIRE( fs::exists( file ) );
        first.push_back( slurp( file ) );
        const auto part  = node_data( first.back(), "partition" );
        const auto ghost = node_data( first.back(), "ghost" );
        for ( const auto& [id, g] : ghost ) {
            if ( g == 0 ) {
                CHECK( part.at( id ) == p );
                owned += id <= 512;
            }
        }
    }
    CHECK( owned == 512 );
    REQUIRE( run( "mesh F8 --parts 4 --halo 1 --out " + base.string() ).status == 0 );
    for ( int p = 0; p < 4; ++p ) {
        CHECK( slurp( base.string() + ".p" + std::to_string( p ) ) == first[p] );
    }
    CHECK( run( "mesh F1 --parts 9 --out " + base.string() ).status == 1 );
    CHECK( run( "mesh F1 --out /nonexistent/dir/x.msh" ).status == 1 );
}

TEST_CASE( "remap reports errors and message counts" ) {
    TempDir dir;
    const auto dump = dir.path / "out.csv";
    const auto c    = run( "remap --source O32 --target F8 --parts 32 --field constant:3 --report --out " + dump.string() );
    CHECK( c.status == 0 );
    auto kv = report( c.out );
    CHECK( std::stod( kv.at( "max_error" ) ) < 1e-14 );
    CHECK( kv.at( "messages_during_interpolation" ) == "0" );
    CHECK( kv.count( "rms_error" ) == 1 );
    const std::string text = slurp( dump );
    CHECK( text.rfind( "name: remapped\nshape: 512 1\nkind: Real64\nglobal_index,level,value\n0,0,3\n", 0 ) == 0 );

    kv = report( run( "remap --source F4 --target F4 --parts 2 --field harmonic:Y2,0 --report" ).out );
    CHECK( std::stod( kv.at( "max_error" ) ) < 1e-13 );

    // linear fields are reproduced at the central projection of each target,
    // leaving an O(h^2) radial error on the sphere
    kv = report( run( "remap --source O8 --target F4 --parts 1 --field linear:z --report" ).out );
    CHECK( std::stod( kv.at( "max_error" ) ) < 1e-2 );

    const auto again = run( "remap --source O32 --target F8 --parts 32 --field constant:3 --report --out " + dump.string() );
    CHECK( again.out == c.out );
    CHECK( slurp( dump ) == text );
    CHECK( run( "remap --source Z1 --target F8 --field constant:1" ).status == 1 );
}

TEST_CASE( "debug environment variable: 1 enables, 0 and unset disable" ) {
    const auto on = run( "info --version", "ORBIS_DEBUG=1" );
    CHECK( on.status == 0 );
    CHECK( on.out.find( "[debug] orbis version (" ) != std::string::npos );
    CHECK( on.out.find( "[debug] executable: " ) != std::string::npos );
    const auto zero = run( "info --version", "ORBIS_DEBUG=0" );
    CHECK( zero.out.find( "[debug]" ) == std::string::npos );
    const auto unset = run( "info --version" );
    CHECK( unset.out.find( "[debug]" ) == std::string::npos );
    CHECK( unset.out == zero.out );
}
