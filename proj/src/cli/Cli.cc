/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/cli/Cli.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "orbis/field/Field.h"
#include "orbis/functionspace/FunctionSpace.h"
#include "orbis/grid/Grid.h"
#include "orbis/grid/GridDescription.h"
#include "orbis/interp/Remap.h"
#include "orbis/mesh/Mesh.h"
#include "orbis/parallel/RankSimulator.h"
#include "orbis/partition/Distribution.h"
#include "orbis/runtime/Exception.h"
#include "orbis/runtime/Library.h"
#include "orbis/runtime/Log.h"
#include "orbis/util/AnalyticFunction.h"

namespace orbis::cli {

namespace {

Grid grid_from_name( const std::string& name ) {
    return build_grid( parse_grid_name( name ) );
}

std::string part_path( const std::string& path, int part, int nparts ) {
    return nparts == 1 ? path : path + ".p" + std::to_string( part );
}

void write_file( const std::string& path, const std::string& content ) {
    std::ofstream file( path, std::ios::binary );
    if ( !file ) {
        throw Exception( "cannot open '" + path + "' for writing" );
    }
    file << content;
    if ( !file ) {
        throw Exception( "error writing '" + path + "'" );
    }
}

struct Redirect {
    Redirect( std::ostream& out, std::ostream& err ) :
        debug( Log::debug().sink() ), info( Log::info().sink() ), warning( Log::warning().sink() ), error( Log::error().sink() ) {
        Log::debug().set_sink( &out );
        Log::info().set_sink( &out );
        Log::warning().set_sink( &err );
        Log::error().set_sink( &err );
    }
    ~Redirect() {
        Log::debug().set_sink( debug );
        Log::info().set_sink( info );
        Log::warning().set_sink( warning );
        Log::error().set_sink( error );
    }
    std::ostream *debug, *info, *warning, *error;
};

}  // namespace

RemapReport remap_pipeline( const std::string& source_name, const std::string& target_name, int parts,
                            const std::string& field_spec, int halo ) {
    const auto function      = AnalyticFunction::parse( field_spec );
    const Grid source        = grid_from_name( source_name );
    const Grid target        = grid_from_name( target_name );
    const Distribution sdist = blocks_partition( source, parts );
    const Distribution tdist = matching_partition( target, source, sdist );

    struct RankResult {
        long long messages;
        std::vector<double> gathered;
    };

    auto results = parallel::run_ranks( parts, [&]( parallel::Communicator& comm ) {
        NodeColumns fs( generate_mesh( source, sdist, comm.rank(), halo, true ), comm );
        StructuredColumns ts( target, tdist, comm.rank() );

        Field src = fs.create_field( "source" );
        {
            auto v = src.host_view<double>( Intent::ReadWrite );
            for ( idx_t n = 0; n < fs.size(); ++n ) {
                const Node& node = fs.mesh().nodes()[n];
                v( n, 0 )        = node.ghost ? 0. : function( node.xyz );
            }
        }
        fs.halo_exchange( src, comm );

        Field tgt = ts.create_field( "remapped" );

        const std::uint64_t before = comm.counters().messages_sent;
        const auto weights         = build_remap( fs, target, tdist, comm );
        apply_remap( weights, src, tgt );
        const std::uint64_t after = comm.counters().messages_sent;

        const long long sent = static_cast<long long>( after - before );
        auto counts          = comm.gather_values_to_root( std::span<const long long>( &sent, 1 ) );
        Field global         = gather_field( ts, tgt, comm );

        RankResult result{0, {}};
        if ( comm.rank() == 0 ) {
            for ( const auto& c : counts ) {
                result.messages += c.at( 0 );
            }
            auto v = global.host_view<const double>( Intent::Read );
            result.gathered.assign( v.span().begin(), v.span().end() );
        }
        return result;
    } );

    RemapReport report;
    report.messages_during_interpolation = results[0].messages;
    report.values                        = std::move( results[0].gathered );
    double sum2                          = 0.;
    for ( gidx_t g = 0; g < target.size(); ++g ) {
        const double e   = std::abs( report.values[g] - function( target.xyz( g ) ) );
        report.max_error = std::max( report.max_error, e );
        sum2 += e * e;
    }
    report.rms_error = std::sqrt( sum2 / static_cast<double>( target.size() ) );
    return report;
}

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err ) {
    Redirect redirect( out, err );

    std::vector<char*> argv;
    std::vector<std::string> storage( args );
    if ( storage.empty() ) {
        storage.emplace_back( "orbis" );
    }
    for ( auto& a : storage ) {
        argv.push_back( a.data() );
    }
    const int argc = static_cast<int>( argv.size() );

    Library& library     = Library::instance();
    const bool own_setup = !library.initialised();
    if ( own_setup ) {
        library.initialise( argc, argv.data() );
    }
    struct Finalise {
        bool active;
        ~Finalise() {
            if ( active ) {
                Library::instance().finalise();
            }
        }
    } finalise{own_setup};

    CLI::App app{"orbis: global grids, distributed meshes, fields and remapping", "orbis"};
    app.require_subcommand( 1 );
    app.failure_message( CLI::FailureMessage::help );

    // info
    auto* info      = app.add_subcommand( "info", "Print version and installation information" );
    bool show_ver   = false;
    bool show_git   = false;
    bool show_info  = false;
    info->add_flag( "--version", show_ver, "Print the version" );
    info->add_flag( "--git", show_git, "Print the build revision" );
    info->add_flag( "--info", show_info, "Print build, features and dependencies" );

    // grid
    auto* grid_cmd = app.add_subcommand( "grid", "Describe a grid" );
    std::string grid_name;
    std::string grid_format = "text";
    grid_cmd->add_option( "name", grid_name, "Grid name, e.g. O32 or F8" )->required();
    grid_cmd->add_option( "--format", grid_format, "Output format" )->check( CLI::IsMember( {"text", "structured"} ) );

    // mesh
    auto* mesh_cmd = app.add_subcommand( "mesh", "Generate a distributed mesh and write Gmsh files" );
    std::string mesh_grid;
    std::string mesh_out;
    std::string mesh_coords = "xyz";
    int mesh_parts          = 1;
    int mesh_halo           = 0;
    bool mesh_pole          = false;
    mesh_cmd->add_option( "name", mesh_grid, "Grid name" )->required();
    mesh_cmd->add_option( "--parts", mesh_parts, "Number of partitions" )->check( CLI::PositiveNumber );
    mesh_cmd->add_option( "--halo", mesh_halo, "Halo depth" )->check( CLI::NonNegativeNumber );
    mesh_cmd->add_flag( "--pole", mesh_pole, "Close the poles with triangle fans" );
    mesh_cmd->add_option( "--out", mesh_out, "Output path (.pN suffix per partition when parts > 1)" )->required();
    mesh_cmd->add_option( "--coordinates", mesh_coords, "Node coordinates" )
        ->check( CLI::IsMember( {"xyz", "lonlat"} ) );

    // partition
    auto* part_cmd = app.add_subcommand( "partition", "Print the distribution of a grid" );
    std::string part_grid;
    std::string part_master;
    int part_parts = 1;
    part_cmd->add_option( "name", part_grid, "Grid name" )->required();
    part_cmd->add_option( "--parts", part_parts, "Number of partitions" )->check( CLI::PositiveNumber );
    part_cmd->add_option( "--master", part_master,
                          "Match the blocks distribution of this grid instead of partitioning directly" );

    // remap
    auto* remap_cmd = app.add_subcommand( "remap", "Remap an analytic field between grids" );
    std::string remap_source;
    std::string remap_target;
    std::string remap_field;
    std::string remap_out;
    int remap_parts   = 1;
    int remap_halo    = 2;
    bool remap_report = false;
    remap_cmd->add_option( "--source", remap_source, "Source grid name" )->required();
    remap_cmd->add_option( "--target", remap_target, "Target grid name" )->required();
    remap_cmd->add_option( "--parts", remap_parts, "Number of simulated ranks" )->check( CLI::PositiveNumber );
    remap_cmd->add_option( "--halo", remap_halo, "Source mesh halo depth" )->check( CLI::NonNegativeNumber );
    remap_cmd
        ->add_option( "--field", remap_field, "constant:<v> | linear:<x|y|z> | harmonic:Y<l>,<m>" )
        ->required()
        ->check(
            []( const std::string& spec ) {
                try {
                    AnalyticFunction::parse( spec );
                    return std::string();
                }
                catch ( const InvalidSpec& e ) {
                    return std::string( e.what() );
                }
            },
            "FIELD" );
    remap_cmd->add_option( "--out", remap_out, "Write the gathered target field dump here" );
    remap_cmd->add_flag( "--report", remap_report, "Print error statistics and message count" );

    try {
        app.parse( argc, argv.data() );
    }
    catch ( const CLI::ParseError& e ) {
        const int code = app.exit( e, out, err );
        return code == 0 ? success : usage_error;
    }

    try {
        if ( info->parsed() ) {
            if ( !show_ver && !show_git && !show_info ) {
                out << "orbis version (" << library_version() << "), git (" << library_build_id() << ")\n";
            }
            if ( show_ver ) {
                out << library_version() << '\n';
            }
            if ( show_git ) {
                out << library_build_id() << '\n';
            }
            if ( show_info ) {
                out << library_info();
            }
        }
        else if ( grid_cmd->parsed() ) {
            const Grid grid = grid_from_name( grid_name );
            if ( grid_format == "structured" ) {
                out << describe( grid ).dump( 2 ) << '\n';
            }
            else {
                out << describe_text( grid );
            }
        }
        else if ( mesh_cmd->parsed() ) {
            const Grid grid         = grid_from_name( mesh_grid );
            const Distribution dist = blocks_partition( grid, mesh_parts );
            const auto coords = mesh_coords == "lonlat" ? GmshCoordinates::LonLat : GmshCoordinates::XYZ;
            for ( int p = 0; p < mesh_parts; ++p ) {
                const Mesh mesh = generate_mesh( grid, dist, p, mesh_halo, mesh_pole );
                std::ostringstream content;
                write_gmsh( content, mesh, coords );
                const std::string path = part_path( mesh_out, p, mesh_parts );
                write_file( path, content.str() );
                Log::info() << "wrote " << path << ": " << mesh.node_count() << " nodes (" << mesh.owned_count()
                            << " owned), " << mesh.element_count() << " elements" << std::endl;
            }
        }
        else if ( part_cmd->parsed() ) {
            const Grid grid = grid_from_name( part_grid );
            if ( part_master.empty() ) {
                out << to_json( blocks_partition( grid, part_parts ) ).dump() << '\n';
            }
            else {
                const Grid master = grid_from_name( part_master );
                out << to_json( matching_partition( grid, master, blocks_partition( master, part_parts ) ) ).dump()
                    << '\n';
            }
        }
        else if ( remap_cmd->parsed() ) {
            const RemapReport report = remap_pipeline( remap_source, remap_target, remap_parts, remap_field, remap_halo );
            if ( !remap_out.empty() ) {
                Field dump = create_field( "remapped", static_cast<idx_t>( report.values.size() ), 1, DataKind::Real64 );
                {
                    auto v = dump.host_view<double>( Intent::ReadWrite );
                    std::copy( report.values.begin(), report.values.end(), v.span().begin() );
                }
                std::vector<gidx_t> gidx( report.values.size() );
                std::iota( gidx.begin(), gidx.end(), gidx_t{0} );
                std::ostringstream content;
                write_field_dump( content, dump, gidx );
                write_file( remap_out, content.str() );
                Log::info() << "wrote " << remap_out << std::endl;
            }
            if ( remap_report ) {
                out << "source: " << remap_source << '\n';
                out << "target: " << remap_target << '\n';
                out << "parts: " << remap_parts << '\n';
                out << "field: " << remap_field << '\n';
                out << std::scientific << std::setprecision( 6 );
                out << "max_error: " << report.max_error << '\n';
                out << "rms_error: " << report.rms_error << '\n';
                out << std::defaultfloat;
                out << "messages_during_interpolation: " << report.messages_during_interpolation << '\n';
            }
        }
    }
    catch ( const InvalidSpec& e ) {
        Log::error() << e.what() << std::endl;
        return usage_error;
    }
    catch ( const std::exception& e ) {
        Log::error() << e.what() << std::endl;
        return domain_error;
    }
    return success;
}

}  // namespace orbis::cli
