/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/interp/Locator.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbis/runtime/Exception.h"

namespace orbis {

namespace {
constexpr double degenerate_tolerance = 1e-15;
}

bool SphericalTriangle::degenerate( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c ) {
    return !( std::abs( dot( cross( a, b ), c ) ) > degenerate_tolerance );
}

SphericalTriangle::SphericalTriangle( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c ) : a_( a ), b_( b ), c_( c ) {
    if ( degenerate( a, b, c ) ) {
        std::ostringstream msg;
        msg << "degenerate spherical triangle " << a << " " << b << " " << c;
        throw DegenerateTriangle( msg.str() );
    }
}

std::array<double, 3> SphericalTriangle::edge_tests( const PointXYZ& p ) const {
    return {dot( cross( b_, c_ ), p ), dot( cross( c_, a_ ), p ), dot( cross( a_, b_ ), p )};
}

bool contains( const SphericalTriangle& tri, const PointXYZ& p ) {
    const auto t = tri.edge_tests( p );
    return t[0] >= -containment_epsilon && t[1] >= -containment_epsilon && t[2] >= -containment_epsilon;
}

std::array<double, 3> barycentric_weights( const SphericalTriangle& tri, const PointXYZ& p ) {
    // Cramer's rule on [a b c] w = p; the tests are the numerators, det cancels
    // in the normalisation
    const auto t   = tri.edge_tests( p );
    const double s = t[0] + t[1] + t[2];
    if ( !( s > 0. ) ) {
        throw DegenerateTriangle( "point does not project onto the triangle plane" );
    }
    const double w0 = t[0] / s;
    const double w1 = t[1] / s;
    return {w0, w1, 1. - w0 - w1};
}

ElementLocator::ElementLocator( const Mesh& mesh ) : mesh_( &mesh ) {
    std::vector<PointXYZ> xyz;
    xyz.reserve( mesh.nodes().size() );
    for ( const Node& n : mesh.nodes() ) {
        xyz.push_back( n.xyz );
    }
    index_ = PointIndex( std::move( xyz ) );

    offsets_.assign( mesh.nodes().size() + 1, 0 );
    for ( const Element& e : mesh.elements() ) {
        for ( int c = 0; c < e.size(); ++c ) {
            ++offsets_[e.nodes[c] + 1];
        }
    }
    for ( size_t n = 0; n + 1 < offsets_.size(); ++n ) {
        offsets_[n + 1] += offsets_[n];
    }
    incident_.resize( offsets_.back() );
    std::vector<idx_t> fill( offsets_.begin(), offsets_.end() - 1 );
    for ( idx_t e = 0; e < mesh.element_count(); ++e ) {
        const Element& el = mesh.elements()[e];
        for ( int c = 0; c < el.size(); ++c ) {
            incident_[fill[el.nodes[c]]++] = e;
        }
    }
}

SphericalTriangle ElementLocator::triangle( const Location& loc ) const {
    const auto& nodes = mesh_->nodes();
    return SphericalTriangle( nodes[loc.nodes[0]].xyz, nodes[loc.nodes[1]].xyz, nodes[loc.nodes[2]].xyz );
}

std::optional<ElementLocator::Location> ElementLocator::search( const PointXYZ& p, idx_t k ) const {
    std::vector<idx_t> candidates;
    for ( const auto& nb : index_.k_nearest( p, k ) ) {
        for ( idx_t j = offsets_[nb.id]; j < offsets_[nb.id + 1]; ++j ) {
            candidates.push_back( incident_[j] );
        }
    }
    std::sort( candidates.begin(), candidates.end() );
    candidates.erase( std::unique( candidates.begin(), candidates.end() ), candidates.end() );

    const auto& nodes = mesh_->nodes();
    std::optional<Location> best;
    double best_min = 0.;
    for ( idx_t e : candidates ) {
        const Element& el = mesh_->elements()[e];
        std::array<std::array<idx_t, 3>, 2> tris;
        int ntri = 1;
        if ( el.shape == ElementShape::Triangle ) {
            tris[0] = {el.nodes[0], el.nodes[1], el.nodes[2]};
        }
        else {
            const int m = static_cast<int>( std::min_element( el.nodes.begin(), el.nodes.end() ) - el.nodes.begin() );
            const auto q = [&]( int k ) { return el.nodes[( m + k ) % 4]; };
            tris[0]      = {q( 0 ), q( 1 ), q( 2 )};
            tris[1]      = {q( 0 ), q( 2 ), q( 3 )};
            ntri         = 2;
        }
        for ( int t = 0; t < ntri; ++t ) {
            const PointXYZ& a = nodes[tris[t][0]].xyz;
            const PointXYZ& b = nodes[tris[t][1]].xyz;
            const PointXYZ& c = nodes[tris[t][2]].xyz;
            if ( SphericalTriangle::degenerate( a, b, c ) ) {
                continue;
            }
            const double t0 = dot( cross( b, c ), p );
            const double t1 = dot( cross( c, a ), p );
            const double t2 = dot( cross( a, b ), p );
            const double lo = std::min( {t0, t1, t2} );
            if ( lo >= -containment_epsilon && ( !best || lo > best_min ) ) {
                best     = Location{e, tris[t]};
                best_min = lo;
            }
        }
    }
    return best;
}

std::optional<ElementLocator::Location> ElementLocator::locate( const PointXYZ& p ) const {
    if ( index_.empty() ) {
        return std::nullopt;
    }
    if ( auto loc = search( p, 8 ) ) {
        return loc;
    }
    return search( p, 32 );
}

ElementLocator::Location locate( const Mesh& mesh, const PointXYZ& p ) {
    ElementLocator locator( mesh );
    if ( auto loc = locator.locate( p ) ) {
        return *loc;
    }
    std::ostringstream msg;
    msg << "point " << p << " is not contained in any element of partition " << mesh.partition();
    throw NotLocated( -1, msg.str() );
}

}  // namespace orbis
