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

#include <array>
#include <optional>
#include <vector>

#include "orbis/grid/Point.h"
#include "orbis/mesh/Mesh.h"
#include "orbis/partition/PointIndex.h"

namespace orbis {

/// Containment tolerance on the signed edge tests.
inline constexpr double containment_epsilon = 1e-12;

/// Spherical triangle with vertices counter-clockwise seen from outside.
class SphericalTriangle {
public:
    /// @throws DegenerateTriangle if |(a x b) . c| <= 1e-15
    SphericalTriangle( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c );

    const PointXYZ& a() const { return a_; }
    const PointXYZ& b() const { return b_; }
    const PointXYZ& c() const { return c_; }

    /// Signed tests opposite each vertex: {(b x c).p, (c x a).p, (a x b).p}.
    /// All three are non-negative inside the triangle.
    std::array<double, 3> edge_tests( const PointXYZ& p ) const;

    static bool degenerate( const PointXYZ& a, const PointXYZ& b, const PointXYZ& c );

private:
    PointXYZ a_, b_, c_;
};

/// p is inside (boundary included) iff every edge test is >= -epsilon.
bool contains( const SphericalTriangle&, const PointXYZ& p );

/// Gnomonic barycentric weights: the solution of w1 a + w2 b + w3 c = lambda p
/// with w1 + w2 + w3 = 1, i.e. linear interpolation at the central projection
/// of p onto the plane through a, b, c.
/// @throws DegenerateTriangle if p projects to infinity (opposite hemisphere)
std::array<double, 3> barycentric_weights( const SphericalTriangle&, const PointXYZ& p );

/// Point location over the elements of one (partition) mesh.
///
/// Candidates are the elements incident to the 8 nearest mesh nodes, widened
/// once to 32. Quads are split along the diagonal from their lowest local node
/// index. Among containing triangles the one with the largest minimum edge test
/// wins; earlier elements win exact ties.
class ElementLocator {
public:
    struct Location {
        idx_t element;
        std::array<idx_t, 3> nodes;  // local node indices of the triangle corners
    };

    explicit ElementLocator( const Mesh& );

    std::optional<Location> locate( const PointXYZ& ) const;

    /// Nearest local mesh node (ties to the smaller local index).
    idx_t nearest_node( const PointXYZ& p ) const { return static_cast<idx_t>( index_.nearest( p ).id ); }

    const Mesh& mesh() const { return *mesh_; }

    SphericalTriangle triangle( const Location& ) const;

private:
    std::optional<Location> search( const PointXYZ&, idx_t k ) const;

    const Mesh* mesh_;
    PointIndex index_;
    std::vector<idx_t> offsets_;
    std::vector<idx_t> incident_;
};

/// Location of p in a mesh.
/// @throws NotLocated
ElementLocator::Location locate( const Mesh&, const PointXYZ& p );

}  // namespace orbis
