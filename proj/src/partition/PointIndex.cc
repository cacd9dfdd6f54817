/*
 * (C) Copyright 2026- ECMWF.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 * In applying this licence, ECMWF does not waive the privileges and immunities
 * granted to it by virtue of its status as an intergovernmental organisation
 * nor does it submit to any jurisdiction.
 */

#include "orbis/partition/PointIndex.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "orbis/runtime/Exception.h"

namespace orbis {

namespace {
constexpr idx_t leaf_size = 8;

bool closer( double d2a, gidx_t ida, double d2b, gidx_t idb ) {
    return d2a < d2b || ( d2a == d2b && ida < idb );
}
}  // namespace

PointIndex::PointIndex( std::vector<PointXYZ> points ) : points_( std::move( points ) ) {
    ids_.resize( points_.size() );
    std::iota( ids_.begin(), ids_.end(), gidx_t{0} );
    order_.resize( points_.size() );
    std::iota( order_.begin(), order_.end(), idx_t{0} );
    if ( !points_.empty() ) {
        root_ = build( 0, size() );
    }
}

PointIndex::PointIndex( std::vector<PointXYZ> points, std::vector<gidx_t> ids ) :
    points_( std::move( points ) ), ids_( std::move( ids ) ) {
    if ( ids_.size() != points_.size() ) {
        throw InvalidArgument( "PointIndex: points and ids differ in length" );
    }
    order_.resize( points_.size() );
    std::iota( order_.begin(), order_.end(), idx_t{0} );
    if ( !points_.empty() ) {
        root_ = build( 0, size() );
    }
}

idx_t PointIndex::build( idx_t begin, idx_t end ) {
    const idx_t id = static_cast<idx_t>( nodes_.size() );
    nodes_.push_back( {begin, end} );
    if ( end - begin <= leaf_size ) {
        return id;
    }

    double lo[3] = {1e300, 1e300, 1e300};
    double hi[3] = {-1e300, -1e300, -1e300};
    for ( idx_t k = begin; k < end; ++k ) {
        const PointXYZ& p = points_[order_[k]];
        for ( int d = 0; d < 3; ++d ) {
            lo[d] = std::min( lo[d], p[d] );
            hi[d] = std::max( hi[d], p[d] );
        }
    }
    int axis = 0;
    for ( int d = 1; d < 3; ++d ) {
        if ( hi[d] - lo[d] > hi[axis] - lo[axis] ) {
            axis = d;
        }
    }

    const idx_t mid = begin + ( end - begin ) / 2;
    std::nth_element( order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&]( idx_t a, idx_t b ) {
        const double pa = points_[a][axis];
        const double pb = points_[b][axis];
        return pa < pb || ( pa == pb && a < b );
    } );

    const double split = points_[order_[mid]][axis];
    const idx_t left   = build( begin, mid );
    const idx_t right  = build( mid, end );
    Node& node         = nodes_[id];
    node.axis          = axis;
    node.split         = split;
    node.left          = left;
    node.right         = right;
    return id;
}

// Visitor provides bound() -> current pruning radius squared (inclusive) and visit(position, d2).
template <typename Visitor>
void PointIndex::search( idx_t n, const PointXYZ& q, Visitor& visitor ) const {
    const Node& node = nodes_[n];
    if ( node.axis < 0 ) {
        for ( idx_t k = node.begin; k < node.end; ++k ) {
            const idx_t pos = order_[k];
            visitor.visit( pos, chord2( points_[pos], q ) );
        }
        return;
    }
    const double delta = q[node.axis] - node.split;
    const idx_t near   = delta < 0. ? node.left : node.right;
    const idx_t far    = delta < 0. ? node.right : node.left;
    search( near, q, visitor );
    // points on the splitting plane may sit on either side; keep ties reachable
    if ( delta * delta <= visitor.bound() ) {
        search( far, q, visitor );
    }
}

PointIndex::Neighbour PointIndex::nearest( const PointXYZ& query ) const {
    if ( empty() ) {
        throw InvalidArgument( "nearest_point on an empty point cloud" );
    }
    struct Best {
        const PointIndex& index;
        idx_t position{-1};
        double d2{std::numeric_limits<double>::infinity()};
        double bound() const { return d2; }
        void visit( idx_t pos, double dist2 ) {
            if ( position < 0 || closer( dist2, index.ids_[pos], d2, index.ids_[position] ) ) {
                position = pos;
                d2       = dist2;
            }
        }
    } best{*this};
    search( root_, query, best );
    return {ids_[best.position], best.position, std::sqrt( best.d2 )};
}

std::vector<PointIndex::Neighbour> PointIndex::k_nearest( const PointXYZ& query, idx_t k ) const {
    std::vector<Neighbour> result;
    if ( empty() || k <= 0 ) {
        return result;
    }
    struct Candidate {
        double d2;
        gidx_t id;
        idx_t position;
        bool operator<( const Candidate& o ) const { return closer( d2, id, o.d2, o.id ); }
    };
    struct KBest {
        size_t k;
        const PointIndex& index;
        std::priority_queue<Candidate> heap;  // worst on top
        double bound() const {
            return heap.size() < k ? std::numeric_limits<double>::infinity() : heap.top().d2;
        }
        void visit( idx_t pos, double dist2 ) {
            Candidate c{dist2, index.ids_[pos], pos};
            if ( heap.size() < k ) {
                heap.push( c );
            }
            else if ( c < heap.top() ) {
                heap.pop();
                heap.push( c );
            }
        }
    } best{static_cast<size_t>( k ), *this, {}};
    search( root_, query, best );

    result.resize( best.heap.size() );
    for ( auto it = result.rbegin(); it != result.rend(); ++it ) {
        const Candidate& c = best.heap.top();
        *it                = {c.id, c.position, std::sqrt( c.d2 )};
        best.heap.pop();
    }
    return result;
}

PointIndex::Neighbour nearest_point( const PointIndex& index, const PointXYZ& query ) {
    return index.nearest( query );
}

}  // namespace orbis
