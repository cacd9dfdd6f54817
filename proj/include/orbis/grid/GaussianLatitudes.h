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

#include <vector>

namespace orbis {

/// Latitudes (degrees, north to south) of the 2n Gauss-Legendre nodes,
/// i.e. asin of the roots of the Legendre polynomial of degree 2n.
///
/// Roots are refined by Newton iteration in extended precision from
/// Chebyshev-like initial guesses (at most 100 iterations, |dx| < 1e-15).
/// Only the northern half is computed; the southern half is its exact
/// negation, so the result is antisymmetric bit for bit.
std::vector<double> gaussian_latitudes( int n );

}  // namespace orbis
