#pragma once

#include "paritykit/arith.hpp"
#include "paritykit/weierstrass.hpp"

namespace paritykit {

// y^2 = x^3 - D x.
CurveModel base_curve(const Int& D);

// y^2 = x^3 + D(27 D^2 t^4 - 18 D t^2 - 1) x + 4 D^2 t (27 D^2 t^4 + 1), whose 3-torsion
// matches base_curve(D). Throws InvalidArgument on a singular specialization.
CurveModel member(const Int& D, const Int& t);

}  // namespace paritykit
