#include "paritykit/family.hpp"

#include "paritykit/errors.hpp"

namespace paritykit {

CurveModel base_curve(const Int& D) {
    if (D < 1) throw InvalidArgument("base_curve: D must be positive, got " + to_string(D));
    return {0, 0, 0, -D, 0};
}

CurveModel member(const Int& D, const Int& t) {
    if (D < 1) throw InvalidArgument("member: D must be positive, got " + to_string(D));
    const Int t2 = t * t;
    const Int core = 27 * D * D * t2 * t2;
    CurveModel c{0, 0, 0, D * (core - 18 * D * t2 - 1), 4 * D * D * t * (core + 1)};
    if (is_singular(c)) {
        throw InvalidArgument("member: singular specialization at D = " + to_string(D) +
                              ", t = " + to_string(t));
    }
    return c;
}

}  // namespace paritykit
