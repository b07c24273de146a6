#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "paritykit/arith.hpp"

namespace paritykit {

// y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6 with integral coefficients.
struct CurveModel {
    Int a1, a2, a3, a4, a6;

    friend bool operator==(const CurveModel&, const CurveModel&) = default;
};

struct Invariants {
    Int b2, b4, b6, b8;
    Int c4, c6;
    Int disc;
    // j = j_num / j_den in lowest terms with j_den > 0. j_den == 0 marks a singular model.
    Int j_num, j_den;
};

// (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + t).
struct Isomorphism {
    Rational u{1}, r{0}, s{0}, t{0};

    static Isomorphism identity() { return {}; }
    Isomorphism inverse() const;
    // Applying *this and then `next`.
    Isomorphism then(const Isomorphism& next) const;

    friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

Invariants invariants(const CurveModel& c);
Int discriminant(const CurveModel& c);
bool is_singular(const CurveModel& c);

// Throws InvalidArgument naming the first non-integral coefficient.
CurveModel transform(const CurveModel& c, const Isomorphism& iso);

// Global minimal model in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}) together with
// the isomorphism taking `c` to it.
std::pair<CurveModel, Isomorphism> minimal_model(const CurveModel& c,
                                                 const FactorOptions& options = {});

// "[a1,a2,a3,a4,a6]", whitespace allowed around tokens.
CurveModel parse_curve(std::string_view literal);
std::string format_curve(const CurveModel& c);

std::ostream& operator<<(std::ostream& os, const CurveModel& c);

}  // namespace paritykit
