#include "paritykit/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <sstream>
#include <vector>

#include "paritykit/errors.hpp"

namespace paritykit {

namespace {

Rational power(const Rational& x, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= x;
    return out;
}

Int integral_or_throw(const Rational& q, const char* name) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() != 1) {
        throw InvalidArgument(std::string("transform: coefficient ") + name +
                              " is not integral (" + c.get_str() + ")");
    }
    return c.get_num();
}

unsigned valuation_or(const Int& n, const Int& p, unsigned fallback) {
    return n == 0 ? fallback : valuation(n, p);
}

// Kraus: (c4, c6) come from an integral model iff v3(c6) != 2 and either
// c6 = -1 mod 4, or 16 | c4 and c6 = 0, 8 mod 32. Checked only at the given prime.
bool kraus_local(const Int& c4, const Int& c6, unsigned p) {
    if (p == 3) return c6 == 0 || valuation(c6, Int(3)) != 2;
    if (p == 2) {
        if (mod(c6, Int(4)) == 3) return true;
        const Int r = mod(c6, Int(32));
        return mod(c4, Int(16)) == 0 && (r == 0 || r == 8);
    }
    return true;
}

Int exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int pow_int(const Int& base, unsigned e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// Reduced integral model with the given c-invariants (assumed to satisfy Kraus).
CurveModel model_from_c4c6(const Int& c4, const Int& c6) {
    Int b2 = mod(Int(-c6), Int(12));
    if (b2 > 6) b2 -= 12;
    const Int b4 = exact_div(b2 * b2 - c4, Int(24));
    const Int b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6, Int(216));
    CurveModel m;
    m.a1 = mod(b2, Int(2));
    m.a2 = exact_div(b2 - m.a1, Int(4));
    m.a3 = mod(b6, Int(2));
    m.a4 = exact_div(b4 - m.a1 * m.a3, Int(2));
    m.a6 = exact_div(b6 - m.a3, Int(4));
    return m;
}

}  // namespace

Isomorphism Isomorphism::inverse() const {
    Isomorphism inv;
    inv.u = 1 / u;
    inv.r = -r / (u * u);
    inv.s = -s / u;
    inv.t = (s * r - t) / (u * u * u);
    inv.u.canonicalize();
    inv.r.canonicalize();
    inv.s.canonicalize();
    inv.t.canonicalize();
    return inv;
}

Isomorphism Isomorphism::then(const Isomorphism& next) const {
    Isomorphism out;
    const Rational u2 = u * u;
    out.u = u * next.u;
    out.r = r + u2 * next.r;
    out.s = s + u * next.s;
    out.t = t + u2 * u * next.t + s * u2 * next.r;
    out.u.canonicalize();
    out.r.canonicalize();
    out.s.canonicalize();
    out.t.canonicalize();
    return out;
}

Invariants invariants(const CurveModel& c) {
    Invariants inv;
    const auto& [a1, a2, a3, a4, a6] = c;
    inv.b2 = a1 * a1 + 4 * a2;
    inv.b4 = 2 * a4 + a1 * a3;
    inv.b6 = a3 * a3 + 4 * a6;
    inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.disc = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
               27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
    const Int c4_cubed = inv.c4 * inv.c4 * inv.c4;
    if (inv.disc == 0) {
        inv.j_num = c4_cubed;
        inv.j_den = 0;
    } else {
        const Int g = gcd(c4_cubed, inv.disc);
        inv.j_num = exact_div(c4_cubed, g);
        inv.j_den = exact_div(inv.disc, g);
        if (inv.j_den < 0) {
            inv.j_num = -inv.j_num;
            inv.j_den = -inv.j_den;
        }
    }
    return inv;
}

Int discriminant(const CurveModel& c) { return invariants(c).disc; }

bool is_singular(const CurveModel& c) { return discriminant(c) == 0; }

CurveModel transform(const CurveModel& c, const Isomorphism& iso) {
    if (iso.u == 0) throw InvalidArgument("transform: u must be nonzero");
    const Rational a1 = c.a1, a2 = c.a2, a3 = c.a3, a4 = c.a4, a6 = c.a6;
    const auto& [u, r, s, t] = iso;
    const Rational n1 = a1 + 2 * s;
    const Rational n2 = a2 - s * a1 + 3 * r - s * s;
    const Rational n3 = a3 + r * a1 + 2 * t;
    const Rational n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    const Rational n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    CurveModel out;
    out.a1 = integral_or_throw(n1 / u, "a1");
    out.a2 = integral_or_throw(n2 / power(u, 2), "a2");
    out.a3 = integral_or_throw(n3 / power(u, 3), "a3");
    out.a4 = integral_or_throw(n4 / power(u, 4), "a4");
    out.a6 = integral_or_throw(n6 / power(u, 6), "a6");
    return out;
}

std::pair<CurveModel, Isomorphism> minimal_model(const CurveModel& c, const FactorOptions& options) {
    const Invariants inv = invariants(c);
    if (inv.disc == 0) throw InvalidArgument("minimal_model: singular curve " + format_curve(c));

    const unsigned none = std::numeric_limits<unsigned>::max();
    const Int g = gcd(gcd(inv.c4, inv.c6), inv.disc);
    Int u = 1;
    for (const auto& [p, e] : factor(g, options)) {
        unsigned d = std::min({valuation_or(inv.c4, p, none) / 4, valuation_or(inv.c6, p, none) / 6,
                               valuation(inv.disc, p) / 12});
        if (d == 0) continue;
        if (p <= 3) {
            const Int c4 = exact_div(inv.c4, pow_int(p, 4 * d));
            const Int c6 = exact_div(inv.c6, pow_int(p, 6 * d));
            if (!kraus_local(c4, c6, static_cast<unsigned>(p.get_ui()))) --d;
        }
        u *= pow_int(p, d);
    }

    const Int c4 = exact_div(inv.c4, pow_int(u, 4));
    const Int c6 = exact_div(inv.c6, pow_int(u, 6));
    const CurveModel reduced = model_from_c4c6(c4, c6);

    // Recover (r, s, t) from the coefficient relations with the chosen u.
    Isomorphism iso;
    iso.u = u;
    const Rational uq = u;
    iso.s = (uq * Rational(reduced.a1) - Rational(c.a1)) / 2;
    iso.r = (uq * uq * Rational(reduced.a2) - Rational(c.a2) + iso.s * Rational(c.a1) + iso.s * iso.s) / 3;
    iso.t = (uq * uq * uq * Rational(reduced.a3) - Rational(c.a3) - iso.r * Rational(c.a1)) / 2;
    iso.r.canonicalize();
    iso.s.canonicalize();
    iso.t.canonicalize();

    if (transform(c, iso) != reduced) {
        throw std::logic_error("minimal_model: reconstructed isomorphism does not match for " +
                               format_curve(c));
    }
    return {reduced, iso};
}

CurveModel parse_curve(std::string_view literal) {
    std::string compact;
    compact.reserve(literal.size());
    for (char ch : literal) {
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    }
    if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']') {
        throw ParseError("curve literal must look like [a1,a2,a3,a4,a6]: '" + std::string(literal) + "'");
    }
    std::vector<std::string> fields;
    std::string current;
    for (std::size_t i = 1; i + 1 < compact.size(); ++i) {
        if (compact[i] == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(compact[i]);
        }
    }
    fields.push_back(current);
    if (fields.size() != 5) {
        throw ParseError("curve literal needs 5 coefficients, got " + std::to_string(fields.size()) +
                         ": '" + std::string(literal) + "'");
    }
    return CurveModel{parse_int(fields[0]), parse_int(fields[1]), parse_int(fields[2]),
                      parse_int(fields[3]), parse_int(fields[4])};
}

std::string format_curve(const CurveModel& c) {
    std::ostringstream os;
    os << '[' << c.a1 << ',' << c.a2 << ',' << c.a3 << ',' << c.a4 << ',' << c.a6 << ']';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CurveModel& c) { return os << format_curve(c); }

}  // namespace paritykit
