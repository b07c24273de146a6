#include "paritykit/local.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "paritykit/errors.hpp"

namespace paritykit {

namespace {

constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();

Int div_exact(const Int& a, const Int& q) {
    if (!mpz_divisible_p(a.get_mpz_t(), q.get_mpz_t())) {
        throw std::logic_error("tate: expected " + to_string(q) + " | " + to_string(a));
    }
    Int out;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
    return out;
}

// One pass of Tate's algorithm at a fixed prime. Follows the classical layout
// (Cremona, "Algorithms for modular elliptic curves").
class Tate {
public:
    explicit Tate(const Int& p) : p_(p) {
        if (p_ > 3) half_ = inverse_mod(Int(2), p_);
    }

    LocalReduction run(CurveModel c) const {
        for (;;) {
            Invariants inv = invariants(c);
            const unsigned n = val(inv.disc);
            if (n == 0) return done(c, 0, 0, ReductionType::Good, "I0");

            // Move the singular point to (0, 0): p | a3, a4, a6.
            Int r, t;
            if (p_ == 2) {
                if (divides(inv.b2)) {
                    r = red(c.a4);
                    t = red(((r + c.a2) * r + c.a4) * r + c.a6);
                } else {
                    r = red(c.a3);
                    t = red(c.a4 + r * r);
                }
            } else if (p_ == 3) {
                r = divides(inv.b2) ? red(-inv.b6) : red(-inverse_mod(inv.b2, p_) * inv.b4);
                t = red(c.a1 * r + c.a3);
            } else {
                if (divides(inv.c4)) {
                    r = -inverse_mod(Int(12), p_) * inv.b2;
                } else {
                    r = -inverse_mod(Int(12 * inv.c4), p_) * (inv.c6 + inv.b2 * inv.c4);
                }
                r = red(r);
                t = red(-half_ * (c.a1 * r + c.a3));
            }
            c = shift(c, r, 0, t);
            inv = invariants(c);

            if (!divides(inv.c4)) {
                // Node with tangent cone y^2 + a1 xy - a2 x^2.
                const bool split = has_root(Int(1), c.a1, Int(-c.a2));
                return done(c, n, 1,
                            split ? ReductionType::SplitMultiplicative
                                  : ReductionType::NonsplitMultiplicative,
                            "I" + std::to_string(n));
            }
            if (val(c.a6) < 2) return done(c, n, n, ReductionType::Additive, "II");
            if (val(inv.b8) < 3) return done(c, n, n - 1, ReductionType::Additive, "III");
            if (val(inv.b6) < 3) return done(c, n, n - 2, ReductionType::Additive, "IV");

            // Now arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
            Int s;
            if (p_ == 2) {
                s = red(c.a2);
                t = 2 * red(div_exact(c.a6, Int(4)));
            } else if (p_ == 3) {
                s = c.a1;
                t = c.a3;
            } else {
                s = red(-c.a1 * half_);
                t = red(-c.a3 * half_);
            }
            c = shift(c, 0, s, t);

            const Int p2 = p_ * p_;
            const Int p3 = p2 * p_;
            const Int b = div_exact(c.a2, p_);
            const Int cc = div_exact(c.a4, p2);
            const Int d = div_exact(c.a6, p3);
            const Int w = 27 * d * d - b * b * cc * cc + 4 * b * b * b * d - 18 * b * cc * d +
                          4 * cc * cc * cc;
            const Int x = 3 * cc - b * b;

            if (!divides(w)) return done(c, n, n - 4, ReductionType::Additive, "I0*");

            if (!divides(x)) {
                // Double root of the cubic; move it to 0 and peel the chain of subprocedures.
                if (p_ == 2) {
                    r = red(cc);
                } else if (p_ == 3) {
                    r = red(cc * inverse_mod(b, p_));
                } else {
                    r = red((b * cc - 9 * d) * inverse_mod(Int(2 * x), p_));
                }
                c = shift(c, p_ * r, 0, 0);
                unsigned ix = 3, iy = 3;
                Int mx = p2, my = p2;
                for (;;) {
                    Int a2t = div_exact(c.a2, p_);
                    Int a3t = div_exact(c.a3, my);
                    Int a4t = div_exact(c.a4, p_ * mx);
                    Int a6t = div_exact(c.a6, mx * my);
                    if (!divides(a3t * a3t + 4 * a6t)) break;
                    t = p_ == 2 ? Int(my * red(a6t)) : Int(my * red(-a3t * half_or_two()));
                    c = shift(c, 0, 0, t);
                    my *= p_;
                    ++iy;
                    a2t = div_exact(c.a2, p_);
                    a3t = div_exact(c.a3, my);
                    a4t = div_exact(c.a4, p_ * mx);
                    a6t = div_exact(c.a6, mx * my);
                    if (!divides(a4t * a4t - 4 * a6t * a2t)) break;
                    if (p_ == 2) {
                        r = mx * red(a6t * inverse_mod(a2t, p_));
                    } else {
                        r = mx * red(-a4t * inverse_mod(Int(2 * a2t), p_));
                    }
                    c = shift(c, r, 0, 0);
                    mx *= p_;
                    ++ix;
                }
                const unsigned m = ix + iy - 5;
                return done(c, n, n - ix - iy + 1, ReductionType::Additive,
                            "I" + std::to_string(m) + "*");
            }

            // Triple root; move it to 0.
            if (p_ == 2) {
                r = red(b);
            } else if (p_ == 3) {
                r = red(-d);
            } else {
                r = red(-b * inverse_mod(Int(3), p_));
            }
            c = shift(c, p_ * r, 0, 0);
            const Int x3 = div_exact(c.a3, p2);
            const Int x6 = div_exact(c.a6, p2 * p2);
            if (!divides(x3 * x3 + 4 * x6)) return done(c, n, n - 6, ReductionType::Additive, "IV*");
            t = p_ == 2 ? red(x6) : red(x3 * half_or_two());
            c = shift(c, 0, 0, -p2 * t);
            if (val(c.a4) < 4) return done(c, n, n - 7, ReductionType::Additive, "III*");
            if (val(c.a6) < 6) return done(c, n, n - 8, ReductionType::Additive, "II*");

            // Not minimal at p: scale by u = p and start over.
            c = CurveModel{div_exact(c.a1, p_), div_exact(c.a2, p2), div_exact(c.a3, p3),
                           div_exact(c.a4, p2 * p2), div_exact(c.a6, p3 * p3)};
        }
    }

private:
    LocalReduction done(const CurveModel& c, unsigned v_disc, unsigned f, ReductionType type,
                        std::string kodaira) const {
        LocalReduction out;
        out.ell = p_;
        out.type = type;
        out.cond_exp = f;
        out.v_disc = v_disc;
        out.kodaira = std::move(kodaira);
        out.minimal_at_ell = c;
        return out;
    }

    unsigned val(const Int& x) const { return x == 0 ? kInfinite : valuation(x, p_); }
    bool divides(const Int& x) const { return mpz_divisible_p(x.get_mpz_t(), p_.get_mpz_t()) != 0; }
    Int red(const Int& x) const { return mod(x, p_); }
    // 1/2 mod p for odd p; at p == 3 the inverse of 2 is 2.
    Int half_or_two() const { return p_ == 3 ? Int(2) : half_; }

    static CurveModel shift(const CurveModel& c, const Int& r, const Int& s, const Int& t) {
        return transform(c, Isomorphism{Rational(1), Rational(r), Rational(s), Rational(t)});
    }

    // a X^2 + b X + c has a root in F_p.
    bool has_root(const Int& a, const Int& b, const Int& c) const {
        if (p_ <= 3) {
            for (unsigned long x = 0; x < p_.get_ui(); ++x) {
                if (divides(Int((a * x + b) * x + c))) return true;
            }
            return false;
        }
        if (divides(a)) return !divides(b) || divides(c);
        return jacobi(Int(b * b - 4 * a * c), p_) >= 0;
    }

    Int p_;
    Int half_;
};

void require_prime(const Int& ell, const char* what) {
    if (ell < 2 || !is_prime(ell)) {
        throw InvalidArgument(std::string(what) + ": " + to_string(ell) + " is not prime");
    }
}

std::uint64_t checked_counting_prime(const Int& ell) {
    const std::uint64_t ceiling = counting_prime_ceiling();
    if (!fits_u64(ell) || to_u64(ell) > ceiling) {
        throw ComputationLimit("prime too large for naive counting: " + to_string(ell) +
                               " exceeds " + std::to_string(ceiling));
    }
    return to_u64(ell);
}

}  // namespace

std::string_view to_string(ReductionType type) {
    switch (type) {
        case ReductionType::Good: return "good";
        case ReductionType::SplitMultiplicative: return "split_multiplicative";
        case ReductionType::NonsplitMultiplicative: return "nonsplit_multiplicative";
        case ReductionType::Additive: return "additive";
    }
    return "unknown";
}

std::uint64_t counting_prime_ceiling() {
    constexpr std::uint64_t kDefault = 100000000;
    const char* env = std::getenv("PARITYKIT_MAX_ELL");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return kDefault;
    return v;
}

LocalReduction reduce_at(const CurveModel& c, const Int& ell) {
    if (is_singular(c)) throw InvalidArgument("singular curve " + format_curve(c));
    require_prime(ell, "reduce_at");
    return Tate(ell).run(c);
}

std::uint64_t count_points(const CurveModel& c, const Int& ell) {
    if (is_singular(c)) throw InvalidArgument("singular curve " + format_curve(c));
    require_prime(ell, "count_points");
    CurveModel model = c;
    if (mpz_divisible_p(discriminant(c).get_mpz_t(), ell.get_mpz_t())) {
        const LocalReduction red = Tate(ell).run(c);
        if (red.type != ReductionType::Good) {
            throw InvalidArgument("count_points: bad reduction at " + to_string(ell) +
                                  "; use tate_local for the local data");
        }
        model = red.minimal_at_ell;
    }
    const std::uint64_t l = checked_counting_prime(ell);
    if (l <= 3) return detail::count_points_enumerate(model, l);
    const std::int64_t trace = frobenius_trace(model, l, CountMethod::CharacterSum);
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(l) + 1 - trace);
}

std::int64_t frobenius_trace(const CurveModel& c, std::uint64_t ell, CountMethod method) {
    if (ell <= 3) {
        return static_cast<std::int64_t>(ell) + 1 -
               static_cast<std::int64_t>(detail::count_points_enumerate(c, ell));
    }
    const Invariants inv = invariants(c);
    if (residue(inv.disc, ell) == 0) {
        throw InvalidArgument("frobenius_trace: model is not smooth mod " + std::to_string(ell));
    }
    // y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic over F_ell for ell >= 5.
    const std::uint64_t a = residue(Int(-27 * inv.c4), ell);
    const std::uint64_t b = residue(Int(-54 * inv.c6), ell);
    return short_model_trace(ell, a, b, method);
}

LocalData tate_local(const CurveModel& c, const Int& ell) {
    const LocalReduction red = reduce_at(c, ell);
    LocalData out;
    out.ell = red.ell;
    out.type = red.type;
    out.cond_exp = red.cond_exp;
    out.v_disc = red.v_disc;
    out.kodaira = red.kodaira;
    switch (red.type) {
        case ReductionType::Good: {
            const std::uint64_t l = checked_counting_prime(ell);
            out.trace = l <= 3 ? static_cast<std::int64_t>(l) + 1 -
                                     static_cast<std::int64_t>(
                                         detail::count_points_enumerate(red.minimal_at_ell, l))
                               : frobenius_trace(red.minimal_at_ell, l, CountMethod::CharacterSum);
            break;
        }
        case ReductionType::SplitMultiplicative: out.trace = 1; break;
        case ReductionType::NonsplitMultiplicative: out.trace = -1; break;
        case ReductionType::Additive: out.trace = 0; break;
    }
    return out;
}

std::vector<LocalData> bad_local_data(const CurveModel& c, const FactorOptions& options) {
    const Int disc = discriminant(c);
    if (disc == 0) throw InvalidArgument("singular curve " + format_curve(c));
    std::vector<LocalData> out;
    for (const auto& [p, e] : factor(disc, options)) {
        LocalData d;
        const LocalReduction red = Tate(p).run(c);
        if (red.type == ReductionType::Good) continue;
        d.ell = p;
        d.type = red.type;
        d.cond_exp = red.cond_exp;
        d.v_disc = red.v_disc;
        d.kodaira = red.kodaira;
        d.trace = red.type == ReductionType::SplitMultiplicative      ? 1
                  : red.type == ReductionType::NonsplitMultiplicative ? -1
                                                                       : 0;
        out.push_back(std::move(d));
    }
    return out;
}

Int conductor(const CurveModel& c, const FactorOptions& options) {
    Int n = 1;
    for (const LocalData& d : bad_local_data(c, options)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), d.ell.get_mpz_t(), d.cond_exp);
        n *= pe;
    }
    return n;
}

bool is_supersingular(const CurveModel& c, const Int& p) {
    if (p == 2 || p < 2 || !is_prime(p)) {
        throw InvalidArgument("is_supersingular: p must be an odd prime, got " + to_string(p));
    }
    const LocalData d = tate_local(c, p);
    if (d.type != ReductionType::Good) {
        throw GateFailure("p must be a good prime: " + format_curve(c) + " has bad reduction at " +
                          to_string(p));
    }
    return d.trace == 0;
}

EulerPoly euler_poly(const LocalData& d) {
    EulerPoly poly;
    switch (d.type) {
        case ReductionType::Good:
            poly.coeffs = {Int(1), from_i64(-d.trace), d.ell};
            break;
        case ReductionType::SplitMultiplicative:
            poly.coeffs = {Int(1), Int(-1)};
            break;
        case ReductionType::NonsplitMultiplicative:
            poly.coeffs = {Int(1), Int(1)};
            break;
        case ReductionType::Additive:
            poly.coeffs = {Int(1)};
            break;
    }
    return poly;
}

}  // namespace paritykit
