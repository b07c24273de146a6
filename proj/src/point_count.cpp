#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "paritykit/errors.hpp"
#include "paritykit/kernels.hpp"
#include "paritykit/local.hpp"

namespace paritykit {

namespace {

// Below this the character sum is cheaper than building baby-step tables.
constexpr std::uint64_t kBsgsCrossover = 1500;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// x mod p for p < 2^32 and any 64-bit x, via a precomputed reciprocal.
class Barrett {
public:
    explicit Barrett(std::uint64_t p) : p_(p), m_(~std::uint64_t{0} / p) {}
    std::uint64_t reduce(std::uint64_t x) const {
        const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m_) >> 64);
        const std::uint64_t r = x - q * p_;
        return r >= p_ ? r - p_ : r;
    }
    std::uint64_t modulus() const { return p_; }

private:
    std::uint64_t p_, m_;
};

// Arithmetic on y^2 = x^3 + a x + b over F_p (p < 2^32) in Jacobian coordinates.
class JacobianCurve {
public:
    struct Point {
        std::uint64_t x = 0, y = 0, z = 0;  // z == 0 is the identity
        bool is_identity() const { return z == 0; }
    };
    struct Affine {
        std::uint64_t x = 0, y = 0;
    };

    JacobianCurve(const Barrett& red, std::uint64_t a)
        : red_(red), p_(red.modulus()), a_(a % p_) {}

    std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return red_.reduce(x * y); }
    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        const std::uint64_t s = x + y;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return x >= y ? x - y : x + p_ - y; }
    std::uint64_t inv(std::uint64_t x) const {
        std::uint64_t result = 1;
        for (std::uint64_t e = p_ - 2; e; e >>= 1, x = mul(x, x))
            if (e & 1) result = mul(result, x);
        return result;
    }

    Point lift(const Affine& q) const { return {q.x, q.y, 1}; }

    Point dbl(const Point& q) const {
        if (q.is_identity() || q.y == 0) return {};
        const std::uint64_t xx = mul(q.x, q.x);
        const std::uint64_t yy = mul(q.y, q.y);
        const std::uint64_t zz = mul(q.z, q.z);
        const std::uint64_t s = mul(4, mul(q.x, yy));
        const std::uint64_t m = add(mul(3, xx), mul(a_, mul(zz, zz)));
        Point r;
        r.x = sub(mul(m, m), add(s, s));
        r.y = sub(mul(m, sub(s, r.x)), mul(8, mul(yy, yy)));
        r.z = mul(2, mul(q.y, q.z));
        return r;
    }

    // q + (x2, y2).
    Point add_affine(const Point& q, const Affine& o) const {
        if (q.is_identity()) return lift(o);
        const std::uint64_t z1z1 = mul(q.z, q.z);
        const std::uint64_t u2 = mul(o.x, z1z1);
        const std::uint64_t s2 = mul(o.y, mul(q.z, z1z1));
        const std::uint64_t h = sub(u2, q.x);
        const std::uint64_t r = sub(s2, q.y);
        if (h == 0) return r == 0 ? dbl(q) : Point{};
        const std::uint64_t hh = mul(h, h);
        const std::uint64_t hhh = mul(h, hh);
        const std::uint64_t v = mul(q.x, hh);
        Point out;
        out.x = sub(sub(mul(r, r), hhh), add(v, v));
        out.y = sub(mul(r, sub(v, out.x)), mul(q.y, hhh));
        out.z = mul(q.z, h);
        return out;
    }

    Point scale(const Affine& q, std::uint64_t k) const {
        Point acc;
        if (k == 0) return acc;
        for (int bit = 63 - __builtin_clzll(k); bit >= 0; --bit) {
            acc = dbl(acc);
            if ((k >> bit) & 1) acc = add_affine(acc, q);
        }
        return acc;
    }

    Affine normalize(const Point& q) const {
        const std::uint64_t zi = inv(q.z);
        const std::uint64_t zi2 = mul(zi, zi);
        return {mul(q.x, zi2), mul(q.y, mul(zi2, zi))};
    }

    // Normalizes every non-identity point with a single inversion.
    std::vector<Affine> normalize_all(const std::vector<Point>& pts) const {
        std::vector<std::uint64_t> prefix(pts.size());
        std::uint64_t run = 1;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            prefix[i] = run;
            if (!pts[i].is_identity()) run = mul(run, pts[i].z);
        }
        std::uint64_t inv_run = inv(run);
        std::vector<Affine> out(pts.size());
        for (std::size_t i = pts.size(); i-- > 0;) {
            if (pts[i].is_identity()) continue;
            const std::uint64_t zi = mul(inv_run, prefix[i]);
            inv_run = mul(inv_run, pts[i].z);
            const std::uint64_t zi2 = mul(zi, zi);
            out[i] = {mul(pts[i].x, zi2), mul(pts[i].y, mul(zi2, zi))};
        }
        return out;
    }

private:
    Barrett red_;
    std::uint64_t p_;
    std::uint64_t a_;
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t m) {
    static const std::vector<std::uint32_t> small = primes_up_to(1u << 16);
    std::vector<std::uint64_t> out;
    for (std::uint32_t q : small) {
        if (static_cast<std::uint64_t>(q) * q > m) break;
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) {
        // Trial division covered every prime below 2^16, so a cofactor under 2^32 is prime.
        if (m >> 32 != 0 && !is_prime_u64(m)) {
            for (const auto& [q, e] : factor(from_u64(m))) out.push_back(to_u64(q));
        } else {
            out.push_back(m);
        }
    }
    return out;
}

// Some m > 0 with m * P = O, searched around [lo, hi]. Returns 0 if none is found.
std::uint64_t find_annihilator(const JacobianCurve& curve, const JacobianCurve::Affine& pt,
                               std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t width = hi - lo;
    const std::uint64_t s = std::max<std::uint64_t>(1, isqrt(width / 2) + 1);

    std::vector<JacobianCurve::Point> baby(s);
    JacobianCurve::Point acc;
    for (std::uint64_t j = 1; j <= s; ++j) {
        acc = curve.add_affine(acc, pt);
        if (acc.is_identity()) return j;
        baby[j - 1] = acc;
    }
    const auto baby_affine = curve.normalize_all(baby);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table(s);  // (x, j)
    for (std::uint64_t j = 0; j < s; ++j) table[j] = {baby_affine[j].x, j + 1};
    std::sort(table.begin(), table.end());

    const std::uint64_t stride = 2 * s + 1;
    const auto giant_step = curve.scale(pt, stride);
    if (giant_step.is_identity()) return stride;
    const auto giant_affine = curve.normalize(giant_step);
    const std::uint64_t center = lo + s;
    const std::uint64_t count = width / stride + 2;

    std::vector<JacobianCurve::Point> giants(count);
    giants[0] = curve.scale(pt, center);
    for (std::uint64_t k = 1; k < count; ++k) giants[k] = curve.add_affine(giants[k - 1], giant_affine);
    const auto giants_affine = curve.normalize_all(giants);

    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t m = center + k * stride;
        if (giants[k].is_identity()) return m;
        const auto& g = giants_affine[k];
        auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(g.x, std::uint64_t{0}));
        if (it == table.end() || it->first != g.x) continue;
        const std::uint64_t j = it->second;
        return baby_affine[j - 1].y == g.y ? m - j : m + j;
    }
    return 0;
}

std::uint64_t exact_order(const JacobianCurve& curve, const JacobianCurve::Affine& pt,
                          std::uint64_t multiple) {
    std::uint64_t n = multiple;
    for (std::uint64_t q : prime_divisors(multiple)) {
        while (n % q == 0 && curve.scale(pt, n / q).is_identity()) n /= q;
    }
    return n;
}

std::uint64_t lcm_u64(std::uint64_t x, std::uint64_t y) { return x / std::gcd(x, y) * y; }

}  // namespace

namespace detail {

std::uint64_t count_points_enumerate(const CurveModel& c, std::uint64_t ell) {
    const std::uint64_t a1 = residue(c.a1, ell), a2 = residue(c.a2, ell), a3 = residue(c.a3, ell),
                        a4 = residue(c.a4, ell), a6 = residue(c.a6, ell);
    std::uint64_t count = 1;
    for (std::uint64_t x = 0; x < ell; ++x) {
        for (std::uint64_t y = 0; y < ell; ++y) {
            const std::uint64_t lhs = (y * y + a1 * x * y + a3 * y) % ell;
            const std::uint64_t rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell;
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

// Mestre: for ell > 229 the curve or its twist has a point whose order has a unique
// multiple in the Hasse interval. Points come from x-coordinates without square roots:
// (x f, f^2) lies on y^2 = x^3 + a f^2 x + b f^3, the curve itself when f = x^3+ax+b is a
// square and the twist otherwise.
std::int64_t trace_bsgs(std::uint64_t ell, std::uint64_t a, std::uint64_t b) {
    if (ell <= 229 || ell > 0xFFFFFFFFull) {
        throw InvalidArgument("trace_bsgs: prime out of range: " + std::to_string(ell));
    }
    const std::uint64_t radius = isqrt(4 * ell);
    const std::uint64_t lo = ell + 1 - radius;
    const std::uint64_t hi = ell + 1 + radius;
    std::uint64_t order_lcm[2] = {1, 1};  // [curve, twist]

    a %= ell;
    b %= ell;
    const Barrett red(ell);
    for (std::uint64_t x = 0; x < 4 * ell && x < 2000; ++x) {
        const std::uint64_t f = red.reduce(red.reduce(red.reduce(x * x) * x) + a * x + b);
        if (f == 0) continue;
        const int chi = jacobi(static_cast<std::int64_t>(f), ell);
        const std::uint64_t f2 = red.reduce(f * f);
        const JacobianCurve curve(red, red.reduce(a * f2));
        const JacobianCurve::Affine pt{red.reduce(x * f), f2};
        const std::uint64_t m = find_annihilator(curve, pt, lo, hi);
        if (m == 0) throw std::logic_error("trace_bsgs: no annihilator found");
        std::uint64_t& slot = order_lcm[chi == 1 ? 0 : 1];
        slot = lcm_u64(slot, exact_order(curve, pt, m));

        // Group orders N of the curve with order_lcm[0] | N and order_lcm[1] | 2ell+2-N.
        std::uint64_t found = 0, candidates = 0;
        const std::uint64_t step = order_lcm[0];
        for (std::uint64_t n = (lo + step - 1) / step * step; n <= hi && candidates < 2; n += step) {
            if ((2 * ell + 2 - n) % order_lcm[1] == 0) {
                found = n;
                ++candidates;
            }
        }
        if (candidates == 1) return static_cast<std::int64_t>(ell + 1) - static_cast<std::int64_t>(found);
    }
    throw std::logic_error("trace_bsgs: did not converge at " + std::to_string(ell));
}

}  // namespace detail

std::int64_t short_model_trace(std::uint64_t ell, std::uint64_t a, std::uint64_t b,
                               CountMethod method) {
    if (ell < 5) throw InvalidArgument("short_model_trace: needs ell >= 5");
    a %= ell;
    b %= ell;
    const bool use_bsgs = method == CountMethod::BabyStepGiantStep ||
                          (method == CountMethod::Auto && ell >= kBsgsCrossover);
    if (use_bsgs && ell > 229) return detail::trace_bsgs(ell, a, b);
    if (ell > kernels::kMaxModulus) {
        throw ComputationLimit("prime too large for naive counting: " + std::to_string(ell));
    }
    const auto chi = kernels::legendre_table(static_cast<std::uint32_t>(ell));
    return -kernels::cubic_character_sum(chi, static_cast<std::uint32_t>(ell),
                                         static_cast<std::uint32_t>(a),
                                         static_cast<std::uint32_t>(b));
}

}  // namespace paritykit
