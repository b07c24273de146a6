#include "paritykit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "paritykit/errors.hpp"

namespace paritykit {

static_assert(sizeof(unsigned long) == 8, "gmp ulong helpers assume LP64");

namespace {

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

bool probable_prime(const Int& m) {
    if (fits_u64(m)) return is_prime_u64(to_u64(m));
    return mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
}

using Clock = std::chrono::steady_clock;

// Brent's variant of Pollard rho. Returns a nontrivial divisor of composite m.
Int rho_divisor(const Int& m, Clock::time_point deadline) {
    if (mpz_even_p(m.get_mpz_t())) return Int(2);
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        auto step = [&](Int& v) {
            v = v * v + c;
            v %= m;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                const unsigned long batch = std::min<unsigned long>(128, r - k);
                for (unsigned long i = 0; i < batch; ++i) {
                    step(y);
                    Int diff = x - y;
                    q = (q * abs(diff)) % m;
                }
                g = gcd(q, m);
                k += batch;
                if (Clock::now() > deadline) {
                    throw ComputationLimit("factorization incomplete: time budget exhausted on " +
                                           to_string(m));
                }
            }
            r *= 2;
        } while (g == 1);
        if (g == m) {
            // Batch overshot; replay one step at a time.
            do {
                step(ys);
                g = gcd(Int(abs(x - ys)), m);
            } while (g == 1);
        }
        if (g != m) return g;
    }
}

void split(const Int& m, unsigned multiplicity, std::map<Int, unsigned>& out,
           Clock::time_point deadline) {
    if (m == 1) return;
    if (probable_prime(m)) {
        out[m] += multiplicity;
        return;
    }
    // Peel perfect powers before rho.
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0 && root > 1) {
            split(root, multiplicity * static_cast<unsigned>(k), out, deadline);
            return;
        }
    }
    const Int d = rho_divisor(m, deadline);
    split(d, multiplicity, out, deadline);
    split(Int(m / d), multiplicity, out, deadline);
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    if (m <= 0xFFFFFFFFull) return (a % m) * (b % m) % m;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

int jacobi(std::int64_t a, std::uint64_t n) {
    if (n == 0 || n % 2 == 0) throw InvalidArgument("jacobi: modulus must be odd and positive");
    std::uint64_t x = a >= 0 ? static_cast<std::uint64_t>(a) % n
                             : (n - (static_cast<std::uint64_t>(-(a + 1)) % n) - 1) % n;
    int sign = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::uint64_t r = n % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

int jacobi(const Int& a, const Int& n) {
    if (n <= 0 || mpz_even_p(n.get_mpz_t())) {
        throw InvalidArgument("jacobi: modulus must be odd and positive");
    }
    Int x = mod(a, n);
    Int m = n;
    int sign = 1;
    while (x != 0) {
        const unsigned long twos = mpz_scan1(x.get_mpz_t(), 0);
        if (twos != 0) {
            x >>= twos;
            const unsigned long r = mpz_fdiv_ui(m.get_mpz_t(), 8);
            if ((twos & 1) && (r == 3 || r == 5)) sign = -sign;
        }
        swap(x, m);
        if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) sign = -sign;
        x %= m;
    }
    return m == 1 ? sign : 0;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // These twelve bases are a proven deterministic set below 3.3 * 10^24.
    for (std::uint64_t a : small) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

bool is_prime(const Int& n) {
    if (n < 0) throw InvalidArgument("is_prime: input must be non-negative");
    if (!fits_u64(n)) throw ComputationLimit("is_prime: input out of supported range (>= 2^64)");
    return is_prime_u64(to_u64(n));
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

Factorization factor(const Int& n, const FactorOptions& options) {
    if (n == 0) throw InvalidArgument("factor: cannot factor 0");
    const auto deadline = Clock::now() + options.budget;
    Int m = abs(n);
    std::map<Int, unsigned> found;
    for (std::uint32_t p : trial_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            found[Int(p)] += e;
        }
    }
    if (m != 1) {
        const Int trial_square = Int(kTrialLimit) * kTrialLimit;
        if (m < trial_square) {
            found[m] += 1;
        } else {
            split(m, 1, found, deadline);
        }
    }
    Factorization out;
    out.reserve(found.size());
    for (auto& [p, e] : found) out.push_back({p, e});
    return out;
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw InvalidArgument("valuation: undefined for 0");
    if (p < 2) throw InvalidArgument("valuation: p must be prime");
    Int m = n;
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

Int recompose(const Factorization& f) {
    Int out = 1;
    for (const auto& [p, e] : f) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        out *= pe;
    }
    return out;
}

std::uint64_t residue(const Int& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0) r += abs(m);
    return r;
}

Int inverse_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw InvalidArgument("inverse_mod: " + to_string(a) + " is not invertible mod " +
                              to_string(m));
    }
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool fits_i64(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }
bool fits_u64(const Int& a) { return a >= 0 && mpz_fits_ulong_p(a.get_mpz_t()) != 0; }
std::int64_t to_i64(const Int& a) { return mpz_get_si(a.get_mpz_t()); }
std::uint64_t to_u64(const Int& a) { return mpz_get_ui(a.get_mpz_t()); }

Int from_u64(std::uint64_t v) {
    Int r;
    mpz_set_ui(r.get_mpz_t(), v);
    return r;
}

Int from_i64(std::int64_t v) {
    Int r;
    mpz_set_si(r.get_mpz_t(), v);
    return r;
}

std::string to_string(const Int& a) { return a.get_str(10); }

Int parse_int(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw ParseError("not an integer: '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
            throw ParseError("not an integer: '" + text + "'");
        }
    }
    Int r;
    const std::string digits = text[0] == '+' ? text.substr(1) : text;
    r.set_str(digits, 10);
    return r;
}

}  // namespace paritykit
