#include "paritykit/congruence.hpp"

#include <atomic>
#include <map>
#include <thread>
#include <vector>

#include "paritykit/errors.hpp"

namespace paritykit {

namespace {

using Clock = std::chrono::steady_clock;

constexpr char kCaveat[] =
    "Verified certifies a_l(E1) = a_l(E2) mod p up to the Sturm bound, i.e. isomorphic "
    "semisimplifications of E1[p] and E2[p]; this is an isomorphism when the mod-p "
    "representation is irreducible, which is not checked. Primes bad for both curves, primes "
    "additive for one curve and good for the other, and p itself are not compared.";

struct CurveSide {
    CurveModel model;
    Int c4, c6;
    std::map<Int, LocalData> bad;
    Int conductor = 1;
};

CurveSide prepare(const CurveModel& c, const FactorOptions& options) {
    CurveSide side;
    side.model = minimal_model(c, options).first;
    const Invariants inv = invariants(side.model);
    side.c4 = inv.c4;
    side.c6 = inv.c6;
    for (LocalData& d : bad_local_data(side.model, options)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), d.ell.get_mpz_t(), d.cond_exp);
        side.conductor *= pe;
        side.bad.emplace(d.ell, std::move(d));
    }
    return side;
}

std::int64_t good_trace(const CurveSide& side, std::uint64_t ell, CountMethod method) {
    if (ell <= 3) return frobenius_trace(side.model, ell, method);
    const std::uint64_t a = residue(Int(-27 * side.c4), ell);
    const std::uint64_t b = residue(Int(-54 * side.c6), ell);
    return short_model_trace(ell, a, b, method);
}

enum class Outcome : std::uint8_t { Pending, Match, Mismatch, Skipped };

struct PrimeResult {
    Outcome outcome = Outcome::Pending;
    CongruenceWitness witness;
};

PrimeResult compare_at(const CurveSide& e1, const CurveSide& e2, std::uint64_t ell,
                       std::uint64_t p, CountMethod method) {
    PrimeResult out;
    if (ell == p) {
        out.outcome = Outcome::Skipped;
        return out;
    }
    const Int key = from_u64(ell);
    const auto it1 = e1.bad.find(key);
    const auto it2 = e2.bad.find(key);
    const bool good1 = it1 == e1.bad.end();
    const bool good2 = it2 == e2.bad.end();

    std::int64_t cmp1 = 0, cmp2 = 0;
    auto& w = out.witness;
    w.ell = ell;
    const auto level_raised = [ell](const LocalData& d) {
        return d.trace * static_cast<std::int64_t>(ell + 1);
    };
    if (good1 && good2) {
        w.trace1 = cmp1 = good_trace(e1, ell, method);
        w.trace2 = cmp2 = good_trace(e2, ell, method);
    } else if (good1 && is_multiplicative(it2->second.type)) {
        w.trace1 = cmp1 = good_trace(e1, ell, method);
        w.trace2 = it2->second.trace;
        cmp2 = level_raised(it2->second);
    } else if (good2 && is_multiplicative(it1->second.type)) {
        w.trace1 = it1->second.trace;
        cmp1 = level_raised(it1->second);
        w.trace2 = cmp2 = good_trace(e2, ell, method);
    } else {
        out.outcome = Outcome::Skipped;
        return out;
    }
    w.compared1 = cmp1;
    w.compared2 = cmp2;
    const auto diff = cmp1 - cmp2;
    out.outcome = diff % static_cast<std::int64_t>(p) == 0 ? Outcome::Match : Outcome::Mismatch;
    return out;
}

}  // namespace

std::string_view to_string(CongruenceStatus status) {
    switch (status) {
        case CongruenceStatus::Verified: return "verified";
        case CongruenceStatus::Failed: return "failed";
        case CongruenceStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Int sturm_bound(const Int& level) {
    if (level < 1) throw InvalidArgument("sturm_bound: level must be positive");
    Int index = 1;
    for (const auto& [q, e] : factor(level)) {
        Int qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e - 1);
        index *= qe * (q + 1);
    }
    Int bound;
    mpz_cdiv_q_ui(bound.get_mpz_t(), index.get_mpz_t(), 6);
    return bound;
}

CongruenceVerdict check_congruence(const CurveModel& c1, const CurveModel& c2, const Int& p,
                                   const CongruenceOptions& options) {
    if (p < 3 || !is_prime(p)) {
        throw InvalidArgument("check_congruence: p must be an odd prime, got " + to_string(p));
    }
    if (is_singular(c1) || is_singular(c2)) {
        throw InvalidArgument("check_congruence: singular input curve");
    }
    const auto start = Clock::now();
    const CurveSide e1 = prepare(c1, options.factor);
    const CurveSide e2 = prepare(c2, options.factor);

    CongruenceVerdict verdict;
    verdict.caveat = kCaveat;
    verdict.level = lcm(e1.conductor, e2.conductor);
    verdict.bound = sturm_bound(verdict.level);

    const std::uint64_t ceiling = counting_prime_ceiling();
    if (!fits_u64(verdict.bound) || to_u64(verdict.bound) > ceiling ||
        to_u64(verdict.bound) > 0xFFFFFFFFull) {
        verdict.status = CongruenceStatus::Inconclusive;
        verdict.caveat = "Sturm bound " + to_string(verdict.bound) +
                         " exceeds the point-counting ceiling " + std::to_string(ceiling) +
                         " (PARITYKIT_MAX_ELL); no traces were compared. " + verdict.caveat;
        return verdict;
    }

    const auto primes = primes_up_to(static_cast<std::uint32_t>(to_u64(verdict.bound)));
    const std::uint64_t pu = to_u64(p);
    std::vector<PrimeResult> results(primes.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_mismatch{primes.size()};
    std::atomic<bool> out_of_time{false};
    const bool timed = options.budget.count() > 0;
    const auto deadline = start + options.budget;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= primes.size() || i > first_mismatch.load() || out_of_time.load()) return;
            if (timed && Clock::now() > deadline) {
                out_of_time.store(true);
                return;
            }
            results[i] = compare_at(e1, e2, primes[i], pu, options.method);
            if (results[i].outcome == Outcome::Mismatch) {
                std::size_t cur = first_mismatch.load();
                while (i < cur && !first_mismatch.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Aggregate in prime order regardless of completion order.
    verdict.status = CongruenceStatus::Verified;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const PrimeResult& r = results[i];
        if (r.outcome == Outcome::Pending) {
            verdict.status = CongruenceStatus::Inconclusive;
            verdict.caveat = "time budget exhausted before l = " + std::to_string(primes[i]) +
                             " (Sturm bound " + to_string(verdict.bound) + "). " + kCaveat;
            break;
        }
        if (r.outcome == Outcome::Skipped) {
            ++verdict.skipped_primes;
            continue;
        }
        ++verdict.checked_primes;
        if (r.outcome == Outcome::Mismatch) {
            verdict.status = CongruenceStatus::Failed;
            verdict.witness = r.witness;
            break;
        }
    }
    return verdict;
}

}  // namespace paritykit
