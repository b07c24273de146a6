#include "paritykit/parity.hpp"

#include <algorithm>
#include <map>

#include "paritykit/errors.hpp"

namespace paritykit {

namespace {

void require_odd_prime(const Int& p, const char* where) {
    if (p < 3 || !is_prime(p)) {
        throw InvalidArgument(std::string(where) + ": p must be an odd prime, got " + to_string(p));
    }
}

struct LocalSide {
    CurveModel model;
    Invariants inv;
    std::map<Int, LocalData> bad;
};

LocalSide local_side(const CurveModel& c, const FactorOptions& options) {
    LocalSide s;
    s.model = minimal_model(c, options).first;
    s.inv = invariants(s.model);
    for (LocalData& d : bad_local_data(s.model, options)) s.bad.emplace(d.ell, std::move(d));
    return s;
}

// v_ell(j) >= 0, i.e. potentially good reduction.
bool potentially_good(const Invariants& inv, const Int& ell) {
    if (inv.c4 == 0) return true;
    return 3 * valuation(inv.c4, ell) >= valuation(inv.disc, ell);
}

std::string case_label(ReductionType type, unsigned t) {
    if (t == 0) return "";
    switch (type) {
        case ReductionType::Good:
            return t == 2 ? "good: double root (l = 1, a_l = 2 mod p)"
                          : "good: a_l = l + 1, l != 1 mod p";
        case ReductionType::SplitMultiplicative: return "split multiplicative: l = 1 mod p";
        case ReductionType::NonsplitMultiplicative: return "nonsplit multiplicative: l = -1 mod p";
        case ReductionType::Additive: break;
    }
    return "";
}

std::size_t count(const std::vector<Int>& v) { return v.size(); }

}  // namespace

void require_supersingular(const CurveModel& c, const Int& p, std::string_view name) {
    const LocalData d = tate_local(c, p);
    if (d.type != ReductionType::Good) {
        throw GateFailure(std::string(name) + " " + format_curve(c) + " has bad reduction at p = " +
                          to_string(p));
    }
    if (d.trace != 0) {
        throw GateFailure(std::string(name) + " " + format_curve(c) + " is not supersingular at p = " +
                          to_string(p) + " with a_p = 0 (a_p = " + std::to_string(d.trace) + ")");
    }
}

SigmaData compute_sigma0(const CurveModel& c1, const CurveModel& c2, const Int& p,
                         const FactorOptions& options) {
    require_odd_prime(p, "compute_sigma0");
    require_supersingular(c1, p, "E1");
    require_supersingular(c2, p, "E2");
    const LocalSide e[2] = {local_side(c1, options), local_side(c2, options)};

    std::vector<Int> primes{p};
    for (const auto& side : e)
        for (const auto& [ell, d] : side.bad) primes.push_back(ell);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    SigmaData out;
    out.sigma = primes;
    for (const Int& ell : primes) {
        if (ell == p) continue;
        DropEvidence ev;
        ev.ell = ell;
        const LocalData* d[2] = {nullptr, nullptr};
        for (int i = 0; i < 2; ++i) {
            const auto it = e[i].bad.find(ell);
            if (it != e[i].bad.end()) d[i] = &it->second;
        }
        ev.type1 = d[0] ? d[0]->type : ReductionType::Good;
        ev.type2 = d[1] ? d[1]->type : ReductionType::Good;

        bool mult_drop[2] = {false, false};
        for (int i = 0; i < 2; ++i) {
            const std::string name = "E" + std::to_string(i + 1);
            if (!d[i]) continue;
            if (!d[1 - i]) {
                ev.in_sigma0 = true;
                ev.reasons.push_back(name + " bad, E" + std::to_string(2 - i) +
                                     " good: residual representation unramified");
                continue;
            }
            if (is_multiplicative(d[i]->type)) {
                mult_drop[i] = d[i]->v_disc % to_u64(p) == 0;
                if (mult_drop[i]) {
                    ev.in_sigma0 = true;
                    ev.reasons.push_back(name + " multiplicative with p | v(disc) = " +
                                         std::to_string(d[i]->v_disc));
                }
            } else if (p == 3 && potentially_good(e[i].inv, ell)) {
                ev.undetermined = true;
                ev.reasons.push_back(name +
                                     " additive, potentially good at p = 3: conductor drop undetermined");
            }
        }
        if (d[0] && d[1] && is_multiplicative(d[0]->type) && is_multiplicative(d[1]->type) &&
            mult_drop[0] != mult_drop[1]) {
            out.warnings.push_back("inconsistent drop at " + to_string(ell) +
                                   ": p | v(disc) holds for one curve only");
        }
        if (ev.in_sigma0) {
            ev.undetermined = false;
            out.sigma0.push_back(ell);
        }
        out.drop_evidence.push_back(std::move(ev));
    }
    return out;
}

TauRecord tau(const LocalData& d, const Int& p) {
    require_odd_prime(p, "tau");
    if (d.ell == p) throw InvalidArgument("tau: ell must differ from p");
    const std::uint64_t pu = to_u64(p);
    std::vector<std::uint64_t> poly;
    for (const Int& c : euler_poly(d).coeffs) poly.push_back(residue(c, pu));
    const std::uint64_t root = powmod(residue(d.ell, pu), pu - 2, pu);

    TauRecord out;
    out.ell = d.ell;
    out.type = d.type;
    out.trace = d.trace;
    // Synthetic division by (X - root) while the remainder vanishes.
    while (poly.size() > 1) {
        std::vector<std::uint64_t> quotient(poly.size() - 1);
        std::uint64_t acc = 0;
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = (mulmod(acc, root, pu) + poly[i]) % pu;
            if (i > 0) quotient[i - 1] = acc;
        }
        if (acc != 0) break;
        ++out.tau;
        poly = std::move(quotient);
    }
    out.delta_parity = out.tau % 2;
    out.matched_case = case_label(d.type, out.tau);
    return out;
}

std::vector<TauRecord> tau_records(const CurveModel& c, const std::vector<Int>& sigma0,
                                   const Int& p) {
    std::vector<TauRecord> out;
    for (const Int& ell : sigma0) out.push_back(tau(tate_local(c, ell), p));
    return out;
}

std::vector<Int> s_set(const CurveModel& c, const std::vector<Int>& sigma0, const Int& p) {
    std::vector<Int> out;
    for (const TauRecord& r : tau_records(c, sigma0, p))
        if (r.delta_parity == 1) out.push_back(r.ell);
    return out;
}

DeducedRank deduce_rank(unsigned known_rank, std::size_t s_known, std::size_t s_other,
                        std::optional<unsigned> bound) {
    DeducedRank out;
    out.parity = static_cast<unsigned>((known_rank + s_known + s_other) % 2);
    if (!bound) return out;
    for (unsigned r = out.parity; r <= *bound; r += 2) out.admissible.push_back(r);
    if (out.admissible.empty()) {
        throw InvalidArgument("parity contradicts bound: forced parity " +
                              std::string(out.parity ? "odd" : "even") + ", bound " +
                              std::to_string(*bound));
    }
    if (out.admissible.size() == 1) out.exact = out.admissible.front();
    return out;
}

ParityReport parity_relation(const ParityRequest& req) {
    require_odd_prime(req.p, "parity_relation");
    require_supersingular(req.e1, req.p, req.label1);
    require_supersingular(req.e2, req.p, req.label2);

    ParityReport rep;
    rep.p = req.p;
    rep.curves.first = {req.label1, req.e1, conductor(req.e1, req.congruence.factor)};
    rep.curves.second = {req.label2, req.e2, conductor(req.e2, req.congruence.factor)};

    rep.congruence = req.verdict ? *req.verdict
                                 : check_congruence(req.e1, req.e2, req.p, req.congruence);
    const std::string status(to_string(rep.congruence.status));
    switch (rep.congruence.status) {
        case CongruenceStatus::Verified:
            rep.hypotheses.push_back(
                "E1[p] = E2[p]: traces verified up to the Sturm bound " +
                to_string(rep.congruence.bound) +
                "; semisimplifications agree, irreducibility not checked");
            break;
        case CongruenceStatus::Failed:
        case CongruenceStatus::Inconclusive:
            if (!req.assume_congruent) {
                if (rep.congruence.status == CongruenceStatus::Inconclusive) {
                    throw ComputationLimit("congruence inconclusive: " + rep.congruence.caveat);
                }
                const auto& w = *rep.congruence.witness;
                throw GateFailure("curves are not congruent mod " + to_string(req.p) + ": l = " +
                                  std::to_string(w.ell) + ", a_l = " + std::to_string(w.trace1) +
                                  " vs " + std::to_string(w.trace2));
            }
            rep.hypotheses.push_back("E1[p] = E2[p] assumed by the user (congruence check: " +
                                     status + ")");
            break;
    }
    rep.hypotheses.push_back("mu+(E1) = mu-(E1) = mu+(E2) = mu-(E2) = 0 assumed");

    rep.sigma = compute_sigma0(req.e1, req.e2, req.p, req.congruence.factor);
    rep.tau1 = tau_records(req.e1, rep.sigma.sigma0, req.p);
    rep.tau2 = tau_records(req.e2, rep.sigma.sigma0, req.p);
    for (const auto& r : rep.tau1)
        if (r.delta_parity) rep.s1.push_back(r.ell);
    for (const auto& r : rep.tau2)
        if (r.delta_parity) rep.s2.push_back(r.ell);
    rep.warnings = rep.sigma.warnings;
    for (const auto& ev : rep.sigma.drop_evidence) {
        if (ev.undetermined) {
            rep.warnings.push_back("Sigma0 membership of " + to_string(ev.ell) +
                                   " undetermined (additive, p = 3); excluded");
        }
    }

    rep.rank1 = req.rank1;
    rep.rank2 = req.rank2;
    if (req.rank1) rep.lhs_parity = (*req.rank1 + count(rep.s1)) % 2;
    if (req.rank2) rep.rhs_parity = (*req.rank2 + count(rep.s2)) % 2;
    if (req.rank1 && req.rank2) {
        rep.relation_holds = *rep.lhs_parity == *rep.rhs_parity;
    } else if (req.rank1) {
        rep.deduced_for = 2;
        rep.deduced = deduce_rank(*req.rank1, rep.s1.size(), rep.s2.size(), req.rank2_bound);
    } else if (req.rank2) {
        rep.deduced_for = 1;
        rep.deduced = deduce_rank(*req.rank2, rep.s2.size(), rep.s1.size(), req.rank1_bound);
    }
    return rep;
}

}  // namespace paritykit
