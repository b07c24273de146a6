#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paritykit/arith.hpp"
#include "paritykit/congruence.hpp"
#include "paritykit/local.hpp"
#include "paritykit/weierstrass.hpp"

namespace paritykit {

// Why a prime of Sigma \ {p} is, or is not, in Sigma0.
struct DropEvidence {
    Int ell;
    ReductionType type1 = ReductionType::Good;
    ReductionType type2 = ReductionType::Good;
    bool in_sigma0 = false;
    // Additive, potentially good reduction at p = 3: the mod-3 conductor may drop.
    bool undetermined = false;
    std::vector<std::string> reasons;
};

struct SigmaData {
    // p together with every bad prime of either curve, ascending.
    std::vector<Int> sigma;
    std::vector<Int> sigma0;
    // One entry per prime of sigma other than p, ascending.
    std::vector<DropEvidence> drop_evidence;
    std::vector<std::string> warnings;
};

struct TauRecord {
    Int ell;
    ReductionType type = ReductionType::Good;
    std::int64_t trace = 0;
    // Multiplicity of 1/ell as a root of the Euler factor mod p.
    unsigned tau = 0;
    unsigned delta_parity = 0;
    // Empty when tau == 0.
    std::string matched_case;
};

// Throws GateFailure unless c has good reduction at p with a_p == 0.
void require_supersingular(const CurveModel& c, const Int& p, std::string_view name = "curve");

SigmaData compute_sigma0(const CurveModel& c1, const CurveModel& c2, const Int& p,
                         const FactorOptions& options = {});

TauRecord tau(const LocalData& d, const Int& p);

std::vector<TauRecord> tau_records(const CurveModel& c, const std::vector<Int>& sigma0,
                                   const Int& p);

std::vector<Int> s_set(const CurveModel& c, const std::vector<Int>& sigma0, const Int& p);

struct DeducedRank {
    // Parity of the unknown rank, 0 even / 1 odd.
    unsigned parity = 0;
    std::optional<unsigned> exact;
    // Values in [0, bound] with the forced parity; empty without a bound.
    std::vector<unsigned> admissible;
};

// Rank of the other curve from r + |S_known| = r' + |S_other| mod 2.
DeducedRank deduce_rank(unsigned known_rank, std::size_t s_known, std::size_t s_other,
                        std::optional<unsigned> bound = std::nullopt);

struct CurveInfo {
    std::string label;
    CurveModel model;
    Int conductor;
};

struct ParityRequest {
    CurveModel e1, e2;
    std::string label1 = "E1", label2 = "E2";
    Int p;
    std::optional<unsigned> rank1, rank2;
    // Upper bounds used when the matching rank is unknown.
    std::optional<unsigned> rank1_bound, rank2_bound;
    bool assume_congruent = false;
    CongruenceOptions congruence;
    // Skips the congruence computation when supplied.
    std::optional<CongruenceVerdict> verdict;
};

struct ParityReport {
    std::pair<CurveInfo, CurveInfo> curves;
    Int p;
    CongruenceVerdict congruence;
    SigmaData sigma;
    std::vector<TauRecord> tau1, tau2;
    std::vector<Int> s1, s2;
    std::optional<unsigned> rank1, rank2;
    // Index (1 or 2) of the curve whose rank was deduced.
    unsigned deduced_for = 0;
    std::optional<DeducedRank> deduced;
    std::optional<bool> relation_holds;
    std::optional<unsigned> lhs_parity, rhs_parity;
    std::vector<std::string> hypotheses;
    std::vector<std::string> warnings;
};

ParityReport parity_relation(const ParityRequest& request);

}  // namespace paritykit
