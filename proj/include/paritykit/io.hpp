#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "paritykit/congruence.hpp"
#include "paritykit/local.hpp"
#include "paritykit/parity.hpp"
#include "paritykit/weierstrass.hpp"

namespace paritykit {

inline constexpr int kReportSchemaVersion = 1;

struct CurveRecord {
    std::string label;
    CurveModel model;
    std::optional<Int> conductor;
    std::optional<unsigned> rank;

    bool operator==(const CurveRecord&) const = default;
};

// Lines "label conductor [a1,a2,a3,a4,a6] rank"; "?" marks an unknown conductor or rank,
// "#" starts a comment. A stated conductor is checked against the computed one.
std::vector<CurveRecord> parse_curve_file(std::istream& in, const FactorOptions& options = {});

std::string emit_curve_file(const std::vector<CurveRecord>& records);

// Deterministic JSON: sorted keys, primes ascending, integers beyond 2^53 as strings.
std::string emit_report(const ParityReport& report);
std::string emit_congruence(const CurveModel& c1, const CurveModel& c2, const Int& p,
                            const CongruenceVerdict& verdict);
std::string emit_local_info(const CurveModel& c, const std::vector<LocalData>& data);

}  // namespace paritykit
