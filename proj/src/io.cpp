#include "paritykit/io.hpp"

#include <sstream>

#include <json.hpp>

#include "paritykit/errors.hpp"

namespace paritykit {

namespace {

using nlohmann::json;

const Int kSafeInteger = Int(1) << 53;

json number(const Int& v) {
    if (abs(v) < kSafeInteger) return json(to_i64(v));
    return json(to_string(v));
}

json number_list(const std::vector<Int>& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(number(x));
    return out;
}

json coefficients(const CurveModel& c) {
    return json::array({number(c.a1), number(c.a2), number(c.a3), number(c.a4), number(c.a6)});
}

json optional_unsigned(const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); }

json verdict_json(const CongruenceVerdict& v) {
    json out = {{"status", std::string(to_string(v.status))},
                {"level", number(v.level)},
                {"bound", number(v.bound)},
                {"checked_primes", v.checked_primes},
                {"skipped_primes", v.skipped_primes},
                {"caveat", v.caveat}};
    if (v.witness) {
        out["witness"] = {{"ell", v.witness->ell},
                          {"a_ell_1", v.witness->trace1},
                          {"a_ell_2", v.witness->trace2},
                          {"compared_1", v.witness->compared1},
                          {"compared_2", v.witness->compared2}};
    }
    return out;
}

json tau_json(const std::vector<TauRecord>& records) {
    json out = json::object();
    for (const auto& r : records) {
        out[to_string(r.ell)] = {{"tau", r.tau},
                                 {"parity", r.delta_parity},
                                 {"type", std::string(to_string(r.type))},
                                 {"a_ell", r.trace},
                                 {"case", r.matched_case.empty() ? json(nullptr) : json(r.matched_case)}};
    }
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void fail(std::size_t line, const std::string& field, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": field '" + field + "': " + what);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

}  // namespace

std::vector<CurveRecord> parse_curve_file(std::istream& in, const FactorOptions& options) {
    std::vector<CurveRecord> out;
    std::string raw;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        const std::string line = raw.substr(0, raw.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        // The coefficient list may contain spaces, so cut it out by its brackets.
        const auto open = line.find('[');
        const auto close = line.find(']', open == std::string::npos ? 0 : open);
        if (open == std::string::npos || close == std::string::npos) {
            fail(lineno, "coefficients", "expected [a1,a2,a3,a4,a6]");
        }
        const auto head = split_ws(line.substr(0, open));
        const auto tail = split_ws(line.substr(close + 1));
        if (head.size() != 2) fail(lineno, "label", "expected 'label conductor' before the coefficients");
        if (tail.size() != 1) fail(lineno, "rank", "expected a single rank or '?' after the coefficients");

        CurveRecord rec;
        rec.label = head[0];
        try {
            rec.model = parse_curve(line.substr(open, close - open + 1));
        } catch (const Error& e) {
            fail(lineno, "coefficients", e.what());
        }
        if (is_singular(rec.model)) fail(lineno, "coefficients", "singular curve");
        if (head[1] != "?") {
            try {
                rec.conductor = parse_int(head[1]);
            } catch (const Error& e) {
                fail(lineno, "conductor", e.what());
            }
            if (*rec.conductor < 1) fail(lineno, "conductor", "must be positive");
        }
        if (tail[0] != "?") {
            const std::string& r = tail[0];
            if (r.empty() || r.size() > 4 || r.find_first_not_of("0123456789") != std::string::npos) {
                fail(lineno, "rank", "expected a non-negative integer or '?', got '" + r + "'");
            }
            rec.rank = static_cast<unsigned>(std::stoul(r));
        }
        if (rec.conductor) {
            const Int n = conductor(rec.model, options);
            if (n != *rec.conductor) {
                throw ParseError("curve " + rec.label + ": stated conductor " +
                                 to_string(*rec.conductor) + " but computed " + to_string(n));
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string emit_curve_file(const std::vector<CurveRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        out << r.label << ' ' << (r.conductor ? to_string(*r.conductor) : "?") << ' '
            << format_curve(r.model) << ' ' << (r.rank ? std::to_string(*r.rank) : "?") << '\n';
    }
    return out.str();
}

std::string emit_report(const ParityReport& r) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    json curves = json::array();
    for (const CurveInfo* c : {&r.curves.first, &r.curves.second}) {
        curves.push_back({{"label", c->label},
                          {"coefficients", coefficients(c->model)},
                          {"conductor", number(c->conductor)}});
    }
    j["curves"] = curves;
    j["p"] = number(r.p);
    j["congruence"] = verdict_json(r.congruence);
    j["sigma"] = number_list(r.sigma.sigma);
    j["sigma0"] = number_list(r.sigma.sigma0);

    json evidence = json::object();
    for (const auto& ev : r.sigma.drop_evidence) {
        evidence[to_string(ev.ell)] = {
            {"in_sigma0", ev.in_sigma0},
            {"undetermined", ev.undetermined},
            {"types", {std::string(to_string(ev.type1)), std::string(to_string(ev.type2))}},
            {"reasons", ev.reasons}};
    }
    j["drop_evidence"] = evidence;
    j["tau"] = {{"e1", tau_json(r.tau1)}, {"e2", tau_json(r.tau2)}};
    j["s1"] = number_list(r.s1);
    j["s2"] = number_list(r.s2);

    json ranks = {{"known", {{"e1", optional_unsigned(r.rank1)}, {"e2", optional_unsigned(r.rank2)}}},
                  {"deduced", nullptr}};
    if (r.deduced) {
        ranks["deduced"] = {{"curve", "e" + std::to_string(r.deduced_for)},
                            {"parity", r.deduced->parity ? "odd" : "even"},
                            {"exact", optional_unsigned(r.deduced->exact)},
                            {"admissible", r.deduced->admissible}};
    }
    j["ranks"] = ranks;
    j["relation"] = {{"holds", r.relation_holds ? json(*r.relation_holds) : json(nullptr)},
                     {"lhs_parity", optional_unsigned(r.lhs_parity)},
                     {"rhs_parity", optional_unsigned(r.rhs_parity)}};
    j["hypotheses"] = r.hypotheses;
    j["warnings"] = r.warnings;
    return dump(j);
}

std::string emit_congruence(const CurveModel& c1, const CurveModel& c2, const Int& p,
                            const CongruenceVerdict& verdict) {
    json j = {{"schema_version", kReportSchemaVersion},
              {"curves", json::array({coefficients(c1), coefficients(c2)})},
              {"p", number(p)},
              {"congruence", verdict_json(verdict)}};
    return dump(j);
}

std::string emit_local_info(const CurveModel& c, const std::vector<LocalData>& data) {
    json local = json::array();
    for (const auto& d : data) {
        local.push_back({{"ell", number(d.ell)},
                         {"type", std::string(to_string(d.type))},
                         {"conductor_exponent", d.cond_exp},
                         {"v_disc", d.v_disc},
                         {"a_ell", d.trace},
                         {"kodaira", d.kodaira}});
    }
    json j = {{"schema_version", kReportSchemaVersion},
              {"curve", coefficients(c)},
              {"conductor", number(conductor(c))},
              {"local", local}};
    return dump(j);
}

}  // namespace paritykit
