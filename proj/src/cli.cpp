#include "paritykit/cli.hpp"

#include <atomic>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paritykit/congruence.hpp"
#include "paritykit/errors.hpp"
#include "paritykit/family.hpp"
#include "paritykit/io.hpp"
#include "paritykit/local.hpp"
#include "paritykit/parity.hpp"

namespace paritykit::cli {

namespace {

std::string join(const std::vector<Int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "}";
}

std::vector<CurveRecord> load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    return parse_curve_file(in);
}

// A curve literal, or a label looked up in the ranks file.
std::pair<std::string, CurveModel> resolve(const std::string& arg,
                                           const std::vector<CurveRecord>& records,
                                           const std::string& fallback) {
    if (!arg.empty() && arg.front() == '[') return {fallback, parse_curve(arg)};
    for (const auto& r : records)
        if (r.label == arg) return {r.label, r.model};
    throw InvalidArgument("unknown curve label '" + arg + "' (pass [a1,a2,a3,a4,a6] or --ranks-file)");
}

std::optional<unsigned> rank_from(const std::vector<CurveRecord>& records, const CurveModel& c) {
    for (const auto& r : records)
        if (r.model == c && r.rank) return r.rank;
    return std::nullopt;
}

Int parse_prime(const std::string& text) {
    const Int p = parse_int(text);
    if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + text);
    return p;
}

void print_verdict(std::ostream& out, const CongruenceVerdict& v) {
    out << "congruence: " << to_string(v.status) << " (level " << v.level << ", Sturm bound "
        << v.bound << ", " << v.checked_primes << " primes compared, " << v.skipped_primes
        << " skipped)\n";
    if (v.witness) {
        out << "  witness l = " << v.witness->ell << ": a_l = " << v.witness->trace1 << " vs "
            << v.witness->trace2 << "\n";
    }
}

void print_report(std::ostream& out, const ParityReport& r) {
    for (const CurveInfo* c : {&r.curves.first, &r.curves.second}) {
        out << c->label << " " << format_curve(c->model) << " conductor " << c->conductor << "\n";
    }
    out << "p = " << r.p << "\n";
    print_verdict(out, r.congruence);
    out << "Sigma  = " << join(r.sigma.sigma) << "\n";
    out << "Sigma0 = " << join(r.sigma.sigma0) << "\n";
    out << "S1 = " << join(r.s1) << "\n";
    out << "S2 = " << join(r.s2) << "\n";
    if (r.relation_holds) {
        out << "parity: r1 + |S1| = " << *r.rank1 << " + " << r.s1.size() << ", r2 + |S2| = "
            << *r.rank2 << " + " << r.s2.size() << " -> "
            << (*r.relation_holds ? "relation holds" : "RELATION VIOLATED") << "\n";
    }
    if (r.deduced) {
        out << "deduced rank of E" << r.deduced_for << ": " << (r.deduced->parity ? "odd" : "even");
        if (r.deduced->exact) out << ", exactly " << *r.deduced->exact;
        out << "\n";
    }
    out << "hypotheses:\n";
    for (const auto& h : r.hypotheses) out << "  - " << h << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

struct Common {
    unsigned jobs = 1;
    long budget_ms = 0;
    bool json = false;
};

CongruenceOptions congruence_options(const Common& c) {
    CongruenceOptions o;
    o.jobs = c.jobs;
    o.budget = std::chrono::milliseconds(c.budget_ms);
    return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank parity relations between congruent supersingular elliptic curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "paritykit 0.1.0");

    Common common;
    auto add_common = [&common](CLI::App* sub, bool jobs) {
        sub->add_flag("--json", common.json, "Emit JSON");
        if (jobs) {
            sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
            sub->add_option("--budget-ms", common.budget_ms,
                            "Time budget for the congruence check (0 = none)");
        }
    };

    std::string e1_arg, e2_arg, p_arg, ranks_file;
    std::optional<unsigned> rank1, rank2, rank1_bound, rank2_bound;
    bool assume = false;
    auto* analyze = app.add_subcommand("analyze", "Full parity analysis of a congruent pair");
    analyze->add_option("--e1", e1_arg, "First curve [a1,a2,a3,a4,a6] or label")->required();
    analyze->add_option("--e2", e2_arg, "Second curve")->required();
    analyze->add_option("-p", p_arg, "Odd prime")->required();
    analyze->add_option("--rank1", rank1, "Known rank of E1");
    analyze->add_option("--rank2", rank2, "Known rank of E2");
    analyze->add_option("--rank1-bound", rank1_bound, "Upper bound on the rank of E1");
    analyze->add_option("--rank2-bound", rank2_bound, "Upper bound on the rank of E2");
    analyze->add_flag("--assume-congruent", assume, "Proceed past a failed or inconclusive check");
    analyze->add_option("--ranks-file", ranks_file, "Curve file supplying labels and ranks");
    add_common(analyze, true);

    auto* congruent = app.add_subcommand("congruent", "Check a_l(E1) = a_l(E2) mod p to the Sturm bound");
    congruent->add_option("--e1", e1_arg, "First curve")->required();
    congruent->add_option("--e2", e2_arg, "Second curve")->required();
    congruent->add_option("-p", p_arg, "Odd prime")->required();
    add_common(congruent, true);

    std::string curve_arg, ell_arg;
    auto* local = app.add_subcommand("local-info", "Reduction data of a curve");
    local->add_option("--curve", curve_arg, "Curve [a1,a2,a3,a4,a6]")->required();
    local->add_option("--ell", ell_arg, "A single prime (default: all bad primes)");
    add_common(local, false);

    std::string d_arg, t_arg;
    auto* family = app.add_subcommand("family", "Member of the 3-congruent family of y^2 = x^3 - Dx");
    family->add_option("--D", d_arg, "Positive integer D")->required();
    family->add_option("--t", t_arg, "Parameter t")->required();

    std::string scan_file;
    auto* scan = app.add_subcommand("scan", "Find congruent supersingular pairs in a curve file");
    scan->add_option("--file", scan_file, "Curve file")->required();
    scan->add_option("-p", p_arg, "Odd prime")->required();
    add_common(scan, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*family) {
            out << format_curve(member(parse_int(d_arg), parse_int(t_arg))) << "\n";
            return kOk;
        }

        if (*local) {
            const CurveModel c = parse_curve(curve_arg);
            std::vector<LocalData> data;
            if (!ell_arg.empty()) {
                const Int ell = parse_int(ell_arg);
                if (ell < 2 || !is_prime(ell)) throw InvalidArgument("--ell must be prime");
                data.push_back(tate_local(c, ell));
            } else {
                data = bad_local_data(c);
            }
            if (common.json) {
                out << emit_local_info(c, data);
            } else {
                out << format_curve(c) << " conductor " << conductor(c) << "\n";
                for (const auto& d : data) {
                    out << "l = " << d.ell << ": " << to_string(d.type) << ", f = " << d.cond_exp
                        << ", v(disc) = " << d.v_disc << ", a_l = " << d.trace << ", "
                        << d.kodaira << "\n";
                }
            }
            return kOk;
        }

        const Int p = parse_prime(p_arg);

        if (*congruent) {
            const CurveModel c1 = parse_curve(e1_arg), c2 = parse_curve(e2_arg);
            const auto v = check_congruence(c1, c2, p, congruence_options(common));
            if (common.json) {
                out << emit_congruence(c1, c2, p, v);
            } else {
                print_verdict(out, v);
                out << v.caveat << "\n";
            }
            switch (v.status) {
                case CongruenceStatus::Verified: return kOk;
                case CongruenceStatus::Failed: return kViolated;
                case CongruenceStatus::Inconclusive: return kLimit;
            }
        }

        if (*analyze) {
            const auto records = ranks_file.empty() ? std::vector<CurveRecord>{} : load_file(ranks_file);
            ParityRequest req;
            std::tie(req.label1, req.e1) = resolve(e1_arg, records, "E1");
            std::tie(req.label2, req.e2) = resolve(e2_arg, records, "E2");
            req.p = p;
            req.rank1 = rank1 ? rank1 : rank_from(records, req.e1);
            req.rank2 = rank2 ? rank2 : rank_from(records, req.e2);
            req.rank1_bound = rank1_bound;
            req.rank2_bound = rank2_bound;
            req.assume_congruent = assume;
            req.congruence = congruence_options(common);

            require_supersingular(req.e1, p, req.label1);
            require_supersingular(req.e2, p, req.label2);
            req.verdict = check_congruence(req.e1, req.e2, p, req.congruence);
            if (!assume && req.verdict->status != CongruenceStatus::Verified) {
                print_verdict(err, *req.verdict);
                err << "refusing to continue without --assume-congruent\n";
                return req.verdict->status == CongruenceStatus::Failed ? kViolated : kLimit;
            }
            const ParityReport rep = parity_relation(req);
            if (common.json) {
                out << emit_report(rep);
            } else {
                print_report(out, rep);
            }
            return rep.relation_holds.value_or(true) ? kOk : kViolated;
        }

        if (*scan) {
            const auto records = load_file(scan_file);
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            std::vector<bool> supersingular(records.size());
            for (std::size_t i = 0; i < records.size(); ++i) {
                try {
                    require_supersingular(records[i].model, p);
                    supersingular[i] = true;
                } catch (const GateFailure&) {
                }
            }
            for (std::size_t i = 0; i < records.size(); ++i)
                for (std::size_t j = i + 1; j < records.size(); ++j)
                    if (supersingular[i] && supersingular[j]) pairs.emplace_back(i, j);

            CongruenceOptions copt = congruence_options(common);
            copt.jobs = 1;
            auto analyze_pair = [&](std::size_t k) -> std::optional<ParityReport> {
                const auto& a = records[pairs[k].first];
                const auto& b = records[pairs[k].second];
                const auto v = check_congruence(a.model, b.model, p, copt);
                if (v.status != CongruenceStatus::Verified) return std::nullopt;
                ParityRequest req;
                req.e1 = a.model;
                req.e2 = b.model;
                req.label1 = a.label;
                req.label2 = b.label;
                req.p = p;
                req.rank1 = a.rank;
                req.rank2 = b.rank;
                req.verdict = v;
                return parity_relation(req);
            };

            // Fixed-size pool; results are reported in pair order.
            std::vector<std::optional<ParityReport>> results(pairs.size());
            std::atomic<std::size_t> next{0};
            std::vector<std::future<void>> workers;
            for (unsigned w = 0; w < std::max(1u, common.jobs); ++w) {
                workers.push_back(std::async(std::launch::async, [&] {
                    for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) results[k] = analyze_pair(k);
                }));
            }
            for (auto& w : workers) w.get();

            bool violated = false;
            nlohmann::json reports = nlohmann::json::array();
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (!results[k]) continue;
                const ParityReport& r = *results[k];
                violated |= r.relation_holds == false;
                if (common.json) {
                    reports.push_back(nlohmann::json::parse(emit_report(r)));
                } else {
                    out << r.curves.first.label << " ~ " << r.curves.second.label << " mod " << p
                        << ": Sigma0 = " << join(r.sigma.sigma0) << ", S1 = " << join(r.s1)
                        << ", S2 = " << join(r.s2);
                    if (r.relation_holds) out << (*r.relation_holds ? ", relation holds" : ", RELATION VIOLATED");
                    out << "\n";
                }
            }
            if (common.json) {
                out << nlohmann::json{{"schema_version", kReportSchemaVersion},
                                      {"p", to_i64(p)},
                                      {"pairs_checked", pairs.size()},
                                      {"reports", reports}}
                           .dump(2)
                    << "\n";
            } else {
                out << pairs.size() << " supersingular pairs checked\n";
            }
            return violated ? kViolated : kOk;
        }
    } catch (const ComputationLimit& e) {
        err << "error: " << e.what() << "\n";
        return kLimit;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace paritykit::cli
