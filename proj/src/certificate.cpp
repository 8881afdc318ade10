#include "gapcert/certificate.hpp"

#include <algorithm>
#include <charconv>
#include <json.hpp>

namespace gapcert {

using nlohmann::json;

std::string exact_decimal(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_exact_decimal(const std::string& s) {
    double x = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("malformed decimal '" + s + "'");
    return x;
}

namespace {

json num(double x) { return exact_decimal(x); }
json ival(const Interval& x) { return json::array({exact_decimal(x.lo), exact_decimal(x.hi)}); }

double get_num(const json& j) { return parse_exact_decimal(j.get<std::string>()); }
Interval get_ival(const json& j) { return Interval(get_num(j.at(0)), get_num(j.at(1))); }

}  // namespace

std::string certificate_to_json(const ProofCertificate& cert, bool include_timestamps) {
    const ProofConfig& c = cert.config;
    json j;
    j["config"] = {{"n_basis", c.n_basis},
                   {"n_s", c.n_s},
                   {"t0", ival(c.t0)},
                   {"quad_target", num(c.quad_target)},
                   {"kappa_box", ival(c.kappa_box)},
                   {"threshold_mu", num(c.threshold_mu)},
                   {"basis", c.basis == BasisKind::Plain ? "plain" : "enriched"},
                   {"refine_above", num(c.refine_above)},
                   {"max_depth", c.max_depth},
                   {"kappa_max", num(c.kappa_max)}};
    j["U"] = num(cert.U);
    j["L"] = num(cert.L);
    j["kappa3_zero"] = ival(cert.kappa3_zero);
    json roots = json::array();
    for (const Interval& r : cert.roots_at_zero) roots.push_back(ival(r));
    j["roots_at_zero"] = roots;
    json cover = json::array();
    for (const Interval& p : cert.positivity.s_cover) cover.push_back(ival(p));
    j["positivity"] = {{"kappa_box", ival(cert.positivity.kappa_box)},
                       {"pieces", cert.positivity.s_cover.size()},
                       {"min_inf", num(cert.positivity.min_inf)},
                       {"cover", cover}};
    j["mu_bar3_lower"] = ival(cert.mu_bar3_lower);
    json subs = json::array();
    for (const UpperBoundResult& r : cert.per_subinterval)
        subs.push_back({{"s_lo", num(r.s_interval.lo)},
                        {"s_hi", num(r.s_interval.hi)},
                        {"upper", num(r.upper)},
                        {"float_estimate", num(r.float_estimate)},
                        {"posdef", r.posdef_certified}});
    j["per_subinterval"] = subs;
    j["verdict"] = to_string(cert.verdict);
    if (cert.verdict == Verdict::Error) j["error"] = {{"stage", cert.error_stage}, {"message", cert.error_message}};
    json prov = {{"code_version", cert.code_version}};
    if (include_timestamps) {
        prov["started"] = cert.started;
        prov["finished"] = cert.finished;
    }
    j["provenance"] = prov;
    return j.dump(2);
}

ProofCertificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    ProofCertificate cert;
    const json& c = j.at("config");
    cert.config.n_basis = c.at("n_basis").get<int>();
    cert.config.n_s = c.at("n_s").get<int>();
    cert.config.t0 = get_ival(c.at("t0"));
    cert.config.quad_target = get_num(c.at("quad_target"));
    cert.config.kappa_box = get_ival(c.at("kappa_box"));
    cert.config.threshold_mu = get_num(c.at("threshold_mu"));
    cert.config.basis = c.at("basis").get<std::string>() == "plain" ? BasisKind::Plain : BasisKind::Enriched;
    cert.config.refine_above = get_num(c.at("refine_above"));
    cert.config.max_depth = c.at("max_depth").get<int>();
    cert.config.kappa_max = get_num(c.at("kappa_max"));
    cert.U = get_num(j.at("U"));
    cert.L = get_num(j.at("L"));
    cert.kappa3_zero = get_ival(j.at("kappa3_zero"));
    for (const json& r : j.at("roots_at_zero")) cert.roots_at_zero.push_back(get_ival(r));
    const json& pos = j.at("positivity");
    cert.positivity.kappa_box = get_ival(pos.at("kappa_box"));
    cert.positivity.min_inf = get_num(pos.at("min_inf"));
    for (const json& p : pos.at("cover")) cert.positivity.s_cover.push_back(get_ival(p));
    if (pos.at("pieces").get<std::size_t>() != cert.positivity.s_cover.size())
        throw DomainError("positivity piece count does not match the cover");
    cert.mu_bar3_lower = get_ival(j.at("mu_bar3_lower"));
    for (const json& r : j.at("per_subinterval")) {
        UpperBoundResult u;
        u.s_interval = Interval(get_num(r.at("s_lo")), get_num(r.at("s_hi")));
        u.upper = get_num(r.at("upper"));
        u.float_estimate = get_num(r.at("float_estimate"));
        u.posdef_certified = r.at("posdef").get<bool>();
        cert.per_subinterval.push_back(u);
    }
    cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("error")) {
        cert.error_stage = j["error"].value("stage", "");
        cert.error_message = j["error"].value("message", "");
    }
    const json& prov = j.at("provenance");
    cert.code_version = prov.value("code_version", "");
    cert.started = prov.value("started", "");
    cert.finished = prov.value("finished", "");
    return cert;
}

namespace {

// Pieces sorted by lower endpoint, consecutive pieces touching, union = [0,1].
bool covers_unit(std::vector<Interval> pieces) {
    if (pieces.empty()) return false;
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    if (pieces.front().lo > 0.0) return false;
    double reach = pieces.front().hi;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].lo > reach) return false;
        reach = std::max(reach, pieces[i].hi);
    }
    return reach >= 1.0;
}

}  // namespace

VerifyReport verify_certificate(const ProofCertificate& cert) {
    VerifyReport rep;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) {
            rep.ok = false;
            rep.failures.push_back(what);
        }
    };
    const ProofConfig& c = cert.config;
    check(cert.verdict != Verdict::Error, "verdict is Error at stage " + cert.error_stage);
    if (cert.verdict == Verdict::Error) return rep;

    std::vector<Interval> s_pieces;
    double max_upper = -std::numeric_limits<double>::infinity();
    bool all_posdef = true;
    for (const UpperBoundResult& r : cert.per_subinterval) {
        s_pieces.push_back(r.s_interval);
        max_upper = std::max(max_upper, r.upper);
        all_posdef = all_posdef && r.posdef_certified;
        check(r.upper >= r.float_estimate, "upper below float estimate on " + to_string(r.s_interval));
    }
    check(covers_unit(s_pieces), "upper-bound subintervals do not cover [0,1]");
    check(all_posdef, "a subinterval lacks a positive-definiteness certificate");
    check(max_upper == cert.U, "U is not the maximum of the subinterval uppers");

    check(cert.roots_at_zero.size() >= 3, "fewer than three roots recorded at s = 0");
    for (std::size_t i = 1; i < cert.roots_at_zero.size(); ++i)
        check(cert.roots_at_zero[i - 1].hi < cert.roots_at_zero[i].lo, "root enclosures at s = 0 overlap");
    if (cert.roots_at_zero.size() >= 3) check(cert.roots_at_zero[2] == cert.kappa3_zero, "kappa3_zero mismatch");
    check(cert.kappa3_zero.lo > c.kappa_box.hi, "kappa_3(0) not above the kappa box");

    check(cert.positivity.kappa_box == c.kappa_box, "positivity box differs from the configured box");
    check(cert.positivity.min_inf > 0.0, "positivity min_inf is not positive");
    check(covers_unit(cert.positivity.s_cover), "positivity cover does not cover [0,1]");

    check(cert.mu_bar3_lower == mu_bar_bound(c.kappa_box.hi), "mu_bar3_lower does not match the kappa box");
    check(cert.mu_bar3_lower.lo >= c.threshold_mu, "mu_bar3_lower is below the threshold");
    check(cert.L <= lower_transfer(Interval(c.threshold_mu), c.t0).lo, "L exceeds the transferred threshold");

    Verdict expect = (all_posdef && cert.U < cert.L) ? Verdict::Proven : Verdict::NotProven;
    check(expect == cert.verdict, "verdict inconsistent with U and L");
    return rep;
}

}  // namespace gapcert
