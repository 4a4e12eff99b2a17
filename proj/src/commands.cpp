#include "ovrank/commands.hpp"

#include "ovrank/asymptotics.hpp"
#include "ovrank/bounds.hpp"
#include "ovrank/table_cache.hpp"
#include "ovrank/verifier.hpp"

#include <omp.h>

#include <chrono>
#include <stdexcept>

namespace ovrank {

namespace {

using clock_type = std::chrono::steady_clock;

Report start(const RunConfig& config, const std::string& command, json inputs) {
    config.validate();
    if (config.jobs > 0) omp_set_num_threads(config.jobs);
    Report r;
    r.command = command;
    r.inputs = std::move(inputs);
    r.config = config.to_json();
    r.environment = environment_fingerprint();
    return r;
}

void finish(Report& r, clock_type::time_point t0) {
    const auto ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    r.timings["elapsed_ms"] = ms;
}

json check_json(const Check& c) {
    json j;
    j["lhs"] = decimal(c.lhs);
    j["rhs"] = decimal(c.rhs);
    j["relative_margin"] = decimal(c.relative_margin, 12);
    j["verdict"] = to_string(c.verdict);
    return j;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

RankClassTable table_for(const RunConfig& config, int c, int n_max) {
    if (config.cache_path) {
        std::filesystem::create_directories(*config.cache_path);
        return cached_table(*config.cache_path / ("table-c" + std::to_string(c) + ".txt"), n_max, c);
    }
    return rank_class_table(n_max, c);
}

Report cmd_count(const RunConfig& config, int n, std::optional<int> c, std::optional<int> a) {
    const auto t0 = clock_type::now();
    json in;
    in["n"] = n;
    in["c"] = c ? json(*c) : json(nullptr);
    in["a"] = a ? json(*a) : json(nullptr);
    Report r = start(config, "count", in);
    require(n >= 0, "count: n must be >= 0");
    require(n <= config.n_max, "count: n = " + std::to_string(n) + " exceeds n_max = " + std::to_string(config.n_max));
    require(!a || c, "count: --a needs --c");

    if (!c) {
        const auto p = pbar_series(n);
        json rec;
        rec["kind"] = "pbar";
        rec["n"] = n;
        rec["value"] = p[n].get_str();
        r.records.push_back(rec);
    } else {
        require(*c >= 2, "count: c must be >= 2");
        const auto table = table_for(config, *c, config.cache_path ? config.n_max : n);
        if (a) {
            require(*a >= 0 && *a < *c, "count: need 0 <= a < c");
            json rec;
            rec["kind"] = "nbar";
            rec["n"] = n;
            rec["c"] = *c;
            rec["a"] = *a;
            rec["value"] = table.at(n, *a).get_str();
            r.records.push_back(rec);
        } else {
            json rec;
            rec["kind"] = "row";
            rec["n"] = n;
            rec["c"] = *c;
            json row = json::array();
            for (const auto& v : table.row(n)) row.push_back(v.get_str());
            rec["counts"] = row;
            rec["pbar"] = table.row_sum(n).get_str();
            r.records.push_back(rec);
        }
    }
    finish(r, t0);
    return r;
}

Report cmd_asymptotic(const RunConfig& config, int a, int c, int n) {
    const auto t0 = clock_type::now();
    Report r = start(config, "asymptotic", json{{"a", a}, {"c", c}, {"n", n}});
    require(c >= 3, "asymptotic: c must be >= 3");
    require(a >= 0 && a < c, "asymptotic: need 0 <= a < c");
    require(n >= 2, "asymptotic: n must be >= 2");
    const int prec = config.precision_bits;
    AsymptoticOptions opts;
    opts.precision_bits = prec;

    const bool exact_available = n <= config.n_max;
    std::optional<RankClassTable> table;
    if (exact_available) table = table_for(config, c, config.cache_path ? config.n_max : n);

    // A(a/c; n)
    {
        json rec;
        rec["kind"] = "A";
        HPReal approx(prec);
        if (a == 0) {
            approx = engel_pbar(n, prec).estimate;
            rec["asymptotic"] = decimal(approx);
        } else if (gcd_long(a, c) == 1) {
            const auto est = a_asymptotic(a, c, n, opts);
            approx = est.value;
            rec["asymptotic"] = decimal(approx);
            rec["imag_residual"] = decimal(est.imag_residual, 6);
            rec["dominant_term"] = decimal(est.dominant, 12);
            rec["k_terms"] = est.k_terms.size();
        } else {
            rec["asymptotic"] = "unavailable (gcd(a,c) > 1)";
        }
        if (table) {
            const HPComplex ex = a_exact(a, c, n, *table, prec);
            rec["exact"] = decimal(ex.re);
            if (rec["asymptotic"].get<std::string>().rfind("unavailable", 0) != 0 && ex.re.sign() != 0)
                rec["relative_deviation"] = decimal(abs(approx - ex.re) / abs(ex.re), 8);
        } else {
            rec["exact"] = "unavailable";
        }
        r.records.push_back(rec);
    }

    // N-bar(a,c,n) and the ratio envelope
    {
        json rec;
        rec["kind"] = "nbar";
        try {
            const auto est = nbar_asymptotic(a, c, n, opts);
            rec["asymptotic"] = decimal(est.value);
            rec["imag_residual"] = decimal(est.imag_residual, 6);
        } catch (const std::domain_error& e) {
            rec["asymptotic"] = std::string("unavailable (") + e.what() + ")";
        }
        if (table) {
            const BigCount& exact = table->at(n, a);
            const BigCount p = table->row_sum(n);
            rec["exact"] = exact.get_str();
            const HPReal P(p, prec);
            const HPReal dev = abs(HPReal(exact, prec) - P / HPReal(static_cast<long>(c), prec)) / P;
            const Check env = strictly_less(dev, r_ratio(c, n, prec), config.margin_policy);
            rec["ratio_deviation"] = decimal(dev, 12);
            rec["ratio_envelope"] = check_json(env);
            if (env.verdict != Verdict::pass) r.status = Status::fail;
        } else {
            rec["exact"] = "unavailable";
        }
        r.records.push_back(rec);
    }
    r.summary["exact_available"] = exact_available;
    finish(r, t0);
    return r;
}

Report cmd_bounds(const RunConfig& config, int c, long n) {
    const auto t0 = clock_type::now();
    Report r = start(config, "bounds", json{{"c", c}, {"n", n}});
    require(c >= 3, "bounds: c must be >= 3");
    require(n >= 2, "bounds: n must be >= 2");
    const int prec = config.precision_bits;

    {
        const auto b = error_pieces(c, n, prec);
        json rec;
        rec["kind"] = "error_pieces";
        for (const auto& [name, v] : b.pieces) rec[name] = decimal(v, 12);
        rec["total"] = decimal(b.total, 12);
        r.records.push_back(rec);
    }
    {
        const auto b = main_term_breakdown(c, n, prec);
        json rec;
        rec["kind"] = "main_term";
        for (const auto& [name, v] : b.pieces) rec[name] = decimal(v, 12);
        rec["total"] = decimal(b.total, 12);
        rec["error_term"] = decimal(error_term_bound(c, n, prec), 12);
        r.records.push_back(rec);
    }
    {
        json rec;
        rec["kind"] = "r_ratio";
        rec["value"] = decimal(r_ratio(c, n, prec), 20);
        rec["piecewise"] = decimal(r_ratio_piecewise(c, n, prec), 20);
        r.records.push_back(rec);
    }
    const Threshold th = sandwich_threshold(c, prec);
    {
        json rec;
        rec["kind"] = "sandwich_threshold";
        rec["lower_coef"] = decimal(th.lower_coef, 12);
        rec["upper_coef"] = decimal(th.upper_coef, 12);
        rec["n_min"] = decimal(th.n_min, 12);
        r.records.push_back(rec);
    }
    if (th.tabulated) {
        const char* target = c == 3 ? "0.33142" : c == 4 ? "0.24084" : "0.1897";
        const Check chk = strictly_less(r_ratio(c, n, prec), HPReal(std::string(target), prec), config.margin_policy);
        json rec;
        rec["kind"] = "ratio_target";
        rec["target"] = target;
        rec["in_range"] = HPReal(n, prec) >= th.n_min;
        rec["check"] = check_json(chk);
        r.records.push_back(rec);
        if (HPReal(n, prec) >= th.n_min && !chk.passed()) r.status = Status::fail;
    } else {
        const HPReal mc = m_c(c, prec), mcp = m_c_prime(c, prec);
        const Check chk = strictly_less(mcp, mc, config.margin_policy);
        json rec;
        rec["kind"] = "m_c";
        rec["M_c"] = decimal(mc, 12);
        rec["M_c_prime"] = decimal(mcp, 12);
        rec["M_c_exceeds_M_c_prime"] = check_json(chk);
        r.records.push_back(rec);
        if (!chk.passed()) r.status = Status::fail;
    }
    {
        json rec;
        rec["kind"] = "constants";
        for (int i : {1, 3, 5}) rec["C" + std::to_string(i)] = decimal(const_C(i, c, prec).value, 12);
        if (c <= 10) {
            rec["C2"] = decimal(const_C(2, c, prec).value, 12);
            rec["C4"] = decimal(const_C(4, c, prec).value, 12);
        }
        rec["Cbar2"] = decimal(cbar2(c, prec), 12);
        rec["Cbar4"] = decimal(cbar4(c, prec), 12);
        r.records.push_back(rec);
    }
    int aux_failed = 0;
    for (const auto& chk : aux_inequalities_selftest(prec)) {
        json rec;
        rec["kind"] = "aux";
        rec["name"] = chk.name;
        rec["passed"] = chk.passed;
        rec["samples"] = chk.samples;
        rec["worst_margin"] = decimal(chk.worst_margin, 8);
        r.records.push_back(rec);
        if (!chk.passed) ++aux_failed;
    }
    if (aux_failed) r.status = Status::fail;
    r.summary["aux_failed"] = aux_failed;
    finish(r, t0);
    return r;
}

Report cmd_verify(const RunConfig& config, int c, int n_lo, int n_hi, const std::vector<int>& residues) {
    const auto t0 = clock_type::now();
    json in{{"c", c}, {"n_lo", n_lo}, {"n_hi", n_hi}, {"a", residues}};
    Report r = start(config, "verify", in);
    require(c >= 2, "verify: c must be >= 2");
    require(n_lo >= 0 && n_lo <= n_hi, "verify: need 0 <= n_lo <= n_hi");
    require(2L * n_hi <= config.n_max,
            "verify: 2 n_hi = " + std::to_string(2L * n_hi) + " exceeds n_max = " + std::to_string(config.n_max));
    std::vector<int> as = residues;
    if (as.empty())
        for (int a = 0; a < c; ++a) as.push_back(a);
    for (int a : as) require(a >= 0 && a < c, "verify: residue " + std::to_string(a) + " outside [0, c)");

    const auto table = table_for(config, c, config.cache_path ? config.n_max : 2 * n_hi);
    // pairs with n1, n2 >= 9 for 3 <= c <= 5 are asserted; everything else is descriptive
    const bool asserted_c = c >= 3 && c <= 5;
    long total_violations = 0, asserted = 0;
    for (int a : as) {
        const Certificate cert = verify_subadditivity(c, a, n_lo, n_hi, table);
        long in_range = 0;
        for (const auto& v : cert.violations)
            if (asserted_c && v.n1 >= 9 && v.n2 >= 9) ++in_range;
        json rec;
        rec["kind"] = "certificate";
        rec["a"] = a;
        rec["pairs_checked"] = cert.pairs_checked;
        rec["violations"] = cert.violations.size();
        rec["violations_in_asserted_range"] = in_range;
        rec["min_margin"] = cert.min_margin ? decimal(HPReal(*cert.min_margin, config.precision_bits), 12) : "inf";
        rec["certificate"] = cert.serialize();
        r.records.push_back(rec);
        total_violations += static_cast<long>(cert.violations.size());
        asserted += in_range;
    }
    if (asserted > 0) r.status = Status::fail;
    r.summary["violations"] = total_violations;
    r.summary["violations_in_asserted_range"] = asserted;
    finish(r, t0);
    return r;
}

}  // namespace ovrank
