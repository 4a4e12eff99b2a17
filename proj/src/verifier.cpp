#include "ovrank/verifier.hpp"

#include "ovrank/bounds.hpp"
#include "ovrank/table_cache.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ovrank {

namespace {

// Best (smallest) rhs/lhs of one row, compared by cross-multiplication.
struct RowResult {
    long pairs = 0;
    std::vector<Violation> violations;
    bool has_min = false;
    BigCount min_rhs, min_lhs;
    int min_n1 = -1, min_n2 = -1;
};

// True when rhs1/lhs1 < rhs2/lhs2 (lhs > 0 on both sides).
bool ratio_less(const BigCount& rhs1, const BigCount& lhs1, const BigCount& rhs2, const BigCount& lhs2) {
    return rhs1 * lhs2 < rhs2 * lhs1;
}

void offer(RowResult& acc, const BigCount& rhs, const BigCount& lhs, int n1, int n2) {
    if (!acc.has_min || ratio_less(rhs, lhs, acc.min_rhs, acc.min_lhs)) {
        acc.has_min = true;
        acc.min_rhs = rhs;
        acc.min_lhs = lhs;
        acc.min_n1 = n1;
        acc.min_n2 = n2;
    }
}

RowResult check_row(int n1, int a, int n_hi, const RankClassTable& table) {
    RowResult row;
    const BigCount& x = table.at(n1, a);
    BigCount rhs;
    for (int n2 = n1; n2 <= n_hi; ++n2) {
        ++row.pairs;
        const BigCount& lhs = table.at(n1 + n2, a);
        rhs = x * table.at(n2, a);
        if (!(lhs < rhs)) row.violations.push_back({n1, n2, lhs, rhs});
        if (sgn(lhs) == 0) {
            // 0 < rhs: infinite ratio, skipped; 0 = rhs: ratio taken as 0
            if (sgn(rhs) == 0) offer(row, BigCount(0), BigCount(1), n1, n2);
            continue;
        }
        offer(row, rhs, lhs, n1, n2);
    }
    return row;
}

Certificate sweep(int c, int a, int n_lo, int n_hi, const RankClassTable& table, bool parallel) {
    if (table.modulus() != c) throw std::invalid_argument("verify_subadditivity: table modulus differs from c");
    if (a < 0 || a >= c) throw std::invalid_argument("verify_subadditivity: need 0 <= a < c");
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("verify_subadditivity: need 0 <= n_lo <= n_hi");
    if (static_cast<long>(table.n_max()) < 2L * n_hi)
        throw std::invalid_argument("verify_subadditivity: table n_max " + std::to_string(table.n_max()) +
                                    " is below 2 n_hi = " + std::to_string(2L * n_hi));

    const int rows = n_hi - n_lo + 1;
    std::vector<RowResult> results(static_cast<size_t>(rows));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int i = 0; i < rows; ++i) results[i] = check_row(n_lo + i, a, n_hi, table);

    Certificate cert;
    cert.c = c;
    cert.a = a;
    cert.n_lo = n_lo;
    cert.n_hi = n_hi;
    cert.table_checksum = table.checksum();
    RowResult best;
    for (auto& row : results) {
        cert.pairs_checked += row.pairs;
        for (auto& v : row.violations) cert.violations.push_back(std::move(v));
        // rows arrive in increasing n1, so ties keep the earliest pair
        if (row.has_min) offer(best, row.min_rhs, row.min_lhs, row.min_n1, row.min_n2);
    }
    std::sort(cert.violations.begin(), cert.violations.end(),
              [](const Violation& x, const Violation& y) { return std::tie(x.n1, x.n2) < std::tie(y.n1, y.n2); });
    if (best.has_min) {
        mpq_class m{best.min_rhs, best.min_lhs};
        m.canonicalize();
        cert.min_margin = m;
        cert.min_n1 = best.min_n1;
        cert.min_n2 = best.min_n2;
    }
    return cert;
}

}  // namespace

std::string Certificate::serialize() const {
    std::ostringstream os;
    os << "ovrank-certificate schema_version=" << kCertificateSchemaVersion << '\n';
    os << "c=" << c << " a=" << a << " n_lo=" << n_lo << " n_hi=" << n_hi << '\n';
    os << "table_checksum crc32=" << hex32(table_checksum) << '\n';
    os << "pairs_checked=" << pairs_checked << '\n';
    os << "violations=" << violations.size() << '\n';
    for (const auto& v : violations)
        os << "violation " << v.n1 << ' ' << v.n2 << ' ' << v.lhs.get_str() << ' ' << v.rhs.get_str() << '\n';
    if (min_margin)
        os << "min_margin=" << min_margin->get_str() << " at " << min_n1 << ' ' << min_n2 << '\n';
    else
        os << "min_margin=inf\n";
    return os.str();
}

Certificate verify_subadditivity(int c, int a, int n_lo, int n_hi, const RankClassTable& table) {
    return sweep(c, a, n_lo, n_hi, table, true);
}

Certificate verify_subadditivity_serial(int c, int a, int n_lo, int n_hi, const RankClassTable& table) {
    return sweep(c, a, n_lo, n_hi, table, false);
}

std::string to_string(TVariant v) {
    switch (v) {
        case TVariant::explicit_c3: return "explicit_c3";
        case TVariant::explicit_c4: return "explicit_c4";
        case TVariant::explicit_c5: return "explicit_c5";
        case TVariant::generic: return "generic";
    }
    return "generic";
}

TVariant parse_tvariant(const std::string& s) {
    for (auto v : {TVariant::explicit_c3, TVariant::explicit_c4, TVariant::explicit_c5, TVariant::generic})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown T-inequality variant '" + s + "'");
}

TVariant variant_for(int c) {
    switch (c) {
        case 3: return TVariant::explicit_c3;
        case 4: return TVariant::explicit_c4;
        case 5: return TVariant::explicit_c5;
        default: return TVariant::generic;
    }
}

HPReal t_function(const HPReal& n1, const HPReal& C) {
    const HPReal pi = HPReal::pi(n1.precision());
    return pi * (sqrt(n1) + sqrt(C * n1)) - pi * sqrt(n1 + C * n1);
}

HPReal v_function(const HPReal& n1, const HPReal& C, int c) {
    const Threshold row = sandwich_threshold(c, n1.precision());
    if (!row.tabulated) throw std::invalid_argument("v_function: needs c in {3, 4, 5}");
    return row.upper_coef * 8.0 * C * n1 / (row.lower_coef * row.lower_coef * (C + 1.0));
}

HPReal s_function(const HPReal& n1, const HPReal& C) {
    return (1.0 + 1.0 / sqrt(n1 + C * n1)) / ((1.0 - 1.0 / sqrt(n1)) * (1.0 - 1.0 / sqrt(C * n1)));
}

HPReal w_function(const HPReal& n1, const HPReal& C, int c) {
    return 48.0 * static_cast<double>(c) * C * n1 / (C + 1.0);
}

TResult t_inequality(long n1, int c, TVariant variant, int precision_bits) {
    if (n1 < 2) throw std::invalid_argument("t_inequality: n1 must be >= 2");
    const int prec = precision_bits;
    const HPReal nn(n1, prec);
    const HPReal one(1L, prec);
    const HPReal lhs = t_function(nn, one);
    HPReal log_v(prec);
    if (variant == TVariant::generic) {
        if (c < 3) throw std::invalid_argument("t_inequality: c must be >= 3");
        log_v = log(48.0 * static_cast<double>(c) * nn);
    } else {
        const int row_c = variant == TVariant::explicit_c3 ? 3 : variant == TVariant::explicit_c4 ? 4 : 5;
        const Threshold row = sandwich_threshold(row_c, prec);
        log_v = log(row.upper_coef * 8.0 * nn / (row.lower_coef * row.lower_coef));
    }
    const HPReal log_s = log((1.0 + 1.0 / sqrt(2.0 * nn)) / ((1.0 - 1.0 / sqrt(nn)) * (1.0 - 1.0 / sqrt(nn))));
    const HPReal rhs = log_v + log_s;
    Check check = strictly_less(rhs, lhs);
    return {check.passed(), lhs, rhs, lhs - rhs, std::move(check)};
}

GenericChain t_generic_chain(long n1, int c, int precision_bits) {
    if (n1 < 2) throw std::invalid_argument("t_generic_chain: n1 must be >= 2");
    if (c < 3) throw std::invalid_argument("t_generic_chain: c must be >= 3");
    const int prec = precision_bits;
    const HPReal nn(n1, prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal t = t_function(nn, HPReal(1L, prec));
    const HPReal log840 = log(840.0 * cc * nn);
    const TResult generic = t_inequality(n1, c, TVariant::generic, prec);

    GenericChain out;
    out.threshold = (840.0 * cc) * (840.0 * cc);
    out.b1 = strictly_less(generic.rhs, log840).passed();
    out.b2 = strictly_less(2.0 * log(nn), t).passed();
    out.b2_range = nn >= out.threshold;
    out.closes = strictly_less(log840, t).passed();
    return out;
}

ProbeReport monotonicity_probe(int c, Monotonicity which, int precision_bits) {
    if (c < 3) throw std::invalid_argument("monotonicity_probe: c must be >= 3");
    const int prec = precision_bits;
    ProbeReport rep;
    rep.which = which;
    rep.c = c;
    rep.n1_values = {2, 9, 50, 100, 109, 500, 2089, 10000};
    rep.monotone = rep.v_bound = rep.w_bound = true;
    const bool tabulated = c >= 3 && c <= 5;
    const Threshold row = sandwich_threshold(std::min(c, 5), prec);

    // C on a log grid in [1, 100]
    std::vector<HPReal> grid;
    for (int i = 0; i <= 200; ++i) grid.emplace_back(HPReal(std::pow(100.0, i / 200.0), prec));
    grid.front() = HPReal(1L, prec);
    grid.back() = HPReal(100L, prec);

    for (long n1 : rep.n1_values) {
        const HPReal nn(n1, prec);
        HPReal prev(prec);
        bool first = true;
        for (const auto& C : grid) {
            ++rep.samples;
            const HPReal f = which == Monotonicity::T_in_C ? t_function(nn, C) : s_function(nn, C);
            if (!first) {
                const bool ok = which == Monotonicity::T_in_C ? f > prev : f < prev;
                if (!ok) rep.monotone = false;
            }
            prev = f;
            first = false;
            if (tabulated) {
                const HPReal cap = row.upper_coef * 8.0 * nn / (row.lower_coef * row.lower_coef);
                if (!(v_function(nn, C, c) < cap)) rep.v_bound = false;
            }
            if (!(w_function(nn, C, c) < 48.0 * static_cast<double>(c) * nn)) rep.w_bound = false;
        }
    }
    return rep;
}

long threshold_scan(int c, const HPReal& target) {
    if (c < 3) throw std::invalid_argument("threshold_scan: c must be >= 3");
    if (target.sign() <= 0) throw std::invalid_argument("threshold_scan: target must be > 0");
    const int prec = target.precision();
    // r_ratio decreases from here on
    long lo = 2;
    if (c >= 6) {
        const double knee = 5.0 * c / (8.0 * M_PI);
        lo = std::max(2L, static_cast<long>(knee * knee) + 1);
    }
    long hi = 1000000000000000000L;
    if (!(r_ratio(c, hi, prec) < target))
        throw std::domain_error("threshold_scan: target " + target.to_string(8) + " not reached for n <= 1e18");
    if (r_ratio(c, lo, prec) < target) return lo;
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (r_ratio(c, mid, prec) < target) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace ovrank
