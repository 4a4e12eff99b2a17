#include "ovrank/counts.hpp"

#include <boost/crc.hpp>

#include <omp.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ovrank {

std::vector<BigCount> pbar_series(int n_max) {
    if (n_max < 0) throw std::invalid_argument("pbar_series: n_max must be >= 0");
    const auto size = static_cast<size_t>(n_max) + 1;
    std::vector<BigCount> f(size, 0);
    f[0] = 1;
    for (int k = 1; k <= n_max; ++k) {
        // multiply by (1 + q^k): descending so each term is used once
        for (int s = n_max; s >= k; --s) f[s] += f[s - k];
        // divide by (1 - q^k): ascending prefix accumulation
        for (int s = k; s <= n_max; ++s) f[s] += f[s - k];
    }
    return f;
}

std::vector<BigCount> pbar_series_theta(int n_max) {
    if (n_max < 0) throw std::invalid_argument("pbar_series_theta: n_max must be >= 0");
    std::vector<BigCount> p(static_cast<size_t>(n_max) + 1, 0);
    p[0] = 1;
    BigCount acc;
    for (int n = 1; n <= n_max; ++n) {
        acc = 0;
        for (long k = 1; k * k <= n; ++k) {
            if (k % 2 == 1) acc += p[n - k * k];
            else acc -= p[n - k * k];
        }
        p[n] = 2 * acc;
    }
    return p;
}

RankClassTable::RankClassTable(int modulus, int n_max, std::vector<BigCount> counts)
    : modulus_(modulus), n_max_(n_max), counts_(std::move(counts)) {
    if (modulus_ < 2) throw std::invalid_argument("RankClassTable: modulus must be >= 2");
    if (n_max_ < 0) throw std::invalid_argument("RankClassTable: n_max must be >= 0");
    if (counts_.size() != static_cast<size_t>(n_max_ + 1) * static_cast<size_t>(modulus_))
        throw std::invalid_argument("RankClassTable: counts size does not match (n_max+1)*c");
}

const BigCount& RankClassTable::at(int n, int r) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("RankClassTable: n out of range");
    if (r < 0 || r >= modulus_) throw std::out_of_range("RankClassTable: residue out of range");
    return counts_[static_cast<size_t>(n) * modulus_ + r];
}

std::span<const BigCount> RankClassTable::row(int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("RankClassTable: n out of range");
    return {counts_.data() + static_cast<size_t>(n) * modulus_, static_cast<size_t>(modulus_)};
}

BigCount RankClassTable::row_sum(int n) const {
    BigCount s = 0;
    for (const auto& v : row(n)) s += v;
    return s;
}

std::uint32_t RankClassTable::checksum() const {
    boost::crc_32_type crc;
    std::string line;
    for (int n = 0; n <= n_max_; ++n) {
        for (int r = 0; r < modulus_; ++r) {
            line = std::to_string(n) + ' ' + std::to_string(r) + ' ' + at(n, r).get_str() + '\n';
            crc.process_bytes(line.data(), line.size());
        }
    }
    return crc.checksum();
}

namespace {

// Largest-part-anchored DP. `prefix[s][j]` counts overpartitions of s into
// parts < L with j mod c parts; `top[s][j]` counts those additionally holding
// m >= 1 copies of L (overline factor applied by the caller), via
//   top[s][j] = prefix[s-L][j-1] + top[s-L][j-1].
// An overpartition with largest part L and j parts has rank class (L - j) mod c.
RankClassTable build_table(int n_max, int c, bool parallel) {
    if (n_max < 0) throw std::invalid_argument("rank_class_table: n_max must be >= 0");
    if (c < 2) throw std::invalid_argument("rank_class_table: c must be >= 2");

    const size_t cols = static_cast<size_t>(c);
    const size_t size = (static_cast<size_t>(n_max) + 1) * cols;
    std::vector<BigCount> prefix(size, 0), top(size, 0), counts(size, 0);
    prefix[0] = 1;
    counts[0] = 1;

    auto idx = [cols](int s, int j) { return static_cast<size_t>(s) * cols + static_cast<size_t>(j); };

    for (int L = 1; L <= n_max; ++L) {
#pragma omp parallel for schedule(dynamic, 4) if (parallel && L >= 16)
        for (int rho = 0; rho < L; ++rho) {
            if (rho > n_max) continue;
            for (int j = 0; j < c; ++j) top[idx(rho, j)] = 0;
            for (int s = rho + L; s <= n_max; s += L) {
                for (int j = 0; j < c; ++j) {
                    const int jp = (j + c - 1) % c;
                    mpz_add(top[idx(s, j)].get_mpz_t(), prefix[idx(s - L, jp)].get_mpz_t(),
                            top[idx(s - L, jp)].get_mpz_t());
                }
            }
        }

#pragma omp parallel for schedule(static) if (parallel)
        for (int s = L; s <= n_max; ++s) {
            for (int j = 0; j < c; ++j) {
                const auto& t = top[idx(s, j)];
                if (sgn(t) == 0) continue;
                const int r = ((L - j) % c + c) % c;
                mpz_addmul_ui(counts[idx(s, r)].get_mpz_t(), t.get_mpz_t(), 2);
                mpz_addmul_ui(prefix[idx(s, j)].get_mpz_t(), t.get_mpz_t(), 2);
            }
        }
    }
    return RankClassTable(c, n_max, std::move(counts));
}

}  // namespace

RankClassTable rank_class_table(int n_max, int c) { return build_table(n_max, c, true); }

RankClassTable rank_class_table_serial(int n_max, int c) { return build_table(n_max, c, false); }

BigCount RankDistribution::at(long rank) const {
    auto it = entries.find(rank);
    return it == entries.end() ? BigCount(0) : it->second;
}

BigCount RankDistribution::total() const {
    BigCount s = 0;
    for (const auto& [rank, count] : entries) s += count;
    return s;
}

std::vector<BigCount> RankDistribution::fold(int c) const {
    if (c < 1) throw std::invalid_argument("RankDistribution::fold: c must be >= 1");
    std::vector<BigCount> out(static_cast<size_t>(c), 0);
    for (const auto& [rank, count] : entries) out[static_cast<size_t>(((rank % c) + c) % c)] += count;
    return out;
}

RankDistribution brute_force_rank_counts(int n, int limit) {
    if (n < 0) throw std::invalid_argument("brute_force_rank_counts: n must be >= 0");
    if (n > limit)
        throw std::invalid_argument("brute_force_rank_counts: n = " + std::to_string(n) +
                                    " exceeds enumeration limit " + std::to_string(limit));
    RankDistribution dist;
    dist.n = n;
    if (n == 0) {
        dist.entries[0] = 1;
        return dist;
    }
    // Parts are generated in non-increasing order; `largest` is fixed by the first.
    std::function<void(int, int, int, int, int)> walk = [&](int remaining, int max_part, int largest,
                                                            int parts, int distinct) {
        if (remaining == 0) {
            BigCount w;
            mpz_ui_pow_ui(w.get_mpz_t(), 2, static_cast<unsigned long>(distinct));
            dist.entries[largest - parts] += w;
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            const bool fresh = (p != max_part) || parts == 0;
            walk(remaining - p, p, parts == 0 ? p : largest, parts + 1, distinct + (fresh ? 1 : 0));
        }
    };
    // max_part = n with parts == 0 makes the first part always fresh.
    walk(n, n, 0, 0, 0);
    return dist;
}

HPComplex a_exact(int j, int c, int n, const RankClassTable& table, int precision_bits) {
    if (c != table.modulus()) throw std::invalid_argument("a_exact: table modulus differs from c");
    if (j < 0 || j >= c) throw std::out_of_range("a_exact: j must satisfy 0 <= j < c");
    const auto row = table.row(n);
    // the counts cancel down to roughly their square root; carry every bit
    size_t widest = 1;
    for (const auto& v : row) widest = std::max(widest, mpz_sizeinbase(v.get_mpz_t(), 2));
    const int work = precision_bits + static_cast<int>(widest);
    HPComplex sum(work);
    for (int r = 0; r < c; ++r) {
        if (sgn(row[r]) == 0) continue;
        HPComplex term = HPComplex::unit(ratio(static_cast<long>(j) * r, c), work);
        term *= HPReal(row[r], work);
        sum += term;
    }
    HPComplex out(precision_bits);
    mpfr_set(out.re.get(), sum.re.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), sum.im.get(), MPFR_RNDN);
    return out;
}

OrthogonalityResult verify_orthogonality(int a, int c, int n, const RankClassTable& table,
                                         std::span<const BigCount> pbar) {
    if (c != table.modulus()) throw std::invalid_argument("verify_orthogonality: table modulus differs from c");
    if (n < 0 || n > table.n_max() || static_cast<size_t>(n) >= pbar.size())
        throw std::out_of_range("verify_orthogonality: n out of range");
    const int a_mod = ((a % c) + c) % c;

    // A(j/c;n) = sum_r N_r zeta^{jr}, so sum_{j=1}^{c-1} zeta^{-aj} A(j/c;n)
    // = sum_r N_r * sum_{j=1}^{c-1} zeta^{j(r-a)}, and the inner sum is c-1 when
    // r = a (mod c) and -1 otherwise (full geometric sum vanishes).
    const auto row = table.row(n);
    mpq_class cross = 0;
    for (int r = 0; r < c; ++r) {
        const long coef = (r == a_mod) ? c - 1 : -1;
        cross += mpq_class(row[r] * coef);
    }
    OrthogonalityResult res;
    res.expected = row[a_mod];
    res.reconstructed = (mpq_class(pbar[n]) + cross) / c;
    res.reconstructed.canonicalize();
    res.holds = (res.reconstructed == mpq_class(res.expected));
    if (!res.holds) {
        std::ostringstream os;
        os << "N(" << a_mod << "," << c << "," << n << ") = " << res.expected.get_str()
           << " but reconstruction gives " << res.reconstructed.get_str();
        res.discrepancy = os.str();
    }
    return res;
}

OrthogonalityResult verify_orthogonality(int a, int c, int n, const RankClassTable& table) {
    const auto pbar = pbar_series_theta(n);
    return verify_orthogonality(a, c, n, table, pbar);
}

}  // namespace ovrank
