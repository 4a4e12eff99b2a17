// Exact overpartition counts: p-bar(n), rank-class tables N-bar(r,c,n), and a
// brute-force enumeration oracle.

#pragma once

#include "ovrank/hp.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ovrank {

using BigCount = mpz_class;

// p-bar(0..n_max) from the truncated Euler product prod (1+q^k)/(1-q^k).
std::vector<BigCount> pbar_series(int n_max);

// p-bar(0..n_max) from 1/theta(-q), theta(q) = sum_{k in Z} q^{k^2}:
// p(n) = 2 * sum_{k>=1} (-1)^{k+1} p(n - k^2). O(n^1.5) additions.
std::vector<BigCount> pbar_series_theta(int n_max);

// Immutable table of N-bar(r, c, n) for 0 <= n <= n_max, 0 <= r < c.
class RankClassTable {
public:
    RankClassTable(int modulus, int n_max, std::vector<BigCount> counts);

    int modulus() const { return modulus_; }
    int n_max() const { return n_max_; }

    const BigCount& at(int n, int r) const;
    std::span<const BigCount> row(int n) const;
    // Sum over residues; equals p-bar(n).
    BigCount row_sum(int n) const;

    // CRC-32 over the canonical "n r count" lines.
    std::uint32_t checksum() const;

    friend bool operator==(const RankClassTable& a, const RankClassTable& b) {
        return a.modulus_ == b.modulus_ && a.n_max_ == b.n_max_ && a.counts_ == b.counts_;
    }

private:
    int modulus_;
    int n_max_;
    std::vector<BigCount> counts_;  // row-major [n][r]
};

// OpenMP kernel. The result does not depend on the number of threads.
RankClassTable rank_class_table(int n_max, int c);
// Single-threaded reference for the same recurrence.
RankClassTable rank_class_table_serial(int n_max, int c);

struct RankDistribution {
    int n = 0;
    std::map<long, BigCount> entries;  // rank -> weighted count, zero entries omitted

    BigCount at(long rank) const;
    BigCount total() const;
    // Residue-class counts N-bar(r, c, n).
    std::vector<BigCount> fold(int c) const;
};

inline constexpr int kBruteForceLimit = 30;

// Enumerates the partitions of n; each contributes 2^{#distinct parts} at rank
// (largest part - number of parts).
RankDistribution brute_force_rank_counts(int n, int limit = kBruteForceLimit);

// sum_r N-bar(r,c,n) zeta_c^{j r}, the q^n coefficient of O(zeta_c^j; q). The sum
// is formed with extra bits to absorb the cancellation, then rounded.
HPComplex a_exact(int j, int c, int n, const RankClassTable& table,
                  int precision_bits = kDefaultPrecision);

struct OrthogonalityResult {
    bool holds = false;
    BigCount expected;          // N-bar(a,c,n) from the table
    mpq_class reconstructed;    // (1/c) p-bar(n) + (1/c) sum_j zeta^{-aj} A(j/c; n)
    std::string discrepancy;    // empty when holds

    explicit operator bool() const { return holds; }
};

// Exact check of the root-of-unity filter identity. `pbar` must cover n and is
// taken from an independent route (not the table's row sums).
OrthogonalityResult verify_orthogonality(int a, int c, int n, const RankClassTable& table,
                                         std::span<const BigCount> pbar);
OrthogonalityResult verify_orthogonality(int a, int c, int n, const RankClassTable& table);

}  // namespace ovrank
