// The four CLI commands as library calls. Each returns a Report whose status
// drives the exit code. Bad ranges throw std::invalid_argument.

#pragma once

#include "ovrank/counts.hpp"
#include "ovrank/report.hpp"

#include <optional>
#include <vector>

namespace ovrank {

// Builds the table for modulus c up to n_max, or loads/extends the cache file
// <cache_path>/table-c<c>.txt when a cache directory is configured.
RankClassTable table_for(const RunConfig& config, int c, int n_max);

Report cmd_count(const RunConfig& config, int n, std::optional<int> c, std::optional<int> a);
Report cmd_asymptotic(const RunConfig& config, int a, int c, int n);
Report cmd_bounds(const RunConfig& config, int c, long n);
// An empty a-list means every residue 0..c-1.
Report cmd_verify(const RunConfig& config, int c, int n_lo, int n_hi, const std::vector<int>& residues);

}  // namespace ovrank
