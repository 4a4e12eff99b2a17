// Text cache for RankClassTable.
//
//   ovrank-table format_version=1 c=<c> n_max=<n_max>
//   <n> <r> <decimal count>        one line per (n, r), n-major
//   checksum crc32=<8 hex digits>
//
// The checksum is RankClassTable::checksum(), i.e. CRC-32 over the count lines.

#pragma once

#include "ovrank/counts.hpp"

#include <filesystem>
#include <iosfwd>

namespace ovrank {

inline constexpr int kTableFormatVersion = 1;

void write_table(std::ostream& out, const RankClassTable& table);
// Throws std::runtime_error on malformed input or checksum mismatch.
RankClassTable read_table(std::istream& in);

void save_table(const std::filesystem::path& path, const RankClassTable& table);
RankClassTable load_table(const std::filesystem::path& path);

// Loads `path` if it holds a table with modulus c and n_max >= the request,
// otherwise builds one and (when path is non-empty) writes it.
RankClassTable cached_table(const std::filesystem::path& path, int n_max, int c);

std::string hex32(std::uint32_t v);

}  // namespace ovrank
