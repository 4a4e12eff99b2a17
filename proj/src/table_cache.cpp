#include "ovrank/table_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ovrank {

std::string hex32(std::uint32_t v) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

void write_table(std::ostream& out, const RankClassTable& table) {
    out << "ovrank-table format_version=" << kTableFormatVersion << " c=" << table.modulus()
        << " n_max=" << table.n_max() << '\n';
    for (int n = 0; n <= table.n_max(); ++n)
        for (int r = 0; r < table.modulus(); ++r) out << n << ' ' << r << ' ' << table.at(n, r).get_str() << '\n';
    out << "checksum crc32=" << hex32(table.checksum()) << '\n';
}

namespace {

int header_field(const std::string& header, const std::string& key) {
    const auto pos = header.find(" " + key + "=");
    if (pos == std::string::npos) throw std::runtime_error("table cache: header lacks " + key);
    return std::stoi(header.substr(pos + key.size() + 2));
}

}  // namespace

RankClassTable read_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("ovrank-table ", 0) != 0)
        throw std::runtime_error("table cache: missing header");
    const int version = header_field(header, "format_version");
    if (version != kTableFormatVersion)
        throw std::runtime_error("table cache: unsupported format_version " + std::to_string(version));
    const int c = header_field(header, "c");
    const int n_max = header_field(header, "n_max");
    if (c < 2 || n_max < 0) throw std::runtime_error("table cache: bad header values");

    std::vector<BigCount> counts((static_cast<size_t>(n_max) + 1) * c);
    std::string line;
    for (int n = 0; n <= n_max; ++n) {
        for (int r = 0; r < c; ++r) {
            if (!std::getline(in, line)) throw std::runtime_error("table cache: truncated");
            std::istringstream ls(line);
            int ln = -1, lr = -1;
            std::string value;
            if (!(ls >> ln >> lr >> value) || ln != n || lr != r)
                throw std::runtime_error("table cache: unexpected line '" + line + "'");
            if (counts[static_cast<size_t>(n) * c + r].set_str(value, 10) != 0)
                throw std::runtime_error("table cache: bad count '" + value + "'");
        }
    }
    if (!std::getline(in, line) || line.rfind("checksum crc32=", 0) != 0)
        throw std::runtime_error("table cache: missing checksum line");
    RankClassTable table(c, n_max, std::move(counts));
    const std::string stored = line.substr(15);
    if (stored != hex32(table.checksum()))
        throw std::runtime_error("table cache: checksum mismatch (stored " + stored + ")");
    return table;
}

void save_table(const std::filesystem::path& path, const RankClassTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("table cache: cannot write " + path.string());
    write_table(out, table);
}

RankClassTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("table cache: cannot read " + path.string());
    return read_table(in);
}

RankClassTable cached_table(const std::filesystem::path& path, int n_max, int c) {
    if (!path.empty() && std::filesystem::exists(path)) {
        auto table = load_table(path);
        if (table.modulus() == c && table.n_max() >= n_max) return table;
    }
    auto table = rank_class_table(n_max, c);
    if (!path.empty()) save_table(path, table);
    return table;
}

}  // namespace ovrank
