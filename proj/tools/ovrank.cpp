#include "ovrank/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<int> parse_residues(const std::string& text) {
    std::vector<int> out;
    if (text.empty() || text == "all") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad residue '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int single_residue(const std::string& text) {
    const auto v = parse_residues(text);
    if (v.size() != 1) throw std::invalid_argument("--a must be a single residue for this command");
    return v[0];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overpartition rank counts, asymptotics, bounds and subadditivity certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    ovrank::RunConfig config;
    std::optional<int> c, n, n_lo, n_hi;
    std::string a_list, cache, report_path, format = "text";

    app.add_option("--c", c, "modulus c")->envname("OVRANK_C");
    app.add_option("--a", a_list, "residue a; for verify a comma list or 'all'")->envname("OVRANK_A");
    app.add_option("--n", n, "n")->envname("OVRANK_N");
    app.add_option("--n-lo", n_lo, "lower end of the verify range")->envname("OVRANK_N_LO");
    app.add_option("--n-hi", n_hi, "upper end of the verify range")->envname("OVRANK_N_HI");
    app.add_option("--n-max", config.n_max, "largest n for exact tables")->envname("OVRANK_N_MAX")->capture_default_str();
    app.add_option("--precision", config.precision_bits, "working precision in bits")
        ->envname("OVRANK_PRECISION")
        ->capture_default_str();
    app.add_option("--cache", cache, "directory for cached rank-class tables")->envname("OVRANK_CACHE");
    app.add_option("--jobs", config.jobs, "OpenMP threads (0 = default)")->envname("OVRANK_JOBS");
    app.add_option("--report", report_path, "also write the report to this file")->envname("OVRANK_REPORT");
    app.add_option("--format", format, "text or json-lines")
        ->envname("OVRANK_FORMAT")
        ->check(CLI::IsMember({"text", "json-lines"}));

    auto* count = app.add_subcommand("count", "p-bar(n), a rank-class row, or N-bar(a,c,n)");
    auto* asym = app.add_subcommand("asymptotic", "exact and asymptotic A(a/c;n) and N-bar(a,c,n)");
    auto* bounds = app.add_subcommand("bounds", "error pieces, R_c, thresholds and auxiliary checks");
    auto* verify = app.add_subcommand("verify", "exhaustive subadditivity certificates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto need = [](const std::optional<int>& v, const char* flag) {
        if (!v) throw std::invalid_argument(std::string("missing ") + flag);
        return *v;
    };

    ovrank::Report report;
    try {
        if (!cache.empty()) config.cache_path = cache;
        if (count->parsed()) {
            std::optional<int> a;
            if (!a_list.empty()) a = single_residue(a_list);
            report = ovrank::cmd_count(config, need(n, "--n"), c, a);
        } else if (asym->parsed()) {
            report = ovrank::cmd_asymptotic(config, single_residue(a_list.empty() ? "1" : a_list), need(c, "--c"),
                                            need(n, "--n"));
        } else if (bounds->parsed()) {
            report = ovrank::cmd_bounds(config, need(c, "--c"), need(n, "--n"));
        } else if (verify->parsed()) {
            report = ovrank::cmd_verify(config, need(c, "--c"), need(n_lo, "--n-lo"), need(n_hi, "--n-hi"),
                                        parse_residues(a_list));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    const std::string text = format == "json-lines" ? report.to_json_lines() : report.to_text();
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "error: cannot write " << report_path << '\n';
            return 2;
        }
        out << text;
    }
    return report.status == ovrank::Status::pass ? 0 : 1;
}
