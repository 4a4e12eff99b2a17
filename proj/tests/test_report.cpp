#include "ovrank/commands.hpp"
#include "ovrank/table_cache.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ovrank;

namespace {

RunConfig small_config(int n_max = 3000) {
    RunConfig c;
    c.n_max = n_max;
    return c;
}

const json& record(const Report& r, const std::string& kind) {
    for (const auto& rec : r.records)
        if (rec.at("kind") == kind) return rec;
    throw std::runtime_error("no record of kind " + kind);
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto d = std::filesystem::temp_directory_path() / ("ovrank-test-" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("RunConfig validation and json") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.precision_bits = 63;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.n_max = -1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.jobs = -2;
    CHECK_THROWS(c.validate());

    RunConfig d;
    d.precision_bits = 256;
    d.n_max = 1234;
    d.cache_path = "/tmp/somewhere";
    d.margin_policy = 1e-10;
    d.jobs = 3;
    const RunConfig back = RunConfig::from_json(d.to_json());
    CHECK(back.precision_bits == 256);
    CHECK(back.n_max == 1234);
    REQUIRE(back.cache_path);
    CHECK(*back.cache_path == std::filesystem::path("/tmp/somewhere"));
    CHECK(back.margin_policy == 1e-10);
    CHECK(back.jobs == 3);
    CHECK(!RunConfig::from_json(RunConfig{}.to_json()).cache_path);
}

TEST_CASE("report json-lines round trip") {
    const Report r = cmd_verify(small_config(200), 3, 1, 8, {});
    const std::string text = r.to_json_lines();
    const Report back = Report::from_json_lines(text);
    CHECK(back == r);
    CHECK(back.to_json_lines() == text);
    std::istringstream lines(text);
    std::string line;
    long n = 0;
    while (std::getline(lines, line)) {
        json j;
        CHECK_NOTHROW(j = json::parse(line));
        CHECK(j.contains("type"));
        ++n;
    }
    CHECK(n == static_cast<long>(r.records.size()) + 2);

    CHECK_THROWS_AS(Report::from_json_lines(""), std::runtime_error);
    CHECK_THROWS_AS(Report::from_json_lines("{\"type\":\"record\",\"data\":{}}\n"), std::runtime_error);
    CHECK_THROWS_AS(Report::from_json_lines(text.substr(0, text.rfind("{\"type\":\"footer\""))), std::runtime_error);
    CHECK_THROWS_AS(Report::from_json_lines("not json\n"), std::runtime_error);
    CHECK(!r.to_text().empty());
}

TEST_CASE("count command") {
    const Report p = cmd_count(small_config(), 4, std::nullopt, std::nullopt);
    CHECK(record(p, "pbar").at("value") == "14");
    CHECK(p.status == Status::pass);
    CHECK(record(cmd_count(small_config(), 3, 3, 0), "nbar").at("value") == "4");
    CHECK(record(cmd_count(small_config(), 0, 5, 0), "nbar").at("value") == "1");
    const json row = record(cmd_count(small_config(), 3, 3, std::nullopt), "row");
    CHECK(row.at("counts") == json::array({"4", "2", "2"}));
    CHECK(row.at("pbar") == "8");
    CHECK_THROWS_AS(cmd_count(small_config(10), 11, std::nullopt, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(cmd_count(small_config(), 5, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(cmd_count(small_config(), 5, std::nullopt, 1), std::invalid_argument);
}

TEST_CASE("asymptotic command") {
    const Report r = cmd_asymptotic(small_config(), 1, 3, 1600);
    CHECK(r.status == Status::pass);
    const json& a = record(r, "A");
    CHECK(a.at("exact").get<std::string>().find("unavailable") == std::string::npos);
    CHECK(a.contains("relative_deviation"));
    CHECK(record(r, "nbar").at("ratio_envelope").at("verdict") == "pass");

    const Report z = cmd_asymptotic(small_config(), 0, 3, 100);
    CHECK(record(z, "A").at("exact").get<std::string>().find("unavailable") == std::string::npos);
    CHECK(record(z, "nbar").contains("exact"));

    const Report missing = cmd_asymptotic(small_config(50), 1, 3, 100);
    CHECK(record(missing, "A").at("exact") == "unavailable");
    CHECK(record(missing, "nbar").at("exact") == "unavailable");
    CHECK(missing.summary.at("exact_available") == false);

    const Report even = cmd_asymptotic(small_config(400), 1, 4, 300);
    CHECK(record(even, "nbar").at("asymptotic").get<std::string>().rfind("unavailable", 0) == 0);
    CHECK_THROWS(cmd_asymptotic(small_config(), 3, 3, 100));
}

TEST_CASE("bounds command") {
    const Report r3 = cmd_bounds(small_config(), 3, 2089);
    CHECK(r3.status == Status::pass);
    const json& t3 = record(r3, "ratio_target");
    CHECK(t3.at("in_range") == true);
    CHECK(t3.at("check").at("verdict") == "pass");
    CHECK(record(r3, "error_pieces").size() == 16);

    const Report r4 = cmd_bounds(small_config(), 4, 272);
    CHECK(record(r4, "ratio_target").at("check").at("verdict") == "pass");

    const Report r6 = cmd_bounds(small_config(), 6, 1000);
    const json& m = record(r6, "m_c");
    CHECK(m.at("M_c").get<std::string>().find("e+") != std::string::npos);
    CHECK(m.at("M_c_exceeds_M_c_prime").at("verdict") == "pass");
    CHECK(r6.status == Status::pass);
}

TEST_CASE("verify command") {
    const Report r = cmd_verify(small_config(400), 3, 9, 200, {});
    CHECK(r.status == Status::pass);
    CHECK(r.summary.at("violations") == 0);
    CHECK(r.records.size() == 3);

    const Report low = cmd_verify(small_config(400), 3, 1, 8, {});
    CHECK(low.status == Status::pass);
    CHECK(low.summary.at("violations").get<long>() > 0);
    CHECK(low.summary.at("violations_in_asserted_range") == 0);

    const Report again = cmd_verify(small_config(400), 3, 1, 8, {});
    for (size_t i = 0; i < low.records.size(); ++i)
        CHECK(low.records[i].at("certificate") == again.records[i].at("certificate"));

    const Report sub = cmd_verify(small_config(400), 5, 9, 100, {1, 3});
    CHECK(sub.records.size() == 2);
    CHECK_THROWS_AS(cmd_verify(small_config(100), 3, 9, 51, {}), std::invalid_argument);
    CHECK_THROWS_AS(cmd_verify(small_config(400), 3, 9, 50, {3}), std::invalid_argument);
}

TEST_CASE("commands share a cache directory") {
    const auto dir = scratch_dir("cmd-cache");
    RunConfig cfg = small_config(300);
    cfg.cache_path = dir;
    const Report first = cmd_verify(cfg, 4, 9, 100, {});
    CHECK(std::filesystem::exists(dir / "table-c4.txt"));
    const RankClassTable t = load_table(dir / "table-c4.txt");
    CHECK(t.n_max() == 300);
    CHECK(t == rank_class_table(300, 4));
    const Report second = cmd_verify(cfg, 4, 9, 100, {});
    for (size_t i = 0; i < first.records.size(); ++i)
        CHECK(first.records[i].at("certificate") == second.records[i].at("certificate"));
    CHECK(table_for(cfg, 4, 300) == t);
    std::filesystem::remove_all(dir);
}

TEST_CASE("command line exit codes") {
    const char* cli = std::getenv("OVRANK_CLI");
    if (!cli) {
        MESSAGE("OVRANK_CLI not set; skipping");
        return;
    }
    const auto dir = scratch_dir("cli");
    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(cli) + " " + args + " > " + (dir / "out.txt").string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto output = [&] {
        std::ifstream in(dir / "out.txt");
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(run("count --n 4") == 0);
    CHECK(output().find("14") != std::string::npos);
    CHECK(run("count --n 3 --c 3 --a 0 --format json-lines") == 0);
    const Report rep = Report::from_json_lines(output());
    CHECK(record(rep, "nbar").at("value") == "4");
    CHECK(run("verify --c 3 --n-lo 9 --n-hi 60 --n-max 200") == 0);
    CHECK(run("verify --c 3 --n-lo 1 --n-hi 8 --n-max 200 --report " + (dir / "rep.txt").string()) == 0);
    CHECK(std::filesystem::file_size(dir / "rep.txt") > 0);
    CHECK(run("count") == 2);
    CHECK(run("count --n 5000") == 2);
    CHECK(run("bogus") == 2);
    CHECK(run("count --n 4 --format xml") == 2);
    CHECK(run("asymptotic --a 1 --c 3 --n 1600 --precision 32") == 2);
    const std::string env_cmd = "OVRANK_N=4 " + std::string(cli) + " count > " + (dir / "out.txt").string() + " 2>&1";
    CHECK(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
    CHECK(output().find("14") != std::string::npos);
    std::filesystem::remove_all(dir);
}
