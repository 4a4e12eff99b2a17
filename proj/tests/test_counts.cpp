#include "ovrank/counts.hpp"
#include "ovrank/table_cache.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <omp.h>

#include <random>
#include <sstream>

using namespace ovrank;

namespace {

std::vector<BigCount> fold(const std::map<long, mpz_class>& dist, int c) {
    std::vector<BigCount> out(c, 0);
    for (const auto& [m, w] : dist) out[((m % c) + c) % c] += w;
    return out;
}

}  // namespace

TEST_CASE("pbar small values") {
    CHECK(pbar_series(0) == std::vector<BigCount>{1});
    CHECK(pbar_series(4) == std::vector<BigCount>{1, 2, 4, 8, 14});
    CHECK(pbar_series_theta(4) == std::vector<BigCount>{1, 2, 4, 8, 14});
}

TEST_CASE("pbar routes agree with the convolution oracle") {
    const auto euler = pbar_series(600);
    const auto theta = pbar_series_theta(600);
    const auto conv = oracle::pbar_by_convolution(600);
    CHECK(euler == conv);
    CHECK(theta == conv);
}

TEST_CASE("weighted partition enumeration matches overpartition enumeration") {
    for (int n = 0; n <= 16; ++n) {
        const auto mine = brute_force_rank_counts(n);
        const auto ref = oracle::overpartition_ranks(n);
        std::map<long, mpz_class> got(mine.entries.begin(), mine.entries.end());
        CHECK_MESSAGE(got == ref, "n = " << n);
    }
    const auto d2 = brute_force_rank_counts(2);
    CHECK(d2.at(1) == 2);
    CHECK(d2.at(-1) == 2);
    CHECK(d2.at(0) == 0);
    CHECK(brute_force_rank_counts(0).at(0) == 1);
    CHECK(brute_force_rank_counts(4).total() == 14);
    CHECK_THROWS(brute_force_rank_counts(31));
}

TEST_CASE("DP classes equal brute-force classes for n <= 25, c = 2..8") {
    for (int c = 2; c <= 8; ++c) {
        const auto table = rank_class_table(25, c);
        for (int n = 0; n <= 25; ++n) {
            const auto ref = brute_force_rank_counts(n).fold(c);
            const auto row = table.row(n);
            CHECK_MESSAGE(std::vector<BigCount>(row.begin(), row.end()) == ref, "c = " << c << " n = " << n);
        }
    }
}

TEST_CASE("DP classes equal the overpartition oracle for n <= 14") {
    for (int c = 2; c <= 6; ++c) {
        const auto table = rank_class_table(14, c);
        for (int n = 0; n <= 14; ++n) {
            const auto row = table.row(n);
            CHECK(std::vector<BigCount>(row.begin(), row.end()) == fold(oracle::overpartition_ranks(n), c));
        }
    }
}

TEST_CASE("table examples") {
    const auto t3 = rank_class_table(3, 3);
    CHECK(t3.at(3, 0) == 4);
    CHECK(t3.at(3, 1) == 2);
    CHECK(t3.at(3, 2) == 2);
    for (int c = 3; c <= 7; ++c) {
        const auto t = rank_class_table(1, c);
        CHECK(t.at(1, 0) == 2);
        CHECK(t.at(0, 0) == 1);
        for (int r = 1; r < c; ++r) {
            CHECK(t.at(1, r) == 0);
            CHECK(t.at(0, r) == 0);
        }
    }
    CHECK_THROWS(t3.at(4, 0));
    CHECK_THROWS(t3.at(0, 3));
    CHECK_THROWS(rank_class_table(10, 1));
}

TEST_CASE("rank symmetry at oracle scale") {
    for (int n = 0; n <= 25; ++n) {
        const auto d = brute_force_rank_counts(n);
        for (const auto& [m, w] : d.entries) CHECK(d.at(-m) == w);
    }
    const auto t = rank_class_table(200, 7);
    for (int n = 0; n <= 200; ++n)
        for (int r = 0; r < 7; ++r) CHECK(t.at(n, r) == t.at(n, (7 - r) % 7));
}

TEST_CASE("row sums equal pbar") {
    const auto p = pbar_series(1200);
    for (int c : {3, 4, 5, 9}) {
        const auto t = rank_class_table(1200, c);
        for (int n = 0; n <= 1200; ++n) REQUIRE(t.row_sum(n) == p[n]);
    }
}

TEST_CASE("parallel and serial tables agree") {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    for (int c : {2, 3, 5, 8}) {
        const auto par = rank_class_table(500, c);
        const auto ser = rank_class_table_serial(500, c);
        CHECK(par == ser);
        CHECK(par.checksum() == ser.checksum());
    }
    omp_set_num_threads(saved);
}

TEST_CASE("a_exact examples and conjugacy") {
    const auto t = rank_class_table(400, 5);
    const auto t3 = rank_class_table(10, 3);
    const HPComplex v = a_exact(1, 3, 2, t3);
    CHECK(abs(v.re + 2.0) < HPReal(1e-40, kDefaultPrecision));
    CHECK(abs(v.im) < HPReal(1e-40, kDefaultPrecision));
    CHECK(abs(a_exact(1, 3, 0, t3).re - 1.0) < HPReal(1e-40, kDefaultPrecision));
    const auto p = pbar_series(400);
    CHECK(a_exact(0, 5, 400, t).re == HPReal(p[400], kDefaultPrecision));
    for (int n : {10, 123, 400}) {
        for (int j = 1; j < 5; ++j) {
            const HPComplex x = a_exact(j, 5, n, t), y = a_exact(5 - j, 5, n, t);
            const HPReal scale = HPReal(p[n], kDefaultPrecision);
            CHECK(abs(x.re - y.re) / scale < HPReal(1e-40, kDefaultPrecision));
            CHECK(abs(x.im + y.im) / scale < HPReal(1e-40, kDefaultPrecision));
        }
    }
}

TEST_CASE("orthogonality reconstruction") {
    const auto t3 = rank_class_table(20, 3);
    const auto r = verify_orthogonality(0, 3, 2, t3);
    CHECK(r.holds);
    CHECK(r.reconstructed == 0);
    for (int c = 2; c <= 6; ++c)
        for (int a = 0; a < c; ++a) CHECK(verify_orthogonality(a, c, 0, rank_class_table(0, c)).holds);
    const auto t4 = rank_class_table(60, 4);
    const auto p = oracle::pbar_by_convolution(60);
    for (int n = 0; n <= 60; ++n)
        for (int a = 0; a < 4; ++a) CHECK(verify_orthogonality(a, 4, n, t4, p).holds);
    CHECK(verify_orthogonality(1, 4, 20, t4));
    const auto t7 = rank_class_table(80, 7);
    for (int n = 0; n <= 80; n += 7)
        for (int a = 0; a < 7; ++a) CHECK(verify_orthogonality(a, 7, n, t7).holds);
}

TEST_CASE("table cache round trip") {
    const auto t = rank_class_table(400, 4);
    std::stringstream ss;
    write_table(ss, t);
    const auto back = read_table(ss);
    CHECK(back == t);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick_n(0, 400), pick_r(0, 3);
    const auto fresh = rank_class_table_serial(400, 4);
    for (int i = 0; i < 50; ++i) {
        const int n = pick_n(rng), r = pick_r(rng);
        CHECK(back.at(n, r) == fresh.at(n, r));
    }
}

TEST_CASE("table cache rejects corruption") {
    const auto t = rank_class_table(30, 3);
    std::stringstream ss;
    write_table(ss, t);
    std::string text = ss.str();

    std::string bad_count = text;
    const auto pos = bad_count.find("\n10 0 ");
    REQUIRE(pos != std::string::npos);
    bad_count[pos + 6] = bad_count[pos + 6] == '9' ? '8' : '9';
    std::stringstream s1(bad_count);
    CHECK_THROWS_AS(read_table(s1), std::runtime_error);

    std::string bad_sum = text;
    const auto cpos = bad_sum.find("crc32=");
    bad_sum[cpos + 6] = bad_sum[cpos + 6] == '0' ? '1' : '0';
    std::stringstream s2(bad_sum);
    CHECK_THROWS_AS(read_table(s2), std::runtime_error);

    std::stringstream s3(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_table(s3), std::runtime_error);

    std::stringstream s4("ovrank-table format_version=9 c=3 n_max=0\n");
    CHECK_THROWS_AS(read_table(s4), std::runtime_error);
}

TEST_CASE("cached_table extends a short cache") {
    const auto dir = std::filesystem::temp_directory_path() / "ovrank-test-cache";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto file = dir / "t.txt";
    const auto small = cached_table(file, 50, 3);
    CHECK(load_table(file).n_max() == 50);
    const auto big = cached_table(file, 120, 3);
    CHECK(big.n_max() == 120);
    CHECK(load_table(file) == big);
    const auto again = cached_table(file, 80, 3);
    CHECK(again.n_max() >= 80);
    CHECK(again.at(50, 1) == small.at(50, 1));
    std::filesystem::remove_all(dir);
}
