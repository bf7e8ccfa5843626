#include <doctest.h>

#include <cmath>
#include <set>
#include <thread>
#include <vector>

#include "ctrlgraph/rng.hpp"

using namespace ctrlgraph;

TEST_SUITE_BEGIN("rng");

TEST_CASE("draws are pure functions of (key, index)") {
    const auto s = rng::derive_stream(42, "stream-a", std::uint64_t{7});
    const auto t = rng::derive_stream(42, "stream-a", std::uint64_t{7});
    for (std::uint64_t i : {0ull, 1ull, 17ull, 1'000'000ull}) CHECK(s.at(i) == t.at(i));
    CHECK(s.at(3) != s.at(4));
}

TEST_CASE("distinct tags give distinct streams") {
    const auto a = rng::derive_stream(42, "alpha");
    const auto b = rng::derive_stream(42, "beta");
    const auto c = rng::derive_stream(43, "alpha");
    CHECK(a.key != b.key);
    CHECK(a.key != c.key);
    int agree = 0;
    for (std::uint64_t i = 0; i < 64; ++i) agree += (a.at(i) == b.at(i));
    CHECK(agree == 0);
}

TEST_CASE("evaluation order does not matter") {
    const auto s = rng::derive_stream(9, "order");
    std::vector<std::uint64_t> forward(100), backward(100);
    for (int i = 0; i < 100; ++i) forward[i] = s.at(i);
    for (int i = 99; i >= 0; --i) backward[i] = s.at(i);
    CHECK(forward == backward);
}

TEST_CASE("uniform moments") {
    const auto s = rng::derive_stream(1234, "uniform-check");
    const int n = 200'000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform_at(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // mean 1/2 +- 4 sigma, variance 1/12
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniform_int covers its range uniformly") {
    const auto s = rng::derive_stream(77, "range");
    std::vector<int> counts(7, 0);
    const int n = 70'000;
    for (int i = 0; i < n; ++i) {
        const long long v = s.uniform_int_at(i, -3, 3);
        REQUIRE(v >= -3);
        REQUIRE(v <= 3);
        ++counts[v + 3];
    }
    for (int c : counts) CHECK(std::abs(c - n / 7) < 5 * std::sqrt(n / 7.0));
}

TEST_CASE("gaussian moments") {
    const auto s = rng::derive_stream(5, "gauss");
    const int n = 100'000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double g = s.gaussian_at(i);
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("concurrent evaluation agrees with serial") {
    const auto s = rng::derive_stream(314, "threads");
    std::vector<std::uint64_t> serial(4096);
    for (std::size_t i = 0; i < serial.size(); ++i) serial[i] = s.at(i);

    std::vector<std::uint64_t> parallel(serial.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < parallel.size(); i += 4) parallel[i] = s.at(i);
        });
    for (auto& th : pool) th.join();
    CHECK(serial == parallel);
}

TEST_SUITE_END();
