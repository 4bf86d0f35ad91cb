#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qbai/oracle.hpp"
#include "qbai/rng.hpp"

using namespace qbai;

TEST_CASE("make_instance records the unique best arm") {
    CHECK(make_instance({0.5, 0.3}).best == 0);
    CHECK(make_instance({0.3, 0.9, 0.1}).best == 1);
    CHECK_THROWS_AS(make_instance({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({1.2, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({-0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance({}), std::invalid_argument);
}

TEST_CASE("hardness on known gaps") {
    GapProfile g = hardness(make_instance({0.9, 0.4}));
    CHECK(g.delta2 == doctest::Approx(0.5));
    CHECK(g.H == doctest::Approx(4.0));

    CHECK(hardness(make_instance({0.9, 0.4, 0.4})).H == doctest::Approx(8.0));
    CHECK(hardness(make_instance({0.6, 0.5, 0.4, 0.3})).H ==
          doctest::Approx(136.11111111111111));
}

TEST_CASE("hardness is permutation invariant and bounded") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        int n = 2 + static_cast<int>(rng.uniform_int(8));
        std::vector<double> p(n);
        for (auto& v : p) v = rng.uniform(0.05, 0.95);
        int bi = 0;
        for (int i = 1; i < n; ++i)
            if (p[i] > p[bi]) bi = i;
        bool uniq = true;
        for (int i = 0; i < n; ++i)
            if (i != bi && p[i] == p[bi]) uniq = false;
        if (!uniq) continue;

        GapProfile g = hardness(make_instance(p));
        std::swap(p[0], p[n - 1]);
        GapProfile gp = hardness(make_instance(p));
        CHECK(g.H == doctest::Approx(gp.H));
        CHECK(g.H >= 1.0 / (g.delta2 * g.delta2) - 1e-9);
        CHECK(g.H <= (n - 1) / (g.delta2 * g.delta2) + 1e-9);
    }
}

TEST_CASE("append_perfect_arm prepends bias 1 at index 0") {
    BanditInstance ext = append_perfect_arm(make_instance({0.5, 0.3}));
    REQUIRE(ext.n_arms() == 3);
    CHECK(ext.p[0] == 1.0);
    CHECK(ext.p[1] == 0.5);
    CHECK(ext.p[2] == 0.3);
    CHECK(ext.best == 0);
    CHECK(ext.has_synthetic_arm);
    CHECK_THROWS_AS(append_perfect_arm(ext), std::invalid_argument);
    CHECK_THROWS_AS(append_perfect_arm(BanditInstance{}), std::invalid_argument);
}

TEST_CASE("coin amplitudes") {
    CHECK(coin_amplitudes(0.0) == std::pair{1.0, 0.0});
    CHECK(coin_amplitudes(1.0) == std::pair{0.0, 1.0});
    auto [a0, a1] = coin_amplitudes(0.5);
    CHECK(a0 == doctest::Approx(0.70710678).epsilon(1e-7));
    CHECK(a1 == doctest::Approx(0.70710678).epsilon(1e-7));
    for (double p : {0.1, 0.37, 0.99}) {
        auto [b0, b1] = coin_amplitudes(p);
        CHECK(b0 * b0 + b1 * b1 == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("load_instance parses and validates JSON") {
    const char* path = "test_instance.json";
    {
        std::ofstream f(path);
        f << "{\"p\": [0.3, 0.9, 0.1]}";
    }
    BanditInstance inst = load_instance(path);
    CHECK(inst.best == 1);
    CHECK(inst.p.size() == 3);
    {
        std::ofstream f(path);
        f << "{\"p\": [0.5, 0.5]}";
    }
    CHECK_THROWS(load_instance(path));
    CHECK_THROWS(load_instance("no_such_file.json"));
    std::remove(path);
}
