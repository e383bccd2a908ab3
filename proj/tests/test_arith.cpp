#include <doctest.h>

#include "wexp/arith.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace wexp;

TEST_CASE("sieve spot values") {
    FuncTable tau = sieve(FuncKind::Tau, 100);
    CHECK(tau.at(1) == 1);
    CHECK(tau.at(12) == 6);
    CHECK(tau.at(97) == 2);

    FuncTable mu = sieve(FuncKind::Mu, 100);
    CHECK(mu.at(1) == 1);
    CHECK(mu.at(30) == -1);
    CHECK(mu.at(12) == 0);

    FuncTable musq = sieve(FuncKind::MuSq, 100);
    CHECK(musq.at(30) == 1);
    CHECK(musq.at(12) == 0);

    FuncTable nu = sieve(FuncKind::Nu, 100);
    CHECK(nu.at(36) == 1);   // mu(6)
    CHECK(nu.at(4) == -1);   // mu(2)
    CHECK(nu.at(8) == 0);    // not a square
    CHECK(nu.at(1) == 1);

    FuncTable tau3 = sieve(FuncKind::Tau3, 100);
    CHECK(tau3.at(8) == 10);   // (3+1)(3+2)/2
    CHECK(tau3.at(6) == 9);    // 3 * 3
    CHECK(tau3.at(1) == 1);
}

TEST_CASE("prime log weights") {
    FuncTable pl = sieve(FuncKind::PrimeLog, 100);
    CHECK(pl.weight(7) == doctest::Approx(std::log(7.0)));
    CHECK(pl.weight(6) == 0.0);
    CHECK(pl.weight(1) == 0.0);
}

TEST_CASE("dirichlet ring identities at n_max = 10^4") {
    const std::uint32_t M = 10000;
    IntTable one = to_int_table(sieve(FuncKind::One, M));
    IntTable tau = to_int_table(sieve(FuncKind::Tau, M));
    IntTable mu = to_int_table(sieve(FuncKind::Mu, M));
    IntTable nu = to_int_table(sieve(FuncKind::Nu, M));
    IntTable musq = to_int_table(sieve(FuncKind::MuSq, M));
    IntTable tau3 = to_int_table(sieve(FuncKind::Tau3, M));

    CHECK(dirichlet_convolve(one, one).v == tau.v);
    CHECK(dirichlet_convolve(one, nu).v == musq.v);
    CHECK(dirichlet_convolve(tau, one).v == tau3.v);
    CHECK(dirichlet_convolve(mu, one).v == identity_table(M).v);
    CHECK(dirichlet_inverse(one).v == mu.v);
    // inverse is involutive
    CHECK(dirichlet_inverse(mu).v == one.v);
}

TEST_CASE("convolution respects commutativity") {
    IntTable a = to_int_table(sieve(FuncKind::Tau, 500));
    IntTable b = to_int_table(sieve(FuncKind::Mu, 500));
    CHECK(dirichlet_convolve(a, b).v == dirichlet_convolve(b, a).v);
}

TEST_CASE("primorial is a factor list, never a product") {
    Primorial p = primorial(11);
    CHECK(p.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(primorial(2).primes.empty());
}

TEST_CASE("budget rejection") {
    CHECK_THROWS_AS(sieve(FuncKind::Tau, 200'000'000), BudgetError);
    CHECK_THROWS_AS(sieve(FuncKind::Tau, 1000, /*budget=*/10), BudgetError);
}

TEST_CASE("table dump/load round trip") {
    FuncTable t = sieve(FuncKind::Mu, 1000);
    std::string path =
        (std::filesystem::temp_directory_path() / "wexp_mu_1000.tbl").string();
    dump_table(t, path);
    FuncTable u = load_table(path);
    CHECK(u.kind() == FuncKind::Mu);
    CHECK(u.n_max() == 1000);
    for (std::uint32_t n = 1; n <= 1000; ++n) CHECK(u.at(n) == t.at(n));
    std::filesystem::remove(path);

    FuncTable pl = sieve(FuncKind::PrimeLog, 500);
    std::string path2 =
        (std::filesystem::temp_directory_path() / "wexp_pl_500.tbl").string();
    dump_table(pl, path2);
    FuncTable pl2 = load_table(path2);
    CHECK(pl2.weight(499) == pl.weight(499));
    std::filesystem::remove(path2);
}

TEST_CASE("auxiliary sieves agree with definitions") {
    auto isp = sieve_is_prime(200);
    auto om = sieve_omega(200);
    FuncTable musq = sieve(FuncKind::MuSq, 200);
    int primes = 0;
    for (int n = 2; n <= 200; ++n) {
        // brute force
        bool p = true;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) p = false;
        CHECK((bool)isp[n] == p);
        primes += p;
        int w = 0;
        int m = n;
        for (int d = 2; d <= m; ++d)
            if (m % d == 0) {
                ++w;
                while (m % d == 0) m /= d;
            }
        CHECK((int)om[n] == w);
    }
    CHECK(primes == 46);
    CHECK(musq.at(1) == 1);
}
