#include <functional>
#include <random>

#include "doctest.h"
#include "primlat/intmat.hpp"
#include "primlat/normal_forms.hpp"
#include "primlat/primitive.hpp"

using namespace primlat;

namespace {

// Independent oracle: elementary divisors through determinantal divisors
// D_j = gcd of all j x j minors, d_j = D_j / D_{j-1}.
mpz_class minor_gcd_oracle(const IntMat& a, int order) {
    std::vector<int> rsel(order), csel(order);
    mpz_class g = 0;
    std::function<void(int, int)> loop_cols = [&](int pos, int start) {
        if (pos == order) {
            IntMat sub(order, order);
            for (int i = 0; i < order; ++i)
                for (int j = 0; j < order; ++j) sub.at(i, j) = a.at(rsel[i], csel[j]);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), sub.det().get_mpz_t());
            return;
        }
        for (int c = start; c < a.cols(); ++c) {
            csel[pos] = c;
            loop_cols(pos + 1, c + 1);
        }
    };
    std::function<void(int, int)> loop_rows = [&](int pos, int start) {
        if (pos == order) {
            loop_cols(0, 0);
            return;
        }
        for (int r = start; r < a.rows(); ++r) {
            rsel[pos] = r;
            loop_rows(pos + 1, r + 1);
        }
    };
    loop_rows(0, 0);
    return g;
}

std::vector<mpz_class> snf_oracle(const IntMat& a) {
    int r = std::min(a.rows(), a.cols());
    std::vector<mpz_class> d(r);
    mpz_class prev = 1;
    for (int j = 1; j <= r; ++j) {
        mpz_class dj = minor_gcd_oracle(a, j);
        d[j - 1] = (prev == 0) ? mpz_class(0) : mpz_class(dj / prev);
        prev = dj;
    }
    return d;
}

// cofactor-expansion determinant
mpz_class det_oracle(const IntMat& a) {
    int n = a.rows();
    if (n == 1) return a.at(0, 0);
    mpz_class acc = 0;
    for (int j = 0; j < n; ++j) {
        IntMat sub(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = a.at(i, c);
            }
        }
        mpz_class term = a.at(0, j) * det_oracle(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

IntMat random_mat(std::mt19937_64& rng, int r, int c, int lo, int hi) {
    IntMat m(r, c);
    std::uniform_int_distribution<int> d(lo, hi);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

// product of random elementary matrices, det +1
IntMat random_unimodular(std::mt19937_64& rng, int n, int steps = 12) {
    IntMat m = IntMat::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        mpz_class q = coef(rng);
        for (int c = 0; c < n; ++c) m.at(i, c) += q * m.at(j, c);
    }
    return m;
}

}  // namespace

TEST_CASE("snf basics") {
    auto r1 = snf(IntMat::from_rows({{2, 0}, {0, 4}}));
    CHECK(r1.divisors == std::vector<mpz_class>{2, 4});

    auto r2 = snf(IntMat::from_rows({{2, 3}, {4, 5}}));
    CHECK(r2.divisors == snf_oracle(IntMat::from_rows({{2, 3}, {4, 5}})));
    CHECK(r2.divisors == std::vector<mpz_class>{1, 2});

    auto r3 = snf(IntMat::from_rows({{0}}));
    CHECK(r3.divisors == std::vector<mpz_class>{0});
}

TEST_CASE("snf transform identities and invariance") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + int(rng() % 3), c = 1 + int(rng() % 3);
        IntMat a = random_mat(rng, r, c, -9, 9);
        SnfResult s = snf(a);
        IntMat d(r, c);
        for (std::size_t t = 0; t < s.divisors.size(); ++t) d.at(int(t), int(t)) = s.divisors[t];
        CHECK(s.left * a * s.right == d);
        mpz_class dl = s.left.det(), dr = s.right.det();
        CHECK((dl == 1 || dl == -1));
        CHECK((dr == 1 || dr == -1));
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
            CHECK(s.divisors[i] >= 0);
            if (s.divisors[i] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
        }
        CHECK(s.divisors == snf_oracle(a));

        // unimodular invariance
        IntMat p = random_unimodular(rng, r), q = random_unimodular(rng, c);
        CHECK(snf_divisors(p * a * q) == s.divisors);
    }
}

TEST_CASE("hnf") {
    auto r1 = hnf(IntMat::identity(2));
    CHECK(r1.h == IntMat::identity(2));

    auto r2 = hnf(IntMat::from_rows({{2, 3}}));
    CHECK(r2.h == IntMat::from_rows({{1, 0}}));
    CHECK(IntMat::from_rows({{2, 3}}) * r2.u == r2.h);

    auto r3 = hnf(IntMat::from_rows({{2, 0}, {0, 4}}));
    CHECK(r3.h == IntMat::from_rows({{2, 0}, {0, 4}}));

    CHECK_THROWS_AS(hnf(IntMat::from_rows({{1, 1}, {1, 1}})), RankDeficient);

    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + int(rng() % 3);
        int c = r + int(rng() % 3);
        IntMat a = random_mat(rng, r, c, -9, 9);
        HnfResult h;
        try {
            h = hnf(a);
        } catch (const RankDeficient&) {
            continue;
        }
        CHECK(a * h.u == h.h);
        CHECK(h.u * h.u_inv == IntMat::identity(c));
        mpz_class du = h.u.det();
        CHECK(du == h.u_det);
        // canonical shape
        for (int i = 0; i < r; ++i) {
            CHECK(h.h.at(i, i) > 0);
            for (int j = i + 1; j < c; ++j) CHECK(h.h.at(i, j) == 0);
            for (int j = 0; j < i; ++j) {
                CHECK(h.h.at(i, j) >= 0);
                CHECK(h.h.at(i, j) < h.h.at(i, i));
            }
        }
        // idempotence on square nonsingular results
        if (r == c) CHECK(hnf(h.h).h == h.h);
    }
}

TEST_CASE("mod_right_inverse") {
    auto v1 = mod_right_inverse(IntMat::from_rows({{1, 1}, {0, 1}}), 5);
    REQUIRE(v1.has_value());
    CHECK(*v1 == IntMat::from_rows({{1, 4}, {0, 1}}));

    auto v2 = mod_right_inverse(IntMat::from_rows({{2}}), 5);
    REQUIRE(v2.has_value());
    CHECK(*v2 == IntMat::from_rows({{3}}));

    CHECK(!mod_right_inverse(IntMat::from_rows({{2, 0}, {0, 2}}), 4).has_value());

    // existence iff all SNF divisors coprime to k, exhaustively at small sizes
    for (long long k = 1; k <= 8; ++k) {
        for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {1, 3}, {1, 4}, {2, 1}}) {
            std::uint64_t total = 1;
            for (int i = 0; i < n * m; ++i) total *= std::uint64_t(k);
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                IntMat u(n, m);
                std::uint64_t rest = idx;
                for (int t = n * m - 1; t >= 0; --t) {
                    u.at(t / m, t % m) = zz((long long)(rest % std::uint64_t(k)));
                    rest /= std::uint64_t(k);
                }
                auto inv = mod_right_inverse(u, zz(k));
                bool coprime = true;
                for (const auto& d : snf_divisors(u)) {
                    if (gcd(d, zz(k)) != 1) coprime = false;
                }
                if (n > m) coprime = false;
                CHECK(inv.has_value() == coprime);
                if (inv) {
                    IntMat prod = (u * *inv).reduced_mod(zz(k));
                    CHECK(prod == IntMat::identity(n).reduced_mod(zz(k)));
                }
            }
        }
    }
}

TEST_CASE("integer_kernel") {
    auto b1 = integer_kernel(IntMat::from_rows({{0, 0, 1}}));
    CHECK(gram(b1).det() == 1);

    auto b2 = integer_kernel(IntMat::from_rows({{1, 1, 1}}));
    CHECK(gram(b2).det() == 3);

    auto b3 = integer_kernel(IntMat::from_rows({{1, 0, 3}}));
    CHECK(gram(b3).det() == 10);

    CHECK_THROWS_AS(integer_kernel(IntMat::zeros(1, 3)), ZeroVector);

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + int(rng() % 3);
        IntMat v = random_mat(rng, 1, d, -9, 9);
        if (v.is_zero()) continue;
        IntMat b = integer_kernel(v);
        CHECK((v * b).is_zero());
        // saturation: all elementary divisors of the basis are 1
        for (const auto& dv : snf_divisors(b)) CHECK(dv == 1);
    }
}

TEST_CASE("unimodular_completion") {
    IntMat bottom = IntMat::from_rows({{1, 0, 3}});
    IntMat delta = unimodular_completion(bottom);
    CHECK(delta.det() == 1);
    CHECK(delta.block(2, 0, 1, 3) == bottom);
    // the reference completion from the 2x2 determinant construction is
    // also valid; check it satisfies the same contract
    IntMat ref = IntMat::from_rows({{1, 0, 2}, {0, 1, 0}, {1, 0, 3}});
    CHECK(ref.det() == 1);
    CHECK(ref.block(2, 0, 1, 3) == bottom);

    IntMat e3 = IntMat::from_rows({{0, 0, 1}});
    IntMat d2 = unimodular_completion(e3);
    CHECK(d2.det() == 1);
    CHECK(d2.block(2, 0, 1, 3) == e3);

    CHECK_THROWS_AS(unimodular_completion(IntMat::from_rows({{2, 0, 4}})), NotCompletable);

    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 150) {
        int n = 1 + int(rng() % 2);
        int d = n + 1 + int(rng() % 3);
        IntMat b = random_mat(rng, n, d, -9, 9);
        std::vector<mpz_class> divs;
        try {
            divs = snf_divisors(b);
        } catch (...) {
            continue;
        }
        bool prim = true;
        for (const auto& dv : divs) prim = prim && (dv == 1);
        if (!prim) {
            CHECK_THROWS_AS(unimodular_completion(b), NotCompletable);
            continue;
        }
        IntMat delta2 = unimodular_completion(b);
        CHECK(delta2.det() == 1);
        CHECK(delta2.block(d - n, 0, n, d) == b);
        // determinism
        CHECK(unimodular_completion(b) == delta2);
        ++done;
    }
}

TEST_CASE("det") {
    CHECK(IntMat::from_rows({{3, 0, -2}, {0, 1, 0}, {-1, 0, 1}}).det() == 1);
    CHECK(IntMat::identity(4).det() == 1);
    IntMat a = IntMat::from_rows({{2, 3}, {4, 5}});
    CHECK(a.det() == det_oracle(a));
    CHECK(a.det() == -2);
    CHECK_THROWS_AS(IntMat::from_rows({{1, 2}}).det(), NotSquare);

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 4);
        IntMat m = random_mat(rng, n, n, -9, 9);
        CHECK(m.det() == det_oracle(m));
    }
}

TEST_CASE("exact solve and unimodular inverse") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + int(rng() % 4);
        IntMat u = random_unimodular(rng, n);
        IntMat inv = inverse_unimodular(u);
        CHECK(u * inv == IntMat::identity(n));
    }
    CHECK_THROWS_AS(inverse_unimodular(IntMat::from_rows({{2, 0}, {0, 1}})), NotUnimodular);
}
