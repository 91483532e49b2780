#include "doctest.h"

#include <numeric>
#include <random>

#include "vdf/fq.hpp"

using namespace vdf;

namespace {

FqElement random_elem(std::mt19937_64& rng, int64_t p, int m) {
    std::vector<int64_t> c(m);
    for (auto& x : c) x = static_cast<int64_t>(rng() % p);
    return fq_make(p, m, std::move(c));
}

} // namespace

TEST_CASE("defining polynomials are the expected deterministic ones") {
    CHECK(fq_defining_poly(2, 2) == std::vector<int64_t>{1, 1, 1});
    CHECK(fq_defining_poly(2, 3) == std::vector<int64_t>{1, 1, 0, 1});
    CHECK(fq_defining_poly(3, 2) == std::vector<int64_t>{1, 0, 1});
    // repeated queries give the identical polynomial
    CHECK(fq_defining_poly(2, 4) == fq_defining_poly(2, 4));
}

TEST_CASE("fq_make basics") {
    FqElement one = fq_make(2, 1, {1});
    CHECK(fq_equal(one, fq_one(2)));

    FqElement w = fq_make(2, 2, {0, 1});
    CHECK(!fq_equal(w, fq_zero(2)));
    CHECK(!fq_equal(w, fq_one(2)));

    // embedded prime-field element equals its image
    CHECK(fq_equal(fq_make(3, 2, {2, 0}), fq_make(3, 1, {2})));

    CHECK_THROWS_AS(fq_make(4, 1, {1}), error);
    CHECK_THROWS_AS(fq_make(2, 2, {1}), error);
}

TEST_CASE("frobenius") {
    for (int64_t v = 0; v < 2; ++v) {
        FqElement x = fq_from_int(2, v);
        CHECK(fq_equal(fq_frobenius(x), x));
    }

    // w^2 = w + 1 in F_4
    FqElement w = fq_generator(2, 2);
    CHECK(fq_equal(fq_frobenius(w), fq_add(w, fq_one(2))));
    CHECK(fq_equal(fq_mul(w, w), fq_frobenius(w)));

    std::mt19937_64 rng(7);
    for (auto [p, m] : {std::pair<int64_t, int>{2, 4}, {3, 3}, {5, 2}}) {
        for (int i = 0; i < 50; ++i) {
            FqElement x = random_elem(rng, p, m);
            FqElement y = x;
            for (int k = 0; k < m; ++k) y = fq_frobenius(y);
            CHECK(fq_equal(y, x));
        }
    }
}

TEST_CASE("frobenius is a field automorphism") {
    std::mt19937_64 rng(11);
    for (auto [p, m] : {std::pair<int64_t, int>{2, 2}, {3, 2}, {5, 2}, {2, 4}}) {
        for (int i = 0; i < 200; ++i) {
            FqElement x = random_elem(rng, p, m), y = random_elem(rng, p, m);
            CHECK(fq_equal(fq_frobenius(fq_add(x, y)), fq_add(fq_frobenius(x), fq_frobenius(y))));
            CHECK(fq_equal(fq_frobenius(fq_mul(x, y)), fq_mul(fq_frobenius(x), fq_frobenius(y))));
        }
    }
}

TEST_CASE("pth root") {
    CHECK(fq_equal(fq_pth_root(fq_zero(2, 2)), fq_zero(2, 2)));
    CHECK(fq_equal(fq_pth_root(fq_one(3, 2)), fq_one(3, 2)));

    std::mt19937_64 rng(13);
    for (auto [p, m] : {std::pair<int64_t, int>{2, 3}, {3, 2}, {5, 2}}) {
        for (int i = 0; i < 100; ++i) {
            FqElement x = random_elem(rng, p, m);
            CHECK(fq_equal(fq_pth_root(fq_frobenius(x)), x));
            CHECK(fq_equal(fq_pow(fq_pth_root(x), static_cast<uint64_t>(p)), x));
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(17);
    for (auto [p, m] : {std::pair<int64_t, int>{2, 1}, {2, 2}, {3, 2}, {5, 1}}) {
        for (int i = 0; i < 1000; ++i) {
            FqElement a = random_elem(rng, p, m), b = random_elem(rng, p, m),
                      c = random_elem(rng, p, m);
            CHECK(fq_equal(fq_add(fq_add(a, b), c), fq_add(a, fq_add(b, c))));
            CHECK(fq_equal(fq_mul(fq_mul(a, b), c), fq_mul(a, fq_mul(b, c))));
            CHECK(fq_equal(fq_mul(a, fq_add(b, c)), fq_add(fq_mul(a, b), fq_mul(a, c))));
            CHECK(fq_equal(fq_add(a, b), fq_add(b, a)));
            CHECK(fq_equal(fq_mul(a, b), fq_mul(b, a)));
            CHECK(fq_equal(fq_add(a, fq_neg(a)), fq_zero(p, m)));
            if (!fq_is_zero(a)) CHECK(fq_equal(fq_mul(a, fq_inv(a)), fq_one(p, m)));
        }
    }
}

TEST_CASE("embedding compatibility across the divisor lattice") {
    for (int64_t p : {2, 3}) {
        std::vector<int> levels = {1, 2, 3, 4, 6, 12};
        for (int m : levels)
            for (int m1 : levels)
                for (int m2 : levels) {
                    if (m1 % m != 0 || m2 % m1 != 0) continue;
                    // check on every basis element of level m
                    for (int j = 0; j < m; ++j) {
                        std::vector<int64_t> c(m, 0);
                        c[j] = 1;
                        FqElement x = fq_make(p, m, c);
                        FqElement direct = fq_embed(x, m2);
                        FqElement composed = fq_embed(fq_embed(x, m1), m2);
                        CHECK(fq_equal(direct, composed));
                    }
                }
    }
}

TEST_CASE("embeddings are ring morphisms") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        FqElement x = random_elem(rng, 2, 2), y = random_elem(rng, 2, 2);
        CHECK(fq_equal(fq_embed(fq_add(x, y), 4), fq_add(fq_embed(x, 4), fq_embed(y, 4))));
        CHECK(fq_equal(fq_embed(fq_mul(x, y), 4), fq_mul(fq_embed(x, 4), fq_embed(y, 4))));
    }
    // mixed-level arithmetic joins at the lcm
    FqElement a = fq_generator(2, 2);
    FqElement b = fq_generator(2, 3);
    FqElement s = fq_add(a, b);
    CHECK(s.m == 6);
    CHECK(fq_equal(fq_sub(s, b), a));
}

TEST_CASE("minimize finds the smallest subfield") {
    FqElement two = fq_make(3, 1, {2});
    FqElement emb = fq_embed(two, 4);
    CHECK(fq_minimal_level(emb) == 1);
    FqElement red = fq_minimize(emb);
    CHECK(red.m == 1);
    CHECK(fq_equal(red, two));

    FqElement w = fq_generator(2, 2);
    CHECK(fq_minimal_level(fq_embed(w, 6)) == 2);
    CHECK(fq_equal(fq_minimize(fq_embed(w, 6)), w));
}

TEST_CASE("solve_additive_equation") {
    // 1 + x = 0 over F_2
    FqElement r = solve_additive_equation({fq_one(2)}, 4);
    CHECK(r.m == 1);
    CHECK(fq_equal(r, fq_one(2)));

    // 1 + x + x^2 = 0 over the F_2 tower: root is the F_4 generator
    FqElement w = solve_additive_equation({fq_one(2), fq_one(2)}, 8);
    CHECK(w.m == 2);
    CHECK(fq_is_zero(fq_add(fq_one(2), fq_add(w, fq_mul(w, w)))));

    // solutions satisfy the equation exactly
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FqElement> alphas;
        int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i <= n; ++i) alphas.push_back(random_elem(rng, 2, 2));
        bool nonzero = false;
        for (auto& a : alphas) nonzero = nonzero || !fq_is_zero(a);
        if (!nonzero) continue;
        auto x = try_solve_additive_equation(alphas, 24);
        if (!x) continue;
        FqElement acc = fq_one(2);
        FqElement pw = *x;
        for (const auto& a : alphas) {
            acc = fq_add(acc, fq_mul(a, pw));
            pw = fq_frobenius(pw);
        }
        CHECK(fq_is_zero(acc));
    }
}

TEST_CASE("solver agrees with brute force per level") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FqElement> alphas = {random_elem(rng, 2, 2), random_elem(rng, 2, 2)};
        if (fq_is_zero(alphas[0]) && fq_is_zero(alphas[1])) continue;
        for (int m : {2, 4, 6}) {
            uint64_t q = 1;
            for (int i = 0; i < m; ++i) q *= 2;
            if (q > 256) continue;
            bool brute_found = false;
            FqElement witness = fq_zero(2, m);
            for (uint64_t idx = 0; idx < q; ++idx) {
                FqElement x = fq_element_from_index(2, m, idx);
                FqElement acc = fq_one(2, m);
                FqElement pw = x;
                for (const auto& a : alphas) {
                    acc = fq_add(acc, fq_mul(fq_embed(a, m), pw));
                    pw = fq_frobenius(pw);
                }
                if (fq_is_zero(acc)) {
                    brute_found = true;
                    witness = x;
                    break;
                }
            }
            auto solved = solve_additive_at_level(alphas, m);
            CHECK(solved.has_value() == brute_found);
            if (solved) {
                FqElement acc = fq_one(2, m);
                FqElement pw = *solved;
                for (const auto& a : alphas) {
                    acc = fq_add(acc, fq_mul(fq_embed(a, m), pw));
                    pw = fq_frobenius(pw);
                }
                CHECK(fq_is_zero(acc));
            }
        }
    }
}

TEST_CASE("enumeration is deterministic and colexicographic") {
    FqEnumerator en(2);
    CHECK(fq_equal(en.next(), fq_zero(2)));
    CHECK(fq_equal(en.next(), fq_one(2)));
    FqElement third = en.next(); // first element of level 2
    CHECK(third.m == 2);
    CHECK(third.coeffs == std::vector<int64_t>{0, 0});
    FqElement fourth = en.next();
    CHECK(fourth.coeffs == std::vector<int64_t>{1, 0});
}
