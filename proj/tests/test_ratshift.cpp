#include "doctest.h"

#include <random>

#include "vdf/ratshift.hpp"
#include "vdf/residue.hpp"

using namespace vdf;

namespace {

RatShiftElement random_rs(std::mt19937_64& rng) {
    auto rnd_poly = [&](int maxdeg) {
        PolyQ f(1 + rng() % (maxdeg + 1));
        for (auto& c : f) {
            c = mpq_class(static_cast<long>(rng() % 7) - 3, static_cast<long>(1 + rng() % 3));
            c.canonicalize();
        }
        return f;
    };
    PolyQ den;
    do {
        den = rnd_poly(2);
        while (!den.empty() && den.back() == 0) den.pop_back();
    } while (den.empty());
    return rs_make(rnd_poly(3), den);
}

} // namespace

TEST_CASE("canonical form") {
    // (s^2-1)/(s-1) reduces to s+1 with monic denominator
    RatShiftElement a = rs_make(PolyQ{-1, 0, 1}, PolyQ{-1, 1});
    CHECK(a == rs_make(PolyQ{1, 1}, PolyQ{1}));

    RatShiftElement b = rs_make(PolyQ{2}, PolyQ{0, 2}); // 2/(2s) = 1/s
    CHECK(b.den == PolyQ{0, 1});
    CHECK(b.num == PolyQ{1});
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        RatShiftElement a = random_rs(rng), b = random_rs(rng), c = random_rs(rng);
        CHECK(rs_add(rs_add(a, b), c) == rs_add(a, rs_add(b, c)));
        CHECK(rs_mul(rs_mul(a, b), c) == rs_mul(a, rs_mul(b, c)));
        CHECK(rs_mul(a, rs_add(b, c)) == rs_add(rs_mul(a, b), rs_mul(a, c)));
        CHECK(rs_is_zero(rs_add(a, rs_neg(a))));
        if (!rs_is_zero(a)) CHECK(rs_mul(a, rs_inv(a)) == rs_one());
    }
}

TEST_CASE("shift is a field automorphism preserving canonical form and degrees") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        RatShiftElement a = random_rs(rng), b = random_rs(rng);
        CHECK(rs_shift(rs_mul(a, b)) == rs_mul(rs_shift(a), rs_shift(b)));
        CHECK(rs_shift(rs_add(a, b)) == rs_add(rs_shift(a), rs_shift(b)));
        RatShiftElement sh = rs_shift(a);
        CHECK(sh.num.size() == a.num.size());
        CHECK(sh.den.size() == a.den.size());
        if (!sh.den.empty()) CHECK(sh.den.back() == 1);
        CHECK(rs_shift(sh, -1) == a);
    }
    CHECK(rs_shift(rs_s()) == rs_make(PolyQ{1, 1}, PolyQ{1}));
}

TEST_CASE("solve_linear_sigma_shift") {
    // 1 + (-1) x = 0  ->  x = 1
    CHECK(solve_linear_sigma_shift({rs_from_int(-1)}, 2) == rs_one());

    // 1 + x(s) - x(s+1) = 0  ->  x = s
    RatShiftElement x = solve_linear_sigma_shift({rs_one(), rs_from_int(-1)}, 2);
    CHECK(x == rs_s());

    // 1 + x(s) + x(s+1) = 0  ->  x = -1/2
    RatShiftElement y = solve_linear_sigma_shift({rs_one(), rs_one()}, 2);
    CHECK(y == rs_from_rational(mpq_class(-1, 2)));

    // solutions satisfy the equation exactly
    std::mt19937_64 rng(21);
    for (int i = 0; i < 40; ++i) {
        std::vector<RatShiftElement> alphas = {random_rs(rng), random_rs(rng)};
        if (rs_is_zero(alphas[0]) && rs_is_zero(alphas[1])) continue;
        auto sol = try_solve_linear_sigma_shift(alphas, 3);
        if (!sol) continue;
        RatShiftElement lhs = rs_one();
        for (size_t k = 0; k < alphas.size(); ++k)
            lhs = rs_add(lhs, rs_mul(alphas[k], rs_shift(*sol, static_cast<int64_t>(k))));
        CHECK(rs_is_zero(lhs));
    }

    // sigma = identity residue equation without rational solution in bound
    CHECK(!try_solve_linear_sigma_shift({rs_zero(), rs_make(PolyQ{0, 1}, PolyQ{1})}, 1)
               .has_value());
}

TEST_CASE("sigma identity witnesses") {
    DifferenceField qs = DifferenceField::make_ratshift();
    ResidueElement w1 = has_sigma_identity_witness(1, 0, qs, 64);
    CHECK(!qs.equal(qs.sigma(w1), w1));
    ResidueElement w2 = has_sigma_identity_witness(2, 0, qs, 64);
    CHECK(!qs.equal(qs.sigma_iter(w2, 2), w2));

    DifferenceField f2 = DifferenceField::make_fq(2);
    // Frobenius satisfies sigma(y) = y^p identically: no witness for d = e = 1
    CHECK(!try_sigma_identity_witness(1, 1, f2, 256).has_value());
    CHECK_THROWS_AS(has_sigma_identity_witness(1, 1, f2, 256), error);
    // but sigma^2(y) != y^p has a witness in the tower
    ResidueElement w3 = has_sigma_identity_witness(2, 1, f2, 256);
    CHECK(!f2.equal(f2.sigma_iter(w3, 2), f2.sigma(w3)));
}
