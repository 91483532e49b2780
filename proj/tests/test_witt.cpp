#include "doctest.h"

#include <random>
#include <set>

#include "vdf/witt.hpp"
#include "vdf/witt_eval.hpp"

using namespace vdf;

namespace {

WittVector random_witt(std::mt19937_64& rng, int64_t p, int N, int level) {
    std::vector<FqElement> c;
    for (int i = 0; i < N; ++i) {
        std::vector<int64_t> coords(level);
        for (auto& x : coords) x = static_cast<int64_t>(rng() % p);
        c.push_back(fq_make(p, level, coords));
    }
    return witt_make(p, N, std::move(c));
}

mpz_class binom_over_p(int64_t p, int64_t i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(i));
    return b / p;
}

} // namespace

TEST_CASE("structure polynomials: closed forms for low stages") {
    const auto& sp2 = witt_structure_polys(2, 1);
    IntPoly y0 = IntPoly::variable(kMaxPolyVars, 0), y1 = IntPoly::variable(kMaxPolyVars, 1);
    IntPoly z0 = IntPoly::variable(kMaxPolyVars, kWittZBase),
            z1 = IntPoly::variable(kMaxPolyVars, kWittZBase + 1);
    CHECK(sp2.S[0] == y0 + z0);
    CHECK(sp2.S[1] == y1 + z1 - y0 * z0);

    // general p: S_1 = y1 + z1 - sum_{i=1}^{p-1} (C(p,i)/p) y0^i z0^{p-i}
    for (int64_t p : {3, 5, 7}) {
        const auto& sp = witt_structure_polys(p, 1);
        IntPoly expected = y0.scaled(0) + y1 + z1;
        for (int64_t i = 1; i < p; ++i)
            expected -= (IntPoly::variable(kMaxPolyVars, 0).pow(i) *
                         IntPoly::variable(kMaxPolyVars, kWittZBase).pow(p - i))
                            .scaled(binom_over_p(p, i));
        CHECK(sp.S[1] == expected);
    }
}

TEST_CASE("structure polynomials satisfy the ghost identities") {
    std::mt19937_64 rng(41);
    for (auto [p, n] : {std::pair<int64_t, int>{2, 4}, {3, 3}, {5, 2}}) {
        const auto& sp = witt_structure_polys(p, n);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<mpz_class> point(kMaxPolyVars);
            for (auto& v : point) v = mpz_class(static_cast<long>(rng() % 21) - 10);
            for (int k = 0; k <= n; ++k) {
                IntPoly wy = witt_ghost_poly(p, k, kMaxPolyVars, 0);
                IntPoly wz = witt_ghost_poly(p, k, kMaxPolyVars, kWittZBase);
                // W_k(S_0..S_k) with S_i evaluated at the point
                mpz_class lhs_add = wy.eval(point) + wz.eval(point);
                mpz_class lhs_mul = wy.eval(point) * wz.eval(point);
                mpz_class rhs_add = 0, rhs_mul = 0, pi = 1;
                for (int i = 0; i <= k; ++i) {
                    mpz_class se = sp.S[i].eval(point), pe = sp.P[i].eval(point);
                    mpz_class spow, ppow;
                    unsigned long ex = 1;
                    for (int j = 0; j < k - i; ++j) ex *= static_cast<unsigned long>(p);
                    mpz_pow_ui(spow.get_mpz_t(), se.get_mpz_t(), ex);
                    mpz_pow_ui(ppow.get_mpz_t(), pe.get_mpz_t(), ex);
                    rhs_add += pi * spow;
                    rhs_mul += pi * ppow;
                    pi *= p;
                }
                CHECK(lhs_add == rhs_add);
                CHECK(lhs_mul == rhs_mul);
            }
        }
    }
}

TEST_CASE("integer oracle: W_N(F_p) is Z/p^N") {
    std::mt19937_64 rng(43);
    for (auto [p, N] : {std::pair<int64_t, int>{2, 4}, {3, 3}, {5, 3}}) {
        mpz_class q = 1;
        for (int i = 0; i < N; ++i) q *= p;
        // bijection on the full range for the small cases
        if (q < 200) {
            std::set<std::vector<int64_t>> seen;
            for (mpz_class m = 0; m < q; ++m) {
                WittVector w = witt_from_integer(m, p, N);
                std::vector<int64_t> flat;
                for (const auto& c : w.components)
                    flat.insert(flat.end(), c.coeffs.begin(), c.coeffs.end());
                seen.insert(flat);
            }
            CHECK(seen.size() == q.get_ui());
        }
        for (int trial = 0; trial < 200; ++trial) {
            mpz_class x = mpz_class(static_cast<unsigned long>(rng())) % q;
            mpz_class y = mpz_class(static_cast<unsigned long>(rng())) % q;
            CHECK(witt_equal(witt_add(witt_from_integer(x, p, N), witt_from_integer(y, p, N)),
                             witt_from_integer(x + y, p, N)));
            CHECK(witt_equal(witt_mul(witt_from_integer(x, p, N), witt_from_integer(y, p, N)),
                             witt_from_integer(x * y, p, N)));
        }
    }
}

TEST_CASE("witt_from_integer landmarks") {
    for (auto [p, N] : {std::pair<int64_t, int>{2, 3}, {3, 4}, {5, 3}}) {
        CHECK(witt_is_zero(witt_from_integer(0, p, N)));
        WittVector wp = witt_from_integer(p, p, N);
        CHECK(witt_equal(wp, witt_cross_section(p, N, 1)));
        mpz_class q = 1;
        for (int i = 0; i < N; ++i) q *= p;
        CHECK(witt_is_zero(witt_from_integer(q, p, N)));
        CHECK(witt_equal(witt_mul_p(witt_one(p, N), N), wp));
    }
    // 1 + 1 = 2 = (0,1,0) in W_3(F_2)
    WittVector two = witt_add(witt_one(2, 3), witt_one(2, 3));
    CHECK(witt_equal(two, witt_from_integer(2, 2, 3)));
    CHECK(fq_is_zero(two.components[0]));
    CHECK(fq_equal(two.components[1], fq_one(2)));
    // 3 * 3 = 9 = 1 mod 8
    CHECK(witt_equal(witt_mul(witt_from_integer(3, 2, 3), witt_from_integer(3, 2, 3)),
                     witt_one(2, 3)));
}

TEST_CASE("ring laws and units over F_4") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        WittVector a = random_witt(rng, 2, 4, 2), b = random_witt(rng, 2, 4, 2),
                   c = random_witt(rng, 2, 4, 2);
        CHECK(witt_equal(witt_add(a, b), witt_add(b, a)));
        CHECK(witt_equal(witt_add(witt_add(a, b), c), witt_add(a, witt_add(b, c))));
        CHECK(witt_equal(witt_mul(witt_mul(a, b), c), witt_mul(a, witt_mul(b, c))));
        CHECK(witt_equal(witt_mul(a, witt_add(b, c)), witt_add(witt_mul(a, b), witt_mul(a, c))));
        CHECK(witt_is_zero(witt_add(a, witt_neg(a))));
        CHECK(witt_equal(witt_mul(a, witt_one(2, 4)), a));
        CHECK(witt_equal(witt_add(a, witt_zero(2, 4)), a));
        if (auto v = witt_valuation(a); v && *v == 0) {
            CHECK(witt_equal(witt_mul(a, witt_inv_unit(a)), witt_one(2, 4)));
        }
    }
}

TEST_CASE("Teichmuller lifts are multiplicative") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        FqElement a = fq_element_from_index(3, 2, rng() % 9);
        FqElement b = fq_element_from_index(3, 2, rng() % 9);
        CHECK(witt_equal(witt_mul(witt_teichmuller(a, 4), witt_teichmuller(b, 4)),
                         witt_teichmuller(fq_mul(a, b), 4)));
    }
}

TEST_CASE("frobenius") {
    std::mt19937_64 rng(59);
    // identity on W(F_p)
    for (int trial = 0; trial < 20; ++trial) {
        WittVector a = random_witt(rng, 2, 4, 1);
        CHECK(witt_equal(witt_frobenius(a), a));
    }
    // ring automorphism, frobenius lift, inverse pair
    for (int trial = 0; trial < 50; ++trial) {
        WittVector a = random_witt(rng, 2, 4, 2), b = random_witt(rng, 2, 4, 2);
        CHECK(witt_equal(witt_frobenius(witt_add(a, b)),
                         witt_add(witt_frobenius(a), witt_frobenius(b))));
        CHECK(witt_equal(witt_frobenius(witt_mul(a, b)),
                         witt_mul(witt_frobenius(a), witt_frobenius(b))));
        CHECK(witt_equal(witt_frobenius_inverse(witt_frobenius(a)), a));
        WittVector d = witt_sub(witt_frobenius(a), witt_pow(a, 2));
        auto v = witt_valuation(d);
        CHECK((!v || *v >= 1));
    }
}

TEST_CASE("valuation, pi, ac, cross-section") {
    CHECK(witt_valuation(witt_one(2, 4)) == 0);
    CHECK(witt_valuation(witt_from_integer(4, 2, 4)) == 2);
    CHECK(!witt_valuation(witt_zero(2, 4)).has_value());

    // ac(p) = 1
    CHECK(fq_equal(witt_ac(witt_from_integer(3, 3, 4)), fq_one(3)));
    CHECK(fq_equal(witt_ac(witt_from_integer(3, 3, 4)), fq_one(3)));
    WittVector p3 = witt_from_integer(3, 3, 4);
    CHECK(fq_equal(witt_ac(p3), fq_one(3)));

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        WittVector u = random_witt(rng, 3, 4, 2);
        auto vu = witt_valuation(u);
        if (!vu) continue;
        if (*vu == 0) CHECK(fq_equal(witt_ac(u), witt_pi(u)));
        // multiplicativity
        WittVector w = random_witt(rng, 3, 4, 2);
        if (!witt_valuation(w)) continue;
        if (*witt_valuation(u) + *witt_valuation(w) >= 4) continue;
        CHECK(fq_equal(witt_ac(witt_mul(u, w)), fq_mul(witt_ac(u), witt_ac(w))));
        // ac commutes with sigma
        CHECK(fq_equal(witt_ac(witt_frobenius(u)), fq_frobenius(witt_ac(u))));
    }

    // cross-section is a monoid morphism with v(s(gamma)) = gamma
    for (int64_t g = 0; g < 4; ++g) {
        WittVector s = witt_cross_section(2, 4, g);
        CHECK(witt_valuation(s) == static_cast<int>(g));
        CHECK(fq_equal(witt_ac(s), fq_one(2)));
        for (int64_t h = 0; g + h < 4; ++h)
            CHECK(witt_equal(witt_mul(s, witt_cross_section(2, 4, h)),
                             witt_cross_section(2, 4, g + h)));
    }
    // ac(p*u) = pi(u) for units
    WittVector u = witt_teichmuller(fq_generator(2, 2), 4);
    CHECK(fq_equal(witt_ac(witt_mul(witt_from_integer(2, 2, 4), u)), witt_pi(u)));
}

TEST_CASE("div_p and div_exact") {
    CHECK(witt_equal(witt_div_p(witt_from_integer(2, 2, 4)), witt_one(2, 3)));

    // (0, alpha, 0, ...) -> (alpha^{1/p}, 0, ...): multiply back and compare
    FqElement alpha = fq_generator(2, 2);
    std::vector<FqElement> c = {fq_zero(2, 2), alpha, fq_zero(2, 2), fq_zero(2, 2)};
    WittVector a = witt_make(2, 4, c);
    WittVector b = witt_div_p(a);
    CHECK(fq_equal(b.components[0], fq_pth_root(alpha)));
    CHECK(witt_equal(witt_mul_p(b, 4), a));

    CHECK_THROWS_AS(witt_div_p(witt_one(2, 4)), error);

    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        WittVector x = random_witt(rng, 3, 5, 2), y = random_witt(rng, 3, 5, 2);
        auto vy = witt_valuation(y);
        if (!vy) continue;
        WittVector prod = witt_mul(x, y);
        WittVector q = witt_div_exact(prod, y);
        CHECK(witt_equal(q, witt_truncate(x, q.N)));
    }
}

TEST_CASE("mul_p agrees with multiplication by p") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        WittVector a = random_witt(rng, 3, 4, 2);
        CHECK(witt_equal(witt_mul_p(a, 4), witt_mul(witt_from_integer(3, 3, 4), a)));
    }
}

TEST_CASE("del components") {
    std::mt19937_64 rng(73);
    // del_0 = a; del_1 = (sigma(a) - a^p)/p
    for (int trial = 0; trial < 30; ++trial) {
        WittVector a = random_witt(rng, 2, 5, 2);
        auto del = del_components(a, 1);
        CHECK(witt_equal(del[0], a));
        WittVector expected = witt_div_p(witt_sub(witt_frobenius(a), witt_pow(a, 2)));
        CHECK(witt_equal(del[1], expected));
    }

    // over F_p with sigma = id, reduced del coordinates realize Z/p^{n+1} = W_{n+1}(F_p)
    for (auto [p, N] : {std::pair<int64_t, int>{2, 5}, {3, 4}}) {
        std::mt19937_64 r2(79);
        for (int trial = 0; trial < 25; ++trial) {
            mpz_class q = 1;
            for (int i = 0; i < N; ++i) q *= p;
            mpz_class m = mpz_class(static_cast<unsigned long>(r2())) % q;
            WittVector a = witt_from_integer(m, p, N);
            int n = N - 1;
            auto del = del_components(a, n);
            WittVector expect = witt_from_integer(m, p, n + 1);
            for (int i = 0; i <= n; ++i)
                CHECK(fq_equal(witt_pi(del[i]), expect.components[i]));
        }
    }

    // on Witt vectors the del coordinates reduce to the components themselves
    std::mt19937_64 r3(83);
    for (int trial = 0; trial < 20; ++trial) {
        WittVector a = random_witt(r3, 2, 5, 2);
        auto del = del_components(a, 3);
        for (int i = 0; i <= 3; ++i) CHECK(fq_equal(witt_pi(del[i]), a.components[i]));
    }
}

TEST_CASE("del-ring axioms for del_1") {
    std::mt19937_64 rng(89);
    int64_t p = 2;
    int N = 5;
    auto del1 = [&](const WittVector& x) { return del_components(x, 1)[1]; };
    CHECK(witt_is_zero(del1(witt_one(p, N))));
    for (int trial = 0; trial < 30; ++trial) {
        WittVector a = random_witt(rng, p, N, 2), b = random_witt(rng, p, N, 2);
        WittVector lhs = del1(witt_add(a, b));
        // del(a) + del(b) - sum_{i=1}^{p-1} (C(p,i)/p) a^i b^{p-i}, at precision N-1
        WittVector rhs = witt_add(del1(a), del1(b));
        for (int64_t i = 1; i < p; ++i) {
            WittVector t = witt_mul(witt_pow(a, i), witt_pow(b, p - i));
            t = witt_mul(witt_from_integer(binom_over_p(p, i), p, N), t);
            rhs = witt_sub(rhs, witt_truncate(t, N - 1));
        }
        CHECK(witt_equal(lhs, rhs));

        WittVector lhs2 = del1(witt_mul(a, b));
        WittVector rhs2 = witt_add(
            witt_add(witt_mul(witt_truncate(witt_pow(a, p), N - 1), del1(b)),
                     witt_mul(witt_truncate(witt_pow(b, p), N - 1), del1(a))),
            witt_truncate(witt_mul_p(witt_mul(del1(a), del1(b)), N), N - 1));
        CHECK(witt_equal(lhs2, rhs2));
    }
}

TEST_CASE("sigma^n = W_n(del) and D-transform") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 25; ++trial) {
        WittVector a = random_witt(rng, 2, 6, 2);
        int n = 3;
        auto del = del_components(a, n);
        auto D = d_transform(del);
        WittVector sig = a;
        for (int k = 0; k <= n; ++k) {
            CHECK(witt_equal(witt_truncate(sig, D[k].N), D[k]));
            sig = witt_frobenius(sig);
        }
    }
    // Teichmuller inputs: D reproduces (y0, y0^p, ...) when higher y's vanish
    FqElement g = fq_generator(3, 2);
    WittVector t = witt_teichmuller(g, 4);
    auto D = d_transform({t, witt_zero(3, 4), witt_zero(3, 4)});
    CHECK(witt_equal(D[0], t));
    CHECK(witt_equal(D[1], witt_pow(t, 3)));
    CHECK(witt_equal(D[2], witt_pow(t, 9)));
}

TEST_CASE("d_transform_of_form") {
    int64_t p = 2;
    int N = 4;
    WittVector one = witt_one(p, N);

    // F = x_0 -> y_0
    std::map<std::vector<int>, WittVector> f0 = {{{1}, one}};
    auto out0 = d_transform_of_form(f0, p, N);
    CHECK(out0.size() == 1);
    CHECK(witt_equal(out0.at({1}), one));

    // F = x_1 -> y_0^p + p y_1
    std::map<std::vector<int>, WittVector> f1 = {{{0, 1}, one}};
    auto out1 = d_transform_of_form(f1, p, N);
    CHECK(out1.size() == 2);
    CHECK(witt_equal(out1.at({2, 0}), one));
    CHECK(witt_equal(out1.at({0, 1}), witt_from_integer(2, p, N)));

    // degree bound m p^n and zero constant term
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        int m = 1 + static_cast<int>(rng() % 3);
        std::map<std::vector<int>, WittVector> form;
        for (int t = 0; t < 3; ++t) {
            std::vector<int> mono(n + 1, 0);
            int left = m;
            for (int v = 0; v <= n && left > 0; ++v) {
                int e = static_cast<int>(rng() % (left + 1));
                if (v == n) e = left;
                mono[v] = e;
                left -= e;
            }
            form[mono] = random_witt(rng, p, N, 2);
        }
        bool all_zero = true;
        for (auto& [mo, co] : form) all_zero = all_zero && witt_is_zero(co);
        if (all_zero) continue;
        auto out = d_transform_of_form(form, p, N);
        int bound = m;
        for (int i = 0; i < n; ++i) bound *= static_cast<int>(p);
        for (const auto& [mono, coeff] : out) {
            int d = 0;
            for (int e : mono) d += e;
            CHECK(d >= 1);
            CHECK(d <= bound);
        }
    }

    // linearity in the coefficients
    std::map<std::vector<int>, WittVector> fa = {{{1, 1}, witt_from_integer(3, p, N)}};
    std::map<std::vector<int>, WittVector> fb = {{{1, 1}, witt_from_integer(5, p, N)}};
    std::map<std::vector<int>, WittVector> fsum = {{{1, 1}, witt_from_integer(8, p, N)}};
    auto oa = d_transform_of_form(fa, p, N);
    auto ob = d_transform_of_form(fb, p, N);
    auto os = d_transform_of_form(fsum, p, N);
    for (const auto& [mono, coeff] : os) {
        WittVector sum = witt_zero(p, N);
        if (oa.count(mono)) sum = witt_add(sum, oa.at(mono));
        if (ob.count(mono)) sum = witt_add(sum, ob.at(mono));
        CHECK(witt_equal(coeff, sum));
    }

    // non-homogeneous input is rejected
    std::map<std::vector<int>, WittVector> bad = {{{1, 0}, one}, {{1, 1}, one}};
    CHECK_THROWS_AS(d_transform_of_form(bad, p, N), error);
}

TEST_CASE("reduced evaluation programs match the exact structure polynomials") {
    for (auto [p, n] : {std::pair<int64_t, int>{2, 4}, {3, 3}, {5, 2}}) {
        const auto& sp = witt_structure_polys(p, n);
        for (bool product : {false, true}) {
            const EvalProgram& prog = product ? witt_mul_program(p, n) : witt_add_program(p, n);
            for (int k = 0; k <= n; ++k) {
                std::map<Mono, int64_t> expect;
                mpz_class r;
                for (const auto& [mono, c] : (product ? sp.P[k] : sp.S[k]).terms()) {
                    r = c % p;
                    if (r < 0) r += p;
                    if (r != 0) expect[mono] = r.get_si();
                }
                std::map<Mono, int64_t> got;
                for (const auto& t : prog.stages[k]) {
                    Mono m;
                    m.e = t.e;
                    got[m] = t.coeff;
                }
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("from_integer agrees with the double-and-add chain") {
    std::mt19937_64 rng(107);
    for (auto [p, N] : {std::pair<int64_t, int>{2, 4}, {3, 3}}) {
        for (int trial = 0; trial < 15; ++trial) {
            mpz_class q = 1;
            for (int i = 0; i < N; ++i) q *= p;
            mpz_class m = mpz_class(static_cast<unsigned long>(rng())) % q;
            WittVector direct = witt_from_integer(m, p, N);
            WittVector acc = witt_zero(p, N);
            WittVector one = witt_one(p, N);
            for (size_t i = mpz_sizeinbase(m.get_mpz_t(), 2); i-- > 0;) {
                acc = witt_add(acc, acc);
                if (mpz_tstbit(m.get_mpz_t(), i)) acc = witt_add(acc, one);
            }
            if (m == 0) acc = witt_zero(p, N);
            CHECK(witt_equal(direct, acc));
        }
    }
}

TEST_CASE("serial and parallel evaluation agree") {
    std::mt19937_64 rng(103);
    const EvalProgram& prog = witt_mul_program(2, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FqElement> args(16, fq_zero(2, 2));
        for (auto& a : args) a = fq_element_from_index(2, 2, rng() % 4);
        for (int k = 0; k <= 4; ++k)
            CHECK(fq_equal(eval_stage_serial(prog, k, args), eval_stage_parallel(prog, k, args)));
    }
}

TEST_CASE("mixed contexts are rejected") {
    CHECK_THROWS_AS(witt_add(witt_one(2, 3), witt_one(2, 4)), error);
    CHECK_THROWS_AS(witt_add(witt_one(2, 3), witt_one(3, 3)), error);
}
