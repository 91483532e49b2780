#include "doctest.h"

#include <random>

#include "vdf/intpoly.hpp"

using namespace vdf;

TEST_CASE("basic arithmetic") {
    IntPoly x = IntPoly::variable(2, 0);
    IntPoly y = IntPoly::variable(2, 1);
    IntPoly f = (x + y) * (x - y);
    IntPoly g = x * x - y * y;
    CHECK(f == g);
    CHECK(f.total_degree() == 2);
    CHECK(f.term_count() == 2);

    IntPoly h = (x + y).pow(3);
    CHECK(h.term_count() == 4);
    CHECK(h.eval({mpz_class(2), mpz_class(3)}) == 125);
    CHECK(h.eval_mod({2, 3}, 7) == 125 % 7);
}

TEST_CASE("exact scalar division") {
    IntPoly x = IntPoly::variable(1, 0);
    IntPoly f = x.scaled(6) + IntPoly::constant(1, 9);
    CHECK(f.div_exact(3) == x.scaled(2) + IntPoly::constant(1, 3));
    CHECK_THROWS_AS(f.div_exact(4), error);
}

TEST_CASE("homogeneity") {
    IntPoly x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
    int d = 0;
    CHECK((x * x + x * y).is_homogeneous(&d));
    CHECK(d == 2);
    CHECK(!(x * x + y).is_homogeneous());
}

TEST_CASE("evaluation agrees with expansion on random data") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        IntPoly f(3);
        for (int t = 0; t < 6; ++t) {
            Mono m;
            for (int v = 0; v < 3; ++v) m.e[v] = static_cast<uint16_t>(rng() % 4);
            f.add_term(m, mpz_class(static_cast<long>(rng() % 19) - 9));
        }
        IntPoly g = f * f;
        std::vector<mpz_class> pt = {mpz_class(static_cast<long>(rng() % 11) - 5),
                                     mpz_class(static_cast<long>(rng() % 11) - 5),
                                     mpz_class(static_cast<long>(rng() % 11) - 5)};
        CHECK(g.eval(pt) == f.eval(pt) * f.eval(pt));
    }
}
