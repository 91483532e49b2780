#pragma once

// Sparse multivariate polynomials with exact integer coefficients, used for
// Witt structure polynomials, ghost polynomials and D-transform expansions.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "vdf/errors.hpp"

namespace vdf {

constexpr int kMaxPolyVars = 16;

struct Mono {
    std::array<uint16_t, kMaxPolyVars> e{};

    bool operator<(const Mono& o) const { return e < o.e; }
    bool operator==(const Mono& o) const { return e == o.e; }
};

class IntPoly {
public:
    IntPoly() : nvars_(0) {}
    explicit IntPoly(int nvars) : nvars_(nvars) {
        require(nvars >= 0 && nvars <= kMaxPolyVars, errc::usage_error,
                "unsupported variable count");
    }

    static IntPoly constant(int nvars, const mpz_class& c);
    static IntPoly variable(int nvars, int index, int exponent = 1);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Mono, mpz_class>& terms() const { return terms_; }

    int total_degree() const; // -1 for the zero polynomial
    bool is_homogeneous(int* degree_out = nullptr) const;
    mpz_class constant_term() const;

    void add_term(const Mono& m, const mpz_class& c);

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

    IntPoly pow(uint64_t k) const;
    IntPoly scaled(const mpz_class& c) const;
    // exact division of every coefficient; throws InexactDivision otherwise
    IntPoly div_exact(const mpz_class& c) const;

    mpz_class eval(const std::vector<mpz_class>& point) const;
    int64_t eval_mod(const std::vector<int64_t>& point, int64_t modulus) const;

    bool operator==(const IntPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

private:
    int nvars_;
    std::map<Mono, mpz_class> terms_;
};

} // namespace vdf
