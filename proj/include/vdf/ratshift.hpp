#pragma once

// The difference field Q(s) with the shift automorphism f(s) -> f(s+1).
// Elements are rational functions in canonical form: monic denominator,
// coprime numerator and denominator, exact rational coefficients.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "vdf/errors.hpp"

namespace vdf {

// dense, coefficients low-to-high, no trailing zeros
using PolyQ = std::vector<mpq_class>;

struct RatShiftElement {
    PolyQ num;
    PolyQ den; // monic; {1} for polynomials

    bool operator==(const RatShiftElement& o) const { return num == o.num && den == o.den; }
};

RatShiftElement rs_make(PolyQ num, PolyQ den);
RatShiftElement rs_zero();
RatShiftElement rs_one();
RatShiftElement rs_from_int(int64_t v);
RatShiftElement rs_from_rational(const mpq_class& v);
RatShiftElement rs_s(); // the generator s

bool rs_is_zero(const RatShiftElement& a);
RatShiftElement rs_add(const RatShiftElement& a, const RatShiftElement& b);
RatShiftElement rs_sub(const RatShiftElement& a, const RatShiftElement& b);
RatShiftElement rs_neg(const RatShiftElement& a);
RatShiftElement rs_mul(const RatShiftElement& a, const RatShiftElement& b);
RatShiftElement rs_inv(const RatShiftElement& a);

// f(s) -> f(s+k)
RatShiftElement rs_shift(const RatShiftElement& a, int64_t k = 1);

std::string rs_to_string(const RatShiftElement& a);

// Solves 1 + sum_i alphas[i](s) * x(s+i) = 0 for rational x with numerator and
// denominator degrees <= degree_bound, by linear algebra on undetermined
// numerator coefficients over a deterministic family of candidate
// denominators. Explicitly partial: absence within the bound is an error.
RatShiftElement solve_linear_sigma_shift(const std::vector<RatShiftElement>& alphas,
                                         int degree_bound);
std::optional<RatShiftElement> try_solve_linear_sigma_shift(
    const std::vector<RatShiftElement>& alphas, int degree_bound);

// Deterministic enumeration of Q(s) candidates for witness and refinement
// searches: growing budget over integer-coefficient polynomials in s.
class RatShiftEnumerator {
public:
    RatShiftEnumerator() = default;
    RatShiftElement next();

private:
    void refill();
    std::vector<RatShiftElement> batch_;
    size_t pos_ = 0;
    int64_t budget_ = 0;
};

} // namespace vdf
