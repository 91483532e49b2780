#pragma once

// Finite-window Laurent series over a pluggable difference residue field:
// the truncated Hahn field k((t^Z)) with coefficientwise sigma. A nonzero
// series stores its true valuation v0 and up to `width` known coefficients
// starting with a nonzero one; a zero series records the exponent bound
// below which it is known to vanish.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdf/residue.hpp"

namespace vdf {

struct HahnSeries {
    DifferenceField k = DifferenceField::make_ratshift();
    int width = 0;   // context window length
    int64_t v0 = 0;  // valuation when nonzero; knowledge bound when zero
    std::vector<ResidueElement> coeffs; // canonical: empty, or coeffs[0] != 0

    bool is_zero_at_precision() const { return coeffs.empty(); }
    // exponent bound: the series is determined modulo t^bound
    int64_t bound() const { return coeffs.empty() ? v0 : v0 + static_cast<int64_t>(coeffs.size()); }
};

HahnSeries hahn_make(const DifferenceField& k, int width, int64_t v0,
                     std::vector<ResidueElement> coeffs);
HahnSeries hahn_zero(const DifferenceField& k, int width, int64_t bound);
HahnSeries hahn_one(const DifferenceField& k, int width);
HahnSeries hahn_from_residue(const DifferenceField& k, int width, const ResidueElement& r);
HahnSeries hahn_from_int(const DifferenceField& k, int width, int64_t v);
// t^gamma; sigma-fixed, valuation gamma
HahnSeries hahn_t_power(const DifferenceField& k, int width, int64_t gamma);

bool hahn_equal(const HahnSeries& a, const HahnSeries& b);

HahnSeries hahn_add(const HahnSeries& a, const HahnSeries& b);
HahnSeries hahn_neg(const HahnSeries& a);
HahnSeries hahn_sub(const HahnSeries& a, const HahnSeries& b);
HahnSeries hahn_mul(const HahnSeries& a, const HahnSeries& b);
HahnSeries hahn_inv(const HahnSeries& a);
HahnSeries hahn_pow(const HahnSeries& a, uint64_t e);

// coefficientwise sigma; fixes t, so valuations are preserved
HahnSeries hahn_sigma(const HahnSeries& a);
HahnSeries hahn_sigma_inverse(const HahnSeries& a);

std::optional<int64_t> hahn_valuation(const HahnSeries& a);
ResidueElement hahn_pi(const HahnSeries& a);
ResidueElement hahn_ac(const HahnSeries& a);

// multiply by t^gamma (exact; gamma may be negative)
HahnSeries hahn_shift_exponent(const HahnSeries& a, int64_t gamma);
// keep only the first len known coefficients
HahnSeries hahn_truncate_len(const HahnSeries& a, int len);

std::string hahn_to_string(const HahnSeries& a);

} // namespace vdf
