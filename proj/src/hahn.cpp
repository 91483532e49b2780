#include "vdf/hahn.hpp"

#include <algorithm>
#include <sstream>

namespace vdf {

namespace {

void check_context(const HahnSeries& a, const HahnSeries& b) {
    require(a.k == b.k, errc::mixed_context, "series over different residue fields");
    require(a.width == b.width, errc::mixed_context, "series of different window widths");
}

} // namespace

HahnSeries hahn_make(const DifferenceField& k, int width, int64_t v0,
                     std::vector<ResidueElement> coeffs) {
    require(width >= 1, errc::usage_error, "window width must be >= 1");
    HahnSeries s;
    s.k = k;
    s.width = width;
    // strip leading zeros, cap at the window
    size_t lead = 0;
    while (lead < coeffs.size() && k.is_zero(coeffs[lead])) ++lead;
    if (lead == coeffs.size()) {
        s.v0 = v0 + static_cast<int64_t>(coeffs.size());
        return s;
    }
    s.v0 = v0 + static_cast<int64_t>(lead);
    size_t len = std::min(coeffs.size() - lead, static_cast<size_t>(width));
    s.coeffs.assign(coeffs.begin() + lead, coeffs.begin() + lead + len);
    return s;
}

HahnSeries hahn_zero(const DifferenceField& k, int width, int64_t bound) {
    HahnSeries s;
    s.k = k;
    s.width = width;
    s.v0 = bound;
    return s;
}

HahnSeries hahn_one(const DifferenceField& k, int width) {
    return hahn_from_residue(k, width, k.one());
}

HahnSeries hahn_from_residue(const DifferenceField& k, int width, const ResidueElement& r) {
    if (k.is_zero(r)) return hahn_zero(k, width, width);
    std::vector<ResidueElement> c(width, k.zero());
    c[0] = r;
    return hahn_make(k, width, 0, std::move(c));
}

HahnSeries hahn_from_int(const DifferenceField& k, int width, int64_t v) {
    return hahn_from_residue(k, width, k.from_int(v));
}

HahnSeries hahn_t_power(const DifferenceField& k, int width, int64_t gamma) {
    std::vector<ResidueElement> c(width, k.zero());
    c[0] = k.one();
    return hahn_make(k, width, gamma, std::move(c));
}

bool hahn_equal(const HahnSeries& a, const HahnSeries& b) {
    if (!(a.k == b.k) || a.width != b.width) return false;
    if (a.is_zero_at_precision() || b.is_zero_at_precision())
        return a.is_zero_at_precision() && b.is_zero_at_precision();
    if (a.v0 != b.v0 || a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (!a.k.equal(a.coeffs[i], b.coeffs[i])) return false;
    return true;
}

HahnSeries hahn_add(const HahnSeries& a, const HahnSeries& b) {
    check_context(a, b);
    const DifferenceField& k = a.k;
    int64_t bound = std::min(a.bound(), b.bound());
    if (a.is_zero_at_precision() && b.is_zero_at_precision())
        return hahn_zero(k, a.width, bound);
    int64_t lo;
    if (a.is_zero_at_precision()) lo = b.v0;
    else if (b.is_zero_at_precision()) lo = a.v0;
    else lo = std::min(a.v0, b.v0);
    if (lo >= bound) return hahn_zero(k, a.width, bound);
    auto at = [&](const HahnSeries& s, int64_t e) {
        if (s.is_zero_at_precision()) return k.zero();
        int64_t i = e - s.v0;
        if (i < 0 || i >= static_cast<int64_t>(s.coeffs.size())) return k.zero();
        return s.coeffs[static_cast<size_t>(i)];
    };
    std::vector<ResidueElement> c;
    c.reserve(static_cast<size_t>(bound - lo));
    for (int64_t e = lo; e < bound; ++e) c.push_back(k.add(at(a, e), at(b, e)));
    return hahn_make(k, a.width, lo, std::move(c));
}

HahnSeries hahn_neg(const HahnSeries& a) {
    HahnSeries r = a;
    for (auto& c : r.coeffs) c = a.k.neg(c);
    return r;
}

HahnSeries hahn_sub(const HahnSeries& a, const HahnSeries& b) {
    return hahn_add(a, hahn_neg(b));
}

HahnSeries hahn_mul(const HahnSeries& a, const HahnSeries& b) {
    check_context(a, b);
    const DifferenceField& k = a.k;
    if (a.is_zero_at_precision() || b.is_zero_at_precision()) {
        // O(t^Ba) * y = O(t^{Ba + v(y)}); for two zeros use both bounds
        int64_t va = a.is_zero_at_precision() ? a.v0 : a.v0;
        int64_t vb = b.is_zero_at_precision() ? b.v0 : b.v0;
        return hahn_zero(k, a.width, va + vb);
    }
    size_t len = std::min(a.coeffs.size(), b.coeffs.size());
    std::vector<ResidueElement> c(len, k.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (i >= len) break;
        for (size_t j = 0; j + i < len && j < b.coeffs.size(); ++j)
            c[i + j] = k.add(c[i + j], k.mul(a.coeffs[i], b.coeffs[j]));
    }
    return hahn_make(k, a.width, a.v0 + b.v0, std::move(c));
}

HahnSeries hahn_inv(const HahnSeries& a) {
    if (a.is_zero_at_precision())
        fail(errc::division_by_zero_at_precision, "inverse of zero at precision");
    const DifferenceField& k = a.k;
    size_t len = a.coeffs.size();
    std::vector<ResidueElement> c(len, k.zero());
    ResidueElement lead_inv = k.inv(a.coeffs[0]);
    c[0] = lead_inv;
    // power-series long division against the unit part
    for (size_t i = 1; i < len; ++i) {
        ResidueElement acc = k.zero();
        for (size_t j = 0; j < i; ++j)
            acc = k.add(acc, k.mul(c[j], a.coeffs[i - j]));
        c[i] = k.neg(k.mul(acc, lead_inv));
    }
    return hahn_make(k, a.width, -a.v0, std::move(c));
}

HahnSeries hahn_pow(const HahnSeries& a, uint64_t e) {
    HahnSeries result = hahn_one(a.k, a.width);
    HahnSeries base = a;
    while (e > 0) {
        if (e & 1) result = hahn_mul(result, base);
        if (e >>= 1) base = hahn_mul(base, base);
    }
    return result;
}

HahnSeries hahn_sigma(const HahnSeries& a) {
    HahnSeries r = a;
    for (auto& c : r.coeffs) c = a.k.sigma(c);
    return r;
}

HahnSeries hahn_sigma_inverse(const HahnSeries& a) {
    HahnSeries r = a;
    for (auto& c : r.coeffs) c = a.k.sigma_inverse(c);
    return r;
}

std::optional<int64_t> hahn_valuation(const HahnSeries& a) {
    if (a.is_zero_at_precision()) return std::nullopt;
    return a.v0;
}

ResidueElement hahn_pi(const HahnSeries& a) {
    if (a.is_zero_at_precision()) {
        require(a.v0 > 0, errc::precision_exhausted, "residue unknown at this precision");
        return a.k.zero();
    }
    require(a.v0 >= 0, errc::not_in_valuation_ring, "negative valuation");
    if (a.v0 > 0) return a.k.zero();
    return a.coeffs[0];
}

ResidueElement hahn_ac(const HahnSeries& a) {
    if (a.is_zero_at_precision()) fail(errc::zero_argument, "angular component of zero");
    return a.coeffs[0];
}

HahnSeries hahn_shift_exponent(const HahnSeries& a, int64_t gamma) {
    HahnSeries r = a;
    r.v0 += gamma;
    return r;
}

HahnSeries hahn_truncate_len(const HahnSeries& a, int len) {
    require(len >= 1, errc::precision_exhausted, "no coefficients left");
    if (a.is_zero_at_precision()) return a;
    HahnSeries r = a;
    if (static_cast<int>(r.coeffs.size()) > len) r.coeffs.resize(len);
    return r;
}

std::string hahn_to_string(const HahnSeries& a) {
    if (a.is_zero_at_precision()) {
        std::ostringstream os;
        os << "O(t^" << a.v0 << ")";
        return os.str();
    }
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.k.is_zero(a.coeffs[i])) continue;
        if (!first) os << " + ";
        first = false;
        int64_t e = a.v0 + static_cast<int64_t>(i);
        std::string c = a.k.to_string(a.coeffs[i]);
        if (e == 0) {
            os << c;
        } else {
            if (c != "1") os << "(" << c << ")*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    os << " + O(t^" << a.bound() << ")";
    return os.str();
}

} // namespace vdf
