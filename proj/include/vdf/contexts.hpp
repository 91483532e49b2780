#pragma once

// Uniform backend adapters. Ring contexts expose exact arithmetic plus the
// difference operator; valued contexts add valuation, residue data, cross
// sections and residue-equation solving. The sigma-polynomial calculus, the
// Newton-Hensel engine and the pc-sequence machinery are templates over
// these adapters.

#include <optional>
#include <string>

#include "vdf/hahn.hpp"
#include "vdf/residue.hpp"
#include "vdf/witt.hpp"

namespace vdf {

// --------------------------------------------------------------------------
// Residue-field ring contexts (coefficient domains; not valued).

struct FqCtx {
    using Elem = FqElement;
    int64_t p;
    int level; // elements are created at this tower level

    Elem zero() const { return fq_zero(p, level); }
    Elem one() const { return fq_one(p, level); }
    Elem from_int(int64_t v) const {
        Elem r = fq_from_int(p, v);
        return level == 1 ? r : fq_embed(r, level);
    }
    bool is_zero(const Elem& a) const { return fq_is_zero(a); }
    bool equal(const Elem& a, const Elem& b) const { return fq_equal(a, b); }
    Elem add(const Elem& a, const Elem& b) const { return fq_add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return fq_sub(a, b); }
    Elem neg(const Elem& a) const { return fq_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return fq_mul(a, b); }
    Elem sigma(const Elem& a) const { return fq_frobenius(a); }
    Elem sigma_inv(const Elem& a) const { return fq_pth_root(a); }
    std::string print(const Elem& a) const {
        return DifferenceField::make_fq(p).to_string(ResidueElement(a));
    }
};

struct RatShiftCtx {
    using Elem = RatShiftElement;

    Elem zero() const { return rs_zero(); }
    Elem one() const { return rs_one(); }
    Elem from_int(int64_t v) const { return rs_from_int(v); }
    bool is_zero(const Elem& a) const { return rs_is_zero(a); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return rs_add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return rs_sub(a, b); }
    Elem neg(const Elem& a) const { return rs_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return rs_mul(a, b); }
    Elem sigma(const Elem& a) const { return rs_shift(a, 1); }
    Elem sigma_inv(const Elem& a) const { return rs_shift(a, -1); }
    std::string print(const Elem& a) const { return rs_to_string(a); }
};

// --------------------------------------------------------------------------
// Valued backends.

struct WittCtx {
    using Elem = WittVector;
    int64_t p;
    int N;
    DifferenceField k; // fq tower of characteristic p

    static WittCtx make(int64_t p, int N) { return WittCtx{p, N, DifferenceField::make_fq(p)}; }

    int precision() const { return N; }
    WittCtx with_precision(int N2) const { return WittCtx{p, N2, k}; }

    Elem zero() const { return witt_zero(p, N); }
    Elem one() const { return witt_one(p, N); }
    Elem from_int(int64_t v) const { return witt_from_integer(mpz_class(static_cast<long>(v)), p, N); }
    bool is_zero(const Elem& a) const { return witt_is_zero(a); }
    bool equal(const Elem& a, const Elem& b) const { return witt_equal(a, b); }
    Elem add(const Elem& a, const Elem& b) const { return witt_add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return witt_sub(a, b); }
    Elem neg(const Elem& a) const { return witt_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return witt_mul(a, b); }
    Elem sigma(const Elem& a) const { return witt_frobenius(a); }
    Elem sigma_inv(const Elem& a) const { return witt_frobenius_inverse(a); }

    std::optional<int64_t> val(const Elem& a) const {
        auto v = witt_valuation(a);
        if (!v) return std::nullopt;
        return static_cast<int64_t>(*v);
    }
    DifferenceField residue_field() const { return k; }
    ResidueElement residue(const Elem& a) const { return ResidueElement(witt_pi(a)); }
    ResidueElement ac(const Elem& a) const { return ResidueElement(witt_ac(a)); }
    Elem cross_section(int64_t gamma) const { return witt_cross_section(p, N, gamma); }
    Elem from_residue(const ResidueElement& r) const { return witt_teichmuller(r.fq(), N); }
    Elem truncate(const Elem& a, int N2) const { return witt_truncate(a, N2); }

    // a * p^gamma; negative gamma requires v(a) >= -gamma. Precision shifts
    // with the exponent, capped at the context precision.
    Elem mul_cross(const Elem& a, int64_t gamma) const {
        Elem r = a;
        for (int64_t i = 0; i < gamma; ++i) r = witt_mul_p(r, N);
        for (int64_t i = 0; i > gamma; --i) r = witt_div_p(r);
        return r;
    }
    // exact division, v(x) >= v(y); precision drops by v(y)
    Elem div_integral(const Elem& x, const Elem& y) const { return witt_div_exact(x, y); }
    // residue of x/y for v(x) >= v(y), y nonzero at precision
    ResidueElement residue_of_quotient(const Elem& x, const Elem& y) const {
        auto vy = witt_valuation(y);
        if (!vy) fail(errc::division_by_zero_at_precision, "quotient by zero at precision");
        auto vx = witt_valuation(x);
        if (vx && *vx < *vy) fail(errc::not_divisible, "quotient not integral");
        if (!vx || *vx > *vy) return ResidueElement(fq_zero(p));
        FqElement nx = x.components[*vy], ny = y.components[*vy];
        for (int i = 0; i < *vy; ++i) {
            nx = fq_pth_root(nx);
            ny = fq_pth_root(ny);
        }
        return ResidueElement(fq_mul(nx, fq_inv(ny)));
    }

    std::string print(const Elem& a) const {
        std::string s = "(";
        for (int i = 0; i < a.N; ++i) {
            if (i) s += ",";
            s += k.to_string(ResidueElement(a.components[i]));
        }
        return s + ")";
    }
};

struct HahnCtx {
    using Elem = HahnSeries;
    DifferenceField k;
    int width;

    static HahnCtx make(const DifferenceField& k, int width) { return HahnCtx{k, width}; }

    int precision() const { return width; }
    HahnCtx with_precision(int w2) const { return HahnCtx{k, w2}; }

    Elem zero() const { return hahn_zero(k, width, width); }
    Elem one() const { return hahn_one(k, width); }
    Elem from_int(int64_t v) const { return hahn_from_int(k, width, v); }
    bool is_zero(const Elem& a) const { return a.is_zero_at_precision(); }
    bool equal(const Elem& a, const Elem& b) const { return hahn_equal(a, b); }
    Elem add(const Elem& a, const Elem& b) const { return hahn_add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return hahn_sub(a, b); }
    Elem neg(const Elem& a) const { return hahn_neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return hahn_mul(a, b); }
    Elem sigma(const Elem& a) const { return hahn_sigma(a); }
    Elem sigma_inv(const Elem& a) const { return hahn_sigma_inverse(a); }

    std::optional<int64_t> val(const Elem& a) const { return hahn_valuation(a); }
    DifferenceField residue_field() const { return k; }
    ResidueElement residue(const Elem& a) const { return hahn_pi(a); }
    ResidueElement ac(const Elem& a) const { return hahn_ac(a); }
    Elem cross_section(int64_t gamma) const { return hahn_t_power(k, width, gamma); }
    Elem from_residue(const ResidueElement& r) const { return hahn_from_residue(k, width, r); }
    Elem truncate(const Elem& a, int len) const { return hahn_truncate_len(a, len); }

    Elem mul_cross(const Elem& a, int64_t gamma) const { return hahn_shift_exponent(a, gamma); }
    Elem div_integral(const Elem& x, const Elem& y) const { return hahn_mul(x, hahn_inv(y)); }
    ResidueElement residue_of_quotient(const Elem& x, const Elem& y) const {
        if (y.is_zero_at_precision())
            fail(errc::division_by_zero_at_precision, "quotient by zero at precision");
        if (x.is_zero_at_precision()) return k.zero();
        if (x.v0 < y.v0) fail(errc::not_divisible, "quotient not integral");
        if (x.v0 > y.v0) return k.zero();
        return k.mul(x.coeffs[0], k.inv(y.coeffs[0]));
    }

    std::string print(const Elem& a) const { return hahn_to_string(a); }
};

} // namespace vdf
