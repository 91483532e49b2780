#pragma once

// Truncated Witt vectors W_N(k) over a perfect field of characteristic p:
// ring arithmetic via the universal structure polynomials, the Witt
// frobenius, valuation, residue map, angular component, cross-section,
// del-operators and the D-transform.

#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "vdf/fq.hpp"
#include "vdf/intpoly.hpp"

namespace vdf {

// Variable layout for structure polynomials: y_i at index i, z_i at index
// kWittZBase + i. Stages up to kMaxWittStage are supported.
constexpr int kWittZBase = 8;
constexpr int kMaxWittStage = 7;

struct WittStructurePolys {
    int64_t p = 0;
    int n = 0;
    std::vector<IntPoly> S; // S_0..S_n, sum polynomials
    std::vector<IntPoly> P; // P_0..P_n, product polynomials
};

// Exact construction over Z by the ghost recursion; every division by p^k is
// checked exact. Memoized per (p, n); extending n reuses lower stages.
const WittStructurePolys& witt_structure_polys(int64_t p, int n);

// W_k(x_0..x_k) = x_0^{p^k} + p x_1^{p^{k-1}} + ... + p^k x_k over the given
// variable slots.
IntPoly witt_ghost_poly(int64_t p, int k, int nvars, int var_base);

struct WittVector {
    int64_t p = 0;
    int N = 0;
    std::vector<FqElement> components; // size N, uniform tower level
};

WittVector witt_make(int64_t p, int N, std::vector<FqElement> components);
WittVector witt_zero(int64_t p, int N);
WittVector witt_one(int64_t p, int N);
WittVector witt_from_integer(const mpz_class& m, int64_t p, int N);
WittVector witt_teichmuller(const FqElement& a0, int N);

bool witt_equal(const WittVector& a, const WittVector& b);
bool witt_is_zero(const WittVector& a);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_pow(const WittVector& a, uint64_t e);

// componentwise p-th power; a ring automorphism lifting the residue Frobenius
WittVector witt_frobenius(const WittVector& a);
WittVector witt_frobenius_inverse(const WittVector& a);

// least index with nonzero component; nullopt means zero at precision N
std::optional<int> witt_valuation(const WittVector& a);

// p * a as the shift (0, a_0^p, a_1^p, ...); output precision N+1 capped at cap
WittVector witt_mul_p(const WittVector& a, int cap);
// exact division by p; precision drops to N-1
WittVector witt_div_p(const WittVector& a);
// exact division by a nonzero b with v(b) <= v(a); precision drops by v(b)
WittVector witt_div_exact(const WittVector& a, const WittVector& b);
// inverse of a unit (v(a) = 0) at full precision
WittVector witt_inv_unit(const WittVector& a);

FqElement witt_pi(const WittVector& a);
FqElement witt_ac(const WittVector& a);
WittVector witt_cross_section(int64_t p, int N, int64_t gamma);

WittVector witt_truncate(const WittVector& a, int N2);
// re-express all components at a common tower level
WittVector witt_join_levels(const WittVector& a, int level);

// del_0(a) = a; del_k at precision N-k, via the ghost recursion
std::vector<WittVector> del_components(const WittVector& a, int n);

// (W_0(y), ..., W_n(y)) for ring-element inputs; results are truncated to the
// best common precision of the contributing terms
std::vector<WittVector> d_transform(const std::vector<WittVector>& y);

// Expansion of a homogeneous degree-m form F(x_0..x_n) under x_k = W_k(y):
// returns the map from y-exponent vectors to coefficients. Each output
// coefficient is an integer-linear combination of input coefficients; the
// result has zero constant term and total degree <= m p^n.
std::map<std::vector<int>, WittVector> d_transform_of_form(
    const std::map<std::vector<int>, WittVector>& form, int64_t p, int N);

} // namespace vdf
