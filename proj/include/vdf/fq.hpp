#pragma once

// Finite fields F_{p^m} with Frobenius, organized as a dynamically growing
// tower of levels approximating the algebraic closure of F_p. Levels are
// joined at lcm degrees; embeddings between levels are memoized and mutually
// compatible across the divisor lattice.

#include <cstdint>
#include <optional>
#include <vector>

#include "vdf/errors.hpp"

namespace vdf {

struct FqElement {
    int64_t p = 0;
    int m = 0;
    std::vector<int64_t> coeffs; // power-basis coordinates, length m, entries in [0,p)
};

bool is_prime(int64_t p);

// Canonical element constructor; builds (and memoizes) the level if unseen.
FqElement fq_make(int64_t p, int m, std::vector<int64_t> coords);

FqElement fq_zero(int64_t p, int m = 1);
FqElement fq_one(int64_t p, int m = 1);
FqElement fq_from_int(int64_t p, int64_t value);
FqElement fq_generator(int64_t p, int m);

// Monic defining polynomial of level m, degree m, coefficients low-to-high.
std::vector<int64_t> fq_defining_poly(int64_t p, int m);

bool fq_is_zero(const FqElement& a);
bool fq_equal(const FqElement& a, const FqElement& b);

FqElement fq_add(const FqElement& a, const FqElement& b);
FqElement fq_sub(const FqElement& a, const FqElement& b);
FqElement fq_neg(const FqElement& a);
FqElement fq_mul(const FqElement& a, const FqElement& b);
FqElement fq_inv(const FqElement& a);
FqElement fq_pow(const FqElement& a, uint64_t e);

// x -> x^p; iterating m times is the identity on level-m elements.
FqElement fq_frobenius(const FqElement& a);
// y with y^p = x, computed as x^{p^{m-1}}.
FqElement fq_pth_root(const FqElement& a);
// Frobenius iterate, k may be negative.
FqElement fq_frobenius_iter(const FqElement& a, int64_t k);

// Canonical embedding into level m2 (requires m | m2).
FqElement fq_embed(const FqElement& a, int m2);

// Embed both operands into their lcm level.
std::pair<FqElement, FqElement> fq_join(const FqElement& a, const FqElement& b);

// Colexicographic rank of an element within its level, and its inverse.
uint64_t fq_element_index(const FqElement& a);
FqElement fq_element_from_index(int64_t p, int m, uint64_t index);

// Smallest divisor level of a.m whose subfield contains a; canonical
// re-expression of a at that level.
int fq_minimal_level(const FqElement& a);
FqElement fq_minimize(const FqElement& a);

// Solves 1 + sum_i alphas[i] * x^{p^i} = 0 in the tower, at the smallest
// level <= max_level admitting a solution. The map x -> sum alphas[i] x^{p^i}
// is F_p-linear, so each candidate level reduces to linear algebra over F_p.
FqElement solve_additive_equation(const std::vector<FqElement>& alphas, int max_level);
// Same search, reporting absence instead of throwing.
std::optional<FqElement> try_solve_additive_equation(const std::vector<FqElement>& alphas,
                                                     int max_level);
// Linear-algebra solve at one fixed level (no search).
std::optional<FqElement> solve_additive_at_level(const std::vector<FqElement>& alphas, int m);

// Fast same-level arithmetic on colexicographic ranks, available when the
// level is table-backed (p^m <= 256). Pointers stay valid for the process
// lifetime. Used by the structure-polynomial evaluation kernels.
struct FqIndexOps {
    uint64_t q = 0;
    const uint16_t* mul = nullptr;  // q*q
    const uint16_t* add = nullptr;  // q*q
    const uint16_t* frob = nullptr; // q
};
std::optional<FqIndexOps> fq_index_ops(int64_t p, int m);

// Deterministic enumeration of the tower: level 1 first, then level 2, ...;
// within a level, coordinate vectors in colexicographic order.
class FqEnumerator {
public:
    explicit FqEnumerator(int64_t p, int start_level = 1)
        : p_(p), level_(start_level), index_(0) {}

    FqElement next();

private:
    int64_t p_;
    int level_;
    uint64_t index_;
};

} // namespace vdf
