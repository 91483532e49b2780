#pragma once

// The pluggable residue-difference-field contract shared by both valued
// backends: F_{p^m} towers with Frobenius, and Q(s) with the shift.

#include <optional>
#include <string>
#include <variant>

#include "vdf/fq.hpp"
#include "vdf/ratshift.hpp"

namespace vdf {

enum class FieldKind { fq, ratshift };

struct ResidueElement {
    std::variant<FqElement, RatShiftElement> v;

    ResidueElement() : v(RatShiftElement{}) {}
    explicit ResidueElement(FqElement e) : v(std::move(e)) {}
    explicit ResidueElement(RatShiftElement e) : v(std::move(e)) {}

    bool is_fq() const { return std::holds_alternative<FqElement>(v); }
    const FqElement& fq() const { return std::get<FqElement>(v); }
    const RatShiftElement& rs() const { return std::get<RatShiftElement>(v); }
};

struct SolverBudget {
    int tower_level_bound = 24; // F_{p^m} tower search cap
    int degree_bound = 4;       // Q(s) numerator/denominator degree cap
    int enum_budget = 4096;     // candidate sweep cap for witness searches
};

class DifferenceField {
public:
    static DifferenceField make_fq(int64_t p);
    static DifferenceField make_ratshift();

    FieldKind kind() const { return kind_; }
    int64_t characteristic() const { return p_; } // 0 for Q(s)
    bool has_pth_root() const { return kind_ == FieldKind::fq; }

    bool operator==(const DifferenceField& o) const { return kind_ == o.kind_ && p_ == o.p_; }

    ResidueElement zero() const;
    ResidueElement one() const;
    ResidueElement from_int(int64_t v) const;

    bool is_zero(const ResidueElement& a) const;
    bool equal(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement add(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement neg(const ResidueElement& a) const;
    ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement inv(const ResidueElement& a) const;

    ResidueElement sigma(const ResidueElement& a) const;
    ResidueElement sigma_inverse(const ResidueElement& a) const;
    ResidueElement sigma_iter(const ResidueElement& a, int64_t k) const;
    ResidueElement pth_root(const ResidueElement& a) const;

    // Solves 1 + sum_i coeffs[i] * sigma^i(x) = 0, within the budget.
    std::optional<ResidueElement> solve_sigma_linear(const std::vector<ResidueElement>& coeffs,
                                                     const SolverBudget& budget) const;

    std::string to_string(const ResidueElement& a) const;

private:
    DifferenceField(FieldKind k, int64_t p) : kind_(k), p_(p) {}

    FieldKind kind_;
    int64_t p_;
};

// Deterministic enumeration of field elements, for witness and refinement
// candidate sweeps.
class ResidueEnumerator {
public:
    explicit ResidueEnumerator(const DifferenceField& field);
    ResidueElement next();

private:
    DifferenceField field_;
    std::optional<FqEnumerator> fq_;
    std::optional<RatShiftEnumerator> rs_;
};

// Searches for y with sigma^d(y) != y^{p^e} (characteristic p; pass e = 0 for
// the plain sigma^d(y) != y form in characteristic 0). Throws NoWitnessFound
// when the deterministic sweep exhausts the budget.
ResidueElement has_sigma_identity_witness(int64_t d, int64_t e, const DifferenceField& field,
                                          int budget);
std::optional<ResidueElement> try_sigma_identity_witness(int64_t d, int64_t e,
                                                         const DifferenceField& field,
                                                         int budget);

} // namespace vdf
