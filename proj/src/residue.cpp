#include "vdf/residue.hpp"

namespace vdf {

DifferenceField DifferenceField::make_fq(int64_t p) {
    require(is_prime(p), errc::non_prime_modulus, "p = " + std::to_string(p));
    return DifferenceField(FieldKind::fq, p);
}

DifferenceField DifferenceField::make_ratshift() {
    return DifferenceField(FieldKind::ratshift, 0);
}

ResidueElement DifferenceField::zero() const {
    return kind_ == FieldKind::fq ? ResidueElement(fq_zero(p_)) : ResidueElement(rs_zero());
}

ResidueElement DifferenceField::one() const {
    return kind_ == FieldKind::fq ? ResidueElement(fq_one(p_)) : ResidueElement(rs_one());
}

ResidueElement DifferenceField::from_int(int64_t v) const {
    return kind_ == FieldKind::fq ? ResidueElement(fq_from_int(p_, v))
                                  : ResidueElement(rs_from_int(v));
}

bool DifferenceField::is_zero(const ResidueElement& a) const {
    return a.is_fq() ? fq_is_zero(a.fq()) : rs_is_zero(a.rs());
}

bool DifferenceField::equal(const ResidueElement& a, const ResidueElement& b) const {
    if (a.is_fq() != b.is_fq()) fail(errc::mixed_context, "residue elements of different kinds");
    return a.is_fq() ? fq_equal(a.fq(), b.fq()) : a.rs() == b.rs();
}

ResidueElement DifferenceField::add(const ResidueElement& a, const ResidueElement& b) const {
    return a.is_fq() ? ResidueElement(fq_add(a.fq(), b.fq()))
                     : ResidueElement(rs_add(a.rs(), b.rs()));
}

ResidueElement DifferenceField::sub(const ResidueElement& a, const ResidueElement& b) const {
    return a.is_fq() ? ResidueElement(fq_sub(a.fq(), b.fq()))
                     : ResidueElement(rs_sub(a.rs(), b.rs()));
}

ResidueElement DifferenceField::neg(const ResidueElement& a) const {
    return a.is_fq() ? ResidueElement(fq_neg(a.fq())) : ResidueElement(rs_neg(a.rs()));
}

ResidueElement DifferenceField::mul(const ResidueElement& a, const ResidueElement& b) const {
    return a.is_fq() ? ResidueElement(fq_mul(a.fq(), b.fq()))
                     : ResidueElement(rs_mul(a.rs(), b.rs()));
}

ResidueElement DifferenceField::inv(const ResidueElement& a) const {
    return a.is_fq() ? ResidueElement(fq_inv(a.fq())) : ResidueElement(rs_inv(a.rs()));
}

ResidueElement DifferenceField::sigma(const ResidueElement& a) const {
    return a.is_fq() ? ResidueElement(fq_frobenius(a.fq())) : ResidueElement(rs_shift(a.rs(), 1));
}

ResidueElement DifferenceField::sigma_inverse(const ResidueElement& a) const {
    return a.is_fq() ? ResidueElement(fq_pth_root(a.fq())) : ResidueElement(rs_shift(a.rs(), -1));
}

ResidueElement DifferenceField::sigma_iter(const ResidueElement& a, int64_t k) const {
    if (a.is_fq()) return ResidueElement(fq_frobenius_iter(a.fq(), k));
    return ResidueElement(rs_shift(a.rs(), k));
}

ResidueElement DifferenceField::pth_root(const ResidueElement& a) const {
    require(has_pth_root(), errc::usage_error, "pth_root requires characteristic p > 0");
    return ResidueElement(fq_pth_root(a.fq()));
}

std::optional<ResidueElement> DifferenceField::solve_sigma_linear(
    const std::vector<ResidueElement>& coeffs, const SolverBudget& budget) const {
    if (kind_ == FieldKind::fq) {
        // sigma is Frobenius, so the equation is 1 + sum c_i x^{p^i} = 0
        std::vector<FqElement> alphas;
        alphas.reserve(coeffs.size());
        for (const auto& c : coeffs) alphas.push_back(c.fq());
        auto r = try_solve_additive_equation(alphas, budget.tower_level_bound);
        if (!r) return std::nullopt;
        return ResidueElement(std::move(*r));
    }
    std::vector<RatShiftElement> alphas;
    alphas.reserve(coeffs.size());
    for (const auto& c : coeffs) alphas.push_back(c.rs());
    auto r = try_solve_linear_sigma_shift(alphas, budget.degree_bound);
    if (!r) return std::nullopt;
    return ResidueElement(std::move(*r));
}

std::string DifferenceField::to_string(const ResidueElement& a) const {
    if (a.is_fq()) {
        const FqElement& e = a.fq();
        if (e.m == 1) return std::to_string(e.coeffs[0]);
        std::string s = "[";
        for (int i = 0; i < e.m; ++i) {
            if (i) s += ",";
            s += std::to_string(e.coeffs[i]);
        }
        return s + "]_" + std::to_string(e.m);
    }
    return rs_to_string(a.rs());
}

ResidueEnumerator::ResidueEnumerator(const DifferenceField& field) : field_(field) {
    if (field.kind() == FieldKind::fq) fq_.emplace(field.characteristic());
    else rs_.emplace();
}

ResidueElement ResidueEnumerator::next() {
    if (fq_) return ResidueElement(fq_->next());
    return ResidueElement(rs_->next());
}

std::optional<ResidueElement> try_sigma_identity_witness(int64_t d, int64_t e,
                                                         const DifferenceField& field,
                                                         int budget) {
    require(d != 0, errc::usage_error, "d must be nonzero");
    require(e == 0 || field.characteristic() > 0, errc::usage_error,
            "power twist requires characteristic p > 0");
    ResidueEnumerator en(field);
    for (int i = 0; i < budget; ++i) {
        ResidueElement y = en.next();
        ResidueElement lhs = field.sigma_iter(y, d);
        ResidueElement rhs = y;
        if (e > 0) rhs = field.sigma_iter(y, e); // y^{p^e} is the e-th Frobenius iterate
        if (!field.equal(lhs, rhs)) return y;
    }
    return std::nullopt;
}

ResidueElement has_sigma_identity_witness(int64_t d, int64_t e, const DifferenceField& field,
                                          int budget) {
    auto w = try_sigma_identity_witness(d, e, field, budget);
    if (!w)
        fail(errc::no_witness_found,
             "no witness within budget " + std::to_string(budget));
    return *w;
}

} // namespace vdf
