#pragma once

#include <stdexcept>
#include <string>

namespace vdf {

enum class errc {
    non_prime_modulus,
    bad_coordinate_length,
    no_solution_within_bound,
    no_witness_found,
    mixed_context,
    inexact_division,
    not_divisible,
    zero_argument,
    not_in_valuation_ring,
    division_by_zero_at_precision,
    precision_exhausted,
    not_homogeneous,
    all_coefficients_zero,
    coefficient_not_integral,
    exact_root_already,
    residue_equation_unsolvable,
    max_steps_exceeded,
    candidate_exhausted,
    axiom_three_failure,
    not_witt_backend,
    inconclusive_tail,
    syntax_error,
    usage_error,
    internal_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace vdf
