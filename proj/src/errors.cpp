#include "vdf/errors.hpp"

namespace vdf {

const char* errc_name(errc c) {
    switch (c) {
        case errc::non_prime_modulus: return "NonPrimeModulus";
        case errc::bad_coordinate_length: return "BadCoordinateLength";
        case errc::no_solution_within_bound: return "NoSolutionWithinBound";
        case errc::no_witness_found: return "NoWitnessFound";
        case errc::mixed_context: return "MixedContext";
        case errc::inexact_division: return "InexactDivision";
        case errc::not_divisible: return "NotDivisible";
        case errc::zero_argument: return "ZeroArgument";
        case errc::not_in_valuation_ring: return "NotInValuationRing";
        case errc::division_by_zero_at_precision: return "DivisionByZeroAtPrecision";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::not_homogeneous: return "NotHomogeneous";
        case errc::all_coefficients_zero: return "AllCoefficientsZero";
        case errc::coefficient_not_integral: return "CoefficientNotIntegral";
        case errc::exact_root_already: return "ExactRootAlready";
        case errc::residue_equation_unsolvable: return "ResidueEquationUnsolvable";
        case errc::max_steps_exceeded: return "MaxStepsExceeded";
        case errc::candidate_exhausted: return "CandidateExhausted";
        case errc::axiom_three_failure: return "AxiomThreeFailure";
        case errc::not_witt_backend: return "NotWittBackend";
        case errc::inconclusive_tail: return "InconclusiveTail";
        case errc::syntax_error: return "SyntaxError";
        case errc::usage_error: return "UsageError";
        case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

} // namespace vdf
