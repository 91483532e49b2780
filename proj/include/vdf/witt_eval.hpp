#pragma once

// Evaluation kernels for Witt structure polynomials over a residue field
// level. Coefficients are pre-reduced mod p, so terms with vanishing residue
// are dropped once per (p, stage). A serial reference implementation is kept
// alongside the OpenMP kernel; both produce bit-identical results since field
// addition is exactly associative and commutative.

#include <array>
#include <cstdint>
#include <vector>

#include "vdf/fq.hpp"

namespace vdf {

struct EvalTerm {
    int64_t coeff; // in [1, p)
    std::array<uint16_t, 16> e;
};

struct EvalProgram {
    int64_t p = 0;
    int max_exp = 0;
    std::vector<std::vector<EvalTerm>> stages; // stage k for S_k or P_k
};

// Programs derived from witt_structure_polys, memoized per (p, n).
const EvalProgram& witt_add_program(int64_t p, int n);
const EvalProgram& witt_mul_program(int64_t p, int n);

// args: 16 entries at a uniform tower level, y_k at index k and z_k at
// index kWittZBase + k.
FqElement eval_stage_serial(const EvalProgram& prog, int stage,
                            const std::vector<FqElement>& args);
FqElement eval_stage_parallel(const EvalProgram& prog, int stage,
                              const std::vector<FqElement>& args);
// dispatches to the parallel kernel for large stages when OpenMP is available
FqElement eval_stage(const EvalProgram& prog, int stage, const std::vector<FqElement>& args);

} // namespace vdf
