#include "vdf/witt_eval.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#ifdef VDF_HAVE_OPENMP
#include <omp.h>
#endif

#include "vdf/witt.hpp"

namespace vdf {

namespace {

// ---------------------------------------------------------------------------
// Reduced structure-polynomial construction. Stage-k coefficients are only
// consumed modulo p by the evaluation kernels, and the ghost recursion needs
// stage-i inputs modulo p^{k+1-i} at stage k, so the whole construction can
// run with uint64 coefficients modulo p^{n+1}. This matches the exact
// integer construction (checked in the test suite) and is much faster for
// the large stages. Divisibility checks mirror the exact path: residues mod
// p^{n+1} decide divisibility by p^k exactly for k <= n.

// Monomials packed as four 64-bit words (16 uint16 lanes). Lane-parallel
// addition is safe because each multiply prechecks that no lane can exceed
// 16 bits.
struct M64 {
    uint64_t w[4];
    bool operator==(const M64& o) const {
        return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2] && w[3] == o.w[3];
    }
};

inline M64 to_words(const Mono& m) {
    M64 r;
    std::memcpy(r.w, m.e.data(), sizeof r.w);
    return r;
}

inline Mono from_words(const M64& m) {
    Mono r;
    std::memcpy(r.e.data(), m.w, sizeof m.w);
    return r;
}

inline uint64_t words_hash(const M64& m) {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 4; ++i) {
        h ^= m.w[i];
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    }
    return h;
}

// terms sorted by monomial, coefficients nonzero mod the working modulus
using RPoly = std::vector<std::pair<Mono, uint64_t>>;

int max_exponent(const RPoly& f) {
    int m = 0;
    for (const auto& [mono, c] : f)
        for (int i = 0; i < 16; ++i) m = std::max(m, int(mono.e[i]));
    return m;
}

// Open-addressing accumulator with flat POD slots; the product loops dominate
// construction time, so inserts must not allocate.
class FlatAcc {
public:
    explicit FlatAcc(uint64_t mod, size_t expect) : mod_(mod) {
        size_t cap = 64;
        while (cap < expect * 2) cap <<= 1;
        slots_.assign(cap, Slot{});
    }

    void add(const M64& m, uint64_t c) {
        if (c == 0) return;
        if (count_ * 5 >= slots_.size() * 3) grow();
        size_t mask = slots_.size() - 1;
        size_t i = words_hash(m) & mask;
        while (slots_[i].used) {
            if (slots_[i].key == m) {
                slots_[i].val = (slots_[i].val + c) % mod_;
                return;
            }
            i = (i + 1) & mask;
        }
        slots_[i].used = 1;
        slots_[i].key = m;
        slots_[i].val = c % mod_;
        ++count_;
    }

    RPoly take_sorted() {
        RPoly out;
        out.reserve(count_);
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) out.emplace_back(from_words(s.key), s.val);
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    struct Slot {
        M64 key{};
        uint64_t val = 0;
        uint8_t used = 0;
    };

    void grow() {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(old.size() * 2, Slot{});
        count_ = 0;
        size_t mask = slots_.size() - 1;
        for (const Slot& s : old) {
            if (!s.used) continue;
            size_t j = words_hash(s.key) & mask;
            while (slots_[j].used) j = (j + 1) & mask;
            slots_[j] = s;
            ++count_;
        }
    }

    uint64_t mod_;
    std::vector<Slot> slots_;
    size_t count_ = 0;
};

RPoly r_mul(const RPoly& a, const RPoly& b, uint64_t mod) {
    require(max_exponent(a) + max_exponent(b) <= UINT16_MAX, errc::internal_error,
            "monomial exponent overflow");
    std::vector<M64> aw(a.size()), bw(b.size());
    std::vector<uint64_t> ac(a.size()), bc(b.size());
    for (size_t i = 0; i < a.size(); ++i) aw[i] = to_words(a[i].first), ac[i] = a[i].second;
    for (size_t j = 0; j < b.size(); ++j) bw[j] = to_words(b[j].first), bc[j] = b[j].second;
    FlatAcc acc(mod, std::min<size_t>(a.size() * b.size() + 1, size_t(1) << 18));
    for (size_t i = 0; i < aw.size(); ++i) {
        const M64& ma = aw[i];
        uint64_t ca = ac[i];
        for (size_t j = 0; j < bw.size(); ++j) {
            M64 m;
            m.w[0] = ma.w[0] + bw[j].w[0];
            m.w[1] = ma.w[1] + bw[j].w[1];
            m.w[2] = ma.w[2] + bw[j].w[2];
            m.w[3] = ma.w[3] + bw[j].w[3];
            acc.add(m, (ca * bc[j]) % mod);
        }
    }
    return acc.take_sorted();
}

RPoly r_pow(const RPoly& a, uint64_t k, uint64_t mod) {
    RPoly result = {{Mono{}, 1}};
    RPoly base = a;
    while (k > 0) {
        if (k & 1) result = r_mul(result, base, mod);
        if (k >>= 1) base = r_mul(base, base, mod);
    }
    return result;
}

void r_add_into(FlatAcc& acc, const RPoly& f) {
    for (const auto& [m, c] : f) acc.add(to_words(m), c);
}

RPoly r_scaled(const RPoly& f, uint64_t s, uint64_t mod) {
    RPoly r;
    r.reserve(f.size());
    for (const auto& [m, c] : f) {
        uint64_t v = (c * s) % mod;
        if (v != 0) r.emplace_back(m, v);
    }
    return r;
}

RPoly r_ghost(int64_t p, int k, int var_base, uint64_t mod) {
    RPoly r;
    uint64_t pi = 1;
    for (int i = 0; i <= k; ++i) {
        uint64_t e = 1;
        for (int j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(p);
        Mono m;
        m.e[var_base + i] = static_cast<uint16_t>(e);
        if (pi % mod != 0) r.emplace_back(m, pi % mod);
        pi *= static_cast<uint64_t>(p);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

// S_0..S_n and P_0..P_n with coefficients mod p^{n+1}; stage k is valid
// modulo p^{n+1-k}, which covers the mod-p reduction the kernels need.
std::pair<std::vector<RPoly>, std::vector<RPoly>> build_reduced_stages(int64_t p, int n) {
    uint64_t mod = 1;
    for (int i = 0; i <= n; ++i) {
        require(mod <= UINT64_MAX / static_cast<uint64_t>(p) / static_cast<uint64_t>(p),
                errc::usage_error, "modulus overflow");
        mod *= static_cast<uint64_t>(p);
    }
    std::vector<RPoly> S, P;
    {
        Mono y0, z0, yz;
        y0.e[0] = 1;
        z0.e[kWittZBase] = 1;
        yz.e[0] = 1;
        yz.e[kWittZBase] = 1;
        RPoly s0 = {{y0, 1}, {z0, 1}};
        std::sort(s0.begin(), s0.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        S.push_back(std::move(s0));
        P.push_back(RPoly{{yz, 1}});
    }
    for (int k = 1; k <= n; ++k) {
        RPoly wy = r_ghost(p, k, 0, mod);
        RPoly wz = r_ghost(p, k, kWittZBase, mod);
        FlatAcc acc_s(mod, 1024), acc_p(mod, 1024);
        r_add_into(acc_s, wy);
        r_add_into(acc_s, wz);
        r_add_into(acc_p, r_mul(wy, wz, mod));
        uint64_t pi = 1;
        for (int i = 0; i < k; ++i) {
            uint64_t e = 1;
            for (int j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(p);
            uint64_t neg_pi = (mod - pi % mod) % mod;
            r_add_into(acc_s, r_scaled(r_pow(S[i], e, mod), neg_pi, mod));
            r_add_into(acc_p, r_scaled(r_pow(P[i], e, mod), neg_pi, mod));
            pi *= static_cast<uint64_t>(p);
        }
        uint64_t pk = 1;
        for (int i = 0; i < k; ++i) pk *= static_cast<uint64_t>(p);
        RPoly numer_s = acc_s.take_sorted(), numer_p = acc_p.take_sorted();
        RPoly sk, pkpoly;
        sk.reserve(numer_s.size());
        pkpoly.reserve(numer_p.size());
        for (const auto& [m, c] : numer_s) {
            require(c % pk == 0, errc::inexact_division, "sum recursion not divisible");
            sk.emplace_back(m, c / pk);
        }
        for (const auto& [m, c] : numer_p) {
            require(c % pk == 0, errc::inexact_division, "product recursion not divisible");
            pkpoly.emplace_back(m, c / pk);
        }
        S.push_back(std::move(sk));
        P.push_back(std::move(pkpoly));
    }
    return {std::move(S), std::move(P)};
}

EvalProgram build_program(int64_t p, int n, bool product) {
    auto [S, P] = build_reduced_stages(p, n);
    EvalProgram prog;
    prog.p = p;
    prog.stages.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        const RPoly& poly = product ? P[k] : S[k];
        for (const auto& [mono, c] : poly) {
            int64_t rc = static_cast<int64_t>(c % static_cast<uint64_t>(p));
            if (rc == 0) continue;
            EvalTerm t;
            t.coeff = rc;
            t.e = mono.e;
            for (int v = 0; v < 16; ++v) prog.max_exp = std::max(prog.max_exp, int(t.e[v]));
            prog.stages[k].push_back(t);
        }
        // deterministic term order
        std::sort(prog.stages[k].begin(), prog.stages[k].end(),
                  [](const EvalTerm& a, const EvalTerm& b) {
                      return a.e != b.e ? a.e < b.e : a.coeff < b.coeff;
                  });
    }
    return prog;
}

struct ProgramKey {
    int64_t p;
    int n;
    bool product;
    bool operator<(const ProgramKey& o) const {
        return std::tie(p, n, product) < std::tie(o.p, o.n, o.product);
    }
};

const EvalProgram& cached_program(int64_t p, int n, bool product) {
    static std::map<ProgramKey, std::unique_ptr<EvalProgram>> cache;
    static std::shared_mutex mu;
    ProgramKey key{p, n, product};
    {
        std::shared_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    EvalProgram prog = build_program(p, n, product);
    std::unique_lock lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<EvalProgram>(std::move(prog))).first;
    return *it->second;
}

// Index-space power tables for a table-backed level.
struct IndexedArgs {
    FqIndexOps ops;
    // pow[v][e] = args[v]^e as a rank
    std::vector<std::vector<uint16_t>> pow;
};

bool index_args(const EvalProgram& prog, const std::vector<FqElement>& args, IndexedArgs& out) {
    if (args.empty()) return false;
    auto ops = fq_index_ops(args[0].p, args[0].m);
    if (!ops) return false;
    out.ops = *ops;
    out.pow.assign(args.size(), {});
    for (size_t v = 0; v < args.size(); ++v) {
        auto& pv = out.pow[v];
        pv.resize(prog.max_exp + 1);
        pv[0] = 1;
        uint16_t a = static_cast<uint16_t>(fq_element_index(args[v]));
        for (int e = 1; e <= prog.max_exp; ++e)
            pv[e] = out.ops.mul[static_cast<size_t>(pv[e - 1]) * out.ops.q + a];
    }
    return true;
}

uint16_t eval_terms_indexed(const IndexedArgs& ia, const EvalTerm* terms, size_t count) {
    const uint64_t q = ia.ops.q;
    uint16_t acc = 0;
    for (size_t t = 0; t < count; ++t) {
        const EvalTerm& term = terms[t];
        uint16_t prod = static_cast<uint16_t>(term.coeff); // constants rank as themselves
        for (int v = 0; v < 16; ++v) {
            uint16_t e = term.e[v];
            if (e == 0) continue;
            prod = ia.ops.mul[static_cast<size_t>(prod) * q + ia.pow[v][e]];
        }
        acc = ia.ops.add[static_cast<size_t>(acc) * q + prod];
    }
    return acc;
}

FqElement eval_terms_generic(const EvalProgram& prog, const EvalTerm* terms, size_t count,
                             const std::vector<FqElement>& args) {
    int64_t p = prog.p;
    int m = args[0].m;
    // generic power tables
    std::vector<std::vector<FqElement>> pow(args.size());
    for (size_t v = 0; v < args.size(); ++v) {
        pow[v].push_back(fq_one(p, m));
        for (int e = 1; e <= prog.max_exp; ++e) pow[v].push_back(fq_mul(pow[v].back(), args[v]));
    }
    FqElement acc = fq_zero(p, m);
    for (size_t t = 0; t < count; ++t) {
        const EvalTerm& term = terms[t];
        FqElement prod = fq_from_int(p, term.coeff);
        for (int v = 0; v < 16; ++v) {
            uint16_t e = term.e[v];
            if (e == 0) continue;
            prod = fq_mul(prod, pow[v][e]);
        }
        acc = fq_add(acc, prod);
    }
    return acc;
}

} // namespace

const EvalProgram& witt_add_program(int64_t p, int n) { return cached_program(p, n, false); }
const EvalProgram& witt_mul_program(int64_t p, int n) { return cached_program(p, n, true); }

FqElement eval_stage_serial(const EvalProgram& prog, int stage,
                            const std::vector<FqElement>& args) {
    const auto& terms = prog.stages.at(stage);
    IndexedArgs ia;
    if (index_args(prog, args, ia)) {
        uint16_t r = eval_terms_indexed(ia, terms.data(), terms.size());
        return fq_element_from_index(args[0].p, args[0].m, r);
    }
    return eval_terms_generic(prog, terms.data(), terms.size(), args);
}

FqElement eval_stage_parallel(const EvalProgram& prog, int stage,
                              const std::vector<FqElement>& args) {
    const auto& terms = prog.stages.at(stage);
#ifdef VDF_HAVE_OPENMP
    IndexedArgs ia;
    if (index_args(prog, args, ia)) {
        const uint64_t q = ia.ops.q;
        uint16_t acc = 0;
#pragma omp parallel
        {
            int nt = omp_get_num_threads();
            int id = omp_get_thread_num();
            size_t chunk = (terms.size() + nt - 1) / nt;
            size_t lo = std::min(terms.size(), chunk * id);
            size_t hi = std::min(terms.size(), lo + chunk);
            uint16_t local = eval_terms_indexed(ia, terms.data() + lo, hi - lo);
#pragma omp critical
            acc = ia.ops.add[static_cast<size_t>(acc) * q + local];
        }
        return fq_element_from_index(args[0].p, args[0].m, acc);
    }
    // generic elements: split term ranges, combine with field addition
    FqElement acc = fq_zero(args[0].p, args[0].m);
#pragma omp parallel
    {
        int nt = omp_get_num_threads();
        int id = omp_get_thread_num();
        size_t chunk = (terms.size() + nt - 1) / nt;
        size_t lo = std::min(terms.size(), chunk * id);
        size_t hi = std::min(terms.size(), lo + chunk);
        FqElement local = hi > lo
                              ? eval_terms_generic(prog, terms.data() + lo, hi - lo, args)
                              : fq_zero(args[0].p, args[0].m);
#pragma omp critical
        acc = fq_add(acc, local);
    }
    return acc;
#else
    return eval_stage_serial(prog, stage, args);
#endif
}

FqElement eval_stage(const EvalProgram& prog, int stage, const std::vector<FqElement>& args) {
#ifdef VDF_HAVE_OPENMP
    if (prog.stages.at(stage).size() >= 8192 && omp_get_max_threads() > 1)
        return eval_stage_parallel(prog, stage, args);
#endif
    return eval_stage_serial(prog, stage, args);
}

} // namespace vdf
