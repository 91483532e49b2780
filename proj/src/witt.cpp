#include "vdf/witt.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>

#include "vdf/witt_eval.hpp"

namespace vdf {

namespace {

mpz_class pz(int64_t p) { return mpz_class(static_cast<long>(p)); }

mpz_class p_power(int64_t p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

// Extends a working copy of the structure polynomials up to stage n.
void extend_structure(WittStructurePolys& sp, int64_t p, int n) {
    require(n <= kMaxWittStage, errc::usage_error,
            "structure polynomials supported up to stage " + std::to_string(kMaxWittStage));
    if (!sp.S.empty() && sp.n >= n) return;
    sp.p = p;
    if (sp.S.empty()) {
        IntPoly s0 = IntPoly::variable(kMaxPolyVars, 0) + IntPoly::variable(kMaxPolyVars, kWittZBase);
        IntPoly p0 = IntPoly::variable(kMaxPolyVars, 0) * IntPoly::variable(kMaxPolyVars, kWittZBase);
        sp.S = {s0};
        sp.P = {p0};
        sp.n = 0;
    }
    for (int k = sp.n + 1; k <= n; ++k) {
        IntPoly wy = witt_ghost_poly(p, k, kMaxPolyVars, 0);
        IntPoly wz = witt_ghost_poly(p, k, kMaxPolyVars, kWittZBase);
        IntPoly numer_s = wy + wz;
        IntPoly numer_p = wy * wz;
        for (int i = 0; i < k; ++i) {
            mpz_class pi = p_power(p, i);
            uint64_t e = 1;
            for (int j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(p);
            numer_s -= sp.S[i].pow(e).scaled(pi);
            numer_p -= sp.P[i].pow(e).scaled(pi);
        }
        mpz_class pk = p_power(p, k);
        sp.S.push_back(numer_s.div_exact(pk));
        sp.P.push_back(numer_p.div_exact(pk));
        sp.n = k;
    }
}

// Entries are immutable once published; a new stage count gets its own entry
// (seeded from the deepest cached prefix) so references stay valid.
const WittStructurePolys& structure_polys_impl(int64_t p, int n) {
    static std::map<std::pair<int64_t, int>, std::unique_ptr<WittStructurePolys>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, n});
    if (it != cache.end()) return *it->second;
    WittStructurePolys work;
    for (int k = n - 1; k >= 0; --k) {
        auto jt = cache.find({p, k});
        if (jt != cache.end()) {
            work = *jt->second;
            break;
        }
    }
    extend_structure(work, p, n);
    auto ptr = std::make_unique<WittStructurePolys>(std::move(work));
    const WittStructurePolys& ref = *ptr;
    cache.emplace(std::make_pair(p, n), std::move(ptr));
    return ref;
}

int common_level(const WittVector& a) {
    int l = 1;
    for (const auto& c : a.components) l = std::lcm(l, c.m);
    return l;
}

std::pair<WittVector, WittVector> align(const WittVector& a, const WittVector& b) {
    require(a.p == b.p && a.N == b.N, errc::mixed_context,
            "operands of different precision or prime");
    int l = std::lcm(common_level(a), common_level(b));
    return {witt_join_levels(a, l), witt_join_levels(b, l)};
}

std::vector<FqElement> make_args(const WittVector& a, const WittVector& b) {
    std::vector<FqElement> args(2 * kWittZBase, fq_zero(a.p, a.components[0].m));
    for (int i = 0; i < a.N && i < kWittZBase; ++i) args[i] = a.components[i];
    for (int i = 0; i < b.N && i < kWittZBase; ++i) args[kWittZBase + i] = b.components[i];
    return args;
}

} // namespace

const WittStructurePolys& witt_structure_polys(int64_t p, int n) {
    require(is_prime(p), errc::non_prime_modulus, "p = " + std::to_string(p));
    require(n >= 0, errc::usage_error, "stage must be nonnegative");
    return structure_polys_impl(p, n);
}

IntPoly witt_ghost_poly(int64_t p, int k, int nvars, int var_base) {
    IntPoly r(nvars);
    for (int i = 0; i <= k; ++i) {
        uint64_t e = 1;
        for (int j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(p);
        r += IntPoly::variable(nvars, var_base + i, static_cast<int>(e)).scaled(p_power(p, i));
    }
    return r;
}

WittVector witt_make(int64_t p, int N, std::vector<FqElement> components) {
    require(is_prime(p), errc::non_prime_modulus, "p = " + std::to_string(p));
    require(N >= 1, errc::usage_error, "precision must be >= 1");
    require(static_cast<int>(components.size()) == N, errc::bad_coordinate_length,
            "expected " + std::to_string(N) + " components");
    int l = 1;
    for (const auto& c : components) {
        require(c.p == p, errc::mixed_context, "component over a different prime");
        l = std::lcm(l, c.m);
    }
    WittVector w;
    w.p = p;
    w.N = N;
    w.components.reserve(N);
    for (auto& c : components) w.components.push_back(c.m == l ? std::move(c) : fq_embed(c, l));
    return w;
}

WittVector witt_zero(int64_t p, int N) {
    return witt_make(p, N, std::vector<FqElement>(N, fq_zero(p)));
}

WittVector witt_one(int64_t p, int N) {
    std::vector<FqElement> c(N, fq_zero(p));
    c[0] = fq_one(p);
    return witt_make(p, N, std::move(c));
}

WittVector witt_teichmuller(const FqElement& a0, int N) {
    std::vector<FqElement> c(N, fq_zero(a0.p, a0.m));
    c[0] = a0;
    return witt_make(a0.p, N, std::move(c));
}

bool witt_is_zero(const WittVector& a) {
    return std::all_of(a.components.begin(), a.components.end(),
                       [](const FqElement& c) { return fq_is_zero(c); });
}

bool witt_equal(const WittVector& a, const WittVector& b) {
    if (a.p != b.p || a.N != b.N) return false;
    for (int i = 0; i < a.N; ++i)
        if (!fq_equal(a.components[i], b.components[i])) return false;
    return true;
}

WittVector witt_join_levels(const WittVector& a, int level) {
    WittVector r = a;
    for (auto& c : r.components)
        if (c.m != level) c = fq_embed(c, level);
    return r;
}

WittVector witt_add(const WittVector& a0, const WittVector& b0) {
    auto [a, b] = align(a0, b0);
    const EvalProgram& prog = witt_add_program(a.p, a.N - 1);
    auto args = make_args(a, b);
    std::vector<FqElement> out;
    out.reserve(a.N);
    for (int k = 0; k < a.N; ++k) out.push_back(eval_stage(prog, k, args));
    return witt_make(a.p, a.N, std::move(out));
}

WittVector witt_neg(const WittVector& a) {
    // S_k = y_k + z_k + C_k(lower vars): solve S_k(a, b) = 0 stage by stage
    const EvalProgram& prog = witt_add_program(a.p, a.N - 1);
    WittVector b = witt_zero(a.p, a.N);
    b = witt_join_levels(b, common_level(a));
    for (int k = 0; k < a.N; ++k) {
        auto args = make_args(a, b);
        FqElement t = eval_stage(prog, k, args);
        b.components[k] = fq_neg(t);
    }
    return b;
}

WittVector witt_sub(const WittVector& a, const WittVector& b) {
    return witt_add(a, witt_neg(b));
}

WittVector witt_mul(const WittVector& a0, const WittVector& b0) {
    auto [a, b] = align(a0, b0);
    const EvalProgram& prog = witt_mul_program(a.p, a.N - 1);
    auto args = make_args(a, b);
    std::vector<FqElement> out;
    out.reserve(a.N);
    for (int k = 0; k < a.N; ++k) out.push_back(eval_stage(prog, k, args));
    return witt_make(a.p, a.N, std::move(out));
}

WittVector witt_pow(const WittVector& a, uint64_t e) {
    WittVector result = witt_one(a.p, a.N);
    WittVector base = a;
    while (e > 0) {
        if (e & 1) result = witt_mul(result, base);
        if (e >>= 1) base = witt_mul(base, base);
    }
    return result;
}

WittVector witt_from_integer(const mpz_class& m, int64_t p, int N) {
    // Solve the ghost equations m = a_0^{p^k} + p a_1^{p^{k-1}} + ... + p^k a_k
    // over Z, componentwise; x^{p^j} mod p^{j+1} depends only on x mod p, so
    // canonical digit lifts suffice. Pure integer arithmetic, independent of
    // witt_add/witt_mul (which it serves as an oracle for).
    mpz_class r = m % p_power(p, N);
    if (r < 0) r += p_power(p, N);
    std::vector<int64_t> digits(N, 0);
    std::vector<FqElement> comps;
    comps.reserve(N);
    mpz_class acc, term, t;
    for (int k = 0; k < N; ++k) {
        acc = r;
        for (int i = 0; i < k; ++i) {
            unsigned long e = 1;
            for (int j = 0; j < k - i; ++j) e *= static_cast<unsigned long>(p);
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(digits[i]), e);
            acc -= term * p_power(p, i);
        }
        mpz_class pk = p_power(p, k);
        t = acc / pk;
        require(acc % pk == 0, errc::internal_error, "ghost digit recursion failed");
        t %= p;
        if (t < 0) t += p;
        digits[k] = t.get_si();
        comps.push_back(fq_from_int(p, digits[k]));
    }
    return witt_make(p, N, std::move(comps));
}

WittVector witt_frobenius(const WittVector& a) {
    WittVector r = a;
    for (auto& c : r.components) c = fq_frobenius(c);
    return r;
}

WittVector witt_frobenius_inverse(const WittVector& a) {
    WittVector r = a;
    for (auto& c : r.components) c = fq_pth_root(c);
    return r;
}

std::optional<int> witt_valuation(const WittVector& a) {
    for (int i = 0; i < a.N; ++i)
        if (!fq_is_zero(a.components[i])) return i;
    return std::nullopt;
}

WittVector witt_mul_p(const WittVector& a, int cap) {
    int outN = std::min(a.N + 1, cap);
    std::vector<FqElement> c;
    c.reserve(outN);
    c.push_back(fq_zero(a.p, a.components[0].m));
    for (int i = 0; i + 1 < outN; ++i) c.push_back(fq_frobenius(a.components[i]));
    return witt_make(a.p, outN, std::move(c));
}

WittVector witt_div_p(const WittVector& a) {
    require(fq_is_zero(a.components[0]), errc::not_divisible, "valuation is zero");
    require(a.N >= 2, errc::precision_exhausted, "no precision left after division by p");
    std::vector<FqElement> c;
    c.reserve(a.N - 1);
    for (int i = 1; i < a.N; ++i) c.push_back(fq_pth_root(a.components[i]));
    return witt_make(a.p, a.N - 1, std::move(c));
}

WittVector witt_inv_unit(const WittVector& a) {
    auto v = witt_valuation(a);
    require(v && *v == 0, errc::division_by_zero_at_precision, "not a unit");
    WittVector x = witt_teichmuller(fq_inv(a.components[0]), a.N);
    WittVector two = witt_from_integer(2, a.p, a.N);
    // Newton: x <- x (2 - a x), quadratic convergence from the residue inverse
    int steps = 1;
    while ((1 << steps) < a.N) ++steps;
    for (int i = 0; i <= steps; ++i) x = witt_mul(x, witt_sub(two, witt_mul(a, x)));
    require(witt_equal(witt_mul(a, x), witt_one(a.p, a.N)), errc::internal_error,
            "unit inversion failed");
    return x;
}

WittVector witt_div_exact(const WittVector& a, const WittVector& b) {
    auto vb = witt_valuation(b);
    if (!vb) fail(errc::division_by_zero_at_precision, "divisor is zero at precision");
    auto va = witt_valuation(a);
    if (va && *va < *vb) fail(errc::not_divisible, "dividend valuation too small");
    WittVector x = a, y = b;
    for (int i = 0; i < *vb; ++i) {
        y = witt_div_p(y);
        if (witt_is_zero(x)) x = witt_zero(x.p, x.N - 1);
        else x = witt_div_p(x);
    }
    return witt_mul(x, witt_inv_unit(y));
}

FqElement witt_pi(const WittVector& a) { return a.components[0]; }

FqElement witt_ac(const WittVector& a) {
    auto v = witt_valuation(a);
    if (!v) fail(errc::zero_argument, "angular component of zero at precision");
    FqElement r = a.components[*v];
    for (int i = 0; i < *v; ++i) r = fq_pth_root(r);
    return r;
}

WittVector witt_cross_section(int64_t p, int N, int64_t gamma) {
    require(gamma >= 0, errc::usage_error, "cross-section over the valuation ring needs gamma >= 0");
    require(gamma < N, errc::precision_exhausted,
            "cross-section exponent exceeds working precision");
    std::vector<FqElement> c(N, fq_zero(p));
    c[static_cast<size_t>(gamma)] = fq_one(p);
    return witt_make(p, N, std::move(c));
}

WittVector witt_truncate(const WittVector& a, int N2) {
    require(N2 >= 1 && N2 <= a.N, errc::precision_exhausted, "bad truncation length");
    std::vector<FqElement> c(a.components.begin(), a.components.begin() + N2);
    return witt_make(a.p, N2, std::move(c));
}

std::vector<WittVector> del_components(const WittVector& a, int n) {
    require(n >= 0 && n <= a.N - 1, errc::precision_exhausted,
            "del stage exceeds working precision");
    std::vector<WittVector> del = {a};
    WittVector sig = a;
    for (int k = 1; k <= n; ++k) {
        sig = witt_frobenius(sig); // sigma^k(a)
        WittVector t = sig;
        for (int i = 0; i < k; ++i) {
            uint64_t e = 1;
            for (int j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(a.p);
            WittVector term = witt_pow(del[i], e); // precision N-i
            for (int j = 0; j < i; ++j) term = witt_mul_p(term, a.N);
            t = witt_sub(t, witt_truncate(term, t.N));
        }
        WittVector dk = t;
        for (int i = 0; i < k; ++i) dk = witt_div_p(dk);
        del.push_back(dk);
    }
    return del;
}

std::vector<WittVector> d_transform(const std::vector<WittVector>& y) {
    require(!y.empty(), errc::usage_error, "empty input");
    int64_t p = y[0].p;
    std::vector<WittVector> out;
    for (size_t k = 0; k < y.size(); ++k) {
        // W_k(y_0..y_k) = sum p^i y_i^{p^{k-i}}
        int common = INT32_MAX;
        std::vector<WittVector> terms;
        for (size_t i = 0; i <= k; ++i) {
            uint64_t e = 1;
            for (size_t j = 0; j < k - i; ++j) e *= static_cast<uint64_t>(p);
            WittVector t = witt_pow(y[i], e);
            for (size_t j = 0; j < i; ++j) t = witt_mul_p(t, t.N + 1);
            terms.push_back(t);
            common = std::min(common, t.N);
        }
        WittVector acc = witt_zero(p, common);
        for (auto& t : terms) acc = witt_add(acc, witt_truncate(t, common));
        out.push_back(acc);
    }
    return out;
}

std::map<std::vector<int>, WittVector> d_transform_of_form(
    const std::map<std::vector<int>, WittVector>& form, int64_t p, int N) {
    require(!form.empty(), errc::all_coefficients_zero, "empty form");
    size_t arity = form.begin()->first.size();
    require(arity >= 1 && arity <= static_cast<size_t>(kWittZBase), errc::usage_error,
            "unsupported form arity");
    int degree = -1;
    for (const auto& [mono, coeff] : form) {
        require(mono.size() == arity, errc::usage_error, "ragged exponent vectors");
        int d = 0;
        for (int e : mono) d += e;
        if (degree < 0) degree = d;
        require(d == degree, errc::not_homogeneous, "form is not homogeneous");
        (void)coeff;
    }
    require(degree >= 1, errc::not_homogeneous, "degree must be positive");

    int nvars = static_cast<int>(arity);
    std::map<mpz_class, WittVector> scalar_cache;
    mpz_class modulus = p_power(p, N);
    auto scalar = [&](const mpz_class& c) {
        mpz_class r = c % modulus;
        if (r < 0) r += modulus;
        auto it = scalar_cache.find(r);
        if (it == scalar_cache.end())
            it = scalar_cache.emplace(r, witt_from_integer(r, p, N)).first;
        return it->second;
    };

    std::map<std::vector<int>, WittVector> out;
    for (const auto& [mono, coeff] : form) {
        // expansion of prod_k W_k(y)^{mono[k]} over Z
        IntPoly expansion = IntPoly::constant(nvars, 1);
        for (int k = 0; k < nvars; ++k) {
            if (mono[k] == 0) continue;
            expansion = expansion * witt_ghost_poly(p, k, nvars, 0).pow(mono[k]);
        }
        for (const auto& [ymono, c] : expansion.terms()) {
            WittVector contrib = witt_mul(scalar(c), coeff);
            if (witt_is_zero(contrib)) continue;
            std::vector<int> key(arity);
            for (size_t v = 0; v < arity; ++v) key[v] = ymono.e[v];
            auto it = out.find(key);
            if (it == out.end()) out.emplace(key, contrib);
            else it->second = witt_add(it->second, contrib);
        }
    }
    // drop exact zeros
    for (auto it = out.begin(); it != out.end();) {
        if (witt_is_zero(it->second)) it = out.erase(it);
        else ++it;
    }
    return out;
}

} // namespace vdf
