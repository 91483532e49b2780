#include "vdf/fq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include <gmpxx.h>

namespace vdf {

namespace {

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, coefficients low-to-high, trailing zeros trimmed.

using Poly = std::vector<int64_t>;

int64_t mod_p(int64_t v, int64_t p) {
    int64_t r = v % p;
    return r < 0 ? r + p : r;
}

int64_t inv_mod_p(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = mod_p(a, p);
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    require(r == 1, errc::zero_argument, "inverse of zero residue");
    return mod_p(t, p);
}

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_add(const Poly& f, const Poly& g, int64_t p) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (i < f.size() ? f[i] : 0) + (i < g.size() ? g[i] : 0);
        r[i] = mod_p(v, p);
    }
    poly_trim(r);
    return r;
}

Poly poly_sub(const Poly& f, const Poly& g, int64_t p) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (i < f.size() ? f[i] : 0) - (i < g.size() ? g[i] : 0);
        r[i] = mod_p(v, p);
    }
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& f, const Poly& g, int64_t p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = mod_p(r[i + j] + f[i] * g[j], p);
    }
    poly_trim(r);
    return r;
}

// Remainder of f modulo monic g.
Poly poly_rem(Poly f, const Poly& g, int64_t p) {
    poly_trim(f);
    int dg = poly_deg(g);
    while (poly_deg(f) >= dg) {
        int64_t c = f.back();
        int shift = poly_deg(f) - dg;
        if (c != 0) {
            for (int i = 0; i <= dg; ++i) f[i + shift] = mod_p(f[i + shift] - c * g[i], p);
        }
        f.pop_back();
        poly_trim(f);
    }
    return f;
}

Poly poly_gcd(Poly f, Poly g, int64_t p) {
    poly_trim(f);
    poly_trim(g);
    while (!g.empty()) {
        // make g monic before reducing
        int64_t lc = g.back();
        if (lc != 1) {
            int64_t li = inv_mod_p(lc, p);
            for (auto& c : g) c = mod_p(c * li, p);
        }
        Poly r = poly_rem(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty() && f.back() != 1) {
        int64_t li = inv_mod_p(f.back(), p);
        for (auto& c : f) c = mod_p(c * li, p);
    }
    return f;
}

// h^p mod f by square-and-multiply on the exponent p.
Poly poly_pow_p_mod(const Poly& h, int64_t p, const Poly& f) {
    Poly result = {1}, base = poly_rem(h, f, p);
    int64_t e = p;
    while (e > 0) {
        if (e & 1) result = poly_rem(poly_mul(result, base, p), f, p);
        base = poly_rem(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

// x^{p^k} mod f.
Poly poly_frob_power(int64_t p, int k, const Poly& f) {
    Poly h = {0, 1};
    for (int i = 0; i < k; ++i) h = poly_pow_p_mod(h, p, f);
    return h;
}

bool poly_is_irreducible(const Poly& f, int64_t p) {
    int m = poly_deg(f);
    if (m == 1) return true;
    // x^{p^m} == x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for prime r | m.
    Poly x = {0, 1};
    Poly xqm = poly_frob_power(p, m, f);
    if (poly_sub(xqm, x, p) != Poly{}) return false;
    int rest = m;
    for (int r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        Poly g = poly_sub(poly_frob_power(p, m / r, f), x, p);
        if (poly_deg(poly_gcd(g, f, p)) != 0) return false;
    }
    return true;
}

std::vector<int> proper_divisors(int m) {
    std::vector<int> ds;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) ds.push_back(d);
    return ds;
}

// ---------------------------------------------------------------------------
// Level data: defining polynomial, Frobenius matrix, small-field tables.

constexpr uint64_t kTableCap = 256; // build lookup tables when p^m <= this

struct FqLevel {
    int64_t p = 0;
    int m = 0;
    uint64_t q = 0; // p^m, 0 if it overflows uint64
    Poly defpoly;   // monic, degree m
    std::vector<std::vector<int64_t>> frob_mat; // column j = (x^j)^p mod defpoly
    bool has_tables = false;
    std::vector<uint16_t> mul_table; // q*q
    std::vector<uint16_t> add_table; // q*q
    std::vector<uint16_t> inv_table; // q, 0 slot unused
    std::vector<uint16_t> frob_table;
};

uint64_t checked_pow(int64_t p, int m) {
    uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
        if (q > UINT64_MAX / static_cast<uint64_t>(p)) return 0;
        q *= static_cast<uint64_t>(p);
    }
    return q;
}

uint64_t coords_to_index(const std::vector<int64_t>& c, int64_t p) {
    uint64_t idx = 0;
    for (size_t i = c.size(); i-- > 0;) idx = idx * static_cast<uint64_t>(p) + c[i];
    return idx;
}

std::vector<int64_t> index_to_coords(uint64_t idx, int64_t p, int m) {
    std::vector<int64_t> c(m, 0);
    for (int i = 0; i < m; ++i) {
        c[i] = static_cast<int64_t>(idx % p);
        idx /= p;
    }
    return c;
}

// Raw coordinate-level arithmetic within one level.
std::vector<int64_t> raw_mul(const FqLevel& L, const std::vector<int64_t>& a,
                             const std::vector<int64_t>& b) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = mod_p(prod[i + j] + a[i] * b[j], L.p);
    }
    Poly r = poly_rem(prod, L.defpoly, L.p);
    r.resize(L.m, 0);
    return r;
}

std::vector<int64_t> raw_inv(const FqLevel& L, const std::vector<int64_t>& a) {
    // extended Euclid in F_p[x] against the defining polynomial
    Poly r0 = L.defpoly, r1 = a;
    poly_trim(r1);
    require(!r1.empty(), errc::zero_argument, "inverse of zero field element");
    Poly t0 = {}, t1 = {1};
    while (poly_deg(r1) > 0) {
        int64_t lc = r1.back();
        int64_t li = inv_mod_p(lc, L.p);
        // r0 = q*r1 + r2 with r1 made monic on the fly
        Poly q;
        Poly rem = r0;
        int d1 = poly_deg(r1);
        while (poly_deg(rem) >= d1) {
            int shift = poly_deg(rem) - d1;
            int64_t c = mod_p(rem.back() * li, L.p);
            if (q.size() < static_cast<size_t>(shift + 1)) q.resize(shift + 1, 0);
            q[shift] = mod_p(q[shift] + c, L.p);
            for (int i = 0; i <= d1; ++i)
                rem[i + shift] = mod_p(rem[i + shift] - c * r1[i], L.p);
            poly_trim(rem);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly t2 = poly_sub(t0, poly_mul(q, t1, L.p), L.p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    require(!r1.empty(), errc::zero_argument, "element not invertible");
    int64_t li = inv_mod_p(r1[0], L.p);
    Poly res = t1;
    for (auto& c : res) c = mod_p(c * li, L.p);
    res.resize(L.m, 0);
    return res;
}

std::vector<int64_t> raw_frobenius(const FqLevel& L, const std::vector<int64_t>& a) {
    std::vector<int64_t> r(L.m, 0);
    for (int j = 0; j < L.m; ++j) {
        if (a[j] == 0) continue;
        const auto& col = L.frob_mat[j];
        for (int i = 0; i < L.m; ++i) r[i] = mod_p(r[i] + a[j] * col[i], L.p);
    }
    return r;
}

// ---------------------------------------------------------------------------
// The tower: levels plus a compatible system of embeddings.

struct EmbeddingKey {
    int from, to;
    bool operator<(const EmbeddingKey& o) const {
        return from != o.from ? from < o.from : to < o.to;
    }
};

class FqTower {
public:
    explicit FqTower(int64_t p) : p_(p) {}

    const FqLevel& level(int m);
    // coordinates (at level `to`) of the image of the level-`from` generator
    const std::vector<int64_t>& embedding_image(int from, int to);

    int64_t p() const { return p_; }

private:
    void create_level_locked(int m);
    void define_embedding_locked(int from, int to);
    std::vector<int64_t> apply_embedding_locked(int from, int to,
                                                const std::vector<int64_t>& coords);
    std::vector<std::vector<int64_t>> roots_of_defpoly_locked(int a, int b);
    std::vector<int64_t> find_one_root_locked(const Poly& f, const FqLevel& L);

    int64_t p_;
    std::map<int, std::unique_ptr<FqLevel>> levels_;
    std::map<EmbeddingKey, std::vector<int64_t>> embeddings_;
    std::shared_mutex mutex_;
};

std::map<int64_t, std::unique_ptr<FqTower>>& tower_registry() {
    static std::map<int64_t, std::unique_ptr<FqTower>> reg;
    return reg;
}

std::mutex& tower_registry_mutex() {
    static std::mutex mu;
    return mu;
}

FqTower& tower(int64_t p) {
    std::lock_guard<std::mutex> lock(tower_registry_mutex());
    auto& reg = tower_registry();
    auto it = reg.find(p);
    if (it == reg.end()) {
        require(is_prime(p), errc::non_prime_modulus, "p = " + std::to_string(p));
        it = reg.emplace(p, std::make_unique<FqTower>(p)).first;
    }
    return *it->second;
}

const FqLevel& FqTower::level(int m) {
    {
        std::shared_lock lock(mutex_);
        auto it = levels_.find(m);
        if (it != levels_.end()) return *it->second;
    }
    std::unique_lock lock(mutex_);
    create_level_locked(m);
    return *levels_.at(m);
}

const std::vector<int64_t>& FqTower::embedding_image(int from, int to) {
    {
        std::shared_lock lock(mutex_);
        auto it = embeddings_.find({from, to});
        if (it != embeddings_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    create_level_locked(from);
    create_level_locked(to);
    auto it = embeddings_.find({from, to});
    require(it != embeddings_.end(), errc::internal_error, "missing embedding after closure");
    return it->second;
}

void FqTower::create_level_locked(int m) {
    if (levels_.count(m)) return;
    require(m >= 1, errc::bad_coordinate_length, "extension degree must be >= 1");
    for (int d : proper_divisors(m)) create_level_locked(d);

    auto L = std::make_unique<FqLevel>();
    L->p = p_;
    L->m = m;
    L->q = checked_pow(p_, m);

    // lexicographically smallest monic irreducible, coefficient sequence
    // ordered high-to-low
    if (m == 1) {
        L->defpoly = {0, 1};
    } else {
        uint64_t bound = checked_pow(p_, m);
        require(bound != 0, errc::internal_error, "defining-poly search space too large");
        bool found = false;
        for (uint64_t k = 0; k < bound; ++k) {
            Poly f = index_to_coords(k, p_, m);
            f.push_back(1);
            if (poly_is_irreducible(f, p_)) {
                L->defpoly = f;
                found = true;
                break;
            }
        }
        require(found, errc::internal_error, "no irreducible polynomial found");
    }

    // Frobenius matrix: images of basis powers under x -> x^p
    Poly xp = poly_frob_power(p_, 1, L->defpoly);
    L->frob_mat.resize(m);
    Poly cur = {1};
    for (int j = 0; j < m; ++j) {
        Poly padded = cur;
        padded.resize(m, 0);
        L->frob_mat[j] = padded;
        cur = poly_rem(poly_mul(cur, xp, p_), L->defpoly, p_);
    }

    if (L->q != 0 && L->q <= kTableCap) {
        uint64_t q = L->q;
        L->mul_table.resize(q * q);
        L->add_table.resize(q * q);
        L->inv_table.assign(q, 0);
        L->frob_table.resize(q);
        for (uint64_t i = 0; i < q; ++i) {
            auto a = index_to_coords(i, p_, m);
            L->frob_table[i] = static_cast<uint16_t>(coords_to_index(raw_frobenius(*L, a), p_));
            for (uint64_t j = 0; j <= i; ++j) {
                auto b = index_to_coords(j, p_, m);
                uint16_t ij = static_cast<uint16_t>(coords_to_index(raw_mul(*L, a, b), p_));
                L->mul_table[i * q + j] = ij;
                L->mul_table[j * q + i] = ij;
                if (ij == 1) {
                    L->inv_table[i] = static_cast<uint16_t>(j);
                    L->inv_table[j] = static_cast<uint16_t>(i);
                }
                std::vector<int64_t> s(m);
                for (int k = 0; k < m; ++k) s[k] = mod_p(a[k] + b[k], p_);
                uint16_t sij = static_cast<uint16_t>(coords_to_index(s, p_));
                L->add_table[i * q + j] = sij;
                L->add_table[j * q + i] = sij;
            }
        }
        L->has_tables = true;
    }

    std::vector<int> existing_multiples;
    for (const auto& [lev, ptr] : levels_)
        if (lev % m == 0 && lev != m) existing_multiples.push_back(lev);

    levels_.emplace(m, std::move(L));

    for (int d : proper_divisors(m))
        if (levels_.count(d)) define_embedding_locked(d, m);
    for (int t : existing_multiples) define_embedding_locked(m, t);
}

std::vector<int64_t> FqTower::apply_embedding_locked(int from, int to,
                                                     const std::vector<int64_t>& coords) {
    if (from == to) return coords;
    auto it = embeddings_.find({from, to});
    require(it != embeddings_.end(), errc::internal_error, "embedding not defined");
    const auto& img = it->second;
    const FqLevel& L = *levels_.at(to);
    // Horner: sum coords[i] * img^i
    std::vector<int64_t> acc(L.m, 0);
    for (size_t i = coords.size(); i-- > 0;) {
        acc = raw_mul(L, acc, img);
        acc[0] = mod_p(acc[0] + coords[i], L.p);
    }
    return acc;
}

void FqTower::define_embedding_locked(int from, int to) {
    if (embeddings_.count({from, to})) return;
    if (from == 1) {
        // prime field embeds as constants
        std::vector<int64_t> img(levels_.at(to)->m, 0);
        img[0] = 1;
        embeddings_.emplace(EmbeddingKey{from, to}, std::move(img));
        return;
    }

    auto roots = roots_of_defpoly_locked(from, to);
    // collect forced image from chains from -> c -> to, and filter candidates
    // against chains d -> from -> to for lower levels d
    std::vector<int> intermediates, lowers;
    for (const auto& [lev, ptr] : levels_) {
        if (lev != from && lev != to && lev % from == 0 && to % lev == 0 &&
            embeddings_.count({from, lev}) && embeddings_.count({lev, to}))
            intermediates.push_back(lev);
        if (lev < from && from % lev == 0 && embeddings_.count({lev, from}) &&
            embeddings_.count({lev, to}))
            lowers.push_back(lev);
    }

    std::optional<std::vector<int64_t>> forced;
    for (int c : intermediates) {
        auto img = apply_embedding_locked(c, to, embeddings_.at({from, c}));
        if (forced) {
            require(*forced == img, errc::internal_error, "incompatible embedding chains");
        } else {
            forced = std::move(img);
        }
    }

    const FqLevel& Lt = *levels_.at(to);
    auto colex_less = [](const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    };
    std::sort(roots.begin(), roots.end(), colex_less);

    for (const auto& r : roots) {
        if (forced && r != *forced) continue;
        bool ok = true;
        for (int d : lowers) {
            // image of gen_d through `from` must match the stored direct image
            const auto& gd_in_from = embeddings_.at({d, from});
            std::vector<int64_t> via(Lt.m, 0);
            for (size_t i = gd_in_from.size(); i-- > 0;) {
                via = raw_mul(Lt, via, r);
                via[0] = mod_p(via[0] + gd_in_from[i], Lt.p);
            }
            if (via != embeddings_.at({d, to})) {
                ok = false;
                break;
            }
        }
        if (ok) {
            embeddings_.emplace(EmbeddingKey{from, to}, r);
            return;
        }
    }
    fail(errc::internal_error, "no compatible embedding root found");
}

std::vector<std::vector<int64_t>> FqTower::roots_of_defpoly_locked(int a, int b) {
    const FqLevel& La = *levels_.at(a);
    const FqLevel& Lb = *levels_.at(b);
    std::vector<std::vector<int64_t>> roots;

    if (Lb.q != 0 && Lb.q <= kTableCap) {
        for (uint64_t i = 0; i < Lb.q; ++i) {
            auto x = index_to_coords(i, p_, Lb.m);
            // evaluate defpoly_a at x by Horner
            std::vector<int64_t> acc(Lb.m, 0);
            for (size_t k = La.defpoly.size(); k-- > 0;) {
                acc = raw_mul(Lb, acc, x);
                acc[0] = mod_p(acc[0] + La.defpoly[k], Lb.p);
            }
            if (std::all_of(acc.begin(), acc.end(), [](int64_t c) { return c == 0; }))
                roots.push_back(x);
        }
        return roots;
    }

    // one root by deterministic equal-degree splitting, then its Frobenius orbit
    auto r = find_one_root_locked(La.defpoly, Lb);
    for (int k = 0; k < a; ++k) {
        roots.push_back(r);
        r = raw_frobenius(Lb, r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<int64_t> FqTower::find_one_root_locked(const Poly& f, const FqLevel& L) {
    // Polynomials over the level, coefficients low-to-high as coordinate rows.
    using EPoly = std::vector<std::vector<int64_t>>;
    auto zero = std::vector<int64_t>(L.m, 0);
    auto is_zero_c = [](const std::vector<int64_t>& c) {
        return std::all_of(c.begin(), c.end(), [](int64_t v) { return v == 0; });
    };
    auto trim = [&](EPoly& g) { while (!g.empty() && is_zero_c(g.back())) g.pop_back(); };
    auto mul = [&](const EPoly& g, const EPoly& h) {
        if (g.empty() || h.empty()) return EPoly{};
        EPoly r(g.size() + h.size() - 1, zero);
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = 0; j < h.size(); ++j) {
                auto t = raw_mul(L, g[i], h[j]);
                for (int k = 0; k < L.m; ++k) r[i + j][k] = mod_p(r[i + j][k] + t[k], L.p);
            }
        trim(r);
        return r;
    };
    auto rem = [&](EPoly g, const EPoly& h) {
        trim(g);
        int dh = static_cast<int>(h.size()) - 1;
        auto lcinv = raw_inv(L, h.back());
        while (static_cast<int>(g.size()) - 1 >= dh) {
            auto c = raw_mul(L, g.back(), lcinv);
            int shift = static_cast<int>(g.size()) - 1 - dh;
            if (!is_zero_c(c)) {
                for (int i = 0; i <= dh; ++i) {
                    auto t = raw_mul(L, c, h[i]);
                    for (int k = 0; k < L.m; ++k)
                        g[i + shift][k] = mod_p(g[i + shift][k] - t[k], L.p);
                }
            }
            g.pop_back();
            trim(g);
        }
        return g;
    };
    auto gcd = [&](EPoly g, EPoly h) {
        trim(g);
        trim(h);
        while (!h.empty()) {
            EPoly r = rem(g, h);
            g = std::move(h);
            h = std::move(r);
        }
        if (!g.empty()) {
            auto li = raw_inv(L, g.back());
            for (auto& c : g) c = raw_mul(L, c, li);
        }
        return g;
    };
    auto pow_mod = [&](EPoly base, const mpz_class& e, const EPoly& h) {
        EPoly result = {std::vector<int64_t>(L.m, 0)};
        result[0][0] = 1;
        base = rem(base, h);
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), h);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base), h);
        }
        return result;
    };

    // lift f from F_p coefficients
    EPoly F;
    for (int64_t c : f) {
        auto cc = zero;
        cc[0] = mod_p(c, L.p);
        F.push_back(cc);
    }
    trim(F);

    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(L.p),
                  static_cast<unsigned long>(L.m));

    EPoly onep = {std::vector<int64_t>(L.m, 0)};
    onep[0][0] = 1;

    uint64_t delta_index = 1;
    while (F.size() > 2) {
        require(delta_index < 100000, errc::internal_error, "root splitting did not converge");
        auto delta = index_to_coords(delta_index++, L.p, L.m);
        EPoly g;
        if (L.p == 2) {
            // trace map of delta * x
            EPoly twisted = {std::vector<int64_t>(L.m, 0), delta};
            EPoly acc = rem(twisted, F), term = acc;
            for (int i = 1; i < L.m; ++i) {
                term = rem(mul(term, term), F);
                EPoly sum(std::max(acc.size(), term.size()), zero);
                for (size_t k = 0; k < sum.size(); ++k)
                    for (int j = 0; j < L.m; ++j)
                        sum[k][j] = mod_p((k < acc.size() ? acc[k][j] : 0) +
                                              (k < term.size() ? term[k][j] : 0),
                                          2);
                acc = std::move(sum);
                trim(acc);
            }
            g = acc;
        } else {
            EPoly shifted = {delta, std::vector<int64_t>(L.m, 0)};
            shifted[1][0] = 1; // x + delta
            mpz_class e = (q - 1) / 2;
            g = pow_mod(shifted, e, F);
            // subtract 1
            if (g.empty()) g = {zero};
            g[0][0] = mod_p(g[0][0] - 1, L.p);
            trim(g);
        }
        EPoly d = gcd(g, F);
        size_t dd = d.empty() ? 0 : d.size() - 1;
        if (dd > 0 && dd < F.size() - 1) F = std::move(d);
    }
    require(F.size() == 2, errc::internal_error, "expected linear factor");
    auto li = raw_inv(L, F[1]);
    auto root = raw_mul(L, F[0], li);
    for (auto& c : root) c = mod_p(-c, L.p);
    return root;
}

const FqLevel& level_of(const FqElement& a) { return tower(a.p).level(a.m); }

FqElement make_raw(int64_t p, int m, std::vector<int64_t> coords) {
    FqElement e;
    e.p = p;
    e.m = m;
    e.coeffs = std::move(coords);
    return e;
}

} // namespace

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FqElement fq_make(int64_t p, int m, std::vector<int64_t> coords) {
    require(is_prime(p), errc::non_prime_modulus, "p = " + std::to_string(p));
    require(m >= 1, errc::bad_coordinate_length, "extension degree must be >= 1");
    require(static_cast<int>(coords.size()) == m, errc::bad_coordinate_length,
            "expected " + std::to_string(m) + " coordinates, got " +
                std::to_string(coords.size()));
    for (auto& c : coords) c = mod_p(c, p);
    tower(p).level(m); // construct the level eagerly
    return make_raw(p, m, std::move(coords));
}

FqElement fq_zero(int64_t p, int m) { return fq_make(p, m, std::vector<int64_t>(m, 0)); }

FqElement fq_one(int64_t p, int m) {
    std::vector<int64_t> c(m, 0);
    c[0] = 1;
    return fq_make(p, m, std::move(c));
}

FqElement fq_from_int(int64_t p, int64_t value) { return fq_make(p, 1, {mod_p(value, p)}); }

FqElement fq_generator(int64_t p, int m) {
    std::vector<int64_t> c(m, 0);
    if (m > 1) c[1] = 1;
    else c[0] = 1;
    return fq_make(p, m, std::move(c));
}

std::vector<int64_t> fq_defining_poly(int64_t p, int m) {
    return tower(p).level(m).defpoly;
}

bool fq_is_zero(const FqElement& a) {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](int64_t c) { return c == 0; });
}

std::pair<FqElement, FqElement> fq_join(const FqElement& a, const FqElement& b) {
    require(a.p == b.p, errc::mixed_context, "elements over different primes");
    if (a.m == b.m) return {a, b};
    int l = std::lcm(a.m, b.m);
    return {fq_embed(a, l), fq_embed(b, l)};
}

bool fq_equal(const FqElement& a, const FqElement& b) {
    if (a.p != b.p) return false;
    auto [x, y] = fq_join(a, b);
    return x.coeffs == y.coeffs;
}

FqElement fq_add(const FqElement& a, const FqElement& b) {
    auto [x, y] = fq_join(a, b);
    for (int i = 0; i < x.m; ++i) x.coeffs[i] = mod_p(x.coeffs[i] + y.coeffs[i], x.p);
    return x;
}

FqElement fq_sub(const FqElement& a, const FqElement& b) {
    auto [x, y] = fq_join(a, b);
    for (int i = 0; i < x.m; ++i) x.coeffs[i] = mod_p(x.coeffs[i] - y.coeffs[i], x.p);
    return x;
}

FqElement fq_neg(const FqElement& a) {
    FqElement r = a;
    for (auto& c : r.coeffs) c = mod_p(-c, a.p);
    return r;
}

FqElement fq_mul(const FqElement& a, const FqElement& b) {
    auto [x, y] = fq_join(a, b);
    const FqLevel& L = level_of(x);
    if (L.has_tables) {
        uint64_t idx = static_cast<uint64_t>(
            L.mul_table[coords_to_index(x.coeffs, x.p) * L.q + coords_to_index(y.coeffs, y.p)]);
        return make_raw(x.p, x.m, index_to_coords(idx, x.p, x.m));
    }
    return make_raw(x.p, x.m, raw_mul(L, x.coeffs, y.coeffs));
}

FqElement fq_inv(const FqElement& a) {
    require(!fq_is_zero(a), errc::zero_argument, "inverse of zero");
    const FqLevel& L = level_of(a);
    if (L.has_tables) {
        uint64_t idx = L.inv_table[coords_to_index(a.coeffs, a.p)];
        return make_raw(a.p, a.m, index_to_coords(idx, a.p, a.m));
    }
    return make_raw(a.p, a.m, raw_inv(L, a.coeffs));
}

FqElement fq_pow(const FqElement& a, uint64_t e) {
    FqElement result = fq_one(a.p, a.m);
    FqElement base = a;
    while (e > 0) {
        if (e & 1) result = fq_mul(result, base);
        base = fq_mul(base, base);
        e >>= 1;
    }
    return result;
}

FqElement fq_frobenius(const FqElement& a) {
    const FqLevel& L = level_of(a);
    if (L.has_tables)
        return make_raw(a.p, a.m,
                        index_to_coords(L.frob_table[coords_to_index(a.coeffs, a.p)], a.p, a.m));
    return make_raw(a.p, a.m, raw_frobenius(L, a.coeffs));
}

FqElement fq_pth_root(const FqElement& a) { return fq_frobenius_iter(a, -1); }

FqElement fq_frobenius_iter(const FqElement& a, int64_t k) {
    int64_t r = k % a.m;
    if (r < 0) r += a.m;
    FqElement x = a;
    for (int64_t i = 0; i < r; ++i) x = fq_frobenius(x);
    return x;
}

FqElement fq_embed(const FqElement& a, int m2) {
    if (a.m == m2) return a;
    require(m2 % a.m == 0, errc::bad_coordinate_length,
            "no canonical embedding from level " + std::to_string(a.m) + " to " +
                std::to_string(m2));
    FqTower& tw = tower(a.p);
    const FqLevel& Lt = tw.level(m2);
    const auto& img = tw.embedding_image(a.m, m2);
    std::vector<int64_t> acc(Lt.m, 0);
    for (size_t i = a.coeffs.size(); i-- > 0;) {
        acc = raw_mul(Lt, acc, img);
        acc[0] = mod_p(acc[0] + a.coeffs[i], Lt.p);
    }
    return make_raw(a.p, m2, std::move(acc));
}

uint64_t fq_element_index(const FqElement& a) { return coords_to_index(a.coeffs, a.p); }

FqElement fq_element_from_index(int64_t p, int m, uint64_t index) {
    return fq_make(p, m, index_to_coords(index, p, m));
}

std::optional<FqElement> solve_additive_at_level(const std::vector<FqElement>& alphas, int m) {
    int64_t p = alphas.at(0).p;
    std::vector<FqElement> al;
    al.reserve(alphas.size());
    for (const auto& a : alphas) al.push_back(fq_embed(a, m));

    // columns of the F_p-linear map x -> sum alphas[i] x^{p^i} on basis vectors
    std::vector<std::vector<int64_t>> mat(m, std::vector<int64_t>(m + 1, 0));
    for (int j = 0; j < m; ++j) {
        std::vector<int64_t> basis(m, 0);
        basis[j] = 1;
        FqElement pw = fq_make(p, m, basis);
        FqElement acc = fq_zero(p, m);
        for (size_t i = 0; i < al.size(); ++i) {
            acc = fq_add(acc, fq_mul(al[i], pw));
            pw = fq_frobenius(pw);
        }
        for (int i = 0; i < m; ++i) mat[i][j] = acc.coeffs[i];
    }
    // right-hand side: -1
    mat[0][m] = mod_p(-1, p);

    // Gaussian elimination over F_p
    int rank = 0;
    std::vector<int> pivot_col(m, -1);
    for (int col = 0; col < m && rank < m; ++col) {
        int sel = -1;
        for (int row = rank; row < m; ++row)
            if (mat[row][col] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(mat[sel], mat[rank]);
        int64_t inv = inv_mod_p(mat[rank][col], p);
        for (int k = col; k <= m; ++k) mat[rank][k] = mod_p(mat[rank][k] * inv, p);
        for (int row = 0; row < m; ++row) {
            if (row == rank || mat[row][col] == 0) continue;
            int64_t f = mat[row][col];
            for (int k = col; k <= m; ++k)
                mat[row][k] = mod_p(mat[row][k] - f * mat[rank][k], p);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int row = rank; row < m; ++row)
        if (mat[row][m] != 0) return std::nullopt;

    std::vector<int64_t> x(m, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = mat[r][m];
    return fq_make(p, m, std::move(x));
}

int fq_minimal_level(const FqElement& a) {
    for (int d = 1; d < a.m; ++d) {
        if (a.m % d != 0) continue;
        if (fq_equal(fq_frobenius_iter(a, d), a)) return d;
    }
    return a.m;
}

FqElement fq_minimize(const FqElement& a) {
    int d = fq_minimal_level(a);
    if (d == a.m) return a;
    // express a in the power basis of the embedded level-d generator
    int64_t p = a.p;
    int m = a.m;
    FqElement g = fq_embed(fq_generator(p, d), m);
    std::vector<std::vector<int64_t>> mat(m, std::vector<int64_t>(d + 1, 0));
    FqElement pw = fq_one(p, m);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < m; ++i) mat[i][j] = pw.coeffs[i];
        pw = fq_mul(pw, g);
    }
    for (int i = 0; i < m; ++i) mat[i][d] = a.coeffs[i];

    int rank = 0;
    std::vector<int> pivot_col(m, -1);
    for (int col = 0; col < d && rank < m; ++col) {
        int sel = -1;
        for (int row = rank; row < m; ++row)
            if (mat[row][col] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(mat[sel], mat[rank]);
        int64_t inv = inv_mod_p(mat[rank][col], p);
        for (int k = col; k <= d; ++k) mat[rank][k] = mod_p(mat[rank][k] * inv, p);
        for (int row = 0; row < m; ++row) {
            if (row == rank || mat[row][col] == 0) continue;
            int64_t f = mat[row][col];
            for (int k = col; k <= d; ++k)
                mat[row][k] = mod_p(mat[row][k] - f * mat[rank][k], p);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int row = rank; row < m; ++row)
        require(mat[row][d] == 0, errc::internal_error, "subfield expression failed");
    std::vector<int64_t> x(d, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = mat[r][d];
    return fq_make(p, d, std::move(x));
}

std::optional<FqElement> try_solve_additive_equation(const std::vector<FqElement>& alphas,
                                                     int max_level) {
    require(!alphas.empty(), errc::usage_error, "no coefficients given");
    int64_t p = alphas[0].p;
    int base = 1;
    bool any_nonzero = false;
    std::vector<FqElement> reduced;
    reduced.reserve(alphas.size());
    for (const auto& a : alphas) {
        require(a.p == p, errc::mixed_context, "coefficients over different primes");
        FqElement r = fq_minimize(a);
        base = std::lcm(base, r.m);
        if (!fq_is_zero(r)) any_nonzero = true;
        reduced.push_back(std::move(r));
    }
    require(any_nonzero, errc::usage_error, "all coefficients vanish");

    for (int m = base; m <= max_level; m += base) {
        if (auto r = solve_additive_at_level(reduced, m)) return r;
    }
    return std::nullopt;
}

FqElement solve_additive_equation(const std::vector<FqElement>& alphas, int max_level) {
    auto r = try_solve_additive_equation(alphas, max_level);
    if (!r)
        fail(errc::no_solution_within_bound,
             "no root in the tower up to level " + std::to_string(max_level));
    return *r;
}

std::optional<FqIndexOps> fq_index_ops(int64_t p, int m) {
    const FqLevel& L = tower(p).level(m);
    if (!L.has_tables) return std::nullopt;
    FqIndexOps ops;
    ops.q = L.q;
    ops.mul = L.mul_table.data();
    ops.add = L.add_table.data();
    ops.frob = L.frob_table.data();
    return ops;
}

FqElement FqEnumerator::next() {
    uint64_t q = checked_pow(p_, level_);
    while (q != 0 && index_ >= q) {
        ++level_;
        index_ = 0;
        q = checked_pow(p_, level_);
    }
    return fq_element_from_index(p_, level_, index_++);
}

} // namespace vdf
