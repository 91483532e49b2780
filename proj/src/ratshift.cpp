#include "vdf/ratshift.hpp"

#include <algorithm>
#include <sstream>

namespace vdf {

namespace {

void q_trim(PolyQ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int q_deg(const PolyQ& f) { return static_cast<int>(f.size()) - 1; }

PolyQ q_add(const PolyQ& f, const PolyQ& g) {
    PolyQ r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = (i < f.size() ? f[i] : mpq_class(0)) + (i < g.size() ? g[i] : mpq_class(0));
    q_trim(r);
    return r;
}

PolyQ q_sub(const PolyQ& f, const PolyQ& g) {
    PolyQ r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = (i < f.size() ? f[i] : mpq_class(0)) - (i < g.size() ? g[i] : mpq_class(0));
    q_trim(r);
    return r;
}

PolyQ q_mul(const PolyQ& f, const PolyQ& g) {
    if (f.empty() || g.empty()) return {};
    PolyQ r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    q_trim(r);
    return r;
}

PolyQ q_scale(const PolyQ& f, const mpq_class& c) {
    if (c == 0) return {};
    PolyQ r = f;
    for (auto& x : r) x *= c;
    return r;
}

// division with remainder, g nonzero
std::pair<PolyQ, PolyQ> q_divmod(PolyQ f, const PolyQ& g) {
    q_trim(f);
    int dg = q_deg(g);
    require(dg >= 0, errc::zero_argument, "polynomial division by zero");
    PolyQ q;
    while (q_deg(f) >= dg) {
        int shift = q_deg(f) - dg;
        mpq_class c = f.back() / g.back();
        if (q.size() < static_cast<size_t>(shift + 1)) q.resize(shift + 1, 0);
        q[shift] += c;
        for (int i = 0; i <= dg; ++i) f[i + shift] -= c * g[i];
        q_trim(f);
    }
    return {q, f};
}

PolyQ q_gcd(PolyQ f, PolyQ g) {
    q_trim(f);
    q_trim(g);
    while (!g.empty()) {
        PolyQ r = q_divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        mpq_class lc = f.back();
        for (auto& c : f) c /= lc;
    }
    return f;
}

PolyQ q_shift(const PolyQ& f, int64_t k) {
    // f(s + k) by binomial expansion: coefficient of s^i in (s+k)^j is C(j,i) k^{j-i}
    PolyQ r;
    mpz_class kz(static_cast<long>(k));
    for (size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        PolyQ term(j + 1, 0);
        for (size_t i = 0; i <= j; ++i) {
            mpz_class b, kp;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(j),
                         static_cast<unsigned long>(i));
            mpz_pow_ui(kp.get_mpz_t(), kz.get_mpz_t(), static_cast<unsigned long>(j - i));
            term[i] = mpq_class(b * kp);
        }
        r = q_add(r, q_scale(term, f[j]));
    }
    return r;
}

std::string q_poly_to_string(const PolyQ& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = f.size(); j-- > 0;) {
        if (f[j] == 0) continue;
        mpq_class c = f[j];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        } else if (c < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        bool unit = (c == 1) && j > 0;
        if (!unit) os << c.get_str();
        if (j > 0) {
            if (!unit) os << "*";
            os << "s";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

} // namespace

RatShiftElement rs_make(PolyQ num, PolyQ den) {
    q_trim(num);
    q_trim(den);
    require(!den.empty(), errc::zero_argument, "zero denominator");
    if (num.empty()) return {PolyQ{}, PolyQ{1}};
    PolyQ g = q_gcd(num, den);
    if (q_deg(g) > 0) {
        num = q_divmod(num, g).first;
        den = q_divmod(den, g).first;
    }
    mpq_class lc = den.back();
    for (auto& c : den) c /= lc;
    for (auto& c : num) c /= lc;
    return {std::move(num), std::move(den)};
}

RatShiftElement rs_zero() { return {PolyQ{}, PolyQ{1}}; }
RatShiftElement rs_one() { return {PolyQ{1}, PolyQ{1}}; }
RatShiftElement rs_from_int(int64_t v) {
    return v == 0 ? rs_zero() : RatShiftElement{PolyQ{mpq_class(static_cast<long>(v))}, PolyQ{1}};
}
RatShiftElement rs_from_rational(const mpq_class& v) {
    return v == 0 ? rs_zero() : RatShiftElement{PolyQ{v}, PolyQ{1}};
}
RatShiftElement rs_s() { return {PolyQ{0, 1}, PolyQ{1}}; }

bool rs_is_zero(const RatShiftElement& a) { return a.num.empty(); }

RatShiftElement rs_add(const RatShiftElement& a, const RatShiftElement& b) {
    return rs_make(q_add(q_mul(a.num, b.den), q_mul(b.num, a.den)), q_mul(a.den, b.den));
}

RatShiftElement rs_sub(const RatShiftElement& a, const RatShiftElement& b) {
    return rs_make(q_sub(q_mul(a.num, b.den), q_mul(b.num, a.den)), q_mul(a.den, b.den));
}

RatShiftElement rs_neg(const RatShiftElement& a) {
    RatShiftElement r = a;
    for (auto& c : r.num) c = -c;
    return r;
}

RatShiftElement rs_mul(const RatShiftElement& a, const RatShiftElement& b) {
    return rs_make(q_mul(a.num, b.num), q_mul(a.den, b.den));
}

RatShiftElement rs_inv(const RatShiftElement& a) {
    require(!rs_is_zero(a), errc::zero_argument, "inverse of zero");
    return rs_make(a.den, a.num);
}

RatShiftElement rs_shift(const RatShiftElement& a, int64_t k) {
    if (rs_is_zero(a)) return a;
    return rs_make(q_shift(a.num, k), q_shift(a.den, k));
}

std::string rs_to_string(const RatShiftElement& a) {
    if (rs_is_zero(a)) return "0";
    std::string n = q_poly_to_string(a.num);
    if (q_deg(a.den) == 0 && a.den[0] == 1) return n;
    return "(" + n + ")/(" + q_poly_to_string(a.den) + ")";
}

namespace {

// Candidate denominators: 1 and monic products prod_{c=0..3} (s+c)^{e_c} with
// total degree <= cap, in colexicographic order of the exponent tuples.
std::vector<PolyQ> denominator_family(int cap) {
    std::vector<PolyQ> fam = {PolyQ{1}};
    cap = std::min(cap, 3);
    std::vector<PolyQ> lins;
    for (int c = 0; c < 4; ++c) lins.push_back(PolyQ{mpq_class(c), 1});
    std::array<int, 4> e{};
    auto advance = [&]() {
        for (int i = 0; i < 4; ++i) {
            if (++e[i] <= cap) return true;
            e[i] = 0;
        }
        return false;
    };
    while (advance()) {
        int total = e[0] + e[1] + e[2] + e[3];
        if (total < 1 || total > cap) continue;
        PolyQ q = {1};
        for (int c = 0; c < 4; ++c)
            for (int k = 0; k < e[c]; ++k) q = q_mul(q, lins[c]);
        fam.push_back(q);
    }
    return fam;
}

} // namespace

std::optional<RatShiftElement> try_solve_linear_sigma_shift(
    const std::vector<RatShiftElement>& alphas, int degree_bound) {
    require(!alphas.empty(), errc::usage_error, "no coefficients given");
    bool any = false;
    for (const auto& a : alphas) any = any || !rs_is_zero(a);
    require(any, errc::usage_error, "all coefficients vanish");
    int n = static_cast<int>(alphas.size()) - 1;

    // common denominator of the alphas
    PolyQ R = {1};
    for (const auto& a : alphas) {
        PolyQ g = q_gcd(R, a.den);
        R = q_mul(q_divmod(R, g).first, a.den);
    }
    std::vector<PolyQ> A; // A_i = R * alpha_i as polynomials
    for (const auto& a : alphas) {
        PolyQ t = q_mul(a.num, q_divmod(R, a.den).first);
        A.push_back(t);
    }

    for (const PolyQ& Q : denominator_family(degree_bound)) {
        // multiply the equation by R * prod_j Q(s+j):
        //   R*prodQ + sum_i A_i * P(s+i) * prod_{j != i} Q(s+j) = 0
        std::vector<PolyQ> Qs;
        for (int j = 0; j <= n; ++j) Qs.push_back(q_shift(Q, j));
        PolyQ prod_all = {1};
        for (const auto& q : Qs) prod_all = q_mul(prod_all, q);

        PolyQ constant = q_mul(R, prod_all);
        // columns: coefficient polynomials of each unknown u_k (P = sum u_k s^k)
        int D = degree_bound;
        std::vector<PolyQ> cols(D + 1);
        for (int i = 0; i <= n; ++i) {
            if (A[i].empty()) continue;
            PolyQ prod_others = {1};
            for (int j = 0; j <= n; ++j)
                if (j != i) prod_others = q_mul(prod_others, Qs[j]);
            PolyQ base = q_mul(A[i], prod_others);
            // s^k shifted by i: (s+i)^k
            PolyQ spow = {1};
            PolyQ s_plus_i = {mpq_class(i), 1};
            for (int k = 0; k <= D; ++k) {
                cols[k] = q_add(cols[k], q_mul(base, spow));
                spow = q_mul(spow, s_plus_i);
            }
        }

        int rows = static_cast<int>(constant.size());
        for (const auto& c : cols) rows = std::max(rows, static_cast<int>(c.size()));
        if (rows == 0) continue;

        // linear system: sum_k u_k * cols[k] + constant = 0, row per s-power
        std::vector<std::vector<mpq_class>> M(rows, std::vector<mpq_class>(D + 2, 0));
        for (int r = 0; r < rows; ++r) {
            for (int k = 0; k <= D; ++k)
                if (r < static_cast<int>(cols[k].size())) M[r][k] = cols[k][r];
            if (r < static_cast<int>(constant.size())) M[r][D + 1] = -constant[r];
        }
        int rank = 0;
        std::vector<int> pivot_col(rows, -1);
        for (int col = 0; col <= D && rank < rows; ++col) {
            int sel = -1;
            for (int row = rank; row < rows; ++row)
                if (M[row][col] != 0) {
                    sel = row;
                    break;
                }
            if (sel < 0) continue;
            std::swap(M[sel], M[rank]);
            mpq_class inv = M[rank][col];
            for (int k = col; k <= D + 1; ++k) M[rank][k] /= inv;
            for (int row = 0; row < rows; ++row) {
                if (row == rank || M[row][col] == 0) continue;
                mpq_class f = M[row][col];
                for (int k = col; k <= D + 1; ++k) M[row][k] -= f * M[rank][k];
            }
            pivot_col[rank] = col;
            ++rank;
        }
        bool consistent = true;
        for (int row = rank; row < rows; ++row)
            if (M[row][D + 1] != 0) consistent = false;
        if (!consistent) continue;

        PolyQ P(D + 1, 0);
        for (int r = 0; r < rank; ++r) P[pivot_col[r]] = M[r][D + 1];
        q_trim(P);
        RatShiftElement x = rs_make(P, Q);

        // exact verification against the original rational equation
        RatShiftElement lhs = rs_one();
        for (int i = 0; i <= n; ++i)
            lhs = rs_add(lhs, rs_mul(alphas[i], rs_shift(x, i)));
        if (rs_is_zero(lhs)) return x;
    }
    return std::nullopt;
}

RatShiftElement solve_linear_sigma_shift(const std::vector<RatShiftElement>& alphas,
                                         int degree_bound) {
    auto r = try_solve_linear_sigma_shift(alphas, degree_bound);
    if (!r)
        fail(errc::no_solution_within_bound,
             "no rational solution with degrees <= " + std::to_string(degree_bound));
    return *r;
}

void RatShiftEnumerator::refill() {
    ++budget_;
    batch_.clear();
    pos_ = 0;
    int64_t B = budget_;
    // integer-coefficient polynomials with degree < B and max |coeff| <= B,
    // skipping those already produced at smaller budgets
    int max_deg = static_cast<int>(std::min<int64_t>(B - 1, 3));
    for (int d = 0; d <= max_deg; ++d) {
        std::vector<int64_t> c(d + 1, -B);
        bool done = false;
        while (!done) {
            bool fresh = (d == B - 1);
            int64_t m = 0;
            for (int i = 0; i <= d; ++i) m = std::max(m, std::abs(c[i]));
            if (m == B) fresh = true;
            if (fresh && c[d] != 0) {
                PolyQ f(d + 1);
                for (int i = 0; i <= d; ++i) f[i] = mpq_class(static_cast<long>(c[i]));
                batch_.push_back(rs_make(f, PolyQ{1}));
            }
            // colex advance
            int i = 0;
            for (; i <= d; ++i) {
                if (++c[i] <= B) break;
                c[i] = -B;
            }
            if (i > d) done = true;
        }
    }
}

RatShiftElement RatShiftEnumerator::next() {
    while (pos_ >= batch_.size()) refill();
    return batch_[pos_++];
}

} // namespace vdf
