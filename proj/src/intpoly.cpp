#include "vdf/intpoly.hpp"

namespace vdf {

IntPoly IntPoly::constant(int nvars, const mpz_class& c) {
    IntPoly r(nvars);
    if (c != 0) r.terms_.emplace(Mono{}, c);
    return r;
}

IntPoly IntPoly::variable(int nvars, int index, int exponent) {
    IntPoly r(nvars);
    require(index >= 0 && index < nvars, errc::usage_error, "variable index out of range");
    if (exponent == 0) return constant(nvars, 1);
    Mono m;
    m.e[index] = static_cast<uint16_t>(exponent);
    r.terms_.emplace(m, 1);
    return r;
}

int IntPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int i = 0; i < nvars_; ++i) t += m.e[i];
        d = std::max(d, t);
    }
    return d;
}

bool IntPoly::is_homogeneous(int* degree_out) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int i = 0; i < nvars_; ++i) t += m.e[i];
        if (d < 0) d = t;
        else if (t != d) return false;
    }
    if (degree_out) *degree_out = d;
    return true;
}

mpz_class IntPoly::constant_term() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void IntPoly::add_term(const Mono& m, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    require(nvars_ == o.nvars_ || o.terms_.empty() || terms_.empty(), errc::usage_error,
            "variable count mismatch");
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    require(nvars_ == o.nvars_ || o.terms_.empty() || terms_.empty(), errc::usage_error,
            "variable count mismatch");
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    require(a.nvars_ == b.nvars_, errc::usage_error, "variable count mismatch");
    IntPoly r(a.nvars_);
    mpz_class prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Mono m = ma;
            for (int i = 0; i < a.nvars_; ++i) {
                uint32_t s = static_cast<uint32_t>(ma.e[i]) + mb.e[i];
                require(s <= UINT16_MAX, errc::internal_error, "monomial exponent overflow");
                m.e[i] = static_cast<uint16_t>(s);
            }
            prod = ca * cb;
            r.add_term(m, prod);
        }
    }
    return r;
}

IntPoly IntPoly::pow(uint64_t k) const {
    IntPoly result = constant(nvars_, 1);
    IntPoly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        if (k >>= 1) base = base * base;
    }
    return result;
}

IntPoly IntPoly::scaled(const mpz_class& c) const {
    IntPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

IntPoly IntPoly::div_exact(const mpz_class& c) const {
    require(c != 0, errc::usage_error, "division by zero");
    IntPoly r(nvars_);
    mpz_class q, rem;
    for (const auto& [m, v] : terms_) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        require(rem == 0, errc::inexact_division, "coefficient not divisible");
        r.terms_.emplace(m, q);
    }
    return r;
}

mpz_class IntPoly::eval(const std::vector<mpz_class>& point) const {
    require(static_cast<int>(point.size()) == nvars_, errc::usage_error,
            "evaluation point arity mismatch");
    // power cache per variable
    std::vector<std::vector<mpz_class>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) pows[i].push_back(1);
    mpz_class sum = 0, term;
    for (const auto& [m, c] : terms_) {
        term = c;
        for (int i = 0; i < nvars_; ++i) {
            uint16_t e = m.e[i];
            if (e == 0) continue;
            auto& pv = pows[i];
            while (pv.size() <= e) pv.push_back(pv.back() * point[i]);
            term *= pv[e];
        }
        sum += term;
    }
    return sum;
}

int64_t IntPoly::eval_mod(const std::vector<int64_t>& point, int64_t modulus) const {
    require(static_cast<int>(point.size()) == nvars_, errc::usage_error,
            "evaluation point arity mismatch");
    auto mod = [&](int64_t v) {
        int64_t r = v % modulus;
        return r < 0 ? r + modulus : r;
    };
    std::vector<std::vector<int64_t>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) pows[i].push_back(1);
    int64_t sum = 0;
    mpz_class cm;
    for (const auto& [m, c] : terms_) {
        cm = c % modulus;
        int64_t term = mod(cm.get_si());
        for (int i = 0; i < nvars_; ++i) {
            uint16_t e = m.e[i];
            if (e == 0) continue;
            auto& pv = pows[i];
            while (pv.size() <= e) pv.push_back(mod(pv.back() * mod(point[i])));
            term = mod(term * pv[e]);
        }
        sum = mod(sum + term);
    }
    return sum;
}

} // namespace vdf
