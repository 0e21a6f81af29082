#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "curvecert/error.hpp"
#include "curvecert/scalar.hpp"

namespace curvecert {

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

} // namespace detail

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    std::vector<bool> composite(hi + 1, false);
    for (uint64_t i = 2; i * i <= hi; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
    for (uint64_t n = std::max<uint64_t>(lo, 2); n <= hi; ++n)
        if (!composite[n]) out.push_back(n);
    return out;
}

// Immutable description of F_{p^r}: an odd prime p >= 11, an extension
// degree r, and for r > 1 the canonical modulus -- the monic irreducible
// of degree r whose non-leading coefficient vector (c_0..c_{r-1}) has the
// least value sum(c_i p^i).  Elements are coefficient vectors w.r.t. the
// image of x, and every element has a canonical index sum(a_i p^i) used
// for printing and enumeration.
class FieldConfig {
public:
    uint64_t p;
    unsigned r;
    std::vector<uint64_t> modulus; // monic, length r+1; modulus[r] == 1
    BigInt q;                      // p^r
    BigInt half_q_minus_1;         // (q-1)/2

    static std::shared_ptr<const FieldConfig> make(uint64_t p, unsigned r = 1) {
        if (p < 11)
            throw Error("characteristic must be at least 11, got " + std::to_string(p));
        if (p >= (uint64_t{1} << 31))
            throw Error("characteristic too large");
        if (!is_prime_u64(p))
            throw Error(std::to_string(p) + " is not prime");
        if (r < 1 || r > 8)
            throw Error("extension degree must lie in [1,8], got " + std::to_string(r));
        auto cfg = std::make_shared<FieldConfig>();
        cfg->p = p;
        cfg->r = r;
        cfg->q = 1;
        for (unsigned i = 0; i < r; ++i) cfg->q *= p;
        cfg->half_q_minus_1 = (cfg->q - 1) / 2;
        cfg->modulus = r == 1 ? std::vector<uint64_t>{0, 1} : least_irreducible(p, r);
        return cfg;
    }

    bool same_as(const FieldConfig& o) const {
        return p == o.p && r == o.r && modulus == o.modulus;
    }

private:
    // Monic degree-d polynomials over F_p, enumerated by the index of their
    // low-coefficient vector.  Representation: coefficient vector c, c[d]=1.
    static std::vector<uint64_t> poly_from_index(uint64_t p, unsigned d, uint64_t idx) {
        std::vector<uint64_t> f(d + 1, 0);
        for (unsigned i = 0; i < d; ++i) { f[i] = idx % p; idx /= p; }
        f[d] = 1;
        return f;
    }

    static bool divides(const std::vector<uint64_t>& g, std::vector<uint64_t> f, uint64_t p) {
        const size_t dg = g.size() - 1;
        while (f.size() >= g.size()) {
            uint64_t lead = f.back();
            if (lead != 0) {
                size_t shift = f.size() - g.size();
                for (size_t i = 0; i <= dg; ++i)
                    f[shift + i] = detail::submod(f[shift + i], detail::mulmod(lead, g[i], p), p);
            }
            f.pop_back();
        }
        for (uint64_t c : f)
            if (c != 0) return false;
        return true;
    }

    static bool irreducible(const std::vector<uint64_t>& f, uint64_t p) {
        const unsigned d = static_cast<unsigned>(f.size()) - 1;
        for (unsigned e = 1; 2 * e <= d; ++e) {
            uint64_t count = 1;
            for (unsigned i = 0; i < e; ++i) count *= p;
            for (uint64_t idx = 0; idx < count; ++idx)
                if (divides(poly_from_index(p, e, idx), f, p)) return false;
        }
        return true;
    }

    static std::vector<uint64_t> least_irreducible(uint64_t p, unsigned r) {
        uint64_t count = 1;
        for (unsigned i = 0; i < r; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            auto f = poly_from_index(p, r, idx);
            if (irreducible(f, p)) return f;
        }
        throw Error("no irreducible modulus found"); // unreachable
    }
};

using FieldPtr = std::shared_ptr<const FieldConfig>;

class FqElem {
public:
    FqElem() = default; // placeholder; not usable until assigned

    static FqElem zero(const FieldPtr& cfg) { return FqElem(cfg); }
    static FqElem one(const FieldPtr& cfg) { return from_int(cfg, 1); }

    // Image of an integer under Z -> F_q.
    static FqElem from_int(const FieldPtr& cfg, const BigInt& k) {
        FqElem e(cfg);
        BigInt m = k % cfg->p;
        if (m < 0) m += cfg->p;
        e.c_[0] = m.convert_to<uint64_t>();
        return e;
    }

    static FqElem from_int(const FieldPtr& cfg, long k) { return from_int(cfg, BigInt(k)); }

    // Inverse of the canonical enumeration a |-> sum(a_i p^i).
    static FqElem from_index(const FieldPtr& cfg, BigInt idx) {
        if (idx < 0 || idx >= cfg->q)
            throw Error("element index " + idx.str() + " out of range");
        FqElem e(cfg);
        for (unsigned i = 0; i < cfg->r; ++i) {
            e.c_[i] = (idx % cfg->p).convert_to<uint64_t>();
            idx /= cfg->p;
        }
        return e;
    }

    BigInt index() const {
        require();
        BigInt idx = 0;
        for (unsigned i = cfg_->r; i-- > 0;) idx = idx * cfg_->p + c_[i];
        return idx;
    }

    const FieldPtr& field() const { require(); return cfg_; }
    bool initialized() const { return cfg_ != nullptr; }

    bool is_zero() const {
        require();
        for (uint64_t v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_one() const { require(); return *this == one(cfg_); }

    friend bool operator==(const FqElem& a, const FqElem& b) {
        a.require(); b.require();
        a.check_same_field(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        a.require(); b.require();
        a.check_same_field(b);
        FqElem out(a.cfg_);
        for (unsigned i = 0; i < a.cfg_->r; ++i)
            out.c_[i] = detail::addmod(a.c_[i], b.c_[i], a.cfg_->p);
        return out;
    }

    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        a.require(); b.require();
        a.check_same_field(b);
        FqElem out(a.cfg_);
        for (unsigned i = 0; i < a.cfg_->r; ++i)
            out.c_[i] = detail::submod(a.c_[i], b.c_[i], a.cfg_->p);
        return out;
    }

    FqElem operator-() const {
        require();
        FqElem out(cfg_);
        for (unsigned i = 0; i < cfg_->r; ++i)
            out.c_[i] = c_[i] == 0 ? 0 : cfg_->p - c_[i];
        return out;
    }

    friend FqElem operator*(const FqElem& a, const FqElem& b) {
        a.require(); b.require();
        a.check_same_field(b);
        const uint64_t p = a.cfg_->p;
        const unsigned r = a.cfg_->r;
        FqElem out(a.cfg_);
        if (r == 1) {
            out.c_[0] = detail::mulmod(a.c_[0], b.c_[0], p);
            return out;
        }
        boost::container::small_vector<uint64_t, 8> prod(2 * r - 1, 0);
        for (unsigned i = 0; i < r; ++i) {
            if (a.c_[i] == 0) continue;
            for (unsigned j = 0; j < r; ++j)
                prod[i + j] = detail::addmod(prod[i + j], detail::mulmod(a.c_[i], b.c_[j], p), p);
        }
        // reduce by the monic modulus
        for (unsigned i = 2 * r - 2; i >= r; --i) {
            uint64_t lead = prod[i];
            if (lead == 0) continue;
            prod[i] = 0;
            for (unsigned j = 0; j < r; ++j) {
                uint64_t m = a.cfg_->modulus[j];
                if (m != 0)
                    prod[i - r + j] = detail::submod(prod[i - r + j], detail::mulmod(lead, m, p), p);
            }
        }
        for (unsigned i = 0; i < r; ++i) out.c_[i] = prod[i];
        return out;
    }

    FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
    FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
    FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

    FqElem pow(BigInt e) const {
        require();
        if (e < 0) throw Error("negative exponent");
        FqElem base = *this;
        FqElem acc = one(cfg_);
        while (e > 0) {
            if ((e & 1) != 0) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    FqElem inverse() const {
        require();
        if (is_zero())
            throw IllegalDivisorError("inverse of zero in F_q");
        return pow(cfg_->q - 2);
    }

    FqElem mul_int(long k) const {
        require();
        return *this * from_int(cfg_, k);
    }

    FqElem div_exact_int(const BigInt& n) const {
        require();
        FqElem d = from_int(cfg_, n);
        if (d.is_zero())
            throw IllegalDivisorError("division by " + n.str() + " = 0 in characteristic " +
                                      std::to_string(cfg_->p));
        return *this * d.inverse();
    }

    std::string str() const { return index().str(); }

private:
    FieldPtr cfg_;
    boost::container::small_vector<uint64_t, 4> c_;

    explicit FqElem(const FieldPtr& cfg) : cfg_(cfg), c_(cfg->r, 0) {}

    void require() const {
        if (!cfg_) throw Error("use of uninitialized field element");
    }

    void check_same_field(const FqElem& o) const {
        if (cfg_ == o.cfg_) return;
        if (!cfg_->same_as(*o.cfg_))
            throw MismatchError("field elements from different fields");
    }
};

// +1 for a nonzero square, -1 for a nonsquare, 0 for zero.
inline int legendre(const FqElem& a) {
    if (a.is_zero()) return 0;
    FqElem s = a.pow(a.field()->half_q_minus_1);
    if (s.is_one()) return 1;
    if (s == -FqElem::one(a.field())) return -1;
    throw Error("legendre: a^((q-1)/2) is not a sign"); // unreachable for prime q
}

// Least element in canonical enumeration order that is not a square.
inline FqElem find_nonsquare(const FieldPtr& cfg) {
    if (cfg->q > 50'000'000)
        throw Error("field too large for nonsquare enumeration");
    for (BigInt idx = 1; idx < cfg->q; ++idx) {
        FqElem e = FqElem::from_index(cfg, idx);
        if (legendre(e) == -1) return e;
    }
    throw Error("no nonsquare found"); // unreachable: q is odd
}

// Whether (q-1)/2 is even, i.e. q = 1 mod 4; decides which family is in play.
inline bool half_q_minus_1_even(const FieldPtr& cfg) {
    return cfg->half_q_minus_1 % 2 == 0;
}

} // namespace curvecert
