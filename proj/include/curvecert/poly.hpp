#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>

#include "curvecert/error.hpp"
#include "curvecert/scalar.hpp"

namespace curvecert {

// The fixed variable alphabet.  Every polynomial in the library lives in
// (a subring of) Coeff[t,u,S,X,Y,W,x]; the order below is the print and
// comparison order.
enum class Var : unsigned { T = 0, U = 1, S = 2, X = 3, Y = 4, W = 5, XL = 6 };

inline constexpr std::array<const char*, 7> kVarNames = {"t", "u", "S", "X", "Y", "W", "x"};

inline const char* var_name(Var v) { return kVarNames[static_cast<unsigned>(v)]; }

struct Monomial {
    std::array<uint16_t, 7> e{};

    unsigned total() const {
        unsigned s = 0;
        for (uint16_t x : e) s += x;
        return s;
    }

    uint16_t operator[](Var v) const { return e[static_cast<unsigned>(v)]; }
    uint16_t& operator[](Var v) { return e[static_cast<unsigned>(v)]; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (size_t i = 0; i < 7; ++i) {
            unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
            if (s > 0xffff) throw Error("monomial exponent overflow");
            m.e[i] = static_cast<uint16_t>(s);
        }
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < 7; ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += kVarNames[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }
};

// Graded lexicographic: total degree first, then lex with t > u > S > X > Y > W > x.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return a.e < b.e;
    }
};

namespace detail {

template <class C>
bool coeff_negative(const C& c) {
    if constexpr (requires { c.sign(); })
        return c.sign() < 0;
    else
        return false;
}

} // namespace detail

// Sparse multivariate polynomial with exact coefficients.  Zero coefficients
// are never stored, so structural equality of the term maps is semantic
// equality.  C is LocScalar or FqElem.
template <class C>
class MultiPoly {
public:
    using TermMap = std::map<Monomial, C, GradedLexLess>;

    MultiPoly() = default;

    static MultiPoly zero() { return MultiPoly(); }

    static MultiPoly constant(const C& c) {
        MultiPoly f;
        if (!c.is_zero()) f.terms_.emplace(Monomial{}, c);
        return f;
    }

    static MultiPoly variable(Var v, const C& unit) { return variable_pow(v, 1, unit); }

    static MultiPoly variable_pow(Var v, uint16_t k, const C& unit) {
        MultiPoly f;
        if (unit.is_zero()) throw Error("variable with zero unit coefficient");
        Monomial m;
        m.e[static_cast<unsigned>(v)] = k;
        f.terms_.emplace(m, unit);
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
    }

    // Constant term; absent means zero (caller supplies the zero of C, since
    // field elements carry their field).
    C constant_value(const C& zero) const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? zero : it->second;
    }

    const C* coeff_ptr(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? nullptr : &it->second;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
        return out;
    }

    MultiPoly operator-() const {
        MultiPoly out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out;
        if (a.is_zero() || b.is_zero()) return out;
        // iterate over the shorter operand for the outer loop
        const MultiPoly& outer = a.terms_.size() <= b.terms_.size() ? a : b;
        const MultiPoly& inner = a.terms_.size() <= b.terms_.size() ? b : a;
        for (const auto& [ma, ca] : outer.terms_)
            for (const auto& [mb, cb] : inner.terms_)
                out.add_term(ma * mb, ca * cb);
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly mul_scalar(const C& s) const {
        MultiPoly out;
        if (s.is_zero()) return out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        return out;
    }

    MultiPoly mul_int(long k) const {
        MultiPoly out;
        if (k == 0) return out;
        for (const auto& [m, c] : terms_) out.add_term(m, c.mul_int(k));
        return out;
    }

    MultiPoly exact_div_int(const BigInt& n) const {
        if constexpr (requires { C::check_int_divisor(n); })
            C::check_int_divisor(n);
        MultiPoly out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.div_exact_int(n));
        return out;
    }

    MultiPoly pow(unsigned k) const {
        if (k == 0) throw Error("polynomial power with exponent 0 needs a unit; use constants");
        MultiPoly acc = *this;
        for (unsigned i = 1; i < k; ++i) acc *= *this;
        return acc;
    }

    // Substitute v := 0.
    MultiPoly substitute_zero(Var v) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_)
            if (m[v] == 0) out.terms_.emplace(m, c);
        return out;
    }

    // Polynomial coefficient of v^k, with the v-power removed.
    MultiPoly coeff_of(Var v, uint16_t k) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            if (m[v] != k) continue;
            Monomial stripped = m;
            stripped.e[static_cast<unsigned>(v)] = 0;
            out.terms_.emplace(stripped, c);
        }
        return out;
    }

    int degree(Var v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, int(m[v]));
        return d;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, int(m.total()));
        return d;
    }

    bool uses_only(std::initializer_list<Var> vars) const {
        for (const auto& [m, c] : terms_)
            for (size_t i = 0; i < 7; ++i) {
                if (m.e[i] == 0) continue;
                bool listed = false;
                for (Var v : vars) listed |= (static_cast<unsigned>(v) == i);
                if (!listed) return false;
            }
        return true;
    }

    // Every term has the same total degree d across the listed variables.
    bool homogeneous_in(std::initializer_list<Var> vars, unsigned d) const {
        for (const auto& [m, c] : terms_) {
            unsigned s = 0;
            for (Var v : vars) s += m[v];
            if (s != d) return false;
        }
        return true;
    }

    C eval(const std::array<C, 7>& point, const C& zero) const {
        C acc = zero;
        for (const auto& [m, c] : terms_) {
            C term = c;
            for (size_t i = 0; i < 7; ++i)
                for (uint16_t k = 0; k < m.e[i]; ++k) term = term * point[i];
            acc = acc + term;
        }
        return acc;
    }

    // Canonical form: terms in descending graded-lex order, explicit signs,
    // "1*" elided, exponents as ^k for k >= 2.  The zero polynomial is "0".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            bool neg = detail::coeff_negative(c);
            C mag = neg ? -c : c;
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            std::string ms = m.str();
            if (ms.empty())
                s += mag.str();
            else if (mag.is_one())
                s += ms;
            else
                s += mag.str() + "*" + ms;
        }
        return s;
    }

private:
    TermMap terms_;

    void add_term(const Monomial& m, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
};

// Substitution t := 0, the passage to the special fiber.
template <class C>
MultiPoly<C> reduce_mod_t(const MultiPoly<C>& f) {
    return f.substitute_zero(Var::T);
}

// Discriminant of the monic cubic z^3 + a2 z^2 + a1 z + a0 over any
// commutative ring with integer action.
template <class R>
R monic_cubic_disc(const R& a2, const R& a1, const R& a0) {
    return (a2 * a1 * a0).mul_int(18) + (a2 * a2 * a2 * a0).mul_int(-4) + a2 * a2 * a1 * a1 +
           (a1 * a1 * a1).mul_int(-4) + (a0 * a0).mul_int(-27);
}

} // namespace curvecert
