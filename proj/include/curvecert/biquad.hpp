#pragma once

#include <array>
#include <memory>
#include <string>

#include "curvecert/error.hpp"
#include "curvecert/poly.hpp"

namespace curvecert {

// Parameters of the biquadratic extension Base[s,w]/(s^2 - t, w^2 - u):
// the images of t and u inside the base ring.
template <class Base>
struct BiquadParams {
    Base t;
    Base u;

    friend bool operator==(const BiquadParams& a, const BiquadParams& b) {
        return a.t == b.t && a.u == b.u;
    }
};

template <class Base>
using BiquadParamsPtr = std::shared_ptr<const BiquadParams<Base>>;

// Element c0 + c1*s + c2*w + c3*s*w of the free rank-4 module over Base,
// with multiplication folding s^2 -> t and w^2 -> u.  Because the module is
// free, an element is zero exactly when all four coordinates are.
template <class Base>
class BiquadElem {
public:
    BiquadElem(BiquadParamsPtr<Base> params, Base c0, Base c1, Base c2, Base c3)
        : params_(std::move(params)), c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static BiquadElem from_base(BiquadParamsPtr<Base> params, Base c0) {
        return BiquadElem(std::move(params), std::move(c0), Base{}, Base{}, Base{});
    }

    static BiquadElem zero(BiquadParamsPtr<Base> params) {
        return from_base(std::move(params), Base{});
    }

    static BiquadElem gen_s(BiquadParamsPtr<Base> params, const Base& unit) {
        return BiquadElem(std::move(params), Base{}, unit, Base{}, Base{});
    }

    static BiquadElem gen_w(BiquadParamsPtr<Base> params, const Base& unit) {
        return BiquadElem(std::move(params), Base{}, Base{}, unit, Base{});
    }

    const Base& coord(size_t i) const { return c_[i]; }
    const BiquadParamsPtr<Base>& params() const { return params_; }

    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }

    bool pure_base() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

    const Base& base_part() const {
        if (!pure_base())
            throw CheckError("element has coordinates outside the base ring: " + str());
        return c_[0];
    }

    friend BiquadElem operator+(const BiquadElem& a, const BiquadElem& b) {
        a.check_compatible(b);
        return BiquadElem(a.params_, a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2],
                          a.c_[3] + b.c_[3]);
    }

    friend BiquadElem operator-(const BiquadElem& a, const BiquadElem& b) {
        a.check_compatible(b);
        return BiquadElem(a.params_, a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2],
                          a.c_[3] - b.c_[3]);
    }

    BiquadElem operator-() const { return BiquadElem(params_, -c_[0], -c_[1], -c_[2], -c_[3]); }

    friend BiquadElem operator*(const BiquadElem& a, const BiquadElem& b) {
        a.check_compatible(b);
        const Base& t = a.params_->t;
        const Base& u = a.params_->u;
        const auto& x = a.c_;
        const auto& y = b.c_;
        // (x0 + x1 s + x2 w + x3 s w)(y0 + y1 s + y2 w + y3 s w)
        Base c0 = x[0] * y[0] + (x[1] * y[1]) * t + (x[2] * y[2]) * u + ((x[3] * y[3]) * t) * u;
        Base c1 = x[0] * y[1] + x[1] * y[0] + (x[2] * y[3] + x[3] * y[2]) * u;
        Base c2 = x[0] * y[2] + x[2] * y[0] + (x[1] * y[3] + x[3] * y[1]) * t;
        Base c3 = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
        return BiquadElem(a.params_, std::move(c0), std::move(c1), std::move(c2), std::move(c3));
    }

    BiquadElem& operator+=(const BiquadElem& o) { return *this = *this + o; }
    BiquadElem& operator-=(const BiquadElem& o) { return *this = *this - o; }
    BiquadElem& operator*=(const BiquadElem& o) { return *this = *this * o; }

    friend bool operator==(const BiquadElem& a, const BiquadElem& b) {
        a.check_compatible(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const BiquadElem& a, const BiquadElem& b) { return !(a == b); }

    BiquadElem mul_int(long k) const {
        return BiquadElem(params_, c_[0].mul_int(k), c_[1].mul_int(k), c_[2].mul_int(k),
                          c_[3].mul_int(k));
    }

    BiquadElem div_exact_int(const BigInt& n) const {
        return BiquadElem(params_, c_[0].exact_div_int(n), c_[1].exact_div_int(n),
                          c_[2].exact_div_int(n), c_[3].exact_div_int(n));
    }

    std::string str() const {
        std::string s = "(" + c_[0].str() + ")";
        const char* gens[3] = {"s", "w", "s*w"};
        for (size_t i = 1; i < 4; ++i)
            if (!c_[i].is_zero()) s += " + (" + c_[i].str() + ")*" + gens[i - 1];
        return s;
    }

private:
    BiquadParamsPtr<Base> params_;
    std::array<Base, 4> c_;

    void check_compatible(const BiquadElem& o) const {
        if (params_ == o.params_) return;
        if (!(*params_ == *o.params_))
            throw MismatchError("biquadratic elements over different parameters");
    }
};

} // namespace curvecert
