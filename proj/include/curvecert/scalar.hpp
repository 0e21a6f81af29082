#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "curvecert/error.hpp"

namespace curvecert {

using BigInt = boost::multiprecision::cpp_int;

// Element of Z localized away from {2,3,5,7}: a rational whose denominator
// has no prime factor outside that set.  Always kept normalized (positive
// denominator, gcd(num,den) = 1), so equality is componentwise.
class LocScalar {
public:
    LocScalar() : num_(0), den_(1) {}
    LocScalar(long v) : num_(v), den_(1) {}
    explicit LocScalar(BigInt v) : num_(std::move(v)), den_(1) {}

    LocScalar(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0)
            throw IllegalDivisorError("zero denominator");
        normalize();
        if (!smooth2357(den_))
            throw IllegalDivisorError("denominator " + den_.str() +
                                      " has a prime factor outside {2,3,5,7}");
    }

    // True iff |v| factors entirely over {2,3,5,7}.  |1| counts; 0 does not.
    static bool smooth2357(BigInt v) {
        if (v < 0) v = -v;
        if (v == 0) return false;
        for (int p : {2, 3, 5, 7})
            while (v % p == 0) v /= p;
        return v == 1;
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    friend LocScalar operator+(const LocScalar& a, const LocScalar& b) {
        return make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LocScalar operator-(const LocScalar& a, const LocScalar& b) {
        return make(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LocScalar operator*(const LocScalar& a, const LocScalar& b) {
        return make(a.num_ * b.num_, a.den_ * b.den_);
    }
    LocScalar operator-() const { return make(-num_, den_); }

    LocScalar& operator+=(const LocScalar& o) { return *this = *this + o; }
    LocScalar& operator-=(const LocScalar& o) { return *this = *this - o; }
    LocScalar& operator*=(const LocScalar& o) { return *this = *this * o; }

    // Division by an integer: legal only for nonzero {2,3,5,7}-smooth n.
    LocScalar div_exact_int(const BigInt& n) const {
        check_int_divisor(n);
        return make(num_, den_ * n);
    }

    static void check_int_divisor(const BigInt& n) {
        if (n == 0)
            throw IllegalDivisorError("division by zero");
        if (!smooth2357(n))
            throw IllegalDivisorError("divisor " + n.str() +
                                      " has a prime factor outside {2,3,5,7}");
    }

    LocScalar mul_int(long k) const { return make(num_ * k, den_); }

    friend bool operator==(const LocScalar& a, const LocScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LocScalar& a, const LocScalar& b) { return !(a == b); }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    BigInt num_;
    BigInt den_;

    // Trusted fast path: normalize without re-checking smoothness (the
    // denominator of a product/sum of legal scalars only loses factors).
    static LocScalar make(BigInt n, BigInt d) {
        LocScalar r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.normalize();
        return r;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
};

} // namespace curvecert
