#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvecert/error.hpp"
#include "curvecert/fq.hpp"
#include "curvecert/shioda.hpp"

namespace curvecert {

// Square-class arithmetic for the local field F = F_q((t)), q odd.  The class
// group F^x/(F^x)^2 is Klein-four, generated by t and a fixed nonsquare unit u.
struct LocalSquareContext {
    FieldPtr cfg;
    FqElem u;

    static LocalSquareContext make(const FieldPtr& cfg, const FqElem& u) {
        if (legendre(u) != -1)
            throw CheckError("u = " + u.str() + " is a square; not a valid class generator");
        return {cfg, u};
    }

    bool same_as(const LocalSquareContext& o) const {
        return cfg->same_as(*o.cfg) && u.index() == o.u.index();
    }
};

class SquareClass {
public:
    SquareClass(LocalSquareContext ctx, bool vbit, bool ubit)
        : ctx_(std::move(ctx)), vbit_(vbit), ubit_(ubit) {}

    static SquareClass one(const LocalSquareContext& ctx) { return {ctx, false, false}; }
    static SquareClass t(const LocalSquareContext& ctx) { return {ctx, true, false}; }
    static SquareClass unit(const LocalSquareContext& ctx) { return {ctx, false, true}; }
    static SquareClass t_unit(const LocalSquareContext& ctx) { return {ctx, true, true}; }

    // -1 is a square exactly when (q-1)/2 is even; computed, never assumed.
    static SquareClass minus_one(const LocalSquareContext& ctx) {
        return {ctx, false, !half_q_minus_1_even(ctx.cfg)};
    }

    // Class of t^val * a0 for a unit a0.
    static SquareClass of(const LocalSquareContext& ctx, long val, const FqElem& a0) {
        int chi = legendre(a0);
        if (chi == 0) throw Error("square class of zero");
        return {ctx, (val % 2 + 2) % 2 == 1, chi == -1};
    }

    bool vbit() const { return vbit_; }
    bool ubit() const { return ubit_; }
    const LocalSquareContext& ctx() const { return ctx_; }
    bool is_one() const { return !vbit_ && !ubit_; }

    // Unit-part representative in {1, u}.
    FqElem unit_rep() const { return ubit_ ? ctx_.u : FqElem::one(ctx_.cfg); }

    friend SquareClass operator*(const SquareClass& a, const SquareClass& b) {
        a.check_ctx(b);
        return {a.ctx_, a.vbit_ != b.vbit_, a.ubit_ != b.ubit_};
    }

    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        a.check_ctx(b);
        return a.vbit_ == b.vbit_ && a.ubit_ == b.ubit_;
    }
    friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }

    std::string str() const {
        if (vbit_ && ubit_) return "t*u";
        if (vbit_) return "t";
        if (ubit_) return "u";
        return "1";
    }

private:
    LocalSquareContext ctx_;
    bool vbit_;
    bool ubit_;

    void check_ctx(const SquareClass& o) const {
        if (!ctx_.same_as(o.ctx_))
            throw MismatchError("square classes over different local fields");
    }
};

// Tame Hilbert symbol for odd residue characteristic: with a = t^alpha a0,
// b = t^beta b0, the symbol is the quadratic character of
// (-1)^(alpha beta) a0^beta b0^(-alpha) in the residue field (inverses do not
// change a square class, so b0^alpha is used).
inline int hilbert_symbol(const SquareClass& a, const SquareClass& b) {
    const auto& ctx = a.ctx();
    if (!ctx.same_as(b.ctx())) throw MismatchError("hilbert symbol across different fields");
    FqElem val = FqElem::one(ctx.cfg);
    if (a.vbit() && b.vbit()) val = -val;
    if (b.vbit()) val *= a.unit_rep();
    if (a.vbit()) val *= b.unit_rep();
    return legendre(val);
}

namespace detail {

inline void check_enumerable(const FieldPtr& cfg) {
    if (cfg->q > 100000) throw Error("field too large for conic enumeration");
}

// Does a0 x^2 + b0 y^2 represent a nonzero square (or 0 nontrivially) over F_q?
inline bool residue_conic_solvable(const FqElem& a0, const FqElem& b0) {
    const FieldPtr& cfg = a0.field();
    check_enumerable(cfg);
    for (BigInt i = 0; i < cfg->q; ++i) {
        FqElem x = FqElem::from_index(cfg, i);
        for (BigInt j = 0; j < cfg->q; ++j) {
            FqElem y = FqElem::from_index(cfg, j);
            if (x.is_zero() && y.is_zero()) continue;
            if (legendre(a0 * x * x + b0 * y * y) >= 0) return true;
        }
    }
    return false;
}

inline bool is_residue_square(const FqElem& a) {
    const FieldPtr& cfg = a.field();
    check_enumerable(cfg);
    for (BigInt i = 0; i < cfg->q; ++i) {
        FqElem w = FqElem::from_index(cfg, i);
        if (w * w == a) return true;
    }
    return false;
}

// Nontrivial zero of a0 x^2 + b0 y^2 over F_q?
inline bool residue_isotropic(const FqElem& a0, const FqElem& b0) {
    const FieldPtr& cfg = a0.field();
    check_enumerable(cfg);
    for (BigInt i = 0; i < cfg->q; ++i) {
        FqElem x = FqElem::from_index(cfg, i);
        if ((a0 * x * x + b0).is_zero()) return true; // y = 1
    }
    return false; // y = 0 would force a0 x^2 = 0, impossible for x != 0
}

} // namespace detail

// Independent solvability oracle for z^2 = a x^2 + b y^2 over F_q((t)),
// by brute-force residue searches after the valuation case split (each case
// reduces to the special fiber; a simple scaling/descent argument shows the
// reduction loses nothing, and smooth residue solutions lift).
inline int conic_oracle(const SquareClass& a, const SquareClass& b) {
    const auto& ctx = a.ctx();
    if (!ctx.same_as(b.ctx())) throw MismatchError("conic oracle across different fields");
    const FqElem a0 = a.unit_rep(), b0 = b.unit_rep();

    bool solvable;
    if (!a.vbit() && !b.vbit()) {
        // unit conic: reduces to a nondegenerate conic over the residue field
        solvable = detail::residue_conic_solvable(a0, b0);
    } else if (a.vbit() && !b.vbit()) {
        // z^2 = t a0 x^2 + b0 y^2: at a primitive solution y,z survive mod t,
        // forcing b0 to be a residue square
        solvable = detail::is_residue_square(b0);
    } else if (!a.vbit() && b.vbit()) {
        solvable = detail::is_residue_square(a0);
    } else {
        // z^2 = t(a0 x^2 + b0 y^2): z acquires positive valuation and the
        // reduced form a0 x^2 + b0 y^2 must be isotropic over F_q
        solvable = detail::residue_isotropic(a0, b0);
    }
    return solvable ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Total Galois-Stiefel-Whitney classes, truncated in degree 2 (the mod-2
// cohomology of a non-archimedean local field vanishes above degree 2).
// H^2 = Z/2 is written multiplicatively, so "adding" degree-2 classes means
// multiplying signs, and the cup product of degree-1 classes contributes a
// Hilbert symbol.
// ---------------------------------------------------------------------------

struct GswClass {
    SquareClass a1;
    int a2; // +1 or -1

    std::string str() const {
        return "(1, " + a1.str() + ", " + (a2 == 1 ? std::string("+1") : std::string("-1")) + ")";
    }
};

inline GswClass gsw_trivial(const LocalSquareContext& ctx) {
    return {SquareClass::one(ctx), 1};
}

inline GswClass gsw_mul(const GswClass& x, const GswClass& y) {
    return {x.a1 * y.a1, x.a2 * y.a2 * hilbert_symbol(x.a1, y.a1)};
}

inline GswClass gsw_product(const std::vector<GswClass>& classes,
                            const LocalSquareContext& ctx) {
    GswClass acc = gsw_trivial(ctx);
    for (const auto& c : classes) acc = gsw_mul(acc, c);
    return acc;
}

// ---------------------------------------------------------------------------
// The etale algebra of the 27 lines and its class
// ---------------------------------------------------------------------------

// F: split line; E1 = F(sqrt t); E2 = F(sqrt u); K = F(sqrt t, sqrt u).
enum class EtaleFactor { F, E1, E2, K };

inline const char* factor_name(EtaleFactor f) {
    switch (f) {
    case EtaleFactor::F: return "F";
    case EtaleFactor::E1: return "E1";
    case EtaleFactor::E2: return "E2";
    case EtaleFactor::K: return "K";
    }
    return "?";
}

inline int factor_degree(EtaleFactor f) {
    switch (f) {
    case EtaleFactor::F: return 1;
    case EtaleFactor::E1: return 2;
    case EtaleFactor::E2: return 2;
    case EtaleFactor::K: return 4;
    }
    return 0;
}

struct EtaleAlgebra {
    std::map<EtaleFactor, int> mult;

    int degree() const {
        int d = 0;
        for (const auto& [f, m] : mult) d += factor_degree(f) * m;
        return d;
    }

    std::string str() const {
        std::string s;
        for (const auto& [f, m] : mult) {
            if (!s.empty()) s += " x ";
            s += factor_name(f);
            if (m != 1) s += "^" + std::to_string(m);
        }
        return s;
    }
};

// Total classes of the four building blocks.  The biquadratic factor K
// carries the imported degree-2 value {t,u} + {-1,tu}, rendered as a product
// of the two symbols.
inline GswClass gsw_total_of_factor(EtaleFactor f, const LocalSquareContext& ctx) {
    switch (f) {
    case EtaleFactor::F:
        return gsw_trivial(ctx);
    case EtaleFactor::E1:
        return {SquareClass::t(ctx), 1};
    case EtaleFactor::E2:
        return {SquareClass::unit(ctx), 1};
    case EtaleFactor::K:
        return {SquareClass::one(ctx),
                hilbert_symbol(SquareClass::t(ctx), SquareClass::unit(ctx)) *
                    hilbert_symbol(SquareClass::minus_one(ctx), SquareClass::t_unit(ctx))};
    }
    throw Error("unknown etale factor");
}

// Line-orbit structure of the cubic surface built from the case's markings:
// how the 27 lines decompose into Galois orbits over F_q((t))(sqrt t, sqrt u).
inline EtaleAlgebra etale_algebra_of_surface(MarkCase kase) {
    EtaleAlgebra alg;
    if (kase == MarkCase::Even)
        alg.mult = {{EtaleFactor::E1, 4}, {EtaleFactor::E2, 4}, {EtaleFactor::K, 1}, {EtaleFactor::F, 7}};
    else
        alg.mult = {{EtaleFactor::E1, 2}, {EtaleFactor::E2, 6}, {EtaleFactor::K, 2}, {EtaleFactor::F, 3}};
    if (alg.degree() != 27)
        throw CheckError("etale algebra degree is not 27");
    return alg;
}

// The obstruction class gamma: the degree-2 component of the total class of
// the 27-line algebra.  Each marking case is only meaningful for one parity
// of (q-1)/2 (the nonsquareness pattern of the markings depends on it).
inline int gamma_of_curve(MarkCase kase, const LocalSquareContext& ctx) {
    const bool half_even = half_q_minus_1_even(ctx.cfg);
    if (kase == MarkCase::Even && !half_even)
        throw ParityError("even marking case requires (q-1)/2 even, q = " + ctx.cfg->q.str());
    if (kase == MarkCase::Odd && half_even)
        throw ParityError("odd marking case requires (q-1)/2 odd, q = " + ctx.cfg->q.str());

    const EtaleAlgebra alg = etale_algebra_of_surface(kase);
    std::vector<GswClass> parts;
    for (const auto& [f, m] : alg.mult)
        for (int i = 0; i < m; ++i) parts.push_back(gsw_total_of_factor(f, ctx));
    const GswClass total = gsw_product(parts, ctx);
    if (!total.a1.is_one())
        throw CheckError("degree-1 component of the total class is nontrivial: " + total.a1.str());
    return total.a2;
}

} // namespace curvecert
