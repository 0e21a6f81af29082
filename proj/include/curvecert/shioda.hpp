#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curvecert/biquad.hpp"
#include "curvecert/error.hpp"
#include "curvecert/fq.hpp"
#include "curvecert/homs.hpp"
#include "curvecert/poly.hpp"
#include "curvecert/scalar.hpp"

namespace curvecert {

// The two marking families, indexed by the parity of (q-1)/2.
enum class MarkCase { Even, Odd };

inline const char* case_name(MarkCase c) { return c == MarkCase::Even ? "even" : "odd"; }

// ---------------------------------------------------------------------------
// Coefficient domains.  The pipeline below is generic over a domain that can
// inject integers and produce the images of t and u.  Symbolic mode works in
// Z[1/210][t,u]; instance mode works in F_q[t] with u a fixed nonsquare unit.
// ---------------------------------------------------------------------------

struct LocDomain {
    using Coeff = LocScalar;
    using Poly = MultiPoly<LocScalar>;

    Coeff cint(long k) const { return LocScalar(k); }
    Poly pint(long k) const { return Poly::constant(cint(k)); }
    Poly var(Var v) const { return Poly::variable(v, cint(1)); }
    Poly t() const { return var(Var::T); }
    Poly u() const { return var(Var::U); }
    void validate() const {}
};

struct FqDomain {
    FieldPtr cfg;
    FqElem u_value;

    using Coeff = FqElem;
    using Poly = MultiPoly<FqElem>;

    Coeff cint(long k) const { return FqElem::from_int(cfg, k); }
    Poly pint(long k) const { return Poly::constant(cint(k)); }
    Poly var(Var v) const { return Poly::variable(v, cint(1)); }
    Poly t() const { return var(Var::T); }
    Poly u() const { return Poly::constant(u_value); }

    void validate() const {
        if (legendre(u_value) != -1)
            throw CheckError("u = " + u_value.str() + " is a square in F_" + cfg->q.str());
    }
};

inline FqDomain instance_domain(const FieldPtr& cfg, const FqElem& u) {
    FqDomain dom{cfg, u};
    dom.validate();
    return dom;
}

namespace detail {

inline LocScalar base_unit(const MultiPoly<LocScalar>&) { return LocScalar(1); }

inline FqElem base_unit(const MultiPoly<FqElem>& sample) {
    // instance parameters carry t as a genuine variable, whose unit
    // coefficient supplies the field handle
    for (const auto& [m, c] : sample.terms()) return FqElem::one(c.field());
    throw Error("cannot infer the field from an empty polynomial");
}

} // namespace detail

// The 1 of the base ring, recovered from the extension parameters.
template <class Base>
auto unit_of(const BiquadParamsPtr<Base>& params) {
    return detail::base_unit(params->t);
}

// ---------------------------------------------------------------------------
// Markings
// ---------------------------------------------------------------------------

template <class Dom>
struct MarkingSet {
    MarkCase kase;
    BiquadParamsPtr<typename Dom::Poly> params;
    std::vector<BiquadElem<typename Dom::Poly>> u; // u1..u6
};

// The six markings of the chosen family:
//   both cases:  u1,u2 = 1 +- s,  u3,u4 = 1 +- w
//   even:        u5 = 2 + t,      u6 = t
//   odd:         u5 = 1 + t + 2w, u6 = 1 + t - 2w
template <class Dom>
MarkingSet<Dom> build_markings(const Dom& dom, MarkCase kase) {
    dom.validate();
    using Poly = typename Dom::Poly;
    auto params = std::make_shared<const BiquadParams<Poly>>(BiquadParams<Poly>{dom.t(), dom.u()});
    const Poly zero;
    const Poly one = dom.pint(1);
    auto elem = [&](Poly c0, Poly c1, Poly c2, Poly c3) {
        return BiquadElem<Poly>(params, std::move(c0), std::move(c1), std::move(c2),
                                std::move(c3));
    };

    MarkingSet<Dom> m{kase, params, {}};
    m.u.push_back(elem(one, one, zero, zero));
    m.u.push_back(elem(one, -one, zero, zero));
    m.u.push_back(elem(one, zero, one, zero));
    m.u.push_back(elem(one, zero, -one, zero));
    if (kase == MarkCase::Even) {
        m.u.push_back(elem(dom.pint(2) + dom.t(), zero, zero, zero));
        m.u.push_back(elem(dom.t(), zero, zero, zero));
    } else {
        m.u.push_back(elem(one + dom.t(), zero, dom.pint(2), zero));
        m.u.push_back(elem(one + dom.t(), zero, dom.pint(-2), zero));
    }
    return m;
}

// ---------------------------------------------------------------------------
// General position
// ---------------------------------------------------------------------------

struct Condition {
    std::string name;
    bool pass;
};

struct GeneralPositionReport {
    std::vector<Condition> conditions;

    bool all_pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }

    std::string first_failure() const {
        for (const auto& c : conditions)
            if (!c.pass) return c.name;
        return "";
    }
};

// Exact nonzero tests for the three condition families:
// pairwise distinct, no three summing to zero, nonzero total sum.
template <class Dom>
GeneralPositionReport check_general_position(const MarkingSet<Dom>& m) {
    GeneralPositionReport rep;
    auto label = [](int i) { return "u" + std::to_string(i + 1); };
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            rep.conditions.push_back({label(i) + " != " + label(j), !(m.u[i] - m.u[j]).is_zero()});
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k)
                rep.conditions.push_back({label(i) + " + " + label(j) + " + " + label(k) + " != 0",
                                          !(m.u[i] + m.u[j] + m.u[k]).is_zero()});
    auto sum = m.u[0];
    for (int i = 1; i < 6; ++i) sum += m.u[i];
    rep.conditions.push_back({"u1 + ... + u6 != 0", !sum.is_zero()});
    return rep;
}

// ---------------------------------------------------------------------------
// The 27 elements
// ---------------------------------------------------------------------------

template <class Dom>
struct TwentySeven {
    using Elem = BiquadElem<typename Dom::Poly>;

    Elem c1;                   // -(u1 + ... + u6)
    std::vector<Elem> a;       // a_i    = c1/3 - u_i
    std::vector<Elem> aprime;  // a'_i   = -2c1/3 - u_i
    std::vector<Elem> adouble; // a''_ij = c1/3 + u_i + u_j, pairs (i,j) with i<j in lex order

    std::vector<Elem> all() const {
        std::vector<Elem> out;
        out.reserve(27);
        for (const auto& e : a) out.push_back(e);
        for (const auto& e : aprime) out.push_back(e);
        for (const auto& e : adouble) out.push_back(e);
        return out;
    }
};

template <class Dom>
TwentySeven<Dom> twenty_seven_elements(const MarkingSet<Dom>& m) {
    auto sum = m.u[0];
    for (int i = 1; i < 6; ++i) sum += m.u[i];
    TwentySeven<Dom> out{-sum, {}, {}, {}};
    auto c1_third = out.c1.div_exact_int(3);
    for (int i = 0; i < 6; ++i) out.a.push_back(c1_third - m.u[i]);
    for (int i = 0; i < 6; ++i) out.aprime.push_back(c1_third.mul_int(-2) - m.u[i]);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) out.adouble.push_back(c1_third + m.u[i] + m.u[j]);

    auto require_nonzero = [](const auto& e, const std::string& name) {
        if (e.is_zero()) throw CheckError("element " + name + " of the 27 is zero");
    };
    for (int i = 0; i < 6; ++i) require_nonzero(out.a[i], "a" + std::to_string(i + 1));
    for (int i = 0; i < 6; ++i) require_nonzero(out.aprime[i], "a'" + std::to_string(i + 1));
    size_t idx = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            require_nonzero(out.adouble[idx++],
                            "a''" + std::to_string(i + 1) + std::to_string(j + 1));
    return out;
}

// ---------------------------------------------------------------------------
// Elementary symmetric functions
// ---------------------------------------------------------------------------

// Coefficients of prod_i (S + e_i), by incremental expansion; eps_m is the
// coefficient of S^(n-m).  Each eps must land in the base ring (the Galois
// action permutes the e_i), which base_part() enforces.
template <class Base>
std::vector<Base> elementary_symmetric(const std::vector<BiquadElem<Base>>& elems,
                                       const BiquadParamsPtr<Base>& params) {
    const size_t n = elems.size();
    std::vector<BiquadElem<Base>> c; // c[j] = coefficient of S^j
    c.reserve(n + 1);
    c.push_back(BiquadElem<Base>::from_base(params, Base::constant(unit_of(params))));
    for (size_t k = 0; k < n; ++k) {
        std::vector<BiquadElem<Base>> next;
        next.reserve(k + 2);
        next.push_back(c[0] * elems[k]);
        for (size_t j = 1; j <= k; ++j) next.push_back(c[j - 1] + c[j] * elems[k]);
        next.push_back(c[k]);
        c = std::move(next);
    }
    std::vector<Base> eps;
    eps.reserve(n + 1);
    for (size_t m = 0; m <= n; ++m) {
        if (!c[n - m].pure_base())
            throw CheckError("epsilon_" + std::to_string(m) + " has a non-base coordinate");
        eps.push_back(c[n - m].base_part());
    }
    return eps;
}

// ---------------------------------------------------------------------------
// Shioda coefficients and the cubic-surface forms
// ---------------------------------------------------------------------------

template <class Base>
struct ShiodaCoeffs {
    Base p2, p1, q2, p0, q1, q0;
};

template <class Base>
ShiodaCoeffs<Base> shioda_coefficients(const std::vector<Base>& eps) {
    if (eps.size() != 28) throw Error("expected eps_0..eps_27");
    ShiodaCoeffs<Base> c;
    c.p2 = eps[2].exact_div_int(12);
    c.p1 = eps[5].exact_div_int(48);
    c.q2 = (eps[6] - c.p2.pow(3).mul_int(168)).exact_div_int(96);
    c.p0 = (eps[8] - c.p2.pow(4).mul_int(294) - (c.p2 * c.q2).mul_int(528)).exact_div_int(480);
    c.q1 = (eps[9] - (c.p1 * c.p2 * c.p2).mul_int(1008)).exact_div_int(1344);
    c.q0 = (eps[12] - (c.p1 * c.p1 * c.p2).mul_int(608) - (c.p0 * c.p2 * c.p2).mul_int(4768) -
            c.p2.pow(6).mul_int(252) - (c.p2.pow(3) * c.q2).mul_int(1200) +
            (c.q2 * c.q2).mul_int(1248))
               .exact_div_int(17280);
    return c;
}

template <class Base>
struct SurfaceForms {
    Base f0; // p2*X - 2*Y + q2*W
    Base f1; // p1*X*W + q1*W^2
    Base f2; // X^3 + p0*X*W^2 + q0*W^3 - Y^2*W
};

template <class Dom>
SurfaceForms<typename Dom::Poly> surface_forms(const Dom& dom,
                                               const ShiodaCoeffs<typename Dom::Poly>& c) {
    using Poly = typename Dom::Poly;
    const Poly X = dom.var(Var::X), Y = dom.var(Var::Y), W = dom.var(Var::W);
    SurfaceForms<Poly> f;
    f.f0 = c.p2 * X - Y.mul_int(2) + c.q2 * W;
    f.f1 = c.p1 * X * W + c.q1 * W * W;
    f.f2 = X.pow(3) + c.p0 * X * W * W + c.q0 * W.pow(3) - Y * Y * W;

    if (!f.f0.homogeneous_in({Var::X, Var::Y, Var::W}, 1) ||
        !f.f1.homogeneous_in({Var::X, Var::Y, Var::W}, 2) ||
        !f.f2.homogeneous_in({Var::X, Var::Y, Var::W}, 3))
        throw CheckError("surface form has unexpected degree");
    // the projection center [0,0,1,0] must lie on the surface: all three
    // forms vanish at X = Y = W = 0
    for (const auto* form : {&f.f0, &f.f1, &f.f2})
        if (!form->substitute_zero(Var::X)
                 .substitute_zero(Var::Y)
                 .substitute_zero(Var::W)
                 .is_zero())
            throw CheckError("surface forms do not vanish at the projection center");
    return f;
}

// Branch locus of the projection from [0,0,1,0]: g = f1^2 - 4 f0 f2.
template <class Base>
Base ramification_quartic(const SurfaceForms<Base>& f) {
    Base g = f.f1 * f.f1 - (f.f0 * f.f2).mul_int(4);
    if (!g.homogeneous_in({Var::X, Var::Y, Var::W}, 4))
        throw CheckError("ramification quartic is not homogeneous of degree 4");
    return g;
}

// ---------------------------------------------------------------------------
// The reference products Q(u, S)
// ---------------------------------------------------------------------------

// Expanded degree-27 product whose coefficients reproduce the reduced
// elementary symmetric functions of the chosen family.
inline MultiPoly<LocScalar> q_polynomial(MarkCase kase) {
    LocDomain dom;
    using Poly = MultiPoly<LocScalar>;
    const Poly S = dom.var(Var::S), u = dom.u();
    const Poly S2 = S * S;
    auto lin = [&](long k) { return S2 - dom.pint(k); };   // S^2 - k
    auto linu = [&](long k) { return S2 - u.mul_int(k); }; // S^2 - k*u
    auto quart = [&](const Poly& mid, const Poly& tail) {  // S^4 - mid*S^2 + tail^2
        return S2 * S2 - mid * S2 + tail * tail;
    };

    if (kase == MarkCase::Even)
        return S.pow(3) * lin(1).pow(2) * lin(4) * lin(9).pow(2) * lin(16) * linu(1).pow(2) *
               quart(dom.pint(2) + u.mul_int(2), dom.pint(1) - u) *
               quart(dom.pint(18) + u.mul_int(2), dom.pint(9) - u);
    return S.pow(3) * lin(9).pow(2) * linu(1).pow(3) * linu(4).pow(2) * linu(9) *
           quart(dom.pint(18) + u.mul_int(2), dom.pint(9) - u) *
           quart(dom.pint(18) + u.mul_int(8), dom.pint(9) - u.mul_int(4));
}

// Same product over F_q at the chosen u.
inline MultiPoly<FqElem> q_polynomial_instance(MarkCase kase, const FqDomain& dom) {
    return poly_to_fq(q_polynomial(kase), dom.cfg, {{Var::U, dom.u_value}});
}

// Epsilon vector read off a degree-27 polynomial in S: eps_m = coeff of S^(27-m).
template <class C>
std::vector<MultiPoly<C>> epsilons_from_q(const MultiPoly<C>& q) {
    if (q.degree(Var::S) != 27) throw Error("reference product must have degree 27 in S");
    std::vector<MultiPoly<C>> eps;
    eps.reserve(28);
    for (int m = 0; m <= 27; ++m) eps.push_back(q.coeff_of(Var::S, uint16_t(27 - m)));
    return eps;
}

// ---------------------------------------------------------------------------
// Full pipeline driver
// ---------------------------------------------------------------------------

template <class Dom>
struct PipelineRun {
    MarkCase kase;
    MarkingSet<Dom> markings;
    GeneralPositionReport general_position;
    TwentySeven<Dom> elems;
    std::vector<typename Dom::Poly> eps; // eps_0..eps_27, base-ring elements
    ShiodaCoeffs<typename Dom::Poly> coeffs;
    SurfaceForms<typename Dom::Poly> forms;
    typename Dom::Poly g;
};

template <class Dom>
PipelineRun<Dom> run_pipeline(const Dom& dom, MarkCase kase) {
    auto markings = build_markings(dom, kase);
    auto gp = check_general_position(markings);
    auto elems = twenty_seven_elements(markings);
    auto eps = elementary_symmetric(elems.all(), markings.params);
    auto coeffs = shioda_coefficients(eps);
    auto forms = surface_forms(dom, coeffs);
    auto g = ramification_quartic(forms);
    return PipelineRun<Dom>{kase,
                            std::move(markings),
                            std::move(gp),
                            std::move(elems),
                            std::move(eps),
                            std::move(coeffs),
                            std::move(forms),
                            std::move(g)};
}

} // namespace curvecert
