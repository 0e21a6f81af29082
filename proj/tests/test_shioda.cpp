#include <catch_amalgamated.hpp>

#include <algorithm>

#include "curvecert/homs.hpp"
#include "curvecert/shioda.hpp"

using namespace curvecert;

namespace {

using Poly = MultiPoly<LocScalar>;
using Elem = BiquadElem<Poly>;

// multiset equality for biquad elements (no ordering on them)
template <class E>
bool same_multiset(std::vector<E> got, const std::vector<E>& want) {
    if (got.size() != want.size()) return false;
    for (const E& w : want) {
        auto it = std::find(got.begin(), got.end(), w);
        if (it == got.end()) return false;
        got.erase(it);
    }
    return true;
}

} // namespace

TEST_CASE("markings: exact lists and their sum") {
    LocDomain dom;
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto m = build_markings(dom, kase);
        REQUIRE(m.u.size() == 6);
        auto sum = m.u[0];
        for (int i = 1; i < 6; ++i) sum += m.u[i];
        REQUIRE(sum.pure_base());
        REQUIRE(sum.base_part().str() == "2*t + 6");
    }

    auto even = build_markings(dom, MarkCase::Even);
    const auto& P = even.params;
    auto one = Elem::from_base(P, dom.pint(1));
    auto s = Elem::gen_s(P, dom.pint(1));
    auto w = Elem::gen_w(P, dom.pint(1));
    auto t = Elem::from_base(P, dom.t());
    std::vector<Elem> expect_even = {one + s, one - s,          one + w,
                                     one - w, t + one.mul_int(2), t};
    REQUIRE(same_multiset(even.u, expect_even));

    auto odd = build_markings(dom, MarkCase::Odd);
    std::vector<Elem> expect_odd = {one + s,
                                    one - s,
                                    one + w,
                                    one - w,
                                    one + t + w.mul_int(2),
                                    one + t - w.mul_int(2)};
    REQUIRE(same_multiset(odd.u, expect_odd));
}

TEST_CASE("general position: all 36 conditions hold symbolically") {
    LocDomain dom;
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto rep = check_general_position(build_markings(dom, kase));
        REQUIRE(rep.conditions.size() == 36);
        REQUIRE(rep.all_pass());
        REQUIRE(rep.first_failure().empty());
    }
    auto rep = check_general_position(build_markings(dom, MarkCase::Even));
    REQUIRE(rep.conditions.front().name == "u1 != u2");
    REQUIRE(rep.conditions.back().name == "u1 + ... + u6 != 0");
}

TEST_CASE("the 27 elements") {
    LocDomain dom;
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto tw = twenty_seven_elements(build_markings(dom, kase));
        REQUIRE(tw.c1.pure_base());
        REQUIRE(tw.c1.base_part().str() == "-2*t - 6");
        REQUIRE(tw.a.size() == 6);
        REQUIRE(tw.aprime.size() == 6);
        REQUIRE(tw.adouble.size() == 15);
        REQUIRE(tw.all().size() == 27);
        for (const auto& e : tw.all()) REQUIRE_FALSE(e.is_zero());
    }
}

TEST_CASE("elementary symmetric functions of small constants") {
    LocDomain dom;
    auto params = std::make_shared<const BiquadParams<Poly>>(
        BiquadParams<Poly>{dom.t(), dom.u()});
    std::vector<Elem> elems = {Elem::from_base(params, dom.pint(1)),
                               Elem::from_base(params, dom.pint(2)),
                               Elem::from_base(params, dom.pint(3))};
    auto eps = elementary_symmetric(elems, params);
    REQUIRE(eps.size() == 4);
    REQUIRE(eps[0].str() == "1");
    REQUIRE(eps[1].str() == "6");
    REQUIRE(eps[2].str() == "11");
    REQUIRE(eps[3].str() == "6");
}

TEST_CASE("reduced shioda coefficients match their closed forms") {
    LocDomain dom;
    auto even = run_pipeline(dom, MarkCase::Even);
    REQUIRE(reduce_mod_t(even.coeffs.p2).str() == "-1/2*u - 5");
    REQUIRE(reduce_mod_t(even.coeffs.q2).str() == "1/96*u^3 - 5/48*u^2 + 5/6*u + 20/3");
    REQUIRE(reduce_mod_t(even.coeffs.p1).is_zero());
    REQUIRE(reduce_mod_t(even.coeffs.q1).is_zero());

    auto odd = run_pipeline(dom, MarkCase::Odd);
    REQUIRE(reduce_mod_t(odd.coeffs.p2).str() == "-5/2*u - 9/2");
    REQUIRE(reduce_mod_t(odd.coeffs.q2).str() ==
            "15/32*u^3 + 165/32*u^2 - 135/32*u + 243/32");
    REQUIRE(reduce_mod_t(odd.coeffs.p1).is_zero());
    REQUIRE(reduce_mod_t(odd.coeffs.q1).is_zero());
}

TEST_CASE("surface forms and the ramification quartic") {
    LocDomain dom;
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto run = run_pipeline(dom, kase);
        REQUIRE(run.forms.f0.homogeneous_in({Var::X, Var::Y, Var::W}, 1));
        REQUIRE(run.forms.f1.homogeneous_in({Var::X, Var::Y, Var::W}, 2));
        REQUIRE(run.forms.f2.homogeneous_in({Var::X, Var::Y, Var::W}, 3));
        REQUIRE(run.g == run.forms.f1 * run.forms.f1 -
                             (run.forms.f0 * run.forms.f2).mul_int(4));
        REQUIRE(run.g.homogeneous_in({Var::X, Var::Y, Var::W}, 4));
        // the X^2 Y^2 slot of the quartic is empty in both cases
        REQUIRE(run.g.coeff_of(Var::X, 2).coeff_of(Var::Y, 2).is_zero());
    }
}

TEST_CASE("fiber polynomial: reference product and coefficient extraction") {
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto q = q_polynomial(kase);
        REQUIRE(q.degree(Var::S) == 27);
        REQUIRE(q.uses_only({Var::S, Var::U}));
        auto eps = epsilons_from_q(q);
        REQUIRE(eps.size() == 28);
        REQUIRE(eps[0].str() == "1");
        // odd-index coefficients vanish: the product is odd in S
        for (int m = 1; m <= 27; m += 2) REQUIRE(eps[m].is_zero());
    }

    // specializing u -> 0 collapses the even product to a known split form
    auto q0 = q_polynomial(MarkCase::Even).substitute_zero(Var::U);
    Poly S = Poly::variable(Var::S, LocScalar(1));
    Poly S2 = S * S;
    auto lin = [&](long k) { return S2 - Poly::constant(LocScalar(k)); };
    Poly expect = S.pow(7) * lin(1).pow(4) * lin(4) * lin(9).pow(4) * lin(16);
    REQUIRE(q0 == expect);
}

TEST_CASE("epsilon reconstruction from the 27 elements, symbolic") {
    LocDomain dom;
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto run = run_pipeline(dom, kase);
        REQUIRE(run.eps.size() == 28);
        Poly S = Poly::variable(Var::S, LocScalar(1));
        Poly recon;
        for (int m = 0; m <= 27; ++m) {
            Poly bar = reduce_mod_t(run.eps[m]);
            if (bar.is_zero()) continue;
            recon = recon + (m == 27 ? bar : bar * S.pow(uint16_t(27 - m)));
        }
        REQUIRE(recon == q_polynomial(kase));
    }
}

TEST_CASE("instance pipeline commutes with coefficient reduction") {
    for (uint64_t p : {uint64_t(11), uint64_t(13)}) {
        auto cfg = FieldConfig::make(p);
        auto u = find_nonsquare(cfg);
        auto dom = instance_domain(cfg, u);
        MarkCase kase = half_q_minus_1_even(cfg) ? MarkCase::Even : MarkCase::Odd;

        auto inst = run_pipeline(dom, kase);
        LocDomain sym_dom;
        auto sym = run_pipeline(sym_dom, kase);

        std::map<Var, FqElem> at_u = {{Var::U, u}};
        REQUIRE(poly_to_fq(sym.coeffs.p2, cfg, at_u) == inst.coeffs.p2);
        REQUIRE(poly_to_fq(sym.coeffs.q2, cfg, at_u) == inst.coeffs.q2);
        REQUIRE(poly_to_fq(sym.coeffs.p0, cfg, at_u) == inst.coeffs.p0);
        REQUIRE(poly_to_fq(sym.coeffs.q0, cfg, at_u) == inst.coeffs.q0);
        REQUIRE(poly_to_fq(sym.g, cfg, at_u) == inst.g);

        // and the instance reconstruction hits the specialized product
        using FqPoly = MultiPoly<FqElem>;
        FqPoly S = FqPoly::variable(Var::S, FqElem::one(cfg));
        FqPoly recon;
        for (int m = 0; m <= 27; ++m) {
            FqPoly bar = reduce_mod_t(inst.eps[m]);
            if (bar.is_zero()) continue;
            recon = recon + (m == 27 ? bar : bar * S.pow(uint16_t(27 - m)));
        }
        REQUIRE(recon == q_polynomial_instance(kase, dom));
    }
}

TEST_CASE("instance domain rejects squares") {
    auto cfg = FieldConfig::make(11);
    REQUIRE_THROWS_AS(instance_domain(cfg, FqElem::from_int(cfg, 4)), CheckError);
    REQUIRE_NOTHROW(instance_domain(cfg, FqElem::from_int(cfg, 2)));
}
