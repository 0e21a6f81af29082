#include <catch_amalgamated.hpp>

#include "curvecert/reduction.hpp"

using namespace curvecert;

TEST_CASE("Weierstrass quantities of a depressed cubic") {
    // y^2 = x^3 - x: smooth (disc = 64), so not nodal
    auto smooth = weierstrass_invariants(LocScalar(-1), LocScalar(0));
    REQUIRE(smooth.c4 == LocScalar(48));
    REQUIRE(smooth.disc == LocScalar(64));
    REQUIRE_FALSE(assert_nodal(smooth));

    // y^2 = x^3 - 3x + 2 = (x-1)^2 (x+2): a node
    auto nodal = weierstrass_invariants(LocScalar(-3), LocScalar(2));
    REQUIRE(nodal.c4 == LocScalar(144));
    REQUIRE(nodal.disc.is_zero());
    REQUIRE(assert_nodal(nodal));

    // y^2 = x^3: a cusp, rejected
    auto cusp = weierstrass_invariants(LocScalar(0), LocScalar(0));
    REQUIRE(cusp.c4.is_zero());
    REQUIRE(cusp.disc.is_zero());
    REQUIRE_FALSE(assert_nodal(cusp));
}

TEST_CASE("node x-coordinate over a prime field") {
    auto cfg = FieldConfig::make(11);
    auto fe = [&](long k) { return FqElem::from_int(cfg, k); };

    // (x-1)^2 (x+2) and its mirror (x+1)^2 (x-2)
    REQUIRE(node_location(fe(-3), fe(2)) == fe(1));
    REQUIRE(node_location(fe(-3), fe(-2)) == fe(-1));

    REQUIRE_THROWS_AS(node_location(fe(0), fe(0)), Error);
    // smooth cubic: the critical point is not on the curve
    REQUIRE_THROWS_AS(node_location(fe(-1), fe(1)), CheckError);
}

TEST_CASE("intersection cubic closed forms") {
    LocDomain dom;
    auto u = dom.u();
    auto p2 = u;
    auto q2 = u + dom.pint(1);
    auto p0 = u * u;
    auto q0 = u.mul_int(3);

    // the constructor cross-checks substitution against the closed form
    auto cubic = intersection_cubic(p0, q0, p2, q2);
    REQUIRE(cubic[0] == -(p2 * p2).exact_div_int(4));
    REQUIRE(cubic[1] == p0 - (p2 * q2).exact_div_int(2));
    REQUIRE(cubic[2] == q0 - (q2 * q2).exact_div_int(4));

    // discriminant of the nodal cubic (x-1)^2 (x+2), fed in as constants
    using Cubic = std::array<MultiPoly<LocScalar>, 3>;
    REQUIRE(intersection_discriminant(Cubic{dom.pint(0), dom.pint(-3), dom.pint(2)}).is_zero());
    REQUIRE_FALSE(
        intersection_discriminant(Cubic{dom.pint(0), dom.pint(-1), dom.pint(0)}).is_zero());
}

TEST_CASE("case closed forms evaluate to the expected rationals") {
    auto at = [](const MultiPoly<LocScalar>& f, long uval) {
        // alphabet order: t, u, S, X, Y, W, x
        return f.eval({LocScalar(0), LocScalar(uval), LocScalar(0), LocScalar(0), LocScalar(0),
                       LocScalar(0), LocScalar(0)},
                      LocScalar(0));
    };

    auto c4e = c4_case_formula(MarkCase::Even);
    REQUIRE(c4e.uses_only({Var::U}));
    REQUIRE(c4e.degree(Var::U) == 4);
    REQUIRE(at(c4e, 0) == LocScalar(256));      // 16 * 256 / 16
    REQUIRE(at(c4e, 36) == LocScalar(25600));   // 32^2 * 20^2 / 16
    REQUIRE(at(c4e, 4).is_zero());
    REQUIRE(at(c4e, 16).is_zero());

    auto c4o = c4_case_formula(MarkCase::Odd);
    REQUIRE(at(c4o, 0) == LocScalar(6561, 16)); // 81 * 81 / 16
    REQUIRE(at(c4o, 1).is_zero());
    REQUIRE(at(c4o, 9).is_zero());

    auto ide = intersection_disc_case_formula(MarkCase::Even);
    REQUIRE(ide.degree(Var::U) == 6);
    REQUIRE(at(ide, 0).is_zero());
    REQUIRE(at(ide, 4) == LocScalar(18225, 4)); // 81 * 16 * 9 * 25 / 64

    auto ido = intersection_disc_case_formula(MarkCase::Odd);
    REQUIRE(ido.degree(Var::U) == 10);
    REQUIRE(at(ido, 1) == LocScalar(729 * 64, 16) * LocScalar(25, 16)); // 729*64*(25/16)/16
    REQUIRE(at(ido, 9).is_zero());
}

TEST_CASE("infinity fiber geometry") {
    LocDomain dom;
    auto X = dom.var(Var::X);
    auto Y = dom.var(Var::Y);
    auto W = dom.var(Var::W);
    auto u = dom.u();

    auto f2 = X.pow(3) + u * X * W * W + W.pow(3) - Y * Y * W;
    auto f0 = u * X - Y.mul_int(2) + W;
    REQUIRE(infinity_disjointness(f0, f2));

    REQUIRE_FALSE(infinity_disjointness(f0, f2 + X)); // cubic part polluted at W = 0
    REQUIRE_FALSE(infinity_disjointness(X * X - Y.mul_int(2), f2)); // line part not linear
    REQUIRE_FALSE(infinity_disjointness(u * X + W, f2));            // no Y term
}

TEST_CASE("arithmetic genus from the dual graph") {
    REQUIRE(arithmetic_genus({0, 1}, 3) == 3);
    REQUIRE(arithmetic_genus({0, 0}, 1) == 0);
    REQUIRE(arithmetic_genus({1}, 0) == 1);
    REQUIRE(arithmetic_genus({0, 0, 0}, 2) == 0);
}

TEST_CASE("symbolic certificates hold in both cases") {
    for (MarkCase kase : {MarkCase::Even, MarkCase::Odd}) {
        auto cert = stable_reduction_certificate_symbolic(kase);
        INFO("case " << case_name(kase));
        REQUIRE(cert.valid);
        REQUIRE(cert.symbolic());
        REQUIRE(cert.checks.size() == 24);
        REQUIRE(cert.u == "u");
        for (const auto& c : cert.checks) {
            INFO("check " << c.name);
            REQUIRE(c.pass);
        }
        // the node check is meaningful only once u is a concrete value
        REQUIRE(cert.find("node_location") == nullptr);
        REQUIRE(cert.find("node_off_line") != nullptr);
    }

    auto even = stable_reduction_certificate_symbolic(MarkCase::Even);
    REQUIRE(even.find("p2bar")->witness == "-1/2*u - 5");
    REQUIRE(even.find("q2bar")->witness == "1/96*u^3 - 5/48*u^2 + 5/6*u + 20/3");

    auto odd = stable_reduction_certificate_symbolic(MarkCase::Odd);
    REQUIRE(odd.find("p2bar")->witness == "-5/2*u - 9/2");
    REQUIRE(odd.find("q2bar")->witness == "15/32*u^3 + 165/32*u^2 - 135/32*u + 243/32");
}

TEST_CASE("certificate JSON round trip") {
    auto cert = stable_reduction_certificate_symbolic(MarkCase::Even);
    auto j = cert.to_json();
    REQUIRE(j.at("case") == "even");
    REQUIRE(j.at("p") == 0);
    REQUIRE(j.at("r") == 0);
    REQUIRE(j.at("u") == "u");
    REQUIRE(j.at("valid") == true);
    REQUIRE(j.at("checks").size() == 24);

    auto text = j.dump(2);
    auto back = StableReductionCertificate::from_json(nlohmann::json::parse(text));
    REQUIRE(back.to_json() == j);
    REQUIRE(revalidate(back));
}

TEST_CASE("revalidation catches tampering") {
    const auto pristine = stable_reduction_certificate_symbolic(MarkCase::Odd);
    REQUIRE(revalidate(pristine));

    SECTION("edited coefficient witness") {
        auto cert = pristine;
        for (auto& c : cert.checks)
            if (c.name == "p2bar") c.witness = "-5/2*u - 7/2";
        REQUIRE_FALSE(revalidate(cert));
    }
    SECTION("edited tally witness") {
        auto cert = pristine;
        for (auto& c : cert.checks)
            if (c.name == "general_position") c.witness = "35/36";
        REQUIRE_FALSE(revalidate(cert));
    }
    SECTION("dropped check") {
        auto cert = pristine;
        std::erase_if(cert.checks, [](const CertCheck& c) { return c.name == "c4_nonzero"; });
        REQUIRE_THROWS_AS(revalidate(cert), Error);
    }
    SECTION("smuggled extra check") {
        auto cert = pristine;
        cert.checks.push_back({"always_fine", true, "1"});
        REQUIRE_THROWS_AS(revalidate(cert), Error);
    }
    SECTION("flipped validity bit") {
        auto cert = pristine;
        cert.valid = false;
        // revalidation recomputes; the recorded bit is the caller's to compare
        REQUIRE(revalidate(cert));
        REQUIRE(revalidate(cert) != cert.valid);
    }
    SECTION("unknown case tag") {
        auto cert = pristine;
        cert.case_tag = "neither";
        REQUIRE_THROWS_AS(revalidate(cert), Error);
    }
}

TEST_CASE("prime-field instance certificate, p = 11") {
    auto cfg = FieldConfig::make(11);
    auto dom = instance_domain(cfg, find_nonsquare(cfg));
    // (11 - 1)/2 is odd
    auto cert = stable_reduction_certificate_instance(MarkCase::Odd, dom);
    REQUIRE(cert.valid);
    REQUIRE_FALSE(cert.symbolic());
    REQUIRE(cert.p == 11);
    REQUIRE(cert.r == 1);
    REQUIRE(cert.u == dom.u_value.str());
    REQUIRE(cert.checks.size() == 25); // node location is now a concrete point
    REQUIRE(cert.find("node_location") != nullptr);

    auto back = StableReductionCertificate::from_json(cert.to_json());
    REQUIRE(revalidate(back));
}

TEST_CASE("extension-field instance certificate, q = 121") {
    auto cfg = FieldConfig::make(11, 2);
    REQUIRE((cfg->q - 1) / 2 % 2 == 0); // even half: the other marking case
    auto dom = instance_domain(cfg, find_nonsquare(cfg));
    auto cert = stable_reduction_certificate_instance(MarkCase::Even, dom);
    REQUIRE(cert.valid);
    REQUIRE(cert.p == 11);
    REQUIRE(cert.r == 2);

    // witnesses are element indices here; the round trip exercises that path
    auto back = StableReductionCertificate::from_json(cert.to_json());
    REQUIRE(revalidate(back));

    auto tampered = back;
    for (auto& c : tampered.checks)
        if (c.name == "node_location") c.witness = (BigInt(c.witness) == 0 ? "1" : "0");
    REQUIRE_FALSE(revalidate(tampered));
}
