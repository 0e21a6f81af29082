#pragma once

#include <map>

#include "curvecert/fq.hpp"
#include "curvecert/poly.hpp"
#include "curvecert/scalar.hpp"

namespace curvecert {

// Reduction Z[1/(2*3*5*7)] -> F_q.  Well defined because the characteristic
// is at least 11, so every legal denominator is invertible.
inline FqElem loc_to_fq(const LocScalar& a, const FieldPtr& cfg) {
    return FqElem::from_int(cfg, a.num()) * FqElem::from_int(cfg, a.den()).inverse();
}

// Coefficientwise reduction, optionally evaluating some variables at field
// constants (e.g. u at a chosen nonsquare).
inline MultiPoly<FqElem> poly_to_fq(const MultiPoly<LocScalar>& f, const FieldPtr& cfg,
                                    const std::map<Var, FqElem>& values = {}) {
    const FqElem one = FqElem::one(cfg);
    MultiPoly<FqElem> out;
    for (const auto& [m, c] : f.terms()) {
        MultiPoly<FqElem> term = MultiPoly<FqElem>::constant(loc_to_fq(c, cfg));
        for (size_t i = 0; i < 7; ++i) {
            if (m.e[i] == 0) continue;
            Var v = static_cast<Var>(i);
            auto it = values.find(v);
            if (it != values.end())
                for (uint16_t k = 0; k < m.e[i]; ++k) term = term.mul_scalar(it->second);
            else
                term *= MultiPoly<FqElem>::variable_pow(v, m.e[i], one);
        }
        out += term;
    }
    return out;
}

} // namespace curvecert
