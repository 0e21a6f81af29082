#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvecert/error.hpp"
#include "curvecert/scalar.hpp"
#include "curvecert/snf.hpp"

namespace curvecert {

// Finitely generated abelian group in canonical form: Z^rank + Z/d1 + ... with
// d1 | d2 | ... and every d >= 2.
struct FgAbelianGroup {
    std::size_t rank = 0;
    std::vector<BigInt> invariants;

    static FgAbelianGroup trivial() { return {}; }
    static FgAbelianGroup free_of_rank(std::size_t r) { return {r, {}}; }
    static FgAbelianGroup cyclic(const BigInt& n) {
        if (n < 1) throw Error("cyclic group order must be positive");
        if (n == 1) return trivial();
        return {0, {n}};
    }

    bool is_trivial() const { return rank == 0 && invariants.empty(); }

    // nullopt = infinite
    std::optional<BigInt> order() const {
        if (rank > 0) return std::nullopt;
        BigInt o = 1;
        for (const BigInt& d : invariants) o *= d;
        return o;
    }

    void check_canonical() const {
        for (std::size_t i = 0; i < invariants.size(); ++i) {
            if (invariants[i] < 2) throw CheckError("invariant factor below 2");
            if (i + 1 < invariants.size() && invariants[i + 1] % invariants[i] != 0)
                throw CheckError("invariant factors out of divisibility order");
        }
    }

    friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        return a.rank == b.rank && a.invariants == b.invariants;
    }
    friend bool operator!=(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        return !(a == b);
    }

    std::string str() const {
        if (is_trivial()) return "0";
        std::string s;
        auto append = [&s](const std::string& part) {
            if (!s.empty()) s += " + ";
            s += part;
        };
        if (rank == 1) append("Z");
        else if (rank > 1) append("Z^" + std::to_string(rank));
        for (const BigInt& d : invariants) append("Z/" + d.str());
        return s;
    }
};

// Group presented as Z^gens modulo the column lattice of `relations`
// (relations.rows() == gens).  Reduced to canonical form via Smith.
inline FgAbelianGroup presented_group(const IntMatrix& relations) {
    SmithDecomposition s = smith_normal_form(relations);
    FgAbelianGroup g;
    std::size_t nonzero = 0;
    for (const BigInt& d : s.nonzero_diagonal()) {
        ++nonzero;
        if (d >= 2) g.invariants.push_back(d);
    }
    g.rank = relations.rows() - nonzero;
    g.check_canonical();
    return g;
}

// A homomorphism between presented groups: Z^{g1}/col(r1) -> Z^{g2}/col(r2)
// induced by the integer matrix a (shape g2 x g1).  Construction checks
// well-definedness: a * r1 must land in the column lattice of r2.
struct PresentedHom {
    IntMatrix a, r1, r2;

    PresentedHom(IntMatrix a_, IntMatrix r1_, IntMatrix r2_)
        : a(std::move(a_)), r1(std::move(r1_)), r2(std::move(r2_)) {
        if (a.cols() != r1.rows() || a.rows() != r2.rows())
            throw MismatchError("homomorphism shape mismatch with presentations");
        IntMatrix image = a * r1;
        std::vector<BigInt> col(r2.rows()), sol;
        for (std::size_t j = 0; j < image.cols(); ++j) {
            for (std::size_t i = 0; i < image.rows(); ++i) col[i] = image.at(i, j);
            if (!lattice_solve(r2, col, sol))
                throw CheckError("map does not respect the relations");
        }
    }
};

// Cokernel: target generators modulo (image of a + target relations).
inline FgAbelianGroup hom_cokernel(const PresentedHom& h) {
    return presented_group(hconcat(h.a, h.r2));
}

// Kernel, as an abstract group.  The elements of the kernel are classes of
// lattice points x with a*x in the column lattice of r2; that preimage
// lattice L is the x-part of ker [a | -r2].  Presenting L by a generating
// set G, the kernel group is L / col(r1), whose relations are the syzygies
// of G together with G-preimages of the source relations.
inline FgAbelianGroup hom_kernel(const PresentedHom& h) {
    const std::size_t g1 = h.a.cols();
    IntMatrix block = hconcat(h.a, h.r2);
    for (std::size_t i = 0; i < h.r2.rows(); ++i)
        for (std::size_t j = 0; j < h.r2.cols(); ++j)
            block.at(i, g1 + j) = -block.at(i, g1 + j);

    IntMatrix full_kernel = kernel_basis(block);
    IntMatrix gens(g1, full_kernel.cols()); // x-parts generate the preimage lattice
    for (std::size_t i = 0; i < g1; ++i)
        for (std::size_t j = 0; j < full_kernel.cols(); ++j)
            gens.at(i, j) = full_kernel.at(i, j);

    IntMatrix syzygies = kernel_basis(gens);

    IntMatrix preimages(gens.cols(), h.r1.cols());
    std::vector<BigInt> col(g1), sol;
    for (std::size_t j = 0; j < h.r1.cols(); ++j) {
        for (std::size_t i = 0; i < g1; ++i) col[i] = h.r1.at(i, j);
        if (!lattice_solve(gens, col, sol))
            throw CheckError("source relation escapes the preimage lattice");
        for (std::size_t i = 0; i < gens.cols(); ++i) preimages.at(i, j) = sol[i];
    }

    return presented_group(hconcat(syzygies, preimages));
}

// ---------------------------------------------------------------------------
// Integral cohomology of cyclic groups and of an amalgam over a common
// cyclic subgroup
// ---------------------------------------------------------------------------

inline FgAbelianGroup cyclic_cohomology(const BigInt& n, std::size_t k) {
    if (n < 1) throw Error("group order must be >= 1");
    if (k == 0) return FgAbelianGroup::free_of_rank(1);
    if (k % 2 == 1) return FgAbelianGroup::trivial();
    return FgAbelianGroup::cyclic(n);
}

namespace detail {

// Presentation matrix of H^k(Z/n, Z): one generator with relation n in even
// positive degrees, a free generator in degree 0, nothing in odd degrees.
inline IntMatrix cyclic_cohomology_presentation(const BigInt& n, std::size_t k) {
    if (k == 0) return IntMatrix(1, 0);
    if (k % 2 == 1) return IntMatrix(0, 0);
    IntMatrix r(1, 1);
    r.at(0, 0) = n;
    return r;
}

} // namespace detail

// Matrix of the restriction H^k(Z/n, Z) -> H^k(Z/m, Z) for a subgroup of
// order m, under the normalization where the degree-2 generator is the class
// of a faithful character; restriction is then reduction mod m in every even
// degree.  Odd degrees carry zero groups (0x0 matrix).
inline IntMatrix restriction_matrix(const BigInt& n, const BigInt& m, std::size_t k) {
    if (n < 1 || m < 1 || n % m != 0)
        throw Error("restriction requires the subgroup order to divide the group order");
    if (k % 2 == 1) return IntMatrix(0, 0);
    IntMatrix a(1, 1);
    a.at(0, 0) = 1;
    return a;
}

namespace detail {

// The difference map H^k(Z/n1) + H^k(Z/n2) -> H^k(Z/m) of the Mayer-Vietoris
// sequence, as a hom of presented groups.
inline PresentedHom mv_difference_map(const BigInt& n1, const BigInt& n2, const BigInt& m,
                                      std::size_t k) {
    IntMatrix p1 = cyclic_cohomology_presentation(n1, k);
    IntMatrix p2 = cyclic_cohomology_presentation(n2, k);
    IntMatrix pc = cyclic_cohomology_presentation(m, k);

    // block-diagonal presentation of the direct sum
    IntMatrix r1(p1.rows() + p2.rows(), p1.cols() + p2.cols());
    for (std::size_t i = 0; i < p1.rows(); ++i)
        for (std::size_t j = 0; j < p1.cols(); ++j) r1.at(i, j) = p1.at(i, j);
    for (std::size_t i = 0; i < p2.rows(); ++i)
        for (std::size_t j = 0; j < p2.cols(); ++j)
            r1.at(p1.rows() + i, p1.cols() + j) = p2.at(i, j);

    IntMatrix res1 = restriction_matrix(n1, m, k);
    IntMatrix res2 = restriction_matrix(n2, m, k);
    IntMatrix a(pc.rows(), r1.rows());
    for (std::size_t i = 0; i < res1.rows(); ++i)
        for (std::size_t j = 0; j < res1.cols(); ++j) a.at(i, j) = res1.at(i, j);
    for (std::size_t i = 0; i < res2.rows(); ++i)
        for (std::size_t j = 0; j < res2.cols(); ++j)
            a.at(i, p1.rows() + j) = -res2.at(i, j);

    return PresentedHom(std::move(a), std::move(r1), std::move(pc));
}

// |source| * |coker| == |target| * |ker| for maps of finite groups; an
// exactness sanity check on each solved segment.
inline void check_order_bookkeeping(const PresentedHom& h, const FgAbelianGroup& ker,
                                    const FgAbelianGroup& coker) {
    FgAbelianGroup src = presented_group(h.r1);
    FgAbelianGroup dst = presented_group(h.r2);
    auto so = src.order(), to = dst.order(), ko = ker.order(), co = coker.order();
    if (!so || !to || !ko || !co) return; // infinite groups: only degree 0
    if (*so * *co != *to * *ko)
        throw CheckError("order bookkeeping failed across a Mayer-Vietoris segment");
}

} // namespace detail

// H^k(G, Z) for G = Z/n1 *_{Z/m} Z/n2, k = 0..kmax, via Mayer-Vietoris:
//   0 -> coker(phi_{k-1}) -> H^k(G) -> ker(phi_k) -> 0
// with phi_k the difference map of restrictions.  For cyclic inputs one side
// of every segment is trivial, so no extension problem is ever solved here;
// if both sides were nontrivial the computation refuses rather than guesses.
inline std::vector<FgAbelianGroup> amalgam_cohomology(const BigInt& n1, const BigInt& n2,
                                                      const BigInt& m, std::size_t kmax) {
    if (n1 < 1 || n2 < 1 || m < 1 || n1 % m != 0 || n2 % m != 0)
        throw Error("amalgam requires the edge group order to divide both vertex orders");

    std::vector<FgAbelianGroup> h;
    h.reserve(kmax + 1);

    FgAbelianGroup prev_coker = FgAbelianGroup::trivial(); // coker(phi_{-1})
    for (std::size_t k = 0; k <= kmax; ++k) {
        PresentedHom phi = detail::mv_difference_map(n1, n2, m, k);
        FgAbelianGroup ker = hom_kernel(phi);
        FgAbelianGroup coker = hom_cokernel(phi);
        detail::check_order_bookkeeping(phi, ker, coker);

        if (k == 0) {
            h.push_back(ker); // H^0(G) = ker(phi_0)
        } else if (prev_coker.is_trivial()) {
            h.push_back(ker);
        } else if (ker.is_trivial()) {
            h.push_back(prev_coker);
        } else {
            throw Error("ambiguous extension in degree " + std::to_string(k));
        }
        prev_coker = coker;
    }
    return h;
}

} // namespace curvecert
