#pragma once

#include "hopfdeform/complex.hpp"

namespace hopfdeform {

// Order-N deformation of the trivial coassociator: the series
// m0 + g_1 h + ... + g_N h^N with normalized degree-2 terms.
struct DeformationSeries {
    const ComodData* comod = nullptr;
    std::vector<TensorElement> terms;

    int order() const { return int(terms.size()); }
};

inline bool is_normalized_cochain(const ComodData& ca, const TensorElement& c) {
    for (int i = 0; i < c.legs; ++i)
        if (!codegeneracy(ca, c, i).coords.empty()) return false;
    return true;
}

/// Obstruction of a family of 2-cochains:
/// sum_{i+j=k+1} d1(g_i) d3(g_j) - d2(g_i) d0(g_j).
inline TensorElement obstruction(const ComodData& ca, const std::vector<TensorElement>& terms) {
    const int k = int(terms.size());
    TensorElement out{3, {}};
    for (int i = 1; i <= k; ++i) {
        int j = k + 1 - i;
        if (j < 1 || j > k) continue;
        const TensorElement& gi = terms[std::size_t(i - 1)];
        const TensorElement& gj = terms[std::size_t(j - 1)];
        TensorElement first = tensor_algebra_product(ca, coface(ca, gi, 1), coface(ca, gj, 3));
        TensorElement second = tensor_algebra_product(ca, coface(ca, gi, 2), coface(ca, gj, 0));
        sv_axpy(out.coords, Scalar(1), first.coords);
        sv_axpy(out.coords, Scalar(-1), second.coords);
    }
    return out;
}

inline VerifyReport verify_series(const DeformationSeries& s) {
    VerifyReport rep;
    const ComodData& ca = *s.comod;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        if (s.terms[i].legs != 2) {
            rep.fail("term " + std::to_string(i + 1) + " is not a 2-cochain");
            return rep;
        }
        if (!is_normalized_cochain(ca, s.terms[i]))
            rep.fail("term " + std::to_string(i + 1) + " is not normalized");
    }
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        TensorElement lhs = differential(ca, s.terms[i]);
        std::vector<TensorElement> head(s.terms.begin(), s.terms.begin() + std::ptrdiff_t(i));
        TensorElement rhs = obstruction(ca, head);
        if (!sv_equal(lhs.coords, rhs.coords))
            rep.fail("deformation condition fails at order " + std::to_string(i + 1));
    }
    return rep;
}

struct LiftOutcome {
    bool obstructed = false;
    DeformationSeries series;        // extended series when not obstructed
    SparseVec obstruction_class;     // coordinates over the degree-3 classes
    Index h3_dim = 0;
};

/// One lifting step: solves d(g') = obs(g_1..g_N) for a normalized g' with
/// the RREF-canonical solution (free variables zero), or reports the
/// cohomology class of the obstruction.
inline LiftOutcome lift_step(DeformationComplex& cx, const DeformationSeries& s) {
    const ComodData& ca = cx.comod();
    TensorElement obs = obstruction(ca, s.terms);
    const ComplexSlice& nslice = cx.normalized_slice(2);
    Matrix d(cochain_ambient_dim(ca, 3), nslice.dim());
    for (Index j = 0; j < nslice.dim(); ++j) {
        TensorElement img = differential(ca, nslice.basis[j]);
        for (const auto& [r, c] : img.coords) d.add_to(r, j, c);
    }
    LiftOutcome out;
    auto sol = solve(d, obs.coords);
    if (sol) {
        out.series = s;
        out.series.terms.push_back(TensorElement{2, nslice.ambient_of(*sol)});
        return out;
    }
    out.obstructed = true;
    CohomologyResult h3 = cx.cohomology(3);
    out.h3_dim = h3.dim;
    // express the obstruction as (class representatives | coboundaries)
    std::vector<SparseVec> cols;
    for (const auto& rep : h3.representatives) cols.push_back(rep.coords);
    Matrix d2 = cx.slice_differential(2);
    for (Index j = 0; j < d2.cols(); ++j) cols.push_back(d2.column(j));
    Matrix system = Matrix::from_columns(cochain_ambient_dim(ca, 3), cols);
    auto expansion = solve(system, obs.coords);
    if (!expansion) throw std::logic_error("lift_step: obstruction is not a cocycle");
    for (const auto& [j, c] : *expansion)
        if (j < h3.dim) out.obstruction_class.emplace_back(j, c);
    return out;
}

inline LiftOutcome lift_step(const DeformationSeries& s) {
    DeformationComplex cx(*s.comod);
    return lift_step(cx, s);
}

/// Specialization at a scalar: Phi = m0 + sum_i lambda^i g_i.
inline TensorElement specialize(const DeformationSeries& s, const Scalar& lambda) {
    const ComodData& ca = *s.comod;
    TensorElement phi = unit_cochain(ca, 2);
    Scalar power(1);
    for (const auto& g : s.terms) {
        power *= lambda;
        sv_axpy(phi.coords, power, g.coords);
    }
    return phi;
}

/// Inverse of an element of H^(x)n (x) A (left inverse through a solve; in a
/// finite-dimensional algebra this is two-sided, which is verified).
inline TensorElement tensor_inverse(const ComodData& ca, const TensorElement& e) {
    const Index N = cochain_ambient_dim(ca, e.legs);
    auto legs = cochain_legs(ca, e.legs);
    Matrix lmul(N, N);
    for (Index c = 0; c < N; ++c) {
        SparseVec col = multi_mul(legs, e.coords, sv_unit(c));
        for (const auto& [r, v] : col) lmul.add_to(r, c, v);
    }
    auto sol = solve(lmul, unit_cochain(ca, e.legs).coords);
    if (!sol) throw std::invalid_argument("tensor_inverse: element is not invertible");
    TensorElement inv{e.legs, *sol};
    TensorElement check = tensor_algebra_product(ca, inv, e);
    if (!sv_equal(check.coords, unit_cochain(ca, e.legs).coords))
        throw std::logic_error("tensor_inverse: one-sided inverse only");
    return inv;
}

/// Exact gauge transport of a coassociator along an invertible counit-
/// normalized element T of H (x) A lying in the degree-1 cochain space:
/// Phi' = d1(T) Phi d2(T^-1) d0(T^-1). For T = 1 - h s the first-order term
/// in h is the coboundary shift Phi + h d(s).
inline TensorElement gauge_transform(const ComodData& ca, const TensorElement& t,
                                     const TensorElement& phi) {
    if (t.legs != 1 || phi.legs != 2)
        throw std::invalid_argument("gauge_transform: expected a 1-leg gauge and a 2-leg tensor");
    TensorElement eps_t = codegeneracy(ca, t, 0);
    if (!sv_equal(eps_t.coords, ca.alg.unit))
        throw std::invalid_argument("gauge_transform: gauge element is not counit-normalized");
    TensorElement tinv = tensor_inverse(ca, t);
    TensorElement out = tensor_algebra_product(ca, coface(ca, t, 1), phi);
    out = tensor_algebra_product(ca, out, coface(ca, tinv, 2));
    out = tensor_algebra_product(ca, out, coface(ca, tinv, 0));
    return out;
}

struct QuasiComodReport {
    bool commutation = false;  // Phi conjugates the two iterated coactions
    bool pentagon = false;     // coassociator cocycle identity
    bool counital = false;     // both counit contractions give 1 (x) 1
    bool invertible = false;   // a left inverse exists

    bool pass() const { return commutation && pentagon && counital && invertible; }
};

/// The four axioms of a coassociator for (A, Delta_A), checked exactly.
inline QuasiComodReport verify_quasi_comodule(const ComodData& ca, const TensorElement& phi) {
    if (phi.legs != 2) throw std::invalid_argument("verify_quasi_comodule: need a 2-leg tensor");
    QuasiComodReport rep;
    TensorShape shapeHA{{ca.dimH(), ca.dimA()}};

    rep.commutation = true;
    for (Index a = 0; a < ca.dimA(); ++a) {
        SparseVec inner = substitute_leg(shapeHA, ca.coaction[a], 1, ca.coaction,
                                         ca.dimH() * ca.dimA());
        SparseVec outer = substitute_leg(shapeHA, ca.coaction[a], 0, ca.hopf->coproduct,
                                         ca.dimH() * ca.dimH());
        TensorElement lhs = tensor_algebra_product(ca, phi, TensorElement{2, inner});
        TensorElement rhs = tensor_algebra_product(ca, TensorElement{2, outer}, phi);
        if (!sv_equal(lhs.coords, rhs.coords)) {
            rep.commutation = false;
            break;
        }
    }

    TensorElement lhs = tensor_algebra_product(ca, coface(ca, phi, 1), coface(ca, phi, 3));
    TensorElement rhs = tensor_algebra_product(ca, coface(ca, phi, 2), coface(ca, phi, 0));
    rep.pentagon = sv_equal(lhs.coords, rhs.coords);

    TensorElement unit1 = unit_cochain(ca, 1);
    rep.counital = sv_equal(codegeneracy(ca, phi, 0).coords, unit1.coords) &&
                   sv_equal(codegeneracy(ca, phi, 1).coords, unit1.coords);

    // left inverse: y Phi = 1, solved through the right-multiplication matrix
    const Index N = cochain_ambient_dim(ca, 2);
    auto legs = cochain_legs(ca, 2);
    Matrix rmul(N, N);
    for (Index c = 0; c < N; ++c) {
        SparseVec col = multi_mul(legs, sv_unit(c), phi.coords);
        for (const auto& [r, v] : col) rmul.add_to(r, c, v);
    }
    rep.invertible = solve(rmul, unit_cochain(ca, 2).coords).has_value();
    return rep;
}

}  // namespace hopfdeform
