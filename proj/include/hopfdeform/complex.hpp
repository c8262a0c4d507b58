#pragma once

#include <map>
#include <vector>

#include "hopfdeform/algebra.hpp"

namespace hopfdeform {

// Element of H^(x)n (x) A; cochains of the deformation complex of a comodule
// algebra are the elements commuting with the iterated coaction.
struct TensorElement {
    int legs = 0;
    SparseVec coords;
};
using Cochain = TensorElement;

inline TensorShape cochain_shape(const ComodData& ca, int n) {
    TensorShape s;
    s.dims.assign(std::size_t(n), ca.dimH());
    s.dims.push_back(ca.dimA());
    return s;
}

inline Index cochain_ambient_dim(const ComodData& ca, int n) {
    Index t = ca.dimA();
    for (int i = 0; i < n; ++i) t *= ca.dimH();
    return t;
}

inline std::vector<const BasedAlgebra*> cochain_legs(const ComodData& ca, int n) {
    std::vector<const BasedAlgebra*> legs(std::size_t(n), &ca.hopf->alg);
    legs.push_back(&ca.alg);
    return legs;
}

/// 1_H^(x)n (x) 1_A.
inline TensorElement unit_cochain(const ComodData& ca, int n) {
    TensorElement t{n, ca.alg.unit};
    TensorShape shape{{ca.dimA()}};
    for (int i = 0; i < n; ++i) {
        t.coords = insert_element_leg(shape, t.coords, 0, ca.hopf->alg.unit, ca.dimH());
        shape.dims.insert(shape.dims.begin(), ca.dimH());
    }
    return t;
}

/// Multiplication in the tensor product algebra H^(x)n (x) A.
inline TensorElement tensor_algebra_product(const ComodData& ca, const TensorElement& u,
                                            const TensorElement& v) {
    if (u.legs != v.legs) throw std::invalid_argument("tensor product: leg count mismatch");
    return {u.legs, multi_mul(cochain_legs(ca, u.legs), u.coords, v.coords)};
}

/// Coface maps: i = 0 prepends 1_H, 1 <= i <= n applies the coproduct to
/// H-leg i, i = n+1 applies the coaction to the A-leg.
inline TensorElement coface(const ComodData& ca, const TensorElement& c, int i) {
    const int n = c.legs;
    if (i < 0 || i > n + 1) throw std::out_of_range("coface index");
    TensorShape shape = cochain_shape(ca, n);
    if (i == 0)
        return {n + 1, insert_element_leg(shape, c.coords, 0, ca.hopf->alg.unit, ca.dimH())};
    if (i <= n)
        return {n + 1, substitute_leg(shape, c.coords, std::size_t(i - 1), ca.hopf->coproduct,
                                      ca.dimH() * ca.dimH())};
    return {n + 1,
            substitute_leg(shape, c.coords, std::size_t(n), ca.coaction, ca.dimH() * ca.dimA())};
}

/// Codegeneracies: 0-based cosimplicial index i in [0, n-1], realized as the
/// counit applied to H-leg i+1 (1-based).
inline TensorElement codegeneracy(const ComodData& ca, const TensorElement& c, int i) {
    const int n = c.legs;
    if (i < 0 || i >= n) throw std::out_of_range("codegeneracy index");
    TensorShape shape = cochain_shape(ca, n);
    std::vector<SparseVec> eps(ca.dimH());
    for (Index j = 0; j < ca.dimH(); ++j)
        if (!is_zero(ca.hopf->counit[j])) eps[j] = SparseVec{{0, ca.hopf->counit[j]}};
    return {n - 1, substitute_leg(shape, c.coords, std::size_t(i), eps, 1)};
}

/// Alternating sum of the cofaces.
inline TensorElement differential(const ComodData& ca, const TensorElement& c) {
    TensorElement out{c.legs + 1, {}};
    for (int i = 0; i <= c.legs + 1; ++i) {
        TensorElement f = coface(ca, c, i);
        sv_axpy(out.coords, Scalar(i % 2 ? -1 : 1), f.coords);
    }
    return out;
}

namespace detail {

/// Table of Delta^(q) columns (q = 0 gives the counit, q = 1 the identity).
inline std::vector<SparseVec> iterated_coproduct_table(const HopfData& h, int q) {
    const Index d = h.dim();
    std::vector<SparseVec> table(d);
    if (q == 0) {
        for (Index i = 0; i < d; ++i)
            if (!is_zero(h.counit[i])) table[i] = SparseVec{{0, h.counit[i]}};
        return table;
    }
    for (Index i = 0; i < d; ++i) {
        SparseVec col = sv_unit(i);
        TensorShape shape{{d}};
        for (int step = 1; step < q; ++step) {
            col = substitute_leg(shape, col, 0, h.coproduct, d * d);
            shape.dims.insert(shape.dims.begin(), d);
        }
        table[i] = std::move(col);
    }
    return table;
}

inline Index pow_index(Index base, int e) {
    Index t = 1;
    for (int i = 0; i < e; ++i) t *= base;
    return t;
}

}  // namespace detail

/// Applies Delta_A^(r) to the trailing A-leg, appending r new H-legs before A.
inline TensorElement expand_coaction(const ComodData& ca, const TensorElement& c, int r) {
    TensorElement out = c;
    TensorShape shape = cochain_shape(ca, c.legs);
    for (int step = 0; step < r; ++step) {
        out.coords = substitute_leg(shape, out.coords, shape.dims.size() - 1, ca.coaction,
                                    ca.dimH() * ca.dimA());
        shape.dims.back() = ca.dimH();
        shape.dims.push_back(ca.dimA());
        ++out.legs;
    }
    return out;
}

/// Prepends r unit H-legs.
inline TensorElement prepend_units(const ComodData& ca, const TensorElement& c, int r) {
    TensorElement out = c;
    TensorShape shape = cochain_shape(ca, c.legs);
    for (int step = 0; step < r; ++step) {
        out.coords = insert_element_leg(shape, out.coords, 0, ca.hopf->alg.unit, ca.dimH());
        shape.dims.insert(shape.dims.begin(), ca.dimH());
        ++out.legs;
    }
    return out;
}

/// comp_i, the insertion product of the complex: the left factor has the
/// iterated coproduct applied to H-leg i, the right factor is padded with
/// unit legs and its A-leg expanded by the iterated coaction.
inline TensorElement comp_insert(const ComodData& ca, const TensorElement& f,
                                 const TensorElement& g, int i) {
    const int p = f.legs, q = g.legs;
    if (i < 1 || i > p) throw std::out_of_range("comp slot out of range");
    TensorShape shape = cochain_shape(ca, p);
    auto table = detail::iterated_coproduct_table(*ca.hopf, q);
    TensorElement uf{p + q - 1, substitute_leg(shape, f.coords, std::size_t(i - 1), table,
                                               detail::pow_index(ca.dimH(), q))};
    TensorElement ug = prepend_units(ca, expand_coaction(ca, g, p - i), i - 1);
    return tensor_algebra_product(ca, uf, ug);
}

/// comp product: sum of insertions with Gerstenhaber signs.
inline TensorElement comp_product(const ComodData& ca, const TensorElement& f,
                                  const TensorElement& g) {
    const int p = f.legs, q = g.legs;
    TensorElement out{p + q - 1, {}};
    for (int i = 1; i <= p; ++i) {
        TensorElement t = comp_insert(ca, f, g, i);
        int sign = ((q - 1) * (i - 1)) % 2 ? -1 : 1;
        sv_axpy(out.coords, Scalar(sign), t.coords);
    }
    return out;
}

/// Gerstenhaber bracket [f,g] = f comp g - (-1)^{(p-1)(q-1)} g comp f.
inline TensorElement bracket(const ComodData& ca, const TensorElement& f,
                             const TensorElement& g) {
    const int p = f.legs, q = g.legs;
    TensorElement out = comp_product(ca, f, g);
    TensorElement rev = comp_product(ca, g, f);
    int sign = ((p - 1) * (q - 1)) % 2 ? 1 : -1;
    sv_axpy(out.coords, Scalar(sign), rev.coords);
    return out;
}

/// Cup product f u g = (1^(x)p (x) g) . (id^(x)p (x) Delta_A^(q))(f).
inline TensorElement cup(const ComodData& ca, const TensorElement& f, const TensorElement& g) {
    TensorElement ug = prepend_units(ca, g, f.legs);
    TensorElement uf = expand_coaction(ca, f, g.legs);
    return tensor_algebra_product(ca, ug, uf);
}

// ---------------------------------------------------------------------------
// Cochain spaces as kernels of the stacked commutator constraints against the
// iterated coaction, with deterministic coordinate read-offs.

struct ComplexSlice {
    int degree = 0;
    Index ambient_dim = 0;
    std::vector<TensorElement> basis;
    Matrix inclusion;           // ambient_dim x dim
    std::vector<Index> marks;   // coordinates of a member are its values here

    Index dim() const { return basis.size(); }

    SparseVec coords_of(const SparseVec& ambient) const {
        SparseVec coords;
        for (Index j = 0; j < marks.size(); ++j) {
            Scalar v = sv_get(ambient, marks[j]);
            if (!is_zero(v)) coords.emplace_back(j, std::move(v));
        }
        SparseVec recon;
        for (const auto& [j, c] : coords) sv_axpy(recon, c, basis[j].coords);
        if (!sv_equal(recon, ambient))
            throw std::logic_error("ComplexSlice::coords_of: vector outside the slice");
        return coords;
    }

    SparseVec ambient_of(const SparseVec& coords) const {
        SparseVec out;
        for (const auto& [j, c] : coords) sv_axpy(out, c, basis[j].coords);
        return out;
    }
};

/// Basis of the degree-n cochain space: the centralizer of the iterated
/// coaction of every basis element of A. Degree 0 yields the center of A.
inline ComplexSlice cochain_basis(const ComodData& ca, int n) {
    if (n < 0) throw std::invalid_argument("cochain_basis: negative degree");
    const Index N = cochain_ambient_dim(ca, n);
    auto legs = cochain_legs(ca, n);
    RrefBuilder builder(N);
    for (Index a = 0; a < ca.dimA(); ++a) {
        SparseVec d = iterated_coaction_column(ca, n, a);
        Matrix comm(N, N);
        for (Index c = 0; c < N; ++c) {
            SparseVec col = multi_mul(legs, d, sv_unit(c));
            sv_axpy(col, Scalar(-1), multi_mul(legs, sv_unit(c), d));
            for (const auto& [r, v] : col) comm.add_to(r, c, v);
        }
        for (Index r = 0; r < N; ++r)
            if (!comm.row(r).empty()) builder.insert(comm.row(r));
    }
    ComplexSlice slice;
    slice.degree = n;
    slice.ambient_dim = N;
    std::vector<SparseVec> ker = builder.kernel_basis();
    for (auto& k : ker) slice.basis.push_back(TensorElement{n, k});
    slice.inclusion = Matrix::from_columns(N, ker);
    for (Index col = 0; col < N; ++col)
        if (!builder.has_pivot(col)) slice.marks.push_back(col);
    return slice;
}

struct CohomologyResult {
    Index dim = 0;
    std::vector<TensorElement> representatives;
};

// Caches slices and differentials of the deformation complex of one comodule
// algebra; degrees are computed on demand. Holds its own copy of the comodule
// data (the referenced Hopf algebra must outlive the complex).
class DeformationComplex {
public:
    explicit DeformationComplex(ComodData ca) : ca_(std::move(ca)) {}

    const ComodData& comod() const { return ca_; }

    const ComplexSlice& slice(int n) {
        auto it = slices_.find(n);
        if (it == slices_.end()) it = slices_.emplace(n, cochain_basis(ca_, n)).first;
        return it->second;
    }

    /// Intersection of the kernels of all codegeneracies inside the slice.
    const ComplexSlice& normalized_slice(int n) {
        auto it = nslices_.find(n);
        if (it != nslices_.end()) return it->second;
        const ComplexSlice& full = slice(n);
        ComplexSlice ns;
        ns.degree = n;
        ns.ambient_dim = full.ambient_dim;
        if (n == 0) {
            ns = full;
        } else {
            RrefBuilder builder(full.dim());
            const Index lower = cochain_ambient_dim(ca_, n - 1);
            for (int i = 0; i < n; ++i) {
                Matrix s_map(lower, full.dim());
                for (Index j = 0; j < full.dim(); ++j) {
                    TensorElement img = codegeneracy(ca_, full.basis[j], i);
                    for (const auto& [r, c] : img.coords) s_map.add_to(r, j, c);
                }
                for (Index r = 0; r < lower; ++r)
                    if (!s_map.row(r).empty()) builder.insert(s_map.row(r));
            }
            std::vector<SparseVec> inner = builder.kernel_basis();
            std::vector<Index> inner_marks;
            for (Index col = 0; col < full.dim(); ++col)
                if (!builder.has_pivot(col)) inner_marks.push_back(col);
            std::vector<SparseVec> ambient;
            for (const auto& y : inner) {
                SparseVec w = full.ambient_of(y);
                ns.basis.push_back(TensorElement{n, w});
                ambient.push_back(std::move(w));
            }
            ns.inclusion = Matrix::from_columns(full.ambient_dim, ambient);
            for (Index j : inner_marks) ns.marks.push_back(full.marks[j]);
        }
        return nslices_.emplace(n, std::move(ns)).first->second;
    }

    /// Differential on slice n with ambient-coordinate values.
    Matrix slice_differential(int n) {
        const ComplexSlice& s = slice(n);
        Matrix d(cochain_ambient_dim(ca_, n + 1), s.dim());
        for (Index j = 0; j < s.dim(); ++j) {
            TensorElement img = differential(ca_, s.basis[j]);
            for (const auto& [r, c] : img.coords) d.add_to(r, j, c);
        }
        return d;
    }

    /// Differential n in slice coordinates on both sides.
    Matrix differential_in_coords(int n) {
        const ComplexSlice& target = slice(n + 1);
        const ComplexSlice& s = slice(n);
        Matrix d(target.dim(), s.dim());
        for (Index j = 0; j < s.dim(); ++j) {
            TensorElement img = differential(ca_, s.basis[j]);
            for (const auto& [r, c] : target.coords_of(img.coords)) d.add_to(r, j, c);
        }
        return d;
    }

    CohomologyResult cohomology(int n) { return cohomology_impl(n, false); }
    CohomologyResult normalized_cohomology(int n) { return cohomology_impl(n, true); }

    std::vector<Index> cohomology_dims(int max_degree, bool normalized = false) {
        std::vector<Index> dims;
        for (int n = 0; n <= max_degree; ++n)
            dims.push_back(normalized ? normalized_cohomology(n).dim : cohomology(n).dim);
        return dims;
    }

private:
    CohomologyResult cohomology_impl(int n, bool normalized) {
        const ComplexSlice& sn = normalized ? normalized_slice(n) : slice(n);
        // d_out with ambient values; kernel only depends on the columns.
        Matrix d_out(cochain_ambient_dim(ca_, n + 1), sn.dim());
        for (Index j = 0; j < sn.dim(); ++j) {
            TensorElement img = differential(ca_, sn.basis[j]);
            for (const auto& [r, c] : img.coords) d_out.add_to(r, j, c);
        }
        Matrix d_in(sn.dim(), 0);
        if (n > 0) {
            const ComplexSlice& prev = normalized ? normalized_slice(n - 1) : slice(n - 1);
            d_in = Matrix(sn.dim(), prev.dim());
            for (Index j = 0; j < prev.dim(); ++j) {
                TensorElement img = differential(ca_, prev.basis[j]);
                for (const auto& [r, c] : sn.coords_of(img.coords)) d_in.add_to(r, j, c);
            }
        }
        SubquotientReport sq = subquotient_dim(d_in, d_out);
        CohomologyResult res;
        res.dim = sq.dim;
        // canonical class representatives: reduce the selected kernel columns
        // modulo the image, then return ambient cochains
        RrefBuilder image(sn.dim());
        Matrix d_in_t = d_in.transpose();
        for (Index r = 0; r < d_in_t.rows(); ++r) image.insert(d_in_t.row(r));
        for (const auto& k : sq.representatives) {
            SparseVec reduced = k;
            image.reduce(reduced);
            res.representatives.push_back(TensorElement{n, sn.ambient_of(reduced)});
        }
        return res;
    }

    ComodData ca_;
    std::map<int, ComplexSlice> slices_, nslices_;
};

/// One-shot veneers.
inline ComplexSlice normalized_basis(const ComodData& ca, int n) {
    DeformationComplex c(ca);
    return c.normalized_slice(n);
}

inline CohomologyResult cohomology(const ComodData& ca, int n) {
    DeformationComplex c(ca);
    return c.cohomology(n);
}

/// Ambient differential matrix (all of H^(x)n (x) A, not just the slice).
inline Matrix ambient_differential(const ComodData& ca, int n) {
    const Index N = cochain_ambient_dim(ca, n);
    Matrix d(cochain_ambient_dim(ca, n + 1), N);
    for (Index j = 0; j < N; ++j) {
        TensorElement img = differential(ca, TensorElement{n, sv_unit(j)});
        for (const auto& [r, c] : img.coords) d.add_to(r, j, c);
    }
    return d;
}

}  // namespace hopfdeform
