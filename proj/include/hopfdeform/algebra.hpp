#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "hopfdeform/matrix.hpp"

namespace hopfdeform {

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        pass = false;
        violations.push_back(std::move(what));
    }
    void merge(const VerifyReport& other) {
        if (!other.pass) pass = false;
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
};

// Finite-dimensional associative algebra given by structure constants on a
// labeled basis. Constructors may hold unverified data; run
// verify_algebra_axioms before trusting it downstream.
struct BasedAlgebra {
    Index dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<std::vector<SparseVec>> mul;  // [i][j] -> coords of e_i * e_j
    SparseVec unit;

    const SparseVec& mul_basis(Index i, Index j) const { return mul[i][j]; }

    SparseVec multiply(const SparseVec& u, const SparseVec& v) const {
        SparseVec acc;
        for (const auto& [i, cu] : u)
            for (const auto& [j, cv] : v) {
                Scalar c = cu * cv;
                for (const auto& [k, ck] : mul[i][j]) acc.emplace_back(k, c * ck);
            }
        sv_sort_combine(acc);
        return acc;
    }

    Index label_index(const std::string& name) const {
        for (Index i = 0; i < dim; ++i)
            if (basis_labels[i] == name) return i;
        throw std::invalid_argument("unknown basis label: " + name);
    }
};

inline VerifyReport verify_algebra_axioms(const BasedAlgebra& a) {
    VerifyReport rep;
    for (Index i = 0; i < a.dim; ++i) {
        if (!sv_equal(a.multiply(a.unit, sv_unit(i)), sv_unit(i)) ||
            !sv_equal(a.multiply(sv_unit(i), a.unit), sv_unit(i)))
            rep.fail("unit(" + a.basis_labels[i] + ")");
    }
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j)
            for (Index k = 0; k < a.dim; ++k) {
                SparseVec left = a.multiply(a.mul_basis(i, j), sv_unit(k));
                SparseVec right = a.multiply(sv_unit(i), a.mul_basis(j, k));
                if (!sv_equal(left, right))
                    rep.fail("assoc(" + a.basis_labels[i] + "," + a.basis_labels[j] + "," +
                             a.basis_labels[k] + ")");
            }
    return rep;
}

// ---------------------------------------------------------------------------
// Tensor index bookkeeping. Composite indices are row-major with the last leg
// fastest: encode(i_1,...,i_r) = ((i_1*d_2 + i_2)*d_3 + ...)*d_r + i_r.

struct TensorShape {
    std::vector<Index> dims;

    Index total() const {
        Index t = 1;
        for (Index d : dims) t *= d;
        return t;
    }
    Index legs() const { return dims.size(); }

    Index encode(const std::vector<Index>& idx) const {
        Index code = 0;
        for (std::size_t l = 0; l < dims.size(); ++l) code = code * dims[l] + idx[l];
        return code;
    }

    std::vector<Index> decode(Index code) const {
        std::vector<Index> idx(dims.size());
        for (std::size_t l = dims.size(); l-- > 0;) {
            idx[l] = code % dims[l];
            code /= dims[l];
        }
        return idx;
    }

    /// Product of the dimensions of legs strictly after `leg`.
    Index suffix_size(std::size_t leg) const {
        Index s = 1;
        for (std::size_t l = leg + 1; l < dims.size(); ++l) s *= dims[l];
        return s;
    }
};

/// Componentwise product in a tensor product of algebras, one algebra per leg.
inline SparseVec multi_mul(const std::vector<const BasedAlgebra*>& legs, const SparseVec& u,
                           const SparseVec& v) {
    TensorShape shape;
    for (const auto* a : legs) shape.dims.push_back(a->dim);
    SparseVec acc;
    for (const auto& [pu, cu] : u) {
        auto iu = shape.decode(pu);
        for (const auto& [pv, cv] : v) {
            auto iv = shape.decode(pv);
            std::vector<std::pair<Index, Scalar>> partial{{0, cu * cv}};
            for (std::size_t l = 0; l < legs.size(); ++l) {
                const SparseVec& prod = legs[l]->mul_basis(iu[l], iv[l]);
                std::vector<std::pair<Index, Scalar>> next;
                next.reserve(partial.size() * prod.size());
                for (const auto& [code, c] : partial)
                    for (const auto& [k, ck] : prod)
                        next.emplace_back(code * legs[l]->dim + k, c * ck);
                partial = std::move(next);
                if (partial.empty()) break;
            }
            for (auto& e : partial) acc.push_back(std::move(e));
        }
    }
    sv_sort_combine(acc);
    return acc;
}

/// Replaces leg `leg` using a substitution table: basis index of that leg ->
/// sparse expansion over a replacement group of legs (row-major, combined
/// dimension rep_total; rep_total = 1 erases the leg).
inline SparseVec substitute_leg(const TensorShape& shape, const SparseVec& v, std::size_t leg,
                                const std::vector<SparseVec>& table, Index rep_total) {
    Index suf = shape.suffix_size(leg);
    Index mid = shape.dims[leg];
    SparseVec out;
    for (const auto& [code, c] : v) {
        Index suffix = code % suf;
        Index m = (code / suf) % mid;
        Index prefix = code / (suf * mid);
        for (const auto& [r, cr] : table[m])
            out.emplace_back((prefix * rep_total + r) * suf + suffix, c * cr);
    }
    sv_sort_combine(out);
    return out;
}

/// Inserts a constant element as a new leg at position `pos` (0 = front).
inline SparseVec insert_element_leg(const TensorShape& shape, const SparseVec& v, std::size_t pos,
                                    const SparseVec& element, Index elem_dim) {
    Index suf = 1;
    for (std::size_t l = pos; l < shape.dims.size(); ++l) suf *= shape.dims[l];
    SparseVec out;
    for (const auto& [code, c] : v) {
        Index suffix = code % suf;
        Index prefix = code / suf;
        for (const auto& [r, cr] : element)
            out.emplace_back((prefix * elem_dim + r) * suf + suffix, c * cr);
    }
    sv_sort_combine(out);
    return out;
}

// ---------------------------------------------------------------------------

// Hopf algebra by structure constants: underlying algebra plus coproduct,
// counit and antipode tables.
struct HopfData {
    BasedAlgebra alg;
    std::vector<SparseVec> coproduct;  // e_i -> coords over H (x) H, index j*dim + k
    std::vector<Scalar> counit;        // dense row of counit values
    Matrix antipode;                   // column j = S(e_j)

    Index dim() const { return alg.dim; }

    SparseVec counit_sv() const {
        SparseVec v;
        for (Index i = 0; i < alg.dim; ++i)
            if (!is_zero(counit[i])) v.emplace_back(i, counit[i]);
        return v;
    }

    /// Linear extension of the coproduct.
    SparseVec coproduct_of(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [i, c] : v)
            for (const auto& [p, cp] : coproduct[i]) out.emplace_back(p, c * cp);
        sv_sort_combine(out);
        return out;
    }

    Scalar counit_of(const SparseVec& v) const {
        Scalar s(0);
        for (const auto& [i, c] : v) s += c * counit[i];
        return s;
    }

    SparseVec antipode_of(const SparseVec& v) const { return antipode.apply(v); }
};

// Left comodule algebra over a Hopf algebra: algebra A plus coaction table
// A -> H (x) A.
struct ComodData {
    BasedAlgebra alg;  // A
    const HopfData* hopf = nullptr;
    std::vector<SparseVec> coaction;  // e_a -> coords over H (x) A, index h*dimA + a

    Index dimA() const { return alg.dim; }
    Index dimH() const { return hopf->dim(); }

    SparseVec coaction_of(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [a, c] : v)
            for (const auto& [p, cp] : coaction[a]) out.emplace_back(p, c * cp);
        sv_sort_combine(out);
        return out;
    }
};

inline VerifyReport verify_hopf_axioms(const HopfData& h) {
    VerifyReport rep = verify_algebra_axioms(h.alg);
    const Index d = h.dim();
    const BasedAlgebra& H = h.alg;
    TensorShape hh{{d, d}};
    std::vector<const BasedAlgebra*> legs2{&H, &H};

    for (Index i = 0; i < d; ++i) {
        // coassociativity
        SparseVec left = substitute_leg(hh, h.coproduct[i], 0, h.coproduct, d * d);
        SparseVec right = substitute_leg(hh, h.coproduct[i], 1, h.coproduct, d * d);
        if (!sv_equal(left, right)) rep.fail("coassoc(" + H.basis_labels[i] + ")");

        // counit laws
        std::vector<SparseVec> eps_table(d);
        for (Index j = 0; j < d; ++j)
            if (!is_zero(h.counit[j])) eps_table[j] = SparseVec{{0, h.counit[j]}};
        SparseVec l = substitute_leg(hh, h.coproduct[i], 0, eps_table, 1);
        SparseVec r = substitute_leg(hh, h.coproduct[i], 1, eps_table, 1);
        if (!sv_equal(l, sv_unit(i)) || !sv_equal(r, sv_unit(i)))
            rep.fail("counit(" + H.basis_labels[i] + ")");

        // antipode axioms
        SparseVec s_left, s_right;
        for (const auto& [p, c] : h.coproduct[i]) {
            Index a = p / d, b = p % d;
            SparseVec t1 = H.multiply(h.antipode_of(sv_unit(a)), sv_unit(b));
            sv_axpy(s_left, c, t1);
            SparseVec t2 = H.multiply(sv_unit(a), h.antipode_of(sv_unit(b)));
            sv_axpy(s_right, c, t2);
        }
        SparseVec target = H.unit;
        sv_scale(target, h.counit[i]);
        if (!sv_equal(s_left, target) || !sv_equal(s_right, target))
            rep.fail("antipode(" + H.basis_labels[i] + ")");

        // counit multiplicativity
        for (Index j = 0; j < d; ++j) {
            Scalar prod = h.counit_of(H.mul_basis(i, j));
            if (prod != h.counit[i] * h.counit[j])
                rep.fail("counit_mult(" + H.basis_labels[i] + "," + H.basis_labels[j] + ")");
        }
    }

    // bialgebra compatibility: coproduct is an algebra map
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            SparseVec lhs = h.coproduct_of(H.mul_basis(i, j));
            SparseVec rhs = multi_mul(legs2, h.coproduct[i], h.coproduct[j]);
            if (!sv_equal(lhs, rhs))
                rep.fail("coproduct_mult(" + H.basis_labels[i] + "," + H.basis_labels[j] + ")");
        }
    {
        SparseVec cop_unit = h.coproduct_of(H.unit);
        SparseVec one_one;
        for (const auto& [a, ca] : H.unit)
            for (const auto& [b, cb] : H.unit) one_one.emplace_back(a * d + b, ca * cb);
        sv_sort_combine(one_one);
        if (!sv_equal(cop_unit, one_one)) rep.fail("coproduct_unit");
        if (h.counit_of(H.unit) != Scalar(1)) rep.fail("counit_unit");
    }
    return rep;
}

inline VerifyReport verify_comodule_algebra(const ComodData& c) {
    VerifyReport rep = verify_algebra_axioms(c.alg);
    const HopfData& h = *c.hopf;
    const Index dH = c.dimH(), dA = c.dimA();
    TensorShape ha{{dH, dA}};
    std::vector<const BasedAlgebra*> legsHA{&h.alg, &c.alg};

    for (Index a = 0; a < dA; ++a) {
        // coaction coassociativity
        SparseVec left = substitute_leg(ha, c.coaction[a], 0, h.coproduct, dH * dH);
        SparseVec right = substitute_leg(ha, c.coaction[a], 1, c.coaction, dH * dA);
        if (!sv_equal(left, right)) rep.fail("coaction_coassoc(" + c.alg.basis_labels[a] + ")");

        // counit law
        std::vector<SparseVec> eps_table(dH);
        for (Index j = 0; j < dH; ++j)
            if (!is_zero(h.counit[j])) eps_table[j] = SparseVec{{0, h.counit[j]}};
        SparseVec l = substitute_leg(ha, c.coaction[a], 0, eps_table, 1);
        if (!sv_equal(l, sv_unit(a))) rep.fail("coaction_counit(" + c.alg.basis_labels[a] + ")");
    }

    // coaction is an algebra map
    for (Index a = 0; a < dA; ++a)
        for (Index b = 0; b < dA; ++b) {
            SparseVec lhs = c.coaction_of(c.alg.mul_basis(a, b));
            SparseVec rhs = multi_mul(legsHA, c.coaction[a], c.coaction[b]);
            if (!sv_equal(lhs, rhs))
                rep.fail("coaction_mult(" + c.alg.basis_labels[a] + "," + c.alg.basis_labels[b] +
                         ")");
        }
    {
        SparseVec lhs = c.coaction_of(c.alg.unit);
        SparseVec one_one;
        for (const auto& [p, cp] : h.alg.unit)
            for (const auto& [q, cq] : c.alg.unit) one_one.emplace_back(p * dA + q, cp * cq);
        sv_sort_combine(one_one);
        if (!sv_equal(lhs, one_one)) rep.fail("coaction_unit");
    }
    return rep;
}

/// Delta^(n): H -> H^(x)n as a matrix (n >= 1); Delta^(1) = id and
/// Delta^(n) = (Delta (x) id^(n-2)) o Delta^(n-1).
inline Matrix iterated_coproduct(const HopfData& h, int n) {
    if (n < 1) throw std::invalid_argument("iterated_coproduct: n must be >= 1");
    const Index d = h.dim();
    Index out_dim = 1;
    for (int i = 0; i < n; ++i) out_dim *= d;
    Matrix m(out_dim, d);
    for (Index i = 0; i < d; ++i) {
        SparseVec col = sv_unit(i);
        TensorShape shape{{d}};
        for (int step = 1; step < n; ++step) {
            col = substitute_leg(shape, col, 0, h.coproduct, d * d);
            shape.dims.insert(shape.dims.begin(), d);
        }
        for (const auto& [r, cv] : col) m.add_to(r, i, cv);
    }
    return m;
}

/// Delta_A^(n): A -> H^(x)n (x) A as a matrix; Delta_A^(0) = id and
/// Delta_A^(n) = (id_H (x) Delta_A^(n-1)) o Delta_A.
inline Matrix iterated_coaction(const ComodData& c, int n) {
    if (n < 0) throw std::invalid_argument("iterated_coaction: n must be >= 0");
    const Index dH = c.dimH(), dA = c.dimA();
    Index out_dim = dA;
    for (int i = 0; i < n; ++i) out_dim *= dH;
    Matrix m(out_dim, dA);
    for (Index a = 0; a < dA; ++a) {
        SparseVec col = sv_unit(a);
        TensorShape shape{{dA}};
        for (int step = 0; step < n; ++step) {
            // expand the trailing A leg
            col = substitute_leg(shape, col, shape.dims.size() - 1, c.coaction, dH * dA);
            shape.dims.back() = dH;
            shape.dims.push_back(dA);
        }
        for (const auto& [r, cv] : col) m.add_to(r, a, cv);
    }
    return m;
}

/// Sparse column of Delta_A^(n)(e_a) without assembling the whole matrix.
inline SparseVec iterated_coaction_column(const ComodData& c, int n, Index a) {
    const Index dH = c.dimH(), dA = c.dimA();
    SparseVec col = sv_unit(a);
    TensorShape shape{{dA}};
    for (int step = 0; step < n; ++step) {
        col = substitute_leg(shape, col, shape.dims.size() - 1, c.coaction, dH * dA);
        shape.dims.back() = dH;
        shape.dims.push_back(dA);
    }
    return col;
}

/// The ground field as a comodule algebra: coaction a -> 1_H (x) a.
inline ComodData trivial_comodule(const HopfData& h) {
    ComodData c;
    c.alg.dim = 1;
    c.alg.basis_labels = {"1"};
    c.alg.mul = {{sv_unit(0)}};
    c.alg.unit = sv_unit(0);
    c.hopf = &h;
    SparseVec coact;
    for (const auto& [p, cp] : h.alg.unit) coact.emplace_back(p * 1 + 0, cp);
    sv_sort_combine(coact);
    c.coaction = {coact};
    return c;
}

/// H as a comodule algebra over itself via the coproduct.
inline ComodData regular_comodule(const HopfData& h) {
    ComodData c;
    c.alg = h.alg;
    c.hopf = &h;
    c.coaction = h.coproduct;  // H (x) H = H (x) A with identical index layout
    return c;
}

}  // namespace hopfdeform
