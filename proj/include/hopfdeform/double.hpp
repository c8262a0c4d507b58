#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfdeform/algebra.hpp"

namespace hopfdeform {

// Module over a based algebra, given by one action matrix per basis element.
struct ModuleRep {
    const BasedAlgebra* algebra = nullptr;
    Index dim = 0;
    std::vector<Matrix> actions;

    Matrix act(const SparseVec& elem) const {
        Matrix m(dim, dim);
        for (const auto& [i, c] : elem) m = m + actions[i].scaled(c);
        return m;
    }
};

inline VerifyReport dmodule_verify(const ModuleRep& m) {
    VerifyReport rep;
    const BasedAlgebra& a = *m.algebra;
    if (m.actions.size() != a.dim) {
        rep.fail("action table size mismatch");
        return rep;
    }
    for (Index i = 0; i < a.dim; ++i)
        if (m.actions[i].rows() != m.dim || m.actions[i].cols() != m.dim) {
            rep.fail("action matrix shape(" + a.basis_labels[i] + ")");
            return rep;
        }
    if (!(m.act(a.unit) == Matrix::identity(m.dim))) rep.fail("unit acts as identity");
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) {
            Matrix lhs = m.actions[i] * m.actions[j];
            Matrix rhs = m.act(a.mul_basis(i, j));
            if (!(lhs == rhs))
                rep.fail("rep(" + a.basis_labels[i] + "," + a.basis_labels[j] + ")");
        }
    return rep;
}

inline ModuleRep left_regular_module(const BasedAlgebra& a) {
    ModuleRep m;
    m.algebra = &a;
    m.dim = a.dim;
    m.actions.reserve(a.dim);
    for (Index j = 0; j < a.dim; ++j) {
        Matrix act(a.dim, a.dim);
        for (Index i = 0; i < a.dim; ++i)
            for (const auto& [k, c] : a.mul_basis(j, i)) act.add_to(k, i, c);
        m.actions.push_back(std::move(act));
    }
    return m;
}

/// One-dimensional module on which every basis element acts by a scalar.
inline ModuleRep character_module(const BasedAlgebra& a, const std::vector<Scalar>& values) {
    ModuleRep m;
    m.algebra = &a;
    m.dim = 1;
    for (Index j = 0; j < a.dim; ++j) {
        Matrix act(1, 1);
        act.set(0, 0, values[j]);
        m.actions.push_back(std::move(act));
    }
    return m;
}

inline ModuleRep trivial_module_of_hopf(const HopfData& h) {
    return character_module(h.alg, h.counit);
}

inline ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
    if (a.algebra != b.algebra) throw std::invalid_argument("direct_sum: different algebras");
    ModuleRep m;
    m.algebra = a.algebra;
    m.dim = a.dim + b.dim;
    for (Index j = 0; j < a.algebra->dim; ++j) {
        Matrix act(m.dim, m.dim);
        for (Index r = 0; r < a.dim; ++r)
            for (const auto& [c, v] : a.actions[j].row(r)) act.add_to(r, c, v);
        for (Index r = 0; r < b.dim; ++r)
            for (const auto& [c, v] : b.actions[j].row(r)) act.add_to(a.dim + r, a.dim + c, v);
        m.actions.push_back(std::move(act));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Drinfeld double. Basis alpha_i (x) h_j with the coordinate dual basis
// (alpha_i) of H*, dual index major. (H*)^op carries the product
// (phi * psi)(x) = psi(x^(1)) phi(x^(2)); straightening rule
// h alpha = alpha(S(h^(1)) ? h^(3)) h^(2).

struct DoubleData {
    const HopfData* hopf = nullptr;
    BasedAlgebra alg;

    Index dim() const { return alg.dim; }
    Index hdim() const { return hopf->dim(); }

    Index pair_index(Index dual, Index h) const { return dual * hopf->dim() + h; }

    /// H -> D(H), h -> epsilon (x) h.
    SparseVec embed_h(const SparseVec& hElem) const {
        const Index d = hdim();
        SparseVec out;
        for (const auto& [j, c] : hElem)
            for (Index m = 0; m < d; ++m)
                if (!is_zero(hopf->counit[m])) out.emplace_back(m * d + j, c * hopf->counit[m]);
        sv_sort_combine(out);
        return out;
    }

    /// Functional with the given values on the H basis -> D(H).
    SparseVec embed_dual(const std::vector<Scalar>& values) const {
        const Index d = hdim();
        SparseVec out;
        for (Index m = 0; m < d; ++m) {
            if (is_zero(values[m])) continue;
            for (const auto& [k, ck] : hopf->alg.unit) out.emplace_back(m * d + k, values[m] * ck);
        }
        sv_sort_combine(out);
        return out;
    }

    /// Generating family: the embedded H basis together with the embedded
    /// dual basis. Their products run over the whole D(H) basis.
    std::vector<SparseVec> generating_set() const {
        const Index d = hdim();
        std::vector<SparseVec> gens;
        for (Index i = 0; i < d; ++i) {
            std::vector<Scalar> values(d, Scalar(0));
            values[i] = 1;
            gens.push_back(embed_dual(values));
        }
        for (Index j = 0; j < d; ++j) gens.push_back(embed_h(sv_unit(j)));
        return gens;
    }
};

/// Iterated coproduct columns of a Hopf algebra as sparse triples.
inline std::vector<SparseVec> coproduct_squared(const HopfData& h) {
    const Index d = h.dim();
    std::vector<SparseVec> out(d);
    TensorShape hh{{d, d}};
    for (Index i = 0; i < d; ++i) out[i] = substitute_leg(hh, h.coproduct[i], 0, h.coproduct, d * d);
    return out;
}

inline DoubleData drinfeld_double(const HopfData& h) {
    const Index d = h.dim();
    DoubleData dd;
    dd.hopf = &h;
    BasedAlgebra& D = dd.alg;
    D.dim = d * d;
    D.basis_labels.resize(D.dim);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            D.basis_labels[i * d + j] = h.alg.basis_labels[i] + "*|" + h.alg.basis_labels[j];

    auto delta2 = coproduct_squared(h);
    std::vector<SparseVec> s_col(d);
    for (Index a = 0; a < d; ++a) s_col[a] = h.antipode_of(sv_unit(a));

    // conj[a][t][m] = coefficient column of S(e_a) e_m e_t, cached on demand
    std::map<std::pair<Index, Index>, std::vector<SparseVec>> conj;
    auto conj_cols = [&](Index a, Index t) -> const std::vector<SparseVec>& {
        auto key = std::make_pair(a, t);
        auto it = conj.find(key);
        if (it != conj.end()) return it->second;
        std::vector<SparseVec> cols(d);
        for (Index m = 0; m < d; ++m)
            cols[m] = h.alg.multiply(h.alg.multiply(s_col[a], sv_unit(m)), sv_unit(t));
        return conj.emplace(key, std::move(cols)).first->second;
    };

    // (phi * psi)(e_m) = sum over Delta(e_m) = (p,q): psi_p phi_q
    auto star = [&](const std::vector<Scalar>& phi, const std::vector<Scalar>& psi) {
        std::vector<Scalar> out(d, Scalar(0));
        for (Index m = 0; m < d; ++m)
            for (const auto& [code, c] : h.coproduct[m]) out[m] += c * psi[code / d] * phi[code % d];
        return out;
    };

    D.mul.assign(D.dim, std::vector<SparseVec>(D.dim));
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k)
                for (Index l = 0; l < d; ++l) {
                    SparseVec acc;
                    for (const auto& [code3, c] : delta2[j]) {
                        Index t3 = code3 % d;
                        Index t2 = (code3 / d) % d;
                        Index t1 = code3 / (d * d);
                        const auto& cols = conj_cols(t1, t3);
                        // gamma(e_m) = coefficient of e_k in S(e_t1) e_m e_t3
                        std::vector<Scalar> gamma(d, Scalar(0));
                        bool nonzero = false;
                        for (Index m = 0; m < d; ++m) {
                            gamma[m] = sv_get(cols[m], k);
                            if (!is_zero(gamma[m])) nonzero = true;
                        }
                        if (!nonzero) continue;
                        std::vector<Scalar> alpha_i(d, Scalar(0));
                        alpha_i[i] = 1;
                        std::vector<Scalar> combined = star(alpha_i, gamma);
                        const SparseVec& hpart = h.alg.mul_basis(t2, l);
                        for (Index m = 0; m < d; ++m) {
                            if (is_zero(combined[m])) continue;
                            for (const auto& [n, cn] : hpart)
                                acc.emplace_back(m * d + n, c * combined[m] * cn);
                        }
                    }
                    sv_sort_combine(acc);
                    D.mul[i * d + j][k * d + l] = std::move(acc);
                }

    SparseVec unit;
    for (Index m = 0; m < d; ++m) {
        if (is_zero(h.counit[m])) continue;
        for (const auto& [k, ck] : h.alg.unit) unit.emplace_back(m * d + k, h.counit[m] * ck);
    }
    sv_sort_combine(unit);
    D.unit = std::move(unit);
    return dd;
}

// ---------------------------------------------------------------------------
// Word-closure construction of a module from generator actions. The words in
// the generators are expanded breadth-first until their coordinate vectors
// span the algebra; each basis element is then expressed in that span.

inline ModuleRep module_from_generator_actions(
    const BasedAlgebra& alg, Index dim,
    const std::vector<std::pair<SparseVec, Matrix>>& generators) {
    std::vector<std::pair<SparseVec, Matrix>> words;
    words.emplace_back(alg.unit, Matrix::identity(dim));
    RrefBuilder span(alg.dim);
    span.insert(alg.unit);
    std::size_t frontier_begin = 0;
    while (span.rank() < alg.dim) {
        std::size_t frontier_end = words.size();
        if (frontier_begin == frontier_end)
            throw std::runtime_error("module_from_generator_actions: generators do not span");
        for (std::size_t w = frontier_begin; w < frontier_end; ++w)
            for (const auto& [gvec, gmat] : generators) {
                SparseVec v = alg.multiply(words[w].first, gvec);
                if (span.insert(v)) words.emplace_back(std::move(v), words[w].second * gmat);
                if (span.rank() == alg.dim) break;
            }
        frontier_begin = frontier_end;
    }
    std::vector<SparseVec> word_vecs;
    word_vecs.reserve(words.size());
    for (const auto& w : words) word_vecs.push_back(w.first);
    Matrix W = Matrix::from_columns(alg.dim, word_vecs);

    ModuleRep m;
    m.algebra = &alg;
    m.dim = dim;
    m.actions.reserve(alg.dim);
    for (Index i = 0; i < alg.dim; ++i) {
        auto x = solve(W, sv_unit(i));
        if (!x) throw std::logic_error("module_from_generator_actions: span solve failed");
        Matrix act(dim, dim);
        for (const auto& [w, c] : *x) act = act + words[w].second.scaled(c);
        m.actions.push_back(std::move(act));
    }
    return m;
}

/// Trivial 1-dimensional module of the double: alpha_i (x) h_j acts by the
/// unit coefficient at i times eps(e_j).
inline ModuleRep trivial_module_of_double(const DoubleData& dd) {
    const Index d = dd.hdim();
    std::vector<Scalar> values(dd.dim(), Scalar(0));
    for (Index i = 0; i < d; ++i) {
        Scalar u = sv_get(dd.hopf->alg.unit, i);
        if (is_zero(u)) continue;
        for (Index j = 0; j < d; ++j) values[i * d + j] = u * dd.hopf->counit[j];
    }
    return character_module(dd.alg, values);
}

/// The adjoint representation of H as a D(H)-module: k . h = k^(1) h S(k^(2))
/// and alpha . h = alpha(h^(1)) h^(2).
inline ModuleRep hopf_adjoint_module(const DoubleData& dd) {
    const HopfData& h = *dd.hopf;
    const Index d = h.dim();
    std::vector<std::pair<SparseVec, Matrix>> gens;
    for (Index j = 0; j < d; ++j) {
        Matrix act(d, d);
        for (Index col = 0; col < d; ++col) {
            SparseVec val;
            for (const auto& [code, c] : h.coproduct[j]) {
                Index p = code / d, q = code % d;
                SparseVec t = h.alg.multiply(h.alg.multiply(sv_unit(p), sv_unit(col)),
                                             h.antipode_of(sv_unit(q)));
                sv_axpy(val, c, t);
            }
            for (const auto& [r, c] : val) act.add_to(r, col, c);
        }
        gens.emplace_back(dd.embed_h(sv_unit(j)), std::move(act));
    }
    for (Index i = 0; i < d; ++i) {
        Matrix act(d, d);
        for (Index col = 0; col < d; ++col)
            for (const auto& [code, c] : h.coproduct[col])
                if (code / d == i) act.add_to(code % d, col, c);
        std::vector<Scalar> values(d, Scalar(0));
        values[i] = 1;
        gens.emplace_back(dd.embed_dual(values), std::move(act));
    }
    return module_from_generator_actions(dd.alg, d, gens);
}

// ---------------------------------------------------------------------------
// Induction and restriction along H -> D(H). D(H) is free of rank dim(H*) as
// a right H-module, so the induced module lives on H* (x) V with index
// (dual major, V minor).

inline ModuleRep induce(const DoubleData& dd, const ModuleRep& v) {
    const Index d = dd.hdim();
    if (v.algebra != &dd.hopf->alg)
        throw std::invalid_argument("induce: expected a module over the underlying Hopf algebra");
    std::vector<SparseVec> alpha_unit(d);  // alpha_p (x) 1_H as D(H) element
    for (Index p = 0; p < d; ++p) {
        SparseVec e;
        for (const auto& [k, ck] : dd.hopf->alg.unit) e.emplace_back(p * d + k, ck);
        sv_sort_combine(e);
        alpha_unit[p] = std::move(e);
    }
    std::vector<Matrix> v_act_t(d);
    for (Index r = 0; r < d; ++r) v_act_t[r] = v.actions[r].transpose();

    ModuleRep out;
    out.algebra = &dd.alg;
    out.dim = d * v.dim;
    out.actions.reserve(dd.alg.dim);
    for (Index g = 0; g < dd.alg.dim; ++g) {
        Matrix act(out.dim, out.dim);
        for (Index p = 0; p < d; ++p) {
            SparseVec prod = dd.alg.multiply(sv_unit(g), alpha_unit[p]);
            for (const auto& [code, c] : prod) {
                Index q = code / d, r = code % d;
                // alpha_q (x) rho_V(e_r): block (q, p) of the action
                for (Index vin = 0; vin < v.dim; ++vin)
                    for (const auto& [vout, cv] : v_act_t[r].row(vin))
                        act.add_to(q * v.dim + vout, p * v.dim + vin, c * cv);
            }
        }
        out.actions.push_back(std::move(act));
    }
    return out;
}

inline ModuleRep restrict_to_hopf(const DoubleData& dd, const ModuleRep& m) {
    if (m.algebra != &dd.alg) throw std::invalid_argument("restrict: expected a D(H)-module");
    ModuleRep out;
    out.algebra = &dd.hopf->alg;
    out.dim = m.dim;
    for (Index j = 0; j < dd.hdim(); ++j) out.actions.push_back(m.act(dd.embed_h(sv_unit(j))));
    return out;
}

/// Counit of induction -| restriction at M: induce(restrict(M)) -> M,
/// alpha_p (x) m -> (alpha_p (x) 1_H) . m.
inline Matrix adjunction_counit(const DoubleData& dd, const ModuleRep& m) {
    const Index d = dd.hdim();
    Matrix out(m.dim, d * m.dim);
    for (Index p = 0; p < d; ++p) {
        SparseVec e;
        for (const auto& [k, ck] : dd.hopf->alg.unit) e.emplace_back(p * d + k, ck);
        sv_sort_combine(e);
        Matrix mt = m.act(e).transpose();
        for (Index col = 0; col < m.dim; ++col)
            for (const auto& [r, c] : mt.row(col)) out.add_to(r, p * m.dim + col, c);
    }
    return out;
}

/// Unit of the adjunction at an H-module W: W -> restrict(induce(W)),
/// w -> sum_m eps(e_m) alpha_m (x) w. H-linear.
inline Matrix adjunction_unit(const DoubleData& dd, Index dimW) {
    const Index d = dd.hdim();
    Matrix out(d * dimW, dimW);
    for (Index m = 0; m < d; ++m) {
        if (is_zero(dd.hopf->counit[m])) continue;
        for (Index w = 0; w < dimW; ++w) out.add_to(m * dimW + w, w, dd.hopf->counit[m]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hom spaces of module maps, solved as the kernel of the stacked intertwiner
// constraints rho_N(g) F - F rho_M(g) = 0.

struct HomSpace {
    Index dimM = 0, dimN = 0;
    std::vector<Matrix> basis;
    std::vector<Index> marks;  // free columns: coords of F read off at marks

    Index dim() const { return basis.size(); }

    SparseVec coords_of(const Matrix& f) const {
        SparseVec coords;
        for (Index j = 0; j < marks.size(); ++j) {
            Index r = marks[j] / dimM, c = marks[j] % dimM;
            Scalar v = f.entry(r, c);
            if (!is_zero(v)) coords.emplace_back(j, std::move(v));
        }
        // verify the read-off (guards against maps outside the span)
        Matrix recon(dimN, dimM);
        for (const auto& [j, c] : coords) recon = recon + basis[j].scaled(c);
        if (!(recon == f)) throw std::logic_error("HomSpace::coords_of: map outside the span");
        return coords;
    }
};

inline HomSpace hom_space(const ModuleRep& m, const ModuleRep& n,
                          const std::vector<SparseVec>& generators) {
    if (m.algebra != n.algebra) throw std::invalid_argument("hom_space: different algebras");
    const Index nm = m.dim, nn = n.dim;
    RrefBuilder builder(nn * nm);
    for (const auto& g : generators) {
        Matrix gn = n.act(g);
        Matrix gm_t = m.act(g).transpose();
        for (Index r = 0; r < nn; ++r)
            for (Index c = 0; c < nm; ++c) {
                SparseVec row;
                for (const auto& [k, v] : gn.row(r)) row.emplace_back(k * nm + c, v);
                for (const auto& [k, v] : gm_t.row(c)) row.emplace_back(r * nm + k, -v);
                sv_sort_combine(row);
                if (!row.empty()) builder.insert(std::move(row));
            }
    }
    HomSpace hs;
    hs.dimM = nm;
    hs.dimN = nn;
    for (auto& k : builder.kernel_basis()) {
        Matrix f(nn, nm);
        for (const auto& [idx, c] : k) f.add_to(idx / nm, idx % nm, c);
        hs.basis.push_back(std::move(f));
    }
    for (Index col = 0; col < nn * nm; ++col)
        if (!builder.has_pivot(col)) hs.marks.push_back(col);
    return hs;
}

inline HomSpace hom_space(const ModuleRep& m, const ModuleRep& n) {
    std::vector<SparseVec> gens;
    for (Index i = 0; i < m.algebra->dim; ++i) gens.push_back(sv_unit(i));
    return hom_space(m, n, gens);
}

inline std::vector<Matrix> hom_basis(const ModuleRep& m, const ModuleRep& n) {
    return hom_space(m, n).basis;
}

// ---------------------------------------------------------------------------
// Adjoint algebra of a comodule algebra: maps phi: H -> A with
// a phi(h) = phi(a_(1) h) a_(0), carried inside Hom_k(H,A) with ambient index
// (h major, a minor). D(H) acts by (k.phi)(h) = phi(hk) and
// (alpha.phi)(h) = alpha(S(h^(1)) phi(h^(2))_(1) h^(3)) phi(h^(2))_(0).

struct AdjointAlgebra {
    const DoubleData* dd = nullptr;
    ModuleRep rep;       // over D(H)
    Matrix inclusion;    // ambient (dimH*dimA) x dim
    std::vector<Index> marks;
    BasedAlgebra carrier_alg;  // convolution product in carrier coordinates
    Index dimA = 0;

    Index dim() const { return rep.dim; }

    SparseVec ambient_of(const SparseVec& coords) const {
        SparseVec out;
        for (const auto& [j, c] : coords) sv_axpy(out, c, inclusion.column(j));
        return out;
    }

    SparseVec carrier_coords(const SparseVec& ambient) const {
        SparseVec coords;
        for (Index j = 0; j < marks.size(); ++j) {
            Scalar v = sv_get(ambient, marks[j]);
            if (!is_zero(v)) coords.emplace_back(j, std::move(v));
        }
        SparseVec recon = ambient_of(coords);
        if (!sv_equal(recon, ambient))
            throw std::logic_error("adjoint algebra: vector outside the carrier");
        return coords;
    }
};

namespace detail {

/// Ambient matrix of (e_j . phi)(e_h) = phi(e_h e_j) on Hom_k(H,A).
inline Matrix adjoint_h_action(const ComodData& ca, Index j) {
    const Index dH = ca.dimH(), dA = ca.dimA();
    Matrix act(dH * dA, dH * dA);
    for (Index hcur = 0; hcur < dH; ++hcur)
        for (const auto& [m, c] : ca.hopf->alg.mul_basis(hcur, j))
            for (Index a = 0; a < dA; ++a) act.add_to(hcur * dA + a, m * dA + a, c);
    return act;
}

/// Ambient matrix of the dual-basis action alpha_i on Hom_k(H,A).
inline Matrix adjoint_dual_action(const ComodData& ca, Index i,
                                  const std::vector<SparseVec>& delta2,
                                  const std::vector<SparseVec>& s_col) {
    const Index dH = ca.dimH(), dA = ca.dimA();
    const BasedAlgebra& H = ca.hopf->alg;
    Matrix act(dH * dA, dH * dA);
    for (Index h = 0; h < dH; ++h)
        for (const auto& [code3, c] : delta2[h]) {
            Index t3 = code3 % dH;
            Index t2 = (code3 / dH) % dH;
            Index t1 = code3 / (dH * dH);
            for (Index a = 0; a < dA; ++a)
                for (const auto& [codeHA, c2] : ca.coaction[a]) {
                    Index hp = codeHA / dA, a0 = codeHA % dA;
                    SparseVec u = H.multiply(H.multiply(s_col[t1], sv_unit(hp)), sv_unit(t3));
                    Scalar gamma = sv_get(u, i);
                    if (is_zero(gamma)) continue;
                    act.add_to(h * dA + a0, t2 * dA + a, c * c2 * gamma);
                }
        }
    return act;
}

}  // namespace detail

inline AdjointAlgebra adjoint_algebra(const DoubleData& dd, const ComodData& ca) {
    if (ca.hopf != dd.hopf) throw std::invalid_argument("adjoint_algebra: double/comodule mismatch");
    const Index dH = ca.dimH(), dA = ca.dimA();
    const BasedAlgebra& H = ca.hopf->alg;
    const BasedAlgebra& A = ca.alg;

    // carrier: solutions of e_b phi(e_k) - phi((e_b)_(1) e_k) (e_b)_(0) = 0
    RrefBuilder builder(dH * dA);
    for (Index b = 0; b < dA; ++b)
        for (Index k = 0; k < dH; ++k) {
            std::vector<SparseVec> rows(dA);  // indexed by output coordinate
            for (Index ap = 0; ap < dA; ++ap)
                for (const auto& [t, c] : A.mul_basis(b, ap))
                    rows[t].emplace_back(k * dA + ap, c);
            for (const auto& [codeHA, c] : ca.coaction[b]) {
                Index h1 = codeHA / dA, a0 = codeHA % dA;
                for (const auto& [mm, cm] : H.mul_basis(h1, k))
                    for (Index ap = 0; ap < dA; ++ap)
                        for (const auto& [t, c2] : A.mul_basis(ap, a0))
                            rows[t].emplace_back(mm * dA + ap, -c * cm * c2);
            }
            for (auto& r : rows) {
                sv_sort_combine(r);
                if (!r.empty()) builder.insert(std::move(r));
            }
        }

    AdjointAlgebra adj;
    adj.dd = &dd;
    adj.dimA = dA;
    std::vector<SparseVec> carrier = builder.kernel_basis();
    adj.inclusion = Matrix::from_columns(dH * dA, carrier);
    for (Index col = 0; col < dH * dA; ++col)
        if (!builder.has_pivot(col)) adj.marks.push_back(col);

    const Index dim = carrier.size();
    auto delta2 = coproduct_squared(*ca.hopf);
    std::vector<SparseVec> s_col(dH);
    for (Index a = 0; a < dH; ++a) s_col[a] = ca.hopf->antipode_of(sv_unit(a));

    std::vector<Matrix> h_act(dH), dual_act(dH);
    for (Index j = 0; j < dH; ++j) h_act[j] = detail::adjoint_h_action(ca, j);
    for (Index i = 0; i < dH; ++i) dual_act[i] = detail::adjoint_dual_action(ca, i, delta2, s_col);

    adj.rep.algebra = &dd.alg;
    adj.rep.dim = dim;
    adj.rep.actions.reserve(dd.alg.dim);
    for (Index i = 0; i < dH; ++i)
        for (Index j = 0; j < dH; ++j) {
            Matrix ambient = dual_act[i] * h_act[j];
            Matrix act(dim, dim);
            for (Index v = 0; v < dim; ++v) {
                SparseVec w = ambient.apply(carrier[v]);
                for (const auto& [r, c] : adj.carrier_coords(w)) act.add_to(r, v, c);
            }
            adj.rep.actions.push_back(std::move(act));
        }

    // convolution product (phi psi)(h) = phi(h^(1)) psi(h^(2))
    adj.carrier_alg.dim = dim;
    for (Index j = 0; j < dim; ++j) adj.carrier_alg.basis_labels.push_back("phi" + std::to_string(j));
    adj.carrier_alg.mul.assign(dim, std::vector<SparseVec>(dim));
    for (Index p = 0; p < dim; ++p)
        for (Index q = 0; q < dim; ++q) {
            SparseVec ambient;
            for (Index h = 0; h < dH; ++h)
                for (const auto& [code, c] : ca.hopf->coproduct[h]) {
                    Index x = code / dH, y = code % dH;
                    SparseVec valP, valQ;
                    for (Index a = 0; a < dA; ++a) {
                        Scalar vp = sv_get(carrier[p], x * dA + a);
                        if (!is_zero(vp)) valP.emplace_back(a, std::move(vp));
                        Scalar vq = sv_get(carrier[q], y * dA + a);
                        if (!is_zero(vq)) valQ.emplace_back(a, std::move(vq));
                    }
                    SparseVec prod = A.multiply(valP, valQ);
                    for (const auto& [a, cv] : prod) ambient.emplace_back(h * dA + a, c * cv);
                }
            sv_sort_combine(ambient);
            adj.carrier_alg.mul[p][q] = adj.carrier_coords(ambient);
        }
    {
        SparseVec unit_ambient;
        for (Index h = 0; h < dH; ++h) {
            if (is_zero(ca.hopf->counit[h])) continue;
            for (const auto& [a, c] : A.unit) unit_ambient.emplace_back(h * dA + a, ca.hopf->counit[h] * c);
        }
        sv_sort_combine(unit_ambient);
        adj.carrier_alg.unit = adj.carrier_coords(unit_ambient);
    }
    return adj;
}

/// Evaluation phi -> phi(hElem) as a (dimA x dim) matrix in carrier coords.
inline Matrix adjoint_evaluation(const AdjointAlgebra& adj, const SparseVec& hElem) {
    const Index dA = adj.dimA;
    Matrix out(dA, adj.dim());
    Matrix inc_t = adj.inclusion.transpose();
    for (Index j = 0; j < adj.dim(); ++j)
        for (const auto& [amb, v] : inc_t.row(j)) {
            Index h = amb / dA, a = amb % dA;
            Scalar c = sv_get(hElem, h);
            if (!is_zero(c)) out.add_to(a, j, c * v);
        }
    return out;
}

/// Simultaneous eigenspace dimensions for a pair of commuting involutions.
inline std::map<std::pair<int, int>, Index> gf_weight_multiplicities(const ModuleRep& rep,
                                                                     const SparseVec& gElem,
                                                                     const SparseVec& fElem) {
    std::map<std::pair<int, int>, Index> out;
    Matrix g = rep.act(gElem), f = rep.act(fElem);
    Matrix id = Matrix::identity(rep.dim);
    for (int sg : {+1, -1})
        for (int sf : {+1, -1}) {
            Matrix a = g - id.scaled(Scalar(sg));
            Matrix b = f - id.scaled(Scalar(sf));
            out[{sg, sf}] = kernel(Matrix::vstack(a, b)).size();
        }
    return out;
}

// ---------------------------------------------------------------------------
// Internal End of an A-module M: the algebra Hom_A(H |> M, M) with H-action
// (k.f)(h (x) m) = f(hk (x) m) and product (fg)(h (x) m) = f(h^(1) (x)
// g(h^(2) (x) m)). Ambient index ((h, mIn), mOut).

struct InternalEnd {
    const ComodData* comod = nullptr;
    Index dimM = 0;
    BasedAlgebra alg;  // product in carrier coordinates
    Matrix inclusion;  // ambient (dH*dimM*dimM) x dim
    std::vector<Index> marks;
    std::vector<Matrix> h_actions;  // per H basis element, carrier coords

    Index dim() const { return alg.dim; }

    SparseVec ambient_of(const SparseVec& coords) const {
        SparseVec out;
        for (const auto& [j, c] : coords) sv_axpy(out, c, inclusion.column(j));
        return out;
    }

    SparseVec carrier_coords(const SparseVec& ambient) const {
        SparseVec coords;
        for (Index j = 0; j < marks.size(); ++j) {
            Scalar v = sv_get(ambient, marks[j]);
            if (!is_zero(v)) coords.emplace_back(j, std::move(v));
        }
        SparseVec recon = ambient_of(coords);
        if (!sv_equal(recon, ambient))
            throw std::logic_error("internal end: vector outside the carrier");
        return coords;
    }
};

inline InternalEnd internal_end(const ComodData& ca, const ModuleRep& m) {
    if (m.algebra != &ca.alg) throw std::invalid_argument("internal_end: expected an A-module");
    const Index dH = ca.dimH(), dM = m.dim, dA = ca.dimA();
    const BasedAlgebra& H = ca.hopf->alg;
    const Index ambient_dim = dH * dM * dM;

    std::vector<Matrix> m_act_t(dA);
    for (Index a = 0; a < dA; ++a) m_act_t[a] = m.actions[a].transpose();

    // A-linearity: f(b . (h (x) mIn)) = b . f(h (x) mIn)
    RrefBuilder builder(ambient_dim);
    for (Index b = 0; b < dA; ++b)
        for (Index h = 0; h < dH; ++h)
            for (Index mi = 0; mi < dM; ++mi) {
                std::vector<SparseVec> rows(dM);
                // lhs: coaction[b] = sum (h1, a0): f((e_h1 e_h) (x) rho(e_a0) mIn)
                for (const auto& [codeHA, c] : ca.coaction[b]) {
                    Index h1 = codeHA / dA, a0 = codeHA % dA;
                    for (const auto& [h2, cm] : H.mul_basis(h1, h))
                        for (const auto& [m2, c2] : m_act_t[a0].row(mi))
                            for (Index mo = 0; mo < dM; ++mo)
                                rows[mo].emplace_back((h2 * dM + m2) * dM + mo, c * cm * c2);
                }
                // rhs: rho(e_b) f(h (x) mIn)
                for (Index mid = 0; mid < dM; ++mid)
                    for (const auto& [mo2, c3] : m.actions[b].column(mid))
                        rows[mo2].emplace_back((h * dM + mi) * dM + mid, -c3);
                for (auto& r : rows) {
                    sv_sort_combine(r);
                    if (!r.empty()) builder.insert(std::move(r));
                }
            }

    InternalEnd ie;
    ie.comod = &ca;
    ie.dimM = dM;
    std::vector<SparseVec> carrier = builder.kernel_basis();
    ie.inclusion = Matrix::from_columns(ambient_dim, carrier);
    for (Index col = 0; col < ambient_dim; ++col)
        if (!builder.has_pivot(col)) ie.marks.push_back(col);
    const Index dim = carrier.size();

    // H-action (k.f)(h (x) m) = f(hk (x) m)
    ie.h_actions.reserve(dH);
    for (Index j = 0; j < dH; ++j) {
        Matrix ambient(ambient_dim, ambient_dim);
        for (Index h = 0; h < dH; ++h)
            for (const auto& [m2, c] : H.mul_basis(h, j))
                for (Index mi = 0; mi < dM; ++mi)
                    for (Index mo = 0; mo < dM; ++mo)
                        ambient.add_to((h * dM + mi) * dM + mo, (m2 * dM + mi) * dM + mo, c);
        Matrix act(dim, dim);
        for (Index v = 0; v < dim; ++v) {
            SparseVec w = ambient.apply(carrier[v]);
            for (const auto& [r, c] : ie.carrier_coords(w)) act.add_to(r, v, c);
        }
        ie.h_actions.push_back(std::move(act));
    }

    // product and unit
    ie.alg.dim = dim;
    for (Index j = 0; j < dim; ++j) ie.alg.basis_labels.push_back("f" + std::to_string(j));
    ie.alg.mul.assign(dim, std::vector<SparseVec>(dim));
    for (Index p = 0; p < dim; ++p)
        for (Index q = 0; q < dim; ++q) {
            SparseVec ambient;
            for (Index h = 0; h < dH; ++h)
                for (const auto& [code, c] : ca.hopf->coproduct[h]) {
                    Index x = code / dH, y = code % dH;
                    for (Index mi = 0; mi < dM; ++mi)
                        for (Index mid = 0; mid < dM; ++mid) {
                            Scalar g_val = sv_get(carrier[q], (y * dM + mi) * dM + mid);
                            if (is_zero(g_val)) continue;
                            for (Index mo = 0; mo < dM; ++mo) {
                                Scalar f_val = sv_get(carrier[p], (x * dM + mid) * dM + mo);
                                if (is_zero(f_val)) continue;
                                ambient.emplace_back((h * dM + mi) * dM + mo, c * g_val * f_val);
                            }
                        }
                }
            sv_sort_combine(ambient);
            ie.alg.mul[p][q] = ie.carrier_coords(ambient);
        }
    {
        SparseVec unit_ambient;
        for (Index h = 0; h < dH; ++h) {
            if (is_zero(ca.hopf->counit[h])) continue;
            for (Index mi = 0; mi < dM; ++mi)
                unit_ambient.emplace_back((h * dM + mi) * dM + mi, ca.hopf->counit[h]);
        }
        sv_sort_combine(unit_ambient);
        ie.alg.unit = ie.carrier_coords(unit_ambient);
    }
    return ie;
}

/// Dinatural map pi_M: adjoint algebra -> internal End(M), phi -> [h (x) m ->
/// phi(h) . m], in carrier coordinates on both sides.
inline Matrix dinatural_map(const AdjointAlgebra& adj, const InternalEnd& ie,
                            const ModuleRep& m) {
    const Index dA = adj.dimA, dM = m.dim;
    Matrix out(ie.dim(), adj.dim());
    for (Index j = 0; j < adj.dim(); ++j) {
        SparseVec phi = adj.inclusion.column(j);
        SparseVec ambient;
        for (const auto& [code, v] : phi) {
            Index h = code / dA, a = code % dA;
            for (Index mi = 0; mi < dM; ++mi)
                for (const auto& [mo, c] : m.actions[a].column(mi))
                    ambient.emplace_back((h * dM + mi) * dM + mo, v * c);
        }
        sv_sort_combine(ambient);
        for (const auto& [r, c] : ie.carrier_coords(ambient)) out.add_to(r, j, c);
    }
    return out;
}

/// Half-braiding b_X: carrier (x) X -> X (x) carrier of the adjoint algebra
/// against an H-module X, over the coordinate dual basis.
inline Matrix half_braiding(const AdjointAlgebra& adj, const ComodData& ca, const ModuleRep& x) {
    const Index dH = ca.dimH(), dA = ca.dimA(), dX = x.dim, dC = adj.dim();
    const BasedAlgebra& H = ca.hopf->alg;
    auto delta2 = coproduct_squared(*ca.hopf);
    std::vector<SparseVec> s_col(dH);
    for (Index a = 0; a < dH; ++a) s_col[a] = ca.hopf->antipode_of(sv_unit(a));

    Matrix out(dX * dC, dC * dX);
    for (Index cj = 0; cj < dC; ++cj) {
        SparseVec phi = adj.inclusion.column(cj);
        for (Index xv = 0; xv < dX; ++xv) {
            // accumulate per output X index an ambient Hom(H,A) vector
            std::map<Index, SparseVec> blocks;
            for (Index j = 0; j < dH; ++j)
                for (const auto& [code3, c] : delta2[j]) {
                    Index t3 = code3 % dH;
                    Index t2 = (code3 / dH) % dH;
                    Index t1 = code3 / (dH * dH);
                    for (Index a = 0; a < dA; ++a) {
                        Scalar pv = sv_get(phi, t2 * dA + a);
                        if (is_zero(pv)) continue;
                        for (const auto& [codeHA, c2] : ca.coaction[a]) {
                            Index hp = codeHA / dA, a0 = codeHA % dA;
                            SparseVec u = H.multiply(H.multiply(s_col[t1], sv_unit(hp)), sv_unit(t3));
                            if (u.empty()) continue;
                            SparseVec xvec = x.act(u).column(xv);
                            for (const auto& [xo, cx] : xvec)
                                blocks[xo].emplace_back(j * dA + a0, c * pv * c2 * cx);
                        }
                    }
                }
            for (auto& [xo, ambient] : blocks) {
                sv_sort_combine(ambient);
                if (ambient.empty()) continue;
                for (const auto& [cr, cc] : adj.carrier_coords(ambient))
                    out.add_to(xo * dC + cr, cj * dX + xv, cc);
            }
        }
    }
    return out;
}

}  // namespace hopfdeform
