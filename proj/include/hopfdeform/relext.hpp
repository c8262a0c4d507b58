#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hopfdeform/double.hpp"
#include "hopfdeform/zoo.hpp"

namespace hopfdeform {

// Augmented chain of D(H)-modules P_N -> ... -> P_0 -> V_0 used for relative
// Ext. Constructors may attach witnesses (a section of the counit per term, a
// contracting homotopy per degree); verification checks witnesses exactly and
// falls back to linear solves when they are absent.
struct Resolution {
    const DoubleData* dd = nullptr;
    ModuleRep target;                   // V_0
    std::vector<ModuleRep> terms;       // P_0 .. P_N
    std::vector<Matrix> differentials;  // differentials[n] = d_{n+1}: P_{n+1} -> P_n
    Matrix augmentation;                // P_0 -> V_0
    std::vector<std::optional<Matrix>> proj_sections;  // per term: P_n -> FU(P_n)
    std::vector<std::optional<Matrix>> homotopies;     // [0]: V -> P_0, [n+1]: P_n -> P_{n+1}

    int depth() const { return int(terms.size()) - 1; }
};

inline Index bar_coord_guard() {
    if (const char* env = std::getenv("HOPFDEFORM_MAX_COORDS")) {
        long v = std::atol(env);
        if (v > 0) return Index(v);
    }
    return 100000;
}

/// Bar resolution of the resolvent pair D(H)-mod <-> H-mod: B_n =
/// (FU)^{n+1}(V) with the alternating sum of counit contractions as
/// differential. Witnesses come from the unit of the adjunction.
inline Resolution bar_resolution(const DoubleData& dd, const ModuleRep& v, int depth) {
    if (depth < 1) throw std::invalid_argument("bar_resolution: depth must be >= 1");
    const Index d = dd.hdim();
    Index top = v.dim;
    for (int i = 0; i <= depth; ++i) {
        top *= d;
        if (top > bar_coord_guard())
            throw std::invalid_argument(
                "bar_resolution: depth exceeds the coordinate guard (set HOPFDEFORM_MAX_COORDS "
                "to raise it)");
    }

    Resolution r;
    r.dd = &dd;
    r.target = v;
    r.terms.reserve(std::size_t(depth) + 1);
    std::vector<Matrix> counits;  // counit of FU at B_{n-1} (and at V for n=0)
    ModuleRep cur = v;
    for (int n = 0; n <= depth; ++n) {
        counits.push_back(adjunction_counit(dd, cur));
        cur = induce(dd, restrict_to_hopf(dd, cur));
        r.terms.push_back(cur);
    }
    // face i on B_n = (FU)^{i} applied to the counit landing in (FU)^{n-i}...
    // in coordinates: identity of size d^i tensored with the counit matrix of
    // B_{n-1-i}'s construction stage.
    auto kron_id = [&](Index copies, const Matrix& m) {
        Matrix out(copies * m.rows(), copies * m.cols());
        for (Index b = 0; b < copies; ++b)
            for (Index row = 0; row < m.rows(); ++row)
                for (const auto& [col, val] : m.row(row))
                    out.add_to(b * m.rows() + row, b * m.cols() + col, val);
        return out;
    };
    r.augmentation = counits[0];  // FU(V) -> V
    for (int n = 1; n <= depth; ++n) {
        Index copies = 1;
        Matrix dn(r.terms[std::size_t(n) - 1].dim, r.terms[std::size_t(n)].dim);
        for (int i = 0; i <= n; ++i) {
            // face i: id^{(x) i} (x) counit at stage n - i
            Matrix face = kron_id(copies, counits[std::size_t(n - i)]);
            dn = (i % 2 == 0) ? dn + face : dn - face;
            copies *= d;
        }
        r.differentials.push_back(std::move(dn));
    }

    // witnesses: sections F(eta) per term, contracting homotopy eta per degree
    for (int n = 0; n <= depth; ++n) {
        Index w = (n == 0) ? v.dim : r.terms[std::size_t(n) - 1].dim;
        r.proj_sections.push_back(kron_id(d, adjunction_unit(dd, w)));
        // kron_id(d, eta_W): FW -> FUFW equals id_{H*} (x) eta_W
    }
    r.homotopies.push_back(adjunction_unit(dd, v.dim));  // V -> B_0
    for (int n = 0; n < depth; ++n)
        r.homotopies.push_back(adjunction_unit(dd, r.terms[std::size_t(n)].dim));
    return r;
}

/// The 2-periodic relatively projective resolution of the trivial module over
/// the Sweedler double, built from the modules C_plus and C_minus.
inline Resolution sweedler_resolution(int depth) {
    if (depth < 1) throw std::invalid_argument("sweedler_resolution: depth must be >= 1");
    const DoubleData& dd = zoo::sweedler_double();
    Resolution r;
    r.dd = &dd;
    r.target = zoo::trivial();
    ModuleRep cp = zoo::c_plus(), cm = zoo::c_minus();
    for (int n = 0; n <= depth; ++n) r.terms.push_back(n % 2 == 0 ? cp : cm);
    // d odd: C_- -> C_+, t- -> b+; d even: C_+ -> C_-, t+ -> b-
    Matrix d_odd(2, 2), d_even(2, 2);
    d_odd.set(1, 0, Scalar(1));
    d_even.set(1, 0, Scalar(1));
    for (int n = 1; n <= depth; ++n) r.differentials.push_back(n % 2 == 1 ? d_odd : d_even);
    Matrix aug(1, 2);
    aug.set(0, 0, Scalar(1));  // t+ -> 1
    r.augmentation = aug;
    r.proj_sections.assign(r.terms.size(), std::nullopt);
    r.homotopies.assign(r.terms.size() + 1, std::nullopt);
    return r;
}

struct ResolutionReport {
    bool is_complex = false;
    bool is_exact = false;
    bool is_allowable = false;
    bool terms_rel_projective = false;
    std::vector<std::string> notes;

    bool pass() const { return is_complex && is_exact && is_allowable && terms_rel_projective; }
};

namespace detail {

inline bool is_module_map(const ModuleRep& from, const ModuleRep& to, const Matrix& f,
                          const std::vector<SparseVec>& gens) {
    for (const auto& g : gens)
        if (!(to.act(g) * f == f * from.act(g))) return false;
    return true;
}

/// Solves for f: from -> to with g-linearity plus extra affine conditions
/// lhs * f = rhs. Returns any solution (RREF-canonical).
inline std::optional<Matrix> solve_equivariant(const ModuleRep& from, const ModuleRep& to,
                                               const std::vector<SparseVec>& gens,
                                               const Matrix& lhs, const Matrix& rhs) {
    const Index nm = from.dim, nn = to.dim;
    const Index unknowns = nn * nm;
    std::vector<SparseVec> rows;
    SparseVec rhs_col;
    Index row_count = 0;
    auto push_row = [&](SparseVec row, Scalar val) {
        rows.push_back(std::move(row));
        if (!is_zero(val)) rhs_col.emplace_back(row_count, std::move(val));
        ++row_count;
    };
    for (const auto& g : gens) {
        Matrix gn = to.act(g);
        Matrix gm_t = from.act(g).transpose();
        for (Index r = 0; r < nn; ++r)
            for (Index c = 0; c < nm; ++c) {
                SparseVec row;
                for (const auto& [k, vv] : gn.row(r)) row.emplace_back(k * nm + c, vv);
                for (const auto& [k, vv] : gm_t.row(c)) row.emplace_back(r * nm + k, -vv);
                sv_sort_combine(row);
                push_row(std::move(row), Scalar(0));
            }
    }
    // lhs has shape (X x nn); equation lhs * f = rhs with rhs (X x nm)
    for (Index r = 0; r < lhs.rows(); ++r)
        for (Index c = 0; c < nm; ++c) {
            SparseVec row;
            for (const auto& [k, vv] : lhs.row(r)) row.emplace_back(k * nm + c, vv);
            sv_sort_combine(row);
            push_row(std::move(row), rhs.entry(r, c));
        }
    Matrix system(row_count, unknowns);
    for (Index r = 0; r < row_count; ++r) system.set_row(r, std::move(rows[r]));
    auto sol = solve(system, rhs_col);
    if (!sol) return std::nullopt;
    Matrix f(nn, nm);
    for (const auto& [idx, c] : *sol) f.add_to(idx / nm, idx % nm, c);
    return f;
}

}  // namespace detail

inline ResolutionReport verify_resolution(const Resolution& r) {
    ResolutionReport rep;
    const DoubleData& dd = *r.dd;
    const int depth = r.depth();
    std::vector<SparseVec> dgens = dd.generating_set();
    std::vector<SparseVec> hgens;
    for (Index j = 0; j < dd.hdim(); ++j) hgens.push_back(sv_unit(j));

    // 1. complex: d o d = 0, aug o d_1 = 0, everything D(H)-linear
    rep.is_complex = true;
    if (!r.differentials.empty() && !(r.augmentation * r.differentials[0]).is_zero()) {
        rep.is_complex = false;
        rep.notes.push_back("augmentation o d1 != 0");
    }
    for (std::size_t n = 0; n + 1 < r.differentials.size(); ++n)
        if (!(r.differentials[n] * r.differentials[n + 1]).is_zero()) {
            rep.is_complex = false;
            rep.notes.push_back("d" + std::to_string(n + 1) + " o d" + std::to_string(n + 2) +
                                " != 0");
        }
    if (!detail::is_module_map(r.terms[0], r.target, r.augmentation, dgens)) {
        rep.is_complex = false;
        rep.notes.push_back("augmentation not D(H)-linear");
    }
    for (std::size_t n = 0; n < r.differentials.size(); ++n)
        if (!detail::is_module_map(r.terms[n + 1], r.terms[n], r.differentials[n], dgens)) {
            rep.is_complex = false;
            rep.notes.push_back("d" + std::to_string(n + 1) + " not D(H)-linear");
        }

    // 2. exactness of the augmented complex in the checkable range
    rep.is_exact = true;
    if (rank(r.augmentation) != r.target.dim) {
        rep.is_exact = false;
        rep.notes.push_back("augmentation not surjective");
    }
    for (int n = 0; n < depth; ++n) {
        const Matrix& out = (n == 0) ? r.augmentation : r.differentials[std::size_t(n) - 1];
        Index ker_dim = r.terms[std::size_t(n)].dim - rank(out);
        if (rank(r.differentials[std::size_t(n)]) != ker_dim) {
            rep.is_exact = false;
            rep.notes.push_back("not exact at term " + std::to_string(n));
        }
    }

    // 3. allowability: an H-linear contracting homotopy, degree by degree
    rep.is_allowable = rep.is_complex && rep.is_exact;
    if (rep.is_allowable) {
        ModuleRep target_h = restrict_to_hopf(dd, r.target);
        std::vector<ModuleRep> terms_h;
        for (const auto& t : r.terms) terms_h.push_back(restrict_to_hopf(dd, t));
        std::vector<Matrix> s;  // s[-1], s[0], ...
        for (int n = -1; n < depth; ++n) {
            const ModuleRep& from = (n < 0) ? target_h : terms_h[std::size_t(n)];
            const ModuleRep& to = terms_h[std::size_t(n) + 1];
            const Matrix& down = (n < 0) ? r.augmentation
                                         : (n == 0 ? r.augmentation : r.differentials[std::size_t(n) - 1]);
            Matrix lhs = (n < 0) ? r.augmentation : r.differentials[std::size_t(n)];
            Matrix rhs = Matrix::identity(from.dim);
            if (n >= 0) rhs = rhs - s.back() * down;
            std::optional<Matrix> sn;
            if (std::size_t(n + 1) < r.homotopies.size() && r.homotopies[std::size_t(n + 1)]) {
                const Matrix& w = *r.homotopies[std::size_t(n + 1)];
                if (detail::is_module_map(from, to, w, hgens) && lhs * w == rhs) sn = w;
            }
            if (!sn) sn = detail::solve_equivariant(from, to, hgens, lhs, rhs);
            if (!sn) {
                rep.is_allowable = false;
                rep.notes.push_back("no H-linear homotopy at degree " + std::to_string(n));
                break;
            }
            s.push_back(std::move(*sn));
        }
    }

    // 4. relative projectivity: the counit onto each term splits
    rep.terms_rel_projective = true;
    for (std::size_t n = 0; n < r.terms.size(); ++n) {
        const ModuleRep& p = r.terms[n];
        ModuleRep fup = induce(dd, restrict_to_hopf(dd, p));
        Matrix counit = adjunction_counit(dd, p);
        std::optional<Matrix> section;
        if (n < r.proj_sections.size() && r.proj_sections[n]) {
            const Matrix& w = *r.proj_sections[n];
            if (detail::is_module_map(p, fup, w, dgens) && counit * w == Matrix::identity(p.dim))
                section = w;
        }
        if (!section)
            section = detail::solve_equivariant(p, fup, dgens, counit, Matrix::identity(p.dim));
        if (!section) {
            rep.terms_rel_projective = false;
            rep.notes.push_back("no section of the counit at term " + std::to_string(n));
        }
    }
    return rep;
}

struct RelExtResult {
    std::vector<Index> dims;                       // degrees 0..max_degree
    std::vector<std::vector<Matrix>> cocycles;     // representative maps P_n -> W
};

/// Relative Ext via the Hom complex Hom_{D(H)}(P_n, W) with pulled-back
/// differentials.
inline RelExtResult relative_ext(const Resolution& r, const ModuleRep& w, int max_degree) {
    if (max_degree + 1 > r.depth())
        throw std::invalid_argument("relative_ext: resolution too shallow for the requested degree");
    const DoubleData& dd = *r.dd;
    std::vector<SparseVec> dgens = dd.generating_set();

    std::vector<HomSpace> hom;
    for (int n = 0; n <= max_degree + 1; ++n)
        hom.push_back(hom_space(r.terms[std::size_t(n)], w, dgens));

    // pullback matrices: Hom(P_n, W) -> Hom(P_{n+1}, W), f -> f o d_{n+1}
    std::vector<Matrix> pull;
    for (int n = 0; n <= max_degree; ++n) {
        Matrix m(hom[std::size_t(n) + 1].dim(), hom[std::size_t(n)].dim());
        for (Index j = 0; j < hom[std::size_t(n)].dim(); ++j) {
            Matrix img = hom[std::size_t(n)].basis[j] * r.differentials[std::size_t(n)];
            for (const auto& [rr, c] : hom[std::size_t(n) + 1].coords_of(img)) m.add_to(rr, j, c);
        }
        pull.push_back(std::move(m));
    }

    RelExtResult res;
    for (int n = 0; n <= max_degree; ++n) {
        Matrix d_in = (n == 0) ? Matrix(hom[0].dim(), 0) : pull[std::size_t(n) - 1];
        SubquotientReport sq = subquotient_dim(d_in, pull[std::size_t(n)]);
        res.dims.push_back(sq.dim);
        std::vector<Matrix> reps;
        for (const auto& k : sq.representatives) {
            Matrix f(w.dim, r.terms[std::size_t(n)].dim);
            for (const auto& [j, c] : k) f = f + hom[std::size_t(n)].basis[j].scaled(c);
            reps.push_back(std::move(f));
        }
        res.cocycles.push_back(std::move(reps));
    }
    return res;
}

}  // namespace hopfdeform
