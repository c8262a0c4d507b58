// Acceptance suite: one pass/fail line per criterion, exact rational checks
// throughout, nonzero exit on any failure.

#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hopfdeform/deform.hpp"
#include "hopfdeform/relext.hpp"

using namespace hopfdeform;

namespace {

int failures = 0;

void check(const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
}

std::mt19937 rng(518907u);

Scalar random_rational() {
    std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
    Scalar s(num(rng), den(rng));
    s.canonicalize();
    return s;
}

Index sw_idx(const char* label) { return zoo::sweedler().alg.label_index(label); }

std::vector<Index> dims_of(const ComodData& ca, int maxd) {
    DeformationComplex cx(ca);
    return cx.cohomology_dims(maxd);
}

/// x (x) xg (x) a0 = -(x (x) gx (x) a0) in monomial coordinates.
TensorElement x_xg_cocycle(const ComodData& ca, Index a0) {
    TensorElement t{2, {}};
    t.coords.emplace_back((sw_idx("x") * 4 + sw_idx("gx")) * ca.dimA() + a0, Scalar(-1));
    return t;
}

/// x (x) gx (x) tail.
TensorElement x_gx_cocycle(const ComodData& ca, Index tail) {
    TensorElement t{2, {}};
    t.coords.emplace_back((sw_idx("x") * 4 + sw_idx("gx")) * ca.dimA() + tail, Scalar(1));
    return t;
}

/// The reported degree-2 classes span the same space as the listed cocycles
/// modulo coboundaries, checked by exact ranks of stacked matrices.
bool cocycle_basis_matches(const ComodData& ca, const std::vector<TensorElement>& listed) {
    DeformationComplex cx(ca);
    CohomologyResult h2 = cx.cohomology(2);
    if (h2.dim != listed.size()) return false;
    const ComplexSlice& s2 = cx.slice(2);
    for (const auto& l : listed) {
        if (!differential(ca, l).coords.empty()) return false;
        try {
            s2.coords_of(l.coords);  // membership in the cochain space
        } catch (const std::logic_error&) {
            return false;
        }
    }
    Matrix image = cx.slice_differential(1);
    const Index ambient = cochain_ambient_dim(ca, 2);
    auto stack_rank = [&](bool with_reps, bool with_listed) {
        RrefBuilder b(ambient);
        Matrix image_t = image.transpose();
        for (Index r = 0; r < image_t.rows(); ++r) b.insert(image_t.row(r));
        if (with_reps)
            for (const auto& rep : h2.representatives) b.insert(rep.coords);
        if (with_listed)
            for (const auto& l : listed) b.insert(l.coords);
        return b.rank();
    };
    Index base = stack_rank(false, false);
    return stack_rank(true, false) == base + h2.dim && stack_rank(false, true) == base + h2.dim &&
           stack_rank(true, true) == base + h2.dim;
}

struct DswGens {
    SparseVec g, x, f, y;
};

DswGens dsw_gens() {
    const DoubleData& dd = zoo::sweedler_double();
    return {dd.embed_h(sv_unit(sw_idx("g"))), dd.embed_h(sv_unit(sw_idx("x"))),
            dd.embed_dual({Scalar(1), Scalar(-1), Scalar(0), Scalar(0)}),
            dd.embed_dual({Scalar(0), Scalar(0), Scalar(1), Scalar(1)})};
}

bool weights_are(const AdjointAlgebra& adj, Index pp, Index pm, Index mp, Index mm) {
    auto gens = dsw_gens();
    auto w = gf_weight_multiplicities(adj.rep, gens.g, gens.f);
    return w[{1, 1}] == pp && w[{1, -1}] == pm && w[{-1, 1}] == mp && w[{-1, -1}] == mm;
}

bool lift_and_specialize(const ComodData& ca, const TensorElement& seed) {
    DeformationComplex cx(ca);
    DeformationSeries s{&ca, {seed}};
    if (!verify_series(s).pass) return false;
    while (s.order() < 4) {
        if (!obstruction(ca, s.terms).coords.empty()) return false;  // vanishing at each step
        LiftOutcome out = lift_step(cx, s);
        if (out.obstructed) return false;
        s = out.series;
    }
    if (!verify_series(s).pass) return false;
    for (int i = 0; i < 5; ++i) {
        QuasiComodReport rep = verify_quasi_comodule(ca, specialize(s, random_rational()));
        if (!rep.pass()) return false;
    }
    return true;
}

}  // namespace

int main() {
    const HopfData& sw = zoo::sweedler();
    const DoubleData& dd = zoo::sweedler_double();

    // ----- 1. dimension tables ------------------------------------------------
    check("1. dims (Sw, C<g>) = (1,0,1,0)",
          dims_of(zoo::cg_subalgebra(), 3) == std::vector<Index>{1, 0, 1, 0});
    for (const char* xi : {"0", "2", "1/2"})
        check(std::string("1. dims (Sw, A_xi), xi = ") + xi + " = (1,0,1,0)",
              dims_of(zoo::a_xi(scalar_from_string(xi)), 3) == std::vector<Index>{1, 0, 1, 0});
    check("1. dims (Sw, A_{1,1}) = (1,0,0,0)",
          dims_of(zoo::a_mn(1, 1), 3) == std::vector<Index>{1, 0, 0, 0});
    check("1. dims (Sw, A_{1,2}) = (2,0,1,0)",
          dims_of(zoo::a_mn(1, 2), 3) == std::vector<Index>{2, 0, 1, 0});
    check("1. dims (Sw, A_{2,2}) = (4,0,2,0)",
          dims_of(zoo::a_mn(2, 2), 3) == std::vector<Index>{4, 0, 2, 0});
    check("1. dims (Sw, k) = (1,0,1,0)",
          dims_of(trivial_comodule(sw), 3) == std::vector<Index>{1, 0, 1, 0});
    check("1. dims (B_2, k) = (1,0,3,0)",
          dims_of(trivial_comodule(zoo::bosonized_exterior(2)), 3) ==
              std::vector<Index>{1, 0, 3, 0});
    check("1. dims (Sw, Sw regular): H^{1..3} = 0",
          dims_of(regular_comodule(sw), 3) == std::vector<Index>{1, 0, 0, 0});
    check("1. dims (Z/2, k): H^{1..3} = 0",
          dims_of(trivial_comodule(zoo::group_z2()), 3) == std::vector<Index>{1, 0, 0, 0});
    {
        auto d = dims_of(regular_comodule(zoo::group_z2()), 3);
        check("1. dims (Z/2, Z/2 regular): H^{1..3} = 0",
              d.size() == 4 && d[1] == 0 && d[2] == 0 && d[3] == 0);
    }

    // ----- 2. degree-2 cocycle bases -------------------------------------------
    {
        ComodData cg = zoo::cg_subalgebra();
        check("2. H^2 basis of (Sw, C<g>) is spanned by x (x) xg (x) 1",
              cocycle_basis_matches(cg, {x_xg_cocycle(cg, 0)}));
    }
    for (const char* xi : {"0", "2", "1/2"}) {
        ComodData a = zoo::a_xi(scalar_from_string(xi));
        check(std::string("2. H^2 basis of (Sw, A_xi), xi = ") + xi +
                  " is spanned by x (x) xg (x) 1",
              cocycle_basis_matches(a, {x_xg_cocycle(a, 0)}));
    }
    for (auto [m, n] : {std::pair{1, 2}, {2, 2}}) {
        ComodData a = zoo::a_mn(m, n);
        std::vector<TensorElement> listed;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= n - 2; ++j)
                listed.push_back(
                    x_gx_cocycle(a, Index(2 * i) * Index(2 * n) + Index(2 * j)));
        check("2. H^2 basis of (Sw, A_{" + std::to_string(m) + "," + std::to_string(n) +
                  "}) is spanned by x (x) gx (x) gt^{2i} xt^{2j}",
              cocycle_basis_matches(a, listed));
    }

    // ----- 3. adjoint algebras --------------------------------------------------
    {
        AdjointAlgebra adj = adjoint_algebra(dd, zoo::cg_subalgebra());
        check("3. adjoint of (Sw, C<g>): dim 4, weights {(-,-),(+,+),(-,+),(+,-)}",
              adj.dim() == 4 && weights_are(adj, 1, 1, 1, 1) && dmodule_verify(adj.rep).pass);
    }
    for (const char* xi : {"0", "2", "1/2"}) {
        AdjointAlgebra adj = adjoint_algebra(dd, zoo::a_xi(scalar_from_string(xi)));
        check(std::string("3. adjoint of (Sw, A_xi), xi = ") + xi +
                  ": dim 4, weights of S_+ (+) V_xi",
              adj.dim() == 4 && weights_are(adj, 1, 1, 1, 1) && dmodule_verify(adj.rep).pass);
    }
    for (auto [m, n] : {std::pair{1, 2}, {2, 2}}) {
        AdjointAlgebra adj = adjoint_algebra(dd, zoo::a_mn(m, n));
        auto gens = dsw_gens();
        bool ok = adj.dim() == Index(4 * m * n) && dmodule_verify(adj.rep).pass &&
                  weights_are(adj, Index(m * n), Index(m * n), Index(m * n), Index(m * n)) &&
                  rank(adj.rep.act(gens.x)) == Index(2 * m * n - m) &&
                  rank(adj.rep.act(gens.y)) == Index(2 * m * n);
        check("3. adjoint of (Sw, A_{" + std::to_string(m) + "," + std::to_string(n) +
                  "}) matches mn S_+ (+) m W_n",
              ok);
    }
    {
        AdjointAlgebra adj = adjoint_algebra(dd, regular_comodule(sw));
        ModuleRep target = hopf_adjoint_module(dd);
        Matrix ev = adjoint_evaluation(adj, sw.alg.unit);
        bool ok = adj.dim() == 4 && rank(ev) == 4;
        for (const auto& gen : dd.generating_set())
            ok = ok && (target.act(gen) * ev == ev * adj.rep.act(gen));
        check("3. adjoint of (Sw, Sw) is the adjoint representation via evaluation at 1", ok);
    }

    // ----- 4. three-way oracle agreement ----------------------------------------
    {
        Resolution periodic = sweedler_resolution(3);
        Resolution bar = bar_resolution(dd, zoo::trivial(), 3);
        std::vector<std::pair<std::string, ComodData>> cases;
        cases.emplace_back("trivial_k", trivial_comodule(sw));
        cases.emplace_back("cg_subalgebra", zoo::cg_subalgebra());
        cases.emplace_back("coideal_D", zoo::coideal_d());
        cases.emplace_back("a_xi(2)", zoo::a_xi(Scalar(2)));
        cases.emplace_back("a_mn(1,2)", zoo::a_mn(1, 2));
        for (const auto& [name, ca] : cases) {
            std::vector<Index> complex_dims = dims_of(ca, 2);
            AdjointAlgebra adj = adjoint_algebra(dd, ca);
            bool ok = relative_ext(periodic, adj.rep, 2).dims == complex_dims &&
                      relative_ext(bar, adj.rep, 2).dims == complex_dims;
            check("4. three-way oracle agreement on " + name + " (degrees 0..2)", ok);
        }
    }

    // ----- 5. Drinfeld double ----------------------------------------------------
    {
        auto [g, x, f, y] = dsw_gens();
        auto mul = [&](const SparseVec& a, const SparseVec& b) { return dd.alg.multiply(a, b); };
        auto neg = [](SparseVec v) {
            sv_scale(v, Scalar(-1));
            return v;
        };
        SparseVec xyyx = mul(x, y);
        sv_axpy(xyyx, Scalar(1), mul(y, x));
        SparseVec rhs = dd.alg.unit;
        sv_axpy(rhs, Scalar(-1), mul(f, g));
        bool ok = sv_equal(mul(g, x), neg(mul(x, g))) && sv_equal(mul(g, y), neg(mul(y, g))) &&
                  sv_equal(mul(f, x), neg(mul(x, f))) && sv_equal(mul(f, y), neg(mul(y, f))) &&
                  sv_equal(mul(g, f), mul(f, g)) && sv_equal(xyyx, rhs) && mul(x, x).empty() &&
                  mul(y, y).empty() && sv_equal(mul(g, g), dd.alg.unit) &&
                  sv_equal(mul(f, f), dd.alg.unit);
        check("5. D(Sw) satisfies all generator relations exactly", ok);
        check("5. module verifiers pass on C_+, C_-, S_+, S_-, W_n",
              dmodule_verify(zoo::c_plus()).pass && dmodule_verify(zoo::c_minus()).pass &&
                  dmodule_verify(zoo::s_plus()).pass && dmodule_verify(zoo::s_minus()).pass &&
                  dmodule_verify(zoo::w_n(1)).pass && dmodule_verify(zoo::w_n(2)).pass &&
                  dmodule_verify(zoo::w_n(3)).pass);
    }

    // ----- 6. deformation lifting -------------------------------------------------
    {
        ComodData cg = zoo::cg_subalgebra();
        check("6. svect seed lifts to order 4 and specializes (5 rational points)",
              lift_and_specialize(cg, x_xg_cocycle(cg, 0)));

        ComodData a12 = zoo::a_mn(1, 2);
        TensorElement seed12 = x_gx_cocycle(a12, 0);
        sv_scale(seed12.coords, scalar_from_string("4/7"));
        check("6. A_{1,2} seed lifts to order 4 and specializes (5 rational points)",
              lift_and_specialize(a12, seed12));

        ComodData a22 = zoo::a_mn(2, 2);
        TensorElement seed22 = x_gx_cocycle(a22, 0);
        sv_scale(seed22.coords, Scalar(3));
        sv_axpy(seed22.coords, scalar_from_string("-5/2"),
                x_gx_cocycle(a22, Index(2) * Index(4)).coords);
        check("6. A_{2,2} two-parameter seed lifts to order 4 and specializes",
              lift_and_specialize(a22, seed22));
    }

    // ----- 7. property suites -------------------------------------------------------
    {
        bool ok = true;
        for (const ComodData& ca : {zoo::cg_subalgebra(), zoo::a_xi(Scalar(2)), zoo::a_mn(1, 2)})
            for (int n = 0; n <= 3; ++n)
                ok = ok && (ambient_differential(ca, n + 1) * ambient_differential(ca, n)).is_zero();
        check("7. d o d = 0 on the ambient complexes", ok);
    }
    {
        ComodData cg = zoo::cg_subalgebra();
        DeformationComplex cx(cg);
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            int n = 1 + trial % 2;
            TensorElement c{n, {}};
            for (const auto& b : cx.slice(n).basis) {
                Scalar s = random_rational();
                if (!is_zero(s)) sv_axpy(c.coords, s, b.coords);
            }
            for (int i = 0; i <= n + 1 && ok; ++i)
                for (int j = i + 1; j <= n + 2 && ok; ++j)
                    ok = sv_equal(coface(cg, coface(cg, c, i), j).coords,
                                  coface(cg, coface(cg, c, j - 1), i).coords);
        }
        check("7. cosimplicial identities on random cochains", ok);
    }
    {
        ComodData cg = zoo::cg_subalgebra();
        DeformationComplex cx(cg);
        DeformationSeries s{&cg, {x_xg_cocycle(cg, 0)}};
        s = lift_step(cx, s).series;
        TensorElement obs = obstruction(cg, s.terms);
        check("7. obstruction of a verified series is a cocycle",
              differential(cg, obs).coords.empty());
    }
    {
        bool ok = true;
        for (const ComodData& ca : {zoo::cg_subalgebra(), zoo::a_xi(Scalar(2))}) {
            DeformationComplex cx(ca);
            TensorElement m0 = unit_cochain(ca, 2);
            for (int trial = 0; trial < 4 && ok; ++trial) {
                int n = 1 + trial % 2;
                TensorElement f{n, {}};
                for (const auto& b : cx.slice(n).basis) {
                    Scalar s = random_rational();
                    if (!is_zero(s)) sv_axpy(f.coords, s, b.coords);
                }
                TensorElement br = bracket(ca, f, m0);
                sv_scale(br.coords, Scalar(-1));
                ok = ok && sv_equal(differential(ca, f).coords, br.coords);
            }
        }
        check("7. d(f) = -[f, m0] for the comp calculus", ok);
    }
    {
        ComodData cg = zoo::cg_subalgebra();
        DeformationComplex cx(cg);
        bool ok = true;
        for (int trial = 0; trial < 4 && ok; ++trial) {
            int p = 1 + trial % 2, q = 1 + (trial / 2) % 2;
            TensorElement f{p, {}}, g{q, {}};
            for (const auto& b : cx.slice(p).basis) {
                Scalar s = random_rational();
                if (!is_zero(s)) sv_axpy(f.coords, s, b.coords);
            }
            for (const auto& b : cx.slice(q).basis) {
                Scalar s = random_rational();
                if (!is_zero(s)) sv_axpy(g.coords, s, b.coords);
            }
            TensorElement lhs = differential(cg, cup(cg, f, g));
            TensorElement rhs = cup(cg, differential(cg, f), g);
            TensorElement snd = cup(cg, f, differential(cg, g));
            sv_axpy(rhs.coords, Scalar(p % 2 ? -1 : 1), snd.coords);
            ok = sv_equal(lhs.coords, rhs.coords);
        }
        check("7. Leibniz rule for the cup product", ok);
    }
    {
        check("7. the 2-periodic resolution passes all four checks",
              verify_resolution(sweedler_resolution(4)).pass());
        check("7. the bar resolution passes all four checks",
              verify_resolution(bar_resolution(dd, zoo::trivial(), 3)).pass());
    }
    {
        bool ok = true;
        for (const ComodData& ca : {trivial_comodule(sw), zoo::cg_subalgebra(), zoo::coideal_d(),
                                    zoo::a_xi(Scalar(2)), zoo::a_mn(1, 2)}) {
            AdjointAlgebra adj = adjoint_algebra(dd, ca);
            const Index dA = ca.dimA();
            for (Index j = 0; j < adj.dim() && ok; ++j) {
                SparseVec phi = adj.inclusion.column(j);
                for (Index b = 0; b < dA && ok; ++b) {
                    // a . phi(1) = phi(a_(1)) a_(0)
                    SparseVec phi_at_unit;
                    for (const auto& [u, uv] : sw.alg.unit)
                        for (Index a2 = 0; a2 < dA; ++a2) {
                            Scalar v = sv_get(phi, u * dA + a2);
                            if (!is_zero(v)) phi_at_unit.emplace_back(a2, uv * v);
                        }
                    sv_sort_combine(phi_at_unit);
                    SparseVec lhs = ca.alg.multiply(sv_unit(b), phi_at_unit);
                    SparseVec rhs;
                    for (const auto& [code, c] : ca.coaction[b]) {
                        Index h1 = code / dA, a0 = code % dA;
                        SparseVec val;
                        for (Index a2 = 0; a2 < dA; ++a2) {
                            Scalar v = sv_get(phi, h1 * dA + a2);
                            if (!is_zero(v)) val.emplace_back(a2, v);
                        }
                        sv_axpy(rhs, c, ca.alg.multiply(val, sv_unit(a0)));
                    }
                    ok = sv_equal(lhs, rhs);
                }
            }
        }
        check("7. full-center shadow identity on all adjoint algebras", ok);
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
