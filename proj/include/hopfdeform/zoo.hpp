#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hopfdeform/double.hpp"

namespace hopfdeform::zoo {

namespace detail {

// Bosonized exterior algebra on k odd generators: g^2 = 1, x_i^2 = 0,
// x_i g = -g x_i, x_i x_j = -x_j x_i, Delta(g) = g (x) g,
// Delta(x_i) = 1 (x) x_i + x_i (x) g, S(g) = g, S(x_i) = g x_i.
// Basis g^a x_S indexed by mask*2 + a, set bits of S in increasing order.
inline HopfData build_bosonized_exterior(int k, const std::vector<std::string>& labels) {
    const Index nmask = Index(1) << k;
    const Index dim = nmask * 2;
    BasedAlgebra alg;
    alg.dim = dim;
    alg.basis_labels = labels;
    alg.unit = sv_unit(0);

    auto index_of = [&](Index a, Index mask) { return mask * 2 + a; };
    auto popcount = [](Index m) {
        int c = 0;
        while (m) c += int(m & 1), m >>= 1;
        return c;
    };

    alg.mul.assign(dim, std::vector<SparseVec>(dim));
    for (Index s = 0; s < nmask; ++s)
        for (Index a = 0; a < 2; ++a)
            for (Index t = 0; t < nmask; ++t)
                for (Index b = 0; b < 2; ++b) {
                    SparseVec prod;
                    if ((s & t) == 0) {
                        int sign = (popcount(s) * int(b)) % 2 ? -1 : 1;
                        // inversions while merging t's bits below s's bits
                        int inv = 0;
                        for (int i = 0; i < k; ++i)
                            if (t & (Index(1) << i))
                                for (int j = i + 1; j < k; ++j)
                                    if (s & (Index(1) << j)) ++inv;
                        if (inv % 2) sign = -sign;
                        prod = sv_unit(index_of((a + b) % 2, s | t));
                        sv_scale(prod, Scalar(sign));
                    }
                    alg.mul[index_of(a, s)][index_of(b, t)] = std::move(prod);
                }

    HopfData h;
    h.alg = std::move(alg);

    std::vector<const BasedAlgebra*> legs2{&h.alg, &h.alg};
    SparseVec cop_g;  // g (x) g
    cop_g.emplace_back(index_of(1, 0) * dim + index_of(1, 0), Scalar(1));
    std::vector<SparseVec> cop_x(k);  // 1 (x) x_i + x_i (x) g
    for (int i = 0; i < k; ++i) {
        Index xi = index_of(0, Index(1) << i);
        cop_x[i].emplace_back(Index(0) * dim + xi, Scalar(1));
        cop_x[i].emplace_back(xi * dim + index_of(1, 0), Scalar(1));
        sv_sort_combine(cop_x[i]);
    }
    SparseVec cop_one;
    cop_one.emplace_back(0, Scalar(1));  // 1 (x) 1 at composite index 0

    h.coproduct.resize(dim);
    h.counit.assign(dim, Scalar(0));
    h.antipode = Matrix(dim, dim);
    for (Index s = 0; s < nmask; ++s)
        for (Index a = 0; a < 2; ++a) {
            SparseVec cop = cop_one;
            if (a) cop = multi_mul(legs2, cop, cop_g);
            for (int i = 0; i < k; ++i)
                if (s & (Index(1) << i)) cop = multi_mul(legs2, cop, cop_x[i]);
            h.coproduct[index_of(a, s)] = std::move(cop);

            h.counit[index_of(a, s)] = (s == 0) ? Scalar(1) : Scalar(0);

            // S(g^a x_{i1}..x_{ij}) = (g x_{ij}) ... (g x_{i1}) g^a
            SparseVec anti = sv_unit(0);
            for (int i = k - 1; i >= 0; --i)
                if (s & (Index(1) << i)) {
                    SparseVec gxi = sv_unit(index_of(1, Index(1) << i));
                    anti = h.alg.multiply(anti, gxi);
                }
            if (a) anti = h.alg.multiply(anti, sv_unit(index_of(1, 0)));
            for (const auto& [r, c] : anti) h.antipode.add_to(r, index_of(a, s), c);
        }
    return h;
}

inline HopfData build_verified_hopf(HopfData h, const std::string& what) {
    VerifyReport rep = verify_hopf_axioms(h);
    if (!rep.pass) throw std::logic_error("zoo: " + what + " failed verification");
    return h;
}

inline ComodData checked(ComodData c, const std::string& what) {
    VerifyReport rep = verify_comodule_algebra(c);
    if (!rep.pass) throw std::logic_error("zoo: " + what + " failed verification");
    return c;
}

inline ModuleRep checked_module(ModuleRep m, const std::string& what) {
    VerifyReport rep = dmodule_verify(m);
    if (!rep.pass) throw std::logic_error("zoo: " + what + " failed verification");
    return m;
}

}  // namespace detail

/// Sweedler's 4-dimensional Hopf algebra, basis 1, g, x, gx.
inline const HopfData& sweedler() {
    static const HopfData h = detail::build_verified_hopf(
        detail::build_bosonized_exterior(1, {"1", "g", "x", "gx"}), "sweedler");
    return h;
}

inline const HopfData& bosonized_exterior(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("bosonized_exterior: need 1 <= k <= 6");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<HopfData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it == cache.end()) {
        const Index nmask = Index(1) << k;
        std::vector<std::string> labels(nmask * 2);
        for (Index s = 0; s < nmask; ++s)
            for (Index a = 0; a < 2; ++a) {
                std::string lab = a ? "g" : "";
                for (int i = 0; i < k; ++i)
                    if (s & (Index(1) << i)) lab += "x" + std::to_string(i + 1);
                if (lab.empty()) lab = "1";
                labels[s * 2 + a] = lab;
            }
        it = cache
                 .emplace(k, std::make_unique<HopfData>(detail::build_verified_hopf(
                                 detail::build_bosonized_exterior(k, labels), "bosonized_exterior")))
                 .first;
    }
    return *it->second;
}

/// Group algebra of Z/2.
inline const HopfData& group_z2() {
    static const HopfData h = [] {
        HopfData z;
        z.alg.dim = 2;
        z.alg.basis_labels = {"1", "g"};
        z.alg.unit = sv_unit(0);
        z.alg.mul = {{sv_unit(0), sv_unit(1)}, {sv_unit(1), sv_unit(0)}};
        z.coproduct = {SparseVec{{0, Scalar(1)}}, SparseVec{{3, Scalar(1)}}};
        z.counit = {Scalar(1), Scalar(1)};
        z.antipode = Matrix::identity(2);
        return detail::build_verified_hopf(std::move(z), "group_z2");
    }();
    return h;
}

inline const DoubleData& sweedler_double() {
    static const DoubleData dd = [] {
        DoubleData d = drinfeld_double(sweedler());
        VerifyReport rep = verify_algebra_axioms(d.alg);
        if (!rep.pass) throw std::logic_error("zoo: D(Sw) failed algebra verification");
        return d;
    }();
    return dd;
}

// --- comodule algebras over Sweedler -----------------------------------------

inline ComodData trivial_k() { return detail::checked(trivial_comodule(sweedler()), "trivial_k"); }

/// The Hopf subalgebra C<g>, i.e. super-vector spaces.
inline ComodData cg_subalgebra() {
    const HopfData& h = sweedler();
    ComodData c;
    c.alg.dim = 2;
    c.alg.basis_labels = {"1", "g"};
    c.alg.unit = sv_unit(0);
    c.alg.mul = {{sv_unit(0), sv_unit(1)}, {sv_unit(1), sv_unit(0)}};
    c.hopf = &h;
    c.coaction.resize(2);
    c.coaction[0] = SparseVec{{0 * 2 + 0, Scalar(1)}};  // 1 -> 1 (x) 1
    c.coaction[1] = SparseVec{{1 * 2 + 1, Scalar(1)}};  // g -> g (x) g
    return detail::checked(std::move(c), "cg_subalgebra");
}

/// The left coideal subalgebra span(1, gx).
inline ComodData coideal_d() {
    const HopfData& h = sweedler();
    ComodData c;
    c.alg.dim = 2;
    c.alg.basis_labels = {"1", "gx"};
    c.alg.unit = sv_unit(0);
    c.alg.mul = {{sv_unit(0), sv_unit(1)}, {sv_unit(1), SparseVec{}}};  // (gx)^2 = 0
    c.hopf = &h;
    c.coaction.resize(2);
    c.coaction[0] = SparseVec{{0, Scalar(1)}};
    // Delta(gx) = g (x) gx + gx (x) 1
    SparseVec d;
    d.emplace_back(1 * 2 + 1, Scalar(1));
    d.emplace_back(3 * 2 + 0, Scalar(1));
    sv_sort_combine(d);
    c.coaction[1] = std::move(d);
    return detail::checked(std::move(c), "coideal_d");
}

/// Family A_xi: gh xh = -xh gh, xh^2 = 1, gh^2 = 1, coaction
/// xh -> 1 (x) xh + xi x (x) gh, gh -> g (x) gh. Basis gh^i xh^j at j*2+i.
inline ComodData a_xi(const Scalar& xi) {
    const HopfData& h = sweedler();
    ComodData c;
    c.alg.dim = 4;
    c.alg.basis_labels = {"1", "gh", "xh", "ghxh"};
    c.alg.unit = sv_unit(0);
    auto idx = [](Index i, Index j) { return j * 2 + i; };
    c.alg.mul.assign(4, std::vector<SparseVec>(4));
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index p = 0; p < 2; ++p)
                for (Index q = 0; q < 2; ++q) {
                    int sign = (j * p) % 2 ? -1 : 1;
                    SparseVec prod = sv_unit(idx((i + p) % 2, (j + q) % 2));
                    sv_scale(prod, Scalar(sign));
                    c.alg.mul[idx(i, j)][idx(p, q)] = std::move(prod);
                }
    c.hopf = &h;
    std::vector<const BasedAlgebra*> legsHA{&h.alg, &c.alg};
    SparseVec coact_g = SparseVec{{1 * 4 + idx(1, 0), Scalar(1)}};  // g (x) gh
    SparseVec coact_x;
    coact_x.emplace_back(0 * 4 + idx(0, 1), Scalar(1));  // 1 (x) xh
    if (!is_zero(xi)) coact_x.emplace_back(2 * 4 + idx(1, 0), xi);  // xi x (x) gh
    sv_sort_combine(coact_x);
    c.coaction.resize(4);
    c.coaction[idx(0, 0)] = SparseVec{{0, Scalar(1)}};
    c.coaction[idx(1, 0)] = coact_g;
    c.coaction[idx(0, 1)] = coact_x;
    c.coaction[idx(1, 1)] = multi_mul(legsHA, coact_g, coact_x);
    return detail::checked(std::move(c), "a_xi");
}

/// Family A_{m,n}: gt xt = -xt gt, gt^{2m} = 1, xt^{2n} = 0; coaction
/// gt -> g (x) gt, xt -> 1 (x) xt + x (x) gt. Basis gt^i xt^j at i*2n + j.
inline ComodData a_mn(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("a_mn: need m >= 1 and n >= 1");
    const HopfData& h = sweedler();
    const Index gm = Index(2) * m, xn = Index(2) * n;
    ComodData c;
    c.alg.dim = gm * xn;
    c.alg.unit = sv_unit(0);
    auto idx = [&](Index i, Index j) { return i * xn + j; };
    auto power_label = [](const std::string& base, Index e) {
        if (e == 0) return std::string();
        if (e == 1) return base;
        return base + std::to_string(e);
    };
    c.alg.basis_labels.resize(c.alg.dim);
    for (Index i = 0; i < gm; ++i)
        for (Index j = 0; j < xn; ++j) {
            std::string lab = power_label("gt", i) + power_label("xt", j);
            c.alg.basis_labels[idx(i, j)] = lab.empty() ? "1" : lab;
        }
    c.alg.mul.assign(c.alg.dim, std::vector<SparseVec>(c.alg.dim));
    for (Index i = 0; i < gm; ++i)
        for (Index j = 0; j < xn; ++j)
            for (Index p = 0; p < gm; ++p)
                for (Index q = 0; q < xn; ++q) {
                    SparseVec prod;
                    if (j + q < xn) {
                        int sign = (j * p) % 2 ? -1 : 1;
                        prod = sv_unit(idx((i + p) % gm, j + q));
                        sv_scale(prod, Scalar(sign));
                    }
                    c.alg.mul[idx(i, j)][idx(p, q)] = std::move(prod);
                }
    c.hopf = &h;
    c.coaction.resize(c.alg.dim);
    for (Index i = 0; i < gm; ++i)
        for (Index j = 0; j < xn; ++j) {
            SparseVec coact;
            Index gpow = i % 2;  // g^i in Sw
            coact.emplace_back((gpow ? 1 : 0) * c.alg.dim + idx(i, j), Scalar(1));
            if (j % 2 == 1) {
                // + g^i x (x) gt^{i+1} xt^{j-1}
                Index gx = gpow ? 3 : 2;
                coact.emplace_back(gx * c.alg.dim + idx((i + 1) % gm, j - 1), Scalar(1));
            }
            sv_sort_combine(coact);
            c.coaction[idx(i, j)] = std::move(coact);
        }
    return detail::checked(std::move(c), "a_mn");
}

// --- D(Sw)-modules ------------------------------------------------------------

namespace detail {

inline std::vector<std::pair<SparseVec, Matrix>> dsw_generators(const Matrix& g, const Matrix& x,
                                                                const Matrix& f, const Matrix& y) {
    const DoubleData& dd = sweedler_double();
    return {
        {dd.embed_h(sv_unit(1)), g},
        {dd.embed_h(sv_unit(2)), x},
        {dd.embed_dual({Scalar(1), Scalar(-1), Scalar(0), Scalar(0)}), f},
        {dd.embed_dual({Scalar(0), Scalar(0), Scalar(1), Scalar(1)}), y},
    };
}

inline ModuleRep dsw_module(Index dim, const Matrix& g, const Matrix& x, const Matrix& f,
                            const Matrix& y, const std::string& what) {
    ModuleRep m = module_from_generator_actions(sweedler_double().alg, dim,
                                                dsw_generators(g, x, f, y));
    return checked_module(std::move(m), what);
}

inline Matrix diag2(int a, int b) {
    Matrix m(2, 2);
    m.set(0, 0, Scalar(a));
    m.set(1, 1, Scalar(b));
    return m;
}

}  // namespace detail

/// Indecomposable 2-dimensional module C_plus or C_minus, basis (t, b):
/// g t = f t = s t, y t = b, everything else zero.
inline ModuleRep c_pm(int sign) {
    Matrix y(2, 2);
    y.set(1, 0, Scalar(1));
    return detail::dsw_module(2, detail::diag2(sign, -sign), Matrix(2, 2),
                              detail::diag2(sign, -sign), y, sign > 0 ? "c_plus" : "c_minus");
}
inline ModuleRep c_plus() { return c_pm(+1); }
inline ModuleRep c_minus() { return c_pm(-1); }

/// Simple 2-dimensional module S_plus or S_minus, basis (v, w):
/// g v = s v, f v = -s v, x v = w, y w = 2 v.
inline ModuleRep s_pm(int sign) {
    Matrix x(2, 2), y(2, 2);
    x.set(1, 0, Scalar(1));
    y.set(0, 1, Scalar(2));
    return detail::dsw_module(2, detail::diag2(sign, -sign), x, detail::diag2(-sign, sign), y,
                              sign > 0 ? "s_plus" : "s_minus");
}
inline ModuleRep s_plus() { return s_pm(+1); }
inline ModuleRep s_minus() { return s_pm(-1); }

/// Indecomposable 2n-dimensional module W_n, basis (v_0..v_{n-1}, w_0..w_{n-1}):
/// g v_k = f v_k = -v_k, x v_k = w_{k+1}, y v_k = w_k, w's in the kernel.
inline ModuleRep w_n(int n) {
    if (n < 1) throw std::invalid_argument("w_n: need n >= 1");
    const Index dim = 2 * Index(n);
    Matrix g(dim, dim), f(dim, dim), x(dim, dim), y(dim, dim);
    for (Index k = 0; k < Index(n); ++k) {
        g.set(k, k, Scalar(-1));
        f.set(k, k, Scalar(-1));
        g.set(Index(n) + k, Index(n) + k, Scalar(1));
        f.set(Index(n) + k, Index(n) + k, Scalar(1));
        if (k + 1 < Index(n)) x.set(Index(n) + k + 1, k, Scalar(1));
        y.set(Index(n) + k, k, Scalar(1));
    }
    return detail::dsw_module(dim, g, x, f, y, "w_n");
}

/// Trivial 1-dimensional D(Sw)-module.
inline ModuleRep trivial() {
    Matrix one(1, 1), zero(1, 1);
    one.set(0, 0, Scalar(1));
    return detail::dsw_module(1, one, zero, one, zero, "trivial");
}

// --- dispatch -----------------------------------------------------------------

struct ZooKey {
    std::string name;
    std::vector<Scalar> params;
};

enum class ZooKind { hopf, comodule, dmodule };

struct ZooEntry {
    ZooKind kind;
    const HopfData* hopf = nullptr;
    std::optional<ComodData> comod;
    std::optional<ModuleRep> dmodule;
};

inline std::vector<std::string> list() {
    return {"sweedler",      "bosonized_exterior", "group_z2", "trivial_k", "cg_subalgebra",
            "coideal_D",     "a_xi",               "a_mn",     "c_plus",    "c_minus",
            "s_plus",        "s_minus",            "w_n",      "trivial"};
}

namespace detail {
inline int int_param(const ZooKey& key, std::size_t i) {
    if (i >= key.params.size()) throw std::invalid_argument("zoo: missing parameter for " + key.name);
    const Scalar& s = key.params[i];
    if (s.get_den() != 1) throw std::invalid_argument("zoo: parameter must be an integer");
    if (!s.get_num().fits_sint_p()) throw std::invalid_argument("zoo: parameter out of range");
    return int(s.get_num().get_si());
}
}  // namespace detail

inline ZooEntry zoo_get(const ZooKey& key) {
    ZooEntry e;
    e.kind = ZooKind::hopf;
    if (key.name == "sweedler") {
        e.hopf = &sweedler();
    } else if (key.name == "bosonized_exterior") {
        e.hopf = &bosonized_exterior(detail::int_param(key, 0));
    } else if (key.name == "group_z2") {
        e.hopf = &group_z2();
    } else if (key.name == "trivial_k") {
        e.kind = ZooKind::comodule;
        e.comod = trivial_k();
    } else if (key.name == "cg_subalgebra") {
        e.kind = ZooKind::comodule;
        e.comod = cg_subalgebra();
    } else if (key.name == "coideal_D") {
        e.kind = ZooKind::comodule;
        e.comod = coideal_d();
    } else if (key.name == "a_xi") {
        if (key.params.empty()) throw std::invalid_argument("zoo: a_xi needs a rational parameter");
        e.kind = ZooKind::comodule;
        e.comod = a_xi(key.params[0]);
    } else if (key.name == "a_mn") {
        e.kind = ZooKind::comodule;
        e.comod = a_mn(detail::int_param(key, 0), detail::int_param(key, 1));
    } else if (key.name == "c_plus" || key.name == "c_minus" || key.name == "s_plus" ||
               key.name == "s_minus" || key.name == "w_n" || key.name == "trivial") {
        e.kind = ZooKind::dmodule;
        if (key.name == "c_plus") e.dmodule = c_plus();
        else if (key.name == "c_minus") e.dmodule = c_minus();
        else if (key.name == "s_plus") e.dmodule = s_plus();
        else if (key.name == "s_minus") e.dmodule = s_minus();
        else if (key.name == "w_n") e.dmodule = w_n(detail::int_param(key, 0));
        else e.dmodule = trivial();
    } else {
        throw std::invalid_argument("zoo: unknown key " + key.name);
    }
    return e;
}

}  // namespace hopfdeform::zoo
