#pragma once

#include <deque>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "hopfdeform/complex.hpp"
#include "hopfdeform/deform.hpp"
#include "hopfdeform/relext.hpp"
#include "hopfdeform/zoo.hpp"

namespace hopfdeform {

using Json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- writers -----------------------------------------------------------------

inline Json scalar_json(const Scalar& s) { return scalar_to_string(s); }

inline Json dense_matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_string(m.entry(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json sparse_over_labels(const SparseVec& v, const std::vector<std::string>& labels) {
    Json out = Json::array();
    for (const auto& [i, c] : v) out.push_back(Json::array({labels[i], scalar_to_string(c)}));
    return out;
}

inline Json mul_table_json(const BasedAlgebra& a) {
    Json out = Json::array();
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j)
            for (const auto& [k, c] : a.mul_basis(i, j))
                out.push_back(Json::array({a.basis_labels[i], a.basis_labels[j],
                                           a.basis_labels[k], scalar_to_string(c)}));
    return out;
}

inline Json algebra_json(const BasedAlgebra& a) {
    Json j;
    j["dim"] = a.dim;
    j["basis"] = a.basis_labels;
    j["unit"] = sparse_over_labels(a.unit, a.basis_labels);
    j["mul"] = mul_table_json(a);
    return j;
}

inline Json hopf_json(const HopfData& h) {
    Json j;
    j["kind"] = "hopf";
    j["dim"] = h.dim();
    j["basis"] = h.alg.basis_labels;
    j["unit"] = sparse_over_labels(h.alg.unit, h.alg.basis_labels);
    j["mul"] = mul_table_json(h.alg);
    Json cop = Json::array();
    const Index d = h.dim();
    for (Index i = 0; i < d; ++i)
        for (const auto& [code, c] : h.coproduct[i])
            cop.push_back(Json::array({h.alg.basis_labels[i], h.alg.basis_labels[code / d],
                                       h.alg.basis_labels[code % d], scalar_to_string(c)}));
    j["coproduct"] = cop;
    Json cu = Json::array();
    for (Index i = 0; i < d; ++i)
        if (!is_zero(h.counit[i]))
            cu.push_back(Json::array({h.alg.basis_labels[i], scalar_to_string(h.counit[i])}));
    j["counit"] = cu;
    Json anti = Json::array();
    for (Index col = 0; col < d; ++col)
        for (Index r = 0; r < d; ++r) {
            Scalar v = h.antipode.entry(r, col);
            if (!is_zero(v))
                anti.push_back(Json::array({h.alg.basis_labels[col], h.alg.basis_labels[r],
                                            scalar_to_string(v)}));
        }
    j["antipode"] = anti;
    return j;
}

inline Json comod_json(const ComodData& ca, const std::string& hopf_ref) {
    Json j;
    j["kind"] = "comodule_algebra";
    j["hopf"] = hopf_ref;
    j["dim"] = ca.dimA();
    j["basis"] = ca.alg.basis_labels;
    j["unit"] = sparse_over_labels(ca.alg.unit, ca.alg.basis_labels);
    j["mul"] = mul_table_json(ca.alg);
    Json coact = Json::array();
    const Index dA = ca.dimA();
    for (Index a = 0; a < dA; ++a)
        for (const auto& [code, c] : ca.coaction[a])
            coact.push_back(Json::array({ca.alg.basis_labels[a],
                                         ca.hopf->alg.basis_labels[code / dA],
                                         ca.alg.basis_labels[code % dA], scalar_to_string(c)}));
    j["coaction"] = coact;
    return j;
}

inline Json module_json(const ModuleRep& m, const std::string& algebra_ref) {
    Json j;
    j["kind"] = "module";
    j["algebra"] = algebra_ref;
    j["dim"] = m.dim;
    Json actions;
    for (Index i = 0; i < m.algebra->dim; ++i)
        actions[m.algebra->basis_labels[i]] = dense_matrix_json(m.actions[i]);
    j["actions"] = std::move(actions);
    return j;
}

/// Cochain as a sparse list of (label tuple, coefficient) pairs.
inline Json cochain_json(const ComodData& ca, const TensorElement& c) {
    Json j;
    j["kind"] = "cochain";
    j["degree"] = c.legs;
    TensorShape shape = cochain_shape(ca, c.legs);
    Json entries = Json::array();
    for (const auto& [code, v] : c.coords) {
        auto idx = shape.decode(code);
        Json tuple = Json::array();
        for (int l = 0; l < c.legs; ++l) tuple.push_back(ca.hopf->alg.basis_labels[idx[std::size_t(l)]]);
        tuple.push_back(ca.alg.basis_labels[idx[std::size_t(c.legs)]]);
        entries.push_back(Json::array({std::move(tuple), scalar_to_string(v)}));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline Json series_json(const ComodData& ca, const DeformationSeries& s) {
    Json j;
    j["kind"] = "deformation_series";
    Json terms = Json::array();
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        Json t;
        t["order"] = i + 1;
        t["entries"] = cochain_json(ca, s.terms[i])["entries"];
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

// --- readers -----------------------------------------------------------------

namespace detail {

inline Scalar read_scalar(const Json& j) {
    if (!j.is_string()) throw SchemaError("scalar must be a string like \"p/q\"");
    try {
        return scalar_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

inline Index label_to_index(const std::vector<std::string>& labels, const Json& j) {
    if (!j.is_string()) throw SchemaError("basis label must be a string");
    const std::string s = j.get<std::string>();
    for (Index i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return i;
    throw SchemaError("unknown basis label: " + s);
}

inline const Json& require(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field: ") + key);
    return *it;
}

inline BasedAlgebra read_algebra_core(const Json& j) {
    BasedAlgebra a;
    a.dim = require(j, "dim").get<Index>();
    a.basis_labels = require(j, "basis").get<std::vector<std::string>>();
    if (a.basis_labels.size() != a.dim) throw SchemaError("basis size differs from dim");
    a.mul.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (const auto& t : require(j, "mul")) {
        if (!t.is_array() || t.size() != 4) throw SchemaError("mul entries are [a,b,c,coeff]");
        Index i = label_to_index(a.basis_labels, t[0]);
        Index k = label_to_index(a.basis_labels, t[1]);
        Index l = label_to_index(a.basis_labels, t[2]);
        a.mul[i][k].emplace_back(l, read_scalar(t[3]));
    }
    for (auto& row : a.mul)
        for (auto& v : row) sv_sort_combine(v);
    for (const auto& t : require(j, "unit")) {
        if (!t.is_array() || t.size() != 2) throw SchemaError("unit entries are [label,coeff]");
        a.unit.emplace_back(label_to_index(a.basis_labels, t[0]), read_scalar(t[1]));
    }
    sv_sort_combine(a.unit);
    return a;
}

}  // namespace detail

inline HopfData hopf_from_json(const Json& j, bool verify = true) {
    HopfData h;
    h.alg = detail::read_algebra_core(j);
    const Index d = h.alg.dim;
    h.coproduct.assign(d, {});
    for (const auto& t : detail::require(j, "coproduct")) {
        if (!t.is_array() || t.size() != 4) throw SchemaError("coproduct entries are [a,h1,h2,coeff]");
        Index i = detail::label_to_index(h.alg.basis_labels, t[0]);
        Index p = detail::label_to_index(h.alg.basis_labels, t[1]);
        Index q = detail::label_to_index(h.alg.basis_labels, t[2]);
        h.coproduct[i].emplace_back(p * d + q, detail::read_scalar(t[3]));
    }
    for (auto& v : h.coproduct) sv_sort_combine(v);
    h.counit.assign(d, Scalar(0));
    for (const auto& t : detail::require(j, "counit")) {
        if (!t.is_array() || t.size() != 2) throw SchemaError("counit entries are [label,value]");
        h.counit[detail::label_to_index(h.alg.basis_labels, t[0])] = detail::read_scalar(t[1]);
    }
    h.antipode = Matrix(d, d);
    for (const auto& t : detail::require(j, "antipode")) {
        if (!t.is_array() || t.size() != 3) throw SchemaError("antipode entries are [from,to,coeff]");
        Index col = detail::label_to_index(h.alg.basis_labels, t[0]);
        Index row = detail::label_to_index(h.alg.basis_labels, t[1]);
        h.antipode.add_to(row, col, detail::read_scalar(t[2]));
    }
    if (verify) {
        VerifyReport rep = verify_hopf_axioms(h);
        if (!rep.pass)
            throw VerificationError("hopf data fails verification: " + rep.violations.front());
    }
    return h;
}

// Loader with ownership of referenced parents; objects loaded from files keep
// pointers into this context.
struct LoadContext {
    bool verify = true;
    std::deque<std::unique_ptr<HopfData>> hopfs;
    std::deque<std::unique_ptr<DoubleData>> doubles;

    const HopfData* own(HopfData h) {
        hopfs.push_back(std::make_unique<HopfData>(std::move(h)));
        return hopfs.back().get();
    }
    const DoubleData* own(DoubleData d) {
        doubles.push_back(std::make_unique<DoubleData>(std::move(d)));
        return doubles.back().get();
    }
};

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

/// Resolves "zoo:name" or a file path to a Hopf algebra.
inline const HopfData* resolve_hopf(LoadContext& ctx, const std::string& ref,
                                    const std::vector<Scalar>& params = {}) {
    if (ref.rfind("zoo:", 0) == 0) {
        zoo::ZooEntry e = zoo::zoo_get({ref.substr(4), params});
        if (e.kind != zoo::ZooKind::hopf) throw SchemaError(ref + " is not a Hopf algebra");
        return e.hopf;
    }
    return ctx.own(hopf_from_json(read_json_file(ref), ctx.verify));
}

inline ComodData comod_from_json(LoadContext& ctx, const Json& j) {
    ComodData c;
    c.alg = detail::read_algebra_core(j);
    const Json& href = detail::require(j, "hopf");
    if (!href.is_string()) throw SchemaError("hopf reference must be a string");
    c.hopf = resolve_hopf(ctx, href.get<std::string>());
    const Index dA = c.alg.dim;
    c.coaction.assign(dA, {});
    for (const auto& t : detail::require(j, "coaction")) {
        if (!t.is_array() || t.size() != 4) throw SchemaError("coaction entries are [a,h,a2,coeff]");
        Index a = detail::label_to_index(c.alg.basis_labels, t[0]);
        Index h = detail::label_to_index(c.hopf->alg.basis_labels, t[1]);
        Index a2 = detail::label_to_index(c.alg.basis_labels, t[2]);
        c.coaction[a].emplace_back(h * dA + a2, detail::read_scalar(t[3]));
    }
    for (auto& v : c.coaction) sv_sort_combine(v);
    if (ctx.verify) {
        VerifyReport rep = verify_comodule_algebra(c);
        if (!rep.pass)
            throw VerificationError("comodule algebra fails verification: " + rep.violations.front());
    }
    return c;
}

/// Resolves an algebra reference for module files: "zoo:sweedler",
/// "zoo:sweedler_double", another zoo Hopf key, or a hopf file path.
inline const BasedAlgebra* resolve_algebra(LoadContext& ctx, const std::string& ref) {
    if (ref.empty()) throw SchemaError("empty algebra reference");
    if (ref == "zoo:sweedler_double") return &zoo::sweedler_double().alg;
    if (ref.rfind("zoo:", 0) == 0) {
        zoo::ZooEntry e = zoo::zoo_get({ref.substr(4), {}});
        if (e.kind != zoo::ZooKind::hopf) throw SchemaError(ref + " is not an algebra reference");
        return &e.hopf->alg;
    }
    return &ctx.own(hopf_from_json(read_json_file(ref), ctx.verify))->alg;
}

inline Matrix dense_matrix_from_json(const Json& j, Index rows, Index cols) {
    if (!j.is_array() || j.size() != rows) throw SchemaError("dense matrix row count mismatch");
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != cols) throw SchemaError("dense matrix column count mismatch");
        for (Index c = 0; c < cols; ++c) {
            Scalar v = detail::read_scalar(row[c]);
            if (!is_zero(v)) m.add_to(r, c, v);
        }
    }
    return m;
}

inline ModuleRep module_from_json(LoadContext& ctx, const Json& j) {
    ModuleRep m;
    const Json& aref = detail::require(j, "algebra");
    if (!aref.is_string()) throw SchemaError("algebra reference must be a string");
    m.algebra = resolve_algebra(ctx, aref.get<std::string>());
    m.dim = detail::require(j, "dim").get<Index>();
    const Json& actions = detail::require(j, "actions");
    m.actions.assign(m.algebra->dim, Matrix(m.dim, m.dim));
    for (Index i = 0; i < m.algebra->dim; ++i) {
        auto it = actions.find(m.algebra->basis_labels[i]);
        if (it == actions.end())
            throw SchemaError("missing action for basis element " + m.algebra->basis_labels[i]);
        m.actions[i] = dense_matrix_from_json(*it, m.dim, m.dim);
    }
    if (ctx.verify) {
        VerifyReport rep = dmodule_verify(m);
        if (!rep.pass) throw VerificationError("module fails verification: " + rep.violations.front());
    }
    return m;
}

inline TensorElement cochain_from_json(const ComodData& ca, const Json& j) {
    TensorElement c;
    c.legs = detail::require(j, "degree").get<int>();
    TensorShape shape = cochain_shape(ca, c.legs);
    for (const auto& e : detail::require(j, "entries")) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("cochain entries are [labels, coeff]");
        const Json& tuple = e[0];
        if (!tuple.is_array() || int(tuple.size()) != c.legs + 1)
            throw SchemaError("cochain label tuple has wrong length");
        std::vector<Index> idx;
        for (int l = 0; l < c.legs; ++l)
            idx.push_back(detail::label_to_index(ca.hopf->alg.basis_labels, tuple[std::size_t(l)]));
        idx.push_back(detail::label_to_index(ca.alg.basis_labels, tuple[std::size_t(c.legs)]));
        c.coords.emplace_back(shape.encode(idx), detail::read_scalar(e[1]));
    }
    sv_sort_combine(c.coords);
    return c;
}

inline DeformationSeries series_from_json(const ComodData& ca, const Json& j) {
    DeformationSeries s;
    s.comod = &ca;
    const Json& terms = detail::require(j, "terms");
    s.terms.resize(terms.size(), TensorElement{2, {}});
    for (const auto& t : terms) {
        std::size_t order = detail::require(t, "order").get<std::size_t>();
        if (order < 1 || order > terms.size()) throw SchemaError("series order out of range");
        Json c;
        c["degree"] = 2;
        c["entries"] = detail::require(t, "entries");
        s.terms[order - 1] = cochain_from_json(ca, c);
    }
    return s;
}

inline ModuleRep resolve_module(LoadContext& ctx, const Json& ref) {
    if (ref.is_string()) {
        std::string s = ref.get<std::string>();
        if (s.rfind("zoo:", 0) == 0) {
            zoo::ZooEntry e = zoo::zoo_get({s.substr(4), {}});
            if (e.kind != zoo::ZooKind::dmodule) throw SchemaError(s + " is not a module");
            return *e.dmodule;
        }
        return module_from_json(ctx, read_json_file(s));
    }
    return module_from_json(ctx, ref);
}

inline Resolution resolution_from_json(LoadContext& ctx, const Json& j) {
    Resolution r;
    r.dd = &zoo::sweedler_double();
    r.target = resolve_module(ctx, detail::require(j, "target"));
    for (const auto& t : detail::require(j, "terms")) r.terms.push_back(resolve_module(ctx, t));
    if (r.terms.empty()) throw SchemaError("resolution needs at least one term");
    for (const auto& m : r.terms)
        if (m.algebra != &r.dd->alg)
            throw SchemaError("resolution terms must be modules over zoo:sweedler_double");
    if (r.target.algebra != &r.dd->alg)
        throw SchemaError("resolution target must be a module over zoo:sweedler_double");
    const Json& diffs = detail::require(j, "differentials");
    if (diffs.size() + 1 != r.terms.size())
        throw SchemaError("expected one differential per adjacent pair of terms");
    for (std::size_t n = 0; n < diffs.size(); ++n)
        r.differentials.push_back(
            dense_matrix_from_json(diffs[n], r.terms[n].dim, r.terms[n + 1].dim));
    r.augmentation =
        dense_matrix_from_json(detail::require(j, "augmentation"), r.target.dim, r.terms[0].dim);
    r.proj_sections.assign(r.terms.size(), std::nullopt);
    r.homotopies.assign(r.terms.size() + 1, std::nullopt);
    if (ctx.verify) {
        ResolutionReport rep = verify_resolution(r);
        if (!rep.pass())
            throw VerificationError("resolution fails verification: " +
                                    (rep.notes.empty() ? std::string("unknown") : rep.notes.front()));
    }
    return r;
}

}  // namespace hopfdeform
