#include "nbhd/geometry/derivation.hpp"

#include "nbhd/error.hpp"

#include <algorithm>
#include <climits>

namespace nbhd::geom {

Connection Connection::trivial(std::size_t p, std::size_t e, std::size_t nvars) {
    return Connection{std::vector<PolyMatrix>(p, PolyMatrix(e, e, nvars))};
}

std::vector<PolyMatrix> curvature(const Connection& c) {
    std::vector<PolyMatrix> out;
    for (std::size_t b = 0; b < c.p(); ++b) {
        for (std::size_t d = b + 1; d < c.p(); ++d) {
            const auto db_gd = c.gamma[d].map([b](const LaurentPoly& f) { return f.derivative(b); });
            const auto dd_gb = c.gamma[b].map([d](const LaurentPoly& f) { return f.derivative(d); });
            out.push_back(db_gd - dd_gb + commutator(c.gamma[b], c.gamma[d]));
        }
    }
    return out;
}

bool is_flat(const Connection& c) {
    const auto f = curvature(c);
    return std::all_of(f.begin(), f.end(), [](const PolyMatrix& m) { return m.is_zero(); });
}

PairDerivation PairDerivation::zero(const Truncation& tr, std::size_t e) {
    PairDerivation d;
    d.tr = tr;
    d.e = e;
    d.base_images.assign(tr.p, LaurentPoly(tr.nvars()));
    d.normal_images.assign(tr.q, LaurentPoly(tr.nvars()));
    d.module_matrix = PolyMatrix(e, e, tr.nvars());
    return d;
}

LaurentPoly PairDerivation::apply(const LaurentPoly& f) const {
    LaurentPoly out(tr.nvars());
    for (std::size_t b = 0; b < tr.p; ++b) {
        if (base_images[b].is_zero()) continue;
        out += mul(f.derivative(b), base_images[b], tr);
    }
    for (std::size_t a = 0; a < tr.q; ++a) {
        if (normal_images[a].is_zero()) continue;
        out += mul(f.derivative(tr.p + a), normal_images[a], tr);
    }
    return out;
}

PolyMatrix PairDerivation::apply_entrywise(const PolyMatrix& m) const {
    return m.map([this](const LaurentPoly& f) { return apply(f); });
}

ModuleElement PairDerivation::apply(const ModuleElement& v) const {
    if (v.size() != e) throw DimensionMismatch("module element rank differs from derivation rank");
    ModuleElement out = mul(module_matrix, v, tr);
    for (std::size_t r = 0; r < e; ++r) out[r] += apply(v[r]);
    return out;
}

PairDerivation PairDerivation::graded(int v) const {
    PairDerivation d = zero(tr, e);
    for (std::size_t b = 0; b < tr.p; ++b) d.base_images[b] = t_part(base_images[b], tr.p, v);
    for (std::size_t a = 0; a < tr.q; ++a) d.normal_images[a] = t_part(normal_images[a], tr.p, v + 1);
    d.module_matrix = t_part(module_matrix, tr.p, v);
    return d;
}

PairDerivation PairDerivation::up_to(int v) const {
    PairDerivation d = zero(tr, e);
    for (int w = std::min(0, min_degree()); w <= v; ++w) d += graded(w);
    return d;
}

bool PairDerivation::is_zero() const {
    auto z = [](const LaurentPoly& f) { return f.is_zero(); };
    return std::all_of(base_images.begin(), base_images.end(), z) &&
           std::all_of(normal_images.begin(), normal_images.end(), z) && module_matrix.is_zero();
}

int PairDerivation::min_degree() const {
    int d = INT_MAX;
    for (const auto& f : base_images) d = std::min(d, min_t_degree(f, tr.p));
    for (const auto& f : normal_images) {
        const int m = min_t_degree(f, tr.p);
        if (m != INT_MAX) d = std::min(d, m - 1);
    }
    return std::min(d, min_t_degree(module_matrix, tr.p));
}

LaurentPoly PairDerivation::a(int v, std::size_t b) const { return t_part(base_images.at(b), tr.p, v); }

std::vector<LaurentPoly> PairDerivation::L(int v) const {
    std::vector<LaurentPoly> out;
    for (const auto& f : normal_images) out.push_back(t_part(f, tr.p, v + 1));
    return out;
}

PolyMatrix PairDerivation::M(int v) const { return t_part(module_matrix, tr.p, v); }

namespace {

void check_compatible(const PairDerivation& x, const PairDerivation& y) {
    if (x.tr != y.tr || x.e != y.e) throw DimensionMismatch("derivations over different truncations");
}

}  // namespace

PairDerivation& PairDerivation::operator+=(const PairDerivation& o) {
    check_compatible(*this, o);
    for (std::size_t b = 0; b < tr.p; ++b) base_images[b] += o.base_images[b];
    for (std::size_t a = 0; a < tr.q; ++a) normal_images[a] += o.normal_images[a];
    module_matrix += o.module_matrix;
    return *this;
}

PairDerivation& PairDerivation::operator-=(const PairDerivation& o) {
    check_compatible(*this, o);
    for (std::size_t b = 0; b < tr.p; ++b) base_images[b] -= o.base_images[b];
    for (std::size_t a = 0; a < tr.q; ++a) normal_images[a] -= o.normal_images[a];
    module_matrix -= o.module_matrix;
    return *this;
}

PairDerivation& PairDerivation::operator*=(const Rational& c) {
    for (auto& f : base_images) f *= c;
    for (auto& f : normal_images) f *= c;
    module_matrix *= c;
    return *this;
}

PairDerivation commutator(const PairDerivation& x, const PairDerivation& y) {
    check_compatible(x, y);
    const Truncation& tr = x.tr;
    PairDerivation out = PairDerivation::zero(tr, x.e);
    for (std::size_t b = 0; b < tr.p; ++b) {
        out.base_images[b] = x.apply(y.base_images[b]) - y.apply(x.base_images[b]);
    }
    for (std::size_t a = 0; a < tr.q; ++a) {
        out.normal_images[a] = x.apply(y.normal_images[a]) - y.apply(x.normal_images[a]);
    }
    // [x,y](eps) = x(M_y eps) - y(M_x eps) = phi_x(M_y) - phi_y(M_x) + [M_x, M_y].
    out.module_matrix = x.apply_entrywise(y.module_matrix) - y.apply_entrywise(x.module_matrix) +
                        mul(x.module_matrix, y.module_matrix, tr) - mul(y.module_matrix, x.module_matrix, tr);
    return out;
}

PairDerivation leibniz_extend(const PairDerivation& d, const Connection& conn) {
    if (conn.p() != d.tr.p) throw DimensionMismatch("connection has wrong number of components");
    PairDerivation out = d;
    out.module_matrix = PolyMatrix(d.e, d.e, d.tr.nvars());
    for (std::size_t b = 0; b < d.tr.p; ++b) {
        if (conn.gamma[b].rows() != d.e) throw DimensionMismatch("connection matrix rank differs");
        out.module_matrix += mul(PolyMatrix::scalar(d.e, d.base_images[b]), conn.gamma[b], d.tr);
    }
    return out;
}

PairDerivation endomorphism(const Truncation& tr, const PolyMatrix& m) {
    PairDerivation d = PairDerivation::zero(tr, m.rows());
    d.module_matrix = truncate(m, tr);
    return d;
}

}  // namespace nbhd::geom
