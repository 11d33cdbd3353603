#include "nbhd/cech/cochain.hpp"

#include "nbhd/cech/parallel.hpp"
#include "nbhd/error.hpp"

namespace nbhd::cech {

std::string kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::End: return "end";
        case ValueKind::Vector: return "vector";
        case ValueKind::Scalar: return "scalar";
        case ValueKind::Form: return "form";
    }
    return "?";
}

std::pair<std::size_t, std::size_t> value_shape(ValueKind kind, std::size_t e, std::size_t p) {
    switch (kind) {
        case ValueKind::End: return {e, e};
        case ValueKind::Vector: return {e, 1};
        case ValueKind::Scalar: return {1, 1};
        case ValueKind::Form: return {p, 1};
    }
    return {0, 0};
}

CechCochain CechCochain::zero(const CoverNerve& nerve, std::size_t e, int degree, ValueKind kind, int weight) {
    CechCochain c;
    c.degree = degree;
    c.kind = kind;
    c.weight = weight;
    const auto [r, k] = value_shape(kind, e, nerve.tr.p);
    c.values.assign(nerve.count(degree), PolyMatrix(r, k, nerve.tr.nvars()));
    return c;
}

bool CechCochain::is_zero() const {
    for (const auto& v : values) {
        if (!v.is_zero()) return false;
    }
    return true;
}

namespace {
void check_compatible(const CechCochain& a, const CechCochain& b) {
    if (a.degree != b.degree || a.kind != b.kind || a.values.size() != b.values.size()) {
        throw DimensionMismatch("cochains of different shape");
    }
}
}  // namespace

CechCochain& CechCochain::operator+=(const CechCochain& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

CechCochain& CechCochain::operator-=(const CechCochain& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

CechCochain& CechCochain::operator*=(const Rational& c) {
    for (auto& v : values) v *= c;
    return *this;
}

PolyMatrix transport(const CoverNerve& nerve, const BundleData& bundle, std::size_t i, std::size_t j, ValueKind kind,
                     const PolyMatrix& value) {
    switch (kind) {
        case ValueKind::Scalar: return linear_substitute(nerve, i, j, value);
        case ValueKind::Vector: return bundle.transition(i, j) * linear_substitute(nerve, i, j, value);
        case ValueKind::End:
            return bundle.transition(i, j) * linear_substitute(nerve, i, j, value) * inverse_frame(nerve, bundle, i, j);
        case ValueKind::Form: {
            const auto& jac = nerve.linear_model(i, j).jacobian;
            const PolyMatrix pulled = linear_substitute(nerve, i, j, value);
            return jac * pulled;
        }
    }
    throw DimensionMismatch("unknown value kind");
}

CechCochain cech_differential(const CoverNerve& nerve, const BundleData& bundle, const CechCochain& c,
                              std::size_t workers) {
    if (c.degree < 0 || c.degree > 2) throw DimensionMismatch("differential defined on degrees 0..2");
    if (c.values.size() != nerve.count(c.degree)) throw DimensionMismatch("cochain does not match the nerve");
    CechCochain out = CechCochain::zero(nerve, bundle.e, c.degree + 1, c.kind, c.weight);
    const auto& targets = nerve.of_degree(c.degree + 1);
    out.values = parallel_map<PolyMatrix>(targets.size(), workers, [&](std::size_t t) {
        const auto& ch = targets[t].charts;
        PolyMatrix acc = out.values[t];
        for (std::size_t k = 0; k < ch.size(); ++k) {
            std::vector<std::size_t> face = ch;
            face.erase(face.begin() + static_cast<long>(k));
            const auto idx = nerve.index(face);
            if (!idx) throw FrameMismatch("missing face of a simplex");
            PolyMatrix v = c.values[*idx];
            if (k == 0) v = transport(nerve, bundle, ch[0], ch[1], c.kind, v);
            if (k % 2 == 0) {
                acc += v;
            } else {
                acc -= v;
            }
        }
        return acc;
    });
    return out;
}

bool values_in_ring(const CoverNerve& nerve, const CechCochain& c) {
    const auto& simplices = nerve.of_degree(c.degree);
    for (std::size_t s = 0; s < c.values.size(); ++s) {
        const auto& v = c.values[s];
        for (std::size_t r = 0; r < v.rows(); ++r) {
            for (std::size_t k = 0; k < v.cols(); ++k) {
                if (!nerve.in_ring(simplices[s], v(r, k))) return false;
            }
        }
    }
    return true;
}

}  // namespace nbhd::cech
