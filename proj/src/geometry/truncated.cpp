#include "nbhd/geometry/truncated.hpp"

#include "nbhd/error.hpp"

#include <algorithm>
#include <climits>

namespace nbhd::geom {

int t_degree(const Exponent& e, std::size_t p) {
    int d = 0;
    for (std::size_t i = p; i < e.size(); ++i) d += e[i];
    return d;
}

int base_degree(const Exponent& e, std::size_t p) {
    int d = 0;
    for (std::size_t i = 0; i < p && i < e.size(); ++i) d += e[i];
    return d;
}

LaurentPoly truncate(const LaurentPoly& f, const Truncation& tr) {
    return f.filter([&tr](const Exponent& e) {
        if (t_degree(e, tr.p) > tr.order) return false;
        return !tr.base_order || base_degree(e, tr.p) <= *tr.base_order;
    });
}

PolyMatrix truncate(const PolyMatrix& m, const Truncation& tr) {
    return m.map([&tr](const LaurentPoly& f) { return truncate(f, tr); });
}

ModuleElement truncate(const ModuleElement& v, const Truncation& tr) {
    ModuleElement out;
    out.reserve(v.size());
    for (const auto& f : v) out.push_back(truncate(f, tr));
    return out;
}

LaurentPoly t_part(const LaurentPoly& f, std::size_t p, int v) {
    return f.filter([p, v](const Exponent& e) { return t_degree(e, p) == v; });
}

PolyMatrix t_part(const PolyMatrix& m, std::size_t p, int v) {
    return m.map([p, v](const LaurentPoly& f) { return t_part(f, p, v); });
}

int min_t_degree(const LaurentPoly& f, std::size_t p) {
    int d = INT_MAX;
    for (const auto& [e, c] : f.terms()) d = std::min(d, t_degree(e, p));
    return d;
}

int min_t_degree(const PolyMatrix& m, std::size_t p) {
    int d = INT_MAX;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) d = std::min(d, min_t_degree(m(r, c), p));
    }
    return d;
}

bool is_base_only(const LaurentPoly& f, std::size_t p) {
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [p](const auto& kv) { return t_degree(kv.first, p) == 0; });
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b, const Truncation& tr) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly(tr.nvars());
    // Schoolbook product that skips pairs beyond the truncation.
    LaurentPoly out(tr.nvars());
    Exponent e(tr.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        const int ta = t_degree(ea, tr.p);
        const int ba = base_degree(ea, tr.p);
        for (const auto& [eb, cb] : b.terms()) {
            if (ta + t_degree(eb, tr.p) > tr.order) continue;
            if (tr.base_order && ba + base_degree(eb, tr.p) > *tr.base_order) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b, const Truncation& tr) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shapes differ");
    PolyMatrix out(a.rows(), b.cols(), tr.nvars());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += mul(a(i, k), b(k, j), tr);
        }
    }
    return out;
}

ModuleElement mul(const PolyMatrix& a, const ModuleElement& v, const Truncation& tr) {
    if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shapes differ");
    ModuleElement out(a.rows(), LaurentPoly(tr.nvars()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += mul(a(i, k), v[k], tr);
    }
    return out;
}

ModuleElement scale(const LaurentPoly& f, const ModuleElement& v, const Truncation& tr) {
    ModuleElement out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(mul(f, x, tr));
    return out;
}

ModuleElement add(const ModuleElement& a, const ModuleElement& b) {
    if (a.size() != b.size()) throw DimensionMismatch("module elements of different rank");
    ModuleElement out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

ModuleElement sub(const ModuleElement& a, const ModuleElement& b) {
    if (a.size() != b.size()) throw DimensionMismatch("module elements of different rank");
    ModuleElement out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

bool is_zero(const ModuleElement& v) {
    return std::all_of(v.begin(), v.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

ModuleElement column(const PolyMatrix& m, std::size_t c) {
    ModuleElement out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
    return out;
}

ModuleElement basis_vector(std::size_t e, std::size_t r, std::size_t nvars) {
    ModuleElement v(e, LaurentPoly(nvars));
    v.at(r) = LaurentPoly::constant(nvars, Rational(1));
    return v;
}

LaurentPoly inverse(const LaurentPoly& f, const Truncation& tr) {
    const LaurentPoly lead = t_part(f, tr.p, 0);
    if (!lead.is_monomial()) {
        throw NonInvertibleSubstitution("t-degree-0 part " + lead.str() + " is not a unit");
    }
    const LaurentPoly lead_inv = lead.monomial_inverse();
    // f = lead (1 + n) with n nilpotent; 1/f = lead^{-1} sum (-n)^j.
    const LaurentPoly n = mul(lead_inv, f - lead, tr);
    LaurentPoly sum = LaurentPoly::constant(tr.nvars(), Rational(1));
    LaurentPoly power = sum;
    for (int j = 1; j <= tr.order; ++j) {
        power = mul(power, -n, tr);
        if (power.is_zero()) break;
        sum += power;
    }
    return mul(lead_inv, sum, tr);
}

namespace {

LaurentPoly determinant(const PolyMatrix& m, const Truncation& tr) {
    const std::size_t n = m.rows();
    if (n == 0) return LaurentPoly::constant(tr.nvars(), Rational(1));
    if (n == 1) return m(0, 0);
    LaurentPoly det(tr.nvars());
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        PolyMatrix minor(n - 1, n - 1, tr.nvars());
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == c) continue;
                minor(r - 1, cc++) = m(r, k);
            }
        }
        LaurentPoly term = mul(m(0, c), determinant(minor, tr), tr);
        if (c % 2 == 1) term = -term;
        det += term;
    }
    return det;
}

}  // namespace

PolyMatrix inverse(const PolyMatrix& m, const Truncation& tr) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    const std::size_t n = m.rows();
    const LaurentPoly det_inv = inverse(determinant(m, tr), tr);
    PolyMatrix adj(n, n, tr.nvars());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            PolyMatrix minor(n - 1, n - 1, tr.nvars());
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            LaurentPoly cof = determinant(minor, tr);
            if ((i + j) % 2 == 1) cof = -cof;
            adj(i, j) = mul(cof, det_inv, tr);
        }
    }
    return adj;
}

std::vector<Exponent> sym_basis(std::size_t q, int u) {
    std::vector<Exponent> out;
    if (u < 0) return out;
    Exponent cur(q, 0);
    // Enumerate compositions of u into q parts.
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == q) {
            cur[i] = remaining;
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= remaining; ++x) {
            cur[i] = x;
            self(self, i + 1, remaining - x);
        }
    };
    if (q == 0) {
        if (u == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, u);
    std::sort(out.begin(), out.end(), exact::GrlexLess{});
    return out;
}

Exponent normal_exponent(std::size_t p, const Exponent& t_exp) {
    Exponent e(p, 0);
    e.insert(e.end(), t_exp.begin(), t_exp.end());
    return e;
}

std::vector<std::string> ChartRing::names() const {
    std::vector<std::string> n = base_names;
    n.insert(n.end(), normal_names.begin(), normal_names.end());
    return n;
}

bool ChartRing::contains(const LaurentPoly& f) const {
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= 0) continue;
            if (i >= p() || std::find(inverted.begin(), inverted.end(), i) == inverted.end()) return false;
        }
    }
    return true;
}

}  // namespace nbhd::geom
