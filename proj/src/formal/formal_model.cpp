#include "nbhd/formal/formal_model.hpp"

#include "nbhd/error.hpp"
#include "nbhd/testing/random.hpp"

#include <algorithm>

namespace nbhd::formal {

using geom::mul;
using geom::t_part;

namespace {

int end_top(const FormalContext& ctx) { return std::min(ctx.k, 2 * ctx.l + 1); }

LaurentPoly below_poly(const LaurentPoly& f, std::size_t p, int h) {
    return f.filter([p, h](const exact::Exponent& e) { return geom::base_degree(e, p) <= h; });
}

PolyMatrix below_matrix(const PolyMatrix& m, std::size_t p, int h) {
    return m.map([p, h](const LaurentPoly& f) { return below_poly(f, p, h); });
}

FormalDerivation function_part(const FormalDerivation& x) {
    FormalDerivation out = x;
    out.module_matrix = PolyMatrix(x.e, x.e, x.tr.nvars());
    return out;
}

void require_same_shape(const AbelianizedKernel& a, const AbelianizedKernel& b) {
    if (a.end.size() != b.end.size() || a.scalar.size() != b.scalar.size()) {
        throw DimensionMismatch("abelianized kernels of different (l, k)");
    }
}

}  // namespace

AbelianizedKernel AbelianizedKernel::zero(const FormalContext& ctx) {
    AbelianizedKernel a;
    a.p = ctx.disk.p;
    const std::size_t n = ctx.disk.p + ctx.disk.q;
    for (int v = ctx.l + 1; v <= end_top(ctx); ++v) a.end.emplace(v, PolyMatrix(ctx.disk.e, ctx.disk.e, n));
    for (int v = std::max(2 * ctx.l + 2, ctx.l + 1); v <= ctx.k; ++v) a.scalar.emplace(v, LaurentPoly(n));
    return a;
}

bool AbelianizedKernel::is_zero() const {
    return std::all_of(end.begin(), end.end(), [](const auto& kv) { return kv.second.is_zero(); }) &&
           std::all_of(scalar.begin(), scalar.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

AbelianizedKernel AbelianizedKernel::below(int h) const {
    AbelianizedKernel out = *this;
    for (auto& [v, m] : out.end) m = below_matrix(m, p, h);
    for (auto& [v, f] : out.scalar) f = below_poly(f, p, h);
    return out;
}

AbelianizedKernel& AbelianizedKernel::operator+=(const AbelianizedKernel& o) {
    require_same_shape(*this, o);
    for (auto& [v, m] : end) m += o.end.at(v);
    for (auto& [v, f] : scalar) f += o.scalar.at(v);
    return *this;
}

AbelianizedKernel& AbelianizedKernel::operator-=(const AbelianizedKernel& o) {
    require_same_shape(*this, o);
    for (auto& [v, m] : end) m -= o.end.at(v);
    for (auto& [v, f] : scalar) f -= o.scalar.at(v);
    return *this;
}

AbelianizedKernel& AbelianizedKernel::operator*=(const Rational& c) {
    for (auto& [v, m] : end) m *= c;
    for (auto& [v, f] : scalar) f *= c;
    return *this;
}

std::string AbelianizedKernel::str() const {
    std::string s;
    for (const auto& [v, m] : end) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (!m(r, c).is_zero()) s += "End^" + std::to_string(v) + "[" + std::to_string(r) + "," +
                                             std::to_string(c) + "] = " + m(r, c).str() + "; ";
            }
        }
    }
    for (const auto& [v, f] : scalar) {
        if (!f.is_zero()) s += "S^" + std::to_string(v) + " = " + f.str() + "; ";
    }
    return s.empty() ? "0" : s;
}

FormalDerivation bracket(const FormalDerivation& x, const FormalDerivation& y) { return geom::commutator(x, y); }

FormalDerivation project_to(const FormalDerivation& x, int l) {
    FormalDerivation out = x;
    out.module_matrix = x.module_matrix.map([&x, l](const LaurentPoly& f) {
        return f.filter([&x, l](const exact::Exponent& e) { return geom::t_degree(e, x.tr.p) <= l; });
    });
    return out;
}

FormalDerivation bracket_l(const FormalDerivation& x, const FormalDerivation& y, int l) {
    return project_to(geom::commutator(x, y), l);
}

FormalDerivation below(const FormalDerivation& x, int h) {
    FormalDerivation out = x;
    for (auto& f : out.base_images) f = below_poly(f, x.tr.p, h);
    for (auto& f : out.normal_images) f = below_poly(f, x.tr.p, h);
    out.module_matrix = below_matrix(x.module_matrix, x.tr.p, h);
    return out;
}

PolyMatrix connection_part(const FormalDerivation& x, const Connection& conn) {
    return geom::leibniz_extend(x, conn).module_matrix;
}

PolyMatrix e_part(const FormalDerivation& x, const Connection& conn) {
    return x.module_matrix - connection_part(x, conn);
}

FormalDerivation splitting(const FormalDerivation& x, const Connection& conn, int l) {
    FormalDerivation out = project_to(x, l);
    const PolyMatrix n = connection_part(x, conn);
    out.module_matrix += n.map([&x, l](const LaurentPoly& f) {
        return f.filter([&x, l](const exact::Exponent& e) { return geom::t_degree(e, x.tr.p) > l; });
    });
    return out;
}

AbelianizedKernel project(const FormalContext& ctx, const PolyMatrix& m) {
    AbelianizedKernel a = AbelianizedKernel::zero(ctx);
    for (auto& [v, part] : a.end) part = t_part(m, ctx.disk.p, v);
    for (auto& [v, f] : a.scalar) f = t_part(m, ctx.disk.p, v).trace();
    return a;
}

PolyMatrix lift(const FormalContext& ctx, const AbelianizedKernel& a) {
    const std::size_t n = ctx.disk.p + ctx.disk.q;
    PolyMatrix out(ctx.disk.e, ctx.disk.e, n);
    for (const auto& [v, m] : a.end) out += m;
    const Rational inv_e(1, static_cast<long>(ctx.disk.e));
    for (const auto& [v, f] : a.scalar) out += PolyMatrix::scalar(ctx.disk.e, f * inv_e);
    return out;
}

AbelianizedKernel section_defect_cocycle(const FormalContext& ctx, const FormalDerivation& x,
                                         const FormalDerivation& y) {
    const FormalDerivation xl = project_to(x, ctx.l), yl = project_to(y, ctx.l);
    const FormalDerivation sx = splitting(xl, ctx.conn, ctx.l), sy = splitting(yl, ctx.conn, ctx.l);
    const FormalDerivation defect =
        geom::commutator(sx, sy) - splitting(bracket_l(xl, yl, ctx.l), ctx.conn, ctx.l);
    return project(ctx, defect.module_matrix);
}

AbelianizedKernel extension_cocycle(const FormalContext& ctx, const FormalDerivation& x, const FormalDerivation& y) {
    if (!geom::is_flat(ctx.conn)) throw NotFlat("extension cocycle formula needs a flat connection");
    const Truncation tr = ctx.truncation();
    const std::size_t p = ctx.disk.p;
    const PolyMatrix ex = e_part(project_to(x, ctx.l), ctx.conn);
    const PolyMatrix ey = e_part(project_to(y, ctx.l), ctx.conn);
    auto e_at = [&](const PolyMatrix& e, int v) { return t_part(e, p, v); };
    auto s_phi = [&](const FormalDerivation& d, int w) {
        return geom::leibniz_extend(function_part(d.graded(w)), ctx.conn);
    };
    AbelianizedKernel out = AbelianizedKernel::zero(ctx);
    for (auto& [v, m] : out.end) {
        for (int pp = 0; pp <= ctx.l && pp <= v; ++pp) {
            m += geom::commutator(s_phi(x, v - pp), geom::endomorphism(tr, e_at(ey, pp))).module_matrix;
            m -= geom::commutator(s_phi(y, v - pp), geom::endomorphism(tr, e_at(ex, pp))).module_matrix;
        }
        for (int pp = std::max(0, v - ctx.l); pp <= ctx.l; ++pp) {
            const PolyMatrix a = e_at(ex, v - pp), b = e_at(ey, pp);
            m += mul(a, b, tr) - mul(b, a, tr);
        }
        m = t_part(m, p, v);
    }
    for (auto& [v, f] : out.scalar) {
        for (int pp = 0; pp <= ctx.l && pp <= v; ++pp) {
            f += x.graded(v - pp).apply(e_at(ey, pp).trace());
            f -= y.graded(v - pp).apply(e_at(ex, pp).trace());
        }
        f = t_part(f, p, v);
    }
    return out;
}

PolyMatrix splitting_defect(const FormalDerivation& x, const FormalDerivation& y, const Connection& conn) {
    const FormalDerivation fx = function_part(x), fy = function_part(y);
    const FormalDerivation lhs = geom::commutator(geom::leibniz_extend(fx, conn), geom::leibniz_extend(fy, conn));
    const FormalDerivation rhs = geom::leibniz_extend(geom::commutator(fx, fy), conn);
    return (lhs - rhs).module_matrix;
}

PolyMatrix curvature_contraction(const FormalDerivation& x, const FormalDerivation& y, const Connection& conn) {
    const Truncation& tr = x.tr;
    const auto f = geom::curvature(conn);
    PolyMatrix out(x.e, x.e, tr.nvars());
    std::size_t idx = 0;
    for (std::size_t b = 0; b < tr.p; ++b) {
        for (std::size_t c = b + 1; c < tr.p; ++c, ++idx) {
            const LaurentPoly w =
                mul(x.base_images[b], y.base_images[c], tr) - mul(x.base_images[c], y.base_images[b], tr);
            out += mul(PolyMatrix::scalar(x.e, w), f[idx], tr);
        }
    }
    return out;
}

AbelianizedKernel act(const FormalContext& ctx, const FormalDerivation& x, const AbelianizedKernel& m) {
    const FormalDerivation sx = splitting(project_to(x, ctx.l), ctx.conn, ctx.l);
    const FormalDerivation em = geom::endomorphism(ctx.truncation(), lift(ctx, m));
    return project(ctx, geom::commutator(sx, em).module_matrix);
}

AbelianizedKernel RelativeCochain::operator()(std::span<const FormalDerivation> xs) const {
    if (xs.size() != static_cast<std::size_t>(degree)) throw DimensionMismatch("cochain arity mismatch");
    return eval(xs);
}

RelativeCochain lie_differential(const FormalContext& ctx, const RelativeCochain& c, Algebra on) {
    if (c.degree > 2) throw UnsupportedOrder("Lie differential implemented for cochains of degree <= 2");
    RelativeCochain out;
    out.degree = c.degree + 1;
    out.eval = [ctx, c, on](std::span<const FormalDerivation> xs) {
        const std::size_t n = xs.size();
        AbelianizedKernel acc = AbelianizedKernel::zero(ctx);
        auto omit = [&](std::initializer_list<std::size_t> skip) {
            std::vector<FormalDerivation> rest;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::find(skip.begin(), skip.end(), i) == skip.end()) rest.push_back(xs[i]);
            }
            return rest;
        };
        for (std::size_t i = 0; i < n; ++i) {
            const auto rest = omit({i});
            AbelianizedKernel term = act(ctx, xs[i], c(rest));
            acc += Rational(i % 2 == 0 ? 1 : -1) * term;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<FormalDerivation> args;
                args.push_back(on == Algebra::DerL ? bracket_l(xs[i], xs[j], ctx.l) : bracket(xs[i], xs[j]));
                for (auto& r : omit({i, j})) args.push_back(std::move(r));
                acc += Rational((i + j) % 2 == 0 ? 1 : -1) * c(args);
            }
        }
        return acc;
    };
    return out;
}

AbelianizedKernel beta(const FormalContext& ctx, const FormalDerivation& x) {
    return project(ctx, e_part(x, ctx.conn));
}

RelativeCochain beta_cochain(const FormalContext& ctx) {
    return RelativeCochain{1, [ctx](std::span<const FormalDerivation> xs) { return beta(ctx, xs[0]); }};
}

RelativeCochain extension_cochain(const FormalContext& ctx) {
    return RelativeCochain{
        2, [ctx](std::span<const FormalDerivation> xs) { return extension_cocycle(ctx, xs[0], xs[1]); }};
}

RelativeCochain section_defect_cochain(const FormalContext& ctx) {
    return RelativeCochain{
        2, [ctx](std::span<const FormalDerivation> xs) { return section_defect_cocycle(ctx, xs[0], xs[1]); }};
}

PolyMatrix unipotent_inverse(const PolyMatrix& g) {
    const std::size_t e = g.rows();
    const PolyMatrix id = PolyMatrix::identity(e, g.nvars());
    const PolyMatrix nil = g - id;
    PolyMatrix out = id, power = id;
    for (std::size_t j = 1; j < e; ++j) {
        power = power * nil * Rational(-1);
        out += power;
    }
    if (!(out * g == id)) throw NotUnipotent("gauge matrix is not unipotent");
    return out;
}

Connection gauge_connection(const FormalDisk& disk, const PolyMatrix& g, const LaurentPoly& h) {
    const PolyMatrix g_inv = unipotent_inverse(g);
    Connection conn;
    for (std::size_t b = 0; b < disk.p; ++b) {
        const PolyMatrix dg = g.map([b](const LaurentPoly& f) { return f.derivative(b); });
        conn.gamma.push_back(dg * g_inv * Rational(-1) + PolyMatrix::scalar(disk.e, h.derivative(b)));
    }
    return conn;
}

FormalDerivation random_formal_derivation(std::mt19937& rng, const FormalDisk& disk, int k, int module_max,
                                          int coeff_degree) {
    const Truncation tr = disk.truncation(k);
    auto d = PairDerivation::zero(tr, disk.e);
    auto poly = [&](int tmin, int tmax, int terms) {
        LaurentPoly f = testing::random_graded_poly(rng, disk.p, disk.q, tmin, tmax, 0, coeff_degree, terms);
        return below_poly(geom::truncate(f, tr), disk.p, coeff_degree);
    };
    for (auto& f : d.base_images) f = poly(0, k, 3);
    for (auto& f : d.normal_images) f = poly(1, k, 2);
    for (std::size_t r = 0; r < disk.e; ++r) {
        for (std::size_t c = 0; c < disk.e; ++c) d.module_matrix(r, c) = poly(0, std::min(module_max, k), 2);
    }
    return d;
}

PolyMatrix random_gauge(std::mt19937& rng, const FormalDisk& disk) {
    const std::size_t n = disk.p + disk.q;
    PolyMatrix g = PolyMatrix::identity(disk.e, n);
    for (std::size_t r = 0; r < disk.e; ++r) {
        for (std::size_t c = r + 1; c < disk.e; ++c) {
            g(r, c) = testing::random_graded_poly(rng, disk.p, disk.q, 0, 0, 0, 1, 2);
        }
    }
    return g;
}

std::vector<FormalDerivation> der0_generators(const FormalContext& ctx, const std::optional<PolyMatrix>& gauge) {
    const Truncation tr = ctx.truncation();
    std::vector<FormalDerivation> out;
    for (std::size_t b = 0; b < ctx.disk.p; ++b) {
        auto d = PairDerivation::zero(tr, ctx.disk.e);
        d.base_images[b] = LaurentPoly::constant(tr.nvars(), Rational(1));
        out.push_back(geom::leibniz_extend(d, ctx.conn));
    }
    const std::size_t e = ctx.disk.e;
    for (std::size_t r = 0; r < e; ++r) {
        for (std::size_t c = 0; c < e; ++c) {
            PolyMatrix unit(e, e, tr.nvars());
            unit(r, c) = LaurentPoly::constant(tr.nvars(), Rational(1));
            if (gauge) unit = (*gauge) * unit * unipotent_inverse(*gauge);
            out.push_back(geom::endomorphism(tr, unit));
        }
    }
    return out;
}

RelativeVerdict relative_check(const FormalContext& ctx, const RelativeCochain& c,
                               const std::vector<FormalDerivation>& generators,
                               const std::vector<FormalDerivation>& samples, int horizon) {
    RelativeVerdict v;
    auto fail = [&](std::string what, const AbelianizedKernel& val) {
        v.holds = false;
        v.witness = std::move(what) + ": " + val.str();
    };
    if (c.degree == 0) return v;
    for (std::size_t g = 0; g < generators.size() && v.holds; ++g) {
        const auto& z = generators[g];
        if (c.degree == 1) {
            const std::vector<FormalDerivation> args{z};
            const auto val = c(args).below(horizon);
            if (!val.is_zero()) fail("insertion of generator " + std::to_string(g), val);
            continue;
        }
        for (std::size_t i = 0; i < samples.size() && v.holds; ++i) {
            const std::vector<FormalDerivation> ins{z, samples[i]};
            const auto val = c(ins).below(horizon);
            if (!val.is_zero()) {
                fail("insertion of generator " + std::to_string(g) + " against sample " + std::to_string(i), val);
                break;
            }
            for (std::size_t j = i + 1; j < samples.size(); ++j) {
                const std::vector<FormalDerivation> xy{samples[i], samples[j]};
                const std::vector<FormalDerivation> a1{bracket_l(z, samples[i], ctx.l), samples[j]};
                const std::vector<FormalDerivation> a2{samples[i], bracket_l(z, samples[j], ctx.l)};
                const auto inv = (act(ctx, z, c(xy)) - c(a1) - c(a2)).below(horizon);
                if (!inv.is_zero()) {
                    fail("invariance under generator " + std::to_string(g) + " on samples (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")",
                         inv);
                    break;
                }
            }
        }
    }
    return v;
}

}  // namespace nbhd::formal
