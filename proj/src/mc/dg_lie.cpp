#include "nbhd/mc/dg_lie.hpp"

#include "nbhd/error.hpp"
#include "nbhd/exact/linear_system.hpp"

#include <algorithm>

namespace nbhd::mc {

namespace {

int sign(int a) { return (a % 2 == 0) ? 1 : -1; }

std::string vec_str(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

}  // namespace

Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    Vector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    Vector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

Vector scale(const Rational& c, const Vector& a) {
    Vector out = a;
    for (auto& x : out) x *= c;
    return out;
}

bool is_zero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& r) { return r.is_zero(); });
}

Vector mat_vec(const Matrix& m, const Vector& x) {
    Vector out(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.size()) throw DimensionMismatch("matrix-vector shapes differ");
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (!x[j].is_zero() && !m[i][j].is_zero()) out[i] += m[i][j] * x[j];
        }
    }
    return out;
}

GradedDgLie::GradedDgLie(std::vector<int> degrees, Matrix d, std::vector<std::vector<Vector>> bracket,
                         std::vector<int> weights)
    : degrees_(std::move(degrees)), weights_(std::move(weights)), d_(std::move(d)), bracket_(std::move(bracket)) {
    if (weights_.empty()) weights_.assign(degrees_.size(), 0);
    validate();
}

std::vector<std::size_t> GradedDgLie::basis_of_degree(int deg) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (degrees_[i] == deg) out.push_back(i);
    }
    return out;
}

Vector GradedDgLie::unit(std::size_t i) const {
    Vector v = zero();
    v.at(i) = Rational(1);
    return v;
}

Vector GradedDgLie::d(const Vector& x) const { return mat_vec(d_, x); }

Vector GradedDgLie::bracket(const Vector& x, const Vector& y) const {
    if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("vector length differs from algebra");
    Vector out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero()) continue;
            const Rational c = x[i] * y[j];
            const Vector& b = bracket_[i][j];
            for (std::size_t k = 0; k < dim(); ++k) {
                if (!b[k].is_zero()) out[k] += c * b[k];
            }
        }
    }
    return out;
}

bool GradedDgLie::is_homogeneous(const Vector& x, int deg) const {
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!x[i].is_zero() && degrees_[i] != deg) return false;
    }
    return true;
}

void GradedDgLie::validate() const {
    const std::size_t n = dim();
    if (d_.size() != n || bracket_.size() != n || weights_.size() != n) {
        throw InvalidAlgebra("structure tables do not match the basis size");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d_[i].size() != n || bracket_[i].size() != n) throw InvalidAlgebra("ragged structure table");
        for (std::size_t j = 0; j < n; ++j) {
            if (bracket_[i][j].size() != n) throw InvalidAlgebra("ragged structure table");
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_homogeneous(d(unit(j)), degrees_[j] + 1)) {
            throw InvalidAlgebra("d e_" + std::to_string(j) + " is not of degree +1");
        }
        if (!is_zero(d(d(unit(j))))) throw InvalidAlgebra("d^2 e_" + std::to_string(j) + " != 0");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int di = degrees_[i], dj = degrees_[j];
            const Vector& b = bracket_[i][j];
            if (!is_homogeneous(b, di + dj)) {
                throw InvalidAlgebra("[e_" + std::to_string(i) + ", e_" + std::to_string(j) + "] has wrong degree");
            }
            if (b != scale(Rational(-sign(di * dj)), bracket_[j][i])) {
                throw InvalidAlgebra("bracket not graded antisymmetric at (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");
            }
            // d[x, y] = [dx, y] + (-1)^|x| [x, dy]
            const Vector lhs = d(b);
            const Vector rhs = add(bracket(d(unit(i)), unit(j)), scale(Rational(sign(di)), bracket(unit(i), d(unit(j)))));
            if (lhs != rhs) {
                throw InvalidAlgebra("d is not a derivation on (" + std::to_string(i) + ", " + std::to_string(j) +
                                     ")");
            }
            for (std::size_t k = 0; k < n; ++k) {
                // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                const Vector l = bracket(unit(i), bracket(unit(j), unit(k)));
                const Vector r = add(bracket(b, unit(k)),
                                     scale(Rational(sign(di * dj)), bracket(unit(j), bracket(unit(i), unit(k)))));
                if (l != r) {
                    throw InvalidAlgebra("Jacobi fails on (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                         std::to_string(k) + "): " + vec_str(sub(l, r)));
                }
            }
        }
    }
}

McCheck is_mc(const GradedDgLie& g, const Vector& phi) {
    if (!g.is_homogeneous(phi, 1)) throw DimensionMismatch("MC candidate is not of degree 1");
    McCheck out;
    out.witness = add(g.d(phi), scale(Rational(1, 2), g.bracket(phi, phi)));
    out.holds = is_zero(out.witness);
    return out;
}

AbelianExtension::AbelianExtension(GradedDgLie hat_, std::vector<std::size_t> kernel_, GradedDgLie base_,
                                   Matrix projection_, Matrix section_)
    : hat(std::move(hat_)),
      kernel(std::move(kernel_)),
      base(std::move(base_)),
      projection(std::move(projection_)),
      section(std::move(section_)) {
    const std::size_t n = hat.dim(), m = base.dim();
    if (projection.size() != m || section.size() != n) throw InvalidAlgebra("projection/section shapes");
    for (auto k : kernel) {
        if (k >= n) throw InvalidAlgebra("kernel index out of range");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (mat_vec(projection, mat_vec(section, base.unit(i))) != base.unit(i)) {
            throw InvalidAlgebra("section is not a right inverse of the projection");
        }
        if (!hat.is_homogeneous(s(base.unit(i)), base.degree(i))) throw InvalidAlgebra("section changes degree");
    }
    for (auto k : kernel) {
        if (!is_zero(pi(hat.unit(k)))) throw InvalidAlgebra("projection does not kill E");
        if (!in_kernel(hat.d(hat.unit(k)))) throw InvalidAlgebra("E is not d-stable");
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_kernel(hat.bracket(hat.unit(i), hat.unit(k)))) throw InvalidAlgebra("E is not an ideal");
        }
        for (auto l : kernel) {
            if (!is_zero(hat.bracket(hat.unit(k), hat.unit(l)))) throw InvalidAlgebra("E is not abelian");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (pi(hat.d(hat.unit(i))) != base.d(pi(hat.unit(i)))) throw InvalidAlgebra("projection does not commute with d");
        for (std::size_t j = 0; j < n; ++j) {
            if (pi(hat.bracket(hat.unit(i), hat.unit(j))) != base.bracket(pi(hat.unit(i)), pi(hat.unit(j)))) {
                throw InvalidAlgebra("projection is not a bracket morphism");
            }
        }
    }
    // exactness: dim E + dim L = dim hat
    if (kernel.size() + m != n) throw InvalidAlgebra("dim E + dim L != dim hat");
}

bool AbelianExtension::in_kernel(const Vector& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero() && std::find(kernel.begin(), kernel.end(), i) == kernel.end()) return false;
    }
    return true;
}

std::vector<std::size_t> AbelianExtension::kernel_of_degree(int deg) const {
    std::vector<std::size_t> out;
    for (auto k : kernel) {
        if (hat.degree(k) == deg) out.push_back(k);
    }
    return out;
}

Vector delta1(const AbelianExtension& ext, const Vector& x) {
    return sub(ext.hat.d(ext.s(x)), ext.s(ext.base.d(x)));
}

Vector delta2(const AbelianExtension& ext, const Vector& x, const Vector& y) {
    return sub(ext.hat.bracket(ext.s(x), ext.s(y)), ext.s(ext.base.bracket(x, y)));
}

Defects defects(const AbelianExtension& ext) {
    Defects out;
    const std::size_t m = ext.base.dim();
    for (std::size_t i = 0; i < m; ++i) {
        Vector v = delta1(ext, ext.base.unit(i));
        if (!ext.in_kernel(v)) throw SectionNotValued("Delta_1(e_" + std::to_string(i) + ") leaves E: " + vec_str(v));
        out.delta1.push_back(std::move(v));
    }
    out.delta2.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Vector v = delta2(ext, ext.base.unit(i), ext.base.unit(j));
            if (!ext.in_kernel(v)) {
                throw SectionNotValued("Delta_2(e_" + std::to_string(i) + ", e_" + std::to_string(j) +
                                       ") leaves E: " + vec_str(v));
            }
            out.delta2[i].push_back(std::move(v));
        }
    }
    return out;
}

namespace {

Vector twisted_d(const AbelianExtension& ext, const Vector& phi, const Vector& alpha) {
    return add(ext.hat.d(alpha), ext.hat.bracket(ext.s(phi), alpha));
}

}  // namespace

Vector lift_residual(const AbelianExtension& ext, const Vector& phi, const Vector& alpha) {
    const McCheck mc = is_mc(ext.base, phi);
    if (!mc.holds) throw NotMaurerCartan("phi is not Maurer-Cartan in L; residual " + vec_str(mc.witness));
    if (!ext.in_kernel(alpha) || !ext.hat.is_homogeneous(alpha, 1)) {
        throw DimensionMismatch("alpha must be a degree-1 element of E");
    }
    Vector out = twisted_d(ext, phi, alpha);
    out = add(out, delta1(ext, phi));
    return add(out, scale(Rational(1, 2), delta2(ext, phi, phi)));
}

std::optional<Vector> solve_lift(const AbelianExtension& ext, const Vector& phi) {
    const auto e1 = ext.kernel_of_degree(1);
    const Vector r0 = lift_residual(ext, phi, ext.hat.zero());
    auto sys = exact::ExactLinearSystem::with_columns(e1.size());
    std::vector<Vector> cols;
    for (auto k : e1) cols.push_back(twisted_d(ext, phi, ext.hat.unit(k)));
    for (std::size_t row = 0; row < ext.hat.dim(); ++row) {
        exact::SparseRow r;
        for (std::size_t c = 0; c < e1.size(); ++c) {
            if (!cols[c][row].is_zero()) r[c] = cols[c][row];
        }
        sys.add_equation(std::move(r), -r0[row]);
    }
    const auto sol = exact::solve_exact(sys);
    if (!sol.consistent()) return std::nullopt;
    Vector alpha = ext.hat.zero();
    for (std::size_t c = 0; c < e1.size(); ++c) alpha[e1[c]] = (*sol.particular)[c];
    return alpha;
}

namespace {

Rational rnd(std::mt19937& rng, int range = 3) {
    return Rational(std::uniform_int_distribution<int>(-range, range)(rng),
                    std::uniform_int_distribution<int>(1, 2)(rng));
}

Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, Vector(c, Rational(0))); }

std::vector<std::vector<Vector>> zero_bracket(std::size_t n) {
    return std::vector<std::vector<Vector>>(n, std::vector<Vector>(n, Vector(n, Rational(0))));
}

}  // namespace

RandomInstance random_central_extension(std::mt19937& rng) {
    // L abelian with d = 0; hat = L + E, E central, [x, y] = omega(x, y), d = eta.
    const std::size_t nl = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const std::size_t ne = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const std::size_t n = nl + ne;
    std::vector<int> deg(n);
    for (std::size_t i = 0; i < nl; ++i) deg[i] = std::uniform_int_distribution<int>(0, 2)(rng);
    for (std::size_t i = nl; i < n; ++i) deg[i] = std::uniform_int_distribution<int>(1, 3)(rng);
    auto br = zero_bracket(n);
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = i; j < nl; ++j) {
            const int target = deg[i] + deg[j];
            const int sg = sign(deg[i] * deg[j]);
            if (i == j && sg == 1) continue;  // forced zero
            for (std::size_t k = nl; k < n; ++k) {
                if (deg[k] != target || rng() % 2) continue;
                const Rational c = rnd(rng);
                br[i][j][k] = c;
                br[j][i][k] = Rational(-sg) * c;
            }
        }
    }
    Matrix d = zeros(n, n);
    for (std::size_t j = 0; j < nl; ++j) {
        for (std::size_t k = nl; k < n; ++k) {
            if (deg[k] == deg[j] + 1 && rng() % 2) d[k][j] = rnd(rng);
        }
    }
    std::vector<int> ldeg(deg.begin(), deg.begin() + static_cast<long>(nl));
    GradedDgLie base(ldeg, zeros(nl, nl), zero_bracket(nl));
    GradedDgLie hat(deg, d, br);
    Matrix proj = zeros(nl, n), sec = zeros(n, nl);
    for (std::size_t i = 0; i < nl; ++i) {
        proj[i][i] = Rational(1);
        sec[i][i] = Rational(1);
        for (std::size_t k = nl; k < n; ++k) {
            if (deg[k] == deg[i] && rng() % 2) sec[k][i] = rnd(rng);  // twist
        }
    }
    std::vector<std::size_t> kernel;
    for (std::size_t k = nl; k < n; ++k) kernel.push_back(k);
    AbelianExtension ext(std::move(hat), kernel, std::move(base), proj, sec);
    Vector phi = ext.base.zero();
    if (rng() % 4 != 0) {
        for (auto i : ext.base.basis_of_degree(1)) phi[i] = rnd(rng);
    }
    return RandomInstance{std::move(ext), std::move(phi)};
}

RandomInstance random_semidirect_extension(std::mt19937& rng) {
    // V = <v1..v4> of degrees (2,1,1,0); L = strictly upper triangular End(V),
    // hat = L + V, d = [Q, .] with Q odd, Q^2 = 0.
    const std::vector<int> vdeg{2, 1, 1, 0};
    const std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const std::size_t nl = pairs.size(), n = nl + 4;
    std::vector<int> deg(n);
    for (std::size_t a = 0; a < nl; ++a) deg[a] = vdeg[pairs[a].first] - vdeg[pairs[a].second];
    for (std::size_t k = 0; k < 4; ++k) deg[nl + k] = vdeg[k];
    auto index = [&](int i, int j) -> long {
        for (std::size_t a = 0; a < nl; ++a) {
            if (pairs[a] == std::make_pair(i, j)) return static_cast<long>(a);
        }
        return -1;
    };
    // Matrix units: E_ij E_kl = delta_jk E_il, E_ij v_k = delta_jk v_i.
    auto br = zero_bracket(n);
    for (std::size_t a = 0; a < nl; ++a) {
        for (std::size_t b = 0; b < nl; ++b) {
            const int sg = sign(deg[a] * deg[b]);
            auto [i, j] = pairs[a];
            auto [k, l] = pairs[b];
            if (j == k) br[a][b][static_cast<std::size_t>(index(i, l))] += Rational(1);
            if (l == i) br[a][b][static_cast<std::size_t>(index(k, j))] -= Rational(sg);
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (pairs[a].second == static_cast<int>(k)) {
                const std::size_t target = nl + static_cast<std::size_t>(pairs[a].first);
                br[a][nl + k][target] += Rational(1);
                br[nl + k][a][target] -= Rational(sign(deg[a] * deg[nl + k]));
            }
        }
    }
    // Q = a E12 + b E13 + c E24 + e E34 with a c + b e = 0.
    Rational qa = rnd(rng), qb, qc = rnd(rng);
    do {
        qb = rnd(rng);
    } while (qb.is_zero());
    const Rational qe = -(qa * qc) / qb;
    Vector q(n, Rational(0));
    q[static_cast<std::size_t>(index(0, 1))] = qa;
    q[static_cast<std::size_t>(index(0, 2))] = qb;
    q[static_cast<std::size_t>(index(1, 3))] = qc;
    q[static_cast<std::size_t>(index(2, 3))] = qe;
    // d x = [Q, x] computed with the bracket table (Q lies in L itself).
    Matrix d = zeros(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(n, Rational(0));
        for (std::size_t a = 0; a < n; ++a) {
            if (q[a].is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) col[k] += q[a] * br[a][j][k];
        }
        for (std::size_t k = 0; k < n; ++k) d[k][j] = col[k];
    }
    std::vector<int> ldeg(deg.begin(), deg.begin() + static_cast<long>(nl));
    auto lbr = zero_bracket(nl);
    Matrix ld = zeros(nl, nl);
    for (std::size_t a = 0; a < nl; ++a) {
        for (std::size_t b = 0; b < nl; ++b) {
            for (std::size_t c = 0; c < nl; ++c) lbr[a][b][c] = br[a][b][c];
            ld[a][b] = d[a][b];
        }
    }
    GradedDgLie base(ldeg, ld, lbr);
    GradedDgLie hat(deg, d, br);
    Matrix proj = zeros(nl, n), sec = zeros(n, nl);
    for (std::size_t a = 0; a < nl; ++a) {
        proj[a][a] = Rational(1);
        sec[a][a] = Rational(1);
        for (std::size_t k = nl; k < n; ++k) {
            if (deg[k] == deg[a] && rng() % 2) sec[k][a] = rnd(rng);
        }
    }
    std::vector<std::size_t> kernel{nl, nl + 1, nl + 2, nl + 3};
    AbelianExtension ext(std::move(hat), kernel, std::move(base), proj, sec);
    // MC in L: (Q + phi)^2 = 0 on the E14 entry.
    Vector phi = ext.base.zero();
    if (rng() % 5 != 0) {
        const Rational x1 = rnd(rng), x3 = rnd(rng);
        Rational x2;
        do {
            x2 = rnd(rng);
        } while ((qb + x2).is_zero());
        const Rational x4 = -((qa + x1) * (qc + x3)) / (qb + x2) - qe;
        phi[static_cast<std::size_t>(index(0, 1))] = x1;
        phi[static_cast<std::size_t>(index(0, 2))] = x2;
        phi[static_cast<std::size_t>(index(1, 3))] = x3;
        phi[static_cast<std::size_t>(index(2, 3))] = x4;
    }
    return RandomInstance{std::move(ext), std::move(phi)};
}

}  // namespace nbhd::mc
