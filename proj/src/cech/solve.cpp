#include "nbhd/cech/solve.hpp"

#include "nbhd/cech/parallel.hpp"
#include "nbhd/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace nbhd::cech {

namespace {

using Column = std::vector<std::pair<CellKey, Rational>>;

void base_exponents(const Simplex& s, std::size_t p, int radius, std::size_t b, exact::Exponent& cur,
                    std::vector<exact::Exponent>& out) {
    if (b == p) {
        out.push_back(cur);
        return;
    }
    const bool inv = std::binary_search(s.inverted.begin(), s.inverted.end(), b);
    for (int x = inv ? -radius : 0; x <= radius; ++x) {
        cur[b] = x;
        base_exponents(s, p, radius, b + 1, cur, out);
    }
}

std::size_t rank_of(const std::vector<Column>& cols, const std::function<bool(const CellKey&)>& keep) {
    std::map<CellKey, std::size_t> index;
    for (const auto& col : cols) {
        for (const auto& [k, v] : col) {
            if (keep(k)) index.emplace(k, 0);
        }
    }
    std::size_t n = 0;
    for (auto& [k, i] : index) i = n++;
    std::vector<exact::SparseRow> rows(n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto& [k, v] : cols[c]) {
            if (keep(k)) rows[index.at(k)][c] = v;
        }
    }
    return exact::rank_exact(rows, cols.size());
}

std::vector<CechCochain> zero_blocks(const CoverNerve& nerve, std::size_t e, const std::vector<Block>& blocks) {
    std::vector<CechCochain> out;
    for (const auto& b : blocks) out.push_back(CechCochain::zero(nerve, e, b.degree, b.kind, b.weight));
    return out;
}

bool all_zero(const std::vector<CechCochain>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const CechCochain& c) { return c.is_zero(); });
}

struct Assembled {
    exact::Solution solution;
    std::size_t equations = 0;
};

/// op(x) = -rhs over the window basis.
Assembled solve_window(const std::vector<Column>& cols, const std::vector<std::pair<CellKey, Rational>>& rhs) {
    std::map<CellKey, std::size_t> index;
    for (const auto& col : cols) {
        for (const auto& [k, v] : col) index.emplace(k, 0);
    }
    for (const auto& [k, v] : rhs) index.emplace(k, 0);
    std::size_t n = 0;
    for (auto& [k, i] : index) i = n++;
    std::vector<exact::SparseRow> rows(n);
    std::vector<Rational> b(n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto& [k, v] : cols[c]) rows[index.at(k)][c] = v;
    }
    for (const auto& [k, v] : rhs) b[index.at(k)] = -v;
    auto sys = exact::ExactLinearSystem::with_columns(cols.size());
    for (std::size_t r = 0; r < n; ++r) sys.add_equation(std::move(rows[r]), b[r]);
    return {exact::solve_exact(sys), n};
}

std::optional<exact::Exponent> single_exponent(const LaurentPoly& f) {
    if (!f.is_monomial()) return std::nullopt;
    return f.terms().begin()->first;
}

int transport_slack(const CoverNerve& nerve, const BundleData& bundle) {
    int slack = 0;
    auto scan = [&](const LaurentPoly& f) {
        for (const auto& [ex, v] : f.terms()) {
            for (std::size_t b = 0; b < nerve.tr.p; ++b) slack = std::max(slack, std::abs(ex[b]));
        }
    };
    for (const auto& [key, g] : bundle.g) {
        for (std::size_t r = 0; r < g.rows(); ++r) {
            for (std::size_t c = 0; c < g.cols(); ++c) scan(g(r, c));
        }
    }
    for (const auto& [key, lin] : nerve.linear) {
        for (const auto& f : lin.images) scan(f);
    }
    return slack;
}

}  // namespace

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "Solved";
        case SolveStatus::ProvenNonzero: return "ProvenNonzero";
        case SolveStatus::UnresolvedWithinWindow: return "UnresolvedWithinWindow";
    }
    return "?";
}

std::vector<CellKey> window_basis(const CoverNerve& nerve, std::size_t e, const std::vector<Block>& blocks,
                                  const Window& w) {
    const std::size_t p = nerve.tr.p, q = nerve.tr.q;
    std::vector<CellKey> out;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& blk = blocks[bi];
        const auto [rows, cols] = value_shape(blk.kind, e, p);
        const auto tmons = geom::sym_basis(q, blk.weight);
        const auto& simplices = nerve.of_degree(blk.degree);
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            std::vector<exact::Exponent> bases;
            exact::Exponent cur(p, 0);
            base_exponents(simplices[s], p, w.radius, 0, cur, bases);
            for (std::size_t entry = 0; entry < rows * cols; ++entry) {
                for (const auto& be : bases) {
                    for (const auto& te : tmons) {
                        exact::Exponent full = be;
                        full.insert(full.end(), te.begin(), te.end());
                        out.push_back(CellKey{bi, s, entry, std::move(full)});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<CellKey, Rational>> coordinates(const std::vector<CechCochain>& cs) {
    std::vector<std::pair<CellKey, Rational>> out;
    for (std::size_t bi = 0; bi < cs.size(); ++bi) {
        for (std::size_t s = 0; s < cs[bi].values.size(); ++s) {
            const auto& m = cs[bi].values[s];
            for (std::size_t r = 0; r < m.rows(); ++r) {
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    for (const auto& [ex, v] : m(r, c).terms()) out.push_back({CellKey{bi, s, r * m.cols() + c, ex}, v});
                }
            }
        }
    }
    return out;
}

std::vector<CechCochain> from_coordinates(const CoverNerve& nerve, std::size_t e, const std::vector<Block>& blocks,
                                          const std::vector<CellKey>& basis, const std::vector<Rational>& x) {
    auto out = zero_blocks(nerve, e, blocks);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (x[i].is_zero()) continue;
        const auto& k = basis[i];
        auto& m = out[k.block].values[k.simplex];
        m(k.entry / m.cols(), k.entry % m.cols()).add_term(k.exponent, x[i]);
    }
    return out;
}

std::vector<Column> assemble(const CoverNerve& nerve, std::size_t e, const std::vector<Block>& blocks,
                             const std::vector<CellKey>& basis, const LinearOp& op, std::size_t workers) {
    const auto zeros = zero_blocks(nerve, e, blocks);
    return parallel_map<Column>(basis.size(), workers, [&](std::size_t i) {
        auto unit = zeros;
        const auto& k = basis[i];
        auto& m = unit[k.block].values[k.simplex];
        m(k.entry / m.cols(), k.entry % m.cols()).add_term(k.exponent, Rational(1));
        return coordinates(op(unit));
    });
}

long window_cohomology(const CoverNerve& nerve, const BundleData& bundle, int degree, ValueKind kind, int weight,
                       const Window& w, std::size_t workers) {
    const std::size_t e = bundle.e;
    const std::vector<Block> top{{degree, kind, weight}};
    const auto basis = window_basis(nerve, e, top, w);
    const LinearOp delta = [&](const std::vector<CechCochain>& x) {
        return std::vector<CechCochain>{cech_differential(nerve, bundle, x[0])};
    };
    long dim = static_cast<long>(basis.size());
    if (nerve.count(degree + 1) > 0) {
        dim -= static_cast<long>(rank_of(assemble(nerve, e, top, basis, delta, workers), [](const CellKey&) { return true; }));
    }
    if (degree >= 1) {
        // preimages of window monomials under monomial transports sit in a wider box
        const Window wide{2 * (w.radius + transport_slack(nerve, bundle))};
        const std::vector<Block> below{{degree - 1, kind, weight}};
        const auto cols = assemble(nerve, e, below, window_basis(nerve, e, below, wide), delta, workers);
        const std::set<CellKey> inside(basis.begin(), basis.end());
        const auto all = rank_of(cols, [](const CellKey&) { return true; });
        const auto outside = rank_of(cols, [&](const CellKey& k) { return !inside.contains(k); });
        dim -= static_cast<long>(all - outside);
    }
    return dim;
}

std::vector<Witness> unreachable_witnesses(const CoverNerve& nerve, const BundleData& bundle, const CechCochain& c) {
    if (c.degree < 1 || !is_monomial(nerve, bundle)) return {};
    const std::size_t n = nerve.tr.nvars();
    for (const auto& [key, g] : bundle.g) {
        for (std::size_t r = 0; r < bundle.e; ++r) {
            if (!single_exponent(g(r, r))) return {};
        }
    }
    std::vector<Witness> out;
    const auto& targets = nerve.of_degree(c.degree);
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& T = targets[t];
        const std::size_t i = T.charts[0], j = T.charts[1];
        const auto& lin = nerve.linear_model(i, j);
        std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
        for (std::size_t x = 0; x < n; ++x) {
            const auto ex = single_exponent(lin.images[x]);
            if (!ex) return {};
            for (std::size_t y = 0; y < n; ++y) M[y][x] = Rational((*ex)[y]);
        }
        const PolyMatrix& g = bundle.transition(i, j);
        const PolyMatrix& jac = lin.jacobian;
        if (c.kind == ValueKind::Form) {
            // only diagonal monomial jacobians keep forms monomial
            for (std::size_t r = 0; r < jac.rows(); ++r) {
                for (std::size_t b = 0; b < jac.cols(); ++b) {
                    if (r == b ? !single_exponent(jac(r, b)) : !jac(r, b).is_zero()) return {};
                }
            }
        }
        const auto& m = c.values[t];
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t col = 0; col < m.cols(); ++col) {
                exact::Exponent shift(n, 0);
                if (c.kind == ValueKind::Form) {
                    const auto jr = *single_exponent(jac(r, r));
                    for (std::size_t y = 0; y < n; ++y) shift[y] += jr[y];
                } else if (c.kind != ValueKind::Scalar) {
                    const auto gr = *single_exponent(g(r, r));
                    for (std::size_t y = 0; y < n; ++y) shift[y] += gr[y];
                }
                if (c.kind == ValueKind::End) {
                    const auto gc = *single_exponent(g(col, col));
                    for (std::size_t y = 0; y < n; ++y) shift[y] -= gc[y];
                }
                for (const auto& [alpha, coeff] : m(r, col).terms()) {
                    bool reachable = false;
                    for (std::size_t k = 0; k < T.charts.size() && !reachable; ++k) {
                        std::vector<std::size_t> face = T.charts;
                        face.erase(face.begin() + static_cast<long>(k));
                        const Simplex& F = nerve.of_degree(c.degree - 1)[*nerve.index(face)];
                        if (k > 0) {
                            reachable = nerve.in_ring(F, LaurentPoly::monomial(alpha));
                            continue;
                        }
                        std::vector<Rational> rhs(n);
                        for (std::size_t y = 0; y < n; ++y) rhs[y] = Rational(alpha[y] - shift[y]);
                        const auto sol = exact::solve_exact(exact::ExactLinearSystem::dense(M, rhs));
                        if (sol.rank < n) return {};
                        if (!sol.consistent()) continue;
                        exact::Exponent beta(n);
                        bool integral = true;
                        for (std::size_t y = 0; y < n; ++y) {
                            const Rational& v = (*sol.particular)[y];
                            if (v.denominator() != 1) {
                                integral = false;
                                break;
                            }
                            beta[y] = static_cast<int>(v.numerator().get_si());
                        }
                        reachable = integral && nerve.in_ring(F, LaurentPoly::monomial(beta));
                    }
                    if (!reachable) out.push_back(Witness{T.charts, r, col, alpha, coeff});
                }
            }
        }
    }
    return out;
}

SolveResult solve_coboundary(const CoverNerve& nerve, const BundleData& bundle, const CechCochain& c, const Window& w,
                             std::size_t workers) {
    if (c.degree < 1 || c.degree > 2) throw DimensionMismatch("coboundary solve needs a 1- or 2-cochain");
    if (nerve.count(c.degree + 1) > 0 && !cech_differential(nerve, bundle, c, workers).is_zero()) {
        throw NotClosed("obstruction cochain is not closed");
    }
    SolveResult res;
    res.window = w;
    const std::vector<Block> blocks{{c.degree - 1, c.kind, c.weight}};
    const auto basis = window_basis(nerve, bundle.e, blocks, w);
    const LinearOp delta = [&](const std::vector<CechCochain>& x) {
        return std::vector<CechCochain>{cech_differential(nerve, bundle, x[0])};
    };
    const auto cols = assemble(nerve, bundle.e, blocks, basis, delta, workers);
    const auto a = solve_window(cols, coordinates({c}));
    res.unknowns = basis.size();
    res.equations = a.equations;
    res.rank = a.solution.rank;
    if (a.solution.consistent()) {
        auto m = from_coordinates(nerve, bundle.e, blocks, basis, *a.solution.particular);
        if ((cech_differential(nerve, bundle, m[0]) + c).is_zero()) {
            res.status = SolveStatus::Solved;
            res.solution = std::move(m);
            res.torsor_dim = window_cohomology(nerve, bundle, c.degree - 1, c.kind, c.weight, w, workers);
        }
        return res;
    }
    res.witnesses = unreachable_witnesses(nerve, bundle, c);
    if (!res.witnesses.empty()) res.status = SolveStatus::ProvenNonzero;
    return res;
}

SolveResult solve_abelianized(const CoverNerve& nerve, const BundleData& bundle, const AbelianizedCochain& c,
                              const Window& w, std::size_t workers) {
    SolveResult res;
    res.window = w;
    const std::vector<Block> blocks{{1, ValueKind::End, 1}, {1, ValueKind::Scalar, 2}};
    const auto basis = window_basis(nerve, bundle.e, blocks, w);
    const LinearOp op = [&](const std::vector<CechCochain>& x) {
        const auto d = abelianized_differential(nerve, bundle, AbelianizedCochain{x[0], x[1]});
        return std::vector<CechCochain>{d.linear, d.trace};
    };
    const auto cols = assemble(nerve, bundle.e, blocks, basis, op, workers);
    const auto a = solve_window(cols, coordinates({c.linear, c.trace}));
    res.unknowns = basis.size();
    res.equations = a.equations;
    res.rank = a.solution.rank;
    if (!a.solution.consistent()) return res;
    auto y = from_coordinates(nerve, bundle.e, blocks, basis, *a.solution.particular);
    const auto d = op(y);
    if (all_zero({d[0] + c.linear, d[1] + c.trace})) {
        res.status = SolveStatus::Solved;
        res.solution = std::move(y);
    }
    return res;
}

}  // namespace nbhd::cech
