#include "nbhd/error.hpp"
#include "nbhd/scenario/scenario.hpp"
#include "nbhd/testing/random.hpp"

namespace nbhd::scenario {

namespace {

LaurentPoly mono(std::size_t n, std::size_t var, int power) {
    exact::Exponent e(n, 0);
    e[var] = power;
    return LaurentPoly::monomial(e);
}

geom::FilteredAutomorphism as_map(const std::vector<LaurentPoly>& images, const geom::Truncation& tr) {
    geom::FilteredAutomorphism a = geom::FilteredAutomorphism::identity(tr, 0);
    for (std::size_t b = 0; b < tr.p; ++b) a.base_images[b] = images[b];
    for (std::size_t c = 0; c < tr.q; ++c) a.normal_images[c] = images[tr.p + c];
    return a;
}

std::vector<LaurentPoly> images_of(const geom::FilteredAutomorphism& a) {
    std::vector<LaurentPoly> out = a.base_images;
    out.insert(out.end(), a.normal_images.begin(), a.normal_images.end());
    return out;
}

void trivial_connections(Scenario& s) {
    for (std::size_t i = 0; i < s.charts.size(); ++i) {
        s.connections.push_back(geom::Connection::trivial(s.p(), s.e, s.p() + s.q()));
        s.flat.push_back(true);
    }
}

}  // namespace

cech::CoverNerve make_nerve(const Scenario& s) { return cech::build_nerve(s.charts, s.transitions, s.order); }

cech::BundleData make_bundle(const Scenario& s) {
    cech::BundleData b;
    b.e = s.e;
    b.g = s.bundle_transitions;
    b.connections = s.connections;
    b.flat = s.flat;
    return b;
}

Scenario projective_neighborhood(std::size_t n, const std::vector<int>& normal_twists,
                                 const std::vector<int>& bundle_twists, int order) {
    Scenario s;
    s.order = order;
    s.target_order = std::min(order, 2);
    s.e = bundle_twists.size();
    const std::size_t q = normal_twists.size();
    const std::size_t nv = n + q;
    for (std::size_t i = 0; i <= n; ++i) {
        geom::ChartRing ring;
        for (std::size_t m = 0; m <= n; ++m) {
            if (m != i) ring.base_names.push_back("x" + std::to_string(m) + "/x" + std::to_string(i));
        }
        for (std::size_t a = 0; a < q; ++a) ring.normal_names.push_back("t" + std::to_string(a + 1));
        s.charts.push_back(ring);
    }
    auto pos = [](std::size_t chart, std::size_t m) { return m < chart ? m : m - 1; };
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            if (i == j) continue;
            const std::size_t w = pos(i, j);
            geom::ChartTransition tr;
            for (std::size_t m = 0; m <= n; ++m) {
                if (m == j) continue;
                tr.images.push_back(m == i ? mono(nv, w, -1) : mono(nv, pos(i, m), 1) * mono(nv, w, -1));
            }
            for (std::size_t a = 0; a < q; ++a) tr.images.push_back(mono(nv, n + a, 1) * mono(nv, w, -normal_twists[a]));
            s.transitions[{i, j}] = tr;
            if (i < j) {
                PolyMatrix g(s.e, s.e, nv);
                for (std::size_t r = 0; r < s.e; ++r) g(r, r) = mono(nv, w, bundle_twists[r]);
                s.bundle_transitions[{i, j}] = g;
            }
        }
    }
    trivial_connections(s);
    s.projective = ProjectiveData{n, normal_twists, bundle_twists};
    return s;
}

Scenario diagonal_p1xp1(int d, int order) {
    Scenario s;
    s.name = "diagonal_p1xp1";
    s.description = "diagonal of P1 x P1, t = y - x, E = O(" + std::to_string(d) + ")";
    s.order = order;
    s.target_order = std::min(order, 2);
    s.e = 1;
    s.charts.push_back(geom::ChartRing{{"x"}, {"t"}, {}});
    s.charts.push_back(geom::ChartRing{{"1/x"}, {"s"}, {}});
    // 1/(u+t) - 1/u = sum_{n>=1} (-1)^n t^n u^(-n-1); the same formula in both directions
    LaurentPoly normal(2);
    for (int k = 1; k <= order; ++k) {
        normal.add_term({-k - 1, k}, exact::Rational(k % 2 == 0 ? 1 : -1));
    }
    const geom::ChartTransition tr{{mono(2, 0, -1), normal}};
    s.transitions[{0, 1}] = tr;
    s.transitions[{1, 0}] = tr;
    PolyMatrix g(1, 1, 2);
    g(0, 0) = mono(2, 0, d);
    s.bundle_transitions[{0, 1}] = g;
    trivial_connections(s);
    // the normal bundle of the diagonal is T = O(2)
    s.projective = ProjectiveData{1, {2}, {d}};
    return s;
}

Scenario affine_split(int d, int order) {
    Scenario s;
    s.name = "affine_split";
    s.description = "A1 x 0 in A1 x A1, charts A1 and A1 minus 0, frames differ by x^" + std::to_string(d);
    s.order = order;
    s.target_order = std::min(order, 2);
    s.e = 1;
    s.charts.push_back(geom::ChartRing{{"x"}, {"t"}, {}});
    s.charts.push_back(geom::ChartRing{{"x"}, {"t"}, {0}});
    const geom::ChartTransition id{{mono(2, 0, 1), mono(2, 1, 1)}};
    s.transitions[{0, 1}] = id;
    s.transitions[{1, 0}] = id;
    PolyMatrix g(1, 1, 2);
    g(0, 0) = mono(2, 0, d);
    s.bundle_transitions[{0, 1}] = g;
    trivial_connections(s);
    return s;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"line_in_p2", "hyperplane_p2_in_p3", "diagonal_p1xp1",
                                                "affine_split"};
    return names;
}

Scenario generate_builtin(const std::string& name, int d, int order) {
    if (name == "line_in_p2") {
        Scenario s = projective_neighborhood(1, {1}, {d}, order);
        s.name = name;
        s.description = "line in P2, conormal O(-1), E = O(" + std::to_string(d) + ")";
        return s;
    }
    if (name == "hyperplane_p2_in_p3") {
        Scenario s = projective_neighborhood(2, {1}, {d}, order);
        s.name = name;
        s.description = "plane in P3, conormal O(-1), E = O(" + std::to_string(d) + ")";
        return s;
    }
    if (name == "diagonal_p1xp1") return diagonal_p1xp1(d, order);
    if (name == "affine_split") return affine_split(d, order);
    throw UnknownScenario("'" + name + "'");
}

Scenario perturb_coordinates(const Scenario& s, std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
    const std::size_t p = s.p(), q = s.q();
    const geom::Truncation tr{p, q, s.order, std::nullopt};
    std::vector<geom::FilteredAutomorphism> forward, backward;
    for (std::size_t i = 0; i < s.charts.size(); ++i) {
        std::vector<LaurentPoly> images;
        for (std::size_t b = 0; b < p; ++b) {
            images.push_back(mono(p + q, b, 1) + testing::random_graded_poly(rng, p, q, 1, s.order, 0, 1, 2));
        }
        for (std::size_t a = 0; a < q; ++a) {
            images.push_back(mono(p + q, p + a, 1) + testing::random_graded_poly(rng, p, q, 2, s.order, 0, 1, 2));
        }
        forward.push_back(as_map(images, tr));
        backward.push_back(geom::inverse(forward.back()));
    }
    Scenario out = s;
    out.name = s.name + "~" + std::to_string(seed);
    for (auto& [key, t] : out.transitions) {
        const auto& old = s.transitions.at(key);
        const auto back = images_of(backward[key.first]);
        for (std::size_t y = 0; y < p + q; ++y) {
            const LaurentPoly in_old = geom::substitute_truncated(images_of(forward[key.second])[y], old.images, tr);
            t.images[y] = geom::substitute_truncated(in_old, back, tr);
        }
    }
    return out;
}

Scenario perturb_connections(const Scenario& s, std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
    Scenario out = s;
    const std::size_t p = s.p(), n = s.p() + s.q();
    for (std::size_t i = 0; i < out.connections.size(); ++i) {
        for (auto& g : out.connections[i].gamma) {
            for (std::size_t r = 0; r < s.e; ++r) {
                for (std::size_t c = 0; c < s.e; ++c) g(r, c) += testing::random_graded_poly(rng, p, n - p, 0, 0, 0, 1, 2);
            }
        }
        out.flat[i] = geom::is_flat(out.connections[i]);
    }
    return out;
}

}  // namespace nbhd::scenario
