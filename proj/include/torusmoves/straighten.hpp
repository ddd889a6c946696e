#pragma once

/**
 * @file straighten.hpp
 * @brief Nearly-straight arrow diagrams: labeled point configurations on the
 *        line, their sorting permutations, and the constructive realization of
 *        a strongly decorated vector configuration by a minimal-length affine
 *        permutation.
 */

#include <torusmoves/affine.hpp>

#include <iterator>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace torusmoves {

/// A labeled point configuration: x(1..n) stored for one period, extended by
/// x(i+n) = x(i)+1.  Generic means no two labeled points coincide.
class PointConfig {
public:
    PointConfig(int n, std::vector<Rat> coords) : n_(n), coords_(std::move(coords)) {
        if (n_ <= 0 || static_cast<int>(coords_.size()) != n_)
            throw std::invalid_argument("PointConfig: need exactly n coordinates");
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                Rat diff = coords_[i] - coords_[j];
                if (diff.denominator() == 1)
                    throw std::invalid_argument("PointConfig: configuration is not generic");
            }
    }

    int n() const { return n_; }
    const std::vector<Rat>& coords() const { return coords_; }

    Rat operator()(long long i) const {
        long long r = ((i - 1) % n_ + n_) % n_;
        return coords_[r] + Rat(Int(i - (r + 1)) / n_);
    }

private:
    int n_;
    std::vector<Rat> coords_;
};

/// An arrow diagram: a permutation drawn on a point configuration.
struct ArrowDiagram {
    AffinePermutation perm;
    PointConfig config;
};

/// Base points chosen for the nearly-straight construction, one per
/// composition part of each edge, plus the cluster width actually used.
struct StartingPoints {
    std::vector<std::vector<Rat>> base;  // [edge][part], fractions in (0,1)
    Rat eps;
};

namespace detail {

/// Labeled points (value, label) over enough periods that every count in the
/// cutoff balance condition is window-exact.
inline std::vector<std::pair<Rat, long long>> labeled_window(const PointConfig& x) {
    Rat mn = x.coords()[0], mx = x.coords()[0];
    for (const Rat& v : x.coords()) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    long long periods = static_cast<long long>(floor_int(mx - mn)) + 3;
    std::vector<std::pair<Rat, long long>> pts;
    for (long long t = -periods; t <= periods; ++t)
        for (long long i = 1; i <= x.n(); ++i) pts.emplace_back(x(i + t * x.n()), i + t * x.n());
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace detail

/// The midpoint of the interval of values c that balance the configuration:
/// as many labels <= 0 lie right of c as labels >= 1 lie left of it.  The
/// balance defect increases by one at every labeled point, so the interval is
/// a single gap between consecutive points.
inline Rat cutoff_point(const PointConfig& x) {
    auto pts = detail::labeled_window(x);
    Rat lo = x.coords()[0], hi = x.coords()[0];
    for (const Rat& v : x.coords()) {
        lo = std::min(lo, v - Rat(1));
        hi = std::max(hi, v + Rat(1));
    }
    for (size_t t = 0; t + 1 < pts.size(); ++t) {
        if (pts[t].first >= pts[t + 1].first) continue;
        Rat c = (pts[t].first + pts[t + 1].first) / Rat(2);
        if (c < lo || c > hi) continue;  // outside here a count is window-inexact
        long long balance = 0;
        for (auto& [v, i] : pts) {
            if (i <= 0 && v > c) ++balance;
            if (i >= 1 && v < c) --balance;
        }
        if (balance == 0) return c;
    }
    throw std::logic_error("cutoff_point: no balanced gap found");
}

/// The sorting permutation g of a generic configuration: g(i) < g(j) iff
/// x(i) < x(j), normalized to total shift zero.  The window of its inverse
/// lists the labels between the cutoff c and c+1 in increasing position.
inline AffinePermutation sorting_permutation(const PointConfig& x) {
    Rat c = cutoff_point(x);
    std::vector<std::pair<Rat, long long>> in_window;
    for (auto& [v, i] : detail::labeled_window(x))
        if (c < v && v < c + Rat(1)) in_window.emplace_back(v, i);
    if (static_cast<int>(in_window.size()) != x.n())
        throw std::logic_error("sorting_permutation: cutoff window holds wrong point count");
    std::vector<long long> window;
    for (auto& [v, i] : in_window) window.push_back(i);
    AffinePermutation g = inverse(AffinePermutation(x.n(), std::move(window)));
    if (g.k() != 0) throw std::logic_error("sorting_permutation: nonzero total shift");
    return g;
}

namespace detail {

/// One clustered point of the nearly-straight diagram.
struct ClusterPoint {
    Rat value;       // position in [0,1)
    size_t edge, part;
    Rat orbit;       // the cluster's orbit representative in [0,1)
    int offset;      // index within the cluster, 0-based
    bool at_base;    // cluster sits at the part's base point
};

}  // namespace detail

struct EpsStraightResult {
    ArrowDiagram diagram;
    StartingPoints starting;
};

/// Constructs a minimal-length affine permutation realizing the given
/// strongly decorated vector configuration (all vectors must point right).
///
/// Each composition part becomes a travelling cluster: its orbit visits q
/// equally spaced points of the circle (q the slope denominator), carrying d
/// points clustered within eps (d the part size).  Arrows translate clusters
/// by the slope, except at the part's base point where the cluster is
/// cyclically twisted; the twist contributes exactly d-1 crossings and welds
/// the d points into a single cycle of lattice length d.  Base points are
/// placed at j/D for consecutive j, with D grown until all orbits are
/// disjoint and each edge's parts appear in cyclic order within an orbit
/// spacing; the output contracts are then re-verified exactly.
inline EpsStraightResult build_eps_straight_diagram(StrongConfig cfg) {
    if (cfg.empty()) throw std::invalid_argument("build_eps_straight: empty configuration");
    for (auto& e : cfg) {
        if (e.vec.x <= 0)
            throw std::invalid_argument(
                "build_eps_straight: vectors must have positive first coordinate");
        if (static_cast<long long>(e.comp.size()) != lattice_gcd(e.vec))
            throw std::invalid_argument(
                "build_eps_straight: composition must sum to the lattice length");
    }
    std::sort(cfg.begin(), cfg.end(), [](const StrongEdge& a, const StrongEdge& b) {
        return Rat(Int(a.vec.y), Int(a.vec.x)) > Rat(Int(b.vec.y), Int(b.vec.x));
    });
    for (size_t e = 0; e + 1 < cfg.size(); ++e)
        if (Rat(Int(cfg[e].vec.y), Int(cfg[e].vec.x)) ==
            Rat(Int(cfg[e + 1].vec.y), Int(cfg[e + 1].vec.x)))
            throw std::invalid_argument("build_eps_straight: slopes must be distinct");

    std::vector<Rat> slope(cfg.size()), spacing(cfg.size());
    std::vector<long long> denom(cfg.size());
    long long total_parts = 0, L = 1;
    for (size_t e = 0; e < cfg.size(); ++e) {
        slope[e] = Rat(Int(cfg[e].vec.y), Int(cfg[e].vec.x));
        denom[e] = cfg[e].vec.x / lattice_gcd(cfg[e].vec);  // slope denominator
        spacing[e] = rat(1, denom[e]);
        total_parts += static_cast<long long>(cfg[e].comp.parts().size());
        L = std::lcm(L, denom[e]);
    }

    // Find a base-point scale D satisfying the two placement constraints.
    std::vector<std::vector<Rat>> base(cfg.size());
    std::map<Rat, std::pair<size_t, size_t>> orbit_points;  // value -> (edge, part)
    for (long long D = total_parts + 1;; ++D) {
        if (D > 8 * L * (total_parts + 2) + 64)
            throw std::logic_error("build_eps_straight: starting point search exhausted");
        base.assign(cfg.size(), {});
        orbit_points.clear();
        bool ok = true;
        long long j = 1;
        for (size_t e = 0; e < cfg.size() && ok; ++e) {
            for (size_t i = 0; i < cfg[e].comp.parts().size() && ok; ++i, ++j) {
                Rat p = rat(j, D);
                base[e].push_back(p);
                for (long long r = 0; r < denom[e] && ok; ++r) {
                    Rat v = wrap01(p + Rat(Int(r)) * slope[e]);
                    ok = orbit_points.emplace(v, std::make_pair(e, i)).second;
                }
            }
        }
        // Within one orbit spacing, each edge's parts must appear in cyclic
        // order, else the twists assemble the composition in a wrong order.
        for (size_t e = 0; e < cfg.size() && ok; ++e) {
            size_t m = base[e].size();
            if (m <= 1) continue;
            std::vector<Rat> rel(m);
            for (size_t i = 0; i < m; ++i)
                rel[i] = base[e][i] - spacing[e] * Rat(floor_int(base[e][i] / spacing[e]));
            size_t lowest = std::min_element(rel.begin(), rel.end()) - rel.begin();
            for (size_t i = 0; i + 1 < m && ok; ++i)
                ok = rel[(lowest + i) % m] < rel[(lowest + i + 1) % m];
        }
        if (ok) break;
    }

    // Cluster width: stay clear of neighboring orbits and of the period end.
    Rat delta = Rat(1);
    Rat last = orbit_points.rbegin()->first;
    for (auto it = orbit_points.begin(); it != orbit_points.end(); ++it) {
        auto next = std::next(it);
        Rat gap = next == orbit_points.end() ? orbit_points.begin()->first + Rat(1) - it->first
                                             : next->first - it->first;
        delta = std::min(delta, gap);
    }
    Rat eps = std::min(delta / Rat(4), (Rat(1) - last) / Rat(2));

    // Lay out the clustered points of one period.
    std::vector<detail::ClusterPoint> pts;
    for (auto& [v, ei] : orbit_points) {
        auto [e, i] = ei;
        int d = cfg[e].comp.parts()[i];
        for (int r = 0; r < d; ++r)
            pts.push_back({v + Rat(Int(r)) * eps / Rat(Int(d)), e, i, v, r, v == base[e][i]});
    }
    std::sort(pts.begin(), pts.end(),
              [](const detail::ClusterPoint& a, const detail::ClusterPoint& b) {
                  return a.value < b.value;
              });
    int n = 0;
    for (auto& e : cfg) n += static_cast<int>(e.vec.x);
    if (static_cast<int>(pts.size()) != n)
        throw std::logic_error("build_eps_straight: point count mismatch");

    std::map<std::pair<Rat, int>, int> position;  // (orbit, offset) -> 1-based index
    for (int i = 0; i < n; ++i) position[{pts[i].orbit, pts[i].offset}] = i + 1;

    std::vector<long long> window(n);
    for (int i = 0; i < n; ++i) {
        const auto& p = pts[i];
        int d = cfg[p.edge].comp.parts()[p.part];
        Rat w = p.orbit + slope[p.edge];
        long long carry = static_cast<long long>(floor_int(w));
        int offset = p.at_base ? (p.offset + 1) % d : p.offset;
        auto it = position.find({w - Rat(Int(carry)), offset});
        if (it == position.end())
            throw std::logic_error("build_eps_straight: arrow target cluster missing");
        window[i] = it->second + static_cast<long long>(n) * carry;
    }
    AffinePermutation g(n, std::move(window));

    if (!is_c_reduced(g))
        throw std::logic_error("build_eps_straight: constructed permutation is not minimal");
    if (strong_config(g) != cfg)
        throw std::logic_error("build_eps_straight: configuration mismatch");

    std::vector<Rat> coords;
    for (auto& p : pts) coords.push_back(p.value);
    return {ArrowDiagram{g, PointConfig(n, std::move(coords))}, StartingPoints{base, eps}};
}

inline AffinePermutation build_eps_straight(const StrongConfig& cfg) {
    return build_eps_straight_diagram(cfg).diagram.perm;
}

/// Rotates f until its modular invariant hits the requested value; returns
/// sigma^r(f) for the smallest such r >= 0.
inline AffinePermutation set_modular_invariant(const AffinePermutation& f, int target) {
    ModularInvariant mu = modular_invariant(f);  // enforces c-reducedness
    if (target < 0 || target >= mu.modulus)
        throw std::invalid_argument("set_modular_invariant: target out of range");
    AffinePermutation g = f;
    for (int r = 0; r < mu.modulus; ++r) {
        if (modular_invariant(g).value == target) return g;
        g = rotate(g);
    }
    throw std::logic_error("set_modular_invariant: rotation orbit missed the target");
}

}  // namespace torusmoves
