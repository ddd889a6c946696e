#pragma once

/// Strong decorations and the modular invariant of move-reduced graphs.
///
/// The weak Newton polygon (torusgraph.hpp) remembers, per polygon edge, the
/// multiset of lattice lengths of the parallel strands.  The strong decoration
/// upgrades the multiset to a cyclic composition by ordering parallel strands
/// around the torus, and the modular invariant pins down the residual rotation
/// freedom.  Both are read off e-region labelings: for each polygon edge e the
/// strands of that direction cut the torus into n = ilen|e| regions, labeled
/// by Z/nZ so that the label increases by one when crossing a strand from its
/// right to its left.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torusmoves/affine.hpp"
#include "torusmoves/cyclic.hpp"
#include "torusmoves/rational.hpp"
#include "torusmoves/torusgraph.hpp"

namespace torusmoves {

namespace detail {

// ---------------------------------------------------------------------------
// Face identification
// ---------------------------------------------------------------------------
//
// A face can carry several boundary walks (an annulus has two, a face with
// floating components inside has one per island), and two walks of one face
// need not be linked through any graph edge.  The labelings below propagate
// across edges, so they need honest faces, not walks.  Walks are merged by
// sweeping one generic vertical circle in every gap between distinct x
// coordinates of the drawing and one generic horizontal circle in every y
// gap: along each circle, consecutive crossings cut out an interval that lies
// inside a single face, so the walk above the lower crossing and the walk
// below the upper crossing co-bound that face.  Every boundary walk of a face
// shows up as the top or bottom wall of one of the face's sweep trapezoids
// (walls that are entirely vertical are caught by the horizontal sweeps), and
// neighbouring trapezoids of one face share wall curves, so the sweeps merge
// all of the face's walks.

/// One transversal crossing of a sweep circle with the drawing: the position
/// along the circle and the walks on the two sides (plus = the side of
/// increasing coordinate: above for vertical circles, east for horizontal).
struct SweepCrossing {
    Rat coord;
    int walk_plus = -1;
    int walk_minus = -1;
};

/// Generic sweep stations for one direction: the midpoints of the cyclic gaps
/// between the distinct coordinates (mod 1) of all polyline points.  Circles
/// through stations meet the drawing transversally in segment interiors.
inline std::vector<Rat> sweep_stations(const TorusGraph& g, bool vertical) {
    std::vector<Rat> events;
    for (size_t i = 0; i < g.edges.size(); ++i)
        for (const Vec2& p : dart_polyline(g, static_cast<int>(2 * i)))
            events.push_back(wrap01(vertical ? p.x : p.y));
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    std::vector<Rat> stations;
    for (size_t k = 0; k < events.size(); ++k) {
        Rat next = k + 1 < events.size() ? events[k + 1] : events[0] + 1;
        stations.push_back(wrap01((events[k] + next) / 2));
    }
    return stations;
}

/// All crossings of the circle {x = station} (vertical) or {y = station}
/// (horizontal) with the drawing, ordered around the circle.
inline std::vector<SweepCrossing> sweep_crossings(const TorusGraph& g, const FaceData& fd,
                                                  Rat station, bool vertical) {
    std::vector<SweepCrossing> out;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        int fwd = static_cast<int>(2 * i), bwd = fwd + 1;
        std::vector<Vec2> poly = dart_polyline(g, fwd);
        for (size_t k = 0; k + 1 < poly.size(); ++k) {
            Vec2 p = poly[k], q = poly[k + 1];
            Rat da = vertical ? q.x - p.x : q.y - p.y;
            if (da == Rat(0)) continue;  // parallel to the circle; station is generic
            Rat alo = std::min(vertical ? p.x : p.y, vertical ? q.x : q.y);
            Rat ahi = std::max(vertical ? p.x : p.y, vertical ? q.x : q.y);
            for (Int t = floor_int(alo - station) + 1; Rat(t) + station < ahi; ++t) {
                Rat s = (station + Rat(t) - (vertical ? p.x : p.y)) / da;
                Rat other = vertical ? p.y + s * (q.y - p.y) : p.x + s * (q.x - p.x);
                // The walk on the increasing-coordinate side: for a vertical
                // circle the face above an eastward segment is the forward
                // dart's left; for a horizontal circle the face east of a
                // northward segment is the backward dart's left.
                bool plus_is_fwd = vertical ? da > Rat(0) : da < Rat(0);
                out.push_back({wrap01(other), fd.walk_of_dart[plus_is_fwd ? fwd : bwd],
                               fd.walk_of_dart[plus_is_fwd ? bwd : fwd]});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SweepCrossing& a, const SweepCrossing& b) { return a.coord < b.coord; });
    for (size_t k = 0; k + 1 < out.size(); ++k)
        if (out[k].coord == out[k + 1].coord)
            throw std::logic_error("face merge: coincident sweep crossings");
    return out;
}

/// Merge boundary walks into faces; returns the face id of each walk, with
/// faces numbered by their smallest walk.
inline std::vector<int> merge_walks_into_faces(const TorusGraph& g, const FaceData& fd,
                                               int* nfaces_out = nullptr) {
    DSU dsu(static_cast<int>(fd.walks.size()));
    for (bool vertical : {true, false})
        for (const Rat& station : sweep_stations(g, vertical)) {
            std::vector<SweepCrossing> cs = sweep_crossings(g, fd, station, vertical);
            for (size_t k = 0; k < cs.size(); ++k)
                dsu.unite(cs[k].walk_plus, cs[(k + 1) % cs.size()].walk_minus);
        }
    std::vector<int> face(fd.walks.size(), -1);
    int next = 0;
    for (size_t w = 0; w < fd.walks.size(); ++w) {
        int root = dsu.find(static_cast<int>(w));
        if (face[root] < 0) face[root] = next++;
        face[w] = face[root];
    }
    if (nfaces_out) *nfaces_out = next;
    return face;
}

// ---------------------------------------------------------------------------
// Shared geometry/combinatorics bundle
// ---------------------------------------------------------------------------

struct FaceStructure {
    DerivedMap m;
    std::vector<Strand> ss;
    std::vector<int> strand_of;  // per dart
    FaceData fd;
    std::vector<int> face_of_walk;
    int nfaces = 0;

    int face_left(int d) const { return face_of_walk[fd.walk_of_dart[d]]; }
    int face_right(int d) const { return face_left(DerivedMap::twin(d)); }
};

inline FaceStructure face_structure(const TorusGraph& g) {
    FaceStructure fs{derived_map(g), {}, {}, {}, {}, 0};
    fs.ss = strands(g, fs.m);
    fs.strand_of.assign(fs.m.ndarts(), -1);
    for (size_t s = 0; s < fs.ss.size(); ++s)
        for (int d : fs.ss[s].darts) fs.strand_of[d] = static_cast<int>(s);
    fs.fd = faces(g, fs.m);
    fs.face_of_walk = merge_walks_into_faces(g, fs.fd, &fs.nfaces);
    return fs;
}

// ---------------------------------------------------------------------------
// Single-strand anchor
// ---------------------------------------------------------------------------
//
// When a polygon edge carries a single strand of lattice length n >= 2, its
// right-side labels exhaust Z/nZ and the interval start cannot be read off
// the label set.  The anchor lives on the cylinder obtained by collapsing the
// plane along the primitive class vector: there the lifts of the strand wind
// n times around, stacked into parallel copies one unit of height apart, and
// a transversal cut line meets every winding exactly once.  Windings indexed
// up the cut line carry consecutive right-side labels, and the n-1
// self-crossings glue them into blocks of n consecutive windings.  The label
// of the lowest winding of a block starts the interval.

/// Exact convex-position point for a passage-endpoint slot: as the slot index
/// grows the point moves counterclockwise along the upper unit semicircle.
inline Vec2 chord_point(int slot) {
    Rat t(slot);
    Rat d = Rat(1) + t * t;
    return {(Rat(1) - t * t) / d, Rat(2) * t / d};
}

/// One occurrence of a self-crossing along the strand: stage 0 at the
/// midpoint of dart `pos`, stage 1 inside the disk of the head vertex of dart
/// `pos`, ordered along the visit chord by the parameter t.
struct StrandEvent {
    size_t pos = 0;
    int stage = 0;
    Rat t;
    int crossing = -1;
};

inline int single_strand_interval_start(const TorusGraph& g, const FaceStructure& fs,
                                        const Strand& s, const std::vector<int>& lab, int n) {
    const DerivedMap& m = fs.m;
    const size_t P = s.darts.size();
    std::set<int> own(s.darts.begin(), s.darts.end());
    auto has_mid_event = [&](size_t pos) {
        return own.count(DerivedMap::twin(s.darts[pos])) != 0;
    };
    auto l1 = [](const Vec2& v) {
        return (v.x < Rat(0) ? -v.x : v.x) + (v.y < Rat(0) ? -v.y : v.y);
    };

    // One period of the strand, lifted to the plane and chained end to end.
    std::vector<std::vector<Vec2>> poly(P);
    Vec2 at;
    for (size_t k = 0; k < P; ++k) {
        poly[k] = dart_polyline(g, s.darts[k]);
        if (k == 0) at = poly[k].front();
        Vec2 shift = at - poly[k].front();
        for (Vec2& p : poly[k]) p = p + shift;
        at = poly[k].back();
    }
    if (!(at - poly[0].front() == to_vec2(s.homology)))
        throw std::logic_error("anchor: chained lift does not close up to the homology class");

    // L1 arc length per dart; progress is measured by L1 length, so the point
    // where the two passages of a doubly-traversed edge cross sits at 1/2.
    std::vector<Rat> len(P);
    std::vector<Vec2> mid_point(P);
    for (size_t k = 0; k < P; ++k) {
        for (size_t i = 0; i + 1 < poly[k].size(); ++i)
            len[k] = len[k] + l1(poly[k][i + 1] - poly[k][i]);
        Rat half = Rat(1, 2) * len[k], run;
        for (size_t i = 0; i + 1 < poly[k].size(); ++i) {
            Rat seg = l1(poly[k][i + 1] - poly[k][i]);
            if (run + seg >= half) {
                mid_point[k] = poly[k][i] + ((half - run) / seg) * (poly[k][i + 1] - poly[k][i]);
                break;
            }
            run = run + seg;
        }
    }

    // Self-crossing occurrences: midpoints of doubly-traversed edges, and
    // proper chord crossings inside vertex disks.
    std::vector<StrandEvent> events;
    int crossings = 0;
    std::map<int, std::vector<size_t>> edge_positions;
    for (size_t k = 0; k < P; ++k) edge_positions[DerivedMap::edge_of(s.darts[k])].push_back(k);
    for (auto& [e, ps] : edge_positions) {
        if (ps.size() < 2) continue;
        if (ps.size() > 2) throw std::logic_error("anchor: edge traversed more than twice");
        int id = crossings++;
        events.push_back({ps[0], 0, Rat(0), id});
        events.push_back({ps[1], 0, Rat(0), id});
    }
    struct Visit {
        size_t pos;
        Vec2 a, b;  // chord endpoints, in traversal order
    };
    std::map<int, std::vector<Visit>> visits_at;
    for (size_t k = 0; k < P; ++k) {
        int in = s.darts[k], out = s.darts[(k + 1) % P];
        visits_at[m.head(in)].push_back(
            {k, chord_point(passage_endpoint_position(m, DerivedMap::twin(in), true)),
             chord_point(passage_endpoint_position(m, out, false))});
    }
    for (auto& [v, vis] : visits_at)
        for (size_t i = 0; i < vis.size(); ++i)
            for (size_t j = i + 1; j < vis.size(); ++j) {
                Vec2 cu = vis[i].b - vis[i].a, cw = vis[j].b - vis[j].a;
                Rat den = cross(cu, cw);
                if (den == Rat(0)) continue;  // parallel chords do not cross
                Rat ti = cross(vis[j].a - vis[i].a, cw) / den;
                Rat tj = cross(vis[j].a - vis[i].a, cu) / den;
                if (!(Rat(0) < ti && ti < Rat(1) && Rat(0) < tj && tj < Rat(1))) continue;
                int id = crossings++;
                events.push_back({vis[i].pos, 1, ti, id});
                events.push_back({vis[j].pos, 1, tj, id});
            }
    if (crossings != n - 1)
        throw std::logic_error("anchor: self-crossing count differs from ilen - 1");
    std::sort(events.begin(), events.end(), [](const StrandEvent& a, const StrandEvent& b) {
        return std::tie(a.pos, a.stage, a.t) < std::tie(b.pos, b.stage, b.t);
    });
    for (size_t k = 0; k + 1 < events.size(); ++k)
        if (events[k].pos == events[k + 1].pos && events[k].stage == events[k + 1].stage &&
            events[k].stage == 1 && events[k].t == events[k + 1].t)
            throw std::logic_error("anchor: three passages through one drawn point");
    auto event_point = [&](const StrandEvent& ev) {
        return ev.stage == 0 ? mid_point[ev.pos] : poly[ev.pos].back();
    };

    // Transversal direction: u with det(e, u) = 1.  alpha counts turns around
    // the collapsed direction e, beta measures the height across it.
    IVec2 e = primitive(s.homology);
    Vec2 evec = to_vec2(e);
    IVec2 u0;
    {
        long long x0 = 1, y0 = 0, x1 = 0, y1 = 1, A = e.x, B = e.y;
        while (B != 0) {
            long long q = A / B;
            std::tie(A, B) = std::pair<long long, long long>{B, A - q * B};
            std::tie(x0, x1) = std::pair<long long, long long>{x1, x0 - q * x1};
            std::tie(y0, y1) = std::pair<long long, long long>{y1, y0 - q * y1};
        }
        if (A < 0) {
            A = -A;
            x0 = -x0;
            y0 = -y0;
        }
        if (A != 1) throw std::logic_error("anchor: class vector is not primitive");
        u0 = {-y0, x0};
    }

    // Search for a clean cut: a level family alpha = a0 + Z that the strand
    // crosses exactly n times, always in the increasing direction.  Among the
    // clean cuts prefer one whose crossings avoid doubly-traversed edges,
    // where the region to the right is a wedge rather than a plain face.
    struct Cut {
        size_t pos;  // dart position along the strand
        Rat rho;     // L1 progress within the dart, in (0, 1)
        Vec2 q;      // lifted crossing point
        int label = 0;
    };
    std::vector<Cut> srcs;
    bool found = false;
    size_t found_slivers = 0;
    for (long long uj : {0LL, 1LL, -1LL, 2LL, -2LL}) {
        IVec2 u = u0 + uj * e;
        Vec2 uvec = to_vec2(u);
        auto alpha = [&](const Vec2& p) { return cross(p, uvec); };
        std::set<Rat> avoid;
        for (size_t k = 0; k < P; ++k)
            for (const Vec2& p : poly[k]) avoid.insert(wrap01(alpha(p)));
        for (const StrandEvent& ev : events) avoid.insert(wrap01(alpha(event_point(ev))));
        std::vector<Rat> fr(avoid.begin(), avoid.end());
        for (size_t ci = 0; ci < fr.size(); ++ci) {
            Rat next = ci + 1 < fr.size() ? fr[ci + 1] : fr[0] + Rat(1);
            if (next == fr[ci]) continue;
            Rat a0 = Rat(1, 2) * (fr[ci] + next);
            std::vector<Cut> cuts;
            bool clean = true;
            for (size_t k = 0; k < P && clean; ++k) {
                Rat run;
                for (size_t i = 0; i + 1 < poly[k].size() && clean; ++i) {
                    Rat aa = alpha(poly[k][i]) - a0, ab = alpha(poly[k][i + 1]) - a0;
                    Rat seg = l1(poly[k][i + 1] - poly[k][i]);
                    if (ab > aa) {
                        for (Int lv = floor_int(aa) + 1; Rat(lv) < ab; ++lv) {
                            Rat sfrac = (Rat(lv) - aa) / (ab - aa);
                            cuts.push_back({k, (run + sfrac * seg) / len[k],
                                            poly[k][i] + sfrac * (poly[k][i + 1] - poly[k][i])});
                        }
                    } else if (ab < aa) {
                        if (Rat(floor_int(aa)) > ab) clean = false;  // crossed downward
                    }
                    run = run + seg;
                }
            }
            if (!clean) continue;
            if (static_cast<int>(cuts.size()) != n)
                throw std::logic_error("anchor: clean cut crossing count differs from ilen");
            size_t slivers = 0;
            for (const Cut& c : cuts)
                if (has_mid_event(c.pos)) ++slivers;
            if (!found || slivers < found_slivers) {
                srcs = std::move(cuts);
                found_slivers = slivers;
                found = true;
            }
            if (found && found_slivers == 0) break;
        }
        if (found && found_slivers == 0) break;
    }
    if (!found) throw std::logic_error("anchor: no clean transversal cut");

    // Right-side label at each crossing.  On the head half of a dart whose
    // opposite passage also belongs to the strand, the region to the right is
    // the wedge between the two passages, one label below the face behind it.
    std::sort(srcs.begin(), srcs.end(), [](const Cut& x, const Cut& y) {
        return std::tie(x.pos, x.rho) < std::tie(y.pos, y.rho);
    });
    for (Cut& c : srcs) {
        int L = lab[fs.face_right(s.darts[c.pos])];
        if (has_mid_event(c.pos) && c.rho > Rat(1, 2)) L = (L - 1 + n) % n;
        c.label = L;
    }

    // Windings ranked by height up the cut line must carry labels stepping up
    // by one; the block structure below is read in this ranking.
    std::vector<size_t> order(srcs.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return cross(evec, srcs[x].q) < cross(evec, srcs[y].q);
    });
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        if (!(cross(evec, srcs[order[i]].q) < cross(evec, srcs[order[i + 1]].q)))
            throw std::logic_error("anchor: two windings cross the cut at the same height");
        if (((srcs[order[i + 1]].label - srcs[order[i]].label - 1) % n + n) % n != 0)
            throw std::logic_error("anchor: right-side labels do not step up the cut");
    }
    std::vector<long long> rank(srcs.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<long long>(i);
    int label0 = srcs[order[0]].label;

    // The winding containing an occurrence is the one whose cut crossing was
    // passed last; before the first crossing the traversal is still on the
    // final winding of the previous period, the same winding on the cylinder.
    auto winding_of = [&](const StrandEvent& ev) {
        std::tuple<size_t, int, Rat> ek{ev.pos, ev.stage, ev.stage == 0 ? Rat(1, 2) : ev.t};
        size_t last = srcs.size() - 1;
        for (size_t i = 0; i < srcs.size(); ++i) {
            std::tuple<size_t, int, Rat> ck{srcs[i].pos, 0, srcs[i].rho};
            if (ck < ek) last = i;
        }
        return last;
    };

    // Each self-crossing glues the winding of its first occurrence to the
    // winding of its second, pulled back across the deck offset between the
    // two lifted branches.
    std::vector<std::pair<long long, long long>> glue;
    for (int id = 0; id < crossings; ++id) {
        const StrandEvent *o1 = nullptr, *o2 = nullptr;
        for (const StrandEvent& ev : events)
            if (ev.crossing == id) (o1 ? o2 : o1) = &ev;
        Vec2 w = event_point(*o2) - event_point(*o1);
        Rat height = cross(evec, w);
        if (!(Rat(floor_int(w.x)) == w.x && Rat(floor_int(w.y)) == w.y) ||
            !(Rat(floor_int(height)) == height))
            throw std::logic_error("anchor: self-crossing offset is not integral");
        long long r = floor_int(height).convert_to<long long>();
        glue.push_back({rank[winding_of(*o1)],
                        rank[winding_of(*o2)] - static_cast<long long>(n) * r});
    }

    // Union the glued windings over a padded window of the winding line and
    // extract the block around winding 0.
    long long lo = 0, hi = n - 1;
    for (auto& [a, b] : glue) {
        lo = std::min({lo, a, b});
        hi = std::max({hi, a, b});
    }
    lo -= 2 * n;
    hi += 2 * n;
    if (hi - lo > 1000000) throw std::logic_error("anchor: winding window is too large");
    int W = static_cast<int>(hi - lo + 1);
    DSU dsu(W);
    for (auto& [a, b] : glue)
        for (long long k = -(hi - lo) / n - 2; k <= (hi - lo) / n + 2; ++k) {
            long long x = a + k * n, y = b + k * n;
            if (x < lo || x > hi || y < lo || y > hi) continue;
            dsu.unite(static_cast<int>(x - lo), static_cast<int>(y - lo));
        }
    std::vector<long long> block;
    int root = dsu.find(static_cast<int>(0 - lo));
    for (int i = 0; i < W; ++i)
        if (dsu.find(i) == root) block.push_back(lo + i);
    if (static_cast<long long>(block.size()) != n || block.back() - block.front() != n - 1)
        throw std::logic_error("anchor: glued block is not n consecutive windings");
    long long t = block.front();
    if (dsu.find(static_cast<int>(t - 1 - lo)) == root ||
        dsu.find(static_cast<int>(t + n - lo)) == root)
        throw std::logic_error("anchor: glued blocks do not tile the winding line");

    // Winding w carries right-side label label0 + w; the interval starts at
    // the label of the block's lowest winding.
    return static_cast<int>((((label0 + t) % n) + n) % n);
}

// ---------------------------------------------------------------------------
// e-region labelings
// ---------------------------------------------------------------------------

/// Labeling data for one polygon edge direction.
struct EdgeClassLabeling {
    int n = 1;             ///< total lattice length: raw labels live in Z/nZ
    int r = 1;             ///< rotation number of comp: canonical labels live in Z/rZ
    CyclicComposition comp;  ///< lattice lengths in increasing-label cyclic order
    std::vector<int> walk_label;  ///< canonical label of each face walk, in [0, r)
};

inline EdgeClassLabeling label_edge_class(const TorusGraph& g, const FaceStructure& fs,
                                          IVec2 prim) {
    std::vector<size_t> S;
    int n = 0;
    for (size_t i = 0; i < fs.ss.size(); ++i)
        if (!fs.ss[i].homology.is_zero() && primitive(fs.ss[i].homology) == prim) {
            S.push_back(i);
            n += static_cast<int>(lattice_gcd(fs.ss[i].homology));
        }
    if (S.empty()) throw std::invalid_argument("e-region labeling: no strands in this direction");
    std::vector<char> in_S(fs.m.ndarts(), 0);
    for (size_t i : S)
        for (int d : fs.ss[i].darts) in_S[d] = 1;

    // Propagate raw labels over the face adjacency graph: crossing an edge
    // from the right of its forward dart to the left changes the label by the
    // signed number of class passages through the edge.
    std::vector<int> lab(fs.nfaces, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(fs.nfaces);  // (other face, delta)
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int fwd = static_cast<int>(2 * e);
        int A = fs.face_left(fwd), B = fs.face_right(fwd);
        int delta = (in_S[fwd] ? 1 : 0) - (in_S[fwd + 1] ? 1 : 0);
        adj[B].push_back({A, delta});
        adj[A].push_back({B, -delta});
    }
    lab[0] = 0;
    std::vector<int> queue{0};
    for (size_t q = 0; q < queue.size(); ++q)
        for (auto& [to, delta] : adj[queue[q]])
            if (lab[to] < 0) {
                lab[to] = ((lab[queue[q]] + delta) % n + n) % n;
                queue.push_back(to);
            }
    for (int f = 0; f < fs.nfaces; ++f) {
        if (lab[f] < 0)
            throw std::logic_error("e-region labeling: face adjacency graph is disconnected");
        for (auto& [to, delta] : adj[f])
            if ((lab[to] - lab[f] - delta) % n != 0)
                throw std::logic_error("e-region labeling: label holonomy is nonzero");
    }

    // Right-side labels per strand; the opposite passage of an edge both of
    // whose passages belong to the class pinches off a wedge on the head half,
    // labeled one below the face behind it.
    std::vector<std::pair<int, int>> intervals;  // (start, length) per strand, ordered later
    for (size_t i : S) {
        const Strand& s = fs.ss[i];
        int len = static_cast<int>(lattice_gcd(s.homology));
        std::set<int> labels;
        for (int d : s.darts) {
            int L = lab[fs.face_right(d)];
            labels.insert(L);
            if (in_S[DerivedMap::twin(d)]) labels.insert((L - 1 + n) % n);
        }
        if (static_cast<int>(labels.size()) != len)
            throw std::logic_error(
                "e-region labeling: right-side labels do not match the lattice length");
        int start;
        if (S.size() >= 2) {
            std::optional<int> found;
            for (int L : labels)
                if (!labels.count((L - 1 + n) % n)) {
                    if (found)
                        throw std::logic_error(
                            "e-region labeling: right-side labels are not a cyclic interval");
                    found = L;
                }
            if (!found)
                throw std::logic_error(
                    "e-region labeling: right-side labels are not a cyclic interval");
            for (int k = 0; k < len; ++k)
                if (!labels.count((*found + k) % n))
                    throw std::logic_error(
                        "e-region labeling: right-side labels are not a cyclic interval");
            start = *found;
        } else if (n == 1) {
            start = 0;
        } else {
            start = single_strand_interval_start(g, fs, s, lab, n);
        }
        intervals.push_back({start, len});
    }
    std::sort(intervals.begin(), intervals.end());
    IntervalPartition observed;
    try {
        observed = IntervalPartition(n, intervals);
    } catch (const std::invalid_argument&) {
        throw std::logic_error("e-region labeling: strand intervals do not tile the circle");
    }

    // Canonical labels: shift so the interval partition matches the one of the
    // normal-form composition laid out 1-based, then reduce mod the rotation
    // number, which absorbs the remaining ambiguity.
    EdgeClassLabeling out;
    out.n = n;
    out.comp = observed.lengths();
    out.r = rotation_number(out.comp);
    int shift = interval_shift(interval_partition(out.comp), observed, out.r);
    out.walk_label.resize(fs.fd.walks.size());
    for (size_t w = 0; w < fs.fd.walks.size(); ++w)
        out.walk_label[w] = ((lab[fs.face_of_walk[w]] + 1 - shift) % out.r + out.r) % out.r;
    return out;
}

// ---------------------------------------------------------------------------
// Decoration bundle
// ---------------------------------------------------------------------------

struct DecorationData {
    FaceStructure fs;
    DecoratedPolygon polygon;                   // comps filled in
    std::vector<EdgeClassLabeling> labelings;   // parallel to polygon.edges
};

inline DecorationData decoration_data(const TorusGraph& g) {
    ReducednessReport rep = is_move_reduced_report(g);
    if (rep.status != Reducedness::Reduced)
        throw std::invalid_argument("strong decoration requires a move-reduced graph (status: " +
                                    to_string(rep.status) + ")");
    DecorationData dd{face_structure(g), {}, {}};
    dd.polygon = newton_polygon_weak(dd.fs.ss);
    for (DecoratedPolygonEdge& e : dd.polygon.edges) {
        dd.labelings.push_back(label_edge_class(g, dd.fs, primitive(e.vec)));
        e.comp = dd.labelings.back().comp;
    }

    // Distinct parallel strands of a move-reduced graph share no vertices and
    // hence no edges or crossings.  (The finer region-disjointness statement
    // concerns strand-arrangement faces, not graph faces: two parallel loops
    // around the torus are move-reduced yet both their graph faces touch both
    // strands.)
    for (const DecoratedPolygonEdge& e : dd.polygon.edges) {
        IVec2 prim = primitive(e.vec);
        std::set<int> seen;
        for (const Strand& s : dd.fs.ss) {
            if (s.homology.is_zero() || primitive(s.homology) != prim) continue;
            std::set<int> verts;
            for (int d : s.darts) verts.insert(dd.fs.m.head(d));
            for (int v : verts)
                if (!seen.insert(v).second)
                    throw std::logic_error("strong decoration: parallel strands share a vertex");
        }
    }
    return dd;
}

inline ModularInvariant modular_invariant_from(const DecorationData& dd) {
    if (dd.polygon.edges.empty()) return {0, 1};
    std::vector<CyclicComposition> comps;
    for (const DecoratedPolygonEdge& e : dd.polygon.edges) comps.push_back(*e.comp);
    int d = rotation_gcd(comps);
    std::optional<int> value;
    for (size_t w = 0; w < dd.fs.fd.walks.size(); ++w) {
        int total = 0;
        for (const EdgeClassLabeling& L : dd.labelings) total += L.walk_label[w];
        total %= d;
        if (value && *value != total)
            throw std::logic_error("modular invariant: label sum varies across faces");
        value = total;
    }
    return {value.value_or(0), d};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

/// Region labeling induced by one Newton polygon edge: the canonical label of
/// each face walk (two walks of the same face carry the same label), valued in
/// Z/modulus Z where modulus is the rotation number of the edge's cyclic
/// composition.
struct RegionLabeling {
    int modulus = 1;
    std::vector<int> walk_label;
    friend bool operator==(const RegionLabeling&, const RegionLabeling&) = default;
};

/// Labeling for the polygon edge in the given direction (any positive multiple
/// of the primitive direction selects the same edge).  The graph must be
/// move-reduced and the direction must match one of its polygon edges.
inline RegionLabeling e_region_labeling(const TorusGraph& g, IVec2 direction) {
    if (direction.is_zero())
        throw std::invalid_argument("e-region labeling: direction must be nonzero");
    detail::DecorationData dd = detail::decoration_data(g);
    IVec2 prim = primitive(direction);
    for (size_t e = 0; e < dd.polygon.edges.size(); ++e)
        if (primitive(dd.polygon.edges[e].vec) == prim)
            return {dd.labelings[e].r, dd.labelings[e].walk_label};
    throw std::invalid_argument("e-region labeling: no Newton polygon edge in this direction");
}

/// Strongly decorated Newton polygon of a move-reduced graph: every edge's
/// composition is filled in with the lattice lengths of its parallel strands
/// in their cyclic order around the torus.
inline DecoratedPolygon strong_decoration(const TorusGraph& g) {
    return detail::decoration_data(g).polygon;
}

/// The modular invariant of a move-reduced graph: the common value, over all
/// faces, of the sum of the canonical edge labelings, taken modulo the gcd of
/// the rotation numbers of the edge compositions.  A graph whose polygon is a
/// single point has no labelings and gets the trivial invariant.
inline ModularInvariant modular_invariant(const TorusGraph& g) {
    return detail::modular_invariant_from(detail::decoration_data(g));
}

/// Decide move-equivalence of two move-reduced graphs: true iff their strongly
/// decorated Newton polygons coincide (up to the translation already quotiented
/// out by the edge-vector representation) and their modular invariants agree.
inline bool move_equivalent(const TorusGraph& g1, const TorusGraph& g2) {
    detail::DecorationData a = detail::decoration_data(g1);
    detail::DecorationData b = detail::decoration_data(g2);
    if (!(a.polygon == b.polygon)) return false;
    return detail::modular_invariant_from(a) == detail::modular_invariant_from(b);
}

}  // namespace torusmoves
