#pragma once

/// Local moves on embedded bipartite graphs: the spider move at a square face
/// and the contraction-uncontraction move at a degree-two vertex pair.  All
/// invariants of interest (strand homologies, the decorated Newton polygon,
/// the modular invariant, move-reducedness) are preserved; the test suites
/// verify this on every application.
///
/// Moves rebuild the drawing as well as the combinatorics.  New vertices are
/// placed by exact rational interpolation and every result is re-validated;
/// a placement that cannot be made embedded is reported, never returned.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusmoves/rational.hpp"
#include "torusmoves/torusgraph.hpp"

namespace torusmoves {

namespace detail {

/// Directed traversal of an edge from one of its endpoints: polyline in cover
/// coordinates starting at the canonical position of `tail`, plus the voltage
/// picked up along the way.
struct DirectedEdge {
    std::vector<Vec2> pts;
    IVec2 voltage;
};

inline DirectedEdge traverse_from(const TorusGraph& g, int edge_index, int tail) {
    const Edge& e = g.edges[edge_index];
    if (e.from == tail)
        return {dart_polyline(g, 2 * edge_index), e.voltage};
    if (e.to != tail) throw std::invalid_argument("traverse_from: vertex is not an endpoint");
    return {dart_polyline(g, 2 * edge_index + 1), -e.voltage};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// (M2) uncontraction: subdivide an edge by a degree-two pair
// ---------------------------------------------------------------------------

/// Insert a degree-two white/black pair in the interior of an edge: the edge
/// b ~ w becomes b - w' - b' - w along the same drawn curve.  This is the
/// basic uncontraction instance; contract_path below is its inverse.
inline TorusGraph subdivide_edge(const TorusGraph& g, int edge_index) {
    if (edge_index < 0 || edge_index >= static_cast<int>(g.edges.size()))
        throw std::invalid_argument("subdivide_edge: no such edge");
    TorusGraph out = g;
    Edge e = g.edges[edge_index];
    std::vector<Vec2> poly = dart_polyline(g, 2 * edge_index);

    // Both new vertices sit on the first segment, at thirds; the remainder of
    // the polyline is inherited by the last piece.
    Vec2 p = poly[0], q = poly[1];
    Vec2 cut1 = p + Rat(1, 3) * (q - p), cut2 = p + Rat(2, 3) * (q - p);
    int v1 = static_cast<int>(out.vertices.size());
    int v2 = v1 + 1;
    Color near_from = opposite(g.vertices[e.from].color);
    out.vertices.push_back({near_from, detail::wrap_point(cut1)});
    out.vertices.push_back({opposite(near_from), detail::wrap_point(cut2)});
    IVec2 k1 = detail::cover_offset(cut1), k2 = detail::cover_offset(cut2);

    std::vector<Vec2> rest(poly.begin() + 1, poly.end());
    std::vector<Vec2> tail_waypoints;
    for (size_t i = 0; i + 1 < rest.size(); ++i)
        tail_waypoints.push_back(rest[i] - to_vec2(k2));
    out.edges[edge_index] = {e.from, v1, {}, k1};
    out.edges.push_back({v1, v2, {}, k2 - k1});
    out.edges.push_back({v2, e.to, tail_waypoints, e.voltage - k2});

    std::vector<std::string> issues = validate(out);
    if (!issues.empty())
        throw std::runtime_error("subdivide_edge: result fails validation: " + issues.front());
    return out;
}

// ---------------------------------------------------------------------------
// (M2) contraction: remove a degree-two pair
// ---------------------------------------------------------------------------

/// Contract the path B - w - b - W through a degree-two white vertex w and an
/// adjacent degree-two black vertex b into a single edge B - W, concatenating
/// the three drawn curves.  The outer endpoints must be distinct from the
/// removed pair's partners in the sense required by the move: the path must
/// have four distinct vertices.
inline TorusGraph contract_path(const TorusGraph& g, int white_index) {
    if (white_index < 0 || white_index >= static_cast<int>(g.vertices.size()) ||
        g.vertices[white_index].color != Color::White)
        throw std::invalid_argument("contract_path: not a white vertex");
    std::vector<int> deg = vertex_degrees(g);
    if (deg[white_index] != 2)
        throw std::invalid_argument("contract_path: white vertex must have degree two");

    // The two edges at w, and a degree-two black neighbour to dissolve.
    std::vector<int> at_w;
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].from == white_index || g.edges[i].to == white_index)
            at_w.push_back(static_cast<int>(i));
    auto other_end = [&](int ei, int v) {
        return g.edges[ei].from == v ? g.edges[ei].to : g.edges[ei].from;
    };
    int e2 = -1, b = -1;
    for (int ei : at_w)
        if (deg[other_end(ei, white_index)] == 2) {
            e2 = ei;
            b = other_end(ei, white_index);
        }
    if (e2 < 0)
        throw std::invalid_argument("contract_path: no degree-two black neighbour");
    int e1 = at_w[0] == e2 ? at_w[1] : at_w[0];
    int B = other_end(e1, white_index);
    if (B == b)
        throw std::invalid_argument("contract_path: the two black endpoints coincide");
    if (deg[B] < 2)
        throw std::invalid_argument("contract_path: black endpoint has degree one");
    int e3 = -1;
    for (size_t i = 0; i < g.edges.size(); ++i)
        if (static_cast<int>(i) != e2 && (g.edges[i].from == b || g.edges[i].to == b))
            e3 = static_cast<int>(i);
    int W = other_end(e3, b);

    // Concatenate the three traversals B -> w -> b -> W in cover coordinates.
    detail::DirectedEdge f1 = detail::traverse_from(g, e1, B);
    detail::DirectedEdge f2 = detail::traverse_from(g, e2, white_index);
    detail::DirectedEdge f3 = detail::traverse_from(g, e3, b);
    std::vector<Vec2> pts = f1.pts;
    for (size_t i = 1; i < f2.pts.size(); ++i) pts.push_back(f2.pts[i] + to_vec2(f1.voltage));
    for (size_t i = 1; i < f3.pts.size(); ++i)
        pts.push_back(f3.pts[i] + to_vec2(f1.voltage + f2.voltage));
    Edge merged{B, W, std::vector<Vec2>(pts.begin() + 1, pts.end() - 1),
                f1.voltage + f2.voltage + f3.voltage};

    // Rebuild without w, b and the three path edges.
    TorusGraph out;
    std::vector<int> vmap(g.vertices.size(), -1);
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        if (static_cast<int>(v) == white_index || static_cast<int>(v) == b) continue;
        vmap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[v]);
    }
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (static_cast<int>(i) == e1 || static_cast<int>(i) == e2 || static_cast<int>(i) == e3)
            continue;
        Edge e = g.edges[i];
        e.from = vmap[e.from];
        e.to = vmap[e.to];
        out.edges.push_back(e);
    }
    merged.from = vmap[merged.from];
    merged.to = vmap[merged.to];
    out.edges.push_back(merged);

    std::vector<std::string> issues = validate(out);
    if (!issues.empty())
        throw std::runtime_error("contract_path: result fails validation: " + issues.front());
    return out;
}

// ---------------------------------------------------------------------------
// (M1) spider move
// ---------------------------------------------------------------------------

/// Face-walk indices where the spider move applies: contractible quadrilateral
/// faces with four distinct corners, four distinct edges, and every corner of
/// degree at least three.
inline std::vector<int> square_faces(const TorusGraph& g) {
    DerivedMap m = derived_map(g);
    FaceData fd = faces(g, m);
    std::vector<int> deg = vertex_degrees(g);
    std::vector<int> out;
    for (size_t w = 0; w < fd.walks.size(); ++w) {
        const FaceWalk& fw = fd.walks[w];
        if (!fw.contractible || fw.darts.size() != 4) continue;
        std::vector<int> corners, edges;
        for (int d : fw.darts) {
            corners.push_back(m.head(d));
            edges.push_back(DerivedMap::edge_of(d));
        }
        std::vector<int> cs = corners, es = edges;
        std::sort(cs.begin(), cs.end());
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) continue;
        if (std::adjacent_find(es.begin(), es.end()) != es.end()) continue;
        if (std::any_of(corners.begin(), corners.end(), [&](int v) { return deg[v] < 3; }))
            continue;
        out.push_back(static_cast<int>(w));
    }
    return out;
}

/// Apply the spider move at a square face (urban renewal): remove the four
/// boundary edges, add one vertex of the opposite colour near each corner,
/// join it to its corner by a spoke, and join the new vertices into an inner
/// square.  New vertices are placed a fraction of the way from each corner
/// toward the corner-lift centroid; the fraction shrinks until the drawing
/// validates.
inline TorusGraph spider_move(const TorusGraph& g, int walk_index) {
    DerivedMap m = derived_map(g);
    FaceData fd = faces(g, m);
    std::vector<int> eligible = square_faces(g);
    if (std::find(eligible.begin(), eligible.end(), walk_index) == eligible.end())
        throw std::invalid_argument("spider_move: walk is not an eligible square face");
    const FaceWalk& fw = fd.walks[walk_index];

    // Corner vertices and their universal-cover lifts along the face walk.
    std::vector<int> corners;
    std::vector<Vec2> lifts;
    Vec2 at = g.vertices[m.tail[fw.darts[0]]].pos;
    for (int d : fw.darts) {
        std::vector<Vec2> poly = dart_polyline(g, d);
        at = at + (poly.back() - poly.front());
        corners.push_back(m.head(d));
        lifts.push_back(at);
    }
    Vec2 centroid = Rat(1, 4) * (lifts[0] + lifts[1] + lifts[2] + lifts[3]);

    for (Rat inset(1, 8);; inset /= 2) {
        if (inset < Rat(1, 1024))
            throw std::runtime_error("spider_move: could not place the inner square");
        TorusGraph out;
        out.vertices = g.vertices;
        std::vector<int> new_ids;
        std::vector<IVec2> new_offsets;
        for (int i = 0; i < 4; ++i) {
            Vec2 lift = lifts[i] + inset * (centroid - lifts[i]);
            new_ids.push_back(static_cast<int>(out.vertices.size()));
            new_offsets.push_back(detail::cover_offset(lift));
            out.vertices.push_back(
                {opposite(g.vertices[corners[i]].color), detail::wrap_point(lift)});
        }
        std::vector<int> removed;
        for (int d : fw.darts) removed.push_back(DerivedMap::edge_of(d));
        for (size_t i = 0; i < g.edges.size(); ++i)
            if (std::find(removed.begin(), removed.end(), static_cast<int>(i)) == removed.end())
                out.edges.push_back(g.edges[i]);
        for (int i = 0; i < 4; ++i) {
            // Spoke from the corner to its new vertex, drawn from the corner's
            // canonical position; the corner lift is its canonical position
            // plus an integer offset.
            IVec2 corner_off = detail::cover_offset(lifts[i] - g.vertices[corners[i]].pos);
            out.edges.push_back({corners[i], new_ids[i], {}, new_offsets[i] - corner_off});
            // Inner square edge to the next new vertex.
            out.edges.push_back(
                {new_ids[i], new_ids[(i + 1) % 4], {}, new_offsets[(i + 1) % 4] - new_offsets[i]});
        }
        if (validate(out).empty()) return out;
    }
}

}  // namespace torusmoves
