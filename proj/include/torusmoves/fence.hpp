#pragma once

/// Double affine words and fence graphs.
///
/// A double affine word is a sequence over the generators {s_i, s-bar_i,
/// L, L^-1} of the double affine symmetric group of period n.  The pair map
/// phi extracts two ordinary affine permutations (f, fbar): the unbarred
/// letters spell f, the barred letters spell fbar with reversed order and
/// complemented indices, and the net L power contributes the common shift.
///
/// A word is also a drawing recipe: n horizontal wires around the torus,
/// one column per letter.  An s_i column adds a vertical rung between wires
/// i and i+1 (white below, black above; barred letters mirror the colors);
/// an L column shifts every wire up by one position cyclically.  The
/// resulting fence graph is embedded without crossings, so every invariant
/// of the word can be compared against the geometry.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusmoves/affine.hpp"
#include "torusmoves/rational.hpp"
#include "torusmoves/torusgraph.hpp"

namespace torusmoves {

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

enum class LetterKind { S, SBar, L, LInv };

struct Letter {
    LetterKind kind = LetterKind::L;
    int index = 0;  // for S/SBar: the wire index, interpreted mod n into [1, n]

    friend bool operator==(const Letter&, const Letter&) = default;
};

struct DoubleAffineWord {
    int n = 1;
    std::vector<Letter> letters;

    friend bool operator==(const DoubleAffineWord&, const DoubleAffineWord&) = default;
};

/// Number of crossing letters (s or s-bar); the word length when the word is
/// built from reduced expressions.
inline long long word_length(const DoubleAffineWord& w) {
    long long l = 0;
    for (const Letter& a : w.letters)
        l += (a.kind == LetterKind::S || a.kind == LetterKind::SBar) ? 1 : 0;
    return l;
}

namespace detail {

/// Index folded into [1, n].
inline int fold_index(long long i, int n) {
    return static_cast<int>(((i - 1) % n + n) % n) + 1;
}

inline bool is_crossing(const Letter& a) {
    return a.kind == LetterKind::S || a.kind == LetterKind::SBar;
}

inline long long net_l_power(const DoubleAffineWord& w) {
    long long k = 0;
    for (const Letter& a : w.letters) {
        if (a.kind == LetterKind::L) ++k;
        if (a.kind == LetterKind::LInv) --k;
    }
    return k;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The pair map
// ---------------------------------------------------------------------------

struct AffinePair {
    AffinePermutation f, fbar;

    friend bool operator==(const AffinePair&, const AffinePair&) = default;
};

/// Extract the pair (f, fbar) of a word.  Normalization pushes every unbarred
/// letter left past the L letters (index -1 per L crossed) and every barred
/// letter right (index +1 per L crossed); the normalized word reads
/// s_{i_1}...s_{i_l} L^K s-bar_{j_m}...s-bar_{j_1}, and then
/// f = s_{i_1}...s_{i_l} L^K and fbar = s_{n-j_1+1}...s_{n-j_m+1} L^K.
/// A word acts leftmost letter first -- the order in which a rightward
/// traveler meets the crossings of the fence -- so as a composition of
/// functions each expression reads right to left, and moving the trailing
/// L^K out front conjugates every reflection index up by K.  Only the
/// commutation and L-shift relations are used, so lengths are preserved.
inline AffinePair phi(const DoubleAffineWord& w) {
    if (w.n < 1) throw std::invalid_argument("phi: period must be positive");
    if (w.n == 1 && word_length(w) > 0)
        throw std::invalid_argument("phi: period one admits no crossing letters");
    long long K = detail::net_l_power(w);
    long long t = 0;  // net L power to the left of the current letter
    std::vector<long long> unbarred, barred;
    for (const Letter& a : w.letters) {
        switch (a.kind) {
            case LetterKind::L: ++t; break;
            case LetterKind::LInv: --t; break;
            case LetterKind::S: unbarred.push_back(detail::fold_index(a.index - t, w.n)); break;
            case LetterKind::SBar:
                barred.push_back(detail::fold_index(a.index + (K - t), w.n));
                break;
        }
    }
    // f = L^K s_{i_l} ... s_{i_1} as a function: the prefix reversed, with
    // indices raised by K.  The barred suffix already names fbar's expression
    // backwards, so complementing it in place gives fbar's function order:
    // fbar = L^K s_{n-j_m+1} ... s_{n-j_1+1}.
    std::vector<long long> fw, fbw;
    for (auto it = unbarred.rbegin(); it != unbarred.rend(); ++it)
        fw.push_back(detail::fold_index(*it + K, w.n));
    for (long long b : barred) fbw.push_back(detail::fold_index(w.n - b + 1 + K, w.n));
    return {from_word(w.n, fw, K), from_word(w.n, fbw, K)};
}

/// A word w with phi(w) = (f, fbar), built from reduced words of both
/// permutations; its crossing-letter count is length(f) + length(fbar).
inline DoubleAffineWord word_from_pair(const AffinePermutation& f,
                                       const AffinePermutation& fbar) {
    if (f.n() != fbar.n()) throw std::invalid_argument("word_from_pair: period mismatch");
    if (f.k() != fbar.k()) throw std::invalid_argument("word_from_pair: shift mismatch");
    int n = f.n();
    long long k = f.k();
    DoubleAffineWord w;
    w.n = n;
    // Undo phi's reversals: emit the reduced word of f backwards with indices
    // lowered by k, and the reduced word of fbar complemented in place.
    std::vector<long long> a = reduced_word(f).first;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        w.letters.push_back({LetterKind::S, static_cast<int>(detail::fold_index(*it - k, n))});
    for (long long t = 0; t < std::abs(k); ++t)
        w.letters.push_back({k > 0 ? LetterKind::L : LetterKind::LInv, 0});
    for (long long b : reduced_word(fbar).first)
        w.letters.push_back({LetterKind::SBar, detail::fold_index(n - b + k + 1, n)});
    return w;
}

/// Conjugation by L: every crossing letter's index shifts down by one.
inline DoubleAffineWord rotate_word(const DoubleAffineWord& w) {
    DoubleAffineWord out = w;
    for (Letter& a : out.letters)
        if (detail::is_crossing(a)) a.index = detail::fold_index(a.index - 1, w.n);
    return out;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Serialize as `n=4 ; s1 s3 sb4 L Linv`.
inline std::string format_word(const DoubleAffineWord& w) {
    std::ostringstream os;
    os << "n=" << w.n << " ;";
    for (const Letter& a : w.letters) {
        switch (a.kind) {
            case LetterKind::S: os << " s" << a.index; break;
            case LetterKind::SBar: os << " sb" << a.index; break;
            case LetterKind::L: os << " L"; break;
            case LetterKind::LInv: os << " Linv"; break;
        }
    }
    return os.str();
}

inline DoubleAffineWord parse_word(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok) || tok.rfind("n=", 0) != 0)
        throw std::invalid_argument("parse_word: expected leading n=<period>");
    DoubleAffineWord w;
    try {
        size_t used = 0;
        w.n = std::stoi(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_word: bad period in " + tok);
    }
    if (w.n < 1) throw std::invalid_argument("parse_word: period must be positive");
    if (!(is >> tok) || tok != ";")
        throw std::invalid_argument("parse_word: expected ';' after the period");
    while (is >> tok) {
        if (tok == "L") {
            w.letters.push_back({LetterKind::L, 0});
        } else if (tok == "Linv") {
            w.letters.push_back({LetterKind::LInv, 0});
        } else {
            LetterKind kind;
            std::string num;
            if (tok.rfind("sb", 0) == 0) {
                kind = LetterKind::SBar;
                num = tok.substr(2);
            } else if (tok.rfind("s", 0) == 0) {
                kind = LetterKind::S;
                num = tok.substr(1);
            } else {
                throw std::invalid_argument("parse_word: unknown letter " + tok);
            }
            try {
                size_t used = 0;
                int idx = std::stoi(num, &used);
                if (used != num.size()) throw std::invalid_argument("");
                w.letters.push_back({kind, detail::fold_index(idx, w.n)});
            } catch (const std::exception&) {
                throw std::invalid_argument("parse_word: bad letter index in " + tok);
            }
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Fence graphs
// ---------------------------------------------------------------------------

namespace detail {

/// One stop along a traced wire curve, in universal-cover coordinates:
/// either a vertex the curve passes through or a bend of its polyline.
struct WireItem {
    bool is_vertex = false;
    int vertex = -1;
    Vec2 lift;
};

/// Wire height lift: position q (any integer) sits at (2q-1)/(2n).
inline Rat wire_height(long long q, int n) { return Rat(2 * q - 1, 2 * n); }

}  // namespace detail

/// Build the fence graph of a word: n horizontal wires, one column per
/// letter.  Crossing letters contribute the two rung endpoints (white below
/// and black above for s_i, mirrored for s-bar_i) and the vertical rung; L
/// letters shift all wires up one position via short diagonals.  Wire
/// stretches between consecutive vertices become edges; stretches violating
/// bipartiteness receive a degree-two vertex of the opposite color at their
/// midpoint, and wires carrying no vertex at all receive a white/black
/// degree-two pair so that every strand lives on actual edges.
inline TorusGraph fence_graph(const DoubleAffineWord& w) {
    int n = w.n;
    if (n < 1) throw std::invalid_argument("fence_graph: period must be positive");
    if (n == 1 && word_length(w) > 0)
        throw std::invalid_argument("fence_graph: period one admits no crossing letters");
    int l = static_cast<int>(w.letters.size());
    Rat dx(1, 4 * (l + 1));  // half-width of an L column's diagonal

    TorusGraph g;
    // Rung endpoints, column by column: lower vertex at position i, upper at
    // position i+1 (stored at the folded height; the rung wraps when i = n).
    struct Rung {
        int i = 0, lower = -1, upper = -1;
    };
    std::map<int, Rung> rungs;  // column t (1-based) -> rung
    for (int t = 1; t <= l; ++t) {
        const Letter& a = w.letters[t - 1];
        if (!detail::is_crossing(a)) continue;
        int i = detail::fold_index(a.index, n);
        Color lower = a.kind == LetterKind::S ? Color::White : Color::Black;
        Rung r;
        r.i = i;
        r.lower = static_cast<int>(g.vertices.size());
        g.vertices.push_back({lower, {Rat(t, l + 1), detail::wire_height(i, n)}});
        r.upper = static_cast<int>(g.vertices.size());
        g.vertices.push_back(
            {opposite(lower), {Rat(t, l + 1), detail::wire_height(detail::fold_index(i + 1, n), n)}});
        rungs[t] = r;
        g.edges.push_back({r.lower, r.upper, {}, {0, i == n ? 1 : 0}});
    }

    // Trace the closed wire curves: orbits of the position under the net L
    // shift, one pass per horizontal loop.
    std::vector<bool> seen(n + 1, false);
    for (int p0 = 1; p0 <= n; ++p0) {
        if (seen[p0]) continue;
        std::vector<detail::WireItem> items;
        long long q = p0;  // lifted position index
        long long pass = 0;
        do {
            int pos = detail::fold_index(q, n);
            seen[pos] = true;
            for (int t = 1; t <= l; ++t) {
                const Letter& a = w.letters[t - 1];
                Rat x = Rat(t, l + 1) + Rat(pass);
                if (detail::is_crossing(a)) {
                    auto it = rungs.find(t);
                    pos = detail::fold_index(q, n);
                    int v = -1;
                    if (pos == it->second.i) v = it->second.lower;
                    if (pos == detail::fold_index(it->second.i + 1, n)) v = it->second.upper;
                    if (v >= 0)
                        items.push_back({true, v, {x, detail::wire_height(q, n)}});
                } else {
                    long long dq = a.kind == LetterKind::L ? 1 : -1;
                    items.push_back({false, -1, {x - dx, detail::wire_height(q, n)}});
                    items.push_back({false, -1, {x + dx, detail::wire_height(q + dq, n)}});
                    q += dq;
                }
            }
            ++pass;
        } while (detail::fold_index(q, n) != p0);
        Vec2 loop{Rat(pass), detail::wire_height(q, n) - detail::wire_height(p0, n)};

        // A wire with no vertex gets the auxiliary white/black pair on its
        // initial horizontal stretch, before the first column.
        if (std::none_of(items.begin(), items.end(),
                         [](const detail::WireItem& it) { return it.is_vertex; })) {
            Rat y = detail::wire_height(p0, n);
            for (int j = 1; j <= 2; ++j) {
                Vec2 p{Rat(j, 3 * (l + 1)), y};
                int v = static_cast<int>(g.vertices.size());
                g.vertices.push_back({j == 1 ? Color::White : Color::Black, p});
                items.insert(items.begin() + (j - 1), {true, v, p});
            }
        }

        // Rotate so the list starts with a vertex, keeping cover coordinates
        // consistent: items moved to the back advance by one loop.
        size_t first = 0;
        while (!items[first].is_vertex) ++first;
        std::rotate(items.begin(), items.begin() + first, items.end());
        for (size_t j = items.size() - first; j < items.size(); ++j)
            items[j].lift = items[j].lift + loop;

        // Restore bipartiteness: a stretch between same-colored vertices gets
        // an opposite-colored degree-two vertex at its midpoint abscissa.
        std::vector<detail::WireItem> fixed;
        for (size_t j = 0; j < items.size(); ++j) {
            fixed.push_back(items[j]);
            if (!items[j].is_vertex) continue;
            // Collect the stretch up to the next vertex (cyclically).
            std::vector<detail::WireItem> stretch;
            size_t j2 = j + 1;
            for (; j2 < items.size() && !items[j2].is_vertex; ++j2) stretch.push_back(items[j2]);
            detail::WireItem next = j2 < items.size() ? items[j2] : items[0];
            if (j2 == items.size()) next.lift = next.lift + loop;
            if (g.vertices[items[j].vertex].color != g.vertices[next.vertex].color) continue;

            Rat xm = Rat(1, 2) * (items[j].lift.x + next.lift.x);
            std::vector<Vec2> pts{items[j].lift};
            for (const detail::WireItem& b : stretch) pts.push_back(b.lift);
            pts.push_back(next.lift);
            Vec2 mid;
            for (size_t s = 0; s + 1 < pts.size(); ++s) {
                if (pts[s].x <= xm && xm <= pts[s + 1].x) {
                    Rat u = (xm - pts[s].x) / (pts[s + 1].x - pts[s].x);
                    mid = pts[s] + u * (pts[s + 1] - pts[s]);
                    break;
                }
            }
            int v = static_cast<int>(g.vertices.size());
            g.vertices.push_back({opposite(g.vertices[items[j].vertex].color),
                                  detail::wrap_point(mid)});
            // Emit the bends before the midpoint, the new vertex, then the
            // rest; a bend exactly at the midpoint is replaced by the vertex.
            for (const detail::WireItem& b : stretch)
                if (b.lift.x < xm) fixed.push_back(b);
            fixed.push_back({true, v, mid});
            for (const detail::WireItem& b : stretch)
                if (b.lift.x > xm) fixed.push_back(b);
            j = j2 - 1;  // skip the stretch we just emitted
        }

        // Emit wire edges between consecutive vertices.
        std::vector<size_t> vidx;
        for (size_t j = 0; j < fixed.size(); ++j)
            if (fixed[j].is_vertex) vidx.push_back(j);
        for (size_t a = 0; a < vidx.size(); ++a) {
            size_t ia = vidx[a];
            size_t ib = vidx[(a + 1) % vidx.size()];
            Vec2 start = fixed[ia].lift;
            std::vector<Vec2> way;
            Vec2 end;
            if (a + 1 < vidx.size()) {
                for (size_t j = ia + 1; j < ib; ++j) way.push_back(fixed[j].lift);
                end = fixed[ib].lift;
            } else {
                for (size_t j = ia + 1; j < fixed.size(); ++j) way.push_back(fixed[j].lift);
                for (size_t j = 0; j < ib; ++j) way.push_back(fixed[j].lift + loop);
                end = fixed[ib].lift + loop;
            }
            IVec2 base = detail::cover_offset(start);
            Edge e;
            e.from = fixed[ia].vertex;
            e.to = fixed[ib].vertex;
            for (Vec2& p : way) e.waypoints.push_back(p - to_vec2(base));
            e.voltage = detail::cover_offset(end) - base;
            g.edges.push_back(e);
        }
    }

    std::vector<std::string> issues = validate(g);
    if (!issues.empty())
        throw std::logic_error("fence_graph: construction failed validation: " + issues.front());
    return g;
}

}  // namespace torusmoves
