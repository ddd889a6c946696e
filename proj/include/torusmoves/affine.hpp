#pragma once

/**
 * @file affine.hpp
 * @brief Affine permutations: bijections f of Z with f(i+n) = f(i)+n, stored
 *        by their window [f(1),...,f(n)].
 *
 * Provides the group operations, inversion count (length), cycle structure
 * with slopes, restrictions, weak/strong decorated vector configurations,
 * the zonotope-area length formula and c-reducedness test, reduced words,
 * and the modular invariant.
 */

#include <torusmoves/cyclic.hpp>
#include <torusmoves/rational.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace torusmoves {

class AffinePermutation {
public:
    AffinePermutation() : n_(1), window_{1} {}

    /// Validates that window entries hit each residue class mod n exactly once.
    AffinePermutation(int n, std::vector<long long> window) : n_(n), window_(std::move(window)) {
        if (n_ <= 0 || static_cast<int>(window_.size()) != n_)
            throw std::invalid_argument("AffinePermutation: window size must equal n");
        std::vector<bool> seen(n_, false);
        for (long long v : window_) {
            long long r = ((v - 1) % n_ + n_) % n_;
            if (seen[r])
                throw std::invalid_argument(
                    "AffinePermutation: window residues must be distinct");
            seen[r] = true;
        }
    }

    int n() const { return n_; }
    const std::vector<long long>& window() const { return window_; }

    /// f(i) for arbitrary integer i, via f(i+n) = f(i)+n.
    long long operator()(long long i) const {
        long long r = ((i - 1) % n_ + n_) % n_;  // 0-based residue index
        return window_[r] + (i - (r + 1));
    }

    /// Average displacement: (sum f(i) - sum i)/n over the window, an integer.
    long long k() const {
        long long s = 0;
        for (int i = 1; i <= n_; ++i) s += window_[i - 1] - i;
        return s / n_;
    }

    friend bool operator==(const AffinePermutation&, const AffinePermutation&) = default;
    friend auto operator<=>(const AffinePermutation&, const AffinePermutation&) = default;

    static AffinePermutation identity(int n) {
        std::vector<long long> w(n);
        std::iota(w.begin(), w.end(), 1);
        return AffinePermutation(n, std::move(w));
    }

    /// The shift i -> i + k.
    static AffinePermutation lambda_power(int n, long long k) {
        std::vector<long long> w(n);
        for (int i = 1; i <= n; ++i) w[i - 1] = i + k;
        return AffinePermutation(n, std::move(w));
    }

    /// Simple reflection s_i: swaps i+tn and i+1+tn for all t.  The index is
    /// taken mod n, so s_n swaps n and n+1 (equivalently 0 and 1).  At n = 1
    /// no such swap is compatible with the period; the rank is zero and the
    /// degenerate convention returns the identity.
    static AffinePermutation simple_reflection(int n, long long i) {
        if (n == 1) return identity(1);
        int r = static_cast<int>(((i - 1) % n + n) % n) + 1;  // representative in [1, n]
        auto f = identity(n);
        std::vector<long long> w = f.window();
        if (r < n) {
            std::swap(w[r - 1], w[r]);
        } else {
            w[n - 1] = n + 1;
            w[0] = 0;
        }
        return AffinePermutation(n, std::move(w));
    }

private:
    int n_;
    std::vector<long long> window_;
};

/// (f o g)(i) = f(g(i)).
inline AffinePermutation compose(const AffinePermutation& f, const AffinePermutation& g) {
    if (f.n() != g.n()) throw std::invalid_argument("compose: period mismatch");
    std::vector<long long> w(f.n());
    for (int i = 1; i <= f.n(); ++i) w[i - 1] = f(g(i));
    return AffinePermutation(f.n(), std::move(w));
}

inline AffinePermutation inverse(const AffinePermutation& f) {
    std::vector<long long> w(f.n());
    for (int j = 1; j <= f.n(); ++j) {
        long long v = f(j);
        long long r = ((v - 1) % f.n() + f.n()) % f.n();  // v = (r+1) + t n
        w[r] = j - (v - (r + 1));
    }
    return AffinePermutation(f.n(), std::move(w));
}

/// g f g^{-1}.
inline AffinePermutation conjugate_by(const AffinePermutation& f, const AffinePermutation& g) {
    return compose(g, compose(f, inverse(g)));
}

/// The rotation operator: Lambda f Lambda^{-1}; shifts every residue by one.
inline AffinePermutation rotate(const AffinePermutation& f) {
    std::vector<long long> w(f.n());
    for (int i = 1; i <= f.n(); ++i) w[i - 1] = f(i - 1) + 1;
    return AffinePermutation(f.n(), std::move(w));
}

/// Product of simple reflections (rightmost applied first) times Lambda^k.
inline AffinePermutation from_word(int n, const std::vector<long long>& indices, long long k) {
    AffinePermutation f = AffinePermutation::lambda_power(n, k);
    for (auto it = indices.rbegin(); it != indices.rend(); ++it)
        f = compose(AffinePermutation::simple_reflection(n, *it), f);
    return f;
}

/// Inversion count: pairs i < j with f(i) > f(j), i in the window.  The second
/// index only needs to range over a bounded window because displacements are
/// bounded by M = max |f(i)-i|.
inline long long length(const AffinePermutation& f) {
    long long M = 0;
    for (int i = 1; i <= f.n(); ++i) M = std::max(M, std::llabs(f(i) - i));
    auto count_with = [&](long long extent) {
        long long cnt = 0;
        for (int i = 1; i <= f.n(); ++i)
            for (long long j = i + 1; j <= i + extent; ++j)
                if (f(i) > f(j)) ++cnt;
        return cnt;
    };
    long long ell = count_with(f.n() + 2 * M);
#ifdef TORUSMOVES_EXTRA_CHECKS
    if (ell != count_with(2 * f.n() + 4 * M + 8))
        throw std::logic_error("length: window bound violated");
#endif
    return ell;
}

/// One cycle of the residue action, with its winding data: following the
/// cycle for nC steps returns to the start shifted by kC periods.
struct Cycle {
    std::vector<int> residues;  // sorted, in [1, n]
    long long nC = 0;           // number of residues
    long long kC = 0;           // total displacement / n
    long long d = 0;            // gcd(nC, |kC|); the lattice length of (nC, kC)
    Rat slope;                  // kC / nC
};

inline std::vector<Cycle> cycles(const AffinePermutation& f) {
    int n = f.n();
    std::vector<bool> seen(n + 1, false);
    std::vector<Cycle> out;
    for (int start = 1; start <= n; ++start) {
        if (seen[start]) continue;
        Cycle c;
        long long total = 0;
        int i = start;
        do {
            seen[i] = true;
            c.residues.push_back(i);
            total += f(i) - i;
            i = static_cast<int>(((f(i) - 1) % n + n) % n) + 1;
        } while (i != start);
        std::sort(c.residues.begin(), c.residues.end());
        c.nC = static_cast<long long>(c.residues.size());
        c.kC = total / n;
        c.d = std::gcd(c.nC, std::llabs(c.kC));
        c.slope = Rat(Int(c.kC), Int(c.nC));
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const Cycle& a, const Cycle& b) { return a.residues[0] < b.residues[0]; });
    return out;
}

/// Restriction to a union of residue classes: relabels the given residues
/// 1..n' in increasing order and conjugates f by that relabelling.  The
/// residue set must be a union of cycles of f.
inline AffinePermutation restriction(const AffinePermutation& f, std::vector<int> support) {
    std::sort(support.begin(), support.end());
    int np = static_cast<int>(support.size());
    std::map<int, int> pos;  // residue -> 1-based position
    for (int a = 0; a < np; ++a) pos[support[a]] = a + 1;
    std::vector<long long> w(np);
    for (int a = 1; a <= np; ++a) {
        long long v = f(support[a - 1]);
        int r = static_cast<int>(((v - 1) % f.n() + f.n()) % f.n()) + 1;
        auto it = pos.find(r);
        if (it == pos.end())
            throw std::invalid_argument("restriction: support is not a union of cycles");
        // v = r + t n  maps to  pos(r) + t n'.
        long long t = (v - r) / f.n();
        w[a - 1] = it->second + t * np;
    }
    return AffinePermutation(np, std::move(w));
}

/// One edge of a decorated vector configuration: the total vector of a slope
/// class of cycles together with the multiset (weak) of their lattice lengths.
struct WeakEdge {
    IVec2 vec;         // (sum nC, sum kC) over the slope class; x > 0
    Partition lambda;  // lattice lengths d_C, as a partition of gcd(vec)
    friend bool operator==(const WeakEdge&, const WeakEdge&) = default;
};

/// Strong version: the cyclic order of the cycles around the circle is
/// remembered as a cyclic composition.
struct StrongEdge {
    IVec2 vec;
    CyclicComposition comp;
    friend bool operator==(const StrongEdge&, const StrongEdge&) = default;
};

using WeakConfig = std::vector<WeakEdge>;      // sorted by slope, decreasing
using StrongConfig = std::vector<StrongEdge>;  // sorted by slope, decreasing

namespace detail {

/// Cycle indices grouped by slope, slopes decreasing.
inline std::vector<std::pair<Rat, std::vector<size_t>>> slope_classes(
    const std::vector<Cycle>& cyc) {
    std::map<Rat, std::vector<size_t>, std::greater<Rat>> by_slope;
    for (size_t i = 0; i < cyc.size(); ++i) by_slope[cyc[i].slope].push_back(i);
    return {by_slope.begin(), by_slope.end()};
}

}  // namespace detail

inline WeakConfig weak_config(const AffinePermutation& f) {
    auto cyc = cycles(f);
    WeakConfig out;
    for (auto& [slope, ids] : detail::slope_classes(cyc)) {
        WeakEdge e;
        std::vector<int> lens;
        for (size_t i : ids) {
            e.vec = e.vec + IVec2{cyc[i].nC, cyc[i].kC};
            lens.push_back(static_cast<int>(cyc[i].d));
        }
        e.lambda = Partition(std::move(lens));
        out.push_back(std::move(e));
    }
    return out;
}

inline long long zonotope_area(const std::vector<IVec2>& vectors) {
    long long area = 0;
    for (size_t i = 0; i < vectors.size(); ++i)
        for (size_t j = i + 1; j < vectors.size(); ++j)
            area += std::llabs(cross(vectors[i], vectors[j]));
    return area;
}

inline long long zonotope_area(const WeakConfig& config) {
    std::vector<IVec2> vs;
    for (auto& e : config) vs.push_back(e.vec);
    return zonotope_area(vs);
}

inline int excess(const WeakConfig& config) {
    int x = 0;
    for (auto& e : config) x += e.lambda.excess();
    return x;
}

/// Crossings between two cycles: inversion pairs (j, j') with j a window
/// residue of C and j' anywhere in C'.
inline long long xing(const AffinePermutation& f, const Cycle& C, const Cycle& Cp) {
    long long M = 0;
    for (int i = 1; i <= f.n(); ++i) M = std::max(M, std::llabs(f(i) - i));
    auto in_cycle = [&](long long j, const Cycle& cy) {
        int r = static_cast<int>(((j - 1) % f.n() + f.n()) % f.n()) + 1;
        return std::binary_search(cy.residues.begin(), cy.residues.end(), r);
    };
    long long cnt = 0;
    for (int j : C.residues)
        for (long long jp = j + 1; jp <= j + f.n() + 2 * M; ++jp)
            if (in_cycle(jp, Cp) && f(j) > f(jp)) ++cnt;
    return cnt;
}

/// Minimal length in its conjugacy class, decided by the aggregate length
/// formula: l(f) equals the zonotope area of the configuration plus its excess.
inline bool is_c_reduced(const AffinePermutation& f) {
    WeakConfig cfg = weak_config(f);
    bool reduced = length(f) == zonotope_area(cfg) + excess(cfg);
#ifdef TORUSMOVES_EXTRA_CHECKS
    if (reduced) {
        // Redundant per-pair verification: within a cycle d-1 self-crossings;
        // between cycles, crossings split by slope order and vanish same-slope.
        auto cyc = cycles(f);
        for (size_t a = 0; a < cyc.size(); ++a) {
            if (xing(f, cyc[a], cyc[a]) != cyc[a].d - 1)
                throw std::logic_error("is_c_reduced: self-crossing count mismatch");
            for (size_t b = 0; b < cyc.size(); ++b) {
                if (a == b) continue;
                long long expect =
                    cyc[a].slope <= cyc[b].slope
                        ? 0
                        : std::llabs(cross(IVec2{cyc[a].nC, cyc[a].kC},
                                           IVec2{cyc[b].nC, cyc[b].kC}));
                if (xing(f, cyc[a], cyc[b]) != expect)
                    throw std::logic_error("is_c_reduced: pair crossing count mismatch");
            }
        }
    }
#endif
    return reduced;
}

/// Strong decorated configuration; requires a c-reduced permutation, since
/// only then do same-slope cycles occupy periodic blocks in a cyclic order.
inline StrongConfig strong_config(const AffinePermutation& f) {
    if (!is_c_reduced(f))
        throw std::invalid_argument("strong_config: permutation is not c-reduced");
    auto cyc = cycles(f);
    StrongConfig out;
    for (auto& [slope, ids] : detail::slope_classes(cyc)) {
        StrongEdge e;
        long long d = 0;
        std::vector<int> support;
        for (size_t i : ids) {
            e.vec = e.vec + IVec2{cyc[i].nC, cyc[i].kC};
            d += cyc[i].d;
            support.insert(support.end(), cyc[i].residues.begin(), cyc[i].residues.end());
        }
        std::sort(support.begin(), support.end());
        int np = static_cast<int>(support.size());
        // label[x] = which cycle the x-th support residue belongs to (0-based x).
        std::vector<int> label(np);
        for (int x = 0; x < np; ++x) {
            for (size_t a = 0; a < ids.size(); ++a)
                if (std::binary_search(cyc[ids[a]].residues.begin(), cyc[ids[a]].residues.end(),
                                       support[x]))
                    label[x] = static_cast<int>(a);
        }
        // Cycles repeat with period d along the support circle...
        for (int x = 0; x < np; ++x)
            if (label[x] != label[(x + d) % np])
                throw std::logic_error("strong_config: slope class is not d-periodic");
        // ...so the first d labels trace the cyclic arrangement; each cycle
        // must occupy one contiguous cyclic arc of length its lattice length.
        std::vector<int> runs;
        int at = 0;
        while (at < d && d > 1 && label[at] == label[(at + d - 1) % d]) ++at;  // start of a run
        for (int step = 0, len = 0; step < d; ++step) {
            ++len;
            if (label[(at + step) % d] != label[(at + step + 1) % d] || step == d - 1) {
                runs.push_back(len);
                len = 0;
            }
        }
        if (static_cast<int>(runs.size()) != static_cast<int>(ids.size()))
            throw std::logic_error("strong_config: cycle arcs are not contiguous");
        e.comp = CyclicComposition(std::move(runs));
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<CyclicComposition> compositions_of(const StrongConfig& cfg) {
    std::vector<CyclicComposition> cs;
    for (auto& e : cfg) cs.push_back(e.comp);
    return cs;
}

/// A value in Z/modulus Z.
struct ModularInvariant {
    int value = 0;
    int modulus = 1;
    friend bool operator==(const ModularInvariant&, const ModularInvariant&) = default;
};

namespace detail {

/// Union-find.
struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Anchored interval start for a single-cycle constant-slope permutation with
/// lattice length d >= 2.  In the arrow diagram (segments (i,1)->(f(i),0),
/// which intersect exactly at inversions), a minimal-length single cycle has
/// d-1 crossings per period, and they all glue one block of d consecutive
/// arrows [t, t+d-1]; every other arrow is a singleton component.  The
/// interval [t, t+d-1] anchors the partition of Z/dZ.  When the slope has
/// denominator 1 every arrow lies in such a block and the blocks tile Z, so
/// the same rule applies.  Components are found over a finite window whose
/// padding covers the crossing reach n + 2M per requested period.
inline int single_cycle_anchor(const AffinePermutation& f, long long d, int periods) {
    long long np = f.n();
    long long M = 0;
    for (int i = 1; i <= np; ++i) M = std::max(M, std::llabs(f(i) - i));
    long long pad = periods * (np + 2 * M + 2);
    long long lo = 1 - pad, hi = np + pad;
    int m = static_cast<int>(hi - lo + 1);
    DSU dsu(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            long long i = lo + a, j = lo + b;
            if (f(i) > f(j)) dsu.unite(a, b);
        }
    std::vector<int> size(m, 0);
    for (int a = 0; a < m; ++a) ++size[dsu.find(a)];
    // Interior arrows belonging to a multi-arrow component.
    std::vector<long long> glued;
    for (long long j = 1; j <= np; ++j)
        if (size[dsu.find(static_cast<int>(j - lo))] >= 2) glued.push_back(j);
    if (glued.empty())
        throw std::logic_error("single_cycle_anchor: no crossings in a period");
    // The component of the first glued arrow must be d consecutive integers...
    std::vector<long long> block;
    int root = dsu.find(static_cast<int>(glued.front() - lo));
    for (int a = 0; a < m; ++a)
        if (dsu.find(a) == root) block.push_back(lo + a);
    if (static_cast<long long>(block.size()) != d || block.back() - block.front() != d - 1)
        throw std::logic_error("single_cycle_anchor: glued block is not d consecutive arrows");
    long long t = block.front();
    // ...and every glued interior arrow must sit in a period-translate of it.
    for (long long j : glued)
        if (((j - t) % np + np) % np >= d)
            throw std::logic_error("single_cycle_anchor: multiple glued blocks per period");
    return static_cast<int>(((t - 1) % d + d) % d);  // 0-based start of [t, t+d-1]
}

}  // namespace detail

/// Anchored interval partition of Z/dZ for a constant-slope c-reduced
/// permutation: residues of each cycle taken mod d form the intervals.
inline IntervalPartition slope_interval_partition(const AffinePermutation& fr) {
    auto cyc = cycles(fr);
    long long d = 0;
    for (auto& c : cyc) d += c.d;
    if (cyc.size() == 1) {
        int start = 0;
        if (d > 1) {
            start = detail::single_cycle_anchor(fr, d, 3);
#ifdef TORUSMOVES_EXTRA_CHECKS
            if (start != detail::single_cycle_anchor(fr, d, 5))
                throw std::logic_error("slope_interval_partition: window-size instability");
#endif
        }
        return IntervalPartition(static_cast<int>(d), {{start, static_cast<int>(d)}});
    }
    // Multi-cycle: residue r belongs to interval I_C at position (r-1) mod d.
    std::vector<std::pair<int, int>> intervals;
    for (auto& c : cyc) {
        std::vector<int> image;
        for (int r : c.residues) image.push_back(static_cast<int>((r - 1) % d));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (static_cast<long long>(image.size()) != c.d)
            throw std::logic_error("slope_interval_partition: image size mismatch");
        // Find the cyclic-interval start: the unique element whose predecessor
        // mod d is absent (or the whole circle).
        if (static_cast<long long>(image.size()) == d) {
            intervals.emplace_back(0, static_cast<int>(d));
            continue;
        }
        int start = -1;
        for (int v : image) {
            int prev = static_cast<int>((v + d - 1) % d);
            if (!std::binary_search(image.begin(), image.end(), prev)) {
                if (start >= 0)
                    throw std::logic_error("slope_interval_partition: image not an interval");
                start = v;
            }
        }
        intervals.emplace_back(start, static_cast<int>(c.d));
    }
    return IntervalPartition(static_cast<int>(d), std::move(intervals));
}

/// Modular invariant of a c-reduced permutation: per slope, the rotation
/// offset between the reference interval partition of the cyclic composition
/// and the observed one; summed over slopes mod the rotation gcd.
inline ModularInvariant modular_invariant(const AffinePermutation& f) {
    StrongConfig cfg = strong_config(f);  // also enforces c-reducedness
    int d_bfcc = rotation_gcd(compositions_of(cfg));
    auto cyc = cycles(f);
    long long total = 0;
    for (auto& [slope, ids] : detail::slope_classes(cyc)) {
        std::vector<int> support;
        for (size_t i : ids)
            support.insert(support.end(), cyc[i].residues.begin(), cyc[i].residues.end());
        AffinePermutation fr = restriction(f, support);
        // The composition of this slope class, from the stored configuration.
        const StrongEdge* edge = nullptr;
        for (auto& e : cfg) {
            if (Rat(Int(e.vec.y), Int(e.vec.x)) == slope) edge = &e;
        }
        int rot = rotation_number(edge->comp);
        IntervalPartition observed = slope_interval_partition(fr);
        total += interval_shift(interval_partition(edge->comp), observed, rot);
    }
    return {static_cast<int>(total % d_bfcc), d_bfcc};
}

/// Reduced word: peels the smallest left descent repeatedly, ending at a pure
/// shift.  Returns the reflection indices (leftmost first) and the shift power.
inline std::pair<std::vector<long long>, long long> reduced_word(const AffinePermutation& f) {
    std::vector<long long> indices;
    AffinePermutation g = f;
    for (;;) {
        AffinePermutation gi = inverse(g);
        long long descent = 0;
        for (long long i = 1; i <= g.n(); ++i) {
            if (gi(i) > gi(i + 1)) {
                descent = i;
                break;
            }
        }
        if (descent == 0) break;
        indices.push_back(descent);
        g = compose(AffinePermutation::simple_reflection(g.n(), descent), g);
    }
    long long k = g.k();
    if (g != AffinePermutation::lambda_power(g.n(), k))
        throw std::logic_error("reduced_word: residue after peeling is not a shift");
    return {indices, k};
}

/// Decides c-equivalence of two c-reduced permutations: equal strongly
/// decorated configurations and equal modular invariants.
inline bool c_equivalent(const AffinePermutation& f, const AffinePermutation& g) {
    if (f.n() != g.n()) throw std::invalid_argument("c_equivalent: period mismatch");
    if (!is_c_reduced(f) || !is_c_reduced(g))
        throw std::invalid_argument("c_equivalent: inputs must be c-reduced");
    if (strong_config(f) != strong_config(g)) return false;
    return modular_invariant(f) == modular_invariant(g);
}

/// Text format: "n=7 [7,-1,2,5,8,3,11]" (ASCII hyphens only).
inline std::string to_string(const AffinePermutation& f) {
    std::ostringstream os;
    os << "n=" << f.n() << " [";
    for (int i = 0; i < f.n(); ++i) os << (i ? "," : "") << f.window()[i];
    os << "]";
    return os.str();
}

inline AffinePermutation parse_affine(const std::string& text) {
    std::string s = text;
    auto fail = []() -> AffinePermutation {
        throw std::invalid_argument("parse_affine: expected \"n=<int> [w1,...,wn]\"");
    };
    auto eq = s.find("n=");
    auto lb = s.find('[');
    auto rb = s.find(']');
    if (eq == std::string::npos || lb == std::string::npos || rb == std::string::npos ||
        rb < lb)
        return fail();
    int n = 0;
    try {
        n = std::stoi(s.substr(eq + 2, lb - (eq + 2)));
    } catch (const std::exception&) {
        return fail();
    }
    std::vector<long long> w;
    std::string body = s.substr(lb + 1, rb - lb - 1);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            w.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            return fail();
        }
    }
    return AffinePermutation(n, std::move(w));
}

}  // namespace torusmoves
