#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include <torusmoves/decoration.hpp>
#include <torusmoves/fence.hpp>

using namespace torusmoves;

namespace {

/// The running example word: seven crossing letters over period four.
DoubleAffineWord example_word() { return parse_word("n=4 ; s1 s3 s4 s3 s1 s4 L L sb4"); }

/// Newton polygon summary as a sorted list of (edge vector, composition).
std::vector<std::pair<IVec2, std::vector<int>>> polygon_summary(const TorusGraph& g) {
    std::vector<std::pair<IVec2, std::vector<int>>> out;
    for (const DecoratedPolygonEdge& e : strong_decoration(g).edges)
        out.emplace_back(e.vec, e.comp->parts());
    std::sort(out.begin(), out.end());
    return out;
}

int degree_three_blacks(const TorusGraph& g) {
    std::vector<int> deg = vertex_degrees(g);
    int c = 0;
    for (size_t v = 0; v < g.vertices.size(); ++v)
        if (g.vertices[v].color == Color::Black && deg[v] == 3) ++c;
    return c;
}

/// The product s_{i_1} ... s_{i_l} L^k with letters acting leftmost first, as
/// a rightward traveler meets the crossings.
AffinePermutation left_product(int n, const std::vector<long long>& idx, long long k) {
    AffinePermutation acc = AffinePermutation::identity(n);
    for (long long i : idx) acc = compose(AffinePermutation::simple_reflection(n, i), acc);
    return compose(AffinePermutation::lambda_power(n, k), acc);
}

/// A uniformly random c-reduced affine permutation with the given shift,
/// found by rejection over random words.
AffinePermutation random_c_reduced(std::mt19937& rng, int n, long long k, int max_len) {
    for (;;) {
        std::uniform_int_distribution<int> len(0, max_len), idx(1, n);
        std::vector<long long> word;
        for (int i = len(rng); i > 0; --i) word.push_back(idx(rng));
        AffinePermutation f = from_word(n, word, k);
        if (is_c_reduced(f)) return f;
    }
}

}  // namespace

TEST_CASE("pair map on the running example") {
    AffinePair p = phi(example_word());
    REQUIRE(p.f == left_product(4, {1, 3, 4, 3, 1, 4}, 2));
    REQUIRE(p.fbar == left_product(4, {1}, 2));
    REQUIRE(length(p.f) == 6);
    REQUIRE(length(p.fbar) == 1);
    REQUIRE(word_length(example_word()) == length(p.f) + length(p.fbar));
}

TEST_CASE("pair map basics") {
    // Pure shift words.
    DoubleAffineWord shifts{5, {{LetterKind::L, 0}, {LetterKind::L, 0}, {LetterKind::L, 0}}};
    AffinePair p = phi(shifts);
    REQUIRE(p.f == AffinePermutation::lambda_power(5, 3));
    REQUIRE(p.fbar == AffinePermutation::lambda_power(5, 3));

    // A single barred letter: the index complements.
    AffinePair q = phi(parse_word("n=3 ; sb2"));
    REQUIRE(q.f == AffinePermutation::identity(3));
    REQUIRE(q.fbar == AffinePermutation::simple_reflection(3, 2));

    // Normalization across L letters agrees with the hand-normalized word.
    REQUIRE(phi(parse_word("n=3 ; L s2 sb1 Linv s3")) == phi(parse_word("n=3 ; s1 s3 sb3")));

    REQUIRE_THROWS_AS(phi(parse_word("n=1 ; s1")), std::invalid_argument);
}

TEST_CASE("word construction from a pair") {
    DoubleAffineWord lam = word_from_pair(AffinePermutation::lambda_power(4, 2),
                                          AffinePermutation::lambda_power(4, 2));
    REQUIRE(lam == parse_word("n=4 ; L L"));

    AffinePair p = phi(example_word());
    DoubleAffineWord w = word_from_pair(p.f, p.fbar);
    REQUIRE(phi(w) == p);
    REQUIRE(word_length(w) == 7);

    REQUIRE_THROWS_AS(word_from_pair(AffinePermutation::lambda_power(3, 1),
                                     AffinePermutation::lambda_power(3, 2)),
                      std::invalid_argument);

    std::mt19937 rng(41);
    std::uniform_int_distribution<int> period(2, 4), shift(-2, 2), len(0, 6);
    for (int trial = 0; trial < 50; ++trial) {
        int n = period(rng);
        long long k = shift(rng);
        std::uniform_int_distribution<int> idx(1, n);
        std::vector<long long> a, b;
        for (int i = len(rng); i > 0; --i) a.push_back(idx(rng));
        for (int i = len(rng); i > 0; --i) b.push_back(idx(rng));
        AffinePermutation f = from_word(n, a, k), fbar = from_word(n, b, k);
        DoubleAffineWord rt = word_from_pair(f, fbar);
        REQUIRE(phi(rt) == AffinePair{f, fbar});
        REQUIRE(word_length(rt) == length(f) + length(fbar));
    }
}

TEST_CASE("word rotation") {
    DoubleAffineWord lam = parse_word("n=4 ; L");
    REQUIRE(rotate_word(lam) == lam);

    DoubleAffineWord w = parse_word("n=3 ; s1 sb2 L");
    REQUIRE(rotate_word(w) == parse_word("n=3 ; s3 sb1 L"));

    // phi intertwines rotation: f conjugates by L^-1, fbar by L.  The two
    // modular invariants move in opposite directions, so their sum -- the
    // invariant of the fence graph -- is unchanged.
    for (const DoubleAffineWord& v : {example_word(), w}) {
        AffinePair p = phi(v), r = phi(rotate_word(v));
        REQUIRE(r.f == conjugate_by(p.f, AffinePermutation::lambda_power(v.n, -1)));
        REQUIRE(r.fbar == rotate(p.fbar));
    }
}

TEST_CASE("word text format round trip") {
    DoubleAffineWord w = example_word();
    REQUIRE(parse_word(format_word(w)) == w);
    REQUIRE(format_word(parse_word("n=2 ; s1 Linv sb2")) == "n=2 ; s1 Linv sb2");
    REQUIRE_THROWS_AS(parse_word("s1 s2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_word("n=3 ; x4"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_word("n=0 ; L"), std::invalid_argument);
}

TEST_CASE("fence graph of the running example") {
    TorusGraph g = fence_graph(example_word());
    REQUIRE(validate(g).empty());
    REQUIRE(is_move_reduced(g) == Reducedness::Reduced);
    REQUIRE(degree_three_blacks(g) == 7);
    REQUIRE(count_contractible_faces(g) == 7);
    REQUIRE(strands(g).size() == 3);
    REQUIRE(perfect_matching_exists(g));

    std::vector<std::pair<IVec2, std::vector<int>>> expected = {
        {{-4, -2}, {2}}, {{2, 0}, {2}}, {{2, 2}, {2}}};
    REQUIRE(polygon_summary(g) == expected);
}

TEST_CASE("fence graphs of small words") {
    // Two crossing letters, no fillers needed.
    TorusGraph g = fence_graph(parse_word("n=2 ; s1 sb1"));
    REQUIRE(g.vertices.size() == 4);
    IVec2 total{0, 0};
    for (const Strand& s : strands(g)) total = total + s.homology;
    REQUIRE(total == IVec2{0, 0});

    // Bare shift words: wire orbits with auxiliary pairs.
    TorusGraph lam = fence_graph(parse_word("n=4 ; L L"));
    REQUIRE(lam.vertices.size() == 4);  // two orbits, one white/black pair each
    REQUIRE(is_move_reduced(lam) == Reducedness::Reduced);
    std::vector<IVec2> hom;
    for (const Strand& s : strands(lam)) hom.push_back(s.homology);
    std::sort(hom.begin(), hom.end());
    REQUIRE(hom == std::vector<IVec2>{{-2, -1}, {-2, -1}, {2, 1}, {2, 1}});

    TorusGraph empty_word = fence_graph(DoubleAffineWord{3, {}});
    REQUIRE(empty_word.vertices.size() == 6);
    REQUIRE(is_move_reduced(empty_word) == Reducedness::Reduced);

    TorusGraph tiny = fence_graph(parse_word("n=1 ; L"));
    REQUIRE(tiny.vertices.size() == 2);
    REQUIRE(strands(tiny).size() == 2);
    REQUIRE_THROWS_AS(fence_graph(parse_word("n=1 ; s1")), std::invalid_argument);
}

TEST_CASE("modular invariant of a fence matches the pair") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> period(2, 4), shift(-2, 2);
    int done = 0;
    while (done < 40) {
        int n = period(rng);
        long long k = shift(rng);
        AffinePermutation f = random_c_reduced(rng, n, k, 4);
        AffinePermutation fbar = random_c_reduced(rng, n, k, 4);
        DoubleAffineWord w = word_from_pair(f, fbar);
        TorusGraph g = fence_graph(w);
        REQUIRE(is_move_reduced(g) == Reducedness::Reduced);
        REQUIRE(count_contractible_faces(g) == word_length(w));
        REQUIRE(degree_three_blacks(g) == word_length(w));

        ModularInvariant mf = modular_invariant(f);
        ModularInvariant mfb = modular_invariant(fbar);
        ModularInvariant mg = modular_invariant(g);
        REQUIRE(mg.modulus == std::gcd(mf.modulus, mfb.modulus));
        REQUIRE(mg.value == ((mf.value + mfb.value) % mg.modulus + mg.modulus) % mg.modulus);

        // Rotating the word moves the invariant between the halves but fixes
        // the graph's value.
        DoubleAffineWord rw = rotate_word(w);
        REQUIRE(modular_invariant(fence_graph(rw)) == mg);
        ++done;
    }
}
