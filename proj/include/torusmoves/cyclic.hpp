#pragma once

/**
 * @file cyclic.hpp
 * @brief Partitions, cyclic compositions, and cyclic interval partitions of Z/nZ.
 *
 * A cyclic composition is a sequence of positive parts considered up to cyclic
 * rotation; values are stored in normal form (the lexicographically maximal
 * rotation), so structural equality coincides with cyclic equality.  Each
 * composition induces a partition of Z/nZ into cyclic intervals, whose
 * rotational symmetry defines the rotation number.
 */

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace torusmoves {

/// Integer partition: weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
        for (int p : parts_)
            if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
    }

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int count() const { return static_cast<int>(parts_.size()); }

    /// size minus number of parts; zero iff all parts equal 1.
    int excess() const { return size() - count(); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

namespace detail {

/// Lexicographically maximal rotation; ties broken by the smallest offset
/// (the tied rotations are identical as sequences, so the value is unique).
inline std::vector<int> lex_max_rotation(const std::vector<int>& seq) {
    size_t m = seq.size();
    std::vector<int> best = seq;
    for (size_t r = 1; r < m; ++r) {
        std::vector<int> cand(m);
        for (size_t i = 0; i < m; ++i) cand[i] = seq[(r + i) % m];
        if (cand > best) best = std::move(cand);
    }
    return best;
}

}  // namespace detail

/// Composition of n into positive parts, up to cyclic rotation.
class CyclicComposition {
public:
    CyclicComposition() = default;
    explicit CyclicComposition(std::vector<int> parts) {
        if (parts.empty())
            throw std::invalid_argument("CyclicComposition: needs at least one part");
        for (int p : parts)
            if (p <= 0) throw std::invalid_argument("CyclicComposition: parts must be positive");
        parts_ = detail::lex_max_rotation(parts);
    }

    /// Parts in normal form (lexicographically maximal rotation).
    const std::vector<int>& parts() const { return parts_; }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int count() const { return static_cast<int>(parts_.size()); }
    int excess() const { return size() - count(); }

    Partition to_partition() const { return Partition(parts_); }

    /// The same parts traversed in the opposite cyclic order.
    CyclicComposition reversed() const {
        std::vector<int> rev(parts_.rbegin(), parts_.rend());
        return CyclicComposition(std::move(rev));
    }

    friend bool operator==(const CyclicComposition&, const CyclicComposition&) = default;
    friend auto operator<=>(const CyclicComposition&, const CyclicComposition&) = default;

private:
    std::vector<int> parts_;
};

/// Partition of Z/nZ into cyclic intervals, stored as (start, length) pairs
/// with 0-based starts.  A single-interval partition is anchored: its start
/// matters, so the n distinct anchorings are n distinct values.
class IntervalPartition {
public:
    IntervalPartition() = default;
    IntervalPartition(int n, std::vector<std::pair<int, int>> intervals)
        : n_(n), intervals_(std::move(intervals)) {
        int total = 0;
        for (auto& [s, len] : intervals_) {
            if (len <= 0 || s < 0 || s >= n_)
                throw std::invalid_argument("IntervalPartition: bad interval");
            total += len;
        }
        if (total != n_) throw std::invalid_argument("IntervalPartition: lengths must sum to n");
        std::sort(intervals_.begin(), intervals_.end());
        // Consecutive intervals must tile the circle.
        for (size_t i = 0; i + 1 < intervals_.size(); ++i)
            if (intervals_[i].first + intervals_[i].second != intervals_[i + 1].first)
                throw std::invalid_argument("IntervalPartition: intervals overlap or leave gaps");
    }

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& intervals() const { return intervals_; }

    /// All starts moved by +r around the circle.
    IntervalPartition shifted(int r) const {
        auto moved = intervals_;
        for (auto& [s, len] : moved) s = ((s + r) % n_ + n_) % n_;
        return IntervalPartition(n_, std::move(moved));
    }

    /// Interval lengths read in cyclic order starting from the interval at 0's
    /// position; compares equal across rotations via CyclicComposition.
    CyclicComposition lengths() const {
        std::vector<int> lens;
        for (auto& [s, len] : intervals_) lens.push_back(len);
        return CyclicComposition(std::move(lens));
    }

    friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> intervals_;
};

/// Interval partition I_c induced by a composition: intervals of lengths
/// c_1, c_2, ... laid out consecutively from 0.  The composition must already
/// be in normal form (CyclicComposition values always are).
inline IntervalPartition interval_partition(const CyclicComposition& c) {
    std::vector<std::pair<int, int>> iv;
    int at = 0;
    for (int p : c.parts()) {
        iv.emplace_back(at, p);
        at += p;
    }
    return IntervalPartition(c.size(), std::move(iv));
}

/// Order of the cyclic symmetry of I_c: the smallest r > 0 with I_c + r = I_c.
/// A one-part composition has the anchored interval, so its rotation number is n.
inline int rotation_number(const CyclicComposition& c) {
    IntervalPartition base = interval_partition(c);
    for (int r = 1; r < c.size(); ++r)
        if (base.shifted(r) == base) return r;
    return c.size();
}

/// gcd of the rotation numbers over a nonempty collection of compositions.
inline int rotation_gcd(const std::vector<CyclicComposition>& cs) {
    if (cs.empty())
        throw std::invalid_argument("rotation_gcd: empty collection has no rotation number");
    int g = 0;
    for (const auto& c : cs) g = std::gcd(g, rotation_number(c));
    return g;
}

/// The unique r in Z/rot(c)Z with reference.shifted(r) == observed, where
/// reference = I_c; throws if the two partitions are not rotations of each
/// other.  This is the comparison that underlies modular invariants.
inline int interval_shift(const IntervalPartition& reference, const IntervalPartition& observed,
                          int rot) {
    if (reference.n() != observed.n())
        throw std::invalid_argument("interval_shift: size mismatch");
    int found = -1;
    for (int r = 0; r < reference.n(); ++r) {
        if (reference.shifted(r) == observed) {
            found = r;
            break;
        }
    }
    if (found < 0) throw std::invalid_argument("interval_shift: partitions are not rotations");
    return found % rot;
}

}  // namespace torusmoves
