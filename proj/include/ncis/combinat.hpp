#pragma once

// Set partitions, set compositions, generalized (and two-colored) set
// compositions, integer compositions, and the quasi-shuffle products.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncis/freealg.hpp"

namespace ncis {

/// Sorted list of positive integers.
using Block = std::vector<int>;

/// Unordered blocks covering [k]; stored sorted by block minimum.
class SetPartition {
public:
    SetPartition() = default;
    SetPartition(std::vector<Block> blocks, int ground);
    /// From a restricted-growth string a_1..a_k (a_1 = 0, a_{i+1} <= max + 1).
    static SetPartition from_rgs(const std::vector<int>& rgs);

    const std::vector<Block>& blocks() const { return blocks_; }
    int ground() const { return ground_; }
    std::size_t length() const { return blocks_.size(); }
    std::vector<int> rgs() const;
    /// Dot notation, e.g. `13.2.4`; `()` for the empty partition.
    std::string to_string() const;

    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

private:
    std::vector<Block> blocks_;
    int ground_ = 0;
};

/// Ordered list of disjoint nonempty blocks.
class SetComposition {
public:
    SetComposition() = default;
    explicit SetComposition(std::vector<Block> parts);

    const std::vector<Block>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    /// Number of elements covered.
    int size() const;
    /// True when the parts cover exactly [size()].
    bool covers_initial_segment() const;
    std::string to_string() const;

    friend auto operator<=>(const SetComposition&, const SetComposition&) = default;

private:
    std::vector<Block> parts_;
};

/// Exactly `parts().size()` disjoint, possibly empty parts covering [d].
/// Part i lists the positions carrying letter x_i.
class GenSetComposition {
public:
    GenSetComposition() = default;
    GenSetComposition(std::vector<Block> parts, int degree);

    const std::vector<Block>& parts() const { return parts_; }
    int n_parts() const { return static_cast<int>(parts_.size()); }
    int degree() const { return degree_; }
    int empty_count() const;
    /// Nonempty parts min-ordered and every empty part trailing.
    bool is_ordered() const;
    std::string to_string() const;

    friend auto operator<=>(const GenSetComposition&, const GenSetComposition&) = default;

private:
    std::vector<Block> parts_;
    int degree_ = 0;
};

/// Generalized set composition with a ±1 color per part. Parts colored +1
/// are antisymmetrized, parts colored -1 stay pinned.
class ColoredGenSetComposition {
public:
    ColoredGenSetComposition() = default;
    ColoredGenSetComposition(GenSetComposition base, std::vector<int> colors);

    const GenSetComposition& base() const { return base_; }
    const std::vector<int>& colors() const { return colors_; }
    /// Indices (0-based) of parts colored +1.
    std::vector<int> positive_indices() const;
    /// `2.-13.4.-0`: `-` marks color -1, `0` marks an empty part.
    std::string to_string() const;

    friend auto operator<=>(const ColoredGenSetComposition&,
                            const ColoredGenSetComposition&) = default;

private:
    GenSetComposition base_;
    std::vector<int> colors_;
};

struct Composition {
    std::vector<int> parts;

    int size() const;
    std::string to_string() const;
    friend auto operator<=>(const Composition&, const Composition&) = default;
};

template <class T>
using Multiset = std::map<T, std::uint64_t>;

/// Lexicographic order on restricted-growth strings.
std::vector<SetPartition> enumerate_set_partitions(int k);

/// Every ordering of the blocks of every set partition of [k].
std::vector<SetComposition> enumerate_set_compositions(int k);

/// Compositions of k (all parts positive), lexicographic.
std::vector<Composition> enumerate_compositions(int k);

/// Ordered generalized set compositions of [d] with n_parts parts and at most
/// max_empty (trailing) empty parts, in restricted-growth-string order.
std::vector<GenSetComposition> enumerate_ordered_gen_comps(int d, int n_parts, int max_empty);

/// Relabels the union of the parts onto [|S|] preserving order and membership.
std::vector<Block> standardize(const std::vector<Block>& parts);

/// Recursive quasi-shuffle of integer compositions, with multiplicities.
Multiset<Composition> quasi_shuffle_compositions(const Composition& alpha, const Composition& beta);

/// A ⊔̃ B^{↑d} for A a set composition of [d] and B of [q].
Multiset<SetComposition> quasi_shuffle_setcomps(const SetComposition& a, const SetComposition& b);

/// Nonempty letter fibers of w as a set partition.
SetPartition nabla(const Word& w);

/// Letter fibers of w in increasing letter order, empties removed.
SetComposition nabla_tilde(const Word& w);

GenSetComposition gencomp_of_word(const Word& w);
/// Inverse of gencomp_of_word. Throws on overlapping or incomplete parts.
Word word_of_gencomp(const GenSetComposition& a);

/// Dot-notation text for a list of blocks, `0` for empty blocks.
std::string blocks_to_string(const std::vector<Block>& blocks);

}  // namespace ncis
