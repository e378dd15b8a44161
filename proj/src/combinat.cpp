#include "ncis/combinat.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ncis/errors.hpp"

namespace ncis {

namespace {

void check_disjoint_cover(const std::vector<Block>& parts, int degree, bool allow_empty) {
    std::vector<int> seen(static_cast<std::size_t>(degree) + 1, 0);
    int total = 0;
    for (const auto& part : parts) {
        if (part.empty() && !allow_empty) throw InvalidArgument("empty block");
        for (std::size_t i = 0; i < part.size(); ++i) {
            const int x = part[i];
            if (x < 1 || x > degree) throw InvalidArgument("block element outside ground set");
            if (i && part[i - 1] >= x) throw InvalidArgument("block not strictly increasing");
            if (seen[x]++) throw InvalidArgument("blocks overlap");
            ++total;
        }
    }
    if (total != degree) throw InvalidArgument("blocks do not cover the ground set");
}

std::string block_to_string(const Block& b) {
    if (b.empty()) return "0";
    const bool wide = std::any_of(b.begin(), b.end(), [](int x) { return x >= 10; });
    std::string s;
    if (wide) s += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (wide && i) s += ',';
        s += std::to_string(b[i]);
    }
    if (wide) s += '}';
    return s;
}

void for_each_rgs(int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> rgs(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int max_used) {
        if (pos == k) {
            fn(rgs);
            return;
        }
        for (int v = 0; v <= max_used + 1; ++v) {
            rgs[pos] = v;
            rec(pos + 1, std::max(max_used, v));
        }
    };
    if (k == 0) {
        fn(rgs);
        return;
    }
    rgs[0] = 0;
    rec(1, 0);
}

std::vector<Block> blocks_from_rgs(const std::vector<int>& rgs) {
    int count = 0;
    for (int v : rgs) count = std::max(count, v + 1);
    std::vector<Block> blocks(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]].push_back(static_cast<int>(i) + 1);
    return blocks;
}

}  // namespace

std::string blocks_to_string(const std::vector<Block>& blocks) {
    if (blocks.empty()) return "()";
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += '.';
        s += block_to_string(blocks[i]);
    }
    return s;
}

// --- SetPartition -----------------------------------------------------------

SetPartition::SetPartition(std::vector<Block> blocks, int ground) : ground_(ground) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    check_disjoint_cover(blocks, ground, false);
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a[0] < b[0]; });
    blocks_ = std::move(blocks);
}

SetPartition SetPartition::from_rgs(const std::vector<int>& rgs) {
    int max_used = -1;
    for (int v : rgs) {
        if (v < 0 || v > max_used + 1) throw InvalidArgument("not a restricted-growth string");
        max_used = std::max(max_used, v);
    }
    SetPartition p;
    p.blocks_ = blocks_from_rgs(rgs);
    p.ground_ = static_cast<int>(rgs.size());
    return p;
}

std::vector<int> SetPartition::rgs() const {
    std::vector<int> r(static_cast<std::size_t>(ground_), 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        for (int x : blocks_[b]) r[x - 1] = static_cast<int>(b);
    return r;
}

std::string SetPartition::to_string() const { return blocks_to_string(blocks_); }

// --- SetComposition ---------------------------------------------------------

SetComposition::SetComposition(std::vector<Block> parts) : parts_(std::move(parts)) {
    std::set<int> seen;
    for (auto& p : parts_) {
        if (p.empty()) throw InvalidArgument("set composition with an empty part");
        std::sort(p.begin(), p.end());
        for (int x : p) {
            if (x < 1) throw InvalidArgument("set composition element must be positive");
            if (!seen.insert(x).second) throw InvalidArgument("set composition parts overlap");
        }
    }
}

int SetComposition::size() const {
    int s = 0;
    for (const auto& p : parts_) s += static_cast<int>(p.size());
    return s;
}

bool SetComposition::covers_initial_segment() const {
    const int d = size();
    for (const auto& p : parts_)
        for (int x : p)
            if (x > d) return false;
    return true;
}

std::string SetComposition::to_string() const { return blocks_to_string(parts_); }

// --- GenSetComposition ------------------------------------------------------

GenSetComposition::GenSetComposition(std::vector<Block> parts, int degree)
    : parts_(std::move(parts)), degree_(degree) {
    for (auto& p : parts_) std::sort(p.begin(), p.end());
    check_disjoint_cover(parts_, degree_, true);
}

int GenSetComposition::empty_count() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](const Block& b) { return b.empty(); }));
}

bool GenSetComposition::is_ordered() const {
    bool seen_empty = false;
    int last_min = 0;
    for (const auto& p : parts_) {
        if (p.empty()) {
            seen_empty = true;
            continue;
        }
        if (seen_empty || p[0] < last_min) return false;
        last_min = p[0];
    }
    return true;
}

std::string GenSetComposition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += '.';
        s += block_to_string(parts_[i]);
    }
    return s.empty() ? "()" : s;
}

// --- ColoredGenSetComposition -----------------------------------------------

ColoredGenSetComposition::ColoredGenSetComposition(GenSetComposition base, std::vector<int> colors)
    : base_(std::move(base)), colors_(std::move(colors)) {
    if (colors_.size() != base_.parts().size()) throw InvalidArgument("one color per part required");
    for (int c : colors_)
        if (c != 1 && c != -1) throw InvalidArgument("colors must be +1 or -1");
}

std::vector<int> ColoredGenSetComposition::positive_indices() const {
    std::vector<int> t;
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (colors_[i] == 1) t.push_back(static_cast<int>(i));
    return t;
}

std::string ColoredGenSetComposition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < colors_.size(); ++i) {
        if (i) s += '.';
        if (colors_[i] == -1) s += '-';
        s += block_to_string(base_.parts()[i]);
    }
    return s.empty() ? "()" : s;
}

// --- Composition ------------------------------------------------------------

int Composition::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

std::string Composition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

// --- enumeration ------------------------------------------------------------

std::vector<SetPartition> enumerate_set_partitions(int k) {
    if (k < 0) throw InvalidArgument("k must be nonnegative");
    std::vector<SetPartition> out;
    for_each_rgs(k, [&](const std::vector<int>& rgs) { out.push_back(SetPartition::from_rgs(rgs)); });
    return out;
}

std::vector<SetComposition> enumerate_set_compositions(int k) {
    std::vector<SetComposition> out;
    for (const auto& p : enumerate_set_partitions(k)) {
        std::vector<std::size_t> order(p.length());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        do {
            std::vector<Block> parts;
            for (auto i : order) parts.push_back(p.blocks()[i]);
            out.emplace_back(std::move(parts));
        } while (std::next_permutation(order.begin(), order.end()));
    }
    return out;
}

std::vector<Composition> enumerate_compositions(int k) {
    std::vector<Composition> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            out.push_back({cur});
            return;
        }
        for (int first = 1; first <= remaining; ++first) {
            cur.push_back(first);
            rec(remaining - first);
            cur.pop_back();
        }
    };
    rec(k);
    return out;
}

std::vector<GenSetComposition> enumerate_ordered_gen_comps(int d, int n_parts, int max_empty) {
    if (d < 0 || n_parts < 1) throw InvalidArgument("need d >= 0 and n_parts >= 1");
    std::vector<GenSetComposition> out;
    for_each_rgs(d, [&](const std::vector<int>& rgs) {
        std::vector<Block> blocks = blocks_from_rgs(rgs);
        const int j = static_cast<int>(blocks.size());
        if (j > n_parts || n_parts - j > max_empty) return;
        blocks.resize(static_cast<std::size_t>(n_parts));
        out.emplace_back(std::move(blocks), d);
    });
    return out;
}

std::vector<Block> standardize(const std::vector<Block>& parts) {
    std::vector<int> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw InvalidArgument("standardize: parts overlap");
    }
    std::vector<Block> out;
    out.reserve(parts.size());
    for (const auto& p : parts) {
        Block b;
        b.reserve(p.size());
        for (int x : p) {
            b.push_back(static_cast<int>(std::lower_bound(all.begin(), all.end(), x) - all.begin()) + 1);
        }
        std::sort(b.begin(), b.end());
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

template <class Part, class Merge>
Multiset<std::vector<Part>> quasi_shuffle_lists(const std::vector<Part>& a, const std::vector<Part>& b,
                                                 std::size_t i, std::size_t j, Merge merge) {
    Multiset<std::vector<Part>> out;
    if (i == a.size() || j == b.size()) {
        std::vector<Part> cat(a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
        cat.insert(cat.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
        out[cat] = 1;
        return out;
    }
    auto prepend = [&out](const Part& head, const Multiset<std::vector<Part>>& tail) {
        for (const auto& [rest, mult] : tail) {
            std::vector<Part> v;
            v.reserve(rest.size() + 1);
            v.push_back(head);
            v.insert(v.end(), rest.begin(), rest.end());
            out[v] += mult;
        }
    };
    prepend(a[i], quasi_shuffle_lists(a, b, i + 1, j, merge));
    prepend(b[j], quasi_shuffle_lists(a, b, i, j + 1, merge));
    prepend(merge(a[i], b[j]), quasi_shuffle_lists(a, b, i + 1, j + 1, merge));
    return out;
}

}  // namespace

Multiset<Composition> quasi_shuffle_compositions(const Composition& alpha, const Composition& beta) {
    Multiset<Composition> out;
    for (const auto& [parts, mult] :
         quasi_shuffle_lists(alpha.parts, beta.parts, 0, 0, [](int x, int y) { return x + y; })) {
        out[Composition{parts}] += mult;
    }
    return out;
}

Multiset<SetComposition> quasi_shuffle_setcomps(const SetComposition& a, const SetComposition& b) {
    const int d = a.size();
    std::vector<Block> shifted = b.parts();
    for (auto& part : shifted)
        for (auto& x : part) x += d;
    auto merge = [](const Block& x, const Block& y) {
        Block u;
        std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
        return u;
    };
    Multiset<SetComposition> out;
    for (const auto& [parts, mult] : quasi_shuffle_lists(a.parts(), shifted, 0, 0, merge)) {
        out[SetComposition(parts)] += mult;
    }
    return out;
}

// --- words <-> compositions -------------------------------------------------

GenSetComposition gencomp_of_word(const Word& w) {
    std::vector<Block> parts(static_cast<std::size_t>(w.alphabet_size()));
    for (std::size_t p = 0; p < w.degree(); ++p) parts[w[p] - 1].push_back(static_cast<int>(p) + 1);
    return GenSetComposition(std::move(parts), static_cast<int>(w.degree()));
}

SetPartition nabla(const Word& w) {
    std::vector<Block> blocks;
    const GenSetComposition a = gencomp_of_word(w);
    for (auto& part : a.parts())
        if (!part.empty()) blocks.push_back(part);
    return SetPartition(std::move(blocks), static_cast<int>(w.degree()));
}

SetComposition nabla_tilde(const Word& w) {
    std::vector<Block> parts;
    const GenSetComposition a = gencomp_of_word(w);
    for (auto& part : a.parts())
        if (!part.empty()) parts.push_back(part);
    return SetComposition(std::move(parts));
}

Word word_of_gencomp(const GenSetComposition& a) {
    check_disjoint_cover(a.parts(), a.degree(), true);
    std::vector<Letter> letters(static_cast<std::size_t>(a.degree()), 0);
    for (std::size_t i = 0; i < a.parts().size(); ++i)
        for (int p : a.parts()[i]) letters[p - 1] = static_cast<Letter>(i + 1);
    return Word(std::move(letters), a.n_parts());
}

}  // namespace ncis
