#include "fkm/detail/profile_sweep.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace fkm::detail {

namespace {

std::uint64_t child_key(std::uint32_t node, RankPair p) {
    return (static_cast<std::uint64_t>(node) << 32) | (static_cast<std::uint64_t>(p.min) << 16) |
           p.max;
}

void normalize(SweepState& st) {
    std::sort(st.begin(), st.end());
    st.erase(std::unique(st.begin(), st.end()), st.end());
}

}  // namespace

ProfileTrie::ProfileTrie() { nodes_.push_back({kMissing, {}, 0}); }

std::uint32_t ProfileTrie::child(std::uint32_t node, RankPair p) const {
    const auto it = children_.find(child_key(node, p));
    return it == children_.end() ? kMissing : it->second;
}

std::uint32_t ProfileTrie::add_child(std::uint32_t node, RankPair p) {
    const auto [it, inserted] =
        children_.try_emplace(child_key(node, p), static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back({node, p, nodes_[node].depth + 1});
    return it->second;
}

std::vector<RankPair> ProfileTrie::path(std::uint32_t node) const {
    std::vector<RankPair> out;
    for (; node != kRoot; node = nodes_[node].parent) out.push_back(nodes_[node].pair);
    std::reverse(out.begin(), out.end());
    return out;
}

ProfileSweep::ProfileSweep(
    std::size_t l, ProfileTrie& trie, bool grow,
    const std::unordered_map<std::uint32_t, std::vector<RankPair>>* final_ranges)
    : l_(l), trie_(trie), grow_(grow), final_ranges_(final_ranges) {
    if (l == 0) throw std::invalid_argument("query complexity must be positive");
}

bool ProfileSweep::push(std::uint32_t node, Rank lo, Rank hi, SweepState& out) const {
    if (final_ranges_ != nullptr && trie_.depth(node) + 1 == l_) {
        const auto it = final_ranges_->find(node);
        if (it == final_ranges_->end()) return false;
        const bool fits = std::any_of(it->second.begin(), it->second.end(), [&](RankPair r) {
            return r.min <= lo && hi <= r.max;
        });
        if (!fits) return false;
    }
    out.push_back(pack(node, lo, hi));
    return true;
}

// Adds, for every open sector h < l, the configuration that closes it here
// and opens sector h+1 on the same element c.
bool ProfileSweep::close_horizontal(SweepState& st, Rank c) const {
    for (std::size_t k = 0; k < st.size(); ++k) {
        const Config cfg = st[k];
        const std::uint32_t node = node_of(cfg);
        if (trie_.depth(node) + 1 >= l_) continue;
        const RankPair closed{lo_of(cfg), hi_of(cfg)};
        std::uint32_t next = grow_ ? trie_.add_child(node, closed) : trie_.child(node, closed);
        if (next == ProfileTrie::kMissing) return false;
        if (!push(next, c, c, st)) return false;
    }
    normalize(st);
    return true;
}

bool ProfileSweep::start(Rank s, SweepState& out) const {
    out.clear();
    if (!push(ProfileTrie::kRoot, s, s, out)) return false;
    return close_horizontal(out, s);
}

bool ProfileSweep::advance(const SweepState& in, Rank s, SweepState& out) const {
    out.clear();
    out.reserve(in.size() * 2);
    for (const Config cfg : in) {
        const std::uint32_t node = node_of(cfg);
        const Rank lo = lo_of(cfg), hi = hi_of(cfg);
        if (!push(node, std::min(lo, s), std::max(hi, s), out)) return false;
        if (trie_.depth(node) + 1 < l_) {
            const RankPair closed{lo, hi};
            std::uint32_t next = grow_ ? trie_.add_child(node, closed) : trie_.child(node, closed);
            if (next == ProfileTrie::kMissing) return false;
            if (!push(next, s, s, out)) return false;
        }
    }
    normalize(out);
    return close_horizontal(out, s);
}

void ProfileSweep::finals(const SweepState& state, std::vector<Config>& out) const {
    out.clear();
    for (const Config cfg : state) {
        if (trie_.depth(node_of(cfg)) + 1 == l_) out.push_back(cfg);
    }
}

SweepState sweep_sequence(const RankSequence& rs, std::size_t l, ProfileTrie& trie) {
    if (rs.ranks.empty()) throw std::invalid_argument("rank sequence must be non-empty");
    if (rs.alphabet_size > 0xffffu) throw std::invalid_argument("alphabet too large");
    ProfileSweep sweep(l, trie, true);
    SweepState cur, next;
    sweep.start(rs.ranks[0], cur);
    for (std::size_t i = 1; i < rs.ranks.size(); ++i) {
        sweep.advance(cur, rs.ranks[i], next);
        std::swap(cur, next);
    }
    return cur;
}

ProfileSet profile_set_by_sweep(const RankSequence& rs, std::size_t l) {
    ProfileTrie trie;
    const SweepState state = sweep_sequence(rs, l, trie);
    ProfileSet out;
    out.alphabet_size = rs.alphabet_size;
    out.query_complexity = l;
    for (const Config cfg : state) {
        if (trie.depth(node_of(cfg)) + 1 != l) continue;
        Profile p{trie.path(node_of(cfg))};
        p.entries.push_back({lo_of(cfg), hi_of(cfg)});
        out.profiles.insert(std::move(p));
    }
    return out;
}

}  // namespace fkm::detail

namespace fkm {

namespace {

struct StateHash {
    std::size_t operator()(const detail::SweepState& s) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.size();
        for (const auto c : s) {
            h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::optional<RankSequence> shortest_equivalent(const RankSequence& target, std::size_t l,
                                                std::size_t max_length, std::size_t max_states) {
    using namespace detail;
    if (l < 3) throw std::invalid_argument("shortest_equivalent requires l >= 3");
    const Rank r = target.alphabet_size;

    ProfileTrie trie;
    const SweepState target_state = sweep_sequence(target, l, trie);
    std::unordered_map<std::uint32_t, std::vector<RankPair>> final_ranges;
    std::vector<Config> target_finals;
    for (const Config cfg : target_state) {
        if (trie.depth(node_of(cfg)) + 1 != l) continue;
        target_finals.push_back(cfg);
        final_ranges[node_of(cfg)].push_back({lo_of(cfg), hi_of(cfg)});
    }
    const ProfileSweep sweep(l, trie, false, &final_ranges);

    struct Entry {
        const SweepState* state;
        std::uint32_t parent;
        Rank symbol;
    };
    std::unordered_set<SweepState, StateHash> visited;
    std::vector<std::vector<Entry>> levels(1);

    SweepState scratch;
    for (Rank s = 1; s <= r; ++s) {
        if (!sweep.start(s, scratch)) continue;
        const auto [it, inserted] = visited.insert(scratch);
        if (inserted) levels[0].push_back({&*it, 0, s});
    }

    std::vector<Config> finals;
    for (std::size_t len = 1; len <= max_length && !levels.back().empty(); ++len) {
        const auto& level = levels.back();
        for (std::size_t k = 0; k < level.size(); ++k) {
            sweep.finals(*level[k].state, finals);
            if (finals != target_finals) continue;
            RankSequence out;
            out.alphabet_size = r;
            out.ranks.resize(len);
            std::size_t idx = k;
            for (std::size_t depth = len; depth-- > 0;) {
                out.ranks[depth] = levels[depth][idx].symbol;
                idx = levels[depth][idx].parent;
            }
            return out;
        }
        if (len == max_length) break;

        std::vector<Entry> next;
        for (std::size_t k = 0; k < level.size(); ++k) {
            for (Rank s = 1; s <= r; ++s) {
                if (s == level[k].symbol) continue;
                if (!sweep.advance(*level[k].state, s, scratch)) continue;
                const auto [it, inserted] = visited.insert(scratch);
                if (inserted) next.push_back({&*it, static_cast<std::uint32_t>(k), s});
            }
            if (visited.size() > max_states) return std::nullopt;
        }
        levels.push_back(std::move(next));
    }
    return std::nullopt;
}

}  // namespace fkm
