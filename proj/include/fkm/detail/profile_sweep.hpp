#ifndef FKM_DETAIL_PROFILE_SWEEP_HPP
#define FKM_DETAIL_PROFILE_SWEEP_HPP

// Left-to-right computation of profile sets over rank sequences.
//
// After reading a prefix z_1..z_t the sweep state is the set of all partial
// sector assignments ("configurations") that end at t: sectors 1..h-1 are
// closed with known (min, max) ranks and sector h is open with the running
// (min, max) of its elements. Closed prefixes are interned in a trie so a
// configuration packs into one 64-bit word.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fkm/core.hpp"
#include "fkm/profile_reduction.hpp"

namespace fkm::detail {

class ProfileTrie {
public:
    static constexpr std::uint32_t kRoot = 0;
    static constexpr std::uint32_t kMissing = 0xffffffffu;

    ProfileTrie();

    std::uint32_t child(std::uint32_t node, RankPair p) const;
    std::uint32_t add_child(std::uint32_t node, RankPair p);
    std::uint32_t depth(std::uint32_t node) const { return nodes_[node].depth; }
    std::vector<RankPair> path(std::uint32_t node) const;

private:
    struct Node {
        std::uint32_t parent;
        RankPair pair;
        std::uint32_t depth;
    };
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::uint32_t> children_;
};

using Config = std::uint64_t;
using SweepState = std::vector<Config>;  // sorted, unique

inline Config pack(std::uint32_t node, Rank lo, Rank hi) {
    return (static_cast<Config>(node) << 32) | (static_cast<Config>(lo) << 16) | hi;
}
inline std::uint32_t node_of(Config c) { return static_cast<std::uint32_t>(c >> 32); }
inline Rank lo_of(Config c) { return static_cast<Rank>((c >> 16) & 0xffffu); }
inline Rank hi_of(Config c) { return static_cast<Rank>(c & 0xffffu); }

/**
 * Transition function of the sweep for query complexity l.
 *
 * In growing mode unseen closed prefixes are added to the trie. Otherwise
 * the trie is fixed (built from a target) and a step that would need a
 * missing prefix reports the state as dead; with `final_ranges` set, an
 * open last sector whose range fits inside no target final range for its
 * prefix is dead as well.
 */
class ProfileSweep {
public:
    ProfileSweep(std::size_t l, ProfileTrie& trie, bool grow,
                 const std::unordered_map<std::uint32_t, std::vector<RankPair>>* final_ranges =
                     nullptr);

    bool start(Rank s, SweepState& out) const;
    bool advance(const SweepState& in, Rank s, SweepState& out) const;

    /// Configurations describing complete profiles (open sector is the last one).
    void finals(const SweepState& state, std::vector<Config>& out) const;

private:
    bool push(std::uint32_t node, Rank lo, Rank hi, SweepState& out) const;
    bool close_horizontal(SweepState& st, Rank c) const;

    std::size_t l_;
    ProfileTrie& trie_;
    bool grow_;
    const std::unordered_map<std::uint32_t, std::vector<RankPair>>* final_ranges_;
};

/// Final sweep state of a whole rank sequence, growing the trie.
SweepState sweep_sequence(const RankSequence& rs, std::size_t l, ProfileTrie& trie);

/// Profile set computed by the sweep; must agree with profile_set().
ProfileSet profile_set_by_sweep(const RankSequence& rs, std::size_t l);

}  // namespace fkm::detail

#endif  // FKM_DETAIL_PROFILE_SWEEP_HPP
