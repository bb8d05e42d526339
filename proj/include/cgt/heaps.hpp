#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgt/classical.hpp"

// Heap (take-away) games: Nim plus simultaneous removals from several piles.
namespace cgt::heaps {

using classical::Nimber;
using HeapPosition = std::vector<std::uint32_t>;
using Removal = std::vector<std::uint32_t>;

enum class Family {
    Diagonal,  // (k, ..., k) from every pile, k >= 1 (Wythoff for two piles)
    Shift,     // (k, k+1) and (k+1, k), k >= 1; two piles
    XorZero,   // (k, l, m) with k ^ l ^ m == 0 and k + l + m > 0; three piles
};

const char* to_string(Family f);

// Taking any m >= 1 from a single pile is always legal. On top of that a move
// may subtract one explicit vector or one member of a generator family,
// provided no pile goes negative.
class MoveSet
{
public:
    static MoveSet nim() { return {}; }
    static MoveSet wythoff();
    // Every b in {0..h-1}^piles with 0 < sum(b) < h.
    static MoveSet cyclic_nimhoff(std::size_t piles, std::uint32_t h);
    // 2^k from each of two distinct piles.
    static MoveSet pow2k_nimhoff(std::size_t piles, unsigned k);
    static MoveSet wythoff3();

    // Throws InputError on an all-zero vector or a pile-count mismatch.
    MoveSet& add_vector(Removal b);
    MoveSet& add_family(Family f);

    const std::vector<Removal>& vectors() const { return vectors_; }
    const std::vector<Family>& families() const { return families_; }

    // Pile count implied by the vectors/families, if any.
    std::optional<std::size_t> arity() const;

    // Vectors and family members whose every coordinate is <= limit[i].
    std::vector<Removal> instantiate(const HeapPosition& limit) const;

    std::string describe() const;

private:
    void require_arity(std::size_t n, const char* what);

    std::vector<Removal> vectors_;
    std::vector<Family> families_;
    std::optional<std::size_t> arity_;
};

inline constexpr std::size_t default_max_cells = std::size_t{1} << 26;

// Grundy values of every position in the box [0, bounds[0]] x ... x [0, bounds[n-1]].
class TakeTable
{
public:
    // Throws BoundExceeded when the box has more than max_cells cells.
    TakeTable(const MoveSet& moves, HeapPosition bounds, std::size_t max_cells = default_max_cells);

    const HeapPosition& bounds() const { return bounds_; }
    std::size_t size() const { return values_.size(); }

    // Throws InputError outside the box.
    Nimber at(const HeapPosition& pos) const;

    Nimber at_index(std::size_t index) const { return values_[index]; }
    HeapPosition position(std::size_t index) const;

private:
    std::size_t index_of(const HeapPosition& pos) const;

    HeapPosition bounds_;
    std::vector<std::size_t> strides_;
    std::vector<Nimber> values_;
};

Nimber take_g(const HeapPosition& pos, const MoveSet& moves,
              std::size_t max_cells = default_max_cells);

// XOR of the piles is zero.
bool nim_p(const HeapPosition& pos);

// i-th Wythoff P-position (floor(i*phi), floor(i*phi^2)) in exact integer arithmetic.
std::pair<std::uint64_t, std::uint64_t> wythoff_p_pair(std::uint64_t i);

// Divide b by the largest power of two dividing every entry; odd coordinate sum?
// Throws InputError on an all-zero vector.
bool is_odd_vector(std::span<const std::uint32_t> b);

struct NimdiVerdict
{
    bool criterion = false;
    bool brute_force_agrees = false;
    std::optional<HeapPosition> witness;  // first disagreement in lexicographic order
    std::optional<Nimber> witness_value;  // its true g-value

    bool consistent() const { return criterion == brute_force_agrees; }
};

// Odd-set criterion against brute force on [0, bound]^piles. piles defaults
// to the move set's arity, else 2.
NimdiVerdict nimdi_verdict(const MoveSet& moves, std::uint32_t bound,
                           std::optional<std::size_t> piles = std::nullopt,
                           std::size_t max_cells = default_max_cells);

// h * (XOR of floor(a_i / h)) + (sum of a_i) mod h. Throws InputError for h == 0.
Nimber cyclic_nimhoff_g(const HeapPosition& pos, std::uint32_t h);

// a ^ b, with bit 0 flipped when bit k is set in both. Throws InputError for k == 0.
Nimber k_nim_sum(Nimber a, Nimber b, unsigned k);

Nimber pow2k_nimhoff_g(const HeapPosition& pos, unsigned k);

using Triple = std::array<std::uint32_t, 3>;

inline constexpr std::uint32_t max_wythoff3_limit = 64;

// Sorted P-triples a <= b <= c <= limit of 3-pile Wythoff (single-pile moves
// plus (k, l, m) with k ^ l ^ m == 0). Throws BoundExceeded above max_limit.
std::vector<Triple> wythoff3_p(std::uint32_t limit, std::uint32_t max_limit = max_wythoff3_limit);

struct AdjoinRound
{
    MoveSet moves;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> p_positions;
};

// Two-pile games only. Round r+1 adds round r's nonzero P-positions to the
// move set as removal vectors.
std::vector<AdjoinRound> adjoin_p_as_moves(const MoveSet& base, unsigned rounds,
                                           std::uint32_t bound,
                                           std::size_t max_cells = default_max_cells);

}  // namespace cgt::heaps
