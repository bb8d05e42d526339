#include "cgt/heaps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "cgt/error.hpp"

namespace cgt::heaps {

const char* to_string(Family f)
{
    switch (f) {
    case Family::Diagonal:
        return "diag";
    case Family::Shift:
        return "shift";
    case Family::XorZero:
        return "xorzero";
    }
    return "?";
}

void MoveSet::require_arity(std::size_t n, const char* what)
{
    if (arity_ && *arity_ != n) {
        throw InputError(std::string(what) + " needs " + std::to_string(n) +
                         " piles but the move set already has " + std::to_string(*arity_));
    }
    arity_ = n;
}

MoveSet& MoveSet::add_vector(Removal b)
{
    if (b.empty() || std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; })) {
        throw InputError("a removal vector needs a positive coordinate sum");
    }
    require_arity(b.size(), "removal vector");
    if (std::find(vectors_.begin(), vectors_.end(), b) == vectors_.end()) {
        vectors_.push_back(std::move(b));
    }
    return *this;
}

MoveSet& MoveSet::add_family(Family f)
{
    if (f == Family::Shift) {
        require_arity(2, "the shift family");
    } else if (f == Family::XorZero) {
        require_arity(3, "the xor-zero family");
    }
    if (std::find(families_.begin(), families_.end(), f) == families_.end()) {
        families_.push_back(f);
    }
    return *this;
}

std::optional<std::size_t> MoveSet::arity() const
{
    return arity_;
}

MoveSet MoveSet::wythoff()
{
    MoveSet m;
    m.add_family(Family::Diagonal);
    return m;
}

MoveSet MoveSet::wythoff3()
{
    MoveSet m;
    m.add_family(Family::XorZero);
    return m;
}

MoveSet MoveSet::cyclic_nimhoff(std::size_t piles, std::uint32_t h)
{
    if (h == 0) {
        throw InputError("cyclic Nimhoff needs h >= 1");
    }
    if (piles == 0) {
        throw InputError("cyclic Nimhoff needs at least one pile");
    }
    MoveSet m;
    m.arity_ = piles;
    Removal b(piles, 0);
    // Odometer over {0..h-1}^piles.
    while (true) {
        const auto sum = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
        if (sum > 0 && sum < h) {
            m.add_vector(b);
        }
        std::size_t i = 0;
        while (i < piles && ++b[i] == h) {
            b[i++] = 0;
        }
        if (i == piles) {
            break;
        }
    }
    return m;
}

MoveSet MoveSet::pow2k_nimhoff(std::size_t piles, unsigned k)
{
    if (k == 0 || k > 30) {
        throw InputError("2^k-Nimhoff needs 1 <= k <= 30");
    }
    if (piles < 2) {
        throw InputError("2^k-Nimhoff needs at least two piles");
    }
    MoveSet m;
    m.arity_ = piles;
    for (std::size_t i = 0; i < piles; ++i) {
        for (std::size_t j = i + 1; j < piles; ++j) {
            Removal b(piles, 0);
            b[i] = b[j] = std::uint32_t{1} << k;
            m.add_vector(std::move(b));
        }
    }
    return m;
}

std::vector<Removal> MoveSet::instantiate(const HeapPosition& limit) const
{
    std::vector<Removal> out;
    for (const auto& b : vectors_) {
        if (b.size() != limit.size()) {
            throw InputError("removal vector length does not match the pile count");
        }
        bool fits = true;
        for (std::size_t i = 0; i < b.size(); ++i) {
            fits = fits && b[i] <= limit[i];
        }
        if (fits) {
            out.push_back(b);
        }
    }
    for (Family f : families_) {
        switch (f) {
        case Family::Diagonal: {
            const auto top = limit.empty() ? 0 : *std::min_element(limit.begin(), limit.end());
            for (std::uint32_t k = 1; k <= top; ++k) {
                out.emplace_back(limit.size(), k);
            }
            break;
        }
        case Family::Shift:
            for (std::uint32_t k = 1; k + 1 <= std::max(limit[0], limit[1]); ++k) {
                if (k <= limit[0] && k + 1 <= limit[1]) {
                    out.push_back({k, k + 1});
                }
                if (k + 1 <= limit[0] && k <= limit[1]) {
                    out.push_back({k + 1, k});
                }
            }
            break;
        case Family::XorZero:
            for (std::uint32_t k = 0; k <= limit[0]; ++k) {
                for (std::uint32_t l = 0; l <= limit[1]; ++l) {
                    const std::uint32_t m = k ^ l;
                    if (m <= limit[2] && (k | l) != 0) {
                        out.push_back({k, l, m});
                    }
                }
            }
            break;
        }
    }
    return out;
}

std::string MoveSet::describe() const
{
    std::string s = "nim";
    for (Family f : families_) {
        s += "+";
        s += to_string(f);
    }
    for (const auto& b : vectors_) {
        s += "+(";
        for (std::size_t i = 0; i < b.size(); ++i) {
            s += (i ? "," : "") + std::to_string(b[i]);
        }
        s += ")";
    }
    return s;
}

TakeTable::TakeTable(const MoveSet& moves, HeapPosition bounds, std::size_t max_cells)
    : bounds_(std::move(bounds))
{
    const std::size_t n = bounds_.size();
    if (moves.arity() && *moves.arity() != n) {
        throw InputError("move set is for " + std::to_string(*moves.arity()) + " piles, position has " +
                         std::to_string(n));
    }
    // Last coordinate varies fastest.
    strides_.assign(n, 1);
    std::size_t cells = 1;
    for (std::size_t i = n; i-- > 0;) {
        strides_[i] = cells;
        const std::size_t radix = std::size_t{bounds_[i]} + 1;
        if (cells > max_cells / radix) {
            throw BoundExceeded("take-game table would exceed " + std::to_string(max_cells) +
                                " cells");
        }
        cells *= radix;
    }
    values_.assign(cells, 0);

    struct Offset
    {
        Removal vec;
        std::size_t delta;
    };
    std::vector<Offset> explicit_moves;
    for (const auto& b : moves.vectors()) {
        std::size_t delta = 0;
        for (std::size_t i = 0; i < n; ++i) {
            delta += b[i] * strides_[i];
        }
        explicit_moves.push_back({b, delta});
    }
    const auto& families = moves.families();
    const std::size_t diag_stride = std::accumulate(strides_.begin(), strides_.end(), std::size_t{0});

    std::vector<Nimber> succ;
    HeapPosition pos(n, 0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        if (idx > 0) {
            for (std::size_t i = n; i-- > 0;) {
                if (++pos[i] <= bounds_[i]) {
                    break;
                }
                pos[i] = 0;
            }
        }
        succ.clear();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::uint32_t m = 1; m <= pos[i]; ++m) {
                succ.push_back(values_[idx - m * strides_[i]]);
            }
        }
        for (const auto& [vec, delta] : explicit_moves) {
            bool fits = true;
            for (std::size_t i = 0; i < n && fits; ++i) {
                fits = vec[i] <= pos[i];
            }
            if (fits) {
                succ.push_back(values_[idx - delta]);
            }
        }
        for (Family f : families) {
            switch (f) {
            case Family::Diagonal: {
                const auto top = n == 0 ? 0 : *std::min_element(pos.begin(), pos.end());
                for (std::uint32_t k = 1; k <= top; ++k) {
                    succ.push_back(values_[idx - k * diag_stride]);
                }
                break;
            }
            case Family::Shift:
                for (std::uint32_t k = 1; k + 1 <= std::max(pos[0], pos[1]); ++k) {
                    if (k <= pos[0] && k + 1 <= pos[1]) {
                        succ.push_back(values_[idx - k * strides_[0] - (k + 1) * strides_[1]]);
                    }
                    if (k + 1 <= pos[0] && k <= pos[1]) {
                        succ.push_back(values_[idx - (k + 1) * strides_[0] - k * strides_[1]]);
                    }
                }
                break;
            case Family::XorZero:
                for (std::uint32_t k = 0; k <= pos[0]; ++k) {
                    for (std::uint32_t l = 0; l <= pos[1]; ++l) {
                        const std::uint32_t m = k ^ l;
                        if (m <= pos[2] && (k | l) != 0) {
                            succ.push_back(
                                values_[idx - k * strides_[0] - l * strides_[1] - m * strides_[2]]);
                        }
                    }
                }
                break;
            }
        }
        values_[idx] = classical::mex(succ);
    }
}

std::size_t TakeTable::index_of(const HeapPosition& pos) const
{
    if (pos.size() != bounds_.size()) {
        throw InputError("position has the wrong number of piles");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] > bounds_[i]) {
            throw InputError("position outside the computed table");
        }
        idx += pos[i] * strides_[i];
    }
    return idx;
}

Nimber TakeTable::at(const HeapPosition& pos) const
{
    return values_[index_of(pos)];
}

HeapPosition TakeTable::position(std::size_t index) const
{
    HeapPosition pos(bounds_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        pos[i] = static_cast<std::uint32_t>(index / strides_[i]);
        index %= strides_[i];
    }
    return pos;
}

Nimber take_g(const HeapPosition& pos, const MoveSet& moves, std::size_t max_cells)
{
    return TakeTable(moves, pos, max_cells).at(pos);
}

bool nim_p(const HeapPosition& pos)
{
    std::uint32_t acc = 0;
    for (auto a : pos) {
        acc ^= a;
    }
    return acc == 0;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt(u128 x)
{
    // long double gets within a few units; fix up exactly in 128 bits.
    auto r = static_cast<u128>(std::sqrt(static_cast<long double>(x)));
    while (r > 0 && r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> wythoff_p_pair(std::uint64_t i)
{
    // floor(i * phi) = floor((i + sqrt(5 i^2)) / 2), and sqrt(5 i^2) is
    // irrational for i > 0, so the integer square root gives the exact floor.
    if (i > (std::uint64_t{1} << 62)) {
        throw InputError("Wythoff pair index too large");
    }
    const std::uint64_t a = (i + isqrt(5 * static_cast<u128>(i) * i)) / 2;
    return {a, a + i};
}

bool is_odd_vector(std::span<const std::uint32_t> b)
{
    std::uint32_t all = 0;
    for (auto x : b) {
        all |= x;
    }
    if (all == 0) {
        throw InputError("odd-set test needs a vector with a positive sum");
    }
    const int shift = std::countr_zero(all);
    std::uint64_t sum = 0;
    for (auto x : b) {
        sum += x >> shift;
    }
    return (sum & 1U) != 0;
}

NimdiVerdict nimdi_verdict(const MoveSet& moves, std::uint32_t bound, std::optional<std::size_t> piles,
                           std::size_t max_cells)
{
    const std::size_t n = piles.value_or(moves.arity().value_or(2));
    const HeapPosition box(n, bound);
    NimdiVerdict out;
    out.criterion = true;
    for (const auto& b : moves.instantiate(box)) {
        out.criterion = out.criterion && is_odd_vector(b);
    }
    TakeTable table(moves, box, max_cells);
    out.brute_force_agrees = true;
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        HeapPosition pos = table.position(idx);
        Nimber nim = 0;
        for (auto a : pos) {
            nim ^= a;
        }
        if (table.at_index(idx) != nim) {
            out.brute_force_agrees = false;
            out.witness = std::move(pos);
            out.witness_value = table.at_index(idx);
            break;
        }
    }
    return out;
}

Nimber cyclic_nimhoff_g(const HeapPosition& pos, std::uint32_t h)
{
    if (h == 0) {
        throw InputError("cyclic Nimhoff needs h >= 1");
    }
    Nimber quotients = 0;
    std::uint64_t sum = 0;
    for (auto a : pos) {
        quotients ^= a / h;
        sum += a;
    }
    return h * quotients + sum % h;
}

Nimber k_nim_sum(Nimber a, Nimber b, unsigned k)
{
    if (k == 0 || k >= 64) {
        throw InputError("k-Nim-sum needs 1 <= k <= 63");
    }
    Nimber x = a ^ b;
    if (((a >> k) & (b >> k) & 1U) != 0) {
        x ^= 1U;
    }
    return x;
}

Nimber pow2k_nimhoff_g(const HeapPosition& pos, unsigned k)
{
    Nimber acc = 0;
    for (auto a : pos) {
        acc = k_nim_sum(acc, a, k);
    }
    return acc;
}

std::vector<Triple> wythoff3_p(std::uint32_t limit, std::uint32_t max_limit)
{
    if (limit > max_limit) {
        throw BoundExceeded("wythoff3 limit " + std::to_string(limit) + " exceeds " +
                            std::to_string(max_limit));
    }
    TakeTable table(MoveSet::wythoff3(), HeapPosition(3, limit));
    std::vector<Triple> out;
    for (std::uint32_t a = 0; a <= limit; ++a) {
        for (std::uint32_t b = a; b <= limit; ++b) {
            for (std::uint32_t c = b; c <= limit; ++c) {
                if (table.at({a, b, c}) == 0) {
                    out.push_back({a, b, c});
                }
            }
        }
    }
    return out;
}

std::vector<AdjoinRound> adjoin_p_as_moves(const MoveSet& base, unsigned rounds, std::uint32_t bound,
                                           std::size_t max_cells)
{
    if (base.arity() && *base.arity() != 2) {
        throw InputError("adjoining P-positions is implemented for two-pile games");
    }
    std::vector<AdjoinRound> out;
    MoveSet current = base;
    for (unsigned r = 0; r < rounds; ++r) {
        TakeTable table(current, {bound, bound}, max_cells);
        AdjoinRound round{current, {}};
        for (std::uint32_t a = 0; a <= bound; ++a) {
            for (std::uint32_t b = 0; b <= bound; ++b) {
                if (table.at({a, b}) == 0) {
                    round.p_positions.emplace_back(a, b);
                }
            }
        }
        MoveSet next = current;
        for (const auto& [a, b] : round.p_positions) {
            if (a + b > 0) {
                next.add_vector({a, b});
            }
        }
        out.push_back(std::move(round));
        current = std::move(next);
    }
    return out;
}

}  // namespace cgt::heaps
