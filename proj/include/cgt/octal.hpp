#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/classical.hpp"

namespace cgt::heaps {

// Octal game code d_1 d_2 ... d_k. For removing i tokens from a heap, bit 1 of
// d_i allows taking the whole heap, bit 2 leaving one nonempty heap, bit 4
// leaving two nonempty heaps.
class OctalCode
{
public:
    // Accepts "0.07", ".07" or "07" (digits list d_1 first). Throws InputError.
    static OctalCode parse(std::string_view text);

    const std::vector<std::uint8_t>& digits() const { return digits_; }

    // Canonical "0.d1d2...".
    std::string to_string() const;

private:
    std::vector<std::uint8_t> digits_;
};

inline constexpr std::size_t default_octal_max = 100'000;

// g(0), ..., g(n_max), split positions valued as the XOR of their parts.
std::vector<classical::Nimber> octal_g_sequence(const OctalCode& code, std::size_t n_max,
                                                std::size_t limit = default_octal_max);

struct Period
{
    std::size_t preperiod;
    std::size_t period;

    bool operator==(const Period&) const = default;
};

// Smallest preperiod p, then smallest period l, with seq[n + l] == seq[n] for
// p <= n < size - l, reported only when size >= p + 2l.
std::optional<Period> find_period(std::span<const classical::Nimber> seq);

}  // namespace cgt::heaps
