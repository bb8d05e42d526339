#include "cgt/octal.hpp"

#include "cgt/error.hpp"

namespace cgt::heaps {

OctalCode OctalCode::parse(std::string_view text)
{
    std::string_view digits = text;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto head = text.substr(0, dot);
        if (!(head.empty() || head == "0")) {
            throw InputError("octal code \"" + std::string(text) + "\": only 0 may precede the point");
        }
        digits = text.substr(dot + 1);
    }
    if (digits.empty()) {
        throw InputError("octal code \"" + std::string(text) + "\" has no digits");
    }
    OctalCode code;
    for (char c : digits) {
        if (c < '0' || c > '7') {
            throw InputError("octal code \"" + std::string(text) + "\": invalid digit '" +
                             std::string(1, c) + "'");
        }
        code.digits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return code;
}

std::string OctalCode::to_string() const
{
    std::string s = "0.";
    for (auto d : digits_) {
        s += static_cast<char>('0' + d);
    }
    return s;
}

std::vector<classical::Nimber> octal_g_sequence(const OctalCode& code, std::size_t n_max,
                                                std::size_t limit)
{
    if (n_max > limit) {
        throw BoundExceeded("octal heap limit " + std::to_string(n_max) + " exceeds " +
                            std::to_string(limit));
    }
    std::vector<classical::Nimber> g(n_max + 1, 0);
    std::vector<classical::Nimber> succ;
    for (std::size_t n = 1; n <= n_max; ++n) {
        succ.clear();
        const auto& d = code.digits();
        for (std::size_t i = 1; i <= d.size() && i <= n; ++i) {
            const unsigned digit = d[i - 1];
            const std::size_t rest = n - i;
            if ((digit & 1U) && rest == 0) {
                succ.push_back(0);
            }
            if ((digit & 2U) && rest > 0) {
                succ.push_back(g[rest]);
            }
            if ((digit & 4U) && rest >= 2) {
                for (std::size_t a = 1; a <= rest / 2; ++a) {
                    succ.push_back(g[a] ^ g[rest - a]);
                }
            }
        }
        g[n] = classical::mex(succ);
    }
    return g;
}

std::optional<Period> find_period(std::span<const classical::Nimber> seq)
{
    // Smallest preperiod wins, then smallest period. Ordering by period first
    // lets any sequence ending in two equal values claim period 1.
    const std::size_t len = seq.size();
    std::optional<Period> best;
    for (std::size_t period = 1; 2 * period <= len; ++period) {
        if (best && best->preperiod == 0) {
            break;
        }
        // The preperiod starts right after the last mismatch.
        std::size_t pre = 0;
        for (std::size_t n = len - period; n-- > 0;) {
            if (seq[n] != seq[n + period]) {
                pre = n + 1;
                break;
            }
        }
        if (pre + 2 * period <= len && (!best || pre < best->preperiod)) {
            best = Period{pre, period};
        }
    }
    return best;
}

}  // namespace cgt::heaps
