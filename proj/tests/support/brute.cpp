#include "brute.hpp"

#include <algorithm>
#include <limits>

namespace wcp::testing {

WildcardString ws(std::string_view text) { return parse_stream(text, ParseOptions{'?', false}); }

std::size_t brute_hamming(std::span<const Symbol> a, std::span<const Symbol> b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

bool enumerate_wildcard_period(const WildcardString& s, std::size_t p) {
    const std::size_t n = s.size();
    if (p < 1 || p >= n) return false;
    std::vector<Symbol> letters;
    for (std::size_t b = 0; b < 256; ++b)
        if (s.alphabet().test(b)) letters.push_back(Symbol(static_cast<std::uint8_t>(b)));
    if (letters.empty()) letters.push_back(Symbol('a'));

    const auto& W = s.wildcards();
    std::vector<Symbol> text(s.data().begin(), s.data().end());
    std::vector<std::size_t> digit(W.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < W.size(); ++i) text[W[i] - 1] = letters[digit[i]];
        if (std::equal(text.begin(), text.end() - static_cast<std::ptrdiff_t>(p), text.begin() + static_cast<std::ptrdiff_t>(p)))
            return true;
        std::size_t i = 0;
        while (i < W.size() && ++digit[i] == letters.size()) digit[i++] = 0;
        if (i == W.size()) return false;
    }
}

std::size_t brute_distance(const WildcardString& s, std::size_t p) {
    std::size_t total = 0;
    for (std::size_t r = 1; r <= p; ++r) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t target = 0; target < 256; ++target) {
            std::size_t edits = 0;
            for (std::size_t pos = r; pos <= s.size(); pos += p) {
                const Symbol c = s.at(pos);
                if (!c.is_wildcard() && c.byte() != target) ++edits;
            }
            best = std::min(best, edits);
        }
        total += best;
    }
    return total;
}

std::vector<std::size_t> brute_kmismatch(std::span<const Symbol> s, std::size_t x, std::size_t threshold,
                                         std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t i = first; i <= last && i + x <= s.size(); ++i)
        if (brute_hamming(s.subspan(0, x), s.subspan(i, x)) <= threshold) out.push_back(i);
    return out;
}

} // namespace wcp::testing
