#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wcp {

/// One stream symbol: a byte, or the distinguished wildcard.
class Symbol {
public:
    constexpr Symbol() noexcept = default;
    constexpr explicit Symbol(std::uint8_t byte) noexcept : code_(byte) {}

    static constexpr Symbol wildcard() noexcept { return Symbol(kWildcardCode, 0); }

    constexpr bool is_wildcard() const noexcept { return code_ == kWildcardCode; }
    constexpr std::uint8_t byte() const noexcept { return static_cast<std::uint8_t>(code_); }
    constexpr std::uint16_t code() const noexcept { return code_; }

    /// Polynomial coefficient used by fingerprints: 0 for the wildcard,
    /// byte + 1 otherwise, so no real symbol shares the wildcard's slot.
    constexpr std::uint64_t coefficient() const noexcept {
        return is_wildcard() ? 0 : static_cast<std::uint64_t>(code_) + 1;
    }

    friend constexpr bool operator==(Symbol, Symbol) noexcept = default;
    friend constexpr auto operator<=>(Symbol, Symbol) noexcept = default;

private:
    static constexpr std::uint16_t kWildcardCode = 0x100;
    constexpr Symbol(std::uint16_t code, int) noexcept : code_(code) {}

    std::uint16_t code_ = 0;
};

using Alphabet = std::bitset<256>;

struct ParseOptions {
    char wildcard_marker = '?';
    bool strip_trailing_newline = true;
};

/// The input string S over a byte alphabet plus wildcard. Positions in the
/// public API are 1-based; `data()` is 0-based storage.
class WildcardString {
public:
    WildcardString() = default;
    explicit WildcardString(std::vector<Symbol> data);

    std::size_t size() const noexcept { return data_.size(); }
    std::span<const Symbol> data() const noexcept { return data_; }

    /// 1-based access.
    Symbol at(std::size_t position) const;

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    /// Sorted 1-based wildcard positions.
    const std::vector<std::size_t>& wildcards() const noexcept { return wildcards_; }

    std::string serialize(char wildcard_marker = '?') const;

private:
    std::vector<Symbol> data_;
    Alphabet alphabet_;
    std::vector<std::size_t> wildcards_;
};

/// Throws Error{EmptyStream} on empty input.
WildcardString parse_stream(std::string_view bytes, const ParseOptions& options = {});

inline WildcardString parse_stream(std::string_view bytes, char wildcard_marker) {
    return parse_stream(bytes, ParseOptions{wildcard_marker, true});
}

std::size_t wildcard_count(const WildcardString& s) noexcept;

/// Throws Error{TooManyWildcards} when |W| exceeds k_max.
void require_wildcard_bound(const WildcardString& s, std::size_t k_max);

/// Smallest byte in the alphabet, or 0 for an empty alphabet.
std::uint8_t smallest_symbol(const Alphabet& alphabet) noexcept;

} // namespace wcp
