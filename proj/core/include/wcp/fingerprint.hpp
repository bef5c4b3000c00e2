#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wcp/error.hpp"
#include "wcp/symbols.hpp"

namespace wcp {

/// Karp-Rabin fingerprint of a string: sum of coefficient(s_i) * base^(len-i)
/// modulo the Mersenne prime 2^61 - 1. Carries its own length so that
/// concatenation and splitting need no side bookkeeping.
struct Fingerprint {
    std::uint64_t hash = 0;
    std::uint64_t length = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// A wildcard slot inside a holey fingerprint; offset is 1-based within the
/// fingerprinted substring.
struct Hole {
    std::uint64_t offset = 0;

    friend bool operator==(const Hole&, const Hole&) = default;
};

/// Fingerprint whose wildcard positions contribute 0 until an assignment is
/// supplied at finalization time.
struct HoleyFingerprint {
    Fingerprint base;
    std::vector<Hole> holes;
};

/// Random evaluation point for the polynomial hash. All operations on
/// fingerprints go through a scheme; fingerprints from different schemes are
/// not comparable.
class FingerprintScheme {
public:
    static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

    /// Draws the base uniformly from [2, q-2] with a seeded mt19937_64.
    explicit FingerprintScheme(std::uint64_t seed);

    static FingerprintScheme with_base(std::uint64_t base);

    std::uint64_t base() const noexcept { return base_; }

    /// base^exponent mod q.
    std::uint64_t power(std::uint64_t exponent) const noexcept;

    /// Throws WildcardInExactFingerprint for the wildcard.
    Fingerprint append(Fingerprint f, Symbol s) const;
    Fingerprint concat(Fingerprint a, Fingerprint b) const noexcept;
    /// Removes `prefix` from the front of `whole`. Throws LengthUnderflow.
    Fingerprint split(Fingerprint whole, Fingerprint prefix) const;
    /// Fingerprint of block^times.
    Fingerprint repeat(Fingerprint block, std::uint64_t times) const noexcept;

    /// Throws WildcardInExactFingerprint if `s` holds a wildcard.
    Fingerprint of(std::span<const Symbol> s) const;

    /// Treats wildcards as coefficient 0; never throws.
    Fingerprint append_base(Fingerprint f, Symbol s) const noexcept {
        return {add(mul(f.hash, base_), s.coefficient()), f.length + 1};
    }

    HoleyFingerprint append(HoleyFingerprint h, Symbol s) const;
    HoleyFingerprint holey_of(std::span<const Symbol> s) const;
    HoleyFingerprint concat(const HoleyFingerprint& a, const HoleyFingerprint& b) const;

    /// Fills every hole with the symbol returned by `assign(offset)`.
    /// Throws IncompleteAssignment when assign yields nullopt or a wildcard.
    template <std::invocable<std::uint64_t> AssignFn>
    Fingerprint finalize(const HoleyFingerprint& h, AssignFn&& assign) const {
        std::uint64_t hash = h.base.hash;
        for (const Hole& hole : h.holes) {
            std::optional<Symbol> s = assign(hole.offset);
            if (!s || s->is_wildcard())
                throw Error(ErrorCode::IncompleteAssignment, "hole at offset " + std::to_string(hole.offset));
            hash = add(hash, mul(s->coefficient(), power(h.base.length - hole.offset)));
        }
        return {hash, h.base.length};
    }

    Fingerprint finalize(const HoleyFingerprint& h, const std::map<std::uint64_t, Symbol>& assignment) const;

    static std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept {
        std::uint64_t s = a + b;
        return s >= kPrime ? s - kPrime : s;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) noexcept {
        return a >= b ? a - b : a + kPrime - b;
    }
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept {
        __extension__ using u128 = unsigned __int128;
        const u128 p = static_cast<u128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
        std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
        return add(lo, hi);
    }

private:
    FingerprintScheme() = default;

    std::uint64_t base_ = 2;
};

} // namespace wcp
