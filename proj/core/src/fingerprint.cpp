#include "wcp/fingerprint.hpp"

#include <random>

namespace wcp {

FingerprintScheme::FingerprintScheme(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 2);
    base_ = dist(rng);
}

FingerprintScheme FingerprintScheme::with_base(std::uint64_t base) {
    if (base < 2 || base > kPrime - 2) throw Error(ErrorCode::InvalidParams, "fingerprint base out of [2, q-2]");
    FingerprintScheme s;
    s.base_ = base;
    return s;
}

std::uint64_t FingerprintScheme::power(std::uint64_t exponent) const noexcept {
    std::uint64_t result = 1;
    std::uint64_t b = base_;
    while (exponent > 0) {
        if (exponent & 1) result = mul(result, b);
        b = mul(b, b);
        exponent >>= 1;
    }
    return result;
}

Fingerprint FingerprintScheme::append(Fingerprint f, Symbol s) const {
    if (s.is_wildcard()) throw Error(ErrorCode::WildcardInExactFingerprint, "use a holey fingerprint");
    return append_base(f, s);
}

Fingerprint FingerprintScheme::concat(Fingerprint a, Fingerprint b) const noexcept {
    return {add(mul(a.hash, power(b.length)), b.hash), a.length + b.length};
}

Fingerprint FingerprintScheme::split(Fingerprint whole, Fingerprint prefix) const {
    if (prefix.length > whole.length)
        throw Error(ErrorCode::LengthUnderflow,
                    "prefix length " + std::to_string(prefix.length) + " > " + std::to_string(whole.length));
    const std::uint64_t rest = whole.length - prefix.length;
    return {sub(whole.hash, mul(prefix.hash, power(rest))), rest};
}

Fingerprint FingerprintScheme::repeat(Fingerprint block, std::uint64_t times) const noexcept {
    Fingerprint result{};
    Fingerprint acc = block;
    while (times > 0) {
        if (times & 1) result = concat(result, acc);
        acc = concat(acc, acc);
        times >>= 1;
    }
    return result;
}

Fingerprint FingerprintScheme::of(std::span<const Symbol> s) const {
    Fingerprint f{};
    for (Symbol c : s) f = append(f, c);
    return f;
}

HoleyFingerprint FingerprintScheme::append(HoleyFingerprint h, Symbol s) const {
    h.base = append_base(h.base, s);
    if (s.is_wildcard()) h.holes.push_back({h.base.length});
    return h;
}

HoleyFingerprint FingerprintScheme::holey_of(std::span<const Symbol> s) const {
    HoleyFingerprint h;
    for (Symbol c : s) h = append(std::move(h), c);
    return h;
}

HoleyFingerprint FingerprintScheme::concat(const HoleyFingerprint& a, const HoleyFingerprint& b) const {
    HoleyFingerprint out{concat(a.base, b.base), a.holes};
    out.holes.reserve(a.holes.size() + b.holes.size());
    for (const Hole& h : b.holes) out.holes.push_back({h.offset + a.base.length});
    return out;
}

Fingerprint FingerprintScheme::finalize(const HoleyFingerprint& h,
                                        const std::map<std::uint64_t, Symbol>& assignment) const {
    return finalize(h, [&](std::uint64_t offset) -> std::optional<Symbol> {
        auto it = assignment.find(offset);
        if (it == assignment.end()) return std::nullopt;
        return it->second;
    });
}

} // namespace wcp
