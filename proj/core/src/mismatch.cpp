#include "wcp/mismatch.hpp"

#include <algorithm>

#include "wcp/error.hpp"

namespace wcp {

std::string_view to_string(Subroutine s) noexcept {
    return s == Subroutine::Reference ? "reference" : "sketch";
}

std::size_t hamming(std::span<const Symbol> s, std::span<const Symbol> t) {
    if (s.size() != t.size())
        throw Error(ErrorCode::LengthMismatch, std::to_string(s.size()) + " vs " + std::to_string(t.size()));
    std::size_t d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) d += s[i] != t[i];
    return d;
}

namespace {

void validate(const MismatchQuery& q) {
    if (q.pattern_length == 0) throw Error(ErrorCode::InvalidParams, "pattern length must be >= 1");
    if (q.first_shift > q.last_shift) throw Error(ErrorCode::InvalidParams, "empty shift range");
}

} // namespace

// ---------------------------------------------------------------------------

ReferenceKMismatch::ReferenceKMismatch(MismatchQuery query) : query_(query) {
    validate(query_);
    pattern_.reserve(query_.pattern_length);
}

void ReferenceKMismatch::push(Symbol s, std::vector<CandidateEmission>& out) {
    ++pos_;
    if (pattern_.size() < query_.pattern_length) pattern_.push_back(s);

    // The window of shift i covers positions i+1 .. i+x.
    const std::size_t opening = pos_ - 1;
    if (opening >= query_.first_shift && opening <= query_.last_shift) live_.push_back({opening, 0});

    const std::size_t x = query_.pattern_length;
    std::size_t kept = 0;
    for (std::size_t idx = 0; idx < live_.size(); ++idx) {
        Live l = live_[idx];
        const std::size_t offset = pos_ - l.shift;  // 1-based offset into the pattern
        if (pattern_[offset - 1] != s) ++l.mismatches;
        if (l.mismatches > query_.threshold) continue;
        if (offset == x) {
            out.push_back({l.shift, l.mismatches});
            continue;
        }
        live_[kept++] = l;
    }
    live_.resize(kept);
    peak_ = std::max(peak_, space_words());
}

std::size_t ReferenceKMismatch::space_words() const {
    return pattern_.size() + 2 * live_.size() + 4;
}

// ---------------------------------------------------------------------------

SketchKMismatch::SketchKMismatch(MismatchQuery query, const FingerprintScheme& scheme)
    : query_(query), scheme_(scheme) {
    validate(query_);
    const std::size_t x = query_.pattern_length;
    pattern_prefix_.reserve(x + 1);
    pattern_prefix_.push_back(0);
    powers_.resize(x + 1);
    powers_[0] = 1;
    for (std::size_t i = 1; i <= x; ++i) powers_[i] = FingerprintScheme::mul(powers_[i - 1], scheme_.base());
    ring_.assign(x + 1, 0);
}

std::uint64_t SketchKMismatch::text_prefix(std::size_t position) const {
    return ring_[position % ring_.size()];
}

std::uint64_t SketchKMismatch::text_hash(std::size_t from, std::size_t length) const {
    // Fingerprint of S[from+1 .. from+length].
    return FingerprintScheme::sub(text_prefix(from + length),
                                  FingerprintScheme::mul(text_prefix(from), powers_[length]));
}

std::uint64_t SketchKMismatch::pattern_hash(std::size_t from, std::size_t length) const {
    return FingerprintScheme::sub(pattern_prefix_[from + length],
                                  FingerprintScheme::mul(pattern_prefix_[from], powers_[length]));
}

std::size_t SketchKMismatch::count_mismatches(std::size_t shift) const {
    const std::size_t x = query_.pattern_length;
    std::size_t done = 0;
    std::size_t mismatches = 0;
    while (done < x) {
        // Longest common extension from offset `done`.
        std::size_t lo = 0, hi = x - done;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo + 1) / 2;
            if (pattern_hash(done, mid) == text_hash(shift + done, mid))
                lo = mid;
            else
                hi = mid - 1;
        }
        done += lo;
        if (done >= x) break;
        if (++mismatches > query_.threshold) return mismatches;
        ++done;
    }
    return mismatches;
}

void SketchKMismatch::push(Symbol s, std::vector<CandidateEmission>& out) {
    ++pos_;
    running_ = FingerprintScheme::add(FingerprintScheme::mul(running_, scheme_.base()), s.coefficient() + 1);
    ring_[pos_ % ring_.size()] = running_;
    const std::size_t x = query_.pattern_length;
    if (pattern_prefix_.size() <= x) pattern_prefix_.push_back(running_);

    if (pos_ >= x) {
        const std::size_t shift = pos_ - x;
        if (shift >= query_.first_shift && shift <= query_.last_shift) {
            const std::size_t m = count_mismatches(shift);
            if (m <= query_.threshold) out.push_back({shift, m});
        }
    }
    peak_ = std::max(peak_, space_words());
}

std::size_t SketchKMismatch::space_words() const {
    return pattern_prefix_.size() + powers_.size() + ring_.size() + 4;
}

// ---------------------------------------------------------------------------

std::unique_ptr<KMismatchMatcher> make_kmismatch(Subroutine which, MismatchQuery query,
                                                 const FingerprintScheme& scheme) {
    if (which == Subroutine::Reference) return std::make_unique<ReferenceKMismatch>(query);
    return std::make_unique<SketchKMismatch>(query, scheme);
}

std::vector<CandidateEmission> kmismatch_stream(Subroutine which, const MismatchQuery& query,
                                                std::span<const Symbol> stream,
                                                const FingerprintScheme& scheme) {
    if (stream.size() < query.pattern_length)
        throw Error(ErrorCode::StreamTooShort,
                    std::to_string(stream.size()) + " symbols < pattern length " + std::to_string(query.pattern_length));
    auto matcher = make_kmismatch(which, query, scheme);
    std::vector<CandidateEmission> out;
    for (Symbol s : stream) matcher->push(s, out);
    return out;
}

} // namespace wcp
