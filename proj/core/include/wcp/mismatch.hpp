#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "wcp/fingerprint.hpp"
#include "wcp/symbols.hpp"

namespace wcp {

/// Hamming distance; wildcards compare as an ordinary extra symbol.
/// Throws LengthMismatch.
std::size_t hamming(std::span<const Symbol> s, std::span<const Symbol> t);

/// Search for every shift i in [first_shift, last_shift] such that
/// HAM(S[1,x], S[i+1,i+x]) <= threshold. Shift i is reported while the
/// symbol at position i+x is consumed.
struct MismatchQuery {
    std::size_t pattern_length = 1;
    std::size_t threshold = 0;
    std::size_t first_shift = 0;
    std::size_t last_shift = std::numeric_limits<std::size_t>::max();
};

struct CandidateEmission {
    std::size_t index = 0;
    std::size_t mismatch_count = 0;

    friend bool operator==(const CandidateEmission&, const CandidateEmission&) = default;
};

enum class Subroutine { Reference, Sketch };

std::string_view to_string(Subroutine s) noexcept;

/// Streaming k-mismatch matcher. One instance per query; feed every symbol of
/// the stream in order.
class KMismatchMatcher {
public:
    virtual ~KMismatchMatcher() = default;

    /// Consumes the next symbol and appends the emissions that complete at it.
    virtual void push(Symbol s, std::vector<CandidateEmission>& out) = 0;

    /// Machine words currently held by the matcher.
    virtual std::size_t space_words() const = 0;
    /// Largest value space_words() reached so far.
    virtual std::size_t peak_space_words() const = 0;

    virtual const MismatchQuery& query() const = 0;
    virtual std::size_t consumed() const = 0;
};

/// Exact matcher: buffers the pattern and tracks a mismatch counter per live
/// shift, dropping a shift once it exceeds the threshold.
class ReferenceKMismatch final : public KMismatchMatcher {
public:
    explicit ReferenceKMismatch(MismatchQuery query);

    void push(Symbol s, std::vector<CandidateEmission>& out) override;
    std::size_t space_words() const override;
    std::size_t peak_space_words() const override { return peak_; }
    const MismatchQuery& query() const override { return query_; }
    std::size_t consumed() const override { return pos_; }

private:
    struct Live {
        std::size_t shift;
        std::size_t mismatches;
    };

    MismatchQuery query_;
    std::vector<Symbol> pattern_;
    std::vector<Live> live_;
    std::size_t pos_ = 0;
    std::size_t peak_ = 0;
};

/// Fingerprint matcher: keeps prefix fingerprints of the pattern and of the
/// current text window (no symbols) and counts mismatches for a shift with at
/// most threshold+1 longest-common-extension queries, each a binary search
/// over fingerprint equality. A collision can only hide a mismatch, so errors
/// are false positives.
class SketchKMismatch final : public KMismatchMatcher {
public:
    SketchKMismatch(MismatchQuery query, const FingerprintScheme& scheme);

    void push(Symbol s, std::vector<CandidateEmission>& out) override;
    std::size_t space_words() const override;
    std::size_t peak_space_words() const override { return peak_; }
    const MismatchQuery& query() const override { return query_; }
    std::size_t consumed() const override { return pos_; }

private:
    std::uint64_t text_prefix(std::size_t position) const;
    std::uint64_t text_hash(std::size_t from, std::size_t length) const;
    std::uint64_t pattern_hash(std::size_t from, std::size_t length) const;
    std::size_t count_mismatches(std::size_t shift) const;

    MismatchQuery query_;
    FingerprintScheme scheme_;
    std::vector<std::uint64_t> pattern_prefix_;  // H[0..x]
    std::vector<std::uint64_t> powers_;          // base^0..base^x
    std::vector<std::uint64_t> ring_;            // H[pos-x..pos], indexed mod x+1
    std::uint64_t running_ = 0;
    std::size_t pos_ = 0;
    std::size_t peak_ = 0;
};

std::unique_ptr<KMismatchMatcher> make_kmismatch(Subroutine which, MismatchQuery query,
                                                 const FingerprintScheme& scheme);

/// Convenience driver: runs a matcher over a whole sequence. Throws
/// StreamTooShort when the sequence is shorter than the pattern.
std::vector<CandidateEmission> kmismatch_stream(Subroutine which, const MismatchQuery& query,
                                                std::span<const Symbol> stream,
                                                const FingerprintScheme& scheme);

} // namespace wcp
