#include "wcp/symbols.hpp"

#include "wcp/error.hpp"

namespace wcp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyStream: return "EmptyStream";
    case ErrorCode::TooManyWildcards: return "TooManyWildcards";
    case ErrorCode::WildcardInExactFingerprint: return "WildcardInExactFingerprint";
    case ErrorCode::LengthUnderflow: return "LengthUnderflow";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::StreamTooShort: return "StreamTooShort";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyBucket: return "EmptyBucket";
    case ErrorCode::NotAWildcard: return "NotAWildcard";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SingleScanViolation: return "SingleScanViolation";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

WildcardString::WildcardString(std::vector<Symbol> data) : data_(std::move(data)) {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (data_[i].is_wildcard())
            wildcards_.push_back(i + 1);
        else
            alphabet_.set(data_[i].byte());
    }
}

Symbol WildcardString::at(std::size_t position) const {
    if (position < 1 || position > data_.size())
        throw Error(ErrorCode::OutOfRange, "position " + std::to_string(position));
    return data_[position - 1];
}

std::string WildcardString::serialize(char wildcard_marker) const {
    std::string out;
    out.reserve(data_.size());
    for (Symbol s : data_)
        out.push_back(s.is_wildcard() ? wildcard_marker : static_cast<char>(s.byte()));
    return out;
}

WildcardString parse_stream(std::string_view bytes, const ParseOptions& options) {
    if (options.strip_trailing_newline) {
        if (!bytes.empty() && bytes.back() == '\n') bytes.remove_suffix(1);
        if (!bytes.empty() && bytes.back() == '\r') bytes.remove_suffix(1);
    }
    if (bytes.empty()) throw Error(ErrorCode::EmptyStream, "input has no symbols");

    std::vector<Symbol> data;
    data.reserve(bytes.size());
    for (char c : bytes) {
        if (c == options.wildcard_marker)
            data.push_back(Symbol::wildcard());
        else
            data.emplace_back(static_cast<std::uint8_t>(c));
    }
    return WildcardString(std::move(data));
}

std::size_t wildcard_count(const WildcardString& s) noexcept { return s.wildcards().size(); }

void require_wildcard_bound(const WildcardString& s, std::size_t k_max) {
    if (s.wildcards().size() > k_max)
        throw Error(ErrorCode::TooManyWildcards,
                    std::to_string(s.wildcards().size()) + " wildcards exceed k=" + std::to_string(k_max));
}

std::uint8_t smallest_symbol(const Alphabet& alphabet) noexcept {
    for (std::size_t b = 0; b < alphabet.size(); ++b)
        if (alphabet.test(b)) return static_cast<std::uint8_t>(b);
    return 0;
}

} // namespace wcp
