#include "wcp/source.hpp"

#include "wcp/error.hpp"

namespace wcp {

FileSource::FileSource(std::filesystem::path path, ParseOptions options)
    : path_(std::move(path)), options_(options) {
    std::error_code ec;
    auto size = std::filesystem::file_size(path_, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot stat " + path_.string() + ": " + ec.message());

    std::ifstream probe(path_, std::ios::binary);
    if (!probe) throw Error(ErrorCode::Io, "cannot open " + path_.string());
    if (options_.strip_trailing_newline && size > 0) {
        char last = 0;
        probe.seekg(static_cast<std::streamoff>(size - 1));
        probe.get(last);
        if (last == '\n') {
            --size;
            if (size > 0) {
                probe.seekg(static_cast<std::streamoff>(size - 1));
                probe.get(last);
                if (last == '\r') --size;
            }
        }
    }
    length_ = static_cast<std::size_t>(size);
    if (length_ == 0) throw Error(ErrorCode::EmptyStream, path_.string() + " has no symbols");
    rewind();
}

void FileSource::rewind() {
    in_.close();
    in_.clear();
    in_.open(path_, std::ios::binary);
    if (!in_) throw Error(ErrorCode::Io, "cannot reopen " + path_.string());
    pos_ = 0;
}

std::optional<Symbol> FileSource::next() {
    if (pos_ >= length_) return std::nullopt;
    char c = 0;
    if (!in_.get(c)) throw Error(ErrorCode::Io, "short read on " + path_.string());
    ++pos_;
    if (c == options_.wildcard_marker) return Symbol::wildcard();
    return Symbol(static_cast<std::uint8_t>(c));
}

void SingleScanGuard::rewind() {
    if (consumed_ == 0) {
        inner_->rewind();
        return;
    }
    throw Error(ErrorCode::SingleScanViolation, "rewind after " + std::to_string(consumed_) + " symbols");
}

std::optional<Symbol> SingleScanGuard::next() {
    if (exhausted_) throw Error(ErrorCode::SingleScanViolation, "read past end of stream");
    auto s = inner_->next();
    if (!s) {
        exhausted_ = true;
        return s;
    }
    ++consumed_;
    return s;
}

} // namespace wcp
