#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "wcp/symbols.hpp"

namespace wcp {

/// A replayable, forward-only symbol feed with known length. The two-pass
/// engine rewinds it once between passes; the one-pass engine never does.
class SymbolSource {
public:
    virtual ~SymbolSource() = default;

    virtual std::size_t length() const = 0;
    virtual void rewind() = 0;
    virtual std::optional<Symbol> next() = 0;
};

/// Feeds symbols of an in-memory WildcardString.
class MemorySource final : public SymbolSource {
public:
    explicit MemorySource(const WildcardString& s) : s_(&s) {}

    std::size_t length() const override { return s_->size(); }
    void rewind() override { pos_ = 0; }
    std::optional<Symbol> next() override {
        if (pos_ >= s_->size()) return std::nullopt;
        return s_->data()[pos_++];
    }

private:
    const WildcardString* s_;
    std::size_t pos_ = 0;
};

/// Reads a byte file symbol by symbol; rewind() reopens it. A trailing
/// newline (LF or CRLF) is excluded when requested.
class FileSource final : public SymbolSource {
public:
    FileSource(std::filesystem::path path, ParseOptions options = {});

    std::size_t length() const override { return length_; }
    void rewind() override;
    std::optional<Symbol> next() override;

private:
    std::filesystem::path path_;
    ParseOptions options_;
    std::ifstream in_;
    std::size_t length_ = 0;
    std::size_t pos_ = 0;
};

/// Wraps a source and throws SingleScanViolation on rewind or on reading
/// past the end, so one-pass code paths can prove they scan once.
class SingleScanGuard final : public SymbolSource {
public:
    explicit SingleScanGuard(SymbolSource& inner) : inner_(&inner) {}

    std::size_t length() const override { return inner_->length(); }
    void rewind() override;
    std::optional<Symbol> next() override;

    std::size_t consumed() const noexcept { return consumed_; }

private:
    SymbolSource* inner_;
    std::size_t consumed_ = 0;
    bool exhausted_ = false;
};

} // namespace wcp
