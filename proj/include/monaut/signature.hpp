#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monaut/errors.hpp"

namespace monaut {

/// One letter of a multi-track alphabet: a fixed-width bit vector with one
/// bit per track. Track 0 is printed first in to_string().
class Symbol {
public:
    /// Tracks are stored in a single machine word.
    static constexpr std::uint32_t kMaxWidth = 64;

    Symbol() = default;

    Symbol(std::uint64_t bits, std::uint32_t width);

    static Symbol zeros(std::uint32_t width) { return Symbol(0, width); }

    /// Parses "0101"-style text, track 0 first. Throws WidthMismatchError on
    /// bad characters or oversize input.
    static Symbol from_string(std::string_view text);

    std::uint32_t width() const { return width_; }
    std::uint64_t bits() const { return bits_; }

    bool bit(std::uint32_t track) const;
    Symbol with_bit(std::uint32_t track, bool value) const;

    /// Removes one track, shifting the higher tracks down.
    Symbol drop_track(std::uint32_t track) const;

    /// Inserts a track at `track`, shifting the higher tracks up.
    Symbol insert_track(std::uint32_t track, bool value) const;

    /// Rearranges tracks: bit j of the result is bit source_for[j] of *this.
    Symbol reordered(std::span<const std::uint32_t> source_for) const;

    std::string to_string() const;

    friend bool operator==(const Symbol& a, const Symbol& b) = default;

    /// Lexicographic by track: track 0 is the most significant position.
    friend bool operator<(const Symbol& a, const Symbol& b);

private:
    std::uint64_t bits_ = 0;
    std::uint32_t width_ = 0;
};

enum class VariableKind { FirstOrder, SecondOrder };

/// An ordered list of first-order variables followed by an ordered list of
/// second-order (monadic predicate) variables. Track j of a symbol belongs
/// to the j-th first-order variable when j < fo_count(), and to the
/// (j - fo_count())-th second-order variable otherwise. Equality is by name
/// sequence.
class VariableSignature {
public:
    VariableSignature() = default;

    /// Throws DuplicateVariableError if any name repeats across both lists,
    /// and WidthMismatchError if the total track count exceeds
    /// Symbol::kMaxWidth.
    VariableSignature(std::vector<std::string> fo_vars,
                      std::vector<std::string> so_vars);

    std::size_t fo_count() const { return fo_vars_.size(); }
    std::size_t so_count() const { return so_vars_.size(); }
    std::uint32_t width() const {
        return static_cast<std::uint32_t>(fo_vars_.size() + so_vars_.size());
    }

    std::span<const std::string> fo_vars() const { return fo_vars_; }
    std::span<const std::string> so_vars() const { return so_vars_; }

    bool has_variable(std::string_view name) const;
    bool is_fo(std::string_view name) const;
    bool is_so(std::string_view name) const;

    /// Throws UnknownVariableError.
    std::uint32_t track_of(std::string_view name) const;

    const std::string& track_name(std::uint32_t track) const;
    bool track_is_fo(std::uint32_t track) const { return track < fo_count(); }
    VariableKind track_kind(std::uint32_t track) const {
        return track_is_fo(track) ? VariableKind::FirstOrder
                                  : VariableKind::SecondOrder;
    }

    /// Copy without one variable. Throws UnknownVariableError.
    VariableSignature without(std::string_view name) const;

    /// Copy with `name` inserted at `position` within its kind's list
    /// (clamped to the list size). Throws DuplicateVariableError.
    VariableSignature with_variable(std::string_view name, VariableKind kind,
                                    std::size_t position) const;

    /// "fo:x1,x2 so:X1" (the representation used by the .aut header).
    std::string to_string() const;

    friend bool operator==(const VariableSignature& a,
                           const VariableSignature& b) = default;

private:
    std::vector<std::string> fo_vars_;
    std::vector<std::string> so_vars_;
};

}  // namespace monaut
