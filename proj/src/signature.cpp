#include "monaut/signature.hpp"

#include <algorithm>
#include <set>

namespace monaut {

Symbol::Symbol(std::uint64_t bits, std::uint32_t width) : bits_(bits), width_(width) {
    if (width > kMaxWidth) {
        throw WidthMismatchError("symbol width " + std::to_string(width) +
                                 " exceeds the supported maximum of " +
                                 std::to_string(kMaxWidth) + " tracks");
    }
    if (width < kMaxWidth && (bits >> width) != 0) {
        throw WidthMismatchError("symbol bits exceed width " + std::to_string(width));
    }
}

Symbol Symbol::from_string(std::string_view text) {
    if (text.size() > kMaxWidth) {
        throw WidthMismatchError("symbol text longer than " + std::to_string(kMaxWidth) +
                                 " tracks: \"" + std::string(text) + "\"");
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            bits |= std::uint64_t{1} << i;
        } else if (text[i] != '0') {
            throw WidthMismatchError("symbol text must consist of 0s and 1s: \"" +
                                     std::string(text) + "\"");
        }
    }
    return Symbol(bits, static_cast<std::uint32_t>(text.size()));
}

bool Symbol::bit(std::uint32_t track) const {
    if (track >= width_) {
        throw WidthMismatchError("track " + std::to_string(track) +
                                 " out of range for width " + std::to_string(width_));
    }
    return (bits_ >> track) & 1;
}

Symbol Symbol::with_bit(std::uint32_t track, bool value) const {
    if (track >= width_) {
        throw WidthMismatchError("track " + std::to_string(track) +
                                 " out of range for width " + std::to_string(width_));
    }
    std::uint64_t bits = bits_;
    if (value) {
        bits |= std::uint64_t{1} << track;
    } else {
        bits &= ~(std::uint64_t{1} << track);
    }
    return Symbol(bits, width_);
}

Symbol Symbol::drop_track(std::uint32_t track) const {
    if (track >= width_) {
        throw WidthMismatchError("cannot drop track " + std::to_string(track) +
                                 " from width " + std::to_string(width_));
    }
    const std::uint64_t low_mask = (std::uint64_t{1} << track) - 1;
    const std::uint64_t low = bits_ & low_mask;
    const std::uint64_t high = (track + 1 < kMaxWidth) ? bits_ >> (track + 1) : 0;
    return Symbol(low | (high << track), width_ - 1);
}

Symbol Symbol::insert_track(std::uint32_t track, bool value) const {
    if (track > width_) {
        throw WidthMismatchError("cannot insert track " + std::to_string(track) +
                                 " into width " + std::to_string(width_));
    }
    if (width_ >= kMaxWidth) {
        throw WidthMismatchError("cannot insert a track into a symbol already " +
                                 std::to_string(kMaxWidth) + " tracks wide");
    }
    const std::uint64_t low_mask = (std::uint64_t{1} << track) - 1;
    const std::uint64_t low = bits_ & low_mask;
    const std::uint64_t high = bits_ >> track;
    std::uint64_t bits = low;
    if (track + 1 < kMaxWidth) {
        bits |= high << (track + 1);
    }
    if (value) {
        bits |= std::uint64_t{1} << track;
    }
    return Symbol(bits, width_ + 1);
}

Symbol Symbol::reordered(std::span<const std::uint32_t> source_for) const {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < source_for.size(); ++j) {
        if (bit(source_for[j])) {
            bits |= std::uint64_t{1} << j;
        }
    }
    return Symbol(bits, static_cast<std::uint32_t>(source_for.size()));
}

std::string Symbol::to_string() const {
    std::string out(width_, '0');
    for (std::uint32_t i = 0; i < width_; ++i) {
        if (bit(i)) {
            out[i] = '1';
        }
    }
    return out;
}

bool operator<(const Symbol& a, const Symbol& b) {
    if (a.width_ != b.width_) {
        return a.width_ < b.width_;
    }
    for (std::uint32_t i = 0; i < a.width_; ++i) {
        const bool ba = a.bit(i);
        const bool bb = b.bit(i);
        if (ba != bb) {
            return bb;
        }
    }
    return false;
}

VariableSignature::VariableSignature(std::vector<std::string> fo_vars,
                                     std::vector<std::string> so_vars)
    : fo_vars_(std::move(fo_vars)), so_vars_(std::move(so_vars)) {
    if (fo_vars_.size() + so_vars_.size() > Symbol::kMaxWidth) {
        throw WidthMismatchError("signature would need " +
                                 std::to_string(fo_vars_.size() + so_vars_.size()) +
                                 " tracks; at most " + std::to_string(Symbol::kMaxWidth) +
                                 " are supported");
    }
    std::set<std::string_view> seen;
    for (const auto& name : fo_vars_) {
        if (!seen.insert(name).second) {
            throw DuplicateVariableError("duplicate variable \"" + name + "\" in signature");
        }
    }
    for (const auto& name : so_vars_) {
        if (!seen.insert(name).second) {
            throw DuplicateVariableError("duplicate variable \"" + name + "\" in signature");
        }
    }
}

bool VariableSignature::has_variable(std::string_view name) const {
    return is_fo(name) || is_so(name);
}

bool VariableSignature::is_fo(std::string_view name) const {
    return std::find(fo_vars_.begin(), fo_vars_.end(), name) != fo_vars_.end();
}

bool VariableSignature::is_so(std::string_view name) const {
    return std::find(so_vars_.begin(), so_vars_.end(), name) != so_vars_.end();
}

std::uint32_t VariableSignature::track_of(std::string_view name) const {
    for (std::size_t i = 0; i < fo_vars_.size(); ++i) {
        if (fo_vars_[i] == name) {
            return static_cast<std::uint32_t>(i);
        }
    }
    for (std::size_t i = 0; i < so_vars_.size(); ++i) {
        if (so_vars_[i] == name) {
            return static_cast<std::uint32_t>(fo_vars_.size() + i);
        }
    }
    throw UnknownVariableError("variable \"" + std::string(name) +
                               "\" is not part of signature " + to_string());
}

const std::string& VariableSignature::track_name(std::uint32_t track) const {
    if (track < fo_vars_.size()) {
        return fo_vars_[track];
    }
    const std::size_t so_index = track - fo_vars_.size();
    if (so_index < so_vars_.size()) {
        return so_vars_[so_index];
    }
    throw UnknownVariableError("track " + std::to_string(track) +
                               " out of range for signature " + to_string());
}

VariableSignature VariableSignature::without(std::string_view name) const {
    track_of(name);
    std::vector<std::string> fo = fo_vars_;
    std::vector<std::string> so = so_vars_;
    std::erase(fo, std::string(name));
    std::erase(so, std::string(name));
    return VariableSignature(std::move(fo), std::move(so));
}

VariableSignature VariableSignature::with_variable(std::string_view name, VariableKind kind,
                                                   std::size_t position) const {
    if (has_variable(name)) {
        throw DuplicateVariableError("variable \"" + std::string(name) +
                                     "\" already present in signature " + to_string());
    }
    std::vector<std::string> fo = fo_vars_;
    std::vector<std::string> so = so_vars_;
    auto& list = (kind == VariableKind::FirstOrder) ? fo : so;
    position = std::min(position, list.size());
    list.insert(list.begin() + static_cast<std::ptrdiff_t>(position), std::string(name));
    return VariableSignature(std::move(fo), std::move(so));
}

std::string VariableSignature::to_string() const {
    std::string out = "fo:";
    for (std::size_t i = 0; i < fo_vars_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += fo_vars_[i];
    }
    out += " so:";
    for (std::size_t i = 0; i < so_vars_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += so_vars_[i];
    }
    return out;
}

}  // namespace monaut
