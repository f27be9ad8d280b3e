#pragma once

/**
 * @file words.hpp
 * @brief Digit alphabets, words in MSDF order, radix comparison and the
 *        Δ distance that counts changed trailing positions.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace carry {

/// Ordered digit alphabet {0, 1, ..., size-1}.
struct Alphabet {
    int size = 2;

    explicit Alphabet(int r = 2) : size(r) {
        if (r < 1 || r > 65536)
            throw std::invalid_argument("alphabet size out of range");
    }

    bool contains(int digit) const { return digit >= 0 && digit < size; }
    bool operator==(Alphabet const&) const = default;
};

/// Finite digit string, most significant digit first. The empty word
/// represents 0 in every system here.
struct Word {
    std::vector<int> digits;

    Word() = default;
    explicit Word(std::vector<int> d) : digits(std::move(d)) {}
    Word(std::initializer_list<int> d) : digits(d) {}

    std::size_t length() const { return digits.size(); }
    bool empty() const { return digits.empty(); }
    int operator[](std::size_t i) const { return digits[i]; }

    bool operator==(Word const&) const = default;
};

inline void require_over(Alphabet const& a, Word const& w) {
    for (int d : w.digits)
        if (!a.contains(d))
            throw std::invalid_argument("digit outside alphabet");
}

/// Radix order: shorter first, ties broken lexicographically.
inline std::strong_ordering radix_cmp(Word const& u, Word const& v) {
    if (u.length() != v.length())
        return u.length() <=> v.length();
    return std::lexicographical_compare_three_way(
        u.digits.begin(), u.digits.end(), v.digits.begin(), v.digits.end());
}

inline bool radix_less(Word const& u, Word const& v) {
    return radix_cmp(u, v) == std::strong_ordering::less;
}

inline Word longest_common_prefix(Word const& u, Word const& v) {
    std::size_t n = std::min(u.length(), v.length());
    std::size_t i = 0;
    while (i < n && u.digits[i] == v.digits[i]) ++i;
    return Word(std::vector<int>(u.digits.begin(), u.digits.begin() + i));
}

/// Δ(u,v): for equal lengths, the count of positions after the common
/// prefix; otherwise max(|u|,|v|). Equals the number of digit positions
/// rewritten when u is replaced by v.
inline std::size_t delta(Word const& u, Word const& v) {
    if (u.length() != v.length())
        return std::max(u.length(), v.length());
    return u.length() - longest_common_prefix(u, v).length();
}

inline bool is_prefix(Word const& p, Word const& w) {
    if (p.length() > w.length()) return false;
    return std::equal(p.digits.begin(), p.digits.end(), w.digits.begin());
}

inline bool is_suffix(Word const& s, Word const& w) {
    if (s.length() > w.length()) return false;
    return std::equal(s.digits.rbegin(), s.digits.rend(), w.digits.rbegin());
}

/// Textual form: "e" for ε, digits '.'-separated when the alphabet has
/// more than ten digits, concatenated otherwise.
inline std::string format_word(Word const& w, Alphabet const& a) {
    if (w.empty()) return "e";
    std::string out;
    bool dotted = a.size > 10;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (dotted && i > 0) out += '.';
        out += std::to_string(w.digits[i]);
    }
    return out;
}

inline Word parse_word(std::string const& text, Alphabet const& a) {
    Word w;
    if (text == "e" || text.empty()) return w;
    if (a.size > 10 || text.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t dot = text.find('.', pos);
            std::string piece = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
            if (piece.empty()) throw std::invalid_argument("empty digit in word: " + text);
            w.digits.push_back(std::stoi(piece));
            pos = dot == std::string::npos ? text.size() : dot + 1;
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad digit character in word: " + text);
            w.digits.push_back(c - '0');
        }
    }
    require_over(a, w);
    return w;
}

} // namespace carry
