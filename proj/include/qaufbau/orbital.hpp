#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qaufbau {

inline constexpr std::string_view spectroscopic_letters = "spdfgh";

/// One nl shell. n >= 1, 0 <= l <= n-1. Labels follow the usual
/// spectroscopic notation, so "3d" means n = 3, l = 2.
struct Orbital {
    int n = 1;
    int l = 0;

    Orbital() = default;
    Orbital(int n_, int l_) : n(n_), l(l_) {
        if (n < 1)
            throw std::invalid_argument("orbital n must be >= 1, got " + std::to_string(n));
        if (l < 0 || l > n - 1)
            throw std::invalid_argument("orbital l must satisfy 0 <= l <= n-1, got n=" +
                                        std::to_string(n) + " l=" + std::to_string(l));
    }

    std::string label() const {
        if (l >= static_cast<int>(spectroscopic_letters.size()))
            throw std::domain_error("no spectroscopic letter for l=" + std::to_string(l));
        return std::to_string(n) + spectroscopic_letters[static_cast<size_t>(l)];
    }

    friend auto operator<=>(const Orbital&, const Orbital&) = default;
};

/// Parses "<n><letter>" labels such as "1s", "3d", "12h".
inline Orbital parse_orbital(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
        ++pos;
    if (pos == 0 || pos + 1 != text.size())
        throw std::invalid_argument("malformed orbital label '" + std::string(text) + "'");
    const int n = std::stoi(std::string(text.substr(0, pos)));
    const auto letter = spectroscopic_letters.find(text[pos]);
    if (letter == std::string_view::npos)
        throw std::invalid_argument("unknown spectroscopic letter in '" + std::string(text) + "'");
    return Orbital(n, static_cast<int>(letter));
}

/// Electrons an nl shell can hold: 2(2l+1).
inline int orbital_capacity(int l) {
    return 2 * (2 * l + 1);
}

} // namespace qaufbau
