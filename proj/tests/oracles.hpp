#pragma once

// Reference computations that do not go through the library's own tables.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qturn/sector.hpp"
#include "qturn/word.hpp"

namespace oracle {

using qturn::Letter;

inline std::pair<int, int> direction(Letter l) {
    switch (l) {
        case Letter::Up: return {0, 1};
        case Letter::Right: return {1, 0};
        case Letter::Down: return {0, -1};
        case Letter::Left: return {-1, 0};
    }
    return {0, 0};
}

// signed quarter turns from a to b, from the plane angle between the arrows
inline long quarter_turns(Letter a, Letter b) {
    auto [ax, ay] = direction(a);
    auto [bx, by] = direction(b);
    double ang = std::atan2(double(ax * by - ay * bx), double(ax * bx + ay * by));
    return std::lround(ang / (std::numbers::pi / 2.0));
}

// index in quarters of a turn summed over the cyclic pairs, plus one full turn
inline long index_of(const std::vector<Letter>& w) {
    long q = 0;
    for (std::size_t i = 0; i < w.size(); ++i) q += quarter_turns(w[i], w[(i + 1) % w.size()]);
    // q counts quarter turns, each pair is worth a quarter of that
    return 1 + q / 4;
}

inline long window_quarters(Letter a, Letter b, Letter c) { return quarter_turns(a, b) + quarter_turns(b, c); }

inline char code(Letter l) { return "URDL"[static_cast<int>(l)]; }

inline std::string text(const std::vector<Letter>& w) {
    std::string s;
    for (Letter l : w) s += code(l);
    return s;
}

// rotation-minimal string under U < R < D < L among rotations starting on a vertical letter
inline std::string canonical(const std::vector<Letter>& w) {
    std::string best;
    const bool any_vertical = std::any_of(w.begin(), w.end(), [](Letter l) { return qturn::is_vertical(l); });
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (any_vertical && !qturn::is_vertical(w[k])) continue;
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) s += char('a' + static_cast<int>(w[(i + k) % w.size()]));
        if (best.empty() || s < best) best = s;
    }
    for (char& c : best) c = "URDL"[c - 'a'];
    return best;
}

inline std::vector<Letter> letters(const std::string& s) {
    std::vector<Letter> out;
    for (char c : s) out.push_back(static_cast<Letter>(std::string("URDL").find(c)));
    return out;
}

inline bool alternating(const std::vector<Letter>& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (qturn::is_vertical(w[i]) == qturn::is_vertical(w[(i + 1) % w.size()])) return false;
    return true;
}

// every alternating word of length 2d, by brute force over all 4^(2d) strings
inline std::vector<std::vector<Letter>> all_alternating(std::size_t d) {
    std::vector<std::vector<Letter>> out;
    const std::size_t n = 2 * d;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Letter> w(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 4) w[i] = static_cast<Letter>(c % 4);
        if (alternating(w)) out.push_back(w);
    }
    return out;
}

inline std::set<std::string> classes(std::size_t d) {
    std::set<std::string> out;
    for (const auto& w : all_alternating(d)) out.insert(canonical(w));
    return out;
}

// (x, y) -> (2x, y/2) evaluated in the plane, theta measured from the -y axis toward +x
inline qturn::BandPoint saddle(qturn::BandPoint p) {
    const double q = std::numbers::pi / 2.0;
    double rho = std::exp(-p.r), beta = p.theta * q;
    double x = rho * std::sin(beta), y = -rho * std::cos(beta);
    double X = 2.0 * x, Y = 0.5 * y;
    return {std::atan2(X, -Y) / q, -std::log(std::hypot(X, Y))};
}

}  // namespace oracle
