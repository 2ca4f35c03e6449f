#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qturn {

// Declaration order is the canonical-form order: up < right < down < left.
enum class Letter : std::uint8_t { Up = 0, Right = 1, Down = 2, Left = 3 };

constexpr bool is_vertical(Letter l) { return l == Letter::Up || l == Letter::Down; }
constexpr bool is_horizontal(Letter l) { return !is_vertical(l); }

// Arrow flip used when modelling h -> h^{-1}.
constexpr Letter flipped(Letter l) {
    switch (l) {
        case Letter::Up: return Letter::Down;
        case Letter::Down: return Letter::Up;
        case Letter::Right: return Letter::Left;
        case Letter::Left: return Letter::Right;
    }
    return l;
}

char to_ascii(Letter l);
std::string to_unicode(Letter l);

// Exact multiple of a quarter turn.
class Quarter {
public:
    constexpr Quarter() = default;
    static constexpr Quarter from_quarters(long q) {
        Quarter r;
        r.q_ = q;
        return r;
    }
    static constexpr Quarter from_integer(long n) { return from_quarters(4 * n); }

    constexpr long quarters() const { return q_; }
    constexpr bool is_integer() const { return q_ % 4 == 0; }
    long numerator() const;    // reduced
    long denominator() const;  // 1, 2 or 4
    long to_integer() const;   // throws std::domain_error unless is_integer()
    double value() const { return static_cast<double>(q_) / 4.0; }
    std::string str() const;   // "-1/2", "0", "3/4"

    constexpr Quarter operator+(Quarter o) const { return from_quarters(q_ + o.q_); }
    constexpr Quarter operator-(Quarter o) const { return from_quarters(q_ - o.q_); }
    constexpr Quarter operator-() const { return from_quarters(-q_); }
    constexpr Quarter& operator+=(Quarter o) {
        q_ += o.q_;
        return *this;
    }
    constexpr auto operator<=>(const Quarter&) const = default;

private:
    long q_ = 0;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t column)
        : std::invalid_argument(what), column_(column) {}
    // 1-based column of the offending character (code point)
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Cyclic word of even positive length. Equality ignores rotation.
class CyclicWord {
public:
    explicit CyclicWord(std::vector<Letter> letters);

    // ASCII (U R D L, any case) and the four Unicode arrows.
    static CyclicWord parse(std::string_view text);

    std::size_t size() const { return letters_.size(); }
    std::size_t d() const { return letters_.size() / 2; }
    const std::vector<Letter>& letters() const { return letters_; }
    // cyclic access, any integer index
    Letter at(long i) const;

    CyclicWord rotated(long k) const;  // result[i] = this[i + k]
    CyclicWord canonical() const;
    // rotation that starts the indexation on a vertical letter (identity if it already does)
    CyclicWord vertical_first() const;

    std::string ascii() const;
    std::string unicode() const;

    bool operator==(const CyclicWord& o) const;
    // exact letter-by-letter comparison of the stored indexation
    bool same_indexation(const CyclicWord& o) const { return letters_ == o.letters_; }

private:
    std::vector<Letter> letters_;
};

enum class SectorType { Hyperbolic, Elliptic, Indifferent };
char sector_code(SectorType t);  // 'H', 'E', 'I'
std::string to_string(SectorType t);

enum class Limit : std::uint8_t { Zero, Infinity };
std::string to_string(Limit l);

struct AlphaOmega {
    Limit alpha;
    Limit omega;
    bool operator==(const AlphaOmega&) const = default;
};

using Window = std::array<Letter, 3>;

enum class PetalKind { AttractiveAtZero, RepulsiveAtZero, RepulsiveAtInfinity, AttractiveAtInfinity };
std::string to_string(PetalKind k);

struct Petal {
    std::size_t position;  // index of the first letter of the H-V-H sub-word
    PetalKind kind;
    bool operator==(const Petal&) const = default;
};

bool is_allowed(const CyclicWord& w);

Quarter ip_pair(Letter a, Letter b);
Quarter ip_path(std::span<const Letter> m);
Quarter ip_cyclic(const CyclicWord& w);
long symbolic_index(const CyclicWord& w);

// limits attached to a single vertical letter
Limit alpha_of(Letter vertical);
Limit omega_of(Letter vertical);
AlphaOmega alpha_omega(const Window& m3);

// Windows (v_k, h_k, v_{k+1}) anchored on the first vertical letter of the indexation.
std::vector<Window> sector_windows(const CyclicWord& w);
SectorType sector_type(const Window& m3);
std::vector<SectorType> sector_types(const CyclicWord& w);

std::vector<Petal> detect_petals(const CyclicWord& w);
bool has_forbidden_pair(const CyclicWord& w);
bool is_conservative_word(const CyclicWord& w);

long module_lower_bound(long index);

// Reverse the order and flip every arrow.
CyclicWord inverse_word(const CyclicWord& w);

// All 4^d allowed indexations that start on a vertical letter.
std::vector<CyclicWord> enumerate_allowed_raw(std::size_t d);
// One canonical representative per rotation class, sorted by canonical ascii.
std::vector<CyclicWord> enumerate_allowed(std::size_t d);

}  // namespace qturn
