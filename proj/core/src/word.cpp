#include "qturn/word.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qturn {

char to_ascii(Letter l) {
    switch (l) {
        case Letter::Up: return 'U';
        case Letter::Right: return 'R';
        case Letter::Down: return 'D';
        case Letter::Left: return 'L';
    }
    return '?';
}

std::string to_unicode(Letter l) {
    switch (l) {
        case Letter::Up: return "↑";
        case Letter::Right: return "→";
        case Letter::Down: return "↓";
        case Letter::Left: return "←";
    }
    return "?";
}

long Quarter::numerator() const {
    long g = std::gcd(q_, 4L);
    return q_ / g;
}

long Quarter::denominator() const {
    long g = std::gcd(q_, 4L);
    return 4 / g;
}

long Quarter::to_integer() const {
    if (!is_integer()) throw std::domain_error("quarter value " + str() + " is not an integer");
    return q_ / 4;
}

std::string Quarter::str() const {
    if (denominator() == 1) return std::to_string(numerator());
    return std::to_string(numerator()) + "/" + std::to_string(denominator());
}

CyclicWord::CyclicWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("cyclic word must be nonempty");
    if (letters_.size() % 2 != 0)
        throw std::invalid_argument("cyclic word length must be even, got " +
                                    std::to_string(letters_.size()));
}

CyclicWord CyclicWord::parse(std::string_view text) {
    std::vector<Letter> out;
    std::size_t column = 0;
    for (std::size_t i = 0; i < text.size();) {
        ++column;
        unsigned char c = static_cast<unsigned char>(text[i]);
        switch (c) {
            case 'U': case 'u': out.push_back(Letter::Up); ++i; continue;
            case 'R': case 'r': out.push_back(Letter::Right); ++i; continue;
            case 'D': case 'd': out.push_back(Letter::Down); ++i; continue;
            case 'L': case 'l': out.push_back(Letter::Left); ++i; continue;
            default: break;
        }
        // arrows U+2190..U+2193 encode as E2 86 90..93
        if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x86) {
            unsigned char t = static_cast<unsigned char>(text[i + 2]);
            if (t >= 0x90 && t <= 0x93) {
                static constexpr Letter table[4] = {Letter::Left, Letter::Up, Letter::Right, Letter::Down};
                out.push_back(table[t - 0x90]);
                i += 3;
                continue;
            }
        }
        std::string shown = c < 0x80 ? std::string(1, static_cast<char>(c)) : std::string("non-ASCII byte");
        throw ParseError("unexpected character '" + shown + "' at column " + std::to_string(column), column);
    }
    if (out.empty()) throw ParseError("empty word", 1);
    if (out.size() % 2 != 0)
        throw ParseError("word length must be even, got " + std::to_string(out.size()), out.size());
    return CyclicWord(std::move(out));
}

Letter CyclicWord::at(long i) const {
    long n = static_cast<long>(letters_.size());
    long k = ((i % n) + n) % n;
    return letters_[static_cast<std::size_t>(k)];
}

CyclicWord CyclicWord::rotated(long k) const {
    std::vector<Letter> out(letters_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(static_cast<long>(i) + k);
    return CyclicWord(std::move(out));
}

CyclicWord CyclicWord::canonical() const {
    const long n = static_cast<long>(letters_.size());
    std::vector<long> starts;
    for (long i = 0; i < n; ++i)
        if (is_vertical(letters_[static_cast<std::size_t>(i)])) starts.push_back(i);
    if (starts.empty()) {
        starts.resize(static_cast<std::size_t>(n));
        std::iota(starts.begin(), starts.end(), 0L);
    }
    auto less_rot = [&](long a, long b) {
        for (long k = 0; k < n; ++k) {
            Letter x = at(a + k), y = at(b + k);
            if (x != y) return x < y;
        }
        return false;
    };
    long best = *std::min_element(starts.begin(), starts.end(), less_rot);
    return rotated(best);
}

CyclicWord CyclicWord::vertical_first() const {
    for (long i = 0; i < static_cast<long>(letters_.size()); ++i)
        if (is_vertical(at(i))) return rotated(i);
    return *this;
}

std::string CyclicWord::ascii() const {
    std::string s;
    for (Letter l : letters_) s.push_back(to_ascii(l));
    return s;
}

std::string CyclicWord::unicode() const {
    std::string s;
    for (Letter l : letters_) s += to_unicode(l);
    return s;
}

bool CyclicWord::operator==(const CyclicWord& o) const {
    if (size() != o.size()) return false;
    return canonical().letters_ == o.canonical().letters_;
}

char sector_code(SectorType t) {
    switch (t) {
        case SectorType::Hyperbolic: return 'H';
        case SectorType::Elliptic: return 'E';
        case SectorType::Indifferent: return 'I';
    }
    return '?';
}

std::string to_string(SectorType t) {
    switch (t) {
        case SectorType::Hyperbolic: return "hyperbolic";
        case SectorType::Elliptic: return "elliptic";
        case SectorType::Indifferent: return "indifferent";
    }
    return "?";
}

std::string to_string(Limit l) { return l == Limit::Zero ? "0" : "inf"; }

std::string to_string(PetalKind k) {
    switch (k) {
        case PetalKind::AttractiveAtZero: return "attractive at 0";
        case PetalKind::RepulsiveAtZero: return "repulsive at 0";
        case PetalKind::RepulsiveAtInfinity: return "repulsive at infinity";
        case PetalKind::AttractiveAtInfinity: return "attractive at infinity";
    }
    return "?";
}

bool is_allowed(const CyclicWord& w) {
    for (long i = 0; i < static_cast<long>(w.size()); ++i)
        if (is_vertical(w.at(i)) == is_vertical(w.at(i + 1))) return false;
    return true;
}

Quarter ip_pair(Letter a, Letter b) {
    if (is_vertical(a) == is_vertical(b))
        throw std::invalid_argument(std::string("ip_pair needs one vertical and one horizontal letter, got ") +
                                    to_ascii(a) + to_ascii(b));
    // +1/4: (D R) (R U) (U L) (L D)
    bool plus = (a == Letter::Down && b == Letter::Right) || (a == Letter::Right && b == Letter::Up) ||
                (a == Letter::Up && b == Letter::Left) || (a == Letter::Left && b == Letter::Down);
    return Quarter::from_quarters(plus ? 1 : -1);
}

Quarter ip_path(std::span<const Letter> m) {
    if (m.size() < 2) throw std::invalid_argument("ip_path needs at least two letters");
    Quarter sum;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        if (is_vertical(m[i]) == is_vertical(m[i + 1]))
            throw std::invalid_argument("ip_path: letters " + std::to_string(i) + " and " +
                                        std::to_string(i + 1) + " do not alternate");
        sum += ip_pair(m[i], m[i + 1]);
    }
    return sum;
}

static void require_allowed(const CyclicWord& w, const char* who) {
    if (!is_allowed(w)) throw std::invalid_argument(std::string(who) + ": word " + w.ascii() + " is not allowed");
}

Quarter ip_cyclic(const CyclicWord& w) {
    require_allowed(w, "ip_cyclic");
    Quarter sum;
    for (long i = 0; i < static_cast<long>(w.size()); ++i) sum += ip_pair(w.at(i), w.at(i + 1));
    return sum;
}

long symbolic_index(const CyclicWord& w) {
    Quarter q = ip_cyclic(w) + Quarter::from_integer(1);
    if (!q.is_integer()) throw std::logic_error("symbolic index of an allowed word must be an integer");
    return q.to_integer();
}

Limit alpha_of(Letter v) {
    if (!is_vertical(v)) throw std::invalid_argument("alpha_of needs a vertical letter");
    return v == Letter::Down ? Limit::Zero : Limit::Infinity;
}

Limit omega_of(Letter v) {
    if (!is_vertical(v)) throw std::invalid_argument("omega_of needs a vertical letter");
    return v == Letter::Up ? Limit::Zero : Limit::Infinity;
}

static void require_window(const Window& m) {
    if (!is_vertical(m[0]) || !is_horizontal(m[1]) || !is_vertical(m[2]))
        throw std::invalid_argument(std::string("expected a vertical-horizontal-vertical word, got ") +
                                    to_ascii(m[0]) + to_ascii(m[1]) + to_ascii(m[2]));
}

AlphaOmega alpha_omega(const Window& m) {
    require_window(m);
    if (m[1] == Letter::Right) return {alpha_of(m[0]), omega_of(m[2])};
    return {alpha_of(m[2]), omega_of(m[0])};
}

std::vector<Window> sector_windows(const CyclicWord& w) {
    require_allowed(w, "sector_windows");
    long p = is_vertical(w.at(0)) ? 0 : 1;
    std::vector<Window> out;
    for (long k = 0; k < static_cast<long>(w.d()); ++k)
        out.push_back({w.at(p + 2 * k), w.at(p + 2 * k + 1), w.at(p + 2 * k + 2)});
    return out;
}

SectorType sector_type(const Window& m) {
    require_window(m);
    long q = ip_path(m).quarters();
    if (q < 0) return SectorType::Hyperbolic;
    if (q > 0) return SectorType::Elliptic;
    return SectorType::Indifferent;
}

std::vector<SectorType> sector_types(const CyclicWord& w) {
    std::vector<SectorType> out;
    for (const Window& m : sector_windows(w)) out.push_back(sector_type(m));
    return out;
}

std::vector<Petal> detect_petals(const CyclicWord& w) {
    require_allowed(w, "detect_petals");
    std::vector<Petal> out;
    for (long i = 0; i < static_cast<long>(w.size()); ++i) {
        Letter a = w.at(i), b = w.at(i + 1), c = w.at(i + 2);
        if (!is_horizontal(a) || a == c) continue;
        std::size_t pos = static_cast<std::size_t>(i);
        if (a == Letter::Right && b == Letter::Up) out.push_back({pos, PetalKind::AttractiveAtZero});
        else if (a == Letter::Left && b == Letter::Down) out.push_back({pos, PetalKind::RepulsiveAtZero});
        else if (a == Letter::Right && b == Letter::Down) out.push_back({pos, PetalKind::RepulsiveAtInfinity});
        else if (a == Letter::Left && b == Letter::Up) out.push_back({pos, PetalKind::AttractiveAtInfinity});
    }
    return out;
}

bool has_forbidden_pair(const CyclicWord& w) {
    for (long i = 0; i < static_cast<long>(w.size()); ++i) {
        Letter a = w.at(i), b = w.at(i + 1);
        if ((a == Letter::Up && b == Letter::Left) || (a == Letter::Right && b == Letter::Up) ||
            (a == Letter::Down && b == Letter::Right) || (a == Letter::Left && b == Letter::Down))
            return true;
    }
    return false;
}

bool is_conservative_word(const CyclicWord& w) {
    require_allowed(w, "is_conservative_word");
    // period-4 pattern up, right, down, left
    auto next = [](Letter l) { return static_cast<Letter>((static_cast<int>(l) + 1) % 4); };
    if (w.size() % 4 != 0) return false;
    for (long i = 0; i < static_cast<long>(w.size()); ++i)
        if (w.at(i + 1) != next(w.at(i))) return false;
    return true;
}

long module_lower_bound(long index) { return 2 * (index >= 1 ? index - 1 : 1 - index); }

CyclicWord inverse_word(const CyclicWord& w) {
    std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
    for (Letter& l : out) l = flipped(l);
    return CyclicWord(std::move(out));
}

std::vector<CyclicWord> enumerate_allowed_raw(std::size_t d) {
    if (d == 0) throw std::invalid_argument("enumerate_allowed needs d >= 1");
    if (d > 12) throw std::invalid_argument("enumerate_allowed: d too large");
    std::vector<CyclicWord> out;
    const std::size_t n = std::size_t{1} << d;
    out.reserve(n * n);
    for (std::size_t vm = 0; vm < n; ++vm) {
        for (std::size_t hm = 0; hm < n; ++hm) {
            std::vector<Letter> l(2 * d);
            for (std::size_t k = 0; k < d; ++k) {
                l[2 * k] = (vm >> k) & 1 ? Letter::Down : Letter::Up;
                l[2 * k + 1] = (hm >> k) & 1 ? Letter::Left : Letter::Right;
            }
            out.emplace_back(std::move(l));
        }
    }
    return out;
}

std::vector<CyclicWord> enumerate_allowed(std::size_t d) {
    std::set<std::string> seen;
    std::vector<CyclicWord> out;
    for (const CyclicWord& w : enumerate_allowed_raw(d)) {
        CyclicWord c = w.canonical();
        if (seen.insert(c.ascii()).second) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const CyclicWord& a, const CyclicWord& b) {
        return a.letters() < b.letters();
    });
    return out;
}

}  // namespace qturn
