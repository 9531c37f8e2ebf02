#include "endscope/upis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace endscope {

int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

Upis Upis::all() {
    Upis u;
    u.pattern_[0] = 1;
    return u;
}

Upis Upis::singleton(int64_t k) {
    return from_elements({k});
}

Upis Upis::from_elements(const std::vector<int64_t>& ks) {
    int64_t hi = -1;
    for (int64_t k : ks) {
        if (k < 0) throw std::invalid_argument("Upis: negative index");
        hi = std::max(hi, k);
    }
    std::vector<char> bits(static_cast<size_t>(hi + 1), 0);
    for (int64_t k : ks) bits[static_cast<size_t>(k)] = 1;
    return from_bits(hi + 1, 1, std::move(bits), {0});
}

Upis Upis::at_least(int64_t k) {
    if (k < 0) k = 0;
    return from_bits(k, 1, std::vector<char>(static_cast<size_t>(k), 0), {1});
}

Upis Upis::range(int64_t lo, int64_t hi) {
    if (lo < 0) lo = 0;
    if (hi <= lo) return none();
    std::vector<char> bits(static_cast<size_t>(hi), 0);
    for (int64_t k = lo; k < hi; ++k) bits[static_cast<size_t>(k)] = 1;
    return from_bits(hi, 1, std::move(bits), {0});
}

Upis Upis::arithmetic(int64_t start, int64_t stride) {
    if (start < 0 || stride < 1) throw std::invalid_argument("Upis::arithmetic: bad parameters");
    std::vector<char> pat(static_cast<size_t>(stride), 0);
    pat[0] = 1;
    return from_bits(start, stride, std::vector<char>(static_cast<size_t>(start), 0), std::move(pat));
}

Upis Upis::from_bits(int64_t threshold, int64_t period,
                     std::vector<char> explicit_bits, std::vector<char> pattern_bits) {
    if (threshold < 0 || period < 1) throw std::invalid_argument("Upis: bad shape");
    if (static_cast<int64_t>(explicit_bits.size()) != threshold ||
        static_cast<int64_t>(pattern_bits.size()) != period)
        throw std::invalid_argument("Upis: bit vector size mismatch");
    Upis u;
    u.threshold_ = threshold;
    u.period_ = period;
    u.explicit_ = std::move(explicit_bits);
    u.pattern_ = std::move(pattern_bits);
    for (auto& b : u.explicit_) b = b ? 1 : 0;
    for (auto& b : u.pattern_) b = b ? 1 : 0;
    u.canonicalize();
    return u;
}

void Upis::canonicalize() {
    // Minimal period: smallest divisor d of period_ with rotation-invariance.
    for (int64_t d = 1; d < period_; ++d) {
        if (period_ % d != 0) continue;
        bool ok = true;
        for (int64_t m = 0; m < period_ && ok; ++m)
            if (pattern_[static_cast<size_t>(m)] !=
                pattern_[static_cast<size_t>((m + d) % period_)])
                ok = false;
        if (ok) {
            pattern_.resize(static_cast<size_t>(d));
            period_ = d;
            break;
        }
    }
    // Minimal threshold: absorb explicit bits that match the rotated pattern.
    while (threshold_ > 0) {
        char last = explicit_[static_cast<size_t>(threshold_ - 1)];
        char pat_last = pattern_[static_cast<size_t>(period_ - 1)];
        if (last != pat_last) break;
        // rotate pattern right by one so it starts at threshold_-1
        std::rotate(pattern_.rbegin(), pattern_.rbegin() + 1, pattern_.rend());
        explicit_.pop_back();
        --threshold_;
    }
}

bool Upis::empty() const {
    if (std::any_of(pattern_.begin(), pattern_.end(), [](char b) { return b != 0; })) return false;
    return !std::any_of(explicit_.begin(), explicit_.end(), [](char b) { return b != 0; });
}

bool Upis::is_finite() const {
    return !std::any_of(pattern_.begin(), pattern_.end(), [](char b) { return b != 0; });
}

bool Upis::is_all() const {
    return threshold_ == 0 && period_ == 1 && pattern_[0] == 1;
}

Upis Upis::combine(const Upis& a, const Upis& b, bool (*op)(bool, bool)) {
    int64_t t = std::max(a.threshold_, b.threshold_);
    int64_t p = lcm64(a.period_, b.period_);
    std::vector<char> expl(static_cast<size_t>(t), 0);
    for (int64_t k = 0; k < t; ++k)
        expl[static_cast<size_t>(k)] = op(a.contains(k), b.contains(k)) ? 1 : 0;
    std::vector<char> pat(static_cast<size_t>(p), 0);
    for (int64_t x = 0; x < p; ++x)
        pat[static_cast<size_t>(x)] = op(a.contains(t + x), b.contains(t + x)) ? 1 : 0;
    return from_bits(t, p, std::move(expl), std::move(pat));
}

Upis Upis::unite(const Upis& o) const {
    return combine(*this, o, [](bool x, bool y) { return x || y; });
}
Upis Upis::intersect(const Upis& o) const {
    return combine(*this, o, [](bool x, bool y) { return x && y; });
}
Upis Upis::difference(const Upis& o) const {
    return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

Upis Upis::complement() const {
    Upis u = *this;
    for (auto& b : u.explicit_) b = b ? 0 : 1;
    for (auto& b : u.pattern_) b = b ? 0 : 1;
    u.canonicalize();
    return u;
}

Upis Upis::shift_up(int64_t d) const {
    if (d < 0) throw std::invalid_argument("Upis::shift_up: negative shift");
    if (d == 0) return *this;
    std::vector<char> expl(static_cast<size_t>(threshold_ + d), 0);
    for (int64_t k = 0; k < threshold_; ++k)
        expl[static_cast<size_t>(k + d)] = explicit_[static_cast<size_t>(k)];
    return from_bits(threshold_ + d, period_, std::move(expl), pattern_);
}

Upis Upis::shift_down(int64_t d) const {
    if (d < 0) throw std::invalid_argument("Upis::shift_down: negative shift");
    if (d == 0) return *this;
    int64_t t = std::max<int64_t>(0, threshold_ - d);
    std::vector<char> expl(static_cast<size_t>(t), 0);
    for (int64_t k = 0; k < t; ++k) expl[static_cast<size_t>(k)] = contains(k + d) ? 1 : 0;
    // Align pattern so membership'(k) = membership(k + d) for k >= t.
    std::vector<char> pat(static_cast<size_t>(period_), 0);
    for (int64_t x = 0; x < period_; ++x)
        pat[static_cast<size_t>(x)] = contains(t + x + d) ? 1 : 0;
    return from_bits(t, period_, std::move(expl), std::move(pat));
}

Upis Upis::downward_closure() const {
    if (empty()) return none();
    if (!is_finite()) return all();
    return range(0, *max_if_finite() + 1);
}

Upis Upis::affine_preimage(int64_t a, int64_t s) const {
    if (a < 0 || s < 1) throw std::invalid_argument("Upis::affine_preimage: bad parameters");
    // {m : a + m*s in S} is ultimately periodic with period period_/gcd(s,period_)
    // once a + m*s clears the threshold.
    int64_t mt = 0;
    while (a + mt * s < threshold_) ++mt;
    int64_t p = period_ / std::gcd(s, period_);
    std::vector<char> expl(static_cast<size_t>(mt), 0);
    for (int64_t m = 0; m < mt; ++m) expl[static_cast<size_t>(m)] = contains(a + m * s) ? 1 : 0;
    std::vector<char> pat(static_cast<size_t>(p), 0);
    for (int64_t x = 0; x < p; ++x)
        pat[static_cast<size_t>(x)] = contains(a + (mt + x) * s) ? 1 : 0;
    return from_bits(mt, p, std::move(expl), std::move(pat));
}

Upis Upis::affine_image(int64_t a, int64_t s) const {
    if (a < 0 || s < 1) throw std::invalid_argument("Upis::affine_image: bad parameters");
    int64_t t = a + threshold_ * s;
    std::vector<char> expl(static_cast<size_t>(t), 0);
    for (int64_t k = 0; k < threshold_; ++k)
        if (explicit_[static_cast<size_t>(k)]) expl[static_cast<size_t>(a + k * s)] = 1;
    int64_t p = period_ * s;
    std::vector<char> pat(static_cast<size_t>(p), 0);
    for (int64_t x = 0; x < p; ++x)
        if (x % s == 0) pat[static_cast<size_t>(x)] = pattern_[static_cast<size_t>((x / s) % period_)];
    return from_bits(t, p, std::move(expl), std::move(pat));
}

std::optional<int64_t> Upis::min() const {
    for (int64_t k = 0; k < threshold_; ++k)
        if (explicit_[static_cast<size_t>(k)]) return k;
    for (int64_t x = 0; x < period_; ++x)
        if (pattern_[static_cast<size_t>(x)]) return threshold_ + x;
    return std::nullopt;
}

std::optional<int64_t> Upis::max_if_finite() const {
    if (!is_finite()) return std::nullopt;
    for (int64_t k = threshold_ - 1; k >= 0; --k)
        if (explicit_[static_cast<size_t>(k)]) return k;
    return std::nullopt;  // empty
}

std::optional<int64_t> Upis::size_if_finite() const {
    if (!is_finite()) return std::nullopt;
    int64_t n = 0;
    for (char b : explicit_) n += b ? 1 : 0;
    return n;
}

std::optional<int64_t> Upis::nth(int64_t n) const {
    if (n < 0) return std::nullopt;
    int64_t seen = 0;
    for (int64_t k = 0; k < threshold_; ++k)
        if (explicit_[static_cast<size_t>(k)] && seen++ == n) return k;
    int64_t per_cycle = 0;
    for (char b : pattern_) per_cycle += b ? 1 : 0;
    if (per_cycle == 0) return std::nullopt;
    int64_t want = n - seen;                 // members still needed, from the pattern
    int64_t cycles = want / per_cycle;
    int64_t rem = want % per_cycle;
    for (int64_t x = 0; x < period_; ++x)
        if (pattern_[static_cast<size_t>(x)] && rem-- == 0)
            return threshold_ + cycles * period_ + x;
    return std::nullopt;  // unreachable
}

std::vector<int64_t> Upis::elements_below(int64_t limit) const {
    std::vector<int64_t> out;
    for (int64_t k = 0; k < limit; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

std::vector<int64_t> Upis::first_n(int64_t n) const {
    std::vector<int64_t> out;
    for (int64_t i = 0; i < n; ++i) {
        auto v = nth(i);
        if (!v) break;
        out.push_back(*v);
    }
    return out;
}

std::string Upis::to_string() const {
    if (empty()) return "{}";
    std::string s = "{";
    bool first = true;
    for (int64_t k = 0; k < threshold_; ++k) {
        if (!explicit_[static_cast<size_t>(k)]) continue;
        if (!first) s += ",";
        s += std::to_string(k);
        first = false;
    }
    s += "}";
    if (!is_finite()) {
        s += "+(k>=" + std::to_string(threshold_) + ": ";
        for (char b : pattern_) s += b ? '1' : '0';
        s += ")";
    }
    return s;
}

}  // namespace endscope
