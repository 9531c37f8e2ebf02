#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endscope {

// Ultimately periodic index set over the naturals.
//
// membership(k) = explicit_[k]               for k <  threshold_
//              = pattern_[(k-threshold_) % period_]  otherwise
//
// Instances are kept canonical (minimal period, then minimal threshold),
// so structural equality coincides with set equality.
class Upis {
  public:
    Upis() : threshold_(0), period_(1), pattern_(1, 0) {}

    static Upis none() { return Upis(); }
    static Upis all();
    static Upis singleton(int64_t k);
    static Upis from_elements(const std::vector<int64_t>& ks);
    static Upis at_least(int64_t k);                   // { j : j >= k }
    static Upis range(int64_t lo, int64_t hi);         // { j : lo <= j < hi }
    static Upis arithmetic(int64_t start, int64_t stride);  // { start + m*stride : m >= 0 }
    static Upis from_bits(int64_t threshold, int64_t period,
                          std::vector<char> explicit_bits, std::vector<char> pattern_bits);

    bool contains(int64_t k) const {
        if (k < 0) return false;
        if (k < threshold_) return explicit_[static_cast<size_t>(k)] != 0;
        return pattern_[static_cast<size_t>((k - threshold_) % period_)] != 0;
    }

    bool empty() const;
    bool is_finite() const;  // true iff the periodic pattern is all-zero
    bool is_all() const;

    int64_t threshold() const { return threshold_; }
    int64_t period() const { return period_; }
    const std::vector<char>& explicit_bits() const { return explicit_; }
    const std::vector<char>& pattern_bits() const { return pattern_; }

    Upis unite(const Upis& o) const;
    Upis intersect(const Upis& o) const;
    Upis difference(const Upis& o) const;
    Upis complement() const;

    friend Upis operator|(const Upis& a, const Upis& b) { return a.unite(b); }
    friend Upis operator&(const Upis& a, const Upis& b) { return a.intersect(b); }
    friend Upis operator-(const Upis& a, const Upis& b) { return a.difference(b); }

    bool operator==(const Upis& o) const {
        return threshold_ == o.threshold_ && period_ == o.period_ &&
               explicit_ == o.explicit_ && pattern_ == o.pattern_;
    }
    bool operator!=(const Upis& o) const { return !(*this == o); }

    // {k + d : k in S}; d >= 0.
    Upis shift_up(int64_t d) const;
    // {k - d : k in S, k >= d}.
    Upis shift_down(int64_t d) const;
    // {j : exists k in S with k >= j}. All of N if S is infinite.
    Upis downward_closure() const;
    // Preimage under k -> a + k*s, i.e. {m >= 0 : a + m*s in S}; s >= 1.
    Upis affine_preimage(int64_t a, int64_t s) const;
    // Image under k -> a + k*s, i.e. {a + k*s : k in S}; s >= 1.
    Upis affine_image(int64_t a, int64_t s) const;

    std::optional<int64_t> min() const;
    std::optional<int64_t> max_if_finite() const;
    // Number of members, if finite.
    std::optional<int64_t> size_if_finite() const;
    // n-th smallest member (0-based); nullopt if fewer members exist.
    std::optional<int64_t> nth(int64_t n) const;
    // All members < limit.
    std::vector<int64_t> elements_below(int64_t limit) const;
    // First n members; fewer if the set is smaller.
    std::vector<int64_t> first_n(int64_t n) const;

    bool intersects(const Upis& o) const { return !intersect(o).empty(); }
    bool infinitely_intersects(const Upis& o) const { return !intersect(o).is_finite(); }
    bool subset_of(const Upis& o) const { return difference(o).empty(); }

    std::string to_string() const;

  private:
    int64_t threshold_;
    int64_t period_;
    std::vector<char> explicit_;  // size threshold_
    std::vector<char> pattern_;   // size period_

    void canonicalize();
    static Upis combine(const Upis& a, const Upis& b, bool (*op)(bool, bool));
};

int64_t lcm64(int64_t a, int64_t b);

}  // namespace endscope
