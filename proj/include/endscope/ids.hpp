#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace endscope {

// Vertex of an eventually periodic graph: either a core vertex or a
// tail vertex Tail(t,k,i) = copy k of strand i in tail t.
struct VertexId {
    enum class Kind : uint8_t { Core, Tail };

    Kind kind = Kind::Core;
    int32_t core = 0;    // valid when kind == Core
    int32_t tail = 0;    // valid when kind == Tail
    int64_t copy = 0;    //   copy index k >= 0
    int32_t strand = 0;  //   strand index i in [0, period)

    static VertexId Core_(int32_t c) {
        VertexId v;
        v.kind = Kind::Core;
        v.core = c;
        return v;
    }
    static VertexId Tail_(int32_t t, int64_t k, int32_t i) {
        VertexId v;
        v.kind = Kind::Tail;
        v.tail = t;
        v.copy = k;
        v.strand = i;
        return v;
    }

    bool is_core() const { return kind == Kind::Core; }
    bool is_tail() const { return kind == Kind::Tail; }

    friend bool operator==(const VertexId& a, const VertexId& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::Core) return a.core == b.core;
        return a.tail == b.tail && a.copy == b.copy && a.strand == b.strand;
    }
    friend bool operator!=(const VertexId& a, const VertexId& b) { return !(a == b); }

    // Canonical order: cores first by index, then tails by (t, k, i).
    friend bool operator<(const VertexId& a, const VertexId& b) {
        if (a.kind != b.kind) return a.kind == Kind::Core;
        if (a.kind == Kind::Core) return a.core < b.core;
        if (a.tail != b.tail) return a.tail < b.tail;
        if (a.copy != b.copy) return a.copy < b.copy;
        return a.strand < b.strand;
    }
    friend bool operator<=(const VertexId& a, const VertexId& b) { return !(b < a); }
    friend bool operator>(const VertexId& a, const VertexId& b) { return b < a; }
    friend bool operator>=(const VertexId& a, const VertexId& b) { return !(a < b); }

    // "c3" for cores, "0.5.1" (tail.copy.strand) for tail vertices.
    std::string to_string() const {
        if (is_core()) return "c" + std::to_string(core);
        return std::to_string(tail) + "." + std::to_string(copy) + "." + std::to_string(strand);
    }
};

struct VertexIdHash {
    size_t operator()(const VertexId& v) const {
        size_t h = v.is_core() ? 0x9e3779b97f4a7c15ull : 0xc2b2ae3d27d4eb4full;
        auto mix = [&h](uint64_t x) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        if (v.is_core()) {
            mix(static_cast<uint64_t>(v.core));
        } else {
            mix(static_cast<uint64_t>(v.tail));
            mix(static_cast<uint64_t>(v.copy));
            mix(static_cast<uint64_t>(v.strand));
        }
        return h;
    }
};

}  // namespace endscope
