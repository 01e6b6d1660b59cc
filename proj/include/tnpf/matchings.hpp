#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "tnpf/rational.hpp"
#include "tnpf/ring.hpp"

namespace tnpf {

// One element of a labelled multiset: which insertion point it belongs to,
// which boson direction, and its mode label. Elements with identical
// (block, direction, label) are still distinct; uid tells them apart.
struct LabelledElement {
    int block;      // insertion index, 1-based
    int direction;  // boson direction, 1-based
    long label;     // mode label k, from a[-k]
    int uid;        // unique within a LabelledSet
};

struct LabelledSet {
    std::vector<LabelledElement> elements;

    std::size_t size() const { return elements.size(); }
    LabelledSet filter_direction(int r) const {
        LabelledSet s;
        for (const auto& e : elements)
            if (e.direction == r) s.elements.push_back(e);
        return s;
    }
};

// An involution of the uid set: 2-cycles plus fixed points, covering the set
// exactly once.
struct Involution {
    std::vector<std::pair<int, int>> pairs;  // indices into the element list
    std::vector<int> fixed;
};

// A complete matching remembered only by its edge labels, with multiplicity.
struct Matching {
    // key: unordered label pair (lo, hi); value: multiplicity m(E)
    std::map<std::pair<long, long>, int> edges;

    static Matching from_involution(const LabelledSet& s, const Involution& inv);
};

// |Aut(mu)| = prod_E m(E)! |Aut(E)|^{m(E)} with |Aut(E)| = 2 exactly when the
// edge's two labels are equal.
Rational aut_order(const Matching& m);

// Deterministic enumeration (smallest unassigned element first, paired with
// each larger element in order, then fixed) of all involutions, or only the
// fixed-point-free ones. Throws size_error beyond the cap.
void enumerate_involutions(const LabelledSet& s, std::size_t cap,
                           const std::function<void(const Involution&)>& visit);
void enumerate_fpf(const LabelledSet& s, std::size_t cap,
                   const std::function<void(const Involution&)>& visit);

std::uint64_t count_involutions(const LabelledSet& s, std::size_t cap);
std::uint64_t count_fpf(const LabelledSet& s, std::size_t cap);

constexpr std::size_t kDefaultInvolutionCap = 12;
constexpr std::size_t kHardInvolutionCap = 16;

}  // namespace tnpf
