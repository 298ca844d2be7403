#ifndef QSL_RATIONAL_MODEL_HPP
#define QSL_RATIONAL_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsl/rational.hpp"
#include "qsl/universe.hpp"

namespace qsl {

/// Symbolic description of the irrational limit q + r*sqrt(d). With d
/// square-free and greater than one and r nonzero, the limit is irrational,
/// so any sequence of rationals converging to it is a Cauchy sequence with
/// no limit in the rationals.
struct LimitDescriptor {
    Rational q;
    Rational r;
    std::int64_t d = 2;

    /// Pulls square factors of d into r (e.g. sqrt(8) -> 2*sqrt(2)).
    LimitDescriptor canonical() const;

    std::string to_string() const;
    friend bool operator==(const LimitDescriptor&, const LimitDescriptor&) = default;
};

enum class TailShape { inv_n, inv_n2, alt_inv_n, pow_half };
const char* tail_shape_name(TailShape t);
std::optional<TailShape> tail_shape_from_name(std::string_view name);

/// Nonconvergent Cauchy sequence of rationals, represented by its limit
/// descriptor plus a vanishing-tail shape that induces the term rule.
struct MSequence {
    LimitDescriptor limit;
    TailShape tail = TailShape::inv_n;

    /// |a_n - limit| <= tail_bound(n) for every n >= 1.
    Rational tail_bound(std::uint32_t n) const;

    /// n-th term: a dyadic approximation of the limit within half the tail
    /// bound, shifted by the shape's signed half-bound drift.
    Rational term(std::uint32_t n) const;
};

struct SequenceVerdict {
    bool ok = true;
    std::string failed_clause;
};

/// Confirms d square-free and > 1, r nonzero, desk-scale component bounds,
/// and the Cauchy and limit-approximation certificates on sampled prefixes.
SequenceVerdict validate_sequence(const MSequence& s);

struct RationalSpecQSet {
    std::string id;
    // Members refer to spec entries: kind 'r' (rational), 's' (sequence),
    // 'q' (earlier qset), each with a 0-based index.
    std::vector<std::pair<char, std::size_t>> members;
    std::optional<bool> zfu;
};

struct RationalUniverseSpec {
    std::vector<Rational> rationals;
    std::vector<MSequence> sequences;
    std::vector<RationalSpecQSet> qsets;
};

/// Difference of two symbolic sequences vanishes exactly when their
/// canonical limits coincide.
bool seq_equiv(const MSequence& a, const MSequence& b);

/// Universe with one M-atom per rational (species: the canonical rational)
/// and one m-atom per sequence (species: the canonical limit), so
/// indistinguishability realizes the vanishing-difference equivalence and
/// extensional equality the usual equality of rationals. Rejects specs
/// whose distinct limits are closer than the resolution bound 4e-6.
Universe build_universe(const RationalUniverseSpec& spec);

} // namespace qsl

#endif
