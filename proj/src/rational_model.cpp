#include "qsl/rational_model.hpp"

#include <array>

#include "qsl/bigrat.hpp"

namespace qsl {

namespace {

constexpr std::int64_t component_cap = 1000000;   // desk-scale magnitude guard
constexpr std::uint32_t pow_half_term_cap = 48;   // keeps terms in 64 bits
constexpr std::uint32_t generic_term_cap = 100000;

constexpr std::array<std::uint32_t, 9> sample_indices = {1, 2, 3, 5, 8, 13, 21, 34, 40};

// Largest f with f <= d/f, i.e. the square part of d, by trial division.
std::int64_t square_free_part(std::int64_t d, std::int64_t& square_root_factor) {
    square_root_factor = 1;
    std::int64_t rest = d;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            square_root_factor *= p;
        }
    }
    return rest;
}

std::int64_t narrow_bigint(const BigInt& v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw resource_error(std::string(what) + " exceeds the 64-bit range");
    return static_cast<std::int64_t>(v);
}

// floor((A + B*sqrt(d)) / C) with C > 0, exact.
BigInt floor_linear_sqrt(const BigInt& A, const BigInt& B, const BigInt& C,
                         std::int64_t d) {
    BigInt root = isqrt(B * B * d);
    BigInt approx_s = B >= 0 ? root : -root - 1;
    BigInt f = (A + approx_s) / C;
    // Integer division truncates toward zero; settle on the true floor with
    // exact comparisons of f*C - A against B*sqrt(d).
    auto le_sqrt = [&](const BigInt& m) {
        return cmp_linear_sqrt(BigRat(m, 1), BigRat(B, 1), d) <= 0;
    };
    while (!le_sqrt(f * C - A))
        --f;
    while (le_sqrt((f + 1) * C - A))
        ++f;
    return f;
}

} // namespace

LimitDescriptor LimitDescriptor::canonical() const {
    LimitDescriptor out = *this;
    if (out.d > 1) {
        std::int64_t factor = 1;
        out.d = square_free_part(out.d, factor);
        if (factor != 1)
            out.r = out.r * Rational(factor);
    }
    return out;
}

std::string LimitDescriptor::to_string() const {
    return q.to_string() + " + " + r.to_string() + "*sqrt(" + std::to_string(d) + ")";
}

const char* tail_shape_name(TailShape t) {
    switch (t) {
    case TailShape::inv_n: return "inv_n";
    case TailShape::inv_n2: return "inv_n2";
    case TailShape::alt_inv_n: return "alt_inv_n";
    case TailShape::pow_half: return "pow_half";
    }
    return "?";
}

std::optional<TailShape> tail_shape_from_name(std::string_view name) {
    for (TailShape t : {TailShape::inv_n, TailShape::inv_n2, TailShape::alt_inv_n,
                        TailShape::pow_half})
        if (name == tail_shape_name(t))
            return t;
    return std::nullopt;
}

Rational MSequence::tail_bound(std::uint32_t n) const {
    if (n == 0)
        throw validation_error("sequence terms start at n = 1");
    switch (tail) {
    case TailShape::inv_n:
    case TailShape::alt_inv_n:
        return Rational(1, static_cast<std::int64_t>(n));
    case TailShape::inv_n2:
        return Rational(1, static_cast<std::int64_t>(n) * n);
    case TailShape::pow_half:
        if (n > pow_half_term_cap)
            throw resource_error("pow_half term index " + std::to_string(n) +
                                 " beyond the supported range");
        return Rational(1, std::int64_t{1} << n);
    }
    return Rational(1);
}

Rational MSequence::term(std::uint32_t n) const {
    if (n == 0 || n > generic_term_cap)
        throw validation_error("sequence term index out of range");
    Rational bound = tail_bound(n);
    Rational eps = bound / Rational(2);

    // Smallest power of two K with 1/K <= eps.
    BigInt K = 1;
    BigInt inv_eps_num = eps.den();
    BigInt inv_eps_den = eps.num(); // eps > 0
    while (K * inv_eps_den < inv_eps_num)
        K *= 2;

    LimitDescriptor c = limit.canonical();
    // limit*K = (A + B*sqrt(d)) / C.
    BigInt A = BigInt(c.q.num()) * K * c.r.den();
    BigInt B = BigInt(c.r.num()) * K * c.q.den();
    BigInt C = BigInt(c.q.den()) * c.r.den();
    BigInt scaled = floor_linear_sqrt(A, B, C, c.d);

    Rational base(narrow_bigint(scaled, "sequence term numerator"),
                  narrow_bigint(K, "sequence term denominator"));
    bool negative_drift = tail == TailShape::alt_inv_n && n % 2 == 1;
    return negative_drift ? base - eps : base + eps;
}

bool seq_equiv(const MSequence& a, const MSequence& b) {
    return a.limit.canonical() == b.limit.canonical();
}

SequenceVerdict validate_sequence(const MSequence& s) {
    const LimitDescriptor& l = s.limit;
    if (l.d <= 1)
        return {false, "d must be an integer greater than 1"};
    std::int64_t factor = 1;
    if (square_free_part(l.d, factor) != l.d || factor != 1)
        return {false, "d = " + std::to_string(l.d) + " is not square-free"};
    if (l.r.is_zero())
        return {false, "r must be nonzero (the sequence would converge in Q)"};
    auto oversized = [](const Rational& v) {
        return v.num() > component_cap || v.num() < -component_cap ||
               v.den() > component_cap;
    };
    if (oversized(l.q) || oversized(l.r) || l.d > component_cap)
        return {false, "limit components exceed the desk-scale bound"};

    // Limit-approximation certificate: |a_n - (q + r*sqrt(d))| <= tail(n),
    // decided exactly through the scaled-root comparison.
    for (std::uint32_t n : sample_indices) {
        Rational a_n = s.term(n);
        Rational bound = s.tail_bound(n);
        BigRat lhs_low = BigRat(a_n - l.q) - BigRat(bound);
        BigRat lhs_high = BigRat(a_n - l.q) + BigRat(bound);
        BigRat coeff = BigRat(l.r);
        if (!(cmp_linear_sqrt(lhs_low, coeff, l.d) <= 0 &&
              cmp_linear_sqrt(lhs_high, coeff, l.d) >= 0))
            return {false, "term " + std::to_string(n) +
                               " strays beyond the tail bound"};
    }

    // Cauchy certificate on sampled prefixes.
    for (std::size_t i = 0; i < sample_indices.size(); ++i)
        for (std::size_t j = i + 1; j < sample_indices.size(); ++j) {
            std::uint32_t n = sample_indices[i];
            std::uint32_t m = sample_indices[j];
            Rational gap = (s.term(n) - s.term(m)).abs();
            if (Rational(2) * s.tail_bound(n) < gap)
                return {false, "terms " + std::to_string(n) + " and " +
                                   std::to_string(m) +
                                   " violate the Cauchy certificate"};
        }
    return {};
}

namespace {

// Certified enclosure of q + r*sqrt(d) using the denominator-1e9 bounds.
std::pair<BigRat, BigRat> limit_interval(const LimitDescriptor& l) {
    auto [root_lo, root_hi] = sqrt_interval(l.d);
    BigRat r(l.r);
    BigRat lo = BigRat(l.q) + r * root_lo;
    BigRat hi = BigRat(l.q) + r * root_hi;
    if (hi < lo)
        std::swap(lo, hi);
    return {lo, hi};
}

} // namespace

Universe build_universe(const RationalUniverseSpec& spec) {
    std::vector<LimitDescriptor> canon;
    for (std::size_t i = 0; i < spec.sequences.size(); ++i) {
        SequenceVerdict v = validate_sequence(spec.sequences[i]);
        if (!v.ok)
            throw validation_error("sequence " + std::to_string(i) + ": " +
                                   v.failed_clause);
        canon.push_back(spec.sequences[i].limit.canonical());
    }

    // Distinct limits must sit further apart than the stock tails can blur:
    // certified gap above 4e-6 or the spec is rejected as under-resolved.
    const BigRat resolution(BigInt(4), BigInt(1000000));
    for (std::size_t i = 0; i < canon.size(); ++i)
        for (std::size_t j = i + 1; j < canon.size(); ++j) {
            if (canon[i] == canon[j])
                continue;
            auto [lo_a, hi_a] = limit_interval(canon[i]);
            auto [lo_b, hi_b] = limit_interval(canon[j]);
            BigRat gap_low = lo_a < lo_b ? lo_b - hi_a : lo_a - hi_b;
            if (gap_low <= resolution)
                throw validation_error(
                    "resolution error: sequence limits " + canon[i].to_string() +
                    " and " + canon[j].to_string() +
                    " are closer than the 4/1000000 separation bound");
        }

    UniverseBuilder b;
    std::vector<EntityHandle> rational_atoms;
    std::vector<EntityHandle> sequence_atoms;
    std::vector<EntityHandle> qset_handles;
    for (std::size_t i = 0; i < spec.rationals.size(); ++i)
        rational_atoms.push_back(
            b.add_M_atom("r" + std::to_string(i), spec.rationals[i].to_string()));
    for (std::size_t i = 0; i < spec.sequences.size(); ++i)
        sequence_atoms.push_back(
            b.add_m_atom("s" + std::to_string(i), canon[i].to_string()));

    for (std::size_t i = 0; i < spec.qsets.size(); ++i) {
        const RationalSpecQSet& q = spec.qsets[i];
        std::vector<EntityHandle> members;
        for (auto [kind, index] : q.members) {
            switch (kind) {
            case 'r':
                if (index >= rational_atoms.size())
                    throw validation_error("qset " + std::to_string(i) +
                                           ": rational index " +
                                           std::to_string(index) + " out of range");
                members.push_back(rational_atoms[index]);
                break;
            case 's':
                if (index >= sequence_atoms.size())
                    throw validation_error("qset " + std::to_string(i) +
                                           ": sequence index " +
                                           std::to_string(index) + " out of range");
                members.push_back(sequence_atoms[index]);
                break;
            case 'q':
                if (index >= i)
                    throw validation_error("qset " + std::to_string(i) +
                                           ": forward qset reference " +
                                           std::to_string(index));
                members.push_back(qset_handles[index]);
                break;
            default:
                throw validation_error("qset " + std::to_string(i) +
                                       ": unknown member kind '" +
                                       std::string(1, kind) + "'");
            }
        }
        std::string id = q.id.empty() ? "q" + std::to_string(i) : q.id;
        qset_handles.push_back(b.add_qset(id, std::move(members), q.zfu));
    }
    return b.build();
}

} // namespace qsl
