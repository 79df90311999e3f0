#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ddgeo/errors.hpp"
#include "ddgeo/rational.hpp"
#include "ddgeo/rng.hpp"

namespace ddgeo {

// A set whose pairwise sums a_i + a_j (i <= j) are all distinct.
template <class T>
struct SidonCertificate {
    std::vector<T> subset;
    bool checked = false;
    std::string engine;
};

namespace detail {

template <class T>
void require_distinct(const std::vector<T>& a) {
    std::vector<T> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1] == sorted[i]) throw DuplicateElement("input elements must be distinct");
}

}  // namespace detail

template <class T>
bool is_sidon(const std::vector<T>& a) {
    detail::require_distinct(a);
    std::vector<T> sums;
    sums.reserve(a.size() * (a.size() + 1) / 2);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) sums.push_back(a[i] + a[j]);
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < sums.size(); ++i)
        if (sums[i - 1] == sums[i]) return false;
    return true;
}

namespace detail {

// Greedy scan over a caller-chosen order: keep an element iff the kept set
// stays Sidon, tracked through an incremental sum set.
template <class T>
std::vector<T> greedy_scan(const std::vector<T>& elems, const std::vector<std::size_t>& order) {
    std::vector<T> kept;
    std::set<T> sums;
    for (std::size_t oi : order) {
        const T& cand = elems[oi];
        bool ok = sums.find(cand + cand) == sums.end();
        for (std::size_t k = 0; ok && k < kept.size(); ++k)
            ok = sums.find(cand + kept[k]) == sums.end();
        if (!ok) continue;
        for (const T& k : kept) sums.insert(cand + k);
        sums.insert(cand + cand);
        kept.push_back(cand);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

inline std::size_t cube_root_floor(std::size_t n) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace detail

template <class T>
SidonCertificate<T> greedy_sidon(std::vector<T> a) {
    detail::require_distinct(a);
    std::sort(a.begin(), a.end());
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    SidonCertificate<T> cert;
    cert.subset = detail::greedy_scan(a, order);
    cert.checked = is_sidon(cert.subset);
    cert.engine = "greedy";
    if (!cert.checked) throw Error("greedy scan produced a non-Sidon set");
    if (cert.subset.size() < detail::cube_root_floor(a.size()))
        throw Error("greedy scan fell below the cube-root size guarantee");
    return cert;
}

// --- Singer perfect difference sets -----------------------------------------

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Elements of GF(p^3) as cubic-remainder polynomials c0 + c1 x + c2 x^2.
struct GfCubic {
    std::uint64_t p;
    // x^3 = -(f2 x^2 + f1 x + f0) for the chosen irreducible cubic.
    std::uint64_t f0, f1, f2;

    using Elem = std::array<std::uint64_t, 3>;

    Elem mul(const Elem& a, const Elem& b) const {
        std::uint64_t prod[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        for (int d = 4; d >= 3; --d) {
            const std::uint64_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            prod[d - 1] = (prod[d - 1] + c * (p - f2 % p)) % p;
            prod[d - 2] = (prod[d - 2] + c * (p - f1 % p)) % p;
            prod[d - 3] = (prod[d - 3] + c * (p - f0 % p)) % p;
        }
        return Elem{prod[0], prod[1], prod[2]};
    }

    Elem pow(Elem base, std::uint64_t e) const {
        Elem acc{1, 0, 0};
        while (e != 0) {
            if (e & 1u) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1u;
        }
        return acc;
    }
};

inline bool cubic_has_root(std::uint64_t p, std::uint64_t f0, std::uint64_t f1,
                           std::uint64_t f2) {
    for (std::uint64_t r = 0; r < p; ++r) {
        const std::uint64_t v = (((r + f2) % p * r + f1) % p * r + f0) % p;
        if (v == 0) return true;
    }
    return false;
}

inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

// Perfect-difference-set construction in PG(2, p): the exponents i in one
// period p^2 + p + 1 whose power theta^i of a primitive element of GF(p^3)
// lies in the plane spanned by {1, theta}. Yields p + 1 integers in
// {1, ..., p^2 + p + 1} with all pairwise sums distinct.
inline SidonCertificate<BigInt> singer_sidon(std::uint64_t p) {
    if (p > 10000) throw SizeGuard("singer construction is limited to p <= 10^4");
    if (!detail::is_prime_u64(p)) throw NotPrime(std::to_string(p) + " is not prime");
    const std::uint64_t period = p * p + p + 1;
    const std::uint64_t group_order = p * p * p - 1;
    const auto factors = detail::prime_factors_u64(group_order);

    for (std::uint64_t f2 = 0; f2 < p; ++f2) {
        for (std::uint64_t f1 = 0; f1 < p; ++f1) {
            for (std::uint64_t f0 = 1; f0 < p; ++f0) {
                if (detail::cubic_has_root(p, f0, f1, f2)) continue;
                detail::GfCubic field{p, f0, f1, f2};
                const detail::GfCubic::Elem theta{0, 1, 0};
                bool primitive = true;
                for (std::uint64_t q : factors) {
                    const auto power = field.pow(theta, group_order / q);
                    primitive = primitive && !(power[0] == 1 && power[1] == 0 && power[2] == 0);
                }
                if (!primitive) continue;

                std::vector<BigInt> marks;
                detail::GfCubic::Elem cur{1, 0, 0};
                for (std::uint64_t i = 0; i < period; ++i) {
                    if (cur[2] == 0) marks.push_back(BigInt(i + 1));
                    cur = field.mul(cur, theta);
                }
                if (marks.size() != p + 1) continue;  // defensive; primitive theta suffices
                SidonCertificate<BigInt> cert;
                cert.subset = std::move(marks);
                cert.checked = is_sidon(cert.subset);
                cert.engine = "singer";
                if (!cert.checked) throw Error("singer construction failed certification");
                return cert;
            }
        }
    }
    throw Error("no primitive cubic found");  // unreachable for prime p
}

// --- Quantization of reals to integer keys ----------------------------------

// Realization of the interval-pigeonhole reduction: q is twice the minimum
// pairwise gap, so every quarter interval [kq/4, (k+1)q/4) holds at most one
// point; the largest residue class survives with distinct integer keys and
// remainders below q/4 after the shift x0.
template <class S>
struct SidonReduction {
    S q;
    S x0;
    std::vector<S> survivors;
    std::vector<BigInt> keys;     // aligned with survivors
    std::vector<S> remainders;    // aligned with survivors; |r| < q/4
    int residue_class = 0;
};

namespace detail {

inline BigInt floor_div_scalar(const Rational& x, const Rational& q) { return (x / q).floor(); }

inline BigInt floor_div_scalar(double x, double q) {
    const double f = std::floor(x / q);
    if (!(std::abs(f) < 9.0e18)) throw InvalidScalar("quantization key out of integer range");
    return BigInt(static_cast<long long>(f));
}

template <class S>
S scalar_from_bigint(const BigInt& k) {
    if constexpr (std::is_same_v<S, Rational>) {
        return Rational(k);
    } else {
        return static_cast<double>(k.convert_to<long long>());
    }
}

}  // namespace detail

template <class S>
SidonReduction<S> quantize_reduce(const std::vector<S>& input) {
    if (input.size() < 2) throw TooSmall("quantize_reduce needs at least two elements");
    detail::require_distinct(input);
    for (const S& x : input)
        if (!(S(0) < x)) throw InvalidScalar("quantize_reduce requires positive inputs");

    std::vector<S> sorted = input;
    std::sort(sorted.begin(), sorted.end());
    S min_gap = sorted[1] - sorted[0];
    for (std::size_t i = 2; i < sorted.size(); ++i)
        min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);

    const S q = min_gap + min_gap;
    const S quarter = q / S(4);

    // Residue class i = floor(4 r / q) of each point's remainder r in [0, q).
    std::vector<std::vector<S>> classes(4);
    for (const S& x : sorted) {
        const BigInt k = detail::floor_div_scalar(x, q);
        const S r = x - detail::scalar_from_bigint<S>(k) * q;
        const BigInt cls_big = detail::floor_div_scalar(r, quarter);
        int cls = static_cast<int>(cls_big.convert_to<long long>());
        cls = std::clamp(cls, 0, 3);
        classes[cls].push_back(x);
    }
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (classes[i].size() > classes[best].size()) best = i;

    SidonReduction<S> red;
    red.q = q;
    red.residue_class = best;
    red.x0 = S(4 - best) * quarter;
    for (const S& x : classes[best]) {
        const S shifted = x + red.x0;
        const BigInt k = detail::floor_div_scalar(shifted, q);
        const S r = shifted - detail::scalar_from_bigint<S>(k) * q;
        red.survivors.push_back(x);
        red.keys.push_back(k);
        red.remainders.push_back(r);
    }
    // Postconditions of the construction.
    if (4 * red.survivors.size() < input.size())
        throw Error("quantize_reduce lost more than three quarters of the input");
    std::set<BigInt> distinct_keys(red.keys.begin(), red.keys.end());
    if (distinct_keys.size() != red.keys.size())
        throw Error("quantize_reduce produced colliding keys");
    for (const S& r : red.remainders)
        if (!(r < quarter && S(0) - quarter < r))
            throw Error("quantize_reduce remainder escaped (-q/4, q/4)");
    return red;
}

// --- Maximum Sidon subsets ---------------------------------------------------

namespace detail {

// Include-first depth-first search with size pruning; with strict
// improvement this lands on the lexicographically smallest maximum subset.
template <class T>
class MaxSidonSearch {
  public:
    explicit MaxSidonSearch(std::vector<T> sorted_elems) : elems_(std::move(sorted_elems)) {}

    std::vector<T> run() {
        kept_.clear();
        best_.clear();
        dfs(0);
        return best_;
    }

  private:
    void dfs(std::size_t i) {
        if (kept_.size() + (elems_.size() - i) <= best_.size()) return;
        if (i == elems_.size()) {
            if (kept_.size() > best_.size()) best_ = kept_;
            return;
        }
        const T& cand = elems_[i];
        bool ok = sums_.find(cand + cand) == sums_.end();
        for (std::size_t k = 0; ok && k < kept_.size(); ++k)
            ok = sums_.find(cand + kept_[k]) == sums_.end();
        if (ok) {
            std::vector<T> added;
            added.reserve(kept_.size() + 1);
            for (const T& k : kept_) added.push_back(cand + k);
            added.push_back(cand + cand);
            for (const T& s : added) sums_.insert(s);
            kept_.push_back(cand);
            dfs(i + 1);
            kept_.pop_back();
            for (const T& s : added) sums_.erase(s);
        }
        dfs(i + 1);
    }

    std::vector<T> elems_;
    std::vector<T> kept_;
    std::vector<T> best_;
    std::set<T> sums_;
};

}  // namespace detail

template <class T>
SidonCertificate<T> max_sidon_oracle(std::vector<T> a) {
    if (a.size() > 24) throw SizeGuard("exhaustive Sidon oracle is limited to 24 elements");
    detail::require_distinct(a);
    std::sort(a.begin(), a.end());
    detail::MaxSidonSearch<T> search(std::move(a));
    SidonCertificate<T> cert;
    cert.subset = search.run();
    cert.checked = is_sidon(cert.subset);
    cert.engine = "exact-bb";
    if (!cert.checked) throw Error("exhaustive search produced a non-Sidon set");
    return cert;
}

inline constexpr std::size_t kExactSidonThreshold = 28;

// Exact search below the threshold, otherwise the best greedy scan over 32
// seeded random orderings.
inline SidonCertificate<BigInt> integer_sidon_subset(
    std::vector<BigInt> keys, std::size_t exact_threshold = kExactSidonThreshold) {
    detail::require_distinct(keys);
    std::sort(keys.begin(), keys.end());
    SidonCertificate<BigInt> cert;
    if (keys.size() <= exact_threshold) {
        detail::MaxSidonSearch<BigInt> search(keys);
        cert.subset = search.run();
        cert.engine = "exact-bb";
    } else {
        Rng rng(0x5ed0bb5eedULL);
        std::vector<std::size_t> order(keys.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<BigInt> best;
        for (int restart = 0; restart < 32; ++restart) {
            Rng r = rng.derive(static_cast<std::uint64_t>(restart));
            for (std::size_t i = order.size(); i-- > 1;)
                std::swap(order[i], order[r.below(i + 1)]);
            std::vector<BigInt> got = detail::greedy_scan(keys, order);
            if (got.size() > best.size()) best = std::move(got);
        }
        cert.subset = std::move(best);
        cert.engine = "greedy32";
    }
    cert.checked = is_sidon(cert.subset);
    if (!cert.checked) throw Error("integer Sidon engine produced a non-Sidon set");
    return cert;
}

// --- The real-number pipeline ------------------------------------------------

// quantize_reduce -> integer engine on the keys -> map the chosen keys back
// to their originating reals. The interval-pigeonhole lemma guarantees the
// final certification passes; it is still executed.
template <class S>
SidonCertificate<S> real_sidon_subset(const std::vector<S>& input,
                                      std::size_t exact_threshold = kExactSidonThreshold) {
    if (input.size() < 2) throw TooSmall("real Sidon pipeline needs at least two elements");
    detail::require_distinct(input);

    // A set that is already Sidon is its own maximal Sidon subset; the
    // quantization would still drop the minimal-gap pair into different
    // residue classes, so check before reducing.
    if (is_sidon(input)) {
        SidonCertificate<S> whole;
        whole.subset = input;
        std::sort(whole.subset.begin(), whole.subset.end());
        whole.checked = true;
        whole.engine = "direct";
        return whole;
    }

    // Sidon-ness is shift invariant; move everything strictly positive.
    // Originals are recovered by lookup, not arithmetic, so the floating
    // backend returns input values bit for bit.
    std::vector<S> shifted = input;
    std::map<S, S> back;
    S lo = *std::min_element(shifted.begin(), shifted.end());
    if (!(S(0) < lo)) {
        const S shift = S(1) - lo;
        for (S& x : shifted) x = x + shift;
    }
    for (std::size_t i = 0; i < input.size(); ++i) back[shifted[i]] = input[i];
    if (back.size() != input.size())
        throw DuplicateElement("positivity shift collapsed two elements");

    const SidonReduction<S> red = quantize_reduce(shifted);
    SidonCertificate<BigInt> chosen = integer_sidon_subset(red.keys, exact_threshold);

    std::set<BigInt> selected(chosen.subset.begin(), chosen.subset.end());
    std::vector<S> out;
    for (std::size_t i = 0; i < red.survivors.size(); ++i)
        if (selected.count(red.keys[i])) out.push_back(back.at(red.survivors[i]));
    std::sort(out.begin(), out.end());

    SidonCertificate<S> cert;
    cert.subset = std::move(out);
    cert.checked = is_sidon(cert.subset);
    cert.engine = "pipeline:" + chosen.engine;
    if (!cert.checked) {
        // Floating-point rounding of sums can in principle defeat the exact
        // lifting argument; fall back to a certified greedy subset.
        cert = greedy_sidon(cert.subset);
        cert.engine = "pipeline:greedy-repair";
    }
    return cert;
}

}  // namespace ddgeo
