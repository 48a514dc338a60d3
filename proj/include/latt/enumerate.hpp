#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

#include "latt/errors.hpp"
#include "latt/int_types.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"

namespace latt {

namespace detail {

/// floor(sqrt(t) - c) for rational t >= 0: the largest integer x with
/// x + c <= sqrt(t). Exact; the float-free fixup loop runs O(1) steps.
inline Int floor_sqrt_minus(const Rat& t, const Rat& c) {
    Int x = isqrt(floor_rat(t)) - floor_rat(c) + 1;
    auto ok = [&](const Int& k) {
        Rat r = Rat(k) + c;
        return r <= 0 || r * r <= t;
    };
    while (!ok(x)) --x;
    return x;
}

/// Diagonal and unit upper-triangular data of Q(x) = sum d_i (x_i + sum_{j>i} u_ij x_j)^2.
struct SquareCompletion {
    std::vector<Rat> d;
    QMat u;
};

inline SquareCompletion square_completion(const IMat& gram) {
    const std::size_t n = gram.rows();
    QMat a = to_rational(gram);
    SquareCompletion sc{std::vector<Rat>(n), QMat::identity(n)};
    for (std::size_t i = 0; i < n; ++i) {
        sc.d[i] = a(i, i);
        if (!(sc.d[i] > 0)) throw domain_error("internal: completion pivot not positive");
        for (std::size_t j = i + 1; j < n; ++j) sc.u(i, j) = a(i, j) / sc.d[i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t m = k; m < n; ++m) a(k, m) -= sc.d[i] * sc.u(i, k) * sc.u(i, m);
    }
    return sc;
}

inline void fp_descend(const SquareCompletion& sc, std::size_t level, IVec& x, const Rat& rem,
                       std::vector<IVec>& out) {
    if (level == 0) {
        if (rem == 0) out.push_back(x);
        return;
    }
    const std::size_t i = level - 1;
    Rat c;
    for (std::size_t j = i + 1; j < x.size(); ++j)
        if (x[j] != 0) c += sc.u(i, j) * Rat(x[j]);
    Rat t = rem / sc.d[i];
    Int hi = floor_sqrt_minus(t, c);
    Int lo = -floor_sqrt_minus(t, -c);
    for (Int v = lo; v <= hi; ++v) {
        x[i] = v;
        Rat step = Rat(v) + c;
        fp_descend(sc, i, x, rem - sc.d[i] * step * step, out);
    }
    x[i] = 0;
}

} // namespace detail

/// All vectors of the given norm in a definite lattice, by Fincke-Pohst
/// enumeration over an exact rational square completion. The output is
/// duplicate-free, closed under negation, and sorted lexicographically;
/// the thread count never changes the result.
inline std::vector<IVec> enumerate_norm_vectors(const Lattice& l, const Int& target_norm,
                                                unsigned threads = 1) {
    const std::size_t n = l.rank();
    Signature sig = signature(l);
    if (sig.zero != 0 || (sig.positive != 0 && sig.negative != 0))
        throw domain_error("vector enumeration requires a definite lattice");
    if (n == 0) {
        if (target_norm == 0) return {IVec{}};
        return {};
    }
    const bool negated = sig.negative == n;
    Int target = negated ? Int(-target_norm) : target_norm;
    if (target < 0) return {};
    if (target == 0) return {IVec(n, Int(0))};

    detail::SquareCompletion sc =
        detail::square_completion(negated ? scale(l.gram(), Int(-1)) : l.gram());

    // Outermost coordinate range; its center is zero.
    Rat t = Rat(target) / sc.d[n - 1];
    Int hi = detail::floor_sqrt_minus(t, Rat(0));
    std::vector<Int> tops;
    for (Int v = -hi; v <= hi; ++v) tops.push_back(v);

    std::vector<std::vector<IVec>> buckets(tops.size());
    auto work_on = [&](std::size_t idx) {
        IVec x(n, Int(0));
        x[n - 1] = tops[idx];
        Rat step(tops[idx]);
        detail::fp_descend(sc, n - 1, x, Rat(target) - sc.d[n - 1] * step * step, buckets[idx]);
    };

    unsigned workers = threads == 0 ? 1 : threads;
    if (workers > tops.size()) workers = static_cast<unsigned>(tops.size());
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < tops.size(); ++idx) work_on(idx);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t idx = w; idx < tops.size(); idx += workers) work_on(idx);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<IVec> out;
    for (auto& b : buckets)
        for (auto& v : b) out.push_back(std::move(v));
    std::sort(out.begin(), out.end(), [](const IVec& a, const IVec& b) { return compare(a, b) < 0; });
    return out;
}

} // namespace latt
